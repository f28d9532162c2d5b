"""Acceptance criteria, one group of tests per criterion.

Each test carries a ``criterion`` mark; the terminal summary prints one
PASS/FAIL line per criterion. All checks are exact (boolean or set equality).
"""
from __future__ import annotations

import random

import pytest

from preflab import suites
from preflab.conditions import BoothPair, ChoiceFunction, check, cum_infinity_holds
from preflab.errors import RepresentationRejected
from preflab.gallery import gallery
from preflab.logic import Language
from preflab.represent import (oracle_agreement, represent, represent_booth, represent_nondp,
                               verify_representation)
from preflab.structures import BoothStructure, check_structure, consequence, mu
from preflab.sweep import (blocks_families, booth_structures, choice_functions, copied_structures, families,
                           rankings, relations, transitive_relations, universe)
from preflab.universe import DomainFamily, hat

pytestmark = pytest.mark.acceptance


def criterion(num, title):
    return pytest.mark.criterion(num, title)


def _transitive(s):
    return all((a, d) in s.rel for a, b in s.rel for c, d in s.rel if b == c)


def _structures_3(transitive_only=False):
    """Copy-free relations on 3 points plus structures with a doubled point."""
    uni = universe(3)
    base = list(transitive_relations(uni) if transitive_only else relations(uni))
    if transitive_only:
        copied = [s for s in copied_structures(uni, {"a": 2}) if _transitive(s)]
    else:
        copied = list(copied_structures(uni, {"a": 2, "b": 2}, sample=200, seed=7))
    return base + copied


def _hat_choice(s, fam):
    return ChoiceFunction(fam, {X: hat(fam, mu(s, X)) for X in fam.members}, validate=False)


# 1. staged cumulativity separates


@criterion(1, "hierarchy separation")
@pytest.mark.parametrize("k", [1, 2, 3])
def test_cum_hierarchy_separates_levels(k):
    inst = gallery("cum_hierarchy", {"k": k})
    cf, fam = inst.payload, inst.family
    assert fam.closed_arbitrary_intersection
    assert check("MU_CUM", cf).holds
    for a in range(k):
        assert check(f"MU_CUMT_ALPHA:{a}", cf).holds, a
        assert check(f"MU_CUM_ALPHA:{a}", cf).holds, a
    v = check(f"MU_CUM_ALPHA:{k}", cf)
    assert not v.holds
    assert v.witness["point"] == "c"
    # c is selected in U and lies in the last set of the sequence, but is not selected there
    last = frozenset(v.witness["sequence"][-1])
    assert "c" in cf(frozenset(v.witness["U"])) and "c" in last and "c" not in cf(last)


# 2 and 3 share one sweep: mu subset + mu PR on union-closed families of 3 points


def _union_pr_sweep():
    for fam in families(universe(3), 6, include_empty=True, predicate=lambda f: f.closed_finite_union):
        for cf in choice_functions(fam):
            if check("MU_PR", cf).holds:
                yield cf


@pytest.fixture(scope="module")
def union_pr_functions():
    out = list(_union_pr_sweep())
    assert len(out) > 1000
    return out


@criterion(2, "hierarchy collapse")
def test_cum_zero_gives_every_level_under_unions(union_pr_functions):
    bad = []
    premised = 0
    for cf in union_pr_functions:
        if not check("MU_CUM_ALPHA:0", cf).holds:
            continue
        premised += 1
        for k in (1, 2, 3):
            if not check(f"MU_CUM_ALPHA:{k}", cf).holds:
                bad.append((cf.to_payload(), k))
    assert premised > 100
    assert not bad, bad[:3]


@criterion(3, "HUx equivalence")
def test_hux_matches_full_cum_hierarchy(union_pr_functions):
    mismatches = []
    for cf in union_pr_functions:
        hux = check("HUX", cf).holds
        if hux != cum_infinity_holds(cf):
            mismatches.append(cf)
    both = sum(check("HUX", cf).holds for cf in union_pr_functions)
    assert 0 < both < len(union_pr_functions)
    assert not mismatches


# 4. smooth representation both ways


@criterion(4, "smooth round trip")
def test_smooth_structures_round_trip():
    uni = universe(3)
    fams = list(families(uni, 5, include_empty=True, up_to_iso=False))
    done, errors = 0, []
    for s in _structures_3():
        for fam in fams:
            if not check_structure(s, fam).smooth:
                continue
            cf = ChoiceFunction.from_structure(s, fam)
            try:
                built = represent(cf, "smooth")
            except RepresentationRejected as e:
                errors.append(("rejected", s, fam, e.verdict))
                continue
            if not verify_representation(built, cf, "exact").ok:
                errors.append(("mismatch", s, fam))
            done += 1
    assert done > 10000
    assert not errors, errors[:3]


@criterion(4, "smooth round trip")
def test_smooth_gate_matches_hux():
    accepted = rejected = 0
    wrong = []
    for fam in families(universe(3), 5, include_empty=True):
        for cf in choice_functions(fam):
            hux = check("HUX", cf).holds
            try:
                built = represent(cf, "smooth")
            except RepresentationRejected:
                rejected += 1
                if hux:
                    wrong.append(cf)
                continue
            accepted += 1
            if not hux or not verify_representation(built, cf, "exact").ok:
                wrong.append(cf)
    assert accepted and rejected
    assert not wrong


# 5. smooth transitive gate


@criterion(5, "transitive gate")
def test_no_transitive_passes_cumt_but_is_rejected():
    inst = gallery("no_transitive")
    cf = inst.payload
    for a in range(len(cf.family) + 1):
        assert check(f"MU_CUMT_ALPHA:{a}", cf).holds, a
    with pytest.raises(RepresentationRejected) as e:
        represent(cf, "smooth_transitive")
    assert e.value.verdict.condition == "MU_TAU"
    assert not e.value.verdict.holds


@criterion(5, "transitive gate")
def test_transitive_smooth_structures_pass_tau_and_round_trip():
    uni = universe(3)
    fams = list(families(uni, 5, include_empty=True, up_to_iso=False))
    done, errors = 0, []
    for s in _structures_3(transitive_only=True):
        for fam in fams:
            if not check_structure(s, fam).smooth:
                continue
            cf = ChoiceFunction.from_structure(s, fam)
            if not check("MU_TAU", cf).holds:
                errors.append(("tau", s, fam))
                continue
            built = represent(cf, "smooth_transitive")
            rep = check_structure(built, fam)
            if not (rep.transitive and rep.smooth and verify_representation(built, cf, "exact").ok):
                errors.append(("round trip", s, fam))
            done += 1
    assert done > 1000
    assert not errors, errors[:3]


# 6. the law suites


@criterion(6, "fact suites")
@pytest.mark.slow
@pytest.mark.parametrize("suite", suites.suites())
def test_law_suite_has_no_violations(suite):
    # choice functions on up to 3 points, everything else on up to 4
    rep = suites.run(suites.select(suites=[suite]), max_points=4, max_family=8, choice_points=3)
    for r in rep.results:
        assert r.checked > 0, f"{r.law.name} met no subject"
        assert r.applied > 0, f"{r.law.name} never had its premises met"
    bad = {r.law.name: r.to_dict()["counterexample"] for r in rep.results if not r.ok}
    assert not bad, bad


# 7. Booth round trip


def _booth_cases_two():
    lang = Language(("p1", "p2"))
    for ranked in rankings(lang.universe, max_layers=3):
        for b in booth_structures(ranked):
            yield lang, b


def _booth_cases_three(n=200, seed=3):
    lang = Language(("p1", "p2", "p3"))
    rng = random.Random(seed)
    ranks = list(rankings(lang.universe, max_layers=3))
    for _ in range(n):
        r = rng.choice(ranks)
        less = sorted((x, y) for x in r.universe.points for y in r.universe.points if r.less(x, y))
        yield lang, BoothStructure(r, frozenset(p for p in less if rng.random() < 0.5))


def _booth_round_trip(lang, b):
    """None on success, else a short reason. The gate of represent_booth checks
    (mu subset), (mu empty), (mu =) on mu+ and the five mu- conditions."""
    bp = BoothPair.from_structure(b, DomainFamily.power(lang.universe))
    try:
        _, state, rep = represent_booth(bp, lang)
    except RepresentationRejected as e:
        return f"extracted pair fails {e.verdict.condition}"
    if not rep.ok:
        return f"round trip {rep.mismatch}"
    agree = oracle_agreement(state, bp)
    if not agree["agree"]:
        return f"oracle {agree}"
    return None


@criterion(7, "Booth round trip")
def test_booth_two_variables_exhaustive():
    cases = list(_booth_cases_two())
    assert len(cases) > 1000
    errors = [(b, e) for lang, b in cases if (e := _booth_round_trip(lang, b))]
    assert not errors, errors[:3]


@criterion(7, "Booth round trip")
@pytest.mark.slow
def test_booth_three_variables_sampled():
    errors = [(b, e) for lang, b in _booth_cases_three() if (e := _booth_round_trip(lang, b))]
    assert not errors, errors[:3]


# 8. non-dp recovery


def _nondp_sources():
    u3, u4 = universe(3), universe(4)
    yield u3, list(relations(u3)) + list(copied_structures(u3, {"a": 2}, sample=200, seed=7))
    yield u4, list(transitive_relations(u4))


@criterion(8, "non-dp recovery")
def test_hat_composed_structures_are_recovered():
    counts = {"general": 0, "smooth": 0}
    errors = []
    for uni, structures in _nondp_sources():
        for fam in blocks_families(uni):
            assert not fam.contains_singletons or len(uni) == 3
            for s in structures:
                cf = _hat_choice(s, fam)
                flavors = ["general"] + (["smooth"] if check_structure(s, fam).smooth else [])
                for fl in flavors:
                    _, rep = represent_nondp(cf, fl)
                    counts[fl] += 1
                    if not rep.ok:
                        errors.append((fl, s, fam, rep.mismatch))
    assert counts["general"] > 3000 and counts["smooth"] > 2000
    assert not errors, errors[:3]


@criterion(8, "non-dp recovery")
def test_hat_composed_rankings_are_recovered():
    errors = []
    done = 0
    for n in (3, 4):
        uni = universe(n)
        fams = list(blocks_families(uni)) + [DomainFamily.power(uni)]
        for fam in fams:
            flavor = "ranked" if fam.contains_singletons and fam.contains_pairs else "smooth"
            for r in rankings(uni):
                _, rep = represent_nondp(_hat_choice(r, fam), flavor)
                done += 1
                if not rep.ok:
                    errors.append((flavor, r, fam))
    assert done > 1000
    assert not errors, errors[:3]


@criterion(8, "non-dp recovery")
def test_pr_can_fail_without_definability_preservation():
    inst = gallery("nondp_pr_fail")
    s, fam = inst.payload, inst.family
    assert all(r["ok"] for r in inst.verify())
    assert not check("PR", s, fam).holds
    assert inst.search["stage"] in ("blocks", "lattice")


# 9. limit laws


def _transitive_structures_upto4():
    for n in (1, 2, 3, 4):
        yield from transitive_relations(universe(n))
    yield from (s for s in copied_structures(universe(2), {"a": 2, "b": 2}) if _transitive(s))
    yield from (s for s in copied_structures(universe(3), {"a": 2}) if _transitive(s))


@criterion(9, "limit laws")
@pytest.mark.parametrize("law", ["LAMBDA_AND", "LAMBDA_PR", "LAMBDA_CUMFIN"])
def test_limit_laws_on_transitive_structures(law):
    bad, n = [], 0
    for s in _transitive_structures_upto4():
        fam = DomainFamily.power(s.universe)
        n += 1
        v = check(law, s, fam)
        if not v.holds:
            bad.append((s, v.witness))
    assert n > 400
    assert not bad, bad[:3]


@criterion(9, "limit laws")
def test_limit_equality_on_ranked_structures():
    bad = []
    for n in (1, 2, 3, 4):
        uni = universe(n)
        for r in rankings(uni):
            v = check("LAMBDA_EQ", r, DomainFamily.power(uni))
            if not v.holds:
                bad.append((r, v.witness))
    assert not bad


@criterion(9, "limit laws")
def test_initial_segments_split_conjunction():
    inst = gallery("initial_segments")
    s = inst.payload
    lang = Language(("p", "q"))
    assert consequence(s, "true", "p", "limit", lang)
    assert consequence(s, "true", "q", "limit", lang)
    assert not consequence(s, "true", "p & q", "limit", lang)
    assert not check("LAMBDA_AND", s, inst.family).holds
    assert all(r["ok"] for r in inst.verify())


# 10. logical rules on formula-only inputs over restricted families


def _logic_sources():
    for n in (2, 3):
        yield universe(n), list(relations(universe(n)))
    yield universe(4), list(transitive_relations(universe(4)))


@criterion(10, "logical rules")
def test_logical_rules_on_blocks_families():
    bad, n = [], 0
    for uni, structures in _logic_sources():
        for fam in blocks_families(uni):
            for s in structures:
                rules = ["LLE", "RW", "AND", "OR", "PR"]
                if check_structure(s, fam).smooth:
                    rules += ["CM", "CUM"]
                for rule in rules:
                    v = check(rule, s, fam, scope="formulas")
                    n += 1
                    if not v.holds:
                        bad.append((rule, s, fam, v.witness))
    assert n > 15000
    assert not bad, bad[:3]


@criterion(10, "logical rules")
def test_logical_equality_on_ranked_blocks():
    bad, n = [], 0
    for k in (2, 3, 4):
        uni = universe(k)
        for fam in list(blocks_families(uni)) + [DomainFamily.power(uni)]:
            for r in rankings(uni):
                n += 1
                v = check("LOG_EQ", r, fam, scope="formulas")
                if not v.holds:
                    bad.append((r, fam, v.witness))
    assert n > 500
    assert not bad
