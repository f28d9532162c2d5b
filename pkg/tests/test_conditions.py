"""Condition checkers against plain quantifier oracles, plus the documented examples."""
from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preflab.conditions import (BoothPair, ChoiceFunction, ConditionId, LogicSubject, Verdict, check,
                                derive_mu_i, h_set, holds_at, mu_tau)
from preflab.errors import InputError
from preflab.gallery import gallery
from preflab.structures import BoothStructure, PrefStructure, RankedStructure
from preflab.sweep import choice_functions, families, universe
from preflab.universe import DomainFamily, Universe

S = frozenset


def small_cases(max_points=2, max_family=4, subset=True):
    for n in range(1, max_points + 1):
        for fam in families(universe(n), max_family, include_empty=True):
            yield from choice_functions(fam, subset=subset)


def three_point_cases():
    for fam in families(universe(3), 4, include_empty=True):
        yield from choice_functions(fam)


# oracles, written straight from the quantifier form


def _ms(cf):
    return cf.family.members


ORACLES = {
    "MU_SUBSET": lambda m: all(m(X) <= X for X in _ms(m)),
    "MU_PR": lambda m: all(m(Y) & X <= m(X) for X in _ms(m) for Y in _ms(m) if X <= Y),
    "MU_CUM": lambda m: all(m(X) == m(Y) for X in _ms(m) for Y in _ms(m) if m(X) <= Y <= X),
    "MU_EMPTY": lambda m: all(m(X) for X in _ms(m) if X),
    "MU_EQ": lambda m: all(m(Y) & X == m(X) for X in _ms(m) for Y in _ms(m) if X <= Y and m(Y) & X),
    "MU_PAR": lambda m: all(m(X | Y) in (m(X), m(Y), m(X) | m(Y))
                            for X in _ms(m) for Y in _ms(m) if X | Y in m.family.member_set),
    "MU_UNION": lambda m: all(not m(X | Y) & Y for X in _ms(m) for Y in _ms(m)
                              if X | Y in m.family.member_set and m(Y) & (X - m(X))),
}


def _hull(m, U, x=None):
    H = U
    while True:
        grown = H.union(*[X for X in _ms(m) if (x is None or x in X) and m(X) <= H])
        if grown == H:
            return H
        H = grown


def _hu_oracle(m, with_point):
    return all(not m(Y) <= _hull(m, U, x if with_point else None)
               for U in _ms(m) for x in m(U) for Y in _ms(m) if x in Y and x not in m(Y))


def _cum_alpha_oracle(m, k, transitive):
    """Every sequence of exactly k+1 members, repeats allowed."""
    for U in _ms(m):
        for seq in product(_ms(m), repeat=k + 1):
            union, ok = U, True
            for X in seq:
                if not m(X) <= union:
                    ok = False
                    break
                union = union | X
            if not ok:
                continue
            scope = seq[-1] if transitive else S.intersection(*seq)
            if not scope & m(U) <= m(seq[-1]):
                return False
    return True


@pytest.mark.parametrize("tag", sorted(ORACLES))
def test_algebraic_conditions_match_oracles(tag):
    n = 0
    for cf in small_cases():
        n += 1
        assert check(tag, cf).holds == ORACLES[tag](cf), cf.to_payload()
    for cf in three_point_cases():
        n += 1
        assert check(tag, cf).holds == ORACLES[tag](cf), cf.to_payload()
    assert n > 1000


def test_subset_is_checked_on_functions_that_leave_their_argument():
    seen = {True: 0, False: 0}
    for cf in small_cases(max_points=2, max_family=3, subset=False):
        got = check("MU_SUBSET", cf).holds
        assert got == ORACLES["MU_SUBSET"](cf)
        seen[got] += 1
    assert seen[True] and seen[False]


@pytest.mark.parametrize("with_point", [False, True])
def test_hull_conditions_match_oracle(with_point):
    tag = "HUX" if with_point else "HU"
    for cf in three_point_cases():
        assert check(tag, cf).holds == _hu_oracle(cf, with_point), cf.to_payload()


@pytest.mark.parametrize("k", [0, 1, 2])
@pytest.mark.parametrize("transitive", [False, True])
def test_cum_alpha_matches_sequences_with_repeats(k, transitive):
    tag = f"{'MU_CUMT_ALPHA' if transitive else 'MU_CUM_ALPHA'}:{k}"
    n = 0
    for fam in families(universe(3), 3, include_empty=True):
        for cf in choice_functions(fam):
            n += 1
            assert check(tag, cf).holds == _cum_alpha_oracle(cf, k, transitive), cf.to_payload()
    assert n > 500


def test_witnesses_re_evaluate_false():
    tags = ["MU_PR", "MU_CUM", "MU_EQ", "MU_PAR", "MU_UNION", "MU_IN", "HU", "HUX", "MU_CUM_ALPHA:1",
            "MU_CUMT_ALPHA:1", "MU_PR_I:0"]
    failing = {t: 0 for t in tags}
    for cf in three_point_cases():
        for t in tags:
            v = check(t, cf)
            if not v.holds:
                failing[t] += 1
                assert holds_at(t, cf, v.witness) is False
    assert all(failing.values()), failing


# documented examples


def test_staged_cumulativity_example():
    inst = gallery("cum_hierarchy", {"k": 1})
    cf = inst.payload
    assert check("MU_CUM", cf).holds
    assert check("MU_CUM_ALPHA:0", cf).holds
    v = check("MU_CUM_ALPHA:1", cf)
    assert not v.holds and v.witness["point"] == "c"
    U = S(["a", "c", "x0"])
    X0 = S(["c", "x0", "x'0", "x1"])
    X1 = S(["a", "b", "c", "x1", "x'1", "x2"])
    assert v.witness["U"] == U and v.witness["sequence"] == [X0, X1]


def test_hull_stages_of_the_staged_example():
    cf = gallery("cum_hierarchy", {"k": 1}).payload
    U = S(["a", "c", "x0"])
    X0 = S(["c", "x0", "x'0", "x1"])
    X1 = S(["a", "b", "c", "x1", "x'1", "x2"])
    H = h_set(cf, U, "c")
    assert H.stages == (U, U | X0, U | X0 | X1)
    assert H.result == cf.family.universe.as_set
    v = check("HUX", cf)
    assert not v.holds
    assert holds_at("HUX", cf, {"U": U, "x": "c", "Y": X1}) is False


def test_hull_of_identity_is_the_base():
    fam = DomainFamily.power(Universe.of("abc"))
    cf = ChoiceFunction.identity(fam)
    for U in fam.members:
        assert h_set(cf, U).result == U


def test_pointed_hull_inside_hull():
    for cf in three_point_cases():
        for U in cf.family.members:
            H = h_set(cf, U).result
            for x in cf.family.universe.points:
                assert h_set(cf, U, x).result <= H


def test_transitive_staged_fixture():
    inst = gallery("cumt_fail")
    v = check("MU_CUMT_ALPHA:1", inst.payload, inst.family)
    assert not v.holds
    assert all(r["ok"] for r in inst.verify())


def test_tree_condition_example():
    cf = gallery("no_transitive").payload
    v = check("MU_TAU", cf)
    assert not v.holds
    U = S(["u1", "u2", "u3", "u4"])
    assert v.witness["U"] == U and v.witness["x"] == "u4"
    assert mu_tau(cf, U, "u4").root_starred
    # u3 lies in no other member, so its tree is a single unstarred node
    assert not mu_tau(cf, U, "u3").root_starred


def test_tree_condition_implies_hull_condition():
    n = 0
    for cf in three_point_cases():
        if check("MU_TAU", cf).holds:
            n += 1
            assert check("HU", cf).holds
    assert n > 100


def test_structure_choice_satisfies_subset():
    s = PrefStructure.from_relation("abc", [("a", "b"), ("b", "c"), ("c", "a")])
    fam = DomainFamily.power(s.universe)
    assert check("MU_SUBSET", s, fam).holds


def test_derived_functions_on_identity():
    cf = ChoiceFunction.identity(DomainFamily.power(Universe.of("abc")))
    for i in range(4):
        assert derive_mu_i(cf, i) == cf


def test_pair_selection_recovers_ranked_choice():
    fam = DomainFamily.power(Universe.of("abcd"))
    for rank in ({"a": 0, "b": 1, "c": 1, "d": 2}, {"a": 0, "b": 0, "c": 0, "d": 0}, {"a": 2, "b": 1, "c": 0, "d": 1}):
        cf = ChoiceFunction.from_structure(RankedStructure.of(rank), fam)
        assert derive_mu_i(cf, 3) == cf


def _mu0(m, U):
    return U - S().union(*[Y - m(Y) for Y in _ms(m) if Y <= U])


def _mu1(m, U):
    return U - S().union(*[Y - m(Y) for Y in _ms(m) if m(Y) <= U])


def _mu3(m, U):
    return S(x for x in U if all(x in m(S((x, y))) for y in U))


def test_derived_functions_match_oracles():
    for cf in three_point_cases():
        fam = cf.family
        if not (fam.closed_finite_union and fam.contains_singletons and fam.contains_pairs):
            continue
        for U in fam.members:
            assert derive_mu_i(cf, 0)(U) == _mu0(cf, U)
            assert derive_mu_i(cf, 1)(U) == _mu1(cf, U)
            assert derive_mu_i(cf, 3)(U) == _mu3(cf, U)
            assert _mu1(cf, U) <= _mu0(cf, U)


def test_pair_selection_can_exceed_the_first_derived_function():
    # all of a, b, ab, abc select nothing; c, ac, bc select c
    fam = DomainFamily.power(Universe.of("abc"))
    c = S("c")
    cf = ChoiceFunction(fam, {X: (c if X in (S("c"), S("ac"), S("bc")) else S()) for X in fam.members})
    U = S("abc")
    assert check("MU_SUBSET", cf).holds
    assert _mu3(cf, U) == c and _mu0(cf, U) == S()
    assert derive_mu_i(cf, 3)(U) == c and derive_mu_i(cf, 0)(U) == S()
    assert not check("MU_IN", cf).holds


def test_booth_minus_one_on_structure_pairs():
    r = RankedStructure.of({"TT": 0, "TF": 1, "FT": 1, "FF": 2})
    for sub in ([], [("TT", "FF")], [("TT", "TF"), ("TF", "FF"), ("FT", "FF")]):
        bp = BoothPair.from_structure(BoothStructure(r, sub))
        for j in range(1, 6):
            assert check(f"MU_MINUS:{j}", bp).holds


def test_scr_rules_hold_on_small_bases():
    for base in (["a"], ["a", "b"], ["a", "b", "c"]):
        assert check("SCR_RULES", Universe.of(base)).holds


def test_logical_rules_on_a_ranked_subject():
    fam = DomainFamily.power(Universe.of("abc"))
    r = RankedStructure.of({"a": 0, "b": 1, "c": 1})
    s = LogicSubject.from_structure(r, fam)
    for tag in ("AND", "OR", "LLE", "RW", "CCL", "SC", "CP", "RM", "CM", "CUM", "PR", "LOG_EQ"):
        assert check(tag, s).holds, tag


def test_condition_ids():
    assert str(ConditionId.parse(" MU_CUM_ALPHA:2 ")) == "MU_CUM_ALPHA:2"
    for bad in ("MU_CUM:1", "MU_CUM_ALPHA", "MU_CUM_ALPHA:x", "NOPE", "MU_PR_I:7"):
        with pytest.raises(InputError):
            ConditionId.parse(bad)


def test_verdict_round_trip():
    cf = gallery("cum_hierarchy", {"k": 1}).payload
    v = check("MU_CUM_ALPHA:1", cf)
    d = v.to_dict()
    assert Verdict.from_dict(d).to_dict() == d


def test_subject_mismatch_is_an_input_error():
    fam = DomainFamily.power(Universe.of("ab"))
    with pytest.raises(InputError):
        check("MU_PR", RankedStructure.of({"a": 0, "b": 1}))
    with pytest.raises(InputError):
        check("LAMBDA_AND", ChoiceFunction.identity(fam))


# properties over random choice functions on the power set of 3 points

POW3 = DomainFamily.power(Universe.of("abc"))
values = st.lists(st.frozensets(st.sampled_from("abc")), min_size=8, max_size=8)


@settings(max_examples=200, deadline=None)
@given(values)
def test_structure_free_implications(vals):
    cf = ChoiceFunction(POW3, {X: v & X for X, v in zip(POW3.members, vals)}, validate=False)
    if check("MU_EQ", cf).holds:
        assert check("MU_PR", cf).holds
    if check("HU", cf).holds:
        assert check("HUX", cf).holds
    if check("MU_TAU", cf).holds:
        assert check("HU", cf).holds
