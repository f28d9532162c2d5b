from __future__ import annotations

from fractions import Fraction
from itertools import chain, combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preflab.errors import InputError
from preflab.gallery import cum_hierarchy_structure
from preflab.logic import Language, models_of
from preflab.structures import (BoothStructure, DistanceSpace, PrefStructure, RankedStructure, booth_nu,
                                check_structure, consequence, enumerate_mise, is_mise, lam, limit_revision, mu,
                                revise, revision_mise, segment_points)
from preflab.universe import DomainFamily, Universe, powerset

S = frozenset
CHAIN = PrefStructure.from_relation("abc", [("a", "b"), ("b", "c"), ("a", "c")])
CYCLE = PrefStructure(Universe.of(["x"]), S({("x", 1), ("x", 2)}),
                      S({(("x", 1), ("x", 2)), (("x", 2), ("x", 1))}))


def test_mu_examples():
    s, _, gens = cum_hierarchy_structure(1)
    X0 = S(["c", "x0", "x'0", "x1"])
    assert X0 in gens
    assert mu(s, X0) == {"c", "x0"}
    assert mu(CHAIN, "abc") == {"a"}
    assert mu(CYCLE, {"x"}) == frozenset()


def test_mu_ignores_points_outside_the_structure():
    assert mu(CHAIN, {"a", "z"}) == {"a"}


def test_check_structure_examples():
    rep = check_structure(CHAIN, DomainFamily.power(CHAIN.universe))
    assert rep.transitive and rep.smooth and rep.ranked and rep.irreflexive and rep.acyclic
    # the four-point example of limit consequence: a below b and c, both below d
    diamond = PrefStructure.from_relation("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])
    assert not check_structure(diamond).transitive
    rep = check_structure(CYCLE, DomainFamily.of(CYCLE.universe, [S({"x"})]))
    assert not rep.smooth and rep.witnesses["smooth"]["set"] == ["x"]
    assert not rep.acyclic


def test_ranked_detection():
    r = RankedStructure.of({"a": 0, "b": 0, "c": 1})
    assert check_structure(r).ranked
    v = PrefStructure.from_relation("abc", [("a", "b")])
    rep = check_structure(v)
    assert not rep.ranked and "ranked" in rep.witnesses


def test_enumerate_mise_examples():
    assert [segment_points(CHAIN, m) for m in lam(CHAIN, "abc")] == [S("a"), S("ab"), S("abc")]
    r = RankedStructure.of({"a": 0, "b": 0, "c": 1})
    assert lam(r, "abc") == [S("ab"), S("abc")]
    assert lam(CHAIN, ()) == [frozenset()]
    assert lam(r, ()) == [frozenset()]


def test_consequence_examples():
    lang = Language.of("p", "q")
    chain3 = PrefStructure.from_relation(lang.model_names, [("TT", "TF"), ("TF", "FT"), ("TT", "FT")])
    for variant in ("minimal", "limit"):
        assert consequence(chain3, "p | q", "p & q", variant, lang)
    anti = PrefStructure.from_relation(lang.model_names)
    sets = powerset(lang.model_names)
    for T in sets:
        for F in sets:
            assert consequence(anti, T, F, "limit", lang) == (T <= F)


def test_limit_consequence_splits_a_conjunction():
    lang = Language.of("p", "q")
    a, b, c, d = "TT", "TF", "FT", "FF"
    s = PrefStructure.from_relation(lang.model_names, [(a, b), (a, c), (b, d), (c, d)])
    psi, psi2 = S([a, b]), S([a, c])
    assert models_of("p", lang) == psi and models_of("q", lang) == psi2
    assert consequence(s, "true", "p", "limit", lang)
    assert consequence(s, "true", "q", "limit", lang)
    assert not consequence(s, "true", "p & q", "limit", lang)
    assert consequence(s, "true", "p & q", "minimal", lang)


def test_revision_mise_examples():
    sp = DistanceSpace.of(["x", "y1", "y2"], {("x", "y1"): 1, ("x", "y2"): 2, ("y1", "y2"): 1})
    assert [m.segment for m in revision_mise(sp, {"x"}, {"y1", "y2"})] == [S({"y1"}), S({"y1", "y2"})]
    balls = revision_mise(sp, {"x", "y1"}, {"y1", "y2"})
    assert balls[0].segment >= {"y1"}
    assert revise(sp, {"x"}, {"y1", "y2"}) == {"y1"}


def test_revision_ring_is_the_first_ball():
    ring = [f"r{i}" for i in range(4)]
    pts = ["x", "m1", "m2"] + ring
    d = {(p, q): 1 for p, q in combinations(pts, 2)}
    d.update({("x", "m2"): 2, ("x", "m1"): 3})
    sp = DistanceSpace.of(pts, d)
    Y = S(ring + ["m1", "m2"])
    balls = revision_mise(sp, {"x"}, Y)
    assert balls[0].segment == S(ring)
    assert [len(b.segment) for b in balls] == [4, 5, 6]


def test_limit_revision_uses_balls():
    lang = Language.of("p")
    sp = DistanceSpace.of(["T", "F"], {("T", "F"): Fraction(1, 2)})
    assert limit_revision(sp, "p", "true", "p", lang)
    assert not limit_revision(sp, "p", "!p", "p", lang)


def test_distance_space_validation():
    with pytest.raises(InputError):
        DistanceSpace.of(["a", "b"], {})
    with pytest.raises(InputError):
        DistanceSpace.of(["a", "b"], {("a", "b"): 1, ("b", "a"): 2})
    with pytest.raises(InputError):
        DistanceSpace.of(["a", "b"], {("a", "b"): -1})


def test_booth_nu_examples():
    lang = Language.of("p")
    r = RankedStructure.of({"F": 0, "T": 1})
    assert booth_nu(BoothStructure(r), "p", lang) == {"T"}
    assert booth_nu(BoothStructure(r, {("F", "T")}), "p", lang) == {"T", "F"}
    with pytest.raises(InputError):
        BoothStructure(r, {("T", "F")})


def test_booth_nu_with_full_subrelation():
    lang = Language.of("p", "q")
    r = RankedStructure.of({"TT": 0, "TF": 1, "FT": 1, "FF": 2})
    less = {(x, y) for x in r.universe.points for y in r.universe.points if r.less(x, y)}
    b = BoothStructure(r, less)
    for X in powerset(lang.model_names):
        if not X:
            continue
        low = min(r.rank_of[x] for x in X)
        want = mu(r, X) | {x for x in lang.model_names if x not in X and r.rank_of[x] < low}
        assert booth_nu(b, X, lang) == want


def test_structure_validation():
    with pytest.raises(InputError):
        PrefStructure(Universe.of("a"), S({("b", 0)}))
    with pytest.raises(InputError):
        PrefStructure(Universe.of("a"), S({("a", 0)}), S({(("a", 0), ("a", 1))}))


# properties

PTS = "abcd"
pairs = [(a, b) for a in PTS for b in PTS if a != b]
relations_st = st.sets(st.sampled_from(pairs), max_size=8).map(lambda r: PrefStructure.from_relation(PTS, r))
subsets_st = st.frozensets(st.sampled_from(PTS))


def _transitive_closure(rel):
    rel = set(rel)
    while True:
        extra = {(a, d) for a, b in rel for c, d in rel if b == c} - rel
        if not extra:
            return rel
        rel |= extra


@settings(max_examples=150, deadline=None)
@given(relations_st, subsets_st)
def test_mu_selects_exactly_the_unbeaten(s, X):
    got = mu(s, X)
    assert got <= X
    want = {x for x in X if not any(((y, 0), (x, 0)) in s.rel for y in X)}
    assert got == want


@settings(max_examples=100, deadline=None)
@given(relations_st, subsets_st)
def test_mise_enumeration_matches_brute_force(s, X):
    base = s.copies_in(X)
    subsets = chain.from_iterable(combinations(base, k) for k in range(len(base) + 1))
    brute = {S(c) for c in subsets if is_mise(s, X, c)}
    assert set(lam(s, X)) == brute


@settings(max_examples=100, deadline=None)
@given(st.sets(st.sampled_from(pairs), max_size=8), subsets_st, subsets_st)
def test_limit_and_minimal_agree_on_finite_strict_orders(rel, X, F):
    closed = _transitive_closure(rel)
    if any((a, a) in closed for a in PTS):
        return
    s = PrefStructure.from_relation(PTS, closed)
    minimal = mu(s, X) <= F
    limit = any(segment_points(s, seg) <= F for seg in lam(s, X))
    assert minimal == limit


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(st.sampled_from(PTS), st.integers(0, 3), min_size=4), subsets_st)
def test_ranked_mise_are_nonempty_down_sets(rank, X):
    r = RankedStructure.of(rank)
    segs = lam(r, X)
    if not X:
        assert segs == [frozenset()]
        return
    for seg in segs:
        assert seg and seg <= X
        top = max(rank[x] for x in seg)
        assert seg == {x for x in X if rank[x] <= top}
    assert len(segs) == len({rank[x] for x in X})
