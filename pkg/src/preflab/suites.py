"""Quantified laws over exhaustive sweeps of small instances.

A law names a subject kind, the closure properties its family must have,
premises on the subject and a conclusion. The runner enumerates subjects,
skips families lacking the closures, counts subjects whose premises fail as
vacuous and records the first counterexample of every law.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from math import prod
from typing import Callable, Iterable, Optional

from .conditions.booth import BoothPair
from .conditions.choice import ChoiceFunction, _render
from .conditions.derived import derive_mu_i
from .conditions.engine import check
from .conditions.hull import h_set
from .conditions.limit import LambdaOracle
from .conditions.logical import LogicSubject, violation as logic_violation
from .errors import InputError, RepresentationRejected
from .structures import PrefStructure, RankedStructure, check_structure
from .sweep import (booth_structures, choice_functions, copied_structures, families, rankings,
                    transitive_relations, universe, relations)
from .universe import DomainFamily, hat, powerset

KINDS = ("choice", "family", "structure", "ranked", "booth", "extracted")

# family flags a law may require
CLOSURES = {
    "union": lambda f: f.closed_finite_union,
    "intersection": lambda f: f.closed_pairwise_intersection,
    "singletons": lambda f: f.contains_singletons,
    "pairs": lambda f: f.contains_pairs,
    "empty": lambda f: f.contains_empty,
    "difference": lambda f: f.closed_set_difference,
    "hat": lambda f: f.supports_hat,
    "powerset": lambda f: len(f) == 2 ** len(f.universe),
    "boolean": lambda f: f.supports_hat and f.contains_empty and f.closed_finite_union
    and f.closed_set_difference,
}

MAX_FUNCTIONS_PER_FAMILY = 5000


@dataclass(frozen=True)
class Law:
    name: str
    suite: str
    kind: str
    summary: str
    conclude: Callable
    closure: tuple = ()
    premises: tuple = ()
    tags: frozenset = frozenset()

    def applies_to(self, family: DomainFamily) -> bool:
        return all(CLOSURES[c](family) for c in self.closure)


# subject wrappers with cached condition verdicts


class ChoiceCase:
    def __init__(self, cf: ChoiceFunction):
        self.cf = cf
        self.family = cf.family
        self.members = cf.family.members
        self._verdicts = {}
        self._derived = {}
        self._hulls = {}

    def holds(self, cond: str) -> bool:
        if cond not in self._verdicts:
            if cond == "INTO_FAMILY":
                ok = self.cf.codomain_in_family
            elif cond == "CUM_ALL":
                ok = check(f"MU_CUM_ALPHA:{len(self.family)}", self.cf).holds
            elif cond == "CUMT_ALL":
                ok = check(f"MU_CUMT_ALPHA:{len(self.family)}", self.cf).holds
            elif cond == "SOME_PR_I":
                ok = any(self.holds(f"MU_PR_I:{i}") for i in range(3))
            else:
                ok = check(cond, self.cf).holds
            self._verdicts[cond] = ok
        return self._verdicts[cond]

    def mu_i(self, i: int) -> ChoiceFunction:
        if i not in self._derived:
            self._derived[i] = derive_mu_i(self.cf, i)
        return self._derived[i]

    def hull(self, U, x=None):
        key = (U, x)
        if key not in self._hulls:
            self._hulls[key] = h_set(self.cf, U, x)
        return self._hulls[key]

    def describe(self) -> dict:
        return {"family": [sorted(m) for m in self.members], **self.cf.to_payload()}


class FamilyCase:
    def __init__(self, family: DomainFamily):
        self.family = family
        self.subsets = powerset(family.universe.points)

    def hat(self, A):
        return hat(self.family, A)

    def describe(self) -> dict:
        return {"family": [sorted(m) for m in self.family.members]}


class StructureCase:
    """A structure with its Lambda oracle, quantified over all subsets of its points."""

    def __init__(self, structure):
        self.structure = structure
        self.oracle = LambdaOracle(structure)
        self.subsets = powerset(structure.universe.points)
        self.family = DomainFamily.power(structure.universe)

    def lam(self, X):
        return self.oracle(X)

    def describe(self) -> dict:
        from .instances import payload_to_json
        return payload_to_json(self.structure)


class BoothCase:
    def __init__(self, bp: BoothPair, source=None):
        self.bp = bp
        self.family = bp.family
        self.source = source
        self._verdicts = {}

    def holds(self, cond: str) -> bool:
        if cond not in self._verdicts:
            if cond.startswith("PLUS:"):
                ok = check(cond[5:], self.bp.plus).holds
            else:
                ok = check(cond, self.bp).holds
            self._verdicts[cond] = ok
        return self._verdicts[cond]

    def describe(self) -> dict:
        return {"plus": self.bp.plus.to_payload()["mu"], "minus": self.bp.minus.to_payload()["mu"]}


class ExtractedCase(ChoiceCase):
    """The choice function a structure induces on a family."""

    def __init__(self, structure, family: DomainFamily, hat_composed: bool = False):
        self.structure = structure
        self.hat_composed = hat_composed
        self.mu_z = ChoiceFunction.from_structure(structure, family)
        if hat_composed:
            cf = ChoiceFunction(family, {X: hat(family, v) for X, v in self.mu_z.items()}, validate=False)
        else:
            cf = self.mu_z
        super().__init__(cf)
        self._report = None

    @property
    def report(self):
        if self._report is None:
            self._report = check_structure(self.structure, self.family)
        return self._report

    def describe(self) -> dict:
        from .instances import payload_to_json
        return {"structure": payload_to_json(self.structure), **super().describe()}


# law helpers


def _needs(*conclusions):
    def run(case):
        for c in conclusions:
            if not case.holds(c):
                return {"fails": c}
        return None
    return run


def _tags(*items) -> frozenset:
    out = set()
    for it in items:
        for c in it:
            out.add(c.split(":")[0])
    return frozenset(out)


LAWS: list = []


def law(name, suite, kind, summary, closure=(), premises=(), extra_tags=()):
    def deco(fn):
        LAWS.append(Law(name, suite, kind, summary, fn, tuple(closure), tuple(premises),
                        _tags(premises, extra_tags)))
        return fn
    return deco


def implication(name, suite, summary, premises, conclusions, closure=(), kind="choice"):
    LAWS.append(Law(name, suite, kind, summary, _needs(*conclusions), tuple(closure), tuple(premises),
                    _tags(premises, conclusions)))


# the cumulativity hierarchy

BASE = ("MU_SUBSET", "MU_PR")
K_MAX = 3

for _k in range(1, K_MAX + 1):
    implication(f"cum_alpha_downward_{_k}", "cum_hierarchy", f"(mu Cum {_k}) gives every lower level",
                BASE + (f"MU_CUM_ALPHA:{_k}",), [f"MU_CUM_ALPHA:{j}" for j in range(_k)])
    implication(f"cumt_alpha_downward_{_k}", "cum_hierarchy", f"(mu Cumt {_k}) gives every lower level",
                BASE + (f"MU_CUMT_ALPHA:{_k}",), [f"MU_CUMT_ALPHA:{j}" for j in range(_k)])
for _k in range(K_MAX + 1):
    implication(f"cumt_gives_cum_alpha_{_k}", "cum_hierarchy", "the transitive level implies the plain one",
                BASE + (f"MU_CUMT_ALPHA:{_k}",), [f"MU_CUM_ALPHA:{_k}"])
    implication(f"cum_alpha_gives_cum_{_k}", "cum_hierarchy", f"(mu Cum {_k}) implies (mu CUM)",
                BASE + (f"MU_CUM_ALPHA:{_k}",), ["MU_CUM"])
    implication(f"cumt_alpha_gives_cum_{_k}", "cum_hierarchy", f"(mu Cumt {_k}) implies (mu CUM)",
                BASE + (f"MU_CUMT_ALPHA:{_k}",), ["MU_CUM"])
    implication(f"unions_lift_cum_{_k}", "cum_hierarchy", "with unions (mu Cum 0) reaches every level",
                BASE + ("MU_CUM_ALPHA:0",), [f"MU_CUM_ALPHA:{_k}"], closure=("union",))
    implication(f"unions_lift_cumt_{_k}", "cum_hierarchy", "with unions (mu Cumt 0) reaches every level",
                BASE + ("MU_CUMT_ALPHA:0",), [f"MU_CUMT_ALPHA:{_k}"], closure=("union",))
    implication(f"unions_cum_gives_cumt_{_k}", "cum_hierarchy", "with unions the plain level gives the transitive one",
                BASE + (f"MU_CUM_ALPHA:{_k}",), [f"MU_CUMT_ALPHA:{_k}"], closure=("union",))
    implication(f"unions_cum_gives_cum_alpha_{_k}", "cum_hierarchy", "with unions (mu CUM) gives every level",
                BASE + ("MU_CUM",), [f"MU_CUM_ALPHA:{_k}", f"MU_CUMT_ALPHA:{_k}"], closure=("union",))

implication("intersections_cum_gives_cum0", "cum_hierarchy", "with intersections (mu CUM) gives (mu Cum 0)",
            BASE + ("MU_CUM",), ["MU_CUM_ALPHA:0"], closure=("intersection",))
implication("cum0_gives_pr", "cum_hierarchy", "(mu Cum 0) implies (mu PR)",
            ("MU_SUBSET", "MU_CUM_ALPHA:0"), ["MU_PR"])
implication("cum_all_gives_hux", "cum_hierarchy", "every level of (mu Cum) together implies (HUx)",
            ("MU_SUBSET", "CUM_ALL"), ["HUX"])
implication("hux_gives_cum_all", "cum_hierarchy", "(HUx) implies every level of (mu Cum)",
            ("MU_SUBSET", "HUX"), ["CUM_ALL"])


@law("unions_cum_absorbs", "cum_hierarchy", "choice",
     "with unions and (mu CUM): mu(A) <= B gives mu(A u B) = mu(B), and the two consequences for U <= Y",
     closure=("union",), premises=BASE + ("MU_CUM",))
def _unions_cum_absorbs(c):
    cf = c.cf
    for A in c.members:
        for B in c.members:
            if cf(A) <= B and cf(A | B) != cf(B):
                return {"A": A, "B": B}
    for X in c.members:
        for U in c.members:
            if not cf(X) <= U:
                continue
            for Y in c.members:
                if U <= Y:
                    if cf(Y | X) != cf(Y):
                        return {"X": X, "U": U, "Y": Y, "part": "union"}
                    if not cf(Y) & X <= cf(U):
                        return {"X": X, "U": U, "Y": Y, "part": "trace"}
    return None


@law("pointed_hull_traps_selected_sets", "cum_hierarchy", "choice",
     "x in mu(Y) and mu(Y) inside H(U,x) give Y inside H(U,x)", premises=("MU_SUBSET",), extra_tags=("HUX",))
def _pointed_hull_traps(c):
    cf = c.cf
    for U in c.members:
        for x in sorted(cf(U)):
            H = c.hull(U, x).result
            for Y in c.members:
                if x in cf(Y) and cf(Y) <= H and not Y <= H:
                    return {"U": U, "x": x, "Y": Y}
    return None


@law("pointed_hull_inside_hull", "cum_hierarchy", "choice", "H(U,x) is contained in H(U)",
     premises=("MU_SUBSET",), extra_tags=("HU", "HUX"))
def _pointed_inside(c):
    for U in c.members:
        H = c.hull(U).result
        for x in sorted(c.cf(U)):
            if not c.hull(U, x).result <= H:
                return {"U": U, "x": x}
    return None


# hulls


implication("hu_gives_pr_and_cum", "hulls", "(HU) implies (mu PR) and (mu CUM)",
            ("MU_SUBSET", "HU"), ["MU_PR", "MU_CUM"])
implication("unions_hu_gives_hux", "hulls", "with unions (HU) implies (HUx)", ("HU",), ["HUX"],
            closure=("union",))


@law("selection_of_union_within_union_of_selections", "hulls", "choice",
     "mu of a union of members lies in the union of their selections", premises=BASE)
def _union_bound(c):
    cf = c.cf
    for A in c.members:
        parts = [B for B in c.members if B <= A and B]
        for r in range(1, len(parts) + 1):
            for cover in combinations(parts, r):
                if frozenset().union(*cover) != A:
                    continue
                if not cf(A) <= frozenset().union(*(cf(B) for B in cover)):
                    return {"A": A, "cover": list(cover)}
    return None


@law("hull_extends_and_is_monotone", "hulls", "choice", "U <= H(U), and U <= U' gives H(U) <= H(U')",
     premises=BASE, extra_tags=("HU",))
def _hull_monotone(c):
    for U in c.members:
        H = c.hull(U).result
        if not U <= H:
            return {"U": U}
        for U2 in c.members:
            if U <= U2 and not H <= c.hull(U2).result:
                return {"U": U, "U2": U2}
    return None


@law("outside_hull_selected_by_part", "hulls", "choice", "mu(U u Y) - H(U) lies in mu(Y)",
     premises=BASE, extra_tags=("HU",))
def _outside_hull(c):
    cf, ms = c.cf, c.family.member_set
    for U in c.members:
        H = c.hull(U).result
        for Y in c.members:
            if U | Y in ms and not cf(U | Y) - H <= cf(Y):
                return {"U": U, "Y": Y}
    return None


def _one_step(c):
    for U in c.members:
        st = c.hull(U).stages
        h1 = st[1] if len(st) > 1 else st[0]
        if h1 != st[-1]:
            return {"U": U, "stages": list(st)}
    return None


def _traps(c):
    cf = c.cf
    for U in c.members:
        H = c.hull(U).result
        for A in c.members:
            if U <= A and cf(A) <= H and not cf(A) <= U:
                return {"U": U, "A": A}
    return None


def _absorbs(c):
    cf = c.cf
    for U in c.members:
        H = c.hull(U).result
        for Y in c.members:
            if cf(Y) <= H and not (Y <= H and cf(U | Y) == cf(U)):
                return {"U": U, "Y": Y}
    return None


def _escapes(c):
    cf = c.cf
    for U in c.members:
        H = c.hull(U).result
        for x in sorted(cf(U)):
            for Y in c.members:
                if x in Y and x not in cf(Y) and Y <= H:
                    return {"U": U, "x": x, "Y": Y}
    return None


def _escape_selected(c):
    cf = c.cf
    for U in c.members:
        H = c.hull(U).result
        for Y in c.members:
            if not Y <= H and cf(U | Y) <= H:
                return {"U": U, "Y": Y}
    return None


_HULL_ITEMS = [
    ("hull_is_one_step", "with unions H(U) is reached after one stage", _one_step),
    ("hull_traps_selection", "U <= A and mu(A) <= H(U) give mu(A) <= U", _traps),
    ("hull_absorbs", "mu(Y) <= H(U) gives Y <= H(U) and mu(U u Y) = mu(U)", _absorbs),
    ("hull_excludes_defeaters", "x in mu(U) and x in Y - mu(Y) give Y not inside H(U)", _escapes),
    ("hull_escape_is_selected", "Y not inside H(U) gives mu(U u Y) not inside H(U)", _escape_selected),
]
for _name, _summary, _fn in _HULL_ITEMS:
    LAWS.append(Law(f"{_name}_under_pr_cum", "hulls", "choice", _summary, _fn, ("union",),
                    ("MU_SUBSET", "MU_PR", "MU_CUM"), _tags(("MU_SUBSET", "MU_PR", "MU_CUM", "HU"))))
    LAWS.append(Law(f"{_name}_under_hu", "hulls", "choice", _summary, _fn, ("union",),
                    ("MU_SUBSET", "HU"), _tags(("MU_SUBSET", "HU"))))


# the tree condition


implication("tau_gives_hu", "tree", "(mu tau) implies (HU)", ("MU_TAU",), ["HU"])
LAWS.append(Law("tau_gives_cumt", "tree", "choice", "(mu tau) implies every (mu Cumt k)",
                _needs("CUMT_ALL"), (), ("MU_TAU",), frozenset({"MU_TAU", "MU_CUMT_ALPHA"})))
implication("unions_hu_gives_tau", "tree", "with unions (HU) and (mu subset) imply (mu tau)",
            ("MU_SUBSET", "HU"), ["MU_TAU"], closure=("union",))


# derived functions and smallness

DERIVED = ("union", "intersection")
INTO = ("INTO_FAMILY",)


@law("derived_one_below_zero", "derived", "choice", "mu_1 <= mu_0",
     closure=DERIVED, premises=INTO + ("MU_SUBSET",), extra_tags=("MU_PR_I",))
def _d1(c):
    m0, m1 = c.mu_i(0), c.mu_i(1)
    for U in c.members:
        if not m1(U) <= m0(U):
            return {"U": U}
    return None


def _three_below_zero(c):
    m0, m3 = c.mu_i(0), c.mu_i(3)
    for U in c.members:
        if not m3(U) <= m0(U):
            return {"U": U, "mu_3": m3(U), "mu_0": m0(U)}
    return None


LAWS.append(Law("derived_three_below_zero", "derived", "choice", "mu_3 <= mu_0", _three_below_zero,
                DERIVED + ("singletons", "pairs"), INTO + ("MU_SUBSET",), frozenset({"MU_SUBSET", "MU_PR_I"})))
@law("derived_two_below_zero", "repairs", "choice", "mu_2 <= mu_0",
     closure=DERIVED, premises=INTO + ("MU_SUBSET",), extra_tags=("MU_PR_I",))
def _two_below_zero(c):
    m0, m2 = c.mu_i(0), c.mu_i(2)
    for U in c.members:
        if not m2(U) <= m0(U):
            return {"U": U}
    return None


# the same with (mu in) added: a point dropped from some Y <= U is then dropped from a pair inside U
LAWS.append(Law("derived_three_below_zero_given_in", "repairs", "choice", "mu_3 <= mu_0 once (mu in) holds",
                _three_below_zero, DERIVED + ("singletons", "pairs"), INTO + ("MU_SUBSET", "MU_IN"),
                frozenset({"MU_SUBSET", "MU_IN", "MU_PR_I"})))


@law("cum_union_within_first", "derived", "choice", "mu(U u U') <= U iff mu(U u U') = mu(U)",
     closure=DERIVED, premises=INTO + ("MU_SUBSET", "MU_CUM"))
def _d2(c):
    cf = c.cf
    for U in c.members:
        for U2 in c.members:
            m = cf(U | U2)
            if (m <= U) != (m == cf(U)):
                return {"U": U, "U2": U2}
    return None


@law("derived_within_mu", "derived", "choice", "mu_i(U) <= mu(U) and mu_i(U) <= U for i = 0, 1, 2",
     closure=DERIVED, premises=INTO + ("MU_SUBSET",), extra_tags=("MU_PR_I",))
def _d3(c):
    for i in range(3):
        d = c.mu_i(i)
        for U in c.members:
            if not (d(U) <= c.cf(U) and d(U) <= U):
                return {"U": U, "i": i}
    return None


def _d4(c):
    cf = c.cf
    for A in c.members:
        for B in c.members:
            if not cf(A | B) <= cf(A) | cf(B):
                return {"A": A, "B": B}
    return None


def _d5(c):
    m1, m2 = c.mu_i(1), c.mu_i(2)
    for U in c.members:
        if not m2(U) <= m1(U):
            return {"U": U}
    return None


def _d7(c):
    cf = c.cf
    for X in c.members:
        for Y in c.members:
            if not X <= Y:
                continue
            for U in c.members:
                if cf(X | U) <= X and not cf(Y | U) <= Y:
                    return {"X": X, "Y": Y, "U": U}
    return None


for _i in range(3):
    _pre = INTO + ("MU_SUBSET", f"MU_PR_I:{_i}")
    LAWS.append(Law(f"smallness_{_i}_bounds_union_selection", "derived", "choice",
                    "mu(A u B) <= mu(A) u mu(B)", _d4, DERIVED, _pre, _tags(_pre)))
    LAWS.append(Law(f"smallness_{_i}_orders_two_below_one", "derived", "choice", "mu_2 <= mu_1",
                    _d5, DERIVED, _pre, _tags(_pre)))
    LAWS.append(Law(f"smallness_{_i}_monotone_containment", "derived", "choice",
                    "X <= Y and mu(X u U) <= X give mu(Y u U) <= Y", _d7, DERIVED, _pre, _tags(_pre)))

    def _d6(c, i=_i):
        d = c.mu_i(i)
        for U in c.members:
            for U2 in c.members:
                if (d(U) <= U2) != (c.cf(U) <= U2):
                    return {"U": U, "U2": U2}
        return None

    LAWS.append(Law(f"smallness_{_i}_same_consequences", "derived", "choice",
                    f"mu_{_i}(U) <= U' iff mu(U) <= U'", _d6, DERIVED, _pre, _tags(_pre)))


def _pr_for(i):
    def run(c):
        d = c.mu_i(i)
        for X in c.members:
            for Y in c.members:
                if X <= Y and not X & d(Y) <= d(X):
                    return {"X": X, "Y": Y, "i": i}
        return None
    return run


for _i in (0, 1):
    LAWS.append(Law(f"derived_{_i}_preserves_pr", "derived", "choice", f"(mu PR) for mu_{_i}", _pr_for(_i),
                    DERIVED, INTO, frozenset({"MU_PR", "MU_PR_I"})))
_pre = INTO + ("MU_SUBSET", "SOME_PR_I")
LAWS.append(Law("derived_2_preserves_pr", "derived", "choice", "(mu PR) for mu_2", _pr_for(2),
                DERIVED, _pre, frozenset({"MU_PR", "MU_PR_I", "MU_SUBSET"})))


@law("derived_2_preserves_cum", "derived", "choice", "(mu CUM) for mu_2", closure=DERIVED,
     premises=INTO + ("MU_SUBSET", "MU_PR_I:2", "MU_CUM"))
def _d9(c):
    d = c.mu_i(2)
    for X in c.members:
        for Y in c.members:
            if d(X) <= Y <= X and d(X) != d(Y):
                return {"X": X, "Y": Y}
    return None


@law("cum_merges_zero_and_one", "derived", "choice", "mu_0 = mu_1", closure=DERIVED,
     premises=INTO + ("MU_SUBSET", "MU_CUM"), extra_tags=("MU_PR_I",))
def _d10(c):
    m0, m1 = c.mu_i(0), c.mu_i(1)
    for U in c.members:
        if m0(U) != m1(U):
            return {"U": U}
    return None


@law("smallness_variants_agree", "derived", "choice", "(mu PR_0), (mu PR_1), (mu PR_2) are equivalent",
     closure=DERIVED, premises=INTO + ("MU_SUBSET", "MU_CUM"), extra_tags=("MU_PR_I",))
def _pr_equiv(c):
    got = [c.holds(f"MU_PR_I:{i}") for i in range(3)]
    if len(set(got)) > 1:
        return {"PR_I": got}
    return None


# ranked conditions

implication("eq_gives_pr", "ranked_conditions", "(mu =) implies (mu PR)", ("MU_EQ",), ["MU_PR"])


@law("eq_matches_eq_prime", "ranked_conditions", "choice", "(mu =) iff (mu =')", closure=("intersection",),
     premises=("MU_SUBSET",), extra_tags=("MU_EQ", "MU_EQ_PRIME"))
def _eq_prime(c):
    a, b = c.holds("MU_EQ"), c.holds("MU_EQ_PRIME")
    return None if a == b else {"MU_EQ": a, "MU_EQ_PRIME": b}


implication("eq_gives_union", "ranked_conditions", "(mu =) implies (mu u)", ("MU_SUBSET", "MU_EQ"),
            ["MU_UNION"], closure=("union",))
implication("eq_nonempty_gives_par_union_cum", "ranked_conditions",
            "(mu =) with (mu empty) implies (mu ||), (mu u') and (mu CUM)",
            ("MU_SUBSET", "MU_EMPTY", "MU_EQ"), ["MU_PAR", "MU_UNION_PRIME", "MU_CUM"], closure=("union",))
implication("par_gives_eq", "ranked_conditions", "(mu ||) implies (mu =)", ("MU_SUBSET", "MU_PAR"),
            ["MU_EQ"], closure=("difference",))
implication("par_in_pr_give_eq", "ranked_conditions", "(mu ||), (mu in) and (mu PR) imply (mu =)",
            ("MU_SUBSET", "MU_PAR", "MU_IN", "MU_PR"), ["MU_EQ"], closure=("union", "singletons"))
implication("cum_eq_give_in", "ranked_conditions", "(mu CUM) and (mu =) imply (mu in)",
            ("MU_CUM", "MU_EQ"), ["MU_IN"], closure=("union", "singletons"))
implication("cum_eq_give_par", "ranked_conditions", "(mu CUM) and (mu =) imply (mu ||)",
            ("MU_SUBSET", "MU_CUM", "MU_EQ"), ["MU_PAR"], closure=("union",))
implication("pr_cum_par_give_eq", "ranked_conditions", "(mu PR), (mu CUM) and (mu ||) imply (mu =)",
            ("MU_PR", "MU_CUM", "MU_PAR"), ["MU_EQ"], closure=("powerset",))

RANKED_PRE = INTO + ("MU_EQ", "MU_IN", "MU_PR_I:3", "MU_EMPTY_FIN")


def _mu3_below(c):
    m3 = c.mu_i(3)
    for U in c.members:
        if not m3(U) <= c.cf(U):
            return {"U": U}
    return None


def _mu3_equal(c):
    m3 = c.mu_i(3)
    for U in c.members:
        if m3(U) != c.cf(U):
            return {"U": U, "mu_3": m3(U)}
    return None


def _mu3_conditions(c):
    m3 = c.mu_i(3)
    for cond in ("MU_SUBSET", "MU_PR", "MU_EMPTY_FIN", "MU_EQ", "MU_IN"):
        if not check(cond, m3).holds:
            return {"fails": cond}
    return None


_R = ("union", "singletons")
_rt = _tags(RANKED_PRE)
LAWS += [
    Law("ranked_pair_selection_below_mu", "ranked_conditions", "choice", "mu_3 <= mu", _mu3_below, _R,
        RANKED_PRE, _rt),
    Law("ranked_pair_selection_equals_mu", "ranked_conditions", "choice", "mu = mu_3 on finite sets",
        _mu3_equal, _R, RANKED_PRE, _rt),
    Law("ranked_pair_selection_is_ranked", "ranked_conditions", "choice",
        "mu_3 satisfies (mu subset), (mu PR), (mu empty fin), (mu =) and (mu in)", _mu3_conditions, _R,
        RANKED_PRE, _rt),
    # the two statements above need mu_3(U) to be a member when it is empty, or mu(U) <= U
    Law("ranked_pair_selection_equals_mu_with_empty", "repairs", "choice",
        "mu = mu_3 on finite sets when the empty set is a member", _mu3_equal, _R + ("empty",), RANKED_PRE, _rt),
    Law("ranked_pair_selection_equals_mu_given_subset", "repairs", "choice",
        "mu = mu_3 on finite sets under (mu subset)", _mu3_equal, _R, RANKED_PRE + ("MU_SUBSET",), _rt),
    Law("ranked_pair_selection_is_ranked_with_empty", "repairs", "choice",
        "mu_3 satisfies the ranked conditions when the empty set is a member", _mu3_conditions, _R + ("empty",),
        RANKED_PRE, _rt),
    Law("ranked_pair_selection_is_ranked_given_subset", "repairs", "choice",
        "mu_3 satisfies the ranked conditions under (mu subset)", _mu3_conditions, _R,
        RANKED_PRE + ("MU_SUBSET",), _rt),
]


@law("ranked_hat_of_pair_selection", "ranked_conditions", "choice", "mu = hat(mu_3)",
     closure=("union", "singletons", "hat"), premises=RANKED_PRE)
def _mu3_hat(c):
    m3 = c.mu_i(3)
    for U in c.members:
        if hat(c.family, m3(U)) != c.cf(U):
            return {"U": U}
    return None


# hat


@law("hat_distributes_over_union", "hat", "family", "hat(X u Y) = hat(X) u hat(Y)",
     closure=("hat", "union"))
def _hat_union(c):
    for X in c.subsets:
        for Y in c.subsets:
            if c.hat(X | Y) != c.hat(X) | c.hat(Y):
                return {"X": X, "Y": Y}
    return None


@law("hat_basic_laws", "hat", "family",
     "hat is a function, hat X <= Y gives X <= Y, X <= hat Y gives hat X <= hat Y, "
     "hat(X n Y) <= hat X n hat Y", closure=("hat",))
def _hat_basic(c):
    h = {X: c.hat(X) for X in c.subsets}
    for X in c.subsets:
        if not X <= h[X] or c.hat(set(X)) != h[X]:
            return {"X": X, "part": "function"}
        for Y in c.subsets:
            if h[X] <= Y and not X <= Y:
                return {"X": X, "Y": Y, "part": "below"}
            if X <= h[Y] and not h[X] <= h[Y]:
                return {"X": X, "Y": Y, "part": "monotone"}
            if not h[X & Y] <= h[X] & h[Y]:
                return {"X": X, "Y": Y, "part": "meet"}
    return None


@law("hat_keeps_theory", "hat", "family", "X and hat X lie in the same members", closure=("hat",))
def _hat_theory(c):
    for X in c.subsets:
        H = c.hat(X)
        for m in c.family.members:
            if (X <= m) != (H <= m):
                return {"X": X, "member": m}
    return None


@law("hat_commutes_with_formulas", "hat", "family",
     "hat(A) n M(psi) = hat(A n M(psi)) and hat(A) - M(phi) = hat(A - M(phi))", closure=("boolean",))
def _hat_formula(c):
    full = c.family.universe.as_set
    formulas = [m for m in c.family.members if full - m in c.family.member_set]
    for A in c.subsets:
        hA = c.hat(A)
        for F in formulas:
            if hA & F != c.hat(A & F):
                return {"A": A, "psi": F}
            if hA - F != c.hat(A - F):
                return {"A": A, "phi": F}
    return None


@law("hat_difference_bound", "hat", "family", "hat(A) - hat(B) <= hat(A - B)", closure=("boolean",))
def _hat_diff(c):
    for A in c.subsets:
        for B in c.subsets:
            if not c.hat(A) - c.hat(B) <= c.hat(A - B):
                return {"A": A, "B": B}
    return None


# Lambda


@law("segments_restrict", "segments", "structure",
     "A in Lambda(Y) and A <= X <= Y give A in Lambda(X)", extra_tags=("LAMBDA_PR",))
def _seg_restrict(c):
    s = c.structure
    for Y in c.subsets:
        for A in c.lam(Y):
            pts = c.oracle.points(A)
            for X in c.subsets:
                if pts <= X <= Y and A not in c.lam(X):
                    return {"Y": Y, "X": X, "A": A}
    return None


@law("segments_meet", "segments", "structure",
     "A in Lambda(Y), A <= X <= Y, B in Lambda(X) give A n B in Lambda(Y)", extra_tags=("LAMBDA_AND",))
def _seg_meet(c):
    for Y in c.subsets:
        LY = set(c.lam(Y))
        for A in c.lam(Y):
            pts = c.oracle.points(A)
            for X in c.subsets:
                if pts <= X <= Y:
                    for B in c.lam(X):
                        if A & B not in LY:
                            return {"Y": Y, "X": X, "A": A, "B": B}
    return None


@law("segments_join", "segments", "structure",
     "A in Lambda(Y), B in Lambda(X) give some member of Lambda(X u Y) inside A u B", extra_tags=("LAMBDA_CUMFIN",))
def _seg_join(c):
    for Y in c.subsets:
        for X in c.subsets:
            LU = c.lam(X | Y)
            for A in c.lam(Y):
                for B in c.lam(X):
                    if not any(Z <= A | B for Z in LU):
                        return {"Y": Y, "X": X, "A": A, "B": B}
    return None


@law("ranked_segments_chain", "segments", "ranked", "members of Lambda(X) are ordered by inclusion",
     extra_tags=("LAMBDA_EQ",))
def _rk_chain(c):
    for X in c.subsets:
        L = c.lam(X)
        for A in L:
            for B in L:
                if not (A <= B or B <= A):
                    return {"X": X, "A": A, "B": B}
    return None


@law("ranked_segments_trace", "segments", "ranked", "A in Lambda(X), Y <= X meeting A give Y n A in Lambda(Y)",
     extra_tags=("LAMBDA_EQ",))
def _rk_trace(c):
    for X in c.subsets:
        for A in c.lam(X):
            for Y in c.subsets:
                if Y <= X and Y & A and Y & A not in c.lam(Y):
                    return {"X": X, "A": A, "Y": Y}
    return None


@law("ranked_segments_intersect", "segments", "ranked",
     "a nonempty intersection of members of Lambda(X) is in Lambda(X)", extra_tags=("LAMBDA_EQ",))
def _rk_inter(c):
    for X in c.subsets:
        L = c.lam(X)
        for r in range(1, len(L) + 1):
            for sub in combinations(L, r):
                I = frozenset.intersection(*sub)
                if I and I not in L:
                    return {"X": X, "segments": list(sub)}
    return None


@law("ranked_segments_extend", "segments", "ranked", "X <= Y and A in Lambda(X) give B in Lambda(Y) with B n X = A",
     extra_tags=("LAMBDA_EQ",))
def _rk_extend(c):
    for X in c.subsets:
        for Y in c.subsets:
            if X <= Y:
                for A in c.lam(X):
                    if not any(B & X == A for B in c.lam(Y)):
                        return {"X": X, "Y": Y, "A": A}
    return None


def _lambda_law(tag):
    def run(c):
        v = check(tag, c.structure, c.family)
        return None if v.holds else {"fails": tag, "witness": v.witness}
    return run


for _tag in ("LAMBDA_AND", "LAMBDA_PR", "LAMBDA_CUMFIN"):
    LAWS.append(Law(f"transitive_{_tag.lower()}", "limit_laws", "structure", f"({_tag}) on transitive structures",
                    _lambda_law(_tag), (), (), frozenset({_tag})))
LAWS.append(Law("ranked_lambda_eq", "limit_laws", "ranked", "(LAMBDA_EQ) on ranked structures",
                _lambda_law("LAMBDA_EQ"), (), (), frozenset({"LAMBDA_EQ"})))


@law("limit_consequence_and_or", "limit_laws", "structure",
     "limit consequence of a transitive structure satisfies (AND) and (OR)", extra_tags=("AND", "OR"))
def _limit_and_or(c):
    s = LogicSubject(c.family, "limit", oracle=c.oracle)
    for tag in ("AND", "OR"):
        w = logic_violation(tag, s)
        if w is not None:
            return {"fails": tag, "witness": w}
    return None


# Booth pairs


@law("booth_minus_avoids_plus", "booth", "booth",
     "mu+(X) meeting Y gives mu+(X) n mu-(Y) empty, and X n mu-(X) is empty",
     premises=("MU_MINUS:1", "PLUS:MU_EMPTY", "PLUS:MU_SUBSET"), extra_tags=("MU_EMPTY", "MU_SUBSET"))
def _booth_fact(c):
    bp = c.bp
    for X in c.family.members:
        if X & bp.minus(X):
            return {"X": X, "part": "own"}
        for Y in c.family.members:
            if bp.plus(X) & Y and bp.plus(X) & bp.minus(Y):
                return {"X": X, "Y": Y}
    return None


@law("booth_pair_conditions", "booth", "booth",
     "pairs read off a Booth structure satisfy the plus gate and (mu- 1) to (mu- 5)",
     extra_tags=("MU_MINUS", "MU_SUBSET", "MU_EMPTY", "MU_EQ"))
def _booth_conditions(c):
    if c.source is None:
        return None
    for cond in ("PLUS:MU_SUBSET", "PLUS:MU_EMPTY", "PLUS:MU_EQ") + tuple(f"MU_MINUS:{j}" for j in range(1, 6)):
        if not c.holds(cond):
            return {"fails": cond}
    return None


# hat-composed ranked choice


@law("ranked_hat_choice", "ranked_hat", "extracted",
     "for mu = hat o mu_Z over a ranked structure: mu_Z = mu_3 = mu, and mu satisfies (mu =), (mu in), "
     "(mu empty fin), (mu PR_3)", closure=("hat", "union", "singletons"),
     extra_tags=("MU_EQ", "MU_IN", "MU_EMPTY_FIN", "MU_PR_I"))
def _ranked_hat_choice(c):
    if not (c.hat_composed and isinstance(c.structure, RankedStructure)):
        return None
    m3 = c.mu_i(3)
    for X in c.members:
        if c.mu_z(X) != m3(X):
            return {"X": X, "part": "mu_Z = mu_3"}
        if c.cf(X) != c.mu_z(X):
            return {"X": X, "part": "mu = mu_Z"}
    for cond in ("MU_EQ", "MU_IN", "MU_EMPTY_FIN", "MU_PR_I:3"):
        if not c.holds(cond):
            return {"fails": cond}
    return None


# extracted choice functions and representation


def _round_trip(flavor):
    from .represent import represent, verify_representation

    def run(c):
        try:
            s = represent(c.cf, flavor)
        except RepresentationRejected as e:
            return {"rejected_by": e.verdict.condition}
        rep = verify_representation(s, c.cf, "exact")
        return None if rep.ok else {"mismatch": rep.mismatch}
    return run


@law("smooth_structures_pass_cum_hierarchy", "representation", "extracted",
     "choice functions of smooth structures satisfy every (mu Cum k)", extra_tags=("MU_CUM_ALPHA", "HUX"))
def _smooth_cum(c):
    if c.hat_composed or not c.report.smooth:
        return None
    return _needs("CUM_ALL", "HUX")(c)


@law("transitive_smooth_structures_pass_cumt_and_tau", "representation", "extracted",
     "choice functions of transitive smooth structures satisfy every (mu Cumt k) and (mu tau)",
     extra_tags=("MU_CUMT_ALPHA", "MU_TAU"))
def _trans_cumt(c):
    if c.hat_composed or not (c.report.smooth and c.report.transitive):
        return None
    return _needs("CUMT_ALL", "MU_TAU")(c)


def _extracted_round_trip(flavor, need):
    rt = _round_trip(flavor)

    def run(c):
        if c.hat_composed or not all(getattr(c.report, p) for p in need):
            return None
        return rt(c)
    return run


for _flavor, _need in (("general", ()), ("smooth", ("smooth",)), ("smooth_transitive", ("smooth", "transitive"))):
    LAWS.append(Law(f"{_flavor}_round_trip_of_structures", "representation", "extracted",
                    f"choice functions of {' '.join(_need) or 'all'} structures round-trip through the "
                    f"{_flavor} construction", _extracted_round_trip(_flavor, _need), (), (),
                    frozenset({"MU_SUBSET", "MU_PR", "HUX", "MU_TAU"})))


def _gate_law(flavor):
    from .represent import GATES
    rt = _round_trip(flavor)

    def run(c):
        want = all(c.holds(g) for g in GATES[flavor])
        got = rt(c)
        if want and got is not None:
            return {"gate": True, **got}
        if not want and (got is None or "rejected_by" not in got):
            return {"gate": False, "accepted": True}
        return None
    return run


for _flavor in ("general", "smooth", "smooth_transitive"):
    from .represent import GATES as _GATES
    LAWS.append(Law(f"{_flavor}_gate_is_exact", "representation", "choice",
                    f"the {_flavor} construction succeeds exactly when its gate holds",
                    _gate_law(_flavor), (), (), _tags(_GATES[_flavor])))


# runner


@dataclass
class LawResult:
    law: Law
    checked: int = 0
    vacuous: int = 0
    applied: int = 0
    counterexample: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_dict(self) -> dict:
        return {
            "law": self.law.name,
            "suite": self.law.suite,
            "summary": self.law.summary,
            "closure": list(self.law.closure),
            "premises": list(self.law.premises),
            "checked": self.checked,
            "vacuous": self.vacuous,
            "applied": self.applied,
            "holds": self.ok,
            "counterexample": _render(self.counterexample) if self.counterexample else None,
        }


@dataclass
class SuiteReport:
    results: list
    sources: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    @property
    def violations(self) -> list:
        return [r for r in self.results if not r.ok]

    def to_dict(self, timing: bool = True) -> dict:
        out = {"ok": self.ok, "sources": self.sources, "laws": [r.to_dict() for r in self.results]}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


def select(names: Optional[Iterable[str]] = None, suites: Optional[Iterable[str]] = None,
           conditions: Optional[Iterable[str]] = None) -> list:
    chosen = list(LAWS)
    if names:
        names = set(names)
        unknown = names - {l.name for l in LAWS}
        if unknown:
            raise InputError(f"unknown law(s): {', '.join(sorted(unknown))}")
        chosen = [l for l in chosen if l.name in names]
    if suites:
        suites = set(suites)
        unknown = suites - {l.suite for l in LAWS}
        if unknown:
            raise InputError(f"unknown suite(s): {', '.join(sorted(unknown))}")
        chosen = [l for l in chosen if l.suite in suites]
    if conditions:
        tags = {c.split(":")[0] for c in conditions}
        chosen = [l for l in chosen if l.tags & tags]
    return chosen


def _run_case(results, laws, case):
    for r in (results[l.name] for l in laws):
        lw = r.law
        r.checked += 1
        if not all(case.holds(p) for p in lw.premises):
            r.vacuous += 1
            continue
        r.applied += 1
        if r.counterexample is None:
            found = lw.conclude(case)
            if found is not None:
                r.counterexample = {"case": case.describe(), **found}


def _choice_families(max_points, max_family):
    for n in range(1, max_points + 1):
        yield from families(universe(n), max_family, include_empty=True)


def _all_structures(max_points):
    """Copy-free transitive structures, plus transitive ones with a doubled point."""
    for n in range(1, max_points + 1):
        yield from transitive_relations(universe(n))
    for n, copies in ((2, {"a": 2, "b": 2}), (3, {"a": 2})):
        if n <= max_points:
            for s in copied_structures(universe(n), copies):
                if _transitive_irreflexive(s):
                    yield s


def _transitive_irreflexive(s: PrefStructure) -> bool:
    rel = s.rel
    if any(a == b for a, b in rel):
        return False
    return all((a, d) in rel for a, b in rel for c, d in rel if b == c)


def _extraction_sources(max_points, max_family, copy_sample):
    for n in range(1, min(max_points, 3) + 1):
        uni = universe(n)
        fams = list(families(uni, min(max_family, 5), include_empty=True))
        structs = list(relations(uni))
        if n == 3 and copy_sample:
            structs += list(copied_structures(uni, {"a": 2}, sample=copy_sample, seed=7))
        for s in structs:
            for f in fams:
                yield s, f, False
    for n in range(1, max_points + 1):
        uni = universe(n)
        fam = DomainFamily.power(uni)
        for r in rankings(uni):
            yield r, fam, True


def run(laws: Optional[list] = None, *, max_points: int = 3, max_family: int = 8,
        max_functions: int = MAX_FUNCTIONS_PER_FAMILY, copy_sample: int = 200, choice_points: int = 3,
        progress: Optional[Callable] = None) -> SuiteReport:
    """Run the laws over every subject the sweep bounds allow.

    Choice functions: every family (up to renaming) over at most ``max_points``
    points with at most ``max_family`` members, and every mu with mu(X) <= X on
    it; families with more than ``max_functions`` such mu are skipped and
    counted. A second pass takes every mu at all on families of at most three
    members, so laws without (mu subset) among their premises also meet
    functions that leave their argument. Choice functions stop at
    ``choice_points`` points even when ``max_points`` is larger.
    """
    t0 = time.perf_counter()
    laws = list(LAWS if laws is None else laws)
    results = {l.name: LawResult(l) for l in laws}
    sources = {}
    by_kind = {k: [l for l in laws if l.kind == k] for k in KINDS}

    if by_kind["choice"]:
        n_fam = n_cf = skipped = 0
        for fam in _choice_families(min(max_points, choice_points), max_family):
            active = [l for l in by_kind["choice"] if l.applies_to(fam)]
            if not active:
                continue
            count = prod(2 ** len(X) for X in fam.members)
            if count > max_functions:
                skipped += 1
                continue
            n_fam += 1
            for cf in choice_functions(fam):
                n_cf += 1
                _run_case(results, active, ChoiceCase(cf))
            if len(fam) <= 3 and len(fam.universe) <= 3:
                for cf in choice_functions(fam, subset=False):
                    if not all(v <= X for X, v in cf.items()):
                        n_cf += 1
                        _run_case(results, active, ChoiceCase(cf))
            if progress:
                progress("choice", n_cf)
        sources["choice"] = {"families": n_fam, "functions": n_cf, "families_skipped": skipped}

    if by_kind["family"]:
        n = 0
        seen = set()
        for k in range(1, max_points + 1):
            for fam in families(universe(k), max(max_family, 2 ** k), include_empty=True,
                                predicate=lambda f: f.supports_hat):
                if fam.members in seen:
                    continue
                seen.add(fam.members)
                n += 1
                case = FamilyCase(fam)
                _run_case(results, [l for l in by_kind["family"] if l.applies_to(fam)], case)
        sources["family"] = {"families": n}

    if by_kind["structure"]:
        n = 0
        for s in _all_structures(max_points):
            n += 1
            _run_case(results, by_kind["structure"], _NoPremise(StructureCase(s)))
        sources["structure"] = {"transitive_structures": n}

    if by_kind["ranked"]:
        n = 0
        for k in range(1, max_points + 1):
            for r in rankings(universe(k)):
                n += 1
                _run_case(results, by_kind["ranked"], _NoPremise(StructureCase(r)))
        sources["ranked"] = {"rankings": n}

    if by_kind["booth"]:
        n_s = n_p = 0
        for k in range(1, min(max_points, 4) + 1):
            for r in rankings(universe(k), max_layers=3):
                for b in booth_structures(r):
                    n_s += 1
                    _run_case(results, by_kind["booth"], BoothCase(BoothPair.from_structure(b), b))
        for bp in _all_booth_pairs(2):
            n_p += 1
            _run_case(results, by_kind["booth"], BoothCase(bp))
        sources["booth"] = {"booth_structures": n_s, "arbitrary_pairs": n_p}

    if by_kind["extracted"]:
        n = 0
        for s, fam, hat_composed in _extraction_sources(max_points, max_family, copy_sample):
            active = [l for l in by_kind["extracted"] if l.applies_to(fam)]
            if hat_composed and not fam.supports_hat:
                continue
            if active:
                n += 1
                _run_case(results, active, ExtractedCase(s, fam, hat_composed))
        sources["extracted"] = {"cases": n}

    return SuiteReport([results[l.name] for l in laws], sources, time.perf_counter() - t0)


class _NoPremise:
    def __init__(self, case):
        self._case = case

    def holds(self, cond):
        return True

    def __getattr__(self, name):
        return getattr(self._case, name)


def _all_booth_pairs(n: int):
    """Every pair (mu+, mu-) with mu+(X) <= X and mu-(X) arbitrary, on a power set."""
    fam = DomainFamily.power(universe(n))
    pluses = list(choice_functions(fam))
    minuses = list(choice_functions(fam, subset=False))
    for p in pluses:
        for m in minuses:
            yield BoothPair(p, m)


def suites() -> list:
    return sorted({l.suite for l in LAWS})
