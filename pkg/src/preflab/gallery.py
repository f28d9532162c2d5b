"""Generators for worked examples and their finite analogues.

Each generator returns an :class:`Instance`: the data plus the claims it is
documented to satisfy or violate. ``Instance.verify`` re-runs every claim;
generators call it before returning, so a claim that does not re-verify is
an error rather than a silently wrong instance.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional

from .conditions import ChoiceFunction, check, h_set
from .conditions.choice import ConditionId
from .conditions.derived import derive_mu_i
from .conditions.logical import RevisionOperator, star4_violation
from .errors import InputError
from .instances import InstanceData, make_instance
from .logic import Language
from .structures import DistanceSpace, PrefStructure, check_structure, consequence, mu
from .sweep import blocks_families, lattice_families, relations, transitive_relations, universe
from .universe import DomainFamily, Universe, close_family, fmt, hat

MAX_K = 3
MAX_DEPTH = 5


class SearchExhausted(Exception):
    """A search-based generator found nothing within its budget."""

    def __init__(self, name: str, report: dict):
        super().__init__(f"{name}: search exhausted without an instance")
        self.name = name
        self.report = report


@dataclass
class Claim:
    """A documented property outside the condition catalogue."""

    label: str
    expected: Any
    evaluate: Callable[[], Any]


@dataclass
class Instance:
    name: str
    params: dict
    family: DomainFamily
    payload: Any
    expected: list  # (condition string, bool)
    claims: list = field(default_factory=list)
    options: dict = field(default_factory=dict)  # variant / scope for logical conditions
    search: Optional[dict] = None

    @property
    def universe(self) -> Universe:
        return self.family.universe

    def data(self) -> InstanceData:
        return make_instance(self.payload, self.family, self.expected)

    def verify(self) -> list:
        rows = []
        for cond, want in self.expected:
            v = check(cond, self.payload, self.family, **self.options)
            rows.append({"claim": str(ConditionId.parse(cond)), "expected": want, "actual": v.holds,
                         "ok": v.holds == want, "verdict": v.to_dict()})
        for c in self.claims:
            got = c.evaluate()
            rows.append({"claim": c.label, "expected": c.expected, "actual": got, "ok": got == c.expected})
        return rows

    def all_ok(self) -> bool:
        return all(r["ok"] for r in self.verify())


def _finish(inst: Instance) -> Instance:
    bad = [r for r in inst.verify() if not r["ok"]]
    if bad:
        raise AssertionError(f"{inst.name}: claim {bad[0]['claim']} does not re-verify")
    return inst


def _int_param(params, key, default, lo, hi):
    raw = params.get(key, default)
    try:
        v = int(raw)
    except (TypeError, ValueError):
        raise InputError(f"parameter {key} must be an integer") from None
    if not lo <= v <= hi:
        raise InputError(f"parameter {key} must lie in {lo}..{hi}")
    return v


# staged cumulativity


def cum_hierarchy_structure(k: int):
    """Points a, b, c, x0..x(k+1), x'0..x'k with a < b < c, x_i < x_(i+1),
    x_i < x'_i; not transitive. Returns (structure, U, generators)."""
    xs = [f"x{i}" for i in range(k + 2)]
    xps = [f"x'{i}" for i in range(k + 1)]
    pts = ["a", "b", "c"] + xs + xps
    pairs = [("a", "b"), ("b", "c")]
    pairs += [(xs[i], xs[i + 1]) for i in range(k + 1)]
    pairs += [(xs[i], xps[i]) for i in range(k + 1)]
    s = PrefStructure.from_relation(pts, pairs)
    U = frozenset(["a", "c", "x0"])
    gens = [U] + [frozenset(["c", xs[i], xps[i], xs[i + 1]]) for i in range(k)]
    last = frozenset(["a", "b", "c", xs[k], xps[k], xs[k + 1]])
    return s, U, gens + [last]


def cum_hierarchy(params) -> Instance:
    k = _int_param(params, "k", 1, 1, MAX_K)
    s, U, gens = cum_hierarchy_structure(k)
    fam = close_family(DomainFamily(s.universe, tuple(gens)), ("pairwise_intersection",))
    cf = ChoiceFunction.from_structure(s, fam)
    expected = [("MU_SUBSET", True), ("MU_PR", True), ("MU_CUM", True)]
    expected += [(f"MU_CUMT_ALPHA:{a}", True) for a in range(k)]
    expected += [(f"MU_CUM_ALPHA:{k}", False)]

    def witness_point():
        v = check(f"MU_CUM_ALPHA:{k}", cf)
        return None if v.holds else v.witness["point"]

    claims = [
        Claim("family closed under intersections", True, lambda: fam.closed_arbitrary_intersection),
        Claim(f"MU_CUM_ALPHA:{k} witness point", "c", witness_point),
        Claim("mu(U) = U", True, lambda: cf(U) == U),
    ]
    return _finish(Instance("cum_hierarchy", {"k": k}, fam, cf, expected, claims))


# no smooth transitive representation


def no_transitive_choice() -> ChoiceFunction:
    U = frozenset(["u1", "u2", "u3", "u4"])
    Y1 = frozenset(["u4", "v1", "v2", "v3", "v4"])
    Y21 = frozenset(["u2", "v2", "v4"])
    Y22 = frozenset(["u1", "v1", "v3"])
    uni = Universe.of(sorted(U | Y1))
    fam = DomainFamily(uni, (U, Y1, Y21, Y22))
    return ChoiceFunction(fam, {
        U: {"u3", "u4"},
        Y1: {"v3", "v4"},
        Y21: {"u2", "v2"},
        Y22: {"u1", "v1"},
    })


def no_transitive(params) -> Instance:
    if params:
        raise InputError("no_transitive takes no parameters")
    cf = no_transitive_choice()
    expected = [("MU_SUBSET", True)]
    expected += [(f"MU_CUMT_ALPHA:{a}", True) for a in range(MAX_K + 1)]
    expected += [("MU_TAU", False)]

    def vacuous():
        ms = cf.family.members
        return not any(cf(A) <= B for A in ms for B in ms if A != B)

    claims = [Claim("no mu(A) inside another member B", True, vacuous)]
    return _finish(Instance("no_transitive", {}, cf.family, cf, expected, claims))


# a descending branch that never returns


def tau_vs_hu_structure(depth: int):
    """x > y1 > y2 > ..., y_(n-1) > z_n, and from z_n a chain of length n back
    into U. "p > q" puts q below p. Returns (structure, U, [Y_1 .. Y_depth], other sets)."""
    ys = ["x"] + [f"y{i}" for i in range(1, depth + 1)]
    pairs, Ys, chains, back = [], [], [], []
    for n in range(1, depth + 1):
        z = f"z{n}"
        pairs += [(ys[n], ys[n - 1]), (z, ys[n - 1])]
        Ys.append(frozenset([ys[n - 1], ys[n], z]))
        prev = z
        for j in range(1, n + 1):
            u = f"u{n}_{j}"
            pairs.append((u, prev))
            chains.append(frozenset([prev, u]))
            prev = u
        back.append(prev)
    U = frozenset(["x"] + back)
    pts = sorted(set(ys) | {f"z{n}" for n in range(1, depth + 1)} | {p for c in chains for p in c})
    return PrefStructure.from_relation(pts, pairs), U, Ys, chains


def tau_vs_hu(params) -> Instance:
    depth = _int_param(params, "depth", 3, 1, MAX_DEPTH)
    s, U, Ys, chains = tau_vs_hu_structure(depth)
    fam = DomainFamily(s.universe, tuple([U] + Ys + chains))
    cf = ChoiceFunction.from_structure(s, fam)
    expected = [("MU_SUBSET", True), ("MU_PR", True), ("HU", True)]
    H = lambda: h_set(cf, U).result
    claims = [Claim("x in mu(U)", True, lambda: "x" in cf(U)),
              Claim("structure smooth on the family", True, lambda: check_structure(s, fam).smooth)]
    for i, Y in enumerate(Ys, 1):
        claims.append(Claim(f"Y{i} not inside H(U)", True, lambda Y=Y: not Y <= H()))
    return _finish(Instance("tau_vs_hu", {"depth": depth}, fam, s, expected, claims))


# limit consequence without closure under intersection


def initial_segments(params) -> Instance:
    if params:
        raise InputError("initial_segments takes no parameters")
    lang = Language(("p", "q"))
    a, b, c, d = "TT", "TF", "FT", "FF"
    s = PrefStructure.from_relation(lang.model_names, [(a, b), (a, c), (b, d), (c, d)])
    fam = DomainFamily.power(lang.universe)
    everything = lang.universe.as_set
    expected = [("LAMBDA_AND", False)]
    claims = [
        Claim("{a,b} and {a,c} are minimizing initial segments", True,
              lambda: all(any(m.points == S for m in _lam(s, everything)) for S in
                          (frozenset([a, b]), frozenset([a, c])))),
        Claim("limit: true entails p", True, lambda: consequence(s, "true", "p", "limit", lang)),
        Claim("limit: true entails q", True, lambda: consequence(s, "true", "q", "limit", lang)),
        Claim("limit: true entails p & q", False, lambda: consequence(s, "true", "p & q", "limit", lang)),
    ]
    inst = Instance("initial_segments", {}, fam, s, expected, claims)
    inst.options = {"variant": "limit"}
    return _finish(inst)


def _lam(s, X):
    from .structures import enumerate_mise
    return enumerate_mise(s, X)


# staged transitive cumulativity fails without transitivity


def cumt_fail(params) -> Instance:
    if params:
        raise InputError("cumt_fail takes no parameters")
    s = PrefStructure.from_relation("abc", [("c", "b"), ("b", "a")])
    U, X0, X1 = frozenset("ac"), frozenset("bc"), frozenset("ab")
    fam = close_family(DomainFamily(s.universe, (U, X0, X1)), ("pairwise_intersection",))
    cf = ChoiceFunction.from_structure(s, fam)
    expected = [("MU_SUBSET", True), ("MU_PR", True), ("MU_CUMT_ALPHA:1", False)]
    claims = [
        Claim("structure smooth on the family", True, lambda: check_structure(s, fam).smooth),
        Claim("family is U, X0, X1 and their intersections", True,
              lambda: set(fam.members) == {U, X0, X1, frozenset("a"), frozenset("b"), frozenset("c"),
                                           frozenset()}),
        Claim("X1 & mu(U) = {a}, mu(X1) = {b}", True,
              lambda: X1 & cf(U) == frozenset("a") and cf(X1) == frozenset("b")),
    ]
    return _finish(Instance("cumt_fail", {}, fam, s, expected, claims))


# searches over restricted families


def _budget(params, default):
    return _int_param(params, "budget", default, 1, 10_000_000)


def _max_points(params):
    return _int_param(params, "max_points", 4, 2, 4)


def _ordered_relations(uni, transitive_only):
    src = transitive_relations(uni) if transitive_only else relations(uni)
    return sorted(src, key=lambda s: (len(s.rel), sorted(s.rel)))


def _hat_choice(s, fam) -> ChoiceFunction:
    return ChoiceFunction(fam, {X: hat(fam, mu(s, X)) for X in fam.members}, validate=False)


def _staged_search(name, params, test, *, transitive_only=True, default_budget=2_000_000):
    """Blocks families first, then lattice families; universes of 2..max points.
    Relations are tried sparsest first. ``test(s, fam)`` returns a witness or None."""
    budget = _budget(params, default_budget)
    top = _max_points(params)
    tried = {"blocks": 0, "lattice": 0}
    spent = 0
    for stage, gen in (("blocks", blocks_families), ("lattice", lattice_families)):
        for n in range(2, top + 1):
            uni = universe(n)
            rels = _ordered_relations(uni, transitive_only)
            for fam in gen(uni):
                for s in rels:
                    if spent >= budget:
                        raise SearchExhausted(name, {"tried": tried, "budget": budget, "stopped": "budget"})
                    spent += 1
                    tried[stage] += 1
                    w = test(s, fam)
                    if w is not None:
                        return s, fam, {"stage": stage, "tried": tried, "budget": budget, "witness": w}
    raise SearchExhausted(name, {"tried": tried, "budget": budget, "stopped": "space exhausted"})


def nondp_pr_fail(params) -> Instance:
    def test(s, fam):
        v = check("PR", s, fam)
        return None if v.holds else v.witness

    s, fam, report = _staged_search("nondp_pr_fail", params, test)
    cf = _hat_choice(s, fam)
    W = report["witness"]
    T, T2 = W["T"], W["T2"]
    claims = [
        Claim("hat(mu(T)) & T' inside hat(mu(T & T'))", False,
              lambda: hat(fam, mu(s, T)) & T2 <= hat(fam, mu(s, T & T2))),
        Claim("mu(T) is a family member", False, lambda: mu(s, T) in fam.member_set),
        Claim("structure transitive and smooth on the family", True,
              lambda: (lambda r: r.transitive and r.smooth)(check_structure(s, fam))),
    ]
    report["witness"] = {k: fmt(v) for k, v in W.items()}
    inst = Instance("nondp_pr_fail", dict(params), fam, s, [("MU_PR", True), ("PR", False)], claims,
                    search=report)
    return _finish(inst)


def ring_space(n: int) -> DistanceSpace:
    pts = [f"m{i}" for i in range(n)]
    d = {(pts[i], pts[j]): min(j - i, n - (j - i)) for i in range(n) for j in range(i + 1, n)}
    return DistanceSpace.of(pts, d)


def nondp_star4_fail(params) -> Instance:
    budget = _budget(params, 100_000)
    top = _int_param(params, "max_points", 6, 3, 6)
    tried = {"blocks": 0, "lattice": 0}
    spent = 0
    for stage, gen in (("blocks", blocks_families), ("lattice", lattice_families)):
        for n in range(3, top + 1):
            space = ring_space(n)
            uni = Universe.of(sorted(space.points))
            for fam in gen(uni):
                if spent >= budget:
                    raise SearchExhausted("nondp_star4_fail", {"tried": tried, "budget": budget,
                                                               "stopped": "budget"})
                spent += 1
                tried[stage] += 1
                w = star4_violation(RevisionOperator(space, fam))
                if w is None:
                    continue
                r = RevisionOperator(space, fam)
                T, T2, T3 = w["T"], w["T2"], w["T3"]
                from .structures import revise
                claims = [
                    Claim("revision result is a family member", False, lambda: revise(space, T, T2) in fam.member_set),
                    Claim("hat(T * T') meets T''", True, lambda: bool(r.revised(T, T2) & T3)),
                ]
                report = {"stage": stage, "tried": tried, "budget": budget, "ring_size": n,
                          "witness": {k: fmt(v) for k, v in w.items()}}
                return _finish(Instance("nondp_star4_fail", dict(params), fam, space, [("STAR4", False)], claims,
                                        search=report))
    raise SearchExhausted("nondp_star4_fail", {"tried": tried, "budget": budget, "stopped": "space exhausted"})


def nondp_mu01_cum_fail(params) -> Instance:
    def test(s, fam):
        if not fam.closed_finite_union or not check_structure(s, fam).smooth:
            return None
        cf = _hat_choice(s, fam)
        if not check("MU_CUM", cf).holds:
            return None
        d = {i: derive_mu_i(cf, i) for i in (0, 1, 2)}
        v0, v1 = check("MU_CUM", d[0]), check("MU_CUM", d[1])
        if v0.holds or v1.holds or not check("MU_CUM", d[2]).holds:
            return None
        return {"mu_0": v0.witness, "mu_1": v1.witness}

    s, fam, report = _staged_search("nondp_mu01_cum_fail", params, test)
    cf = _hat_choice(s, fam)
    derived = lambda i: derive_mu_i(cf, i)
    claims = [Claim(f"mu_{i} satisfies MU_CUM", i == 2, lambda i=i: check("MU_CUM", derived(i)).holds)
              for i in (0, 1, 2)]
    claims.append(Claim("source structure smooth and transitive", True,
                        lambda: (lambda r: r.smooth and r.transitive)(check_structure(s, fam))))
    claims.append(Claim("mu equals hat of the structure's choice", True, lambda: cf == _hat_choice(s, fam)))
    report["witness"] = {k: {kk: fmt(vv) for kk, vv in v.items()} for k, v in report["witness"].items()}
    report["source_structure"] = {"rel": [[a[0], b[0]] for a, b in sorted(s.rel)]}
    expected = [("MU_SUBSET", True), ("MU_CUM", True), ("MU_PR_I:0", True), ("MU_PR_I:1", True)]
    return _finish(Instance("nondp_mu01_cum_fail", dict(params), fam, cf, expected, claims, search=report))


GENERATORS = {
    "cum_hierarchy": cum_hierarchy,
    "no_transitive": no_transitive,
    "tau_vs_hu": tau_vs_hu,
    "initial_segments": initial_segments,
    "cumt_fail": cumt_fail,
    "nondp_pr_fail": nondp_pr_fail,
    "nondp_star4_fail": nondp_star4_fail,
    "nondp_mu01_cum_fail": nondp_mu01_cum_fail,
}


def gallery(name: str, params: Optional[dict] = None) -> Instance:
    if name not in GENERATORS:
        raise InputError(f"unknown gallery entry {name!r}; known: {', '.join(sorted(GENERATORS))}")
    return GENERATORS[name](dict(params or {}))
