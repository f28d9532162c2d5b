"""Copy-based constructions: the general one and the smooth one.

A copy of x is tagged by a set R of points and sits above every copy of every
point in R. For the general construction R ranges over the minimal hitting
sets of {Y - x : x in Y - mu(Y)}. For the smooth construction R is the union of
an admissible sequence that avoids H(U,x), one for each U with x in mu(U).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from ..conditions.hull import h_set
from ..structures import PrefStructure


def minimal_hitting_sets(sets) -> list:
    """All inclusion-minimal sets meeting every member of ``sets``."""
    sets = [frozenset(s) for s in sets]
    if not sets:
        return [frozenset()]
    if any(not s for s in sets):
        return []
    pool = sorted(frozenset().union(*sets))
    found = []
    for r in range(1, len(pool) + 1):
        for combo in combinations(pool, r):
            R = frozenset(combo)
            if any(m <= R for m in found):
                continue
            if all(R & s for s in sets):
                found.append(R)
    return found


@dataclass
class GammaIndex:
    """W_x, K and the Gamma_x queries of the selection-based construction."""

    W: dict
    K: frozenset

    @classmethod
    def of(cls, cf) -> "GammaIndex":
        W = {}
        for x in cf.family.universe.points:
            seen = []
            for Y in cf.family.members:
                if x in Y and x not in cf(Y) and cf(Y) not in seen:
                    seen.append(cf(Y))
            W[x] = seen
        K = frozenset(x for X in cf.family.members for x in cf(X))
        return cls(W, K)

    def gamma_nonempty(self, x) -> bool:
        return all(self.W[x])

    def avoiding(self, x, S) -> Optional[dict]:
        """A canonical f in Gamma_x with ran(f) disjoint from S, if one exists."""
        f = {}
        for m in self.W[x]:
            left = sorted(m - S)
            if not left:
                return None
            f[m] = left[0]
        return f

    def ranges(self, x) -> list:
        return minimal_hitting_sets(self.W[x])


def _assemble(universe, tagged, loops=()) -> PrefStructure:
    """tagged: list of (point, R). Returns copies indexed per point, above R.
    Each point in ``loops`` gets two copies, each below the other."""
    tagged = sorted(set(tagged), key=lambda t: (t[0], len(t[1]), sorted(t[1])))
    index, copies = {}, []
    counter = {}
    for x, R in tagged:
        i = counter.get(x, 0)
        counter[x] = i + 1
        c = (x, i)
        index[(x, R)] = c
        copies.append(c)
    for x in sorted(loops):
        copies += [(x, 0), (x, 1)]
    by_point = {}
    for c in copies:
        by_point.setdefault(c[0], []).append(c)
    rel = set()
    for (x, R), c in index.items():
        for y in R:
            for d in by_point.get(y, ()):
                rel.add((d, c))
    for x in loops:
        rel |= {((x, 0), (x, 1)), ((x, 1), (x, 0))}
    return PrefStructure(universe, frozenset(copies), frozenset(rel))


def self_defeating_points(cf) -> frozenset:
    """Points dropped from their own singleton. They get two copies below
    each other, so they are never minimal yet can still defeat others."""
    return frozenset(x for x in cf.family.universe.points
                     if frozenset([x]) in cf.family.member_set and x not in cf(frozenset([x])))


def general_structure(cf) -> PrefStructure:
    """Copies <x, R> for R a minimal hitting set of {Y - x : x in Y - mu(Y)}."""
    loops = self_defeating_points(cf)
    tagged = []
    for x in cf.family.universe.points:
        if x in loops:
            continue
        bad = [Y - {x} for Y in cf.family.members if x in Y and x not in cf(Y)]
        for R in minimal_hitting_sets(bad):
            tagged.append((x, R))
    return _assemble(cf.family.universe, tagged, loops)


def selection_structure(cf) -> PrefStructure:
    """Copies <x, ran g> for x in K and g in Gamma_x, kept up to minimal ranges."""
    gi = GammaIndex.of(cf)
    tagged = []
    for x in sorted(gi.K):
        for R in gi.ranges(x):
            tagged.append((x, R))
    return _assemble(cf.family.universe, tagged)


@dataclass
class AdmissibleSeq:
    owner: str
    base: frozenset
    levels: list = field(default_factory=list)  # each level: list of (demanded set, chosen point)

    @property
    def union(self) -> frozenset:
        return frozenset(p for lv in self.levels for _, p in lv)


def admissible_sequence(cf, x, U, hull=None) -> AdmissibleSeq:
    """The sequence for x in mu(U) that picks, level by level, the least point
    of each demanded mu(X) outside H(U,x). Levels stop once a range repeats,
    after which the sequence is periodic and adds nothing to its union."""
    H = hull if hull is not None else h_set(cf, U, x).result
    members = cf.family.members
    level = []
    for Y in members:
        if x in Y and x not in cf(Y):
            level.append((Y, min(cf(Y) - H)))
    seq = AdmissibleSeq(x, frozenset(U), [level])
    seen = {frozenset(p for _, p in level)}
    while True:
        rng = frozenset(p for _, p in seq.levels[-1])
        nxt = []
        for X in members:
            if x in cf(X) and rng & X:
                nxt.append((X, min(cf(X) - H)))
        key = frozenset(p for _, p in nxt)
        seq.levels.append(nxt)
        if key in seen:
            return seq
        seen.add(key)


def smooth_structure(cf) -> PrefStructure:
    tagged = []
    for U in cf.family.members:
        for x in sorted(cf(U)):
            seq = admissible_sequence(cf, x, U)
            tagged.append((x, seq.union))
    return _assemble(cf.family.universe, tagged)
