"""Ranked representation: read a preorder off the choice function and layer it."""
from __future__ import annotations

from ..structures import RankedStructure


def transitive_closure(pairs) -> set:
    rel = set(pairs)
    succ = {}
    for a, b in rel:
        succ.setdefault(a, set()).add(b)
    changed = True
    while changed:
        changed = False
        for a in list(succ):
            extra = set()
            for b in succ[a]:
                extra |= succ.get(b, set())
            if not extra <= succ[a]:
                succ[a] |= extra
                changed = True
    return {(a, b) for a, bs in succ.items() for b in bs}


def layer(points, le) -> dict:
    """Longest-path depth in the strict part of the preorder ``le``.

    Strictly smaller points get strictly smaller layers, so the layering is a
    total preorder extending ``le`` whose strict part extends the strict part
    of ``le``.
    """
    points = sorted(points)
    strict_below = {p: [q for q in points if (q, p) in le and (p, q) not in le] for p in points}
    depth = {}

    def d(p):
        if p not in depth:
            depth[p] = 0
            depth[p] = max((d(q) + 1 for q in strict_below[p]), default=0)
        return depth[p]

    for p in points:
        d(p)
    return depth


def choice_preorder(cf) -> set:
    """a <= b iff a is selected from some member containing b."""
    le = {(p, p) for p in cf.family.universe.points}
    for X in cf.family.members:
        for a in cf(X):
            for b in X:
                le.add((a, b))
    return transitive_closure(le)


def ranked_structure(cf) -> RankedStructure:
    le = choice_preorder(cf)
    return RankedStructure.of(layer(cf.family.universe.points, le), cf.family.universe.points)
