"""The tree condition for smooth transitive representability.

A node carries the sets visited so far and a current point. From point x the
tree must answer every unvisited member Y containing x: if x survives in Y it
may stay, or move to a point of mu(Y) outside all visited sets; if x does not
survive it must move. A node is starred when some Y leaves only starred (or
no) answers. Whether a node is starred depends only on the visited sets and
the current point, which is what the memo is keyed on.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import InputError

MAX_TREE_NODES = 200_000


class TauSolver:
    def __init__(self, cf):
        self.cf = cf
        self.members = cf.family.members
        self.memo = {}

    def successors(self, visited: frozenset, x: str):
        """(Y, candidate next points) for every Y that has to be answered."""
        used = frozenset().union(*visited)
        for Y in self.members:
            if Y in visited or x not in Y:
                continue
            mY = self.cf(Y)
            fresh = sorted(mY - used)
            if x in mY:
                yield Y, [x] + [p for p in fresh if p != x]
            else:
                yield Y, fresh

    def starred(self, visited: frozenset, x: str) -> bool:
        key = (visited, x)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        result = False
        for Y, nxt in self.successors(visited, x):
            after = visited | {Y}
            if all(self.starred(after, p) for p in nxt):
                result = True
                break
        self.memo[key] = result
        return result

    def blocking_set(self, visited: frozenset, x: str):
        for Y, nxt in self.successors(visited, x):
            after = visited | {Y}
            if all(self.starred(after, p) for p in nxt):
                return Y
        return None


@dataclass
class TauNode:
    sets: tuple
    points: tuple
    star: bool
    children: list = field(default_factory=list)

    @property
    def label(self) -> str:
        return "star" if self.star else "minus"


@dataclass
class TauTree:
    root: TauNode
    size: int

    @property
    def root_starred(self) -> bool:
        return self.root.star

    def nodes(self):
        stack = [self.root]
        while stack:
            n = stack.pop()
            yield n
            stack.extend(reversed(n.children))


def mu_tau(cf, U, x) -> TauTree:
    """The full labelled tree rooted at (U, x)."""
    U = frozenset(U)
    if U not in cf.family.member_set:
        raise InputError("tree root set must be a family member")
    if x not in cf(U):
        raise InputError(f"{x!r} is not selected from the root set")
    solver = TauSolver(cf)
    count = [0]

    def build(sets, points):
        count[0] += 1
        if count[0] > MAX_TREE_NODES:
            raise InputError("tree exceeds the materialization limit")
        visited = frozenset(sets)
        node = TauNode(sets, points, solver.starred(visited, points[-1]))
        for Y, nxt in solver.successors(visited, points[-1]):
            for p in nxt:
                node.children.append(build(sets + (Y,), points + (p,)))
        return node

    root = build((U,), (x,))
    return TauTree(root, count[0])


def tau_violation(cf):
    solver = TauSolver(cf)
    for U in cf.family.members:
        for x in sorted(cf(U)):
            if solver.starred(frozenset([U]), x):
                return {"U": U, "x": x, "blocked_by": solver.blocking_set(frozenset([U]), x)}
    return None


def tau_at(cf, U, x, blocked_by=None) -> bool:
    if x not in cf(U):
        return True
    return not TauSolver(cf).starred(frozenset([U]), x)
