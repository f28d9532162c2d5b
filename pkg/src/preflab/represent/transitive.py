"""Transitive smooth construction from the tree condition.

Nodes are tree states (visited sets, current point). From each unstarred
state the construction keeps one unstarred answer per set that has to be
answered, preferring to stay put. Every state reached from a root (U, x) with
x in mu(U) becomes a copy of its point, and a copy lies below another exactly
when its state is reachable from the other's. Reachability is transitive and
the visited sets grow along every edge, so the relation is a strict order.

For each point x lying in some member, and with mu nonempty on every member
containing x, one more copy sits above all states of the trees rooted at
(U, least point of mu(U)) for the members U containing x.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..conditions.tau import TauSolver
from ..errors import InputError
from ..structures import PrefStructure

MAX_STATES = 100_000


@dataclass
class RepTree:
    """The state graph: ``edges[s]`` lists (answered set, child state)."""

    roots: dict = field(default_factory=dict)  # (U, x) -> state
    edges: dict = field(default_factory=dict)
    grafts: dict = field(default_factory=dict)  # point -> list of root states

    def reach(self, s) -> set:
        out, stack = set(), [c for _, c in self.edges[s]]
        while stack:
            t = stack.pop()
            if t not in out:
                out.add(t)
                stack.extend(c for _, c in self.edges[t])
        return out


def build_tree(cf) -> RepTree:
    solver = TauSolver(cf)
    tree = RepTree()

    def grow(state):
        if state in tree.edges:
            return
        if len(tree.edges) > MAX_STATES:
            raise InputError("tree construction exceeds the state limit")
        visited, x = state
        kids = []
        for Y, nxt in solver.successors(visited, x):
            after = visited | {Y}
            pick = next((p for p in nxt if not solver.starred(after, p)), None)
            if pick is None:
                raise InputError("starred state reached during construction")
            kids.append((Y, (after, pick)))
        tree.edges[state] = kids
        for _, child in kids:
            grow(child)

    for U in cf.family.members:
        for x in sorted(cf(U)):
            root = (frozenset([U]), x)
            if solver.starred(*root):
                raise InputError("tree condition fails; no construction")
            tree.roots[(U, x)] = root
            grow(root)
    for x in cf.family.universe.points:
        containing = [U for U in cf.family.members if x in U]
        if containing and all(cf(U) for U in containing):
            tree.grafts[x] = [tree.roots[(U, min(cf(U)))] for U in containing]
    return tree


def _state_key(state):
    visited, x = state
    return (x, len(visited), sorted(sorted(Y) for Y in visited))


def transitive_structure(cf, tree: RepTree = None) -> PrefStructure:
    tree = tree or build_tree(cf)
    states = sorted(tree.edges, key=_state_key)
    counter, copy_of = {}, {}
    for s in states:
        x = s[1]
        copy_of[s] = (x, counter.get(x, 0))
        counter[x] = counter.get(x, 0) + 1
    rel = set()
    reach = {s: tree.reach(s) for s in states}
    for s in states:
        for t in reach[s]:
            rel.add((copy_of[t], copy_of[s]))
    copies = set(copy_of.values())
    for x in sorted(tree.grafts):
        top = (x, counter.get(x, 0))
        counter[x] = top[1] + 1
        copies.add(top)
        for root in tree.grafts[x]:
            rel.add((copy_of[root], top))
            for t in reach[root]:
                rel.add((copy_of[t], top))
    return PrefStructure(cf.family.universe, frozenset(copies), frozenset(rel))
