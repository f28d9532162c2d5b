"""Finite universes, set families with closure flags, the hat operator and smallness.

Sets are frozensets of point names throughout. Whenever an order matters
(iteration, witnesses, serialization) the canonical order is used: smaller sets
first, then lexicographic on the sorted member names.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

from .errors import InputError, MissingClosure

EMPTY: frozenset = frozenset()

CLOSURE_OPS = ("finite_union", "pairwise_intersection", "add_empty", "add_universe", "singletons")


def set_key(s) -> tuple:
    return (len(s), tuple(sorted(s)))


def sorted_sets(sets: Iterable) -> list:
    return sorted((frozenset(s) for s in sets), key=set_key)


def fmt(s) -> list:
    """Canonical JSON-friendly rendering of a set of points."""
    return sorted(s)


def powerset(points) -> list:
    pts = sorted(points)
    return [frozenset(c) for r in range(len(pts) + 1) for c in combinations(pts, r)]


@dataclass(frozen=True)
class Universe:
    points: tuple

    def __post_init__(self):
        pts = tuple(self.points)
        if len(set(pts)) != len(pts):
            raise InputError("duplicate point names in universe")
        if not all(isinstance(p, str) for p in pts):
            raise InputError("point names must be strings")
        object.__setattr__(self, "points", tuple(sorted(pts)))

    @classmethod
    def of(cls, points: Iterable[str]) -> "Universe":
        return cls(tuple(points))

    @cached_property
    def as_set(self) -> frozenset:
        return frozenset(self.points)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return p in self.as_set


@dataclass(frozen=True)
class DomainFamily:
    universe: Universe
    members: tuple = field(default=())

    def __post_init__(self):
        uni = self.universe.as_set
        canon = sorted_sets(set(frozenset(m) for m in self.members))
        for m in canon:
            if not m <= uni:
                raise InputError(f"family member {fmt(m)} not inside the universe")
        object.__setattr__(self, "members", tuple(canon))

    @classmethod
    def of(cls, universe, members) -> "DomainFamily":
        if not isinstance(universe, Universe):
            universe = Universe.of(universe)
        return cls(universe, tuple(frozenset(m) for m in members))

    @classmethod
    def power(cls, universe) -> "DomainFamily":
        if not isinstance(universe, Universe):
            universe = Universe.of(universe)
        return cls(universe, tuple(powerset(universe.points)))

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def __contains__(self, s):
        return frozenset(s) in self.member_set

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    # flags, all computed from the members

    @cached_property
    def closed_finite_union(self) -> bool:
        ms = self.member_set
        return all(a | b in ms for a, b in combinations(self.members, 2))

    @cached_property
    def closed_pairwise_intersection(self) -> bool:
        ms = self.member_set
        return all(a & b in ms for a, b in combinations(self.members, 2))

    @cached_property
    def closed_arbitrary_intersection(self) -> bool:
        # intersections of nonempty subfamilies; on a finite family this is pairwise closure
        return self.closed_pairwise_intersection

    @cached_property
    def contains_empty(self) -> bool:
        return EMPTY in self.member_set

    @cached_property
    def contains_universe(self) -> bool:
        return self.universe.as_set in self.member_set

    @cached_property
    def contains_singletons(self) -> bool:
        return all(frozenset([p]) in self.member_set for p in self.universe.points)

    @cached_property
    def contains_pairs(self) -> bool:
        return all(frozenset(c) in self.member_set for c in combinations(self.universe.points, 2))

    @cached_property
    def closed_set_difference(self) -> bool:
        ms = self.member_set
        return all(a - b in ms for a in self.members for b in self.members)

    def flags(self) -> dict:
        return {
            "closed_finite_union": self.closed_finite_union,
            "closed_pairwise_intersection": self.closed_pairwise_intersection,
            "closed_arbitrary_intersection": self.closed_arbitrary_intersection,
            "contains_empty": self.contains_empty,
            "contains_universe": self.contains_universe,
            "contains_singletons": self.contains_singletons,
            "closed_set_difference": self.closed_set_difference,
        }

    @property
    def supports_hat(self) -> bool:
        return self.closed_arbitrary_intersection and self.contains_universe

    def subsets_of(self, s) -> list:
        return [m for m in self.members if m <= s]


def close_family(family: DomainFamily, ops: Iterable[str]) -> DomainFamily:
    """Least superfamily closed under the requested operations."""
    ops = set(ops)
    unknown = ops - set(CLOSURE_OPS)
    if unknown:
        raise InputError(f"unknown closure operations: {sorted(unknown)}")
    uni = family.universe.as_set
    current = set(family.member_set)
    if "add_empty" in ops:
        current.add(EMPTY)
    if "add_universe" in ops:
        current.add(uni)
    if "singletons" in ops:
        current.update(frozenset([p]) for p in uni)
    binary = []
    if "finite_union" in ops:
        binary.append(frozenset.union)
    if "pairwise_intersection" in ops:
        binary.append(frozenset.intersection)
    frontier = set(current)
    while binary and frontier:
        fresh = set()
        for a in frontier:
            for b in current:
                for op in binary:
                    c = op(a, b)
                    if c not in current:
                        fresh.add(c)
        current |= fresh
        frontier = fresh
    return DomainFamily(family.universe, tuple(current))


def hat(family: DomainFamily, A) -> frozenset:
    """Least family member containing A."""
    A = frozenset(A)
    result = None
    for m in family.members:
        if A <= m:
            result = m if result is None else result & m
    if result is None:
        raise MissingClosure(f"no family member contains {fmt(A)}")
    if result not in family.member_set:
        raise MissingClosure(f"intersection of the supersets of {fmt(A)} is not a family member")
    return result


@dataclass(frozen=True)
class SmallnessJudgement:
    family: DomainFamily
    inner: frozenset
    outer: frozenset
    small: bool
    witness: Optional[frozenset] = None


def is_small(family: DomainFamily, A, B) -> SmallnessJudgement:
    """A is small in B iff no family member X satisfies B-A <= X < B."""
    A, B = frozenset(A), frozenset(B)
    if not A <= B or not B <= family.universe.as_set:
        raise InputError("is_small needs A <= B <= universe")
    rest = B - A
    for X in family.members:
        if rest <= X and X < B:
            return SmallnessJudgement(family, A, B, False, X)
    return SmallnessJudgement(family, A, B, True, None)
