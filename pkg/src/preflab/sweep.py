"""Exhaustive enumeration of small instances.

Families are listed up to renaming of points: a family is kept only when it
is the least, in canonical order, among its images under all point
permutations. Everything else is plain product enumeration.
"""
from __future__ import annotations

import random
from itertools import combinations, permutations, product
from typing import Iterator, Optional

from .conditions.choice import ChoiceFunction
from .structures import BoothStructure, PrefStructure, RankedStructure
from .universe import DomainFamily, Universe, close_family, powerset, set_key

DEFAULT_POINTS = ("a", "b", "c", "d")


def universe(n: int) -> Universe:
    if not 1 <= n <= len(DEFAULT_POINTS):
        raise ValueError(f"sweeps cover 1..{len(DEFAULT_POINTS)} points")
    return Universe.of(DEFAULT_POINTS[:n])


def _family_key(members) -> tuple:
    return tuple(sorted(set_key(m) for m in members))


def _canonical(members, perms) -> bool:
    key = _family_key(members)
    for p in perms:
        image = [frozenset(p[x] for x in m) for m in members]
        if _family_key(image) < key:
            return False
    return True


def families(uni: Universe, max_family: int, *, min_family: int = 1, include_empty: bool = False,
             up_to_iso: bool = True, predicate=None) -> Iterator[DomainFamily]:
    pts = uni.points
    pool = [s for s in powerset(pts) if s or include_empty]
    perms = [dict(zip(pts, p)) for p in permutations(pts)][1:]
    for r in range(min_family, min(max_family, len(pool)) + 1):
        for combo in combinations(pool, r):
            if up_to_iso and not _canonical(combo, perms):
                continue
            fam = DomainFamily(uni, combo)
            if predicate is None or predicate(fam):
                yield fam


def choice_functions(fam: DomainFamily, *, subset: bool = True) -> Iterator[ChoiceFunction]:
    """Every mu with mu(X) <= X (or mu(X) <= universe when ``subset`` is off)."""
    options = [powerset(X if subset else fam.universe.points) for X in fam.members]
    for values in product(*options):
        yield ChoiceFunction(fam, dict(zip(fam.members, values)), validate=False)


def relations(uni: Universe) -> Iterator[PrefStructure]:
    """All copy-free structures: every irreflexive relation on the points."""
    pairs = [(a, b) for a in uni.points for b in uni.points if a != b]
    for bits in range(1 << len(pairs)):
        yield PrefStructure.from_relation(uni, [pairs[i] for i in range(len(pairs)) if bits >> i & 1])


def _is_transitive(rel) -> bool:
    return all((a, d) in rel for a, b in rel for c, d in rel if b == c)


def transitive_relations(uni: Universe) -> Iterator[PrefStructure]:
    for s in relations(uni):
        if _is_transitive(s.rel):
            yield s


def copied_structures(uni: Universe, copies_per_point: dict, *, sample: Optional[int] = None,
                      seed: int = 0) -> Iterator[PrefStructure]:
    """Structures on the given copies, all irreflexive relations or a seeded sample."""
    copies = [(x, i) for x in uni.points for i in range(copies_per_point.get(x, 1))]
    pairs = [(a, b) for a in copies for b in copies if a != b]
    total = 1 << len(pairs)
    if sample is None or sample >= total:
        masks = range(total)
    else:
        masks = random.Random(seed).sample(range(total), sample)
    for bits in masks:
        rel = frozenset(pairs[i] for i in range(len(pairs)) if bits >> i & 1)
        yield PrefStructure(uni, frozenset(copies), rel)


def rankings(uni: Universe, max_layers: Optional[int] = None) -> Iterator[RankedStructure]:
    """Every ranked structure on all points (ordered set partitions)."""
    pts = uni.points
    n = len(pts)
    top = n if max_layers is None else min(n, max_layers)
    seen = set()
    for ranks in product(range(top), repeat=n):
        used = sorted(set(ranks))
        if used != list(range(len(used))):
            continue
        key = tuple(ranks)
        if key in seen:
            continue
        seen.add(key)
        yield RankedStructure.of(dict(zip(pts, ranks)), pts)


def booth_structures(ranked: RankedStructure) -> Iterator[BoothStructure]:
    """All subrelations of the strict order of ``ranked``."""
    less = [(x, y) for x in ranked.universe.points for y in ranked.universe.points if ranked.less(x, y)]
    for bits in range(1 << len(less)):
        yield BoothStructure(ranked, frozenset(less[i] for i in range(len(less)) if bits >> i & 1))


def set_partitions(points) -> Iterator[list]:
    points = list(points)
    if not points:
        yield []
        return
    head, rest = points[0], points[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] | {head}] + part[i + 1:]
        yield [frozenset([head])] + part


def blocks_families(uni: Universe, block_counts=(2, 3)) -> Iterator[DomainFamily]:
    """All unions of blocks of a partition, one family per partition."""
    from .logic import partition_family
    for part in set_partitions(uni.points):
        if len(part) in block_counts:
            yield partition_family(uni, [frozenset(b) for b in part])


def lattice_families(uni: Universe, max_generators: int = 3) -> Iterator[DomainFamily]:
    """Families generated by a few sets under finite unions and intersections,
    with the empty set and the universe added."""
    pool = [s for s in powerset(uni.points) if s and s != uni.as_set]
    seen = set()
    for r in range(1, max_generators + 1):
        for gens in combinations(pool, r):
            fam = close_family(DomainFamily(uni, gens), ("finite_union", "pairwise_intersection",
                                                         "add_empty", "add_universe"))
            if fam.members not in seen:
                seen.add(fam.members)
                yield fam
