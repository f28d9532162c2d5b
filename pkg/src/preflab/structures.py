"""Preferential, ranked, Booth and distance structures, and what they select.

Copies are ``(point, index)`` pairs. A structure without real copies uses index
0 for every point.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

from .errors import InputError
from .logic import Formula, Language, Theory, models_of
from .universe import DomainFamily, Universe, fmt

MAX_MISE_BASE = 20


def copy_key(c):
    return (c[0], c[1])


def fmt_copy(c) -> list:
    return [c[0], c[1]]


def fmt_copies(cs) -> list:
    return [fmt_copy(c) for c in sorted(cs, key=copy_key)]


@dataclass(frozen=True)
class PrefStructure:
    universe: Universe
    copies: frozenset
    rel: frozenset = field(default=frozenset())

    def __post_init__(self):
        if not isinstance(self.universe, Universe):
            object.__setattr__(self, "universe", Universe.of(self.universe))
        copies = frozenset((str(p), int(i)) for p, i in self.copies)
        rel = frozenset(((str(a[0]), int(a[1])), (str(b[0]), int(b[1]))) for a, b in self.rel)
        for p, i in copies:
            if p not in self.universe:
                raise InputError(f"copy of unknown point {p!r}")
            if i < 0:
                raise InputError("copy indices are naturals")
        for a, b in rel:
            if a not in copies or b not in copies:
                raise InputError(f"relation pair {fmt_copy(a)} < {fmt_copy(b)} uses an undeclared copy")
        object.__setattr__(self, "copies", copies)
        object.__setattr__(self, "rel", rel)

    @classmethod
    def from_relation(cls, universe, pairs: Iterable = ()) -> "PrefStructure":
        """One copy per point; ``pairs`` lists (a, b) meaning a is below b."""
        if not isinstance(universe, Universe):
            universe = Universe.of(universe)
        copies = frozenset((p, 0) for p in universe.points)
        return cls(universe, copies, frozenset(((a, 0), (b, 0)) for a, b in pairs))

    @cached_property
    def sorted_copies(self) -> tuple:
        return tuple(sorted(self.copies, key=copy_key))

    @cached_property
    def below(self) -> dict:
        """copy -> copies strictly below it"""
        out = {c: set() for c in self.copies}
        for a, b in self.rel:
            out[b].add(a)
        return {c: frozenset(v) for c, v in out.items()}

    @cached_property
    def above(self) -> dict:
        out = {c: set() for c in self.copies}
        for a, b in self.rel:
            out[a].add(b)
        return {c: frozenset(v) for c, v in out.items()}

    @cached_property
    def points(self) -> frozenset:
        return frozenset(p for p, _ in self.copies)

    def copies_in(self, X) -> list:
        return [c for c in self.sorted_copies if c[0] in X]

    def is_minimal(self, c, X) -> bool:
        return not any(d[0] in X for d in self.below[c])


@dataclass(frozen=True)
class RankedStructure:
    universe: Universe
    rank: tuple  # sorted (point, rank) items

    def __post_init__(self):
        if not isinstance(self.universe, Universe):
            object.__setattr__(self, "universe", Universe.of(self.universe))
        items = dict(self.rank)
        if set(items) != self.universe.as_set:
            raise InputError("rank must be defined on exactly the universe")
        for p, r in items.items():
            if not isinstance(r, int) or isinstance(r, bool) or r < 0:
                raise InputError(f"rank of {p!r} must be a natural number")
        object.__setattr__(self, "rank", tuple(sorted(items.items())))

    @classmethod
    def of(cls, rank: dict, universe=None) -> "RankedStructure":
        return cls(Universe.of(universe if universe is not None else rank), tuple(rank.items()))

    @cached_property
    def rank_of(self) -> dict:
        return dict(self.rank)

    def less(self, x, y) -> bool:
        return self.rank_of[x] < self.rank_of[y]

    def as_pref(self) -> PrefStructure:
        r = self.rank_of
        pairs = [(a, b) for a in r for b in r if r[a] < r[b]]
        return PrefStructure.from_relation(self.universe, pairs)


def _as_pref(structure) -> PrefStructure:
    if isinstance(structure, RankedStructure):
        return structure.as_pref()
    if isinstance(structure, PrefStructure):
        return structure
    raise InputError(f"not a structure: {type(structure).__name__}")


def mu(structure, X) -> frozenset:
    """Points of X having a copy with nothing below it inside X."""
    X = frozenset(X)
    if isinstance(structure, RankedStructure):
        r = structure.rank_of
        inside = [x for x in X if x in r]
        if not inside:
            return frozenset()
        low = min(r[x] for x in inside)
        return frozenset(x for x in inside if r[x] == low)
    return frozenset(c[0] for c in structure.copies if c[0] in X and structure.is_minimal(c, X))


@dataclass
class StructureReport:
    irreflexive: bool
    transitive: bool
    acyclic: bool
    smooth: bool
    ranked: bool
    witnesses: dict

    def to_dict(self) -> dict:
        return {
            "irreflexive": self.irreflexive,
            "transitive": self.transitive,
            "acyclic": self.acyclic,
            "smooth": self.smooth,
            "ranked": self.ranked,
            "witnesses": self.witnesses,
        }


def _find_cycle(s: PrefStructure) -> Optional[list]:
    colour = {}
    stack = []

    def visit(c):
        colour[c] = 1
        stack.append(c)
        for d in sorted(s.above[c], key=copy_key):
            if colour.get(d) == 1:
                return stack[stack.index(d):] + [d]
            if d not in colour:
                found = visit(d)
                if found:
                    return found
        stack.pop()
        colour[c] = 2
        return None

    for c in s.sorted_copies:
        if c not in colour:
            found = visit(c)
            if found:
                return found
    return None


def smoothness_violation(s: PrefStructure, X) -> Optional[tuple]:
    X = frozenset(X)
    inside = s.copies_in(X)
    minimal = {c for c in inside if s.is_minimal(c, X)}
    for c in inside:
        if c in minimal:
            continue
        if not any(d in minimal for d in s.below[c]):
            return c
    return None


def check_structure(structure, family: Optional[DomainFamily] = None) -> StructureReport:
    s = _as_pref(structure)
    w = {}
    refl = next((c for c in s.sorted_copies if c in s.below[c]), None)
    if refl is not None:
        w["irreflexive"] = {"copy": fmt_copy(refl)}
    trans = None
    for a, b in sorted(s.rel):
        for c in sorted(s.above[b], key=copy_key):
            if (a, c) not in s.rel:
                trans = (a, b, c)
                break
        if trans:
            break
    if trans:
        w["transitive"] = {"chain": [fmt_copy(c) for c in trans]}
    cycle = _find_cycle(s)
    if cycle:
        w["acyclic"] = {"cycle": [fmt_copy(c) for c in cycle]}
    smooth_bad = None
    if family is not None:
        for X in family.members:
            c = smoothness_violation(s, X)
            if c is not None:
                smooth_bad = (X, c)
                break
    if smooth_bad:
        w["smooth"] = {"set": fmt(smooth_bad[0]), "copy": fmt_copy(smooth_bad[1])}
    ranked_bad = None
    comparable = lambda a, b: (a, b) in s.rel or (b, a) in s.rel
    for a, b in combinations(s.sorted_copies, 2):
        if comparable(a, b):
            continue
        for y in s.sorted_copies:
            if ((y, a) in s.rel) != ((y, b) in s.rel) or ((a, y) in s.rel) != ((b, y) in s.rel):
                ranked_bad = (a, b, y)
                break
        if ranked_bad:
            break
    if ranked_bad:
        w["ranked"] = {"incomparable": [fmt_copy(ranked_bad[0]), fmt_copy(ranked_bad[1])],
                       "separated_by": fmt_copy(ranked_bad[2])}
    return StructureReport(
        irreflexive=refl is None,
        transitive=trans is None,
        acyclic=cycle is None,
        smooth=smooth_bad is None,
        ranked=ranked_bad is None,
        witnesses=w,
    )


def is_smooth(structure, family: DomainFamily) -> bool:
    s = _as_pref(structure)
    return all(smoothness_violation(s, X) is None for X in family.members)


# minimizing initial segments


@dataclass(frozen=True)
class Mise:
    base: frozenset
    segment: frozenset
    kind: str

    @property
    def points(self) -> frozenset:
        if self.kind == "general":
            return frozenset(c[0] for c in self.segment)
        return self.segment


def _mise_key(m: Mise):
    if m.kind == "general":
        return (len(m.segment), sorted(m.segment, key=copy_key))
    return (len(m.segment), sorted(m.segment))


def is_mise(s: PrefStructure, X, segment) -> bool:
    """The two defining clauses, evaluated directly on copies."""
    base = set(s.copies_in(X))
    seg = set(segment)
    if not seg <= base:
        return False
    for c in base:
        if c not in seg and not any(d in seg for d in s.below[c]):
            return False
    for d in seg:
        if any(c in base and c not in seg for c in s.below[d]):
            return False
    return True


def enumerate_mise(structure, X) -> list:
    X = frozenset(X)
    if isinstance(structure, RankedStructure):
        r = structure.rank_of
        inside = [x for x in X if x in r]
        if not inside:
            return [Mise(X, frozenset(), "ranked")]
        levels = sorted({r[x] for x in inside})
        return [Mise(X, frozenset(x for x in inside if r[x] <= lv), "ranked") for lv in levels]
    s = _as_pref(structure)
    base = s.copies_in(X)
    n = len(base)
    if n > MAX_MISE_BASE:
        raise InputError(f"MISE enumeration over {n} copies is beyond desk scale")
    pos = {c: i for i, c in enumerate(base)}
    below = [0] * n
    for i, c in enumerate(base):
        for d in s.below[c]:
            if d in pos:
                below[i] |= 1 << pos[d]
    dom = [below[i] | (1 << i) for i in range(n)]
    out = []
    for S in range(1 << n):
        ok = True
        for i in range(n):
            if dom[i] & S == 0:
                ok = False
                break
            if S >> i & 1 and below[i] & ~S:
                ok = False
                break
        if ok:
            seg = frozenset(base[i] for i in range(n) if S >> i & 1)
            out.append(Mise(frozenset(base), seg, "general"))
    return sorted(out, key=_mise_key)


def lam(structure, X) -> list:
    """Lambda(X): the MISE segments themselves (copy sets, or point sets for ranked)."""
    return [m.segment for m in enumerate_mise(structure, X)]


def restrict_segment(structure, segment, X) -> frozenset:
    """Elements of a MISE segment whose point lies in X."""
    X = frozenset(X)
    if isinstance(structure, RankedStructure):
        return frozenset(segment) & X
    return frozenset(c for c in segment if c[0] in X)


def segment_points(structure, segment) -> frozenset:
    if isinstance(structure, RankedStructure):
        return frozenset(segment)
    return frozenset(c[0] for c in segment)


# consequence


def _language_for(structure, language):
    if language is not None:
        return language
    return Language.from_model_names(structure.universe.points)


def model_set(item, structure=None, language=None) -> frozenset:
    """Model set of a theory, formula, formula text, or an explicit point set."""
    if isinstance(item, Theory):
        return item.models
    if isinstance(item, (Formula, str)):
        return models_of(item, _language_for(structure, language))
    if isinstance(item, (set, frozenset)):
        return frozenset(item)
    if isinstance(item, (list, tuple)):
        if all(isinstance(x, str) for x in item) and structure is not None and \
                all(x in structure.universe for x in item):
            return frozenset(item)
        return models_of(item, _language_for(structure, language))
    raise InputError(f"cannot read a model set from {item!r}")


def consequence(structure, T, phi, variant: str = "minimal", language: Optional[Language] = None) -> bool:
    MT = model_set(T, structure, language)
    Mphi = model_set(phi, structure, language)
    if variant == "minimal":
        return mu(structure, MT) <= Mphi
    if variant == "limit":
        return any(segment_points(structure, seg) <= Mphi for seg in lam(structure, MT))
    raise InputError(f"unknown consequence variant {variant!r}")


# Booth structures


@dataclass(frozen=True)
class BoothStructure:
    ranked: RankedStructure
    sub: frozenset = field(default=frozenset())

    def __post_init__(self):
        sub = frozenset((str(x), str(y)) for x, y in self.sub)
        for x, y in sub:
            if x not in self.ranked.universe or y not in self.ranked.universe:
                raise InputError(f"sub pair ({x}, {y}) uses unknown points")
            if not self.ranked.less(x, y):
                raise InputError(f"sub pair ({x}, {y}) is not rank-increasing")
        object.__setattr__(self, "sub", sub)

    @property
    def universe(self) -> Universe:
        return self.ranked.universe


def booth_plus_minus(b: BoothStructure, X) -> tuple:
    X = frozenset(X)
    plus = mu(b.ranked, X)
    minus = frozenset(x for x, y in b.sub if y in plus and x not in X)
    return plus, minus


def booth_nu(b: BoothStructure, phi, language: Optional[Language] = None) -> frozenset:
    X = model_set(phi, b.ranked, language)
    plus, minus = booth_plus_minus(b, X)
    return plus | minus


# distance spaces and revision


@dataclass(frozen=True)
class DistanceSpace:
    points: frozenset
    d: tuple  # sorted ((p, q), Fraction) with p < q

    def __post_init__(self):
        pts = frozenset(self.points)
        table = {}
        for key, val in dict(self.d).items():
            p, q = key
            if p not in pts or q not in pts:
                raise InputError(f"distance between unknown points {p!r}, {q!r}")
            v = Fraction(str(val)) if not isinstance(val, Fraction) else val
            if v < 0:
                raise InputError("distances must be non-negative")
            if p == q:
                if v != 0:
                    raise InputError("distance of a point to itself must be 0")
                continue
            k = (min(p, q), max(p, q))
            if k in table and table[k] != v:
                raise InputError(f"asymmetric distance for {k}")
            table[k] = v
        missing = [k for k in combinations(sorted(pts), 2) if k not in table]
        if missing:
            raise InputError(f"missing distance for {missing[0]}")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "d", tuple(sorted(table.items())))

    @classmethod
    def of(cls, points, distances: dict) -> "DistanceSpace":
        return cls(frozenset(points), tuple(distances.items()))

    @cached_property
    def table(self) -> dict:
        return dict(self.d)

    def dist(self, p, q) -> Fraction:
        if p == q:
            return Fraction(0)
        return self.table[(min(p, q), max(p, q))]


def revision_mise(space: DistanceSpace, X, Y) -> list:
    """Distance balls of Y around X, one per realized threshold, nested."""
    X, Y = frozenset(X), frozenset(Y)
    if not X or not Y:
        return []
    near = {y: min(space.dist(x, y) for x in X) for y in Y}
    out = []
    for t in sorted(set(near.values())):
        out.append(Mise(Y, frozenset(y for y in Y if near[y] <= t), "revision"))
    return out


def revise(space: DistanceSpace, X, Y) -> frozenset:
    """Minimal-distance revision X | Y: the closest elements of Y."""
    balls = revision_mise(space, X, Y)
    return balls[0].segment if balls else frozenset()


def limit_revision(space: DistanceSpace, T, T2, phi, language: Optional[Language] = None) -> bool:
    holder = _SpaceView(space)
    X = model_set(T, holder, language)
    Y = model_set(T2, holder, language)
    F = model_set(phi, holder, language)
    balls = revision_mise(space, X, Y)
    if not balls:
        return space.points <= F
    return any(b.segment <= F for b in balls)


class _SpaceView:
    def __init__(self, space):
        self.universe = Universe.of(space.points)
