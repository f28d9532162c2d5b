"""Rebuild a ranked order and a subrelation from a (mu+, mu-) pair.

The order comes from a <= b iff a is in mu+(X) or mu-(X) for some X
containing b. For every x in mu-(X) the subrelation gets an edge x -> y for a
model y of mu+(X) found by deciding the variables one at a time: a literal is
allowed while it keeps some model of mu+(X), and when both are allowed the
literal that keeps x in mu-(X restricted to the choices so far) wins. When
both keep x there, a strategy decides; every model serves once as strategy.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..conditions.booth import BoothPair
from ..errors import InputError
from ..logic import Language
from ..structures import BoothStructure, RankedStructure
from .ranked import layer, transitive_closure

MAX_BOOTH_VARIABLES = 4


@dataclass
class Transcript:
    x: str
    X: frozenset
    strategy: str
    steps: list = field(default_factory=list)  # (variable, value, how chosen)
    result: str = ""
    meets_plus: list = field(default_factory=list)  # M(prefix) meets mu+(X), per step
    keeps_x: list = field(default_factory=list)  # x in mu-(X & M(prefix)), per step

    @property
    def invariants_hold(self) -> bool:
        return all(self.meets_plus) and all(self.keeps_x)


@dataclass
class BoothBuildState:
    le1: set
    le2: set
    le: set
    rank: dict
    sub: set
    transcripts: list


def _models_with(language, fixed: dict) -> frozenset:
    out = []
    for m in language.models:
        a = m.assignment
        if all(a[v] == val for v, val in fixed.items()):
            out.append(m.name)
    return frozenset(out)


def decide(bp: BoothPair, language: Language, x, X, strategy) -> Transcript:
    plus_X = bp.plus(X)
    strat = language.model(strategy).assignment
    tr = Transcript(x, X, strategy)
    fixed = {}
    for v in language.variables:
        allowed = []
        for val in (True, False):
            M = _models_with(language, {**fixed, v: val})
            if M & plus_X:
                allowed.append(val)
        if not allowed:
            raise InputError(f"no literal for {v} keeps a model of mu+ (x={x})")
        if len(allowed) == 1:
            val, how = allowed[0], "forced"
        else:
            keeps = []
            for val in allowed:
                M = _models_with(language, {**fixed, v: val})
                sub_X = X & M
                if x in bp.minus(sub_X):
                    keeps.append(val)
            if len(keeps) == 1:
                val, how = keeps[0], "keeps x"
            elif len(keeps) == 2:
                val, how = strat[v], "strategy"
            else:
                raise InputError(f"neither literal for {v} keeps {x} outside (x={x})")
        fixed[v] = val
        tr.steps.append((v, val, how))
        M = _models_with(language, fixed)
        tr.meets_plus.append(bool(M & plus_X))
        tr.keeps_x.append(x in bp.minus(X & M))
    y = "".join("T" if fixed[v] else "F" for v in language.variables)
    tr.result = y
    return tr


def build(bp: BoothPair, language: Language) -> BoothBuildState:
    if language.size > MAX_BOOTH_VARIABLES:
        raise InputError(f"Booth construction supports at most {MAX_BOOTH_VARIABLES} variables")
    points = language.model_names
    le1 = {(p, p) for p in points}
    le2 = set()
    for X in bp.family.members:
        for b in X:
            for a in bp.plus(X):
                le1.add((a, b))
            for a in bp.minus(X):
                le2.add((a, b))
    le = transitive_closure(le1 | le2)
    rank = layer(points, le)
    transcripts = []
    sub = set()
    for X in bp.family.members:
        for x in sorted(bp.minus(X)):
            for m in sorted(points):
                tr = decide(bp, language, x, X, m)
                transcripts.append(tr)
                sub.add((x, tr.result))
    return BoothBuildState(le1, le2, le, rank, sub, transcripts)


def booth_structure(bp: BoothPair, language: Language) -> tuple:
    st = build(bp, language)
    ranked = RankedStructure.of(st.rank, language.model_names)
    return BoothStructure(ranked, frozenset(st.sub)), st


def oracle_edges(bp: BoothPair) -> set:
    """x -> y exactly when x lies in nu of the complete theory of y, outside y."""
    pts = bp.family.universe.points
    return {(x, y) for y in pts for x in bp.minus(frozenset([y]))}


def oracle_agreement(state: BoothBuildState, bp: BoothPair) -> dict:
    oracle = oracle_edges(bp)
    built = set(state.sub)
    return {
        "agree": built == oracle,
        "edges": len(built),
        "unsupported": sorted(built - oracle),
        "missing": sorted(oracle - built),
    }


def preorder_violation(state: BoothBuildState, bp: BoothPair):
    """First (A, a, b) where b <= a although a is selected (plus or minus) and b is not."""
    le = state.le
    for A in bp.family.members:
        plus = bp.plus(A)
        for a in sorted(plus):
            for b in sorted(A - plus):
                if (b, a) in le:
                    return {"A": A, "a": a, "b": b, "side": "plus"}
        for a in sorted(bp.minus(A)):
            for b in sorted(A):
                if (b, a) in le:
                    return {"A": A, "a": a, "b": b, "side": "minus"}
    return None
