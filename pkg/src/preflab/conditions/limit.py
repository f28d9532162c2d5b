"""Algebraic laws of the limit variant, quantified over enumerated MISE lists."""
from __future__ import annotations

from ..structures import lam, restrict_segment, segment_points


class LambdaOracle:
    """Lambda(X) for a fixed structure, cached per set."""

    def __init__(self, structure):
        self.structure = structure
        self._cache = {}

    def __call__(self, X):
        X = frozenset(X)
        if X not in self._cache:
            self._cache[X] = lam(self.structure, X)
        return self._cache[X]

    def restrict(self, seg, X):
        return restrict_segment(self.structure, seg, X)

    def points(self, seg):
        return segment_points(self.structure, seg)


def and_violation(oracle, family):
    for X in family.members:
        L = oracle(X)
        for A in L:
            for B in L:
                if not any(C <= A & B for C in L):
                    return {"X": X, "A": A, "B": B}
    return None


def and_at(oracle, family, X, A, B):
    return not (A in oracle(X) and B in oracle(X)) or any(C <= A & B for C in oracle(X))


def pr_violation(oracle, family):
    for X in family.members:
        for Y in family.members:
            if not X <= Y:
                continue
            LY = oracle(Y)
            for A in oracle(X):
                if not any(oracle.restrict(B, X) <= A for B in LY):
                    return {"X": X, "Y": Y, "A": A}
    return None


def pr_at(oracle, family, X, Y, A):
    return not (X <= Y and A in oracle(X)) or any(oracle.restrict(B, X) <= A for B in oracle(Y))


def _cumfin_failure(oracle, X, Y):
    LX, LY = oracle(X), oracle(Y)
    if not any(oracle.points(B) <= X for B in LY):
        return None
    for A in LX:
        if not any(B2 <= A for B2 in LY):
            return {"part": 1, "A": A}
    for B2 in LY:
        if not any(A <= B2 for A in LX):
            return {"part": 2, "B": B2}
    return None


def cumfin_violation(oracle, family):
    for X in family.members:
        for Y in family.members:
            if X <= Y:
                f = _cumfin_failure(oracle, X, Y)
                if f:
                    return {"X": X, "Y": Y, **f}
    return None


def cumfin_at(oracle, family, X, Y, **_):
    return not X <= Y or _cumfin_failure(oracle, X, Y) is None


def _eq_failure(oracle, X, Y):
    LX, LY = oracle(X), oracle(Y)
    if not all(oracle.restrict(B, X) for B in LY):
        return None
    for B in LY:
        BX = oracle.restrict(B, X)
        if not any(A <= BX for A in LX):
            return {"part": 1, "B": B}
    for A in LX:
        if not any(oracle.restrict(B, X) <= A for B in LY):
            return {"part": 2, "A": A}
    return None


def eq_violation(oracle, family):
    for X in family.members:
        for Y in family.members:
            if X <= Y:
                f = _eq_failure(oracle, X, Y)
                if f:
                    return {"X": X, "Y": Y, **f}
    return None


def eq_at(oracle, family, X, Y, **_):
    return not X <= Y or _eq_failure(oracle, X, Y) is None


TABLE = {
    "LAMBDA_AND": (and_violation, and_at),
    "LAMBDA_PR": (pr_violation, pr_at),
    "LAMBDA_CUMFIN": (cumfin_violation, cumfin_at),
    "LAMBDA_EQ": (eq_violation, eq_at),
}
