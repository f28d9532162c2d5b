"""Conditions on the pair (mu+, mu-) that describes a Booth-style revision."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import InputError
from ..structures import BoothStructure, booth_plus_minus
from ..universe import DomainFamily
from .choice import ChoiceFunction


@dataclass(frozen=True)
class BoothPair:
    plus: ChoiceFunction
    minus: ChoiceFunction

    def __post_init__(self):
        if self.plus.family != self.minus.family:
            raise InputError("mu+ and mu- must share a family")

    @property
    def family(self) -> DomainFamily:
        return self.plus.family

    @classmethod
    def from_structure(cls, b: BoothStructure, family: DomainFamily = None) -> "BoothPair":
        if family is None:
            family = DomainFamily.power(b.universe)
        plus, minus = {}, {}
        for X in family.members:
            plus[X], minus[X] = booth_plus_minus(b, X)
        return cls(ChoiceFunction(family, plus, validate=False), ChoiceFunction(family, minus, validate=False))


def _pairs(bp):
    ms = bp.family.members
    for X in ms:
        for Y in ms:
            yield X, Y


def _m1(bp, X, Y):
    return not Y & bp.minus(X) or not bp.plus(Y) & X


def _m2(bp, X, Y):
    if not Y & bp.minus(X):
        return True
    return bp.plus(X | Y) == bp.plus(Y)


def _m3(bp, X, Y):
    return not Y & bp.minus(X) or not bp.minus(Y) & X


def _m4(bp, X, Y):
    return not bp.plus(X) <= bp.plus(Y) or bp.minus(X) <= bp.minus(Y)


def _m5(bp, X, Y):
    if bp.plus(X | Y) != bp.plus(X) | bp.plus(Y):
        return True
    return bp.minus(X | Y) == bp.minus(X) | bp.minus(Y)


_AT = {1: _m1, 2: _m2, 3: _m3, 4: _m4, 5: _m5}
_NEEDS_UNION = {2, 5}


def minus_violation(bp: BoothPair, j: int):
    at = _AT[j]
    ms = bp.family.member_set
    for X, Y in _pairs(bp):
        if j in _NEEDS_UNION and X | Y not in ms:
            continue
        if not at(bp, X, Y):
            return {"X": X, "Y": Y}
    return None


def minus_at(bp: BoothPair, j: int, X, Y) -> bool:
    return _AT[j](bp, X, Y)
