"""Dispatch from a condition id to the right checker and subject kind."""
from __future__ import annotations

from typing import Optional

from ..errors import InputError
from ..structures import BoothStructure, DistanceSpace, PrefStructure, RankedStructure
from ..universe import DomainFamily, Universe
from . import algebraic, booth, hull, limit, logical, tau
from .booth import BoothPair
from .choice import ChoiceFunction, ConditionId, Verdict
from .derived import derive_mu_i, pr_i_at, pr_i_violation
from .limit import LambdaOracle
from .logical import LogicSubject, RevisionOperator

CHOICE_TAGS = set(algebraic.TABLE) | {"HU", "HUX", "MU_TAU", "MU_CUM_ALPHA", "MU_CUMT_ALPHA", "MU_PR_I"}
LAMBDA_TAGS = set(limit.TABLE)
LOGIC_TAGS = set(logical.TABLE)

_STRUCTURES = (PrefStructure, RankedStructure)


def _need_family(subject, family):
    if family is not None:
        return family
    fam = getattr(subject, "family", None)
    if fam is None:
        raise InputError("a family is needed for this subject")
    return fam


def as_choice(subject, family: Optional[DomainFamily] = None) -> ChoiceFunction:
    if isinstance(subject, ChoiceFunction):
        if family is not None and family != subject.family:
            raise InputError("choice function and family disagree")
        return subject
    if isinstance(subject, BoothPair):
        return subject.plus
    if isinstance(subject, BoothStructure):
        return BoothPair.from_structure(subject, family).plus
    if isinstance(subject, _STRUCTURES):
        if family is None:
            raise InputError("a family is needed to read a choice function off a structure")
        return ChoiceFunction.from_structure(subject, family)
    raise InputError(f"condition needs a choice function, got {type(subject).__name__}")


def _as_oracle(subject):
    if isinstance(subject, LambdaOracle):
        return subject
    if isinstance(subject, _STRUCTURES):
        return LambdaOracle(subject)
    raise InputError(f"limit conditions need a structure, got {type(subject).__name__}")


def _as_logic(subject, family, variant, scope):
    if isinstance(subject, LogicSubject):
        return subject
    if isinstance(subject, ChoiceFunction):
        if variant != "minimal":
            raise InputError("the limit variant needs a structure")
        return LogicSubject.minimal(subject, scope=scope)
    if isinstance(subject, _STRUCTURES):
        if family is None:
            raise InputError("a family of definable sets is needed")
        return LogicSubject.from_structure(subject, family, variant=variant, scope=scope)
    raise InputError(f"logical conditions need a choice function or structure, got {type(subject).__name__}")


def _as_booth(subject, family):
    if isinstance(subject, BoothPair):
        return subject
    if isinstance(subject, BoothStructure):
        return BoothPair.from_structure(subject, family)
    raise InputError(f"MU_MINUS conditions need a Booth pair, got {type(subject).__name__}")


def _as_revision(subject, family, scope):
    if isinstance(subject, RevisionOperator):
        return subject
    if isinstance(subject, DistanceSpace):
        if family is None:
            raise InputError("STAR4 needs a family")
        return RevisionOperator(subject, family, scope)
    raise InputError(f"STAR4 needs a distance space, got {type(subject).__name__}")


def _resolve(cid: ConditionId, subject, family, variant="minimal", scope="theories", bound=None):
    """(violation thunk, holds_at function, notes) for one condition and subject."""
    tag, k = cid.tag, cid.param
    if tag in algebraic.TABLE:
        cf = as_choice(subject, family)
        _, at = algebraic.TABLE[tag]
        return (lambda: algebraic.violation(tag, cf)), (lambda w: at(cf, **w)), algebraic.NOTES.get(tag, "")
    if tag in ("HU", "HUX"):
        cf = as_choice(subject, family)
        fn = hull.hux_violation if tag == "HUX" else hull.hu_violation
        return (lambda: fn(cf)), (lambda w: hull.hu_at(cf, with_point=tag == "HUX", **w)), ""
    if tag in ("MU_CUM_ALPHA", "MU_CUMT_ALPHA"):
        cf = as_choice(subject, family)
        t = tag == "MU_CUMT_ALPHA"
        return ((lambda: hull.cum_alpha_violation(cf, k, t)),
                (lambda w: hull.cum_alpha_at(cf, transitive=t, **w)),
                "sequences without repeats, lengths 1..k+1")
    if tag == "MU_TAU":
        cf = as_choice(subject, family)
        return (lambda: tau.tau_violation(cf)), (lambda w: tau.tau_at(cf, **w)), ""
    if tag == "MU_PR_I":
        cf = as_choice(subject, family)
        return (lambda: pr_i_violation(cf, k)), (lambda w: pr_i_at(cf, k, **w)), ""
    if tag in LAMBDA_TAGS:
        oracle = _as_oracle(subject)
        fam = family if family is not None else DomainFamily.power(subject.universe)
        viol, at = limit.TABLE[tag]
        note = "Lambda(empty) = {empty} by convention" if frozenset() in fam.member_set else ""
        return (lambda: viol(oracle, fam)), (lambda w: at(oracle, fam, **w)), note
    if tag == "MU_MINUS":
        bp = _as_booth(subject, family)
        return (lambda: booth.minus_violation(bp, k)), (lambda w: booth.minus_at(bp, k, **w)), ""
    if tag == "STAR4":
        r = _as_revision(subject, family, scope)
        return (lambda: logical.star4_violation(r)), (lambda w: logical.star4_at(r, **w)), f"scope={scope}"
    if tag in LOGIC_TAGS:
        s = _as_logic(subject, family, variant, scope)
        _, at = logical.TABLE[tag]
        return (lambda: logical.violation(tag, s)), (lambda w: at(s, **w)), \
            f"variant={s.variant}, scope={s.scope}"
    if tag == "SCR_RULES":
        base = subject.points if isinstance(subject, Universe) else list(subject)
        if len(base) > 4:
            raise InputError("SCR_RULES sweeps bases of at most 4 atoms")
        return (lambda: logical.scr_violation(base)), (lambda w: logical.scr_at(base, **w)), ""
    raise InputError(f"no checker for {cid}")


def check(condition, subject, family: Optional[DomainFamily] = None, *, variant: str = "minimal",
          scope: str = "theories") -> Verdict:
    cid = ConditionId.parse(condition)
    viol, _, notes = _resolve(cid, subject, family, variant, scope)
    w = viol()
    return Verdict(str(cid), w is None, w, notes)


def holds_at(condition, subject, witness: dict, family: Optional[DomainFamily] = None, *,
             variant: str = "minimal", scope: str = "theories") -> bool:
    """Evaluate one instance directly; False confirms a genuine violation."""
    cid = ConditionId.parse(condition)
    _, at, _ = _resolve(cid, subject, family, variant, scope)
    return at(dict(witness))
