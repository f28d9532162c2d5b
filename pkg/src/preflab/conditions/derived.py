"""The derived functions mu_0 .. mu_3 and the smallness conditions they feed."""
from __future__ import annotations

from ..errors import MissingClosure
from ..universe import is_small
from .choice import ChoiceFunction


def _mu0(cf, U):
    bad = set()
    for Y in cf.family.members:
        if Y <= U:
            bad |= Y - cf(Y)
    return U - bad


def _mu1(cf, U):
    bad = set()
    for Y in cf.family.members:
        if cf(Y) <= U:
            bad |= Y - cf(Y)
    return U - bad


def _mu2(cf, U):
    bad = set()
    for Y in cf.family.members:
        if cf(U | Y) <= U:
            bad |= Y - cf(Y)
    return U - bad


def _mu3(cf, U):
    out = set()
    for x in U:
        if all(x in cf(frozenset((x, y))) for y in U):
            out.add(x)
    return frozenset(out)


_DERIVERS = {0: _mu0, 1: _mu1, 2: _mu2, 3: _mu3}


def derive_mu_i(cf: ChoiceFunction, i: int) -> ChoiceFunction:
    fam = cf.family
    if i not in _DERIVERS:
        raise ValueError("i must be 0, 1, 2 or 3")
    if i == 2 and not fam.closed_finite_union:
        raise MissingClosure("mu_2 needs a family closed under finite unions")
    if i == 3 and not (fam.contains_singletons and fam.contains_pairs):
        raise MissingClosure("mu_3 needs all singletons and pair sets in the family")
    f = _DERIVERS[i]
    return ChoiceFunction(fam, {U: frozenset(f(cf, U)) for U in fam.members}, validate=False)


def pr_i_violation(cf: ChoiceFunction, i: int, derived=None):
    """(mu PR_i): mu(U) - mu_i(U) is small in mu(U)."""
    d = derived or derive_mu_i(cf, i)
    for U in cf.family.members:
        m = cf(U)
        j = is_small(cf.family, m - d(U), m)
        if not j.small:
            return {"U": U, "between": j.witness}
    return None


def pr_i_at(cf, i, U, between=None) -> bool:
    d = derive_mu_i(cf, i)
    m = cf(U)
    return is_small(cf.family, m - d(U), m).small
