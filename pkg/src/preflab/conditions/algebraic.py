"""Algebraic conditions on a single choice function.

Each condition is a pair: ``instances(cf)`` enumerates the quantifier
coordinates in canonical order, ``holds_at(cf, **coords)`` evaluates one
instance. A verdict's witness is the first failing coordinate dict, so it can
always be re-evaluated directly.
"""
from __future__ import annotations


def _members(cf):
    return cf.family.members


def _has(cf, S):
    return S in cf.family.member_set


# (mu subset)
def subset_instances(cf):
    for X in _members(cf):
        yield {"X": X}


def subset_at(cf, X):
    return cf(X) <= X


# (mu PR): X <= Y -> mu(Y) & X <= mu(X)
def pr_instances(cf):
    for X in _members(cf):
        for Y in _members(cf):
            if X <= Y:
                yield {"X": X, "Y": Y}


def pr_at(cf, X, Y):
    return not X <= Y or cf(Y) & X <= cf(X)


# (mu PR'): mu(X) & Y <= mu(X & Y), where X & Y is in the domain
def pr_prime_instances(cf):
    for X in _members(cf):
        for Y in _members(cf):
            if _has(cf, X & Y):
                yield {"X": X, "Y": Y}


def pr_prime_at(cf, X, Y):
    return cf(X) & Y <= cf(X & Y)


# (mu CUM): mu(X) <= Y <= X -> mu(X) = mu(Y)
def cum_instances(cf):
    for X in _members(cf):
        mX = cf(X)
        for Y in _members(cf):
            if mX <= Y <= X:
                yield {"X": X, "Y": Y}


def cum_at(cf, X, Y):
    return not (cf(X) <= Y <= X) or cf(X) == cf(Y)


# (mu empty): X nonempty -> mu(X) nonempty; all sets are finite here
def empty_instances(cf):
    for X in _members(cf):
        yield {"X": X}


def empty_at(cf, X):
    return not X or bool(cf(X))


# (mu =): X <= Y, mu(Y) & X nonempty -> mu(Y) & X = mu(X)
def eq_instances(cf):
    for X in _members(cf):
        for Y in _members(cf):
            if X <= Y and cf(Y) & X:
                yield {"X": X, "Y": Y}


def eq_at(cf, X, Y):
    return not (X <= Y and cf(Y) & X) or cf(Y) & X == cf(X)


# (mu =')  mu(Y) & X nonempty -> mu(Y & X) = mu(Y) & X
def eq_prime_instances(cf):
    for X in _members(cf):
        for Y in _members(cf):
            if cf(Y) & X and _has(cf, X & Y):
                yield {"X": X, "Y": Y}


def eq_prime_at(cf, X, Y):
    return not cf(Y) & X or cf(X & Y) == cf(Y) & X


# (mu ||): mu(X u Y) is mu(X), mu(Y) or their union
def par_instances(cf):
    for X in _members(cf):
        for Y in _members(cf):
            if _has(cf, X | Y):
                yield {"X": X, "Y": Y}


def par_at(cf, X, Y):
    m = cf(X | Y)
    return m in (cf(X), cf(Y), cf(X) | cf(Y))


# (mu u): mu(Y) & (X - mu(X)) nonempty -> mu(X u Y) & Y empty
def union_instances(cf):
    for X in _members(cf):
        for Y in _members(cf):
            if _has(cf, X | Y) and cf(Y) & (X - cf(X)):
                yield {"X": X, "Y": Y}


def union_at(cf, X, Y):
    return not cf(Y) & (X - cf(X)) or not cf(X | Y) & Y


def union_prime_at(cf, X, Y):
    return not cf(Y) & (X - cf(X)) or cf(X | Y) == cf(X)


# (mu in): a in X - mu(X) -> some b in X with a not in mu({a, b})
def in_instances(cf):
    for X in _members(cf):
        for a in sorted(X - cf(X)):
            yield {"X": X, "a": a}


def in_at(cf, X, a):
    if a not in X or a in cf(X):
        return True
    for b in sorted(X):
        pair = frozenset((a, b))
        if _has(cf, pair) and a not in cf(pair):
            return True
    return False


TABLE = {
    "MU_SUBSET": (subset_instances, subset_at),
    "MU_PR": (pr_instances, pr_at),
    "MU_PR_PRIME": (pr_prime_instances, pr_prime_at),
    "MU_CUM": (cum_instances, cum_at),
    "MU_EMPTY": (empty_instances, empty_at),
    "MU_EMPTY_FIN": (empty_instances, empty_at),
    "MU_EQ": (eq_instances, eq_at),
    "MU_EQ_PRIME": (eq_prime_instances, eq_prime_at),
    "MU_PAR": (par_instances, par_at),
    "MU_UNION": (union_instances, union_at),
    "MU_UNION_PRIME": (union_instances, union_prime_at),
    "MU_IN": (in_instances, in_at),
}

NOTES = {
    "MU_PR_PRIME": "pairs whose intersection is outside the family are skipped",
    "MU_EQ_PRIME": "pairs whose intersection is outside the family are skipped",
    "MU_PAR": "pairs whose union is outside the family are skipped",
    "MU_UNION": "pairs whose union is outside the family are skipped",
    "MU_UNION_PRIME": "pairs whose union is outside the family are skipped",
    "MU_IN": "only pair sets that are family members can serve as b",
}


def violation(tag, cf):
    instances, at = TABLE[tag]
    for coords in instances(cf):
        if not at(cf, **coords):
            return coords
    return None


def holds(tag, cf) -> bool:
    return violation(tag, cf) is None
