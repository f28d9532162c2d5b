"""The H-hulls, the no-return conditions built on them, and the staged
cumulativity hierarchy."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..errors import InputError


@dataclass(frozen=True)
class HSet:
    base: frozenset
    focus: Optional[str]
    stages: tuple

    @property
    def result(self) -> frozenset:
        return self.stages[-1]


def h_set(cf, U, x: Optional[str] = None) -> HSet:
    """Stage k+1 adds every member X (containing x, if given) with mu(X) inside stage k."""
    U = frozenset(U)
    if U not in cf.family.member_set:
        raise InputError("h_set base must be a family member")
    if x is not None and x not in cf.family.universe:
        raise InputError(f"{x!r} is not a universe point")
    H = U
    stages = [H]
    members = cf.family.members
    while True:
        grown = H
        for X in members:
            if (x is None or x in X) and cf(X) <= H:
                grown = grown | X
        if grown == H:
            return HSet(U, x, tuple(stages))
        H = grown
        stages.append(H)


def _hu_violation(cf, with_point: bool):
    cache = {}
    for U in cf.family.members:
        for x in sorted(cf(U)):
            for Y in cf.family.members:
                if x in Y and x not in cf(Y):
                    key = (U, x if with_point else None)
                    if key not in cache:
                        cache[key] = h_set(cf, U, key[1]).result
                    if cf(Y) <= cache[key]:
                        return {"U": U, "x": x, "Y": Y}
    return None


def hu_at(cf, U, x, Y, with_point):
    if x not in cf(U) or x not in Y or x in cf(Y):
        return True
    H = h_set(cf, U, x if with_point else None).result
    return not cf(Y) <= H


def hux_violation(cf):
    return _hu_violation(cf, True)


def hu_violation(cf):
    return _hu_violation(cf, False)


def cum_alpha_violation(cf, k: int, transitive: bool):
    """First violating (U, X_0..X_j, point) with j <= k, or None.

    Sequences are searched without repeats. A repeated set changes neither the
    staged prerequisite nor the conclusion, and a violating sequence of length
    j+1 <= k+1 pads to length k+1 by repeating its last set, so this decides
    the condition for sequences of length exactly k+1 with repeats allowed.
    """
    if k < 0:
        raise InputError("k must be a natural number")
    members = cf.family.members
    for U in members:
        mU = cf(U)
        if not mU:
            continue
        seen = set()
        found = _cum_dfs(cf, members, mU, k, transitive, [], U, None, seen)
        if found:
            seq, point = found
            return {"U": U, "sequence": list(seq), "point": point}
    return None


def _cum_dfs(cf, members, mU, k, transitive, seq, union, inter, seen):
    for X in members:
        if X in seq or not cf(X) <= union:
            continue
        new_seq = seq + [X]
        new_inter = X if inter is None else inter & X
        reach = (X if transitive else new_inter) & mU
        bad = reach - cf(X)
        if bad:
            return new_seq, min(bad)
        if len(new_seq) > k:
            continue
        if not transitive and not new_inter & mU:
            continue
        state = frozenset(new_seq)
        if state in seen:
            continue
        seen.add(state)
        found = _cum_dfs(cf, members, mU, k, transitive, new_seq, union | X, new_inter, seen)
        if found:
            return found
    return None


def cum_alpha_at(cf, U, sequence, point, transitive) -> bool:
    """Direct evaluation of one instance; False means a genuine violation."""
    union = frozenset(U)
    for X in sequence:
        if not cf(X) <= union:
            return True
        union |= X
    inter = frozenset.intersection(*sequence)
    scope = sequence[-1] if transitive else inter
    return not (point in scope and point in cf(U) and point not in cf(sequence[-1]))
