"""Logical rules, checked semantically over a family of definable model sets.

Theories and formulas are both identified with family members. With scope
``"formulas"`` only members whose complement is also a member take part (in
a finite Boolean family that is every member); with scope ``"theories"``
every member does. The consequence closure of T is the model set
``hat(mu(M(T)))`` for the minimal variant and the intersection of
``hat(B)`` over the MISE B of M(T) for the limit variant.
"""
from __future__ import annotations

from itertools import product

from ..errors import InputError
from ..structures import DistanceSpace, revise
from ..universe import DomainFamily, Universe, hat, powerset
from .choice import ChoiceFunction
from .limit import LambdaOracle


class LogicSubject:
    def __init__(self, family: DomainFamily, variant: str = "minimal", cf=None, oracle=None,
                 scope: str = "theories"):
        if scope not in ("theories", "formulas"):
            raise InputError(f"unknown scope {scope!r}")
        if not family.supports_hat:
            raise InputError("logical checks need a family closed under intersection that contains the universe")
        self.family = family
        self.variant = variant
        self.cf = cf
        self.oracle = oracle
        self.scope = scope
        full = family.universe.as_set
        if scope == "formulas":
            self.domain = [m for m in family.members if full - m in family.member_set]
        else:
            self.domain = list(family.members)
        self.domain_set = frozenset(self.domain)
        self._closure = {}

    @classmethod
    def minimal(cls, cf: ChoiceFunction, scope="theories"):
        return cls(cf.family, "minimal", cf=cf, scope=scope)

    @classmethod
    def from_structure(cls, structure, family: DomainFamily, variant="minimal", scope="theories"):
        if variant == "minimal":
            return cls(family, "minimal", cf=ChoiceFunction.from_structure(structure, family), scope=scope)
        if variant == "limit":
            return cls(family, "limit", oracle=LambdaOracle(structure), scope=scope)
        raise InputError(f"unknown variant {variant!r}")

    def closure(self, X) -> frozenset:
        if X not in self._closure:
            if self.variant == "minimal":
                self._closure[X] = hat(self.family, self.cf(X))
            else:
                out = self.family.universe.as_set
                for seg in self.oracle(X):
                    out &= hat(self.family, self.oracle.points(seg))
                self._closure[X] = out
        return self._closure[X]

    def entails(self, X, F) -> bool:
        if self.variant == "minimal":
            return self.cf(X) <= F
        return any(self.oracle.points(seg) <= F for seg in self.oracle(X))

    def theory(self, S) -> bool:
        return S in self.domain_set


def _dom(s):
    return s.domain


# each rule: instances(s) and at(s, **coords); "at" returns False on a violation


def lle_instances(s):
    for T in _dom(s):
        for T2 in _dom(s):
            if T == T2:
                yield {"T": T, "T2": T2}


def lle_at(s, T, T2):
    return T != T2 or all(s.entails(T, F) == s.entails(T2, F) for F in _dom(s))


def rw_instances(s):
    for T in _dom(s):
        for F in _dom(s):
            if s.entails(T, F):
                for G in _dom(s):
                    if F <= G:
                        yield {"T": T, "phi": F, "psi": G}


def rw_at(s, T, phi, psi):
    return not (s.entails(T, phi) and phi <= psi) or s.entails(T, psi)


def and_instances(s):
    for T in _dom(s):
        for F in _dom(s):
            for G in _dom(s):
                if s.theory(F & G):
                    yield {"T": T, "phi": F, "psi": G}


def and_at(s, T, phi, psi):
    return not (s.entails(T, phi) and s.entails(T, psi)) or s.entails(T, phi & psi)


def or_instances(s):
    for T in _dom(s):
        for T2 in _dom(s):
            if s.theory(T | T2):
                for F in _dom(s):
                    yield {"T": T, "T2": T2, "phi": F}


def or_at(s, T, T2, phi):
    return not (s.entails(T, phi) and s.entails(T2, phi)) or s.entails(T | T2, phi)


def ccl_instances(s):
    for T in _dom(s):
        for F in _dom(s):
            yield {"T": T, "phi": F}


def ccl_at(s, T, phi):
    """phi follows from T's consequences taken together iff it is a consequence."""
    conseq = s.family.universe.as_set
    for G in _dom(s):
        if s.entails(T, G):
            conseq &= G
    return (conseq <= phi) == s.entails(T, phi)


def sc_instances(s):
    for T in _dom(s):
        for F in _dom(s):
            if T <= F:
                yield {"T": T, "phi": F}


def sc_at(s, T, phi):
    return not T <= phi or s.entails(T, phi)


def cp_instances(s):
    if frozenset() in s.domain_set:
        for T in _dom(s):
            yield {"T": T}


def cp_at(s, T):
    return not s.entails(T, frozenset()) or not T


def rm_instances(s):
    full = s.family.universe.as_set
    for T in _dom(s):
        for F in _dom(s):
            for G in _dom(s):
                if s.theory(full - G) and s.theory(T & G):
                    yield {"T": T, "phi": F, "psi": G}


def rm_at(s, T, phi, psi):
    full = s.family.universe.as_set
    if not s.entails(T, phi) or s.entails(T, full - psi):
        return True
    return s.entails(T & psi, phi)


def cm_instances(s):
    for T in _dom(s):
        for F in _dom(s):
            if s.entails(T, F) and s.theory(T & F):
                for G in _dom(s):
                    yield {"T": T, "phi": F, "psi": G}


def cm_at(s, T, phi, psi):
    return not (s.entails(T, phi) and s.entails(T, psi)) or s.entails(T & phi, psi)


def cum_at(s, T, phi, psi):
    return not s.entails(T, phi) or s.entails(T, psi) == s.entails(T & phi, psi)


def pr_instances(s):
    for T in _dom(s):
        for T2 in _dom(s):
            if s.theory(T & T2):
                yield {"T": T, "T2": T2}


def pr_at(s, T, T2):
    return s.closure(T) & T2 <= s.closure(T & T2)


def eq_instances(s):
    for T in _dom(s):
        for T2 in _dom(s):
            if T <= T2:
                yield {"T": T, "T2": T2}


def eq_at(s, T, T2):
    """(|= =): T |- T2 and T2's consequences consistent with T give equality."""
    if not T <= T2 or not s.closure(T2) & T:
        return True
    return s.closure(T) == s.closure(T2) & T


TABLE = {
    "LLE": (lle_instances, lle_at),
    "RW": (rw_instances, rw_at),
    "AND": (and_instances, and_at),
    "OR": (or_instances, or_at),
    "CCL": (ccl_instances, ccl_at),
    "SC": (sc_instances, sc_at),
    "CP": (cp_instances, cp_at),
    "RM": (rm_instances, rm_at),
    "CM": (cm_instances, cm_at),
    "CUM": (cm_instances, cum_at),
    "PR": (pr_instances, pr_at),
    "LOG_EQ": (eq_instances, eq_at),
}


def violation(tag, s: LogicSubject):
    instances, at = TABLE[tag]
    for coords in instances(s):
        if not at(s, **coords):
            return coords
    return None


# (*4) for a revision operator


class RevisionOperator:
    """Theory revision by minimal distance, closed up with hat."""

    def __init__(self, space: DistanceSpace, family: DomainFamily, scope: str = "theories"):
        if not family.supports_hat:
            raise InputError("revision needs a family closed under intersection that contains the universe")
        if frozenset(family.universe.as_set) != space.points:
            raise InputError("distance space and family disagree on the points")
        self.space = space
        self.family = family
        full = family.universe.as_set
        if scope == "formulas":
            self.extra = [m for m in family.members if full - m in family.member_set]
        elif scope == "theories":
            self.extra = list(family.members)
        else:
            raise InputError(f"unknown scope {scope!r}")

    def revised(self, A, B) -> frozenset:
        return hat(self.family, revise(self.space, A, B))


def star4_instances(r: RevisionOperator):
    for A in r.family.members:
        for B in r.family.members:
            for C in r.extra:
                if B & C in r.family.member_set:
                    yield {"T": A, "T2": B, "T3": C}


def star4_at(r: RevisionOperator, T, T2, T3):
    K = r.revised(T, T2)
    if not K & T3:
        return True
    return r.revised(T, T2 & T3) == K & T3


def star4_violation(r: RevisionOperator):
    for coords in star4_instances(r):
        if not star4_at(r, **coords):
            return coords
    return None


# the intersection relation on finite sets of atoms


def _turnstile(G, D):
    return bool(G & D)


def scr_violation(base):
    atoms = sorted(base)
    subsets = powerset(atoms)
    for G, D in product(subsets, repeat=2):
        if G & D and not _turnstile(G, D):
            return {"rule": "s-R", "Gamma": G, "Delta": D}
    for G, D in product(subsets, repeat=2):
        if not _turnstile(G, D):
            continue
        for G2, D2 in product(subsets, repeat=2):
            if not _turnstile(G | G2, D | D2):
                return {"rule": "M", "Gamma": G, "Delta": D, "Gamma2": G2, "Delta2": D2}
    for psi in atoms:
        p = frozenset([psi])
        for G1, D1 in product(subsets, repeat=2):
            if not _turnstile(G1, D1 | p):
                continue
            for G2, D2 in product(subsets, repeat=2):
                if _turnstile(G2 | p, D2) and not _turnstile(G1 | G2, D1 | D2):
                    return {"rule": "C", "psi": psi, "Gamma1": G1, "Delta1": D1, "Gamma2": G2, "Delta2": D2}
    return None


def scr_at(base, rule, **c) -> bool:
    if rule == "s-R":
        return not c["Gamma"] & c["Delta"] or _turnstile(c["Gamma"], c["Delta"])
    if rule == "M":
        return not _turnstile(c["Gamma"], c["Delta"]) or \
            _turnstile(c["Gamma"] | c["Gamma2"], c["Delta"] | c["Delta2"])
    p = frozenset([c["psi"]])
    if _turnstile(c["Gamma1"], c["Delta1"] | p) and _turnstile(c["Gamma2"] | p, c["Delta2"]):
        return _turnstile(c["Gamma1"] | c["Gamma2"], c["Delta1"] | c["Delta2"])
    return True
