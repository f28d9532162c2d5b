"""Compare a structure's choice function with a given one, set by set."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..conditions.booth import BoothPair
from ..errors import InputError
from ..structures import mu
from ..universe import fmt, hat


@dataclass
class VerificationReport:
    mode: str
    rows: list = field(default_factory=list)  # (set, expected, produced, ok)
    mismatch: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.mismatch is None

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "ok": self.ok,
            "rows": [{"set": fmt(X), "expected": fmt(e), "produced": fmt(p), "ok": ok}
                     for X, e, p, ok in self.rows],
            "mismatch": self.mismatch,
        }


def verify_representation(structure, cf, mode: str = "exact") -> VerificationReport:
    if mode not in ("exact", "hat"):
        raise InputError(f"unknown verification mode {mode!r}")
    fam = cf.family
    if not structure.universe.as_set <= fam.universe.as_set:
        raise InputError("structure and choice function live on different universes")
    rep = VerificationReport(mode)
    for X in fam.members:
        got = mu(structure, X)
        if mode == "hat":
            got = hat(fam, got)
        want = cf(X)
        ok = got == want
        rep.rows.append((X, want, got, ok))
        if not ok and rep.mismatch is None:
            rep.mismatch = {"set": fmt(X), "expected": fmt(want), "produced": fmt(got)}
    return rep


def verify_booth(structure, bp: BoothPair) -> VerificationReport:
    """Both mu+ and mu- of ``structure`` against the pair, on every member."""
    back = BoothPair.from_structure(structure, bp.family)
    rep = VerificationReport("booth")
    for X in bp.family.members:
        for part, want, got in (("plus", bp.plus(X), back.plus(X)), ("minus", bp.minus(X), back.minus(X))):
            ok = want == got
            rep.rows.append((X, want, got, ok))
            if not ok and rep.mismatch is None:
                rep.mismatch = {"set": fmt(X), "part": part, "expected": fmt(want), "produced": fmt(got)}
    return rep
