"""Choice functions, condition identifiers and verdicts."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..errors import InputError
from ..universe import DomainFamily, fmt, set_key


class ChoiceFunction:
    """A total map from the members of a family to subsets of its universe."""

    __slots__ = ("family", "map", "_codomain")

    def __init__(self, family: DomainFamily, mapping: dict, validate: bool = True):
        self.family = family
        self.map = {frozenset(k): frozenset(v) for k, v in mapping.items()} if validate else mapping
        self._codomain = None
        if validate:
            missing = [m for m in family.members if m not in self.map]
            if missing:
                raise InputError(f"choice function undefined on {fmt(missing[0])}")
            extra = [k for k in self.map if k not in family.member_set]
            if extra:
                raise InputError(f"choice function defined on non-member {fmt(extra[0])}")
            uni = family.universe.as_set
            for k, v in self.map.items():
                if not v <= uni:
                    raise InputError(f"value on {fmt(k)} leaves the universe")

    def __call__(self, X) -> frozenset:
        try:
            return self.map[X]
        except KeyError:
            raise InputError(f"{fmt(X)} is not in the domain of the choice function") from None

    def defined(self, X) -> bool:
        return X in self.map

    @property
    def codomain_in_family(self) -> bool:
        if self._codomain is None:
            self._codomain = all(v in self.family.member_set for v in self.map.values())
        return self._codomain

    @classmethod
    def from_structure(cls, structure, family: DomainFamily) -> "ChoiceFunction":
        from ..structures import mu
        return cls(family, {X: mu(structure, X) & X for X in family.members}, validate=False)

    @classmethod
    def identity(cls, family: DomainFamily) -> "ChoiceFunction":
        return cls(family, {X: X for X in family.members}, validate=False)

    def items(self):
        return [(X, self.map[X]) for X in self.family.members]

    def __eq__(self, other):
        return isinstance(other, ChoiceFunction) and self.family == other.family and self.map == other.map

    def __hash__(self):
        return hash((self.family, frozenset(self.map.items())))

    def __repr__(self):
        body = ", ".join(f"{fmt(X)}->{fmt(v)}" for X, v in self.items())
        return f"ChoiceFunction({body})"

    def to_payload(self) -> dict:
        return {"mu": [{"set": fmt(X), "value": fmt(v)} for X, v in self.items()]}


PARAM_RANGES = {
    "MU_CUM_ALPHA": (0, None),
    "MU_CUMT_ALPHA": (0, None),
    "MU_PR_I": (0, 3),
    "MU_MINUS": (1, 5),
}

PLAIN_TAGS = (
    "MU_SUBSET", "MU_PR", "MU_PR_PRIME", "MU_CUM", "MU_EMPTY", "MU_EMPTY_FIN", "MU_EQ",
    "MU_EQ_PRIME", "MU_PAR", "MU_UNION", "MU_UNION_PRIME", "MU_IN", "HU", "HUX", "MU_TAU",
    "LAMBDA_AND", "LAMBDA_PR", "LAMBDA_CUMFIN", "LAMBDA_EQ", "STAR4",
    "AND", "OR", "LLE", "RW", "CCL", "SC", "CP", "RM", "CM", "CUM", "PR", "LOG_EQ", "SCR_RULES",
)


@dataclass(frozen=True)
class ConditionId:
    tag: str
    param: Optional[int] = None

    def __post_init__(self):
        if self.tag in PARAM_RANGES:
            lo, hi = PARAM_RANGES[self.tag]
            if self.param is None or self.param < lo or (hi is not None and self.param > hi):
                raise InputError(f"{self.tag} needs a parameter in range {lo}..{hi if hi is not None else ''}")
        elif self.tag in PLAIN_TAGS:
            if self.param is not None:
                raise InputError(f"{self.tag} takes no parameter")
        else:
            raise InputError(f"unknown condition {self.tag!r}")

    @classmethod
    def parse(cls, text) -> "ConditionId":
        if isinstance(text, ConditionId):
            return text
        text = str(text).strip()
        if ":" in text:
            tag, _, p = text.partition(":")
            try:
                return cls(tag.strip(), int(p))
            except ValueError:
                raise InputError(f"bad condition parameter in {text!r}") from None
        return cls(text)

    def __str__(self):
        return self.tag if self.param is None else f"{self.tag}:{self.param}"


def _render(v):
    if isinstance(v, (set, frozenset)):
        items = list(v)
        if items and isinstance(items[0], tuple):
            return [list(c) for c in sorted(items)]
        return fmt(v)
    if isinstance(v, (list, tuple)):
        return [_render(x) for x in v]
    if isinstance(v, dict):
        return {k: _render(x) for k, x in v.items()}
    return v


@dataclass
class Verdict:
    condition: str
    holds: bool
    witness: Optional[dict] = None
    notes: str = ""
    raw: Optional[dict] = field(default=None, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "holds": self.holds,
            "witness": _render(self.witness) if self.witness is not None else None,
            "notes": self.notes,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Verdict":
        return cls(d["condition"], bool(d["holds"]), d.get("witness"), d.get("notes", ""))


def first(iterable):
    for x in iterable:
        return x
    return None


def pairs(family: DomainFamily):
    ms = family.members
    for X in ms:
        for Y in ms:
            yield X, Y


def canon_sorted(sets):
    return sorted(sets, key=set_key)
