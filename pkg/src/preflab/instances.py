"""Instance files: a universe, a family, one payload and optional expected claims.

The reader is strict. Unknown keys, sets that leave the universe and
duplicate entries are rejected; the writer emits every set as a sorted
array so output is canonical.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .conditions.choice import ChoiceFunction, ConditionId
from .errors import InputError
from .structures import BoothStructure, DistanceSpace, PrefStructure, RankedStructure, fmt_copies, fmt_copy
from .universe import DomainFamily, Universe, fmt

PAYLOAD_KINDS = ("choice_function", "pref_structure", "ranked", "booth", "distance")
TOP_KEYS = {"universe", "family", "payload_kind", "payload", "expected"}
PAYLOAD_KEYS = {
    "choice_function": {"mu"},
    "pref_structure": {"copies", "rel"},
    "ranked": {"rank"},
    "booth": {"rank", "sub"},
    "distance": {"d"},
}


@dataclass
class InstanceData:
    universe: Universe
    family: DomainFamily
    payload_kind: str
    payload: Any
    expected: list = field(default_factory=list)  # (ConditionId, bool)


def kind_of(payload) -> str:
    if isinstance(payload, ChoiceFunction):
        return "choice_function"
    if isinstance(payload, BoothStructure):
        return "booth"
    if isinstance(payload, RankedStructure):
        return "ranked"
    if isinstance(payload, PrefStructure):
        return "pref_structure"
    if isinstance(payload, DistanceSpace):
        return "distance"
    raise InputError(f"no instance encoding for {type(payload).__name__}")


def _check_keys(obj, allowed, where, required=None):
    if not isinstance(obj, dict):
        raise InputError(f"{where} must be an object")
    extra = set(obj) - allowed
    if extra:
        raise InputError(f"unknown key(s) in {where}: {', '.join(sorted(extra))}")
    missing = (required if required is not None else allowed) - set(obj)
    if missing:
        raise InputError(f"missing key(s) in {where}: {', '.join(sorted(missing))}")


def _str_list(v, where) -> list:
    if not isinstance(v, list) or not all(isinstance(x, str) for x in v):
        raise InputError(f"{where} must be an array of strings")
    if len(set(v)) != len(v):
        raise InputError(f"{where} has duplicate entries")
    return v


def _copy(v, where):
    if not (isinstance(v, list) and len(v) == 2 and isinstance(v[0], str) and isinstance(v[1], int)
            and not isinstance(v[1], bool)):
        raise InputError(f"{where}: a copy is [point, index]")
    return (v[0], v[1])


def _number(v, where) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (int, float, str)):
        raise InputError(f"{where}: distance must be a number or a fraction string")
    try:
        return Fraction(str(v))
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{where}: bad distance {v!r}") from None


def _rank(v, uni, where) -> dict:
    if not isinstance(v, dict):
        raise InputError(f"{where} must be an object of point -> rank")
    for p, r in v.items():
        if isinstance(r, bool) or not isinstance(r, int) or r < 0:
            raise InputError(f"{where}: rank of {p!r} must be a natural number")
    return RankedStructure.of(dict(v), uni.points)


def parse_payload(kind, payload, family: DomainFamily):
    uni = family.universe
    _check_keys(payload, PAYLOAD_KEYS[kind], f"{kind} payload")
    if kind == "choice_function":
        mu = payload["mu"]
        if not isinstance(mu, list):
            raise InputError("mu must be an array of {set, value} objects")
        mapping = {}
        for i, row in enumerate(mu):
            _check_keys(row, {"set", "value"}, f"mu[{i}]")
            X = frozenset(_str_list(row["set"], f"mu[{i}].set"))
            if X in mapping:
                raise InputError(f"mu[{i}] repeats the set {fmt(X)}")
            mapping[X] = frozenset(_str_list(row["value"], f"mu[{i}].value"))
        return ChoiceFunction(family, mapping)
    if kind == "pref_structure":
        if not isinstance(payload["copies"], list) or not isinstance(payload["rel"], list):
            raise InputError("copies and rel must be arrays")
        copies = [_copy(c, f"copies[{i}]") for i, c in enumerate(payload["copies"])]
        if len(set(copies)) != len(copies):
            raise InputError("duplicate copies")
        rel = []
        for i, pair in enumerate(payload["rel"]):
            if not isinstance(pair, list) or len(pair) != 2:
                raise InputError(f"rel[{i}] must be [[p,i],[q,j]]")
            rel.append((_copy(pair[0], f"rel[{i}][0]"), _copy(pair[1], f"rel[{i}][1]")))
        return PrefStructure(uni, frozenset(copies), frozenset(rel))
    if kind == "ranked":
        return _rank(payload["rank"], uni, "rank")
    if kind == "booth":
        ranked = _rank(payload["rank"], uni, "rank")
        sub = payload["sub"]
        if not isinstance(sub, list) or not all(isinstance(p, list) and len(p) == 2 for p in sub):
            raise InputError("sub must be an array of [x, y] pairs")
        return BoothStructure(ranked, frozenset((str(x), str(y)) for x, y in sub))
    if kind == "distance":
        d = {}
        if not isinstance(payload["d"], list):
            raise InputError("d must be an array of [p, q, value]")
        for i, row in enumerate(payload["d"]):
            if not isinstance(row, list) or len(row) != 3 or not all(isinstance(x, str) for x in row[:2]):
                raise InputError(f"d[{i}] must be [p, q, value]")
            d[(row[0], row[1])] = _number(row[2], f"d[{i}]")
        space = DistanceSpace.of(uni.points, d)
        return space
    raise InputError(f"unknown payload_kind {kind!r}")


def parse_instance(obj) -> InstanceData:
    _check_keys(obj, TOP_KEYS, "instance", required=TOP_KEYS - {"expected"})
    uni = Universe.of(_str_list(obj["universe"], "universe"))
    fam_raw = obj["family"]
    if not isinstance(fam_raw, list):
        raise InputError("family must be an array of arrays")
    members = [frozenset(_str_list(m, f"family[{i}]")) for i, m in enumerate(fam_raw)]
    if len(set(members)) != len(members):
        raise InputError("family lists a set twice")
    family = DomainFamily.of(uni, members)
    kind = obj["payload_kind"]
    if kind not in PAYLOAD_KINDS:
        raise InputError(f"payload_kind must be one of {', '.join(PAYLOAD_KINDS)}")
    payload = parse_payload(kind, obj["payload"], family)
    expected = []
    raw = obj.get("expected", [])
    if not isinstance(raw, list):
        raise InputError("expected must be an array")
    for i, row in enumerate(raw):
        _check_keys(row, {"condition", "holds"}, f"expected[{i}]")
        if not isinstance(row["holds"], bool):
            raise InputError(f"expected[{i}].holds must be a boolean")
        expected.append((ConditionId.parse(row["condition"]), row["holds"]))
    return InstanceData(uni, family, kind, payload, expected)


def _fraction_out(v: Fraction):
    return int(v) if v.denominator == 1 else str(v)


def payload_to_json(payload) -> dict:
    kind = kind_of(payload)
    if kind == "choice_function":
        return payload.to_payload()
    if kind == "pref_structure":
        rel = sorted(payload.rel, key=lambda p: (p[0], p[1]))
        return {"copies": fmt_copies(payload.copies), "rel": [[fmt_copy(a), fmt_copy(b)] for a, b in rel]}
    if kind == "ranked":
        return {"rank": dict(sorted(payload.rank_of.items()))}
    if kind == "booth":
        return {"rank": dict(sorted(payload.ranked.rank_of.items())), "sub": [list(p) for p in sorted(payload.sub)]}
    return {"d": [[p, q, _fraction_out(v)] for (p, q), v in payload.d]}


def instance_to_json(data: InstanceData) -> dict:
    out = {
        "universe": list(data.universe.points),
        "family": [fmt(m) for m in data.family.members],
        "payload_kind": data.payload_kind,
        "payload": payload_to_json(data.payload),
    }
    if data.expected:
        out["expected"] = [{"condition": str(c), "holds": h} for c, h in data.expected]
    return out


def make_instance(payload, family: DomainFamily, expected=()) -> InstanceData:
    return InstanceData(family.universe, family, kind_of(payload), payload,
                        [(ConditionId.parse(c), bool(h)) for c, h in expected])


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _no_duplicate_keys(pairs):
    obj = {}
    for k, v in pairs:
        if k in obj:
            raise InputError(f"duplicate key {k!r}")
        obj[k] = v
    return obj


def loads_instance(text: str) -> InstanceData:
    try:
        obj = json.loads(text, object_pairs_hook=_no_duplicate_keys)
    except json.JSONDecodeError as e:
        raise InputError(f"not valid JSON ({e.msg} at line {e.lineno})") from None
    return parse_instance(obj)


def load_instance(path) -> InstanceData:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    try:
        return loads_instance(text)
    except InputError as e:
        raise InputError(f"{path}: {e}") from None


def save_instance(data: InstanceData, path: Optional[str]) -> str:
    text = dumps(instance_to_json(data))
    if path:
        try:
            Path(path).write_text(text)
        except OSError as e:
            raise InputError(f"cannot write {path}: {e.strerror}") from None
    return text
