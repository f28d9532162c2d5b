from __future__ import annotations

import copy
import json

import pytest

from preflab.conditions import ChoiceFunction
from preflab.errors import InputError
from preflab.instances import instance_to_json, load_instance, loads_instance, make_instance, save_instance
from preflab.structures import BoothStructure, DistanceSpace, PrefStructure, RankedStructure
from preflab.universe import DomainFamily, Universe

S = frozenset
UNI = Universe.of("abc")
FAM = DomainFamily.of(UNI, [S(), S("a"), S("bc"), S("abc")])

PAYLOADS = {
    "choice_function": ChoiceFunction(FAM, {S(): S(), S("a"): S("a"), S("bc"): S("b"), S("abc"): S("ab")}),
    "pref_structure": PrefStructure(UNI, S({("a", 0), ("b", 0), ("b", 1), ("c", 0)}),
                                    S({(("a", 0), ("b", 1)), (("b", 0), ("c", 0))})),
    "ranked": RankedStructure.of({"a": 0, "b": 1, "c": 1}),
    "booth": BoothStructure(RankedStructure.of({"a": 0, "b": 1, "c": 2}), {("a", "c")}),
    "distance": DistanceSpace.of("abc", {("a", "b"): 1, ("a", "c"): "1/2", ("b", "c"): 2}),
}

BASE = {
    "universe": ["a", "b"],
    "family": [["a"], ["a", "b"]],
    "payload_kind": "choice_function",
    "payload": {"mu": [{"set": ["a"], "value": ["a"]}, {"set": ["a", "b"], "value": ["b"]}]},
    "expected": [{"condition": "MU_PR", "holds": False}],
}


@pytest.mark.parametrize("kind", sorted(PAYLOADS))
def test_round_trip_every_payload_kind(kind, tmp_path):
    data = make_instance(PAYLOADS[kind], FAM, [("MU_SUBSET", True)])
    path = tmp_path / f"{kind}.json"
    text = save_instance(data, str(path))
    back = load_instance(path)
    assert back.payload_kind == kind
    assert back.family.member_set == FAM.member_set
    assert [str(c) for c, _ in back.expected] == ["MU_SUBSET"]
    assert save_instance(back, None) == text == path.read_text()


def test_output_is_canonical():
    shuffled = copy.deepcopy(BASE)
    shuffled["universe"] = ["b", "a"]
    shuffled["family"] = [["b", "a"], ["a"]]
    shuffled["payload"]["mu"].reverse()
    a = instance_to_json(loads_instance(json.dumps(BASE)))
    b = instance_to_json(loads_instance(json.dumps(shuffled)))
    assert a["payload"] == b["payload"]
    assert all(m == sorted(m) for m in a["family"])


def test_base_document_loads():
    data = loads_instance(json.dumps(BASE))
    assert data.payload(S("ab")) == {"b"}


def _mutate(fn):
    obj = copy.deepcopy(BASE)
    fn(obj)
    return json.dumps(obj)


BAD = {
    "unknown top key": _mutate(lambda o: o.update(note="x")),
    "unknown payload key": _mutate(lambda o: o["payload"].update(extra=1)),
    "missing family": _mutate(lambda o: o.pop("family")),
    "foreign point": _mutate(lambda o: o["family"].append(["z"])),
    "family twice": _mutate(lambda o: o["family"].append(["b", "a"])),
    "duplicate universe": _mutate(lambda o: o["universe"].append("a")),
    "mu row twice": _mutate(lambda o: o["payload"]["mu"].append({"set": ["a"], "value": []})),
    "value outside universe": _mutate(lambda o: o["payload"]["mu"][0].update(value=["z"])),
    "mu misses a member": _mutate(lambda o: o["payload"]["mu"].pop()),
    "holds not boolean": _mutate(lambda o: o["expected"][0].update(holds="yes")),
    "unknown condition": _mutate(lambda o: o["expected"][0].update(condition="MU_FOO")),
    "bad kind": _mutate(lambda o: o.update(payload_kind="graph")),
    "duplicate key": '{"universe": ["a"], "universe": ["a"], "family": [], "payload_kind": "ranked",'
                     ' "payload": {"rank": {"a": 0}}}',
    "not json": "{universe:",
}


@pytest.mark.parametrize("label", sorted(BAD))
def test_strict_reader_rejects(label):
    with pytest.raises(InputError):
        loads_instance(BAD[label])


def test_negative_rank_and_bad_copy():
    doc = {"universe": ["a"], "family": [["a"]], "payload_kind": "ranked", "payload": {"rank": {"a": -1}}}
    with pytest.raises(InputError):
        loads_instance(json.dumps(doc))
    doc = {"universe": ["a"], "family": [["a"]], "payload_kind": "pref_structure",
           "payload": {"copies": [["a", True]], "rel": []}}
    with pytest.raises(InputError):
        loads_instance(json.dumps(doc))


def test_missing_file_is_an_input_error(tmp_path):
    with pytest.raises(InputError):
        load_instance(tmp_path / "nope.json")


def test_values_need_not_lie_inside_their_set():
    # choice functions without (mu SUBSET) are legitimate input
    doc = copy.deepcopy(BASE)
    doc["payload"]["mu"][0]["value"] = ["b"]
    assert loads_instance(json.dumps(doc)).payload(S("a")) == {"b"}
