from __future__ import annotations

import pytest

from preflab.conditions import check
from preflab.errors import InputError
from preflab.gallery import GENERATORS, SearchExhausted, gallery
from preflab.instances import instance_to_json, loads_instance, save_instance

S = frozenset

ENTRIES = [(name, {}) for name in sorted(GENERATORS)] + [
    ("cum_hierarchy", {"k": 2}), ("cum_hierarchy", {"k": 3}), ("tau_vs_hu", {"depth": 1}),
    ("tau_vs_hu", {"depth": 5}),
]


@pytest.mark.parametrize("name,params", ENTRIES, ids=lambda v: str(v))
def test_every_entry_reverifies(name, params):
    inst = gallery(name, params)
    rows = inst.verify()
    assert rows and all(r["ok"] for r in rows)
    # expected claims survive the file format and still hold when reloaded
    data = loads_instance(save_instance(inst.data(), None))
    for cond, want in data.expected:
        assert check(cond, data.payload, data.family, **inst.options).holds == want


def test_entries_are_deterministic():
    for name in GENERATORS:
        a, b = gallery(name), gallery(name)
        assert instance_to_json(a.data()) == instance_to_json(b.data())
        assert a.search == b.search


def test_staged_counterexample_hierarchy():
    for k in (1, 2, 3):
        inst = gallery("cum_hierarchy", {"k": k})
        got = dict((c, h) for c, h in inst.expected)
        assert got["MU_CUM"] is True
        assert got[f"MU_CUM_ALPHA:{k}"] is False
        assert all(got[f"MU_CUMT_ALPHA:{a}"] for a in range(k))
        assert all(check(f"MU_CUM_ALPHA:{a}", inst.payload, inst.family).holds for a in range(k))


def test_searches_report_where_they_stopped():
    inst = gallery("nondp_pr_fail")
    assert inst.search["stage"] in ("blocks", "lattice") and "witness" in inst.search
    with pytest.raises(SearchExhausted) as e:
        gallery("nondp_pr_fail", {"budget": 1})
    assert e.value.report["stopped"] == "budget"


def test_unknown_entry_and_bad_params():
    with pytest.raises(InputError):
        gallery("example_99")
    with pytest.raises(InputError):
        gallery("cum_hierarchy", {"k": 9})
    with pytest.raises(InputError):
        gallery("cum_hierarchy", {"k": "two"})
    with pytest.raises(InputError):
        gallery("tau_vs_hu", {"depth": 0})
