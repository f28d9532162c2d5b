from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preflab.errors import InputError
from preflab.logic import (Binary, Const, Language, Not, Var, definable_family, models_of, parse_formula,
                           partition_family, theory_from, theory_of)

PQ = Language.of("p", "q")


def test_models_of_examples():
    assert models_of("p & q", PQ) == {"TT"}
    assert models_of("p | !p", PQ) == set(PQ.model_names)
    assert models_of(["p"], PQ) == {"TT", "TF"}
    assert models_of([], PQ) == set(PQ.model_names)


def test_theory_of_examples():
    assert theory_of({"TT"}, PQ).models == {"TT"}
    assert models_of(theory_of({"TT"}, PQ).formula(), PQ) == {"TT"}
    empty = theory_of(set(), PQ)
    assert not empty.consistent and models_of(empty, PQ) == frozenset()
    assert str(theory_of(PQ.model_names, PQ)) == "true"
    with pytest.raises(InputError):
        theory_of({"TX"}, PQ)


def test_definable_families():
    assert len(definable_family(PQ)) == 16
    sub = definable_family(PQ, "sublanguage", ["p"])
    assert sub.member_set == {frozenset(), frozenset({"TT", "TF"}), frozenset({"FT", "FF"}),
                              frozenset(PQ.model_names)}
    assert len(definable_family(PQ, "blocks", [["TT", "TF"], ["FT", "FF"]])) == 4


def test_partition_family_rejects_bad_blocks():
    with pytest.raises(InputError):
        partition_family(PQ.universe, [["TT"], ["TT", "TF"], ["FT", "FF"]])
    with pytest.raises(InputError):
        partition_family(PQ.universe, [["TT"]])


def test_precedence_and_associativity():
    assert parse_formula("!p & q | p") == Binary("|", Binary("&", Not(Var("p")), Var("q")), Var("p"))
    assert parse_formula("p -> q -> p") == Binary("->", Var("p"), Binary("->", Var("q"), Var("p")))
    assert parse_formula("p <-> q -> p") == Binary("<->", Var("p"), Binary("->", Var("q"), Var("p")))
    assert parse_formula("(true)") == Const(True)


@pytest.mark.parametrize("text", ["", "p &", "(p", "p q", "p # q", "&p"])
def test_parse_errors(text):
    with pytest.raises(InputError):
        parse_formula(text)


def test_unknown_variable_is_an_input_error():
    with pytest.raises(InputError):
        models_of("r", PQ)


def test_model_names_round_trip():
    lang = Language.from_model_names(["FF", "FT", "TF", "TT"], ["p", "q"])
    assert lang == PQ
    assert Language.from_model_names(PQ.model_names).variables == ("p1", "p2")


def test_theory_from_conjoins():
    assert theory_from(["p", "q"], PQ).models == {"TT"}


# properties

VARS = ("a", "b", "c")
LANG = Language(VARS)

formulas = st.recursive(
    st.one_of(st.sampled_from(VARS).map(Var), st.booleans().map(Const)),
    lambda sub: st.one_of(
        sub.map(Not),
        st.tuples(st.sampled_from(["&", "|", "->", "<->"]), sub, sub).map(lambda t: Binary(*t)),
    ),
    max_leaves=8,
)


def _truth(f, a):
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Var):
        return a[f.name]
    if isinstance(f, Not):
        return not _truth(f.arg, a)
    x, y = _truth(f.left, a), _truth(f.right, a)
    return {"&": x and y, "|": x or y, "->": (not x) or y, "<->": x == y}[f.op]


@settings(max_examples=200, deadline=None)
@given(formulas)
def test_printing_then_parsing_keeps_the_models(f):
    assert models_of(parse_formula(str(f)), LANG) == models_of(f, LANG)


@settings(max_examples=200, deadline=None)
@given(formulas)
def test_models_match_truth_tables(f):
    want = {m.name for m in LANG.models if _truth(f, m.assignment)}
    assert models_of(f, LANG) == want


@settings(max_examples=100, deadline=None)
@given(st.frozensets(st.sampled_from(LANG.model_names)))
def test_every_model_set_is_definable(X):
    assert models_of(theory_of(X, LANG).formula(), LANG) == X
