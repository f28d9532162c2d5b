"""Finite propositional languages and the bridge from formulas to model sets.

A model is named by its truth values in variable order, e.g. ``TF`` for p=true,
q=false over the language (p, q). Those names are the points of the universe
that everything else works on.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Optional, Union

from .errors import InputError
from .universe import DomainFamily, Universe, fmt

MAX_EXHAUSTIVE_VARIABLES = 4


@dataclass(frozen=True)
class Language:
    variables: tuple

    def __post_init__(self):
        vs = tuple(self.variables)
        if len(set(vs)) != len(vs):
            raise InputError("duplicate variable names")
        for v in vs:
            if not _IDENT.fullmatch(v) or v in ("true", "false"):
                raise InputError(f"bad variable name {v!r}")
        object.__setattr__(self, "variables", vs)

    @classmethod
    def of(cls, *variables: str) -> "Language":
        return cls(tuple(variables))

    @property
    def size(self) -> int:
        return len(self.variables)

    @cached_property
    def models(self) -> tuple:
        return tuple(Model(self, bits) for bits in product((True, False), repeat=self.size))

    @cached_property
    def model_names(self) -> tuple:
        return tuple(m.name for m in self.models)

    @cached_property
    def universe(self) -> Universe:
        return Universe.of(self.model_names)

    def model(self, name: str) -> "Model":
        if len(name) != self.size or set(name) - {"T", "F"}:
            raise InputError(f"{name!r} is not a model name for {self.variables}")
        return Model(self, tuple(ch == "T" for ch in name))

    @classmethod
    def from_model_names(cls, names: Iterable[str], variables: Optional[Iterable[str]] = None):
        """Recover the language whose model space is exactly ``names``."""
        names = sorted(names)
        n = len(names[0]) if names else 0
        if variables is None:
            variables = [f"p{i + 1}" for i in range(n)]
        lang = cls(tuple(variables))
        if sorted(lang.model_names) != names:
            raise InputError("universe is not the model space of a propositional language")
        return lang


@dataclass(frozen=True)
class Model:
    language: Language = field(repr=False)
    bits: tuple

    @property
    def name(self) -> str:
        return "".join("T" if b else "F" for b in self.bits)

    @property
    def assignment(self) -> dict:
        return dict(zip(self.language.variables, self.bits))


# formulas


class Formula:
    def evaluate(self, a: dict) -> bool:
        raise NotImplementedError

    def variables(self) -> set:
        raise NotImplementedError


@dataclass(frozen=True)
class Const(Formula):
    value: bool

    def evaluate(self, a):
        return self.value

    def variables(self):
        return set()

    def __str__(self):
        return "true" if self.value else "false"


@dataclass(frozen=True)
class Var(Formula):
    name: str

    def evaluate(self, a):
        return a[self.name]

    def variables(self):
        return {self.name}

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula

    def evaluate(self, a):
        return not self.arg.evaluate(a)

    def variables(self):
        return self.arg.variables()

    def __str__(self):
        return f"!{_paren(self.arg)}"


@dataclass(frozen=True)
class Binary(Formula):
    op: str
    left: Formula
    right: Formula

    def evaluate(self, a):
        l, r = self.left.evaluate(a), self.right.evaluate(a)
        if self.op == "&":
            return l and r
        if self.op == "|":
            return l or r
        if self.op == "->":
            return (not l) or r
        return l == r

    def variables(self):
        return self.left.variables() | self.right.variables()

    def __str__(self):
        return f"{_paren(self.left)} {self.op} {_paren(self.right)}"


def _paren(f):
    return str(f) if isinstance(f, (Var, Const, Not)) else f"({f})"


def conj(*fs: Formula) -> Formula:
    if not fs:
        return Const(True)
    out = fs[0]
    for f in fs[1:]:
        out = Binary("&", out, f)
    return out


def disj(*fs: Formula) -> Formula:
    if not fs:
        return Const(False)
    out = fs[0]
    for f in fs[1:]:
        out = Binary("|", out, f)
    return out


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_TOKEN = re.compile(r"\s*(<->|->|[!&|()]|[A-Za-z_][A-Za-z0-9_']*)")

# binding strength, loosest first
_LEVELS = ("<->", "->", "|", "&")


def parse_formula(text: str) -> Formula:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise InputError(f"cannot parse formula at {text[pos:]!r}")
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise InputError("empty formula")
    parser = _Parser(tokens)
    f = parser.level(0)
    if parser.i != len(tokens):
        raise InputError(f"unexpected token {tokens[parser.i]!r}")
    return f


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise InputError("formula ends unexpectedly")
        self.i += 1
        return tok

    def level(self, k):
        if k == len(_LEVELS):
            return self.unary()
        op = _LEVELS[k]
        left = self.level(k + 1)
        if op == "->":
            # right associative
            if self.peek() == "->":
                self.take()
                return Binary("->", left, self.level(k))
            return left
        while self.peek() == op:
            self.take()
            left = Binary(op, left, self.level(k + 1))
        return left

    def unary(self):
        tok = self.take()
        if tok == "!":
            return Not(self.unary())
        if tok == "(":
            f = self.level(0)
            if self.take() != ")":
                raise InputError("missing closing parenthesis")
            return f
        if tok == "true":
            return Const(True)
        if tok == "false":
            return Const(False)
        if _IDENT.fullmatch(tok):
            return Var(tok)
        raise InputError(f"unexpected token {tok!r}")


# theories


@dataclass(frozen=True)
class Theory:
    """A theory, identified with its model set."""

    language: Language
    models: frozenset
    formulas: tuple = field(default=(), compare=False)

    @property
    def consistent(self) -> bool:
        return bool(self.models)

    def formula(self) -> Formula:
        """Canonical disjunctive normal form of the model set."""
        terms = []
        for name in sorted(self.models):
            m = self.language.model(name)
            lits = [Var(v) if b else Not(Var(v)) for v, b in zip(self.language.variables, m.bits)]
            terms.append(conj(*lits))
        if len(self.models) == len(self.language.models):
            return Const(True)
        return disj(*terms)

    def __str__(self):
        return str(self.formula())


def _formula_models(f: Formula, language: Language) -> frozenset:
    unknown = f.variables() - set(language.variables)
    if unknown:
        raise InputError(f"unknown variables {sorted(unknown)}")
    return frozenset(m.name for m in language.models if f.evaluate(m.assignment))


def models_of(item: Union[Formula, Theory, str, Iterable], language: Language) -> frozenset:
    """M(phi) for a formula (object or text), M(T) for a theory or a list of formulas."""
    if isinstance(item, Theory):
        return item.models
    if isinstance(item, str):
        item = parse_formula(item)
    if isinstance(item, Formula):
        return _formula_models(item, language)
    out = frozenset(language.model_names)
    for f in item:
        out &= models_of(f, language)
    return out


def theory_from(formulas: Iterable, language: Language) -> Theory:
    fs = tuple(parse_formula(f) if isinstance(f, str) else f for f in formulas)
    return Theory(language, models_of(fs, language), fs)


def theory_of(X, language: Language) -> Theory:
    X = frozenset(X)
    if not X <= frozenset(language.model_names):
        raise InputError(f"{fmt(X - frozenset(language.model_names))} are not models of the language")
    return Theory(language, X)


def partition_family(universe: Universe, blocks: Iterable[Iterable[str]]) -> DomainFamily:
    """All unions of the blocks, including the empty union."""
    blocks = [frozenset(b) for b in blocks]
    if any(not b for b in blocks):
        raise InputError("partition blocks must be nonempty")
    seen = frozenset()
    for b in blocks:
        if b & seen:
            raise InputError("partition blocks overlap")
        seen |= b
    if seen != universe.as_set:
        raise InputError("partition blocks do not cover the universe")
    members = []
    for pick in product((False, True), repeat=len(blocks)):
        members.append(frozenset().union(*(b for b, on in zip(blocks, pick) if on)))
    return DomainFamily(universe, tuple(members))


def definable_family(language: Language, restriction="full", arg=None) -> DomainFamily:
    """Model sets definable in the language, or in a restricted way.

    ``restriction`` is ``"full"``, ``"sublanguage"`` (``arg`` = the allowed
    variables) or ``"blocks"`` (``arg`` = a partition of the model names).
    """
    uni = language.universe
    if restriction == "full":
        return partition_family(uni, [[n] for n in language.model_names])
    if restriction == "sublanguage":
        keep = list(arg or [])
        if set(keep) - set(language.variables):
            raise InputError("sublanguage uses unknown variables")
        idx = [language.variables.index(v) for v in keep]
        classes = {}
        for m in language.models:
            classes.setdefault(tuple(m.bits[i] for i in idx), []).append(m.name)
        return partition_family(uni, classes.values())
    if restriction == "blocks":
        return partition_family(uni, arg or [])
    raise InputError(f"unknown restriction {restriction!r}")
