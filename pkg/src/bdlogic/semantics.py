"""The four-valued matrix, structures, valuations and consequence over
finite families of structures.

A truth value is stored as two bits: bit 0 says "told true", bit 1 says
"told false".  So n = 00, t = 01, f = 10, b = 11; conjunction and
disjunction of the truth lattice become bitwise operations, negation swaps
the bits, and a value is designated exactly when bit 0 is set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Mapping, Optional

from .errors import UndeclaredSymbolError, ValidationError
from .syntax import (App, And, Atom, Const, Eq, Exists, Falsum, ForAll, Implies,
                     Not, Or, Prop, Var, free_vars)


class TruthValue(IntEnum):
    N = 0
    T = 1
    F = 2
    B = 3

    def __str__(self):
        return self.name.lower()

    @property
    def designated(self) -> bool:
        return bool(self & 1)

    @classmethod
    def parse(cls, s: str) -> "TruthValue":
        return cls[s.strip().upper()]


TV = TruthValue
DESIGNATED = frozenset({TV.T, TV.B})
UNDESIGNATED = frozenset({TV.F, TV.N})


def _not(a: int) -> int:
    return ((a & 1) << 1) | ((a & 2) >> 1)


def _and(a: int, b: int) -> int:
    return (a & b & 1) | ((a | b) & 2)


def _or(a: int, b: int) -> int:
    return ((a | b) & 1) | (a & b & 2)


def _impl(a: int, b: int) -> int:
    return b if a & 1 else 1


def tv_not(a) -> TruthValue:
    return TV(_not(a))


def tv_and(a1, a2) -> TruthValue:
    """Meet in the truth order (f least, t greatest, b and n incomparable)."""
    return TV(_and(a1, a2))


def tv_or(a1, a2) -> TruthValue:
    return TV(_or(a1, a2))


def tv_impl(a1, a2) -> TruthValue:
    return TV(_impl(a1, a2))


def tv_leq(a1, a2) -> bool:
    return _and(a1, a2) == a1


def tv_quant(kind: str, values: Iterable) -> TruthValue:
    """``forall`` gives the meet, ``exists`` the join of a non-empty set."""
    vals = list(values)
    if not vals:
        raise ValueError("quantifier truth function is undefined on the empty set")
    if kind == "forall":
        op = _and
    elif kind == "exists":
        op = _or
    else:
        raise ValueError(f"unknown quantifier {kind!r}")
    acc = vals[0]
    for v in vals[1:]:
        acc = op(acc, v)
    return TV(acc)


def designated(a) -> bool:
    return bool(a & 1)


# --------------------------------------------------------------------------
# Structures and assignments
# --------------------------------------------------------------------------

def standard_equality(domain, bottom=None) -> dict:
    """t on the diagonal, f elsewhere, and n wherever ``bottom`` is involved."""
    eq = {}
    for d1 in domain:
        for d2 in domain:
            if bottom is not None and bottom in (d1, d2):
                eq[d1, d2] = TV.N
            else:
                eq[d1, d2] = TV.T if d1 == d2 else TV.F
    return eq


@dataclass(frozen=True, eq=False)
class Structure:
    """A finite structure.

    ``bottom`` is ``None`` for a plain structure; otherwise it names the
    domain element standing for the indeterminate value.  ``predicates``
    maps each predicate to a table from argument tuples to truth values,
    ``functions`` maps each function symbol to a table or a callable.
    ``equality`` defaults to :func:`standard_equality`.
    """

    domain: tuple
    constants: Mapping = field(default_factory=dict)
    predicates: Mapping = field(default_factory=dict)
    propositions: Mapping = field(default_factory=dict)
    functions: Mapping = field(default_factory=dict)
    equality: Optional[Mapping] = None
    bottom: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "domain", tuple(self.domain))
        if self.equality is None:
            object.__setattr__(self, "equality", standard_equality(self.domain, self.bottom))
        if self.bottom is not None and "nil" not in self.constants:
            object.__setattr__(self, "constants", {**self.constants, "nil": self.bottom})

    @property
    def flavor(self) -> str:
        return "plain" if self.bottom is None else "bottom"

    def with_predicates(self, predicates) -> "Structure":
        return Structure(self.domain, self.constants, predicates, self.propositions,
                         self.functions, self.equality, self.bottom)

    def check(self) -> "Structure":
        """Raise :class:`ValidationError` unless the structure is well formed."""
        dom = set(self.domain)
        if not dom:
            raise ValidationError("domain must be non-empty")
        if self.bottom is not None:
            if self.bottom not in dom:
                raise ValidationError("bottom element must belong to the domain")
            if len(dom) < 2:
                raise ValidationError("a bottom-flavor domain needs an element besides bottom")
        for c, d in self.constants.items():
            if d not in dom:
                raise ValidationError(f"constant {c} denotes {d!r}, not a domain element")
        for d1 in self.domain:
            for d2 in self.domain:
                v = self.equality[d1, d2]
                if self.bottom is None:
                    if designated(v) != (d1 == d2):
                        raise ValidationError(f"equality({d1},{d2}) = {TV(v)} violates "
                                              "'designated iff identical'")
                else:
                    determinate = self.bottom not in (d1, d2)
                    if designated(v) != (determinate and d1 == d2):
                        raise ValidationError(f"equality({d1},{d2}) = {TV(v)} violates the "
                                              "bottom-flavor designation condition")
                    if (v == TV.N) == determinate:
                        raise ValidationError(f"equality({d1},{d2}) = {TV(v)}: n exactly "
                                              "when bottom is involved")
        for p, table in self.predicates.items():
            for key, v in table.items():
                if any(d not in dom for d in key):
                    raise ValidationError(f"{p}{key} mentions a non-domain element")
                TV(v)
        return self


@dataclass(frozen=True)
class Assignment:
    """Total map from variables to domain elements: ``values`` with
    ``default`` filling the gaps."""

    values: Mapping = field(default_factory=dict)
    default: object = None

    def __call__(self, x: str):
        return self.values.get(x, self.default)

    def updated(self, x: str, d) -> "Assignment":
        return Assignment({**self.values, x: d}, self.default)


class _Env(dict):
    __slots__ = ("default",)

    def __missing__(self, key):
        if self.default is None:
            raise KeyError(f"variable {key!r} is not assigned")
        return self.default


def _env(s: Structure, alpha) -> _Env:
    env = _Env()
    if isinstance(alpha, Assignment):
        env.update(alpha.values)
        env.default = alpha.default if alpha.default is not None else s.domain[0]
    else:
        env.update(alpha or {})
        env.default = s.domain[0]
    return env


# --------------------------------------------------------------------------
# Valuation
# --------------------------------------------------------------------------

def _term(s: Structure, env, t):
    cls = type(t)
    if cls is Var:
        return env[t.name]
    if cls is Const:
        try:
            return s.constants[t.name]
        except KeyError:
            raise UndeclaredSymbolError(f"constant {t.name!r} is not interpreted") from None
    if cls is App:
        args = tuple(_term(s, env, a) for a in t.args)
        try:
            f = s.functions[t.fn]
        except KeyError:
            raise UndeclaredSymbolError(f"function {t.fn!r} is not interpreted") from None
        return f(*args) if callable(f) else f[args]
    raise TypeError(f"not a term: {t!r}")


def _value(s: Structure, env, a) -> int:
    cls = type(a)
    if cls is Atom:
        try:
            table = s.predicates[a.pred]
        except KeyError:
            raise UndeclaredSymbolError(f"predicate {a.pred!r} is not interpreted") from None
        key = tuple(_term(s, env, t) for t in a.args)
        return table(*key) if callable(table) else table[key]
    if cls is Not:
        v = _value(s, env, a.body)
        return ((v & 1) << 1) | ((v & 2) >> 1)
    if cls is And:
        v = _value(s, env, a.left)
        w = _value(s, env, a.right)
        return (v & w & 1) | ((v | w) & 2)
    if cls is Or:
        v = _value(s, env, a.left)
        w = _value(s, env, a.right)
        return ((v | w) & 1) | (v & w & 2)
    if cls is Implies:
        if _value(s, env, a.left) & 1:
            return _value(s, env, a.right)
        return 1
    if cls is Eq:
        return s.equality[_term(s, env, a.left), _term(s, env, a.right)]
    if cls is ForAll or cls is Exists:
        x = a.var
        had, old = x in env, env.get(x)
        acc = None
        try:
            for d in s.domain:
                env[x] = d
                v = _value(s, env, a.body)
                if acc is None:
                    acc = v
                elif cls is ForAll:
                    acc = (acc & v & 1) | ((acc | v) & 2)
                else:
                    acc = ((acc | v) & 1) | (acc & v & 2)
                if acc == (2 if cls is ForAll else 1):
                    break
        finally:
            if had:
                env[x] = old
            else:
                del env[x]
        return acc
    if cls is Falsum:
        return 2
    if cls is Prop:
        try:
            return s.propositions[a.name]
        except KeyError:
            raise UndeclaredSymbolError(f"proposition {a.name!r} is not interpreted") from None
    raise TypeError(f"not a formula: {a!r}")


def eval_term(s: Structure, alpha, t):
    """Domain element denoted by ``t`` under assignment ``alpha`` (an
    :class:`Assignment` or a plain mapping)."""
    return _term(s, _env(s, alpha), t)


def eval_formula(s: Structure, alpha, a) -> TruthValue:
    return TV(_value(s, _env(s, alpha), a))


def assignments(domain, variables) -> Iterable[dict]:
    """Every map from ``variables`` (in sorted order) into ``domain``."""
    names = sorted(variables)
    for combo in itertools.product(domain, repeat=len(names)):
        yield dict(zip(names, combo))


def is_model(s: Structure, gamma: Iterable) -> bool:
    """Every formula of ``gamma`` is designated under every assignment."""
    for a in gamma:
        for alpha in assignments(s.domain, free_vars(a)):
            env = _env(s, alpha)
            if not _value(s, env, a) & 1:
                return False
    return True


def countermodel(family: Iterable[Structure], gamma, delta):
    """First ``(structure, assignment)`` designating all of ``gamma`` and
    none of ``delta``; ``None`` when there is none."""
    gamma, delta = list(gamma), list(delta)
    variables = set().union(*(free_vars(a) for a in gamma + delta))
    for s in family:
        for alpha in assignments(s.domain, variables):
            env = _env(s, alpha)
            if all(_value(s, env, a) & 1 for a in gamma) and \
                    not any(_value(s, env, a) & 1 for a in delta):
                return s, alpha
    return None


def entails_over(family: Iterable[Structure], gamma, delta) -> bool:
    """Consequence relative to a finite family of structures: under every
    structure and every assignment to the free variables of ``gamma`` and
    ``delta``, if all of ``gamma`` is designated then some member of
    ``delta`` is."""
    return countermodel(family, gamma, delta) is None


# --------------------------------------------------------------------------
# Small exhaustive families
# --------------------------------------------------------------------------

def propositional_structures(props) -> Iterable[Structure]:
    """All 4^k valuations of the proposition symbols ``props`` on a
    one-element domain."""
    props = list(props)
    for values in itertools.product(TV, repeat=len(props)):
        yield Structure(domain=(0,), propositions=dict(zip(props, values)))


def bottom_equalities(domain, bottom) -> Iterable[dict]:
    """Every equality table allowed in a bottom-flavor structure: each
    determinate element is t or b with itself, distinct determinate
    elements are f, and anything involving ``bottom`` is n."""
    determinate = [d for d in domain if d != bottom]
    base = standard_equality(domain, bottom)
    for diag in itertools.product((TV.T, TV.B), repeat=len(determinate)):
        eq = dict(base)
        for d, v in zip(determinate, diag):
            eq[d, d] = v
        yield eq


def plain_equalities(domain) -> Iterable[dict]:
    """Every equality table allowed in a plain structure."""
    diag = [(d, d) for d in domain]
    off = [(d1, d2) for d1 in domain for d2 in domain if d1 != d2]
    for dv in itertools.product((TV.T, TV.B), repeat=len(diag)):
        for ov in itertools.product((TV.F, TV.N), repeat=len(off)):
            yield dict(zip(diag, dv)) | dict(zip(off, ov))
