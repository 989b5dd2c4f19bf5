"""Terms, formulas and signatures of first-order Belnap-Dunn logic with
classical implication and falsity.

Everything here is an immutable value.  Formulas are built from the core
connectives only; the derived connectives (``des``, ``cons``, strong
equality, ...) are provided as constructors that return the expanded core
formula, plus :class:`Abbreviation` records for code that wants to keep
the surface form around until :func:`expand` is called.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce
from typing import Iterable, Mapping

from .errors import ArityError, SignatureError, UndeclaredSymbolError

NIL = "nil"

KEYWORDS = frozenset({"forall", "exists", "false", "true", "des", "cons", "det", "def"})

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


# --------------------------------------------------------------------------
# Terms
# --------------------------------------------------------------------------

class Term:
    __slots__ = ()

    def __str__(self):
        return term_text(self)


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str


@dataclass(frozen=True, slots=True)
class Const(Term):
    name: str


@dataclass(frozen=True, slots=True)
class App(Term):
    fn: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


# --------------------------------------------------------------------------
# Formulas
# --------------------------------------------------------------------------

class Formula:
    __slots__ = ()

    def __str__(self):
        return formula_text(self)

    # Operator sugar for building formulas in Python code.
    def __invert__(self):
        return Not(self)

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __rshift__(self, other):
        return Implies(self, other)


@dataclass(frozen=True, slots=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    pred: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True, slots=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Falsum(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True, slots=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class ForAll(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, slots=True)
class Exists(Formula):
    var: str
    body: Formula


FALSUM = Falsum()

Quantified = (ForAll, Exists)
Binary = (And, Or, Implies)


def is_atomic(a: Formula) -> bool:
    return isinstance(a, (Prop, Atom, Eq))


def is_literal(a: Formula) -> bool:
    """Atomic formulas and negations of atomic formulas."""
    return is_atomic(a) or (isinstance(a, Not) and is_atomic(a.body))


def is_closed(e) -> bool:
    return not free_vars(e)


# --------------------------------------------------------------------------
# Signatures
# --------------------------------------------------------------------------

def _arity_map(spec) -> dict:
    if spec is None:
        return {}
    items = spec.items() if isinstance(spec, Mapping) else spec
    return {str(k): int(v) for k, v in items}


@dataclass(frozen=True)
class Signature:
    """Declared non-logical symbols.

    ``functions`` and ``predicates`` map names to positive arities; constants
    and proposition symbols are the arity-0 cases.  The reserved constant
    ``nil`` is always present and is listed last.
    """

    constants: tuple = ()
    predicates: Mapping = field(default_factory=dict)
    functions: Mapping = field(default_factory=dict)
    propositions: tuple = ()

    def __post_init__(self):
        consts = [c for c in dict.fromkeys(self.constants) if c != NIL]
        consts.append(NIL)
        object.__setattr__(self, "constants", tuple(consts))
        object.__setattr__(self, "predicates", _arity_map(self.predicates))
        object.__setattr__(self, "functions", _arity_map(self.functions))
        object.__setattr__(self, "propositions", tuple(dict.fromkeys(self.propositions)))
        self._validate()

    def _validate(self):
        groups = {
            "constant": [c for c in self.constants if c != NIL],
            "function": list(self.functions),
            "predicate": list(self.predicates),
            "proposition": list(self.propositions),
        }
        seen = {NIL: "constant"}
        for kind, names in groups.items():
            for name in names:
                if not IDENT_RE.match(name):
                    raise SignatureError(f"invalid {kind} name {name!r}")
                if name in KEYWORDS or name == NIL:
                    raise SignatureError(f"{kind} name {name!r} is reserved")
                if name in seen:
                    raise SignatureError(
                        f"name {name!r} declared as both {seen[name]} and {kind}")
                seen[name] = kind
        for kind, table in (("function", self.functions), ("predicate", self.predicates)):
            for name, n in table.items():
                if n < 1:
                    raise SignatureError(f"{kind} {name!r} must have positive arity, got {n}")

    def __hash__(self):
        return hash((self.constants, tuple(self.predicates.items()),
                     tuple(self.functions.items()), self.propositions))

    def is_constant(self, name: str) -> bool:
        return name in self.constants

    def symbol_names(self) -> set:
        return (set(self.constants) | set(self.functions) | set(self.predicates)
                | set(self.propositions))


def check_term(t: Term, sig: Signature) -> None:
    """Raise unless every symbol of ``t`` is declared with the right arity."""
    if isinstance(t, Var):
        if t.name in sig.symbol_names():
            raise SignatureError(f"variable name {t.name!r} clashes with a declared symbol")
    elif isinstance(t, Const):
        if t.name not in sig.constants:
            raise UndeclaredSymbolError(f"undeclared constant {t.name!r}")
    elif isinstance(t, App):
        if t.fn not in sig.functions:
            raise UndeclaredSymbolError(f"undeclared function symbol {t.fn!r}")
        if len(t.args) != sig.functions[t.fn]:
            raise ArityError(f"{t.fn} expects {sig.functions[t.fn]} arguments, got {len(t.args)}")
        for s in t.args:
            check_term(s, sig)
    else:
        raise TypeError(f"not a term: {t!r}")


def check_formula(a: Formula, sig: Signature) -> None:
    """Raise unless ``a`` is a formula over ``sig``."""
    if isinstance(a, Prop):
        if a.name not in sig.propositions:
            raise UndeclaredSymbolError(f"undeclared proposition symbol {a.name!r}")
    elif isinstance(a, Atom):
        if a.pred not in sig.predicates:
            raise UndeclaredSymbolError(f"undeclared predicate symbol {a.pred!r}")
        if len(a.args) != sig.predicates[a.pred]:
            raise ArityError(f"{a.pred} expects {sig.predicates[a.pred]} arguments, got {len(a.args)}")
        for t in a.args:
            check_term(t, sig)
    elif isinstance(a, Eq):
        check_term(a.left, sig)
        check_term(a.right, sig)
    elif isinstance(a, Falsum):
        pass
    elif isinstance(a, Not):
        check_formula(a.body, sig)
    elif isinstance(a, Binary):
        check_formula(a.left, sig)
        check_formula(a.right, sig)
    elif isinstance(a, Quantified):
        if a.var in sig.symbol_names():
            raise SignatureError(f"bound variable {a.var!r} clashes with a declared symbol")
        check_formula(a.body, sig)
    else:
        raise TypeError(f"not a formula: {a!r}")


# --------------------------------------------------------------------------
# Free variables, substitution, alpha-equivalence
# --------------------------------------------------------------------------

def free_vars(e) -> frozenset:
    """Free variables of a term or formula."""
    if isinstance(e, Var):
        return frozenset((e.name,))
    if isinstance(e, (Const, Prop, Falsum)):
        return frozenset()
    if isinstance(e, (App, Atom)):
        return frozenset().union(*(free_vars(t) for t in e.args))
    if isinstance(e, Eq):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, Not):
        return free_vars(e.body)
    if isinstance(e, Binary):
        return free_vars(e.left) | free_vars(e.right)
    if isinstance(e, Quantified):
        return free_vars(e.body) - {e.var}
    raise TypeError(f"not a term or formula: {e!r}")


def all_vars(e) -> frozenset:
    """Every variable name occurring in ``e``, bound or free."""
    if isinstance(e, Quantified):
        return all_vars(e.body) | {e.var}
    if isinstance(e, Not):
        return all_vars(e.body)
    if isinstance(e, Binary):
        return all_vars(e.left) | all_vars(e.right)
    return free_vars(e)


def fresh_name(base: str, avoid) -> str:
    """``base`` followed by the smallest positive integer not in ``avoid``."""
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


def substitute(x: str, t: Term, e):
    """Replace the free occurrences of variable ``x`` in ``e`` by ``t``,
    renaming bound variables that would capture a variable of ``t``."""
    if isinstance(e, Var):
        return t if e.name == x else e
    if isinstance(e, (Const, Prop, Falsum)):
        return e
    if isinstance(e, App):
        return App(e.fn, tuple(substitute(x, t, s) for s in e.args))
    if isinstance(e, Atom):
        return Atom(e.pred, tuple(substitute(x, t, s) for s in e.args))
    if isinstance(e, Eq):
        return Eq(substitute(x, t, e.left), substitute(x, t, e.right))
    if isinstance(e, Not):
        return Not(substitute(x, t, e.body))
    if isinstance(e, Binary):
        return type(e)(substitute(x, t, e.left), substitute(x, t, e.right))
    if isinstance(e, Quantified):
        y, body = e.var, e.body
        if y == x or x not in free_vars(body):
            return e
        tvars = free_vars(t)
        if y in tvars:
            y2 = fresh_name(y, tvars | free_vars(body) | {x})
            body = substitute(y, Var(y2), body)
            y = y2
        return type(e)(y, substitute(x, t, body))
    raise TypeError(f"not a term or formula: {e!r}")


def substitute_all(mapping: Mapping, e):
    """Sequential substitution ``[x1:=t1]...[xn:=tn]e`` for closed terms."""
    for x, t in mapping.items():
        e = substitute(x, t, e)
    return e


def alpha_normal(e, _depth=0, _env=None):
    """Rename bound variables canonically so that alpha-equivalent
    formulas become structurally equal.  Bound names start with ``#``,
    which the parser never produces, so they cannot clash with free ones."""
    env = _env or {}
    if isinstance(e, Var):
        return Var(env[e.name]) if e.name in env else e
    if isinstance(e, (Const, Prop, Falsum)):
        return e
    if isinstance(e, App):
        return App(e.fn, tuple(alpha_normal(s, _depth, env) for s in e.args))
    if isinstance(e, Atom):
        return Atom(e.pred, tuple(alpha_normal(s, _depth, env) for s in e.args))
    if isinstance(e, Eq):
        return Eq(alpha_normal(e.left, _depth, env), alpha_normal(e.right, _depth, env))
    if isinstance(e, Not):
        return Not(alpha_normal(e.body, _depth, env))
    if isinstance(e, Binary):
        return type(e)(alpha_normal(e.left, _depth, env), alpha_normal(e.right, _depth, env))
    if isinstance(e, Quantified):
        name = f"#{_depth}"
        return type(e)(name, alpha_normal(e.body, _depth + 1, {**env, e.var: name}))
    raise TypeError(f"not a term or formula: {e!r}")


def alpha_equal(a, b) -> bool:
    return alpha_normal(a) == alpha_normal(b)


# --------------------------------------------------------------------------
# Builders and derived connectives
# --------------------------------------------------------------------------

def conj(formulas: Iterable[Formula], empty: Formula | None = None) -> Formula:
    """Left-nested conjunction; ``empty`` (default: truth) for no conjuncts."""
    fs = list(formulas)
    if not fs:
        return truth() if empty is None else empty
    return reduce(And, fs)


def disj(formulas: Iterable[Formula], empty: Formula | None = None) -> Formula:
    """Left-nested disjunction; ``empty`` (default: falsum) for no disjuncts."""
    fs = list(formulas)
    if not fs:
        return FALSUM if empty is None else empty
    return reduce(Or, fs)


def forall(variables, body: Formula) -> Formula:
    for x in reversed(list(variables)):
        body = ForAll(x, body)
    return body


def exists(variables, body: Formula) -> Formula:
    for x in reversed(list(variables)):
        body = Exists(x, body)
    return body


def ne(t1: Term, t2: Term) -> Formula:
    return Not(Eq(t1, t2))


def truth() -> Formula:
    return Not(FALSUM)


def strong_implies(a1: Formula, a2: Formula) -> Formula:
    return And(Implies(a1, a2), Implies(Not(a2), Not(a1)))


def des(a: Formula) -> Formula:
    """Designatedness: true when ``a`` is t or b, false otherwise."""
    return Not(Implies(a, FALSUM))


def cons(a: Formula) -> Formula:
    return Not(des(And(a, Not(a))))


def det(a: Formula) -> Formula:
    return des(Or(a, Not(a)))


def defined(t: Term) -> Formula:
    """Term determinacy: ``t`` does not denote the indeterminate value."""
    return des(Eq(t, t))


def strong_eq(t1: Term, t2: Term) -> Formula:
    return Or(Eq(t1, t2), Not(Or(defined(t1), defined(t2))))


class Abbreviation:
    """Surface form of a derived connective; see :func:`expand`."""

    __slots__ = ()

    def expand(self) -> Formula:
        raise NotImplementedError


def _core(x):
    return x.expand() if isinstance(x, Abbreviation) else x


@dataclass(frozen=True)
class NotEqual(Abbreviation):
    left: Term
    right: Term

    def expand(self):
        return ne(self.left, self.right)


@dataclass(frozen=True)
class Truth(Abbreviation):
    def expand(self):
        return truth()


@dataclass(frozen=True)
class StrongImplies(Abbreviation):
    left: object
    right: object

    def expand(self):
        return strong_implies(_core(self.left), _core(self.right))


@dataclass(frozen=True)
class Des(Abbreviation):
    body: object

    def expand(self):
        return des(_core(self.body))


@dataclass(frozen=True)
class Cons(Abbreviation):
    body: object

    def expand(self):
        return cons(_core(self.body))


@dataclass(frozen=True)
class Det(Abbreviation):
    body: object

    def expand(self):
        return det(_core(self.body))


@dataclass(frozen=True)
class Defined(Abbreviation):
    term: Term

    def expand(self):
        return defined(self.term)


@dataclass(frozen=True)
class StrongEqual(Abbreviation):
    left: Term
    right: Term

    def expand(self):
        return strong_eq(self.left, self.right)


def expand(a) -> Formula:
    """Expand an abbreviation (recursively) into a core formula.  Core
    formulas are returned unchanged."""
    if isinstance(a, Abbreviation):
        return a.expand()
    if isinstance(a, Formula):
        return a
    raise TypeError(f"not a formula or abbreviation: {a!r}")


# --------------------------------------------------------------------------
# Printing
# --------------------------------------------------------------------------

def term_text(t: Term) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    if isinstance(t, App):
        return f"{t.fn}({', '.join(term_text(s) for s in t.args)})"
    raise TypeError(f"not a term: {t!r}")


# binding strength: larger binds tighter
_PREC = {Implies: 1, Or: 2, And: 3}
_OPS = {Implies: "->", Or: "|", And: "&"}


def _prec(a: Formula) -> int:
    if isinstance(a, Quantified):
        return 0
    if isinstance(a, Binary):
        return _PREC[type(a)]
    return 4


def formula_text(a: Formula) -> str:
    """ASCII rendering accepted back by the parser."""
    if isinstance(a, Prop):
        return a.name
    if isinstance(a, Atom):
        return f"{a.pred}({', '.join(term_text(s) for s in a.args)})"
    if isinstance(a, Eq):
        return f"{term_text(a.left)} = {term_text(a.right)}"
    if isinstance(a, Falsum):
        return "false"
    if isinstance(a, Not):
        if isinstance(a.body, Eq):
            return f"{term_text(a.body.left)} != {term_text(a.body.right)}"
        inner = formula_text(a.body)
        return f"~{inner}" if _prec(a.body) == 4 else f"~({inner})"
    if isinstance(a, Binary):
        p = _PREC[type(a)]
        left, right = formula_text(a.left), formula_text(a.right)
        # -> is right-associative, & and | are left-associative
        left_ok = _prec(a.left) > p or (_prec(a.left) == p and not isinstance(a, Implies))
        right_ok = _prec(a.right) > p or (_prec(a.right) == p and isinstance(a, Implies))
        if not left_ok:
            left = f"({left})"
        if not right_ok:
            right = f"({right})"
        return f"{left} {_OPS[type(a)]} {right}"
    if isinstance(a, Quantified):
        kind = type(a)
        names = [a.var]
        body = a.body
        while type(body) is kind:
            names.append(body.var)
            body = body.body
        word = "forall" if kind is ForAll else "exists"
        return f"{word} {', '.join(names)}. {formula_text(body)}"
    raise TypeError(f"not a formula: {a!r}")
