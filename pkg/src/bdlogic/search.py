"""Consequence over product families of structures, without enumerating them.

A product family fixes everything about a structure except its predicate
tables, and lets each ground atom range independently over a set of
allowed truth values.  The family of all relational structures for a
language is one such family (every atom over t, f, b), and so are the
models of a relational theory (listed facts over t, b, the rest f).

Instead of walking the whole product, :func:`find_countermodel` runs a
DPLL-style search: formulas are evaluated on *sets* of truth values, a
branch is closed as soon as some premise can no longer be designated or
some conclusion can no longer fail, and otherwise the search splits on an
atom that was read while still undetermined.  The set-valued evaluation
over-approximates, so closing is always sound, and it is exact once the
atoms read are fixed, so the search is complete.

The module also computes small *explanations* of constraint violations,
used by the repair search.
"""

from __future__ import annotations

import itertools
from math import prod
from typing import Iterable, Mapping, Optional

from .errors import ResourceLimitError
from .semantics import Structure, TruthValue, _term, _value, assignments
from .syntax import (And, Atom, Eq, Exists, Falsum, ForAll, Implies, Not, Or, Prop,
                     free_vars)

# A set of truth values is a 4-bit mask, bit v set when value v is in it.
ALL = 0b1111
DES = (1 << 1) | (1 << 3)
UND = (1 << 0) | (1 << 2)
TFB = (1 << 1) | (1 << 2) | (1 << 3)
TB = DES
FB = (1 << 2) | (1 << 3)
ONLY_F = 1 << 2


def mask_of(values: Iterable) -> int:
    m = 0
    for v in values:
        m |= 1 << int(v)
    return m


def values_of(mask: int) -> tuple:
    return tuple(TruthValue(v) for v in range(4) if mask >> v & 1)


def _lift1(op):
    return [mask_of(op(v) for v in range(4) if m >> v & 1) for m in range(16)]


def _lift2(op):
    table = [[0] * 16 for _ in range(16)]
    for m1 in range(16):
        for m2 in range(16):
            table[m1][m2] = mask_of(op(v, w) for v in range(4) if m1 >> v & 1
                                    for w in range(4) if m2 >> w & 1)
    return table


_NOT = _lift1(lambda v: ((v & 1) << 1) | ((v & 2) >> 1))
_AND = _lift2(lambda v, w: (v & w & 1) | ((v | w) & 2))
_OR = _lift2(lambda v, w: ((v | w) & 1) | (v & w & 2))
_IMP = _lift2(lambda v, w: w if v & 1 else 1)
_SINGLE = {1 << v: v for v in range(4)}


class ProductFamily:
    """All structures over ``base`` whose predicate tables send each key
    ``(pred, args)`` to a value in ``masks.get(key, default)``.

    ``base`` supplies domain, constants, equality and flavor; its own
    predicate tables are ignored.  ``arities`` lists the predicates.
    """

    def __init__(self, base: Structure, arities: Mapping[str, int], masks: Mapping = None,
                 default: int = TFB):
        self.base = base
        self.arities = dict(arities)
        self.masks = dict(masks or {})
        self.default = default

    def mask(self, key) -> int:
        return self.masks.get(key, self.default)

    def keys(self):
        for p in sorted(self.arities):
            for args in itertools.product(self.base.domain, repeat=self.arities[p]):
                yield p, args

    def size(self) -> int:
        return prod(bin(self.mask(k)).count("1") for k in self.keys())

    def structure(self, values: Mapping) -> Structure:
        """Member of the family taking ``values`` on the listed keys and the
        least allowed value elsewhere."""
        tables = {p: {} for p in self.arities}
        for p, args in self.keys():
            v = values.get((p, args))
            if v is None:
                m = self.mask((p, args))
                v = (m & -m).bit_length() - 1
            tables[p][args] = TruthValue(v)
        return self.base.with_predicates(tables)

    def structures(self, limit: Optional[int] = None):
        """Every member of the family, in a fixed order."""
        n = self.size()
        if limit is not None and n > limit:
            raise ResourceLimitError(
                f"family has {n} structures, above the ceiling of {limit}", n, limit)
        keys = list(self.keys())
        choices = [values_of(self.mask(k)) for k in keys]
        for combo in itertools.product(*choices):
            yield self.structure(dict(zip(keys, combo)))


class _Abstract:
    """Set-valued evaluation under a partial choice of atom values."""

    def __init__(self, family: ProductFamily, env, fixed: dict):
        self.family = family
        self.base = family.base
        self.env = env
        self.fixed = fixed
        self.pending = None

    def atom(self, key) -> int:
        v = self.fixed.get(key)
        if v is not None:
            return 1 << v
        m = self.family.mask(key)
        if m not in _SINGLE and self.pending is None:
            self.pending = key
        return m

    def value(self, a) -> int:
        cls = type(a)
        if cls is Atom:
            return self.atom((a.pred, tuple(_term(self.base, self.env, t) for t in a.args)))
        if cls is Not:
            return _NOT[self.value(a.body)]
        if cls is And:
            return _AND[self.value(a.left)][self.value(a.right)]
        if cls is Or:
            return _OR[self.value(a.left)][self.value(a.right)]
        if cls is Implies:
            left = self.value(a.left)
            if not left & DES:
                return 1 << 1
            return _IMP[left][self.value(a.right)]
        if cls is Eq:
            return 1 << self.base.equality[_term(self.base, self.env, a.left),
                                          _term(self.base, self.env, a.right)]
        if cls is ForAll or cls is Exists:
            x, env = a.var, self.env
            had, old = x in env, env.get(x)
            table = _AND if cls is ForAll else _OR
            stop = ONLY_F if cls is ForAll else 1 << 1
            acc = None
            try:
                for d in self.base.domain:
                    env[x] = d
                    v = self.value(a.body)
                    acc = v if acc is None else table[acc][v]
                    if acc == stop:
                        break
            finally:
                if had:
                    env[x] = old
                else:
                    del env[x]
            return acc
        if cls is Falsum:
            return ONLY_F
        if cls is Prop:
            return 1 << self.base.propositions[a.name]
        raise TypeError(f"not a formula: {a!r}")


def _search(family, env, gamma, delta, fixed, budget):
    budget[0] += 1
    if budget[1] is not None and budget[0] > budget[1]:
        raise ResourceLimitError(f"search exceeded {budget[1]} nodes", budget[0], budget[1])
    ev = _Abstract(family, env, fixed)
    split = None
    # conclusions first: they are usually small and close branches early
    for a, want in itertools.chain(((a, UND) for a in delta), ((a, DES) for a in gamma)):
        ev.pending = None
        m = ev.value(a)
        if not m & want:
            return None
        if m & ~want and split is None:
            split = ev.pending
    if split is None:
        return dict(fixed)
    for v in range(4):
        if family.mask(split) >> v & 1:
            fixed[split] = v
            found = _search(family, env, gamma, delta, fixed, budget)
            del fixed[split]
            if found is not None:
                return found
    return None


def find_countermodel(family: ProductFamily, gamma, delta, max_nodes: Optional[int] = None):
    """A member of ``family`` and an assignment designating every formula of
    ``gamma`` and none of ``delta``, as ``(structure, assignment)``; ``None``
    when there is none, that is, when ``gamma`` entails ``delta`` over the
    family."""
    gamma, delta = list(gamma), list(delta)
    variables = set().union(*(free_vars(a) for a in gamma + delta))
    budget = [0, max_nodes]
    for alpha in assignments(family.base.domain, variables):
        env = dict(alpha)
        found = _search(family, env, gamma, delta, {}, budget)
        if found is not None:
            return family.structure(found), alpha
    return None


def entails_family(family: ProductFamily, gamma, delta, max_nodes: Optional[int] = None) -> bool:
    return find_countermodel(family, gamma, delta, max_nodes) is None


# --------------------------------------------------------------------------
# Violations and their explanations
# --------------------------------------------------------------------------

def _strip_forall(a):
    bound = []
    while isinstance(a, ForAll) and a.var not in bound:
        bound.append(a.var)
        a = a.body
    return a, bound


def find_violation(s: Structure, constraints):
    """First ``(formula, assignment)`` under which a constraint is not
    designated in ``s``, or ``None``.  Free variables range over the domain,
    so constraints are read universally closed.  Leading universal
    quantifiers are opened up (a universal is designated exactly when every
    instance is), so ``formula`` is the matrix of the constraint."""
    for c in constraints:
        body, bound = _strip_forall(c)
        for alpha in assignments(s.domain, free_vars(c) | set(bound)):
            if not _value(s, dict(alpha), body) & 1:
                return body, alpha
    return None


class _Explainer:
    """Sets of atoms whose values alone pin one bit of a formula's value.

    Bit 0 of a truth value is "told true", bit 1 "told false".  If the
    structure is changed only on atoms outside ``explain(a, bit)``, that
    bit of ``a`` keeps its current value.
    """

    def __init__(self, s: Structure, env):
        self.s = s
        self.env = env

    def bit(self, a, bit) -> int:
        return _value(self.s, self.env, a) >> bit & 1

    def explain(self, a, bit) -> frozenset:
        cls = type(a)
        if cls is Atom:
            return frozenset({(a.pred, tuple(_term(self.s, self.env, t) for t in a.args))})
        if cls is Not:
            return self.explain(a.body, 1 - bit)
        if cls is And or cls is Or:
            # told-true is a meet for "and", a join for "or"; told-false dually
            meet = (cls is And) == (bit == 0)
            have = self.bit(a, bit)
            if have == (0 if meet else 1):
                witness = [c for c in (a.left, a.right) if self.bit(c, bit) == have]
                return min((self.explain(c, bit) for c in witness), key=len)
            return self.explain(a.left, bit) | self.explain(a.right, bit)
        if cls is Implies:
            if not self.bit(a.left, 0):
                return self.explain(a.left, 0)
            return self.explain(a.left, 0) | self.explain(a.right, bit)
        if cls is ForAll or cls is Exists:
            meet = (cls is ForAll) == (bit == 0)
            have = self.bit(a, bit)
            x, env = a.var, self.env
            had, old = x in env, env.get(x)
            try:
                parts = []
                for d in self.s.domain:
                    env[x] = d
                    if have == (0 if meet else 1):
                        if self.bit(a.body, bit) == have:
                            parts.append(self.explain(a.body, bit))
                    else:
                        parts.append(self.explain(a.body, bit))
            finally:
                if had:
                    env[x] = old
                else:
                    del env[x]
            if have == (0 if meet else 1):
                return min(parts, key=len)
            return frozenset().union(*parts)
        return frozenset()


def explain_violation(s: Structure, constraint, alpha) -> frozenset:
    """Atoms such that every structure agreeing with ``s`` on them still
    fails to designate ``constraint`` under ``alpha``."""
    return _Explainer(s, dict(alpha)).explain(constraint, 0)
