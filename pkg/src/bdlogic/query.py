"""Queries and their answers: plain, consistent and strongly consistent.

Repairs
-------
``L2`` is at least as close to ``L`` as ``L3`` when the symmetric difference
of ``L`` and ``L2`` is contained in that of ``L`` and ``L3``.  The repairs of a
basis are the bases consistent with the constraints that are closest in this
sense.  They are found by a breadth-first search over sets of flipped atoms:
an inconsistent candidate yields a violated constraint instance together
with a set of atoms that explains the violation, and every repair extending
the current flip set must flip one of those atoms as well.  Supersets of
repairs already found are skipped, so the search level at which a repair
appears equals the size of its difference set.

Consistent answers
------------------
Each repair ``L2`` determines the semi-atomic facts on which ``L`` and ``L2``
agree: the facts kept, and the negations of the atoms absent from both.
A tuple is a consistent answer when, for some repair, those facts together
with the structure axioms entail the query instance.
"""

from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .database import (Database, FactBase, RelationalLanguage, _as_basis, consistency_report,
                       derivable_semi_atomic, entails_rsa, literal_report, rsa,
                       satisfies_constraints, theory_entails)
from .errors import BDError, ResourceLimitError, ValidationError
from .database import canonical_structure
from .search import explain_violation, find_violation
from .syntax import Const, Formula, Not, check_formula, cons, free_vars, substitute_all

DEFAULT_MAX_UNIVERSE = 20
DEFAULT_MAX_NODES = 100_000


class NoRepairsWarning(UserWarning):
    """No basis is consistent with the constraints, so every tuple is a
    strongly consistent answer vacuously."""


@dataclass(frozen=True)
class Query:
    head: tuple
    body: Formula
    name: str = "q"

    def __post_init__(self):
        object.__setattr__(self, "head", tuple(self.head))

    def __str__(self):
        return f"{self.name}({', '.join(self.head)}) :- {self.body}"

    def instance(self, values) -> Formula:
        return substitute_all({x: Const(c) for x, c in zip(self.head, values)}, self.body)


def check_query(q: Query, lang: RelationalLanguage) -> None:
    if len(set(q.head)) != len(q.head):
        raise ValidationError(f"head variables of {q.name} are not distinct")
    for x in q.head:
        if x in lang.sig.symbol_names():
            raise ValidationError(f"head variable {x!r} clashes with a declared symbol")
    check_formula(q.body, lang.sig)
    extra = free_vars(q.body) - set(q.head)
    if extra:
        raise ValidationError(f"free variables {sorted(extra)} of {q.name} are not in its head")


def is_applicable(q: Query, db: Database) -> bool:
    try:
        check_query(q, db.lang)
    except BDError:
        return False
    return True


def candidate_tuples(lang: RelationalLanguage, n: int, nulls: bool = True):
    consts = lang.constants if nulls else lang.constants[:-1]
    return itertools.product(consts, repeat=n)


def sort_tuples(lang: RelationalLanguage, tuples) -> list:
    return sorted(tuples, key=lambda t: tuple(lang.rank(c) for c in t))


def _require(q, db):
    check_query(q, db.lang)


def answers(db: Database, q: Query, nulls: bool = True) -> set:
    """Tuples whose instance of the query follows from the relational theory."""
    _require(q, db)
    return {t for t in candidate_tuples(db.lang, len(q.head), nulls)
            if theory_entails(db.lang, db.basis, q.instance(t))}


# --------------------------------------------------------------------------
# Consistency with constraints and repairs
# --------------------------------------------------------------------------

def leq_lambda(base, b1, b2) -> bool:
    """``b1`` differs from ``base`` at most where ``b2`` does."""
    base, b1, b2 = _as_basis(base), _as_basis(b1), _as_basis(b2)
    return (base ^ b1) <= (base ^ b2)


def consistent_with(lang: RelationalLanguage, basis, constraints) -> bool:
    """Whether the model of the theory making every fact of ``basis`` plainly
    true satisfies ``constraints``."""
    return satisfies_constraints(lang, basis, constraints)


def consistent_with_literal(lang: RelationalLanguage, basis, constraints) -> bool:
    """Whether ``theory, constraints |= cons A`` for every semi-atomic ``A``
    the theory entails.  Vacuously true when no model of the theory
    satisfies the constraints."""
    return literal_report(lang, basis, constraints).consistent


def _minimal(found):
    return [d for d in found if not any(e < d for e in found)]


def _repair_bases(base, diffs):
    return [FactBase(base ^ d) for d in diffs]


def _sorted_repairs(lang, repairs) -> list:
    return sorted(repairs, key=lambda r: [lang.fact_order(a) for a in lang.sorted_facts(r)])


def repairs(db: Database, exhaustive: bool = False, max_universe: int = DEFAULT_MAX_UNIVERSE,
            max_nodes: int = DEFAULT_MAX_NODES) -> list:
    """The repairs of the database's basis, in a fixed order.

    By default a conflict-directed search is used; its cost is bounded by
    ``max_nodes`` candidate bases.  ``exhaustive=True`` instead tries every
    subset of the atom universe, which must have at most ``max_universe``
    atoms.
    """
    lang, base = db.lang, _as_basis(db.basis)
    if consistent_with(lang, base, db.constraints):
        return [FactBase(base)]
    if exhaustive:
        diffs = _exhaustive_diffs(lang, base, lambda b: consistent_with(lang, b, db.constraints),
                                  max_universe)
    else:
        diffs = _conflict_directed_diffs(lang, base, db.constraints, max_nodes)
    return _sorted_repairs(lang, _repair_bases(base, diffs))


def _exhaustive_diffs(lang, base, consistent, max_universe):
    universe = lang.atoms()
    if max_universe is not None and len(universe) > max_universe:
        raise ResourceLimitError(
            f"{len(universe)} candidate atoms exceed the ceiling of {max_universe}",
            len(universe), max_universe)
    found = []
    for k in range(len(universe) + 1):
        for combo in itertools.combinations(universe, k):
            d = frozenset(combo)
            if any(e <= d for e in found):
                continue
            if consistent(base ^ d):
                found.append(d)
    return found


def _conflict_directed_diffs(lang, base, constraints, max_nodes):
    found, seen = [], {frozenset()}
    queue = deque([frozenset()])
    nodes = 0
    while queue:
        d = queue.popleft()
        if any(e <= d for e in found):
            continue
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            raise ResourceLimitError(f"repair search exceeded {max_nodes} nodes",
                                     nodes, max_nodes)
        s = canonical_structure(lang, base ^ d)
        violation = find_violation(s, constraints)
        if violation is None:
            found.append(d)
            continue
        for k in sorted(explain_violation(s, *violation)):
            a = lang.fact(k)
            if a in d:
                continue
            child = d | {a}
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return _minimal(found)


def repairs_literal(db: Database, max_universe: int = DEFAULT_MAX_UNIVERSE) -> list:
    """Repairs under :func:`consistent_with_literal`, by exhaustive search."""
    lang, base = db.lang, _as_basis(db.basis)
    if consistent_with_literal(lang, base, db.constraints):
        return [FactBase(base)]
    diffs = _exhaustive_diffs(
        lang, base, lambda b: consistent_with_literal(lang, b, db.constraints), max_universe)
    return _sorted_repairs(lang, _repair_bases(base, diffs))


def is_minimal_repair(db: Database, candidate, consistent=None) -> bool:
    """Check by scanning every proper subset of the difference set."""
    consistent = consistent or (lambda b: consistent_with(db.lang, b, db.constraints))
    base = _as_basis(db.basis)
    d = sorted(base ^ _as_basis(candidate), key=db.lang.fact_order)
    if not consistent(base ^ frozenset(d)):
        return False
    for k in range(len(d)):
        for sub in itertools.combinations(d, k):
            if consistent(base ^ frozenset(sub)):
                return False
    return True


# --------------------------------------------------------------------------
# Consistent answers
# --------------------------------------------------------------------------

def agreement_facts(lang: RelationalLanguage, base, other) -> frozenset:
    """Semi-atomic facts entailed by both theories: the facts in both bases
    and the negations of atoms in neither."""
    base, other = _as_basis(base), _as_basis(other)
    return frozenset(base & other) | frozenset(
        Not(a) for a in lang.atoms() if a not in base and a not in other)


@lru_cache(maxsize=32)
def _repairs_cached(db):
    return tuple(repairs(db))


def consistent_core(db: Database) -> frozenset:
    """Entailed semi-atomic facts on which every repair agrees with the basis."""
    out = None
    for r in _repairs_cached(db):
        phi = agreement_facts(db.lang, db.basis, r)
        out = phi if out is None else out & phi
    return out if out is not None else frozenset()


def support_sets(db: Database) -> list:
    """One maximal qualifying fact set per repair."""
    return [agreement_facts(db.lang, db.basis, r) for r in _repairs_cached(db)]


def entails_from_facts(lang: RelationalLanguage, phi, a: Formula) -> bool:
    return entails_rsa(lang, list(rsa(lang)) + list(phi), a)


def consistent_answers(db: Database, q: Query, nulls: bool = True) -> set:
    _require(q, db)
    sets = support_sets(db)
    return {t for t in candidate_tuples(db.lang, len(q.head), nulls)
            if any(entails_from_facts(db.lang, phi, q.instance(t)) for phi in sets)}


def consistent_core_literal(db: Database) -> frozenset:
    """Entailed semi-atomic facts ``A`` with ``theory, constraints |= cons A``."""
    return frozenset(a for a in derivable_semi_atomic(db.lang, db.basis)
                     if theory_entails(db.lang, db.basis, cons(a), assuming=db.constraints))


def consistent_answers_literal(db: Database, q: Query, nulls: bool = True) -> set:
    _require(q, db)
    phi = consistent_core_literal(db)
    return {t for t in candidate_tuples(db.lang, len(q.head), nulls)
            if entails_from_facts(db.lang, phi, q.instance(t))}


# --------------------------------------------------------------------------
# Strongly consistent answers
# --------------------------------------------------------------------------

def strongly_consistent_answers(db: Database, q: Query, nulls: bool = True,
                                repair_list: Optional[list] = None) -> set:
    """Tuples answered by the relational theory of every repair.  With no
    repairs at all every tuple qualifies; a :class:`NoRepairsWarning` is
    issued."""
    _require(q, db)
    rs = list(_repairs_cached(db) if repair_list is None else repair_list)
    tuples = list(candidate_tuples(db.lang, len(q.head), nulls))
    if not rs:
        warnings.warn(NoRepairsWarning("no basis is consistent with the constraints; "
                                       "every tuple qualifies vacuously"), stacklevel=2)
        return set(tuples)
    return {t for t in tuples
            if all(theory_entails(db.lang, r, q.instance(t)) for r in rs)}


def strongly_consistent_answers_literal(db: Database, q: Query, nulls: bool = True) -> set:
    return strongly_consistent_answers(db, q, nulls, repair_list=repairs_literal(db))


def explain_inconsistency(db: Database):
    return consistency_report(db.lang, db.basis, db.constraints)
