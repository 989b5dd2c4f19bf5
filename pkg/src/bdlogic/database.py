"""Relational languages, relational theories and databases.

A relational language has finitely many constants (always including
``nil``), finitely many predicates of positive arity and nothing else.
Its relational structures all share one domain: an element ``0`` standing
for the indeterminate value, denoted by ``nil``, and one element per other
constant, numbered in declaration order.  Equality is fixed on that
domain, so a relational structure is determined by its predicate tables,
each entry taking one of t, f, b.

Consequence from a set that contains the structure axioms is therefore
decidable by looking at this finite family.  Here it is decided by the
search in :mod:`bdlogic.search`, which narrows the family first: a ground
atom in the premises pins that atom to {t, b}, a negated one to {f, b},
and a complete relational theory pins every atom to what its completion
axioms allow.  :func:`enumerate_rsa_models` lists the family outright and
serves as the reference implementation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Optional

from .errors import ResourceLimitError, SignatureError, ValidationError
from .search import (FB, ONLY_F, TB, TFB, ProductFamily, explain_violation,
                     find_countermodel, find_violation)
from .semantics import Structure, TruthValue, standard_equality
from .syntax import (NIL, FALSUM, Atom, Const, Eq, ForAll, Formula, Not, Signature, Var, alpha_normal,
                     check_formula, cons, conj, defined, det, disj, forall, free_vars,
                     strong_eq, strong_implies)

DEFAULT_MAX_STRUCTURES = 10 ** 7


@dataclass(frozen=True)
class RelationalLanguage:
    sig: Signature

    def __post_init__(self):
        sig = self.sig
        if sig.functions:
            raise ValidationError("a relational language has no function symbols "
                                  f"(got {sorted(sig.functions)})")
        if sig.propositions:
            raise ValidationError("a relational language has no proposition symbols "
                                  f"(got {sorted(sig.propositions)})")
        if len(sig.constants) < 2:
            raise ValidationError("a relational language needs a constant besides nil")

    @classmethod
    def build(cls, constants, predicates) -> "RelationalLanguage":
        return cls(Signature(constants=tuple(constants), predicates=dict(predicates)))

    @property
    def constants(self) -> tuple:
        """All constants, ``nil`` last."""
        return self.sig.constants

    @property
    def predicates(self) -> dict:
        return self.sig.predicates

    @cached_property
    def names(self) -> tuple:
        """Constant naming each domain element, by element."""
        return (NIL,) + self.constants[:-1]

    @cached_property
    def element(self) -> dict:
        return {c: d for d, c in enumerate(self.names)}

    def rank(self, c: str) -> int:
        """Position of ``c`` in declaration order, ``nil`` last."""
        return self.constants.index(c)

    @cached_property
    def base(self) -> Structure:
        """The relational structure with every predicate empty."""
        domain = tuple(range(len(self.names)))
        return Structure(domain=domain, constants=dict(self.element),
                         equality=standard_equality(domain, 0), bottom=0,
                         predicates={p: {} for p in self.predicates})

    def key(self, fact: Atom) -> tuple:
        return fact.pred, tuple(self.element[t.name] for t in fact.args)

    def fact(self, key) -> Atom:
        p, args = key
        return Atom(p, tuple(Const(self.names[d]) for d in args))

    def fact_order(self, fact) -> tuple:
        a = fact.body if isinstance(fact, Not) else fact
        return (a.pred, tuple(self.rank(t.name) for t in a.args), isinstance(fact, Not))

    def sorted_facts(self, facts) -> list:
        return sorted(facts, key=self.fact_order)

    def atoms(self) -> list:
        """Every atomic fact for the language."""
        out = []
        for p in sorted(self.predicates):
            for args in itertools.product(self.constants, repeat=self.predicates[p]):
                out.append(Atom(p, tuple(Const(c) for c in args)))
        return out

    def semi_atomic_facts(self) -> list:
        atoms = self.atoms()
        return atoms + [Not(a) for a in atoms]

    def check_fact(self, a) -> Atom:
        if not isinstance(a, Atom) or not all(isinstance(t, Const) for t in a.args):
            raise ValidationError(f"{a} is not an atomic fact")
        check_formula(a, self.sig)
        return a

    def check_formula(self, a: Formula) -> Formula:
        check_formula(a, self.sig)
        return a


@dataclass(frozen=True)
class FactBase:
    """A finite set of atomic facts."""

    facts: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "facts", frozenset(self.facts))

    @classmethod
    def of(cls, lang: RelationalLanguage, facts: Iterable) -> "FactBase":
        return cls(frozenset(lang.check_fact(a) for a in facts))

    def __iter__(self):
        return iter(self.facts)

    def __len__(self):
        return len(self.facts)

    def __contains__(self, a):
        return a in self.facts

    def difference_set(self, other) -> frozenset:
        return self.facts ^ frozenset(other)


@dataclass(frozen=True)
class Database:
    lang: RelationalLanguage
    basis: FactBase
    constraints: tuple = ()

    def __post_init__(self):
        basis = self.basis if isinstance(self.basis, FactBase) else FactBase(self.basis)
        for a in basis:
            self.lang.check_fact(a)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "constraints", tuple(self.constraints))
        for c in self.constraints:
            self.lang.check_formula(c)

    @property
    def theory(self) -> tuple:
        return relational_theory(self.lang, self.basis)


def _as_basis(basis) -> frozenset:
    return frozenset(basis.facts if isinstance(basis, FactBase) else basis)


# --------------------------------------------------------------------------
# Axioms
# --------------------------------------------------------------------------

def nil_indeterminacy() -> Formula:
    return Not(defined(Const(NIL)))


def equality_semi_normality() -> Formula:
    x, x1 = Var("x"), Var("x'")
    body = conj([cons(Eq(x, x1)),
                 strong_implies(conj([defined(x), defined(x1)]), det(Eq(x, x1)))])
    return forall(["x", "x'"], body)


def domain_closure(lang: RelationalLanguage) -> Formula:
    x = Var("x")
    return forall(["x"], disj([strong_eq(x, Const(c)) for c in lang.constants]))


def unique_names(lang: RelationalLanguage) -> list:
    """``~(c == d)`` for each pair of distinct constants other than ``nil``.

    Pairs with ``nil`` are left out.  An equation with the null is neither
    true nor false, so ``~(c == nil)`` is never designated; kept, it would
    leave the axioms without a single model.  That ``nil`` differs from
    every other constant already follows from the nil-indeterminacy axiom.
    """
    cs = lang.constants[:-1]
    return [Not(strong_eq(Const(cs[i]), Const(cs[j])))
            for i in range(len(cs)) for j in range(i + 1, len(cs))]


def _vars(n: int) -> list:
    return [f"x{i}" for i in range(1, n + 1)]


def determinacy(lang: RelationalLanguage, pred: str) -> Formula:
    xs = _vars(lang.predicates[pred])
    return forall(xs, det(Atom(pred, tuple(Var(x) for x in xs))))


def rsa(lang: RelationalLanguage) -> tuple:
    """The relational structure axioms, fully expanded."""
    return _rsa(lang)


@lru_cache(maxsize=64)
def _rsa(lang):
    axioms = [nil_indeterminacy(), equality_semi_normality(), domain_closure(lang)]
    axioms += unique_names(lang)
    axioms += [determinacy(lang, p) for p in sorted(lang.predicates)]
    return tuple(axioms)


@lru_cache(maxsize=64)
def _rsa_normal(lang) -> frozenset:
    return frozenset(alpha_normal(a) for a in _rsa(lang))


def completion_axiom(lang: RelationalLanguage, basis, pred: str) -> Formula:
    """``forall xs. P(xs) => (xs == c1s | ... )`` over the listed P-facts, or
    ``=> false`` when there are none."""
    if pred not in lang.predicates:
        raise SignatureError(f"undeclared predicate symbol {pred!r}")
    xs = _vars(lang.predicates[pred])
    facts = [a for a in lang.sorted_facts(_as_basis(basis)) if a.pred == pred]
    if facts:
        rhs = disj([conj([strong_eq(Var(x), t) for x, t in zip(xs, a.args)]) for a in facts])
    else:
        rhs = FALSUM
    return forall(xs, strong_implies(Atom(pred, tuple(Var(x) for x in xs)), rhs))


def relational_theory(lang: RelationalLanguage, basis) -> tuple:
    """Structure axioms, then the facts, then one completion axiom per predicate."""
    basis = _as_basis(basis)
    for a in basis:
        lang.check_fact(a)
    return (rsa(lang) + tuple(lang.sorted_facts(basis))
            + tuple(completion_axiom(lang, basis, p) for p in sorted(lang.predicates)))


# --------------------------------------------------------------------------
# Families of relational structures
# --------------------------------------------------------------------------

def rsa_family(lang: RelationalLanguage) -> ProductFamily:
    return ProductFamily(lang.base, lang.predicates, default=TFB)


def canonical_family(lang: RelationalLanguage, basis) -> ProductFamily:
    """Models of the relational theory with basis ``basis``: listed facts t
    or b, everything else f."""
    masks = {lang.key(a): TB for a in _as_basis(basis)}
    return ProductFamily(lang.base, lang.predicates, masks, default=ONLY_F)


def canonical_structure(lang: RelationalLanguage, basis) -> Structure:
    """The model of the relational theory in which every listed fact is t."""
    return canonical_family(lang, basis).structure(
        {lang.key(a): TruthValue.T for a in _as_basis(basis)})


def canonical_models(lang: RelationalLanguage, basis, max_structures=DEFAULT_MAX_STRUCTURES):
    return canonical_family(lang, basis).structures(max_structures)


def count_rsa_models(lang: RelationalLanguage) -> int:
    n = len(lang.names)
    return 3 ** sum(n ** k for k in lang.predicates.values())


def enumerate_rsa_models(lang: RelationalLanguage, max_structures=DEFAULT_MAX_STRUCTURES):
    """Every relational structure for ``lang``: one per choice of t, f or b
    for each ground atom.  Raises :class:`ResourceLimitError` up front when
    there would be more than ``max_structures``."""
    count = count_rsa_models(lang)
    if max_structures is not None and count > max_structures:
        raise ResourceLimitError(
            f"{count} relational structures exceed the ceiling of {max_structures}",
            count, max_structures)
    return rsa_family(lang).structures()


def _narrow(lang: RelationalLanguage, gamma):
    """Family of relational structures that are models of the members of
    ``gamma`` that it absorbs, plus the members it does not absorb."""
    rsa_forms = _rsa_normal(lang)
    normal = {alpha_normal(a): a for a in gamma}
    missing = [a for a in rsa(lang) if alpha_normal(a) not in normal]
    if missing:
        raise ValidationError("premises must contain the relational structure axioms; "
                              f"missing {missing[0]}")
    basis = [a for a in gamma if isinstance(a, Atom) and not free_vars(a)]
    for a in basis:
        lang.check_fact(a)
    completions = {alpha_normal(completion_axiom(lang, basis, p)) for p in lang.predicates}
    closed = completions <= normal.keys()
    masks = {}
    absorbed = set(rsa_forms) | ({alpha_normal(a) for a in basis} if basis else set())
    if closed:
        absorbed |= completions
        default = ONLY_F
    else:
        default = TFB
    for a in basis:
        masks[lang.key(a)] = TB
    for a in gamma:
        if isinstance(a, Not) and isinstance(a.body, Atom) and not free_vars(a):
            lang.check_fact(a.body)
            k = lang.key(a.body)
            masks[k] = masks.get(k, default) & FB
            absorbed.add(alpha_normal(a))
    rest = [a for n, a in normal.items() if n not in absorbed]
    return ProductFamily(lang.base, lang.predicates, masks, default), rest


def entails_rsa(lang: RelationalLanguage, gamma, a: Formula, max_nodes: Optional[int] = None) -> bool:
    """Whether ``a`` follows from ``gamma``, which must contain the
    relational structure axioms.  Free variables take the same value in
    the premises and in ``a``, and ``a`` must follow under every choice."""
    gamma = list(gamma)
    for g in gamma:
        lang.check_formula(g)
    lang.check_formula(a)
    family, rest = _narrow(lang, gamma)
    if any(m == 0 for m in family.masks.values()):
        return True
    return find_countermodel(family, rest, [a], max_nodes) is None


def theory_entails(lang: RelationalLanguage, basis, a: Formula, assuming=(),
                   max_nodes: Optional[int] = None) -> bool:
    """Whether ``a`` follows from the relational theory with basis
    ``basis`` together with the extra premises ``assuming``."""
    lang.check_formula(a)
    for g in assuming:
        lang.check_formula(g)
    return find_countermodel(canonical_family(lang, basis), list(assuming), [a],
                             max_nodes) is None


def theory_countermodel(lang: RelationalLanguage, basis, a: Formula, assuming=()):
    return find_countermodel(canonical_family(lang, basis), list(assuming), [a])


def derivable_semi_atomic(lang: RelationalLanguage, basis) -> list:
    """Semi-atomic facts entailed by the relational theory: the listed
    facts and the negations of all the others."""
    basis = _as_basis(basis)
    return lang.sorted_facts(list(basis) + [Not(a) for a in lang.atoms() if a not in basis])


# --------------------------------------------------------------------------
# Consistency
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ConsistencyReport:
    consistent: bool
    witness: Optional[Formula] = None
    constraint: Optional[Formula] = None
    assignment: Optional[dict] = None
    explanation: tuple = ()
    satisfiable: Optional[bool] = None


def satisfies_constraints(lang: RelationalLanguage, basis, constraints) -> bool:
    """Whether the model of the relational theory in which every listed fact
    is t designates every constraint (free variables read universally)."""
    return find_violation(canonical_structure(lang, basis), constraints) is None


def consistency_report(lang: RelationalLanguage, basis, constraints) -> ConsistencyReport:
    basis = _as_basis(basis)
    s = canonical_structure(lang, basis)
    found = find_violation(s, constraints)
    if found is None:
        return ConsistencyReport(True, satisfiable=True)
    body, alpha = found
    constraint = next(c for c in constraints if c is body or _opens_to(c, body))
    expl = [lang.fact(k) for k in explain_violation(s, body, alpha)]
    facts = lang.sorted_facts(a if a in basis else Not(a) for a in expl)
    names = {x: lang.names[d] for x, d in alpha.items()}
    witness = facts[0] if facts else None
    return ConsistencyReport(False, witness, constraint, names, tuple(facts))


def _opens_to(c, body) -> bool:
    while isinstance(c, ForAll):
        c = c.body
        if c is body:
            return True
    return False


def is_consistent_db(db: Database) -> bool:
    """A database is consistent when the model of its theory that makes every
    fact plainly true satisfies all integrity constraints.  Then no fact
    needs to be both true and false; see :func:`is_consistent_db_literal`
    for the unrestricted reading."""
    return satisfies_constraints(db.lang, db.basis, db.constraints)


def theory_satisfiable(lang: RelationalLanguage, basis, constraints) -> bool:
    """Whether the theory with basis ``basis`` has a model satisfying the
    constraints."""
    return find_countermodel(canonical_family(lang, basis), list(constraints), []) is not None


def literal_report(lang: RelationalLanguage, basis, constraints) -> ConsistencyReport:
    """Check ``theory, constraints |= cons A`` for every semi-atomic ``A``
    the theory entails.  When the theory has no model satisfying the
    constraints every such check succeeds vacuously; ``satisfiable`` says
    so."""
    basis = _as_basis(basis)
    sat = theory_satisfiable(lang, basis, constraints)
    for a in derivable_semi_atomic(lang, basis):
        if not theory_entails(lang, basis, cons(a), assuming=constraints):
            return ConsistencyReport(False, witness=a, satisfiable=sat)
    return ConsistencyReport(True, satisfiable=sat)


def is_consistent_db_literal(db: Database) -> bool:
    return literal_report(db.lang, db.basis, db.constraints).consistent


# --------------------------------------------------------------------------
# Structures
# --------------------------------------------------------------------------

def is_relational_structure(lang: RelationalLanguage, s: Structure) -> bool:
    if s.bottom is None or s.constants.get(NIL) != s.bottom:
        return False
    try:
        s.check()
    except ValidationError:
        return False
    named = {s.constants[c] for c in lang.constants}
    if named != set(s.domain) or len(named) != len(lang.constants):
        return False
    for d1 in s.domain:
        for d2 in s.domain:
            v = s.equality[d1, d2]
            if v == TruthValue.B:
                return False
            if d1 == d2 and d1 != s.bottom and v != TruthValue.T:
                return False
    for p, n in lang.predicates.items():
        table = s.predicates.get(p, {})
        for args in itertools.product(s.domain, repeat=n):
            if table.get(args, TruthValue.N) == TruthValue.N:
                return False
    return True


def nabla(s: Structure) -> Structure:
    """Collapse b to t in every predicate table."""
    tables = {p: {k: (TruthValue.T if v == TruthValue.B else TruthValue(v))
                  for k, v in table.items()}
              for p, table in s.predicates.items()}
    return s.with_predicates(tables)


def models_isomorphic(s1: Structure, s2: Structure) -> bool:
    """Whether the bijection matching the denotations of equal constant
    names carries the tables of ``s1`` onto those of ``s2``."""
    if set(s1.constants) != set(s2.constants) or set(s1.predicates) != set(s2.predicates):
        raise ValidationError("structures are for different languages")
    h = {}
    for c, d in s1.constants.items():
        e = s2.constants[c]
        if h.setdefault(d, e) != e:
            return False
    if set(h) != set(s1.domain) or set(h.values()) != set(s2.domain) \
            or len(set(h.values())) != len(h):
        return False
    if (s1.bottom is None) != (s2.bottom is None) or \
            (s1.bottom is not None and h[s1.bottom] != s2.bottom):
        return False
    for d1 in s1.domain:
        for d2 in s1.domain:
            if s1.equality[d1, d2] != s2.equality[h[d1], h[d2]]:
                return False
    for p, table in s1.predicates.items():
        other = s2.predicates[p]
        if len(table) != len(other):
            return False
        for args, v in table.items():
            if other.get(tuple(h[d] for d in args)) != v:
                return False
    return True


def designated_facts(lang: RelationalLanguage, s: Structure) -> frozenset:
    """Facts whose atom is designated in ``s``: a basis of which ``s`` is a
    model."""
    out = set()
    for p, table in s.predicates.items():
        for args, v in table.items():
            if v & 1:
                out.add(lang.fact((p, args)))
    return frozenset(out)
