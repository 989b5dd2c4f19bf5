"""Brute-force reference implementations used to check the library.

Nothing here goes through the lazy search engine: structures are built by
hand and formulas are checked with the plain evaluator.
"""

import itertools
import random

from bdlogic.database import relational_theory
from bdlogic.semantics import Structure, TruthValue as TV, entails_over, eval_formula, is_model
from bdlogic.syntax import (And, Atom, Const, Eq, Exists, FALSUM, ForAll, Implies, Not, Or,
                            Var, cons)

T, F, B, N = TV.T, TV.F, TV.B, TV.N


def _domain(lang):
    # element 0 is the null, then one element per other constant
    names = ("nil",) + tuple(c for c in lang.constants if c != "nil")
    return names, tuple(range(len(names)))


def _equality(domain):
    return {(d1, d2): (N if 0 in (d1, d2) else T if d1 == d2 else F)
            for d1 in domain for d2 in domain}


def ground_keys(lang):
    _, domain = _domain(lang)
    return [(p, args) for p in sorted(lang.predicates)
            for args in itertools.product(domain, repeat=lang.predicates[p])]


def build(lang, values):
    """Relational structure with the given ``{(pred, args): value}`` tables."""
    names, domain = _domain(lang)
    tables = {p: {} for p in lang.predicates}
    for (p, args), v in values.items():
        tables[p][args] = v
    return Structure(domain=domain, constants={c: i for i, c in enumerate(names)},
                     predicates=tables, equality=_equality(domain), bottom=0)


def rsa_structures(lang):
    keys = ground_keys(lang)
    for combo in itertools.product((T, F, B), repeat=len(keys)):
        yield build(lang, dict(zip(keys, combo)))


def key_of(lang, fact):
    names, _ = _domain(lang)
    return fact.pred, tuple(names.index(t.name) for t in fact.args)


def theory_models(lang, basis):
    theory = relational_theory(lang, basis)
    return [s for s in rsa_structures(lang) if is_model(s, theory)]


def entails(models, a, premises=()):
    return entails_over(models, list(premises), [a])


def all_true_model(lang, basis):
    values = {k: F for k in ground_keys(lang)}
    for a in basis:
        values[key_of(lang, a)] = T
    return build(lang, values)


def consistent(lang, basis, constraints):
    return is_model(all_true_model(lang, basis), constraints)


def atoms(lang):
    names, _ = _domain(lang)
    return [Atom(p, tuple(Const(names[d]) for d in args)) for p, args in ground_keys(lang)]


def minimal_repairs(lang, basis, is_consistent):
    base = frozenset(basis)
    universe = atoms(lang)
    good = []
    for bits in itertools.product((0, 1), repeat=len(universe)):
        cand = frozenset(a for a, b in zip(universe, bits) if b)
        if is_consistent(cand):
            good.append(base ^ cand)
    return {base ^ d for d in good if not any(e < d for e in good)}


def agreement(lang, base, other):
    base, other = frozenset(base), frozenset(other)
    return (base & other) | {Not(a) for a in atoms(lang) if a not in base and a not in other}


def designation_masks(lang, facts):
    """For every relational structure, its value table and the bitmask of
    ``facts`` it designates."""
    out = []
    for s in rsa_structures(lang):
        mask = 0
        for i, a in enumerate(facts):
            if eval_formula(s, {}, a).designated:
                mask |= 1 << i
        out.append((s, mask))
    return out


def subsets(n):
    return range(1 << n)


def random_formula(rng: random.Random, lang, size=4, qdepth=2, bound=()):
    """A closed formula over ``lang`` of roughly ``size`` connectives with at
    most ``qdepth`` nested quantifiers."""
    terms = [Const(c) for c in lang.constants] + [Var(x) for x in bound]

    def atom():
        r = rng.random()
        if r < 0.7:
            p = rng.choice(sorted(lang.predicates))
            return Atom(p, tuple(rng.choice(terms) for _ in range(lang.predicates[p])))
        if r < 0.95:
            return Eq(rng.choice(terms), rng.choice(terms))
        return FALSUM

    if size <= 0:
        return atom()
    r = rng.random()
    if qdepth > 0 and r < 0.3:
        x = f"x{len(bound)}"
        body = random_formula(rng, lang, size - 1, qdepth - 1, bound + (x,))
        return (ForAll if rng.random() < 0.5 else Exists)(x, body)
    if r < 0.45:
        return Not(random_formula(rng, lang, size - 1, qdepth, bound))
    k = rng.randrange(size)
    cls = rng.choice((And, Or, Implies))
    return cls(random_formula(rng, lang, k, qdepth, bound),
               random_formula(rng, lang, size - 1 - k, qdepth, bound))


def literally_consistent(lang, basis, constraints):
    """Every entailed semi-atomic fact ``A`` has ``cons A`` true in every model
    of the theory that satisfies the constraints."""
    models = [s for s in theory_models(lang, basis) if is_model(s, constraints)]
    return all(entails(models, cons(a)) for a in entailed_facts(lang, basis))


def entailed_facts(lang, basis):
    models = theory_models(lang, basis)
    candidates = atoms(lang) + [Not(a) for a in atoms(lang)]
    return [a for a in candidates if entails(models, a)]


def literal_core(lang, basis, constraints):
    models = [s for s in theory_models(lang, basis) if is_model(s, constraints)]
    return [a for a in entailed_facts(lang, basis) if entails(models, cons(a))]


def repair_supports(lang, basis, constraints):
    """The agreement set of each repair, with repairs found by scanning every
    candidate basis."""
    found = minimal_repairs(lang, basis, lambda b: consistent(lang, b, constraints))
    return [sorted(agreement(lang, basis, r), key=str) for r in found]


def some_subset_entails(lang, phi, a):
    """Whether some subset of ``phi`` entails ``a`` over all relational
    structures, trying the subsets one by one."""
    table = designation_masks(lang, list(phi) + [a])
    goal = 1 << len(phi)
    for m in subsets(len(phi)):
        if all(mask & goal for _, mask in table if mask & m == m):
            return True
    return False
