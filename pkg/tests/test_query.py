import itertools
import random
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bdlogic.database import Database, FactBase, RelationalLanguage, is_consistent_db
from bdlogic.errors import ResourceLimitError, ValidationError
from bdlogic.formats import parse_query
from bdlogic.parser import parse_formula
from bdlogic.query import (NoRepairsWarning, Query, answers, check_query, consistent_answers,
                           consistent_answers_literal, consistent_core, consistent_core_literal,
                           consistent_with, consistent_with_literal, is_applicable,
                           is_minimal_repair, leq_lambda, repairs, repairs_literal,
                           strongly_consistent_answers, support_sets)
from bdlogic.syntax import FALSUM, Not, truth

import oracles
import worked

L1 = RelationalLanguage.build(["a"], {"P": 1})
L2 = RelationalLanguage.build(["a", "b"], {"P": 1})
LQ = RelationalLanguage.build(["a"], {"P": 1, "Q": 1})
LR = RelationalLanguage.build(["a"], {"R": 2})
L2Q = RelationalLanguage.build(["a", "b"], {"P": 1, "Q": 1})
LANGS = [L1, L2, LQ, LR, L2Q]

CONSTRAINTS = {
    L1: ["forall x. P(x) -> x = a", "des(P(a))", "~P(a)"],
    L2: ["forall x, y. P(x) & P(y) => x = y", "P(a) | P(b)", "exists x. P(x)"],
    LQ: ["forall x. ~(P(x) & Q(x))", "forall x. P(x) -> Q(x)", "P(a) | Q(a)"],
    LR: ["forall x, y, z. R(x, y) & R(x, z) => y = z", "forall x. R(x, x)",
         "forall x, y. R(x, y) -> R(y, x)"],
    L2Q: ["forall x. P(x) => Q(x)", "forall x. ~(P(x) & Q(x))", "Q(a) | Q(b)"],
}


def F(lang, text):
    return parse_formula(text, lang.sig)


def facts(lang, *texts):
    return FactBase.of(lang, [F(lang, t) for t in texts])


def random_db(rng, lang=None):
    lang = lang or rng.choice(LANGS)
    basis = [a for a in lang.atoms() if rng.random() < 0.4]
    xi = [F(lang, c) for c in CONSTRAINTS[lang] if rng.random() < 0.4]
    if rng.random() < 0.3:
        xi.append(oracles.random_formula(rng, lang, 3, qdepth=1))
    return Database(lang, FactBase(basis), xi)


def tuples(lang, q):
    return itertools.product(lang.constants, repeat=len(q.head))


def random_query(rng, lang):
    head = ("x",) if rng.random() < 0.6 else ()
    return Query(head, oracles.random_formula(rng, lang, rng.randrange(5), qdepth=2, bound=head))


# -- the null-value example -------------------------------------------------------------

def test_worked_example_with_plain_equality():
    db, q = worked.load()
    assert is_applicable(q, db)
    assert answers(db, q) == {("a",)}
    assert consistent_answers(db, q) == set()
    assert strongly_consistent_answers(db, q) == set()
    assert [sorted(map(str, r)) for r in repairs(db)] == [["P(a, b, nil)", "P(b, c, d)"]]


def test_worked_example_with_strong_equality():
    db, q = worked.load(strong=True)
    assert answers(db, q) == {("a",)}
    assert consistent_answers(db, q) == {("a",)}
    assert strongly_consistent_answers(db, q) == set()
    assert [sorted(map(str, r)) for r in repairs(db)] == [
        ["P(a, b, nil)", "P(b, c, d)"], ["P(a, nil, c)", "P(a, nil, d)", "P(b, c, d)"]]


def test_worked_example_repairs_are_minimal():
    for strong in (False, True):
        db, _ = worked.load(strong)
        for r in repairs(db):
            assert consistent_with(db.lang, r, db.constraints)
            assert is_minimal_repair(db, r)
        assert not is_minimal_repair(db, facts(db.lang, "P(b, c, d)"))


def test_worked_example_is_too_big_for_exhaustive_search():
    db, _ = worked.load()
    with pytest.raises(ResourceLimitError):
        repairs(db, exhaustive=True)


def test_worked_example_core():
    db, _ = worked.load(strong=True)
    core = consistent_core(db)
    assert F(db.lang, "P(b, c, d)") in core
    assert not any(F(db.lang, t) in core
                   for t in ("P(a, b, nil)", "P(a, nil, c)", "P(a, nil, d)"))


def test_worked_example_answers_with_nulls_suppressed():
    db, q = worked.load()
    assert answers(db, q, nulls=False) == {("a",)}
    q2 = parse_query("q2(x, y) :- exists z. P(x, y, z)", db.lang)
    assert ("a", "nil") in answers(db, q2)
    assert ("a", "nil") not in answers(db, q2, nulls=False)


# -- queries --------------------------------------------------------------------------

def test_query_checks():
    db, q = worked.load()
    assert str(q).startswith("q(x) :- ")
    bad = [Query(("x", "x"), F(db.lang, "P(x, x, x)")),
           Query(("a",), F(db.lang, "P(a, a, a)")),
           Query(("x",), F(db.lang, "P(x, y, x)"))]
    for b in bad:
        assert not is_applicable(b, db)
        with pytest.raises(ValidationError):
            check_query(b, db.lang)
        with pytest.raises(ValidationError):
            answers(db, b)
    other = RelationalLanguage.build(["a"], {"Q": 1})
    assert not is_applicable(Query(("x",), F(other, "Q(x)")), db)


def test_empty_basis_answers_no_positive_query():
    db = Database(L2, FactBase(()))
    assert answers(db, Query(("x",), F(L2, "P(x)"))) == set()
    assert answers(db, Query(("x",), F(L2, "~P(x)"))) == {("a",), ("b",), ("nil",)}


def test_zero_variable_queries():
    db = Database(L1, facts(L1, "P(a)"))
    assert answers(db, Query((), truth())) == {()}
    assert answers(db, Query((), Not(truth()))) == set()
    assert answers(db, Query((), FALSUM)) == set()


def test_instances():
    q = Query(("x", "y"), F(LR, "R(x, y) & R(y, x)"))
    assert q.instance(("a", "nil")) == F(LR, "R(a, nil) & R(nil, a)")


# -- closeness and consistency -------------------------------------------------------------

def test_leq_lambda():
    base = facts(L2, "P(a)")
    both, just_b = facts(L2, "P(a)", "P(b)"), facts(L2, "P(b)")
    assert leq_lambda(base, base, just_b)
    assert leq_lambda(base, just_b, just_b)
    assert leq_lambda(base, both, just_b)
    assert not leq_lambda(base, just_b, both)


def test_consistent_with():
    db, _ = worked.load()
    assert not consistent_with(db.lang, db.basis, db.constraints)
    assert consistent_with(db.lang, facts(db.lang, "P(a, b, nil)", "P(b, c, d)"),
                           db.constraints)
    for basis in (db.basis, FactBase(())):
        assert consistent_with(db.lang, basis, [])


def test_repairs_of_a_consistent_database():
    db = Database(L2, facts(L2, "P(a)"), [F(L2, "exists x. P(x)")])
    assert repairs(db) == [db.basis]


def test_repairs_can_add_facts():
    db = Database(L1, FactBase(()), [F(L1, "des(P(a))")])
    assert repairs(db) == [facts(L1, "P(a)")]
    want = oracles.minimal_repairs(L1, (), lambda b: oracles.consistent(L1, b, db.constraints))
    assert want == {frozenset(facts(L1, "P(a)"))}


def test_no_repairs():
    db = Database(L1, facts(L1, "P(a)"), [FALSUM])
    assert repairs(db) == []
    assert repairs(db, exhaustive=True) == []
    with pytest.warns(NoRepairsWarning):
        got = strongly_consistent_answers(db, Query(("x",), F(L1, "P(x)")))
    assert got == {("a",), ("nil",)}
    assert consistent_answers(db, Query(("x",), F(L1, "P(x)"))) == set()


def test_repair_node_budget():
    db, _ = worked.load(strong=True)
    with pytest.raises(ResourceLimitError):
        repairs(db, max_nodes=2)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 10**9))
def test_repairs_agree_with_brute_force(seed):
    rng = random.Random(seed)
    db = random_db(rng)
    lang = db.lang
    want = oracles.minimal_repairs(lang, db.basis,
                                   lambda b: oracles.consistent(lang, b, db.constraints))
    got = repairs(db)
    assert {frozenset(r) for r in got} == want
    assert repairs(db, exhaustive=True) == got
    for r in got:
        assert is_minimal_repair(db, r)


def test_literal_repairs_agree_with_brute_force():
    rng = random.Random(11)
    for _ in range(25):
        db = random_db(rng, rng.choice([L1, L2, LQ]))
        lang = db.lang
        want = oracles.minimal_repairs(
            lang, db.basis, lambda b: oracles.literally_consistent(lang, b, db.constraints))
        assert {frozenset(r) for r in repairs_literal(db)} == want
        if want:
            assert consistent_with_literal(lang, next(iter(want)), db.constraints)


# -- consistent answers ---------------------------------------------------------------

def test_core_without_constraints_keeps_the_basis():
    for lang in LANGS:
        basis = lang.atoms()[::2]
        core = consistent_core(Database(lang, FactBase(basis)))
        assert set(basis) <= core


def test_core_of_an_empty_basis_is_every_negative_fact():
    for lang in LANGS:
        db = Database(lang, FactBase(()), [F(lang, c) for c in CONSTRAINTS[lang][:1]])
        if is_consistent_db(db):
            assert consistent_core(db) == {Not(a) for a in lang.atoms()}


def test_literal_core_matches_brute_force():
    rng = random.Random(3)
    for _ in range(30):
        db = random_db(rng, rng.choice([L1, L2, LQ]))
        want = oracles.literal_core(db.lang, db.basis, db.constraints)
        assert consistent_core_literal(db) == set(want)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10**9))
def test_consistent_answers_have_a_witness_set(seed):
    rng = random.Random(seed)
    db = random_db(rng)
    q = random_query(rng, db.lang)
    plain = answers(db, q)
    got = consistent_answers(db, q)
    assert got <= plain
    supports = oracles.repair_supports(db.lang, db.basis, db.constraints)
    assert {frozenset(s) for s in support_sets(db)} == {frozenset(s) for s in supports}
    for t in tuples(db.lang, q):
        inst = q.instance(t)
        want = any(oracles.some_subset_entails(db.lang, phi, inst) for phi in supports)
        assert (t in got) == want, t


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**9))
def test_literal_consistent_answers_have_a_witness_set(seed):
    rng = random.Random(seed)
    db = random_db(rng, rng.choice([L1, L2, LQ]))
    q = random_query(rng, db.lang)
    core = oracles.literal_core(db.lang, db.basis, db.constraints)
    got = consistent_answers_literal(db, q)
    for t in tuples(db.lang, q):
        assert (t in got) == oracles.some_subset_entails(db.lang, core, q.instance(t))


# -- strongly consistent answers ------------------------------------------------------

@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_strong_answers(seed):
    rng = random.Random(seed)
    db = random_db(rng)
    q = random_query(rng, db.lang)
    rs = oracles.minimal_repairs(db.lang, db.basis,
                                 lambda b: oracles.consistent(db.lang, b, db.constraints))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NoRepairsWarning)
        got = strongly_consistent_answers(db, q)
    for t in tuples(db.lang, q):
        want = all(oracles.entails(oracles.theory_models(db.lang, r), q.instance(t)) for r in rs)
        assert (t in got) == want
    if is_consistent_db(db):
        assert got == answers(db, q)
