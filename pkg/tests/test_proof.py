import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bdlogic.errors import ParseError, RuleError
from bdlogic.parser import parse_term
from bdlogic.proof import (RULES, Derivation, RuleInstance, Sequent, Step, check_derivation,
                           check_rule, derives, load_proof, parse_sequent, rule_name, system)
from bdlogic.semantics import (Structure, TruthValue as TV, eval_formula, plain_equalities,
                               propositional_structures, standard_equality, assignments)
from bdlogic.syntax import (And, Atom, Eq, Exists, ForAll, Implies, Not, Or, Prop, Signature,
                            free_vars)

import proof_corpus as corpus
from strategies import prop_formulas

PQR = list(propositional_structures(["p", "q", "r"]))


def load(body):
    return load_proof(corpus.text(body))


@pytest.mark.parametrize("name", sorted(corpus.VALID))
def test_valid_derivations_are_accepted(name):
    sys, body = corpus.VALID[name]
    _, d = load(body)
    report = check_derivation(sys, d, d.hypotheses)
    assert report.valid, str(report)
    assert str(report) == "valid"


@pytest.mark.parametrize("name", sorted(corpus.CORRUPTED))
def test_corrupted_derivations_are_rejected_at_the_right_step(name):
    sys, body, step = corpus.CORRUPTED[name]
    _, d = load(body)
    report = check_derivation(sys, d)
    assert not report.valid
    assert report.step == step, str(report)
    assert str(report).startswith(f"invalid at step {step}: ")


def test_corpus_covers_every_rule():
    used = set()
    for _, body in corpus.VALID.values():
        _, d = load(body)
        used |= {s.rule.rule for s in d.steps if s.rule is not None}
    assert used == set(RULES)


# -- soundness spot checks ------------------------------------------------------

def holds(s, seq):
    """Whether structure ``s`` satisfies the sequent under every assignment."""
    fv = set().union(*(free_vars(a) for a in seq.left + seq.right))
    for alpha in assignments(s.domain, fv):
        if all(eval_formula(s, alpha, a).designated for a in seq.left) and \
                not any(eval_formula(s, alpha, a).designated for a in seq.right):
            return False
    return True


def propositional(a):
    if isinstance(a, (Atom, Eq)):
        return False
    if isinstance(a, Not):
        return propositional(a.body)
    if isinstance(a, (And, Or, Implies)):
        return propositional(a.left) and propositional(a.right)
    return not isinstance(a, (ForAll, Exists))


def random_plain_structures(rng, count, bottom=False):
    out = []
    for _ in range(count):
        size = rng.randint(2 if bottom else 1, 3)
        domain = tuple(range(size))
        if bottom:
            eq = standard_equality(domain, 0)
            for d in domain[1:]:
                eq[d, d] = rng.choice((TV.T, TV.B))
        else:
            eq = rng.choice(list(plain_equalities(domain)))
        preds = {"P": 1, "Q": 1, "R": 2}
        tables = {p: {args: rng.choice(list(TV))
                      for args in itertools.product(domain, repeat=n)}
                  for p, n in preds.items()}
        out.append(Structure(domain=domain,
                             constants={"a": rng.choice(domain), "b": rng.choice(domain)},
                             predicates=tables,
                             propositions={x: rng.choice(list(TV)) for x in "pqr"},
                             equality=eq, bottom=0 if bottom else None))
    return out


@pytest.mark.parametrize("name", sorted(n for n, (s, _) in corpus.VALID.items() if s == "bd"))
def test_bd_proofs_are_sound(name):
    _, body = corpus.VALID[name]
    _, d = load(body)
    if d.hypotheses:
        pytest.skip("conclusion depends on a hypothesis")
    rng = random.Random(name)
    family = random_plain_structures(rng, 150)
    for st_ in d.steps:
        seq = st_.sequent
        if all(propositional(a) for a in seq.left + seq.right):
            assert all(holds(s, seq) for s in PQR), str(seq)
        assert all(holds(s, seq) for s in family), str(seq)


def test_pbd_proofs_hold_in_bottom_structures():
    _, d = load(corpus.VALID["delta_equality"][1])
    family = random_plain_structures(random.Random(7), 200, bottom=True)
    for st_ in d.steps:
        assert all(holds(s, st_.sequent) for s in family)


def test_classical_proofs_fail_in_four_valued_structures():
    for name in ("excluded_middle_focl", "explosion_focl"):
        _, d = load(corpus.VALID[name][1])
        assert not all(holds(s, d.conclusion) for s in PQR)


# -- rule-level API ---------------------------------------------------------------

SIG = Signature(constants=("a", "b"), predicates={"P": 1}, propositions=("p", "q", "r"))


def seq(text):
    return parse_sequent(text, SIG)


def test_rule_names():
    assert rule_name("and-L") == "∧-L"
    assert rule_name("NOTFORALL-r") == "¬∀-R"
    assert rule_name("delta-eq-L") == "δ-=-L"
    assert rule_name("¬⊃-L") == "¬⊃-L"
    with pytest.raises(RuleError):
        rule_name("modus-ponens")


def test_systems():
    assert system("bd").admits("=-Refl") and not system("bd").admits("¬-L")
    assert not system("pbd").admits("=-Refl") and system("pbd").admits("δ-=-R")
    assert system("focl").admits("¬-L") and system("focl").admits("¬-R")
    with pytest.raises(RuleError):
        system("s5")


def test_sequents_are_sets_up_to_alpha():
    assert seq("p, p, q |- r") == seq("q, p |- r")
    assert parse_sequent("forall x. P(x) |- p", SIG) == parse_sequent("forall y. P(y) |- p", SIG)


def test_check_rule_directly():
    assert check_rule("bd", RuleInstance("Id"), [], seq("p |- p"))
    assert check_rule("bd", RuleInstance("∧-R"), [seq("q |- p"), seq("q |- q")],
                      seq("q |- p & q"))
    # premises may come in either order
    assert check_rule("bd", RuleInstance("∧-R"), [seq("q |- q"), seq("q |- p")],
                      seq("q |- p & q"))
    assert not check_rule("bd", RuleInstance("∧-R"), [seq("q |- p")], seq("q |- p & q"))


def test_rule_outside_system_raises():
    with pytest.raises(RuleError):
        check_rule("bd", RuleInstance("¬-R"), [seq("p |- p")], seq("|- p, ~p"))


def test_instance_witness_must_match():
    prem = parse_sequent("P(a) |- P(a)", SIG)
    concl = parse_sequent("forall x. P(x) |- P(a)", SIG)
    a, b = parse_term("a", SIG), parse_term("b", SIG)
    assert check_rule("bd", RuleInstance("∀-L", t=a), [prem], concl)
    assert not check_rule("bd", RuleInstance("∀-L", t=b), [prem], concl)


def test_derives():
    _, d = load(corpus.VALID["modus_ponens"][1])
    p, q = Prop("p"), Prop("q")
    assert derives("bd", [Implies(p, q), p, q], [Implies(p, q)], d)
    assert not derives("bd", [p], [Implies(p, q)], d)


def test_empty_derivation():
    assert not check_derivation("bd", Derivation(()))


def test_hypotheses_must_be_supplied():
    h = seq("p |- q")
    d = Derivation((Step(h),))
    assert check_derivation("bd", d, [h])
    assert check_derivation("bd", d).step == 1


@pytest.mark.parametrize("body", [
    "1. Id : p |- p\n3. Id : q |- q\n",
    "1. frobnicate : p |- p\n",
    "1. Id : p |- \n2. hyp from 1 : p |- p\n",
    "1. Id[u: a] : p |- p\n",
    "1. Id : p |- p |- p\n",
    "",
])
def test_malformed_proof_files(body):
    with pytest.raises(ParseError):
        load_proof(corpus.HEADER + body)


# -- local soundness of the propositional rules, on generated instances -------------

fs = prop_formulas
ctx = st.lists(prop_formulas, max_size=2)


def _instances(g, d, a1, a2):
    """(rule, premises, conclusion) triples built from the schemas."""
    S = lambda left, right: Sequent(tuple(left), tuple(right))  # noqa: E731
    return [
        ("∧-L", [S([a1, a2] + g, d)], S([And(a1, a2)] + g, d)),
        ("∧-R", [S(g, d + [a1]), S(g, d + [a2])], S(g, d + [And(a1, a2)])),
        ("∨-L", [S([a1] + g, d), S([a2] + g, d)], S([Or(a1, a2)] + g, d)),
        ("∨-R", [S(g, d + [a1, a2])], S(g, d + [Or(a1, a2)])),
        ("⊃-L", [S(g, d + [a1]), S([a2] + g, d)], S([Implies(a1, a2)] + g, d)),
        ("⊃-R", [S([a1] + g, d + [a2])], S(g, d + [Implies(a1, a2)])),
        ("¬¬-L", [S([a1] + g, d)], S([Not(Not(a1))] + g, d)),
        ("¬¬-R", [S(g, d + [a1])], S(g, d + [Not(Not(a1))])),
        ("¬∧-L", [S([Not(a1)] + g, d), S([Not(a2)] + g, d)], S([Not(And(a1, a2))] + g, d)),
        ("¬∧-R", [S(g, d + [Not(a1), Not(a2)])], S(g, d + [Not(And(a1, a2))])),
        ("¬∨-L", [S([Not(a1), Not(a2)] + g, d)], S([Not(Or(a1, a2))] + g, d)),
        ("¬∨-R", [S(g, d + [Not(a1)]), S(g, d + [Not(a2)])], S(g, d + [Not(Or(a1, a2))])),
        ("¬⊃-L", [S([a1, Not(a2)] + g, d)], S([Not(Implies(a1, a2))] + g, d)),
        ("¬⊃-R", [S(g, d + [a1]), S(g, d + [Not(a2)])], S(g, d + [Not(Implies(a1, a2))])),
        ("Cut", [S(g, d + [a1]), S([a1] + g, d)], S(g, d)),
    ]


@settings(max_examples=120, deadline=None)
@given(ctx, ctx, fs, fs)
def test_schema_instances_are_accepted_and_locally_sound(g, d, a1, a2):
    for rule, prems, concl in _instances(g, d, a1, a2):
        inst = RuleInstance(rule, A=a1 if rule == "Cut" else None)
        assert check_rule("bd", inst, prems, concl), rule
        for s in PQR[::3]:
            if all(holds(s, p) for p in prems):
                assert holds(s, concl), rule
