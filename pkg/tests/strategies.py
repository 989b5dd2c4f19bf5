"""Hypothesis strategies for terms and formulas over a small signature."""

from hypothesis import strategies as st

from bdlogic.syntax import (And, App, Atom, Const, Eq, Exists, FALSUM, ForAll, Implies, Not,
                            Or, Prop, Signature, Var)

SIG = Signature(constants=("a", "b"), predicates={"P": 1, "R": 2}, functions={"f": 1},
                propositions=("p", "q"))
VARS = ("x", "y", "z")

terms = st.recursive(
    st.one_of(st.sampled_from(VARS).map(Var), st.sampled_from(("a", "b", "nil")).map(Const)),
    lambda sub: sub.map(lambda t: App("f", (t,))),
    max_leaves=3,
)

atomic = st.one_of(
    st.sampled_from(("p", "q")).map(Prop),
    terms.map(lambda t: Atom("P", (t,))),
    st.tuples(terms, terms).map(lambda ts: Atom("R", ts)),
    st.tuples(terms, terms).map(lambda ts: Eq(*ts)),
    st.just(FALSUM),
)


def _extend(sub):
    return st.one_of(
        sub.map(Not),
        st.tuples(sub, sub).map(lambda ab: And(*ab)),
        st.tuples(sub, sub).map(lambda ab: Or(*ab)),
        st.tuples(sub, sub).map(lambda ab: Implies(*ab)),
        st.tuples(st.sampled_from(VARS), sub).map(lambda xb: ForAll(*xb)),
        st.tuples(st.sampled_from(VARS), sub).map(lambda xb: Exists(*xb)),
    )


formulas = st.recursive(atomic, _extend, max_leaves=8)

# Propositional formulas over p and q only.
prop_atomic = st.one_of(st.sampled_from(("p", "q")).map(Prop), st.just(FALSUM))


def _prop_extend(sub):
    return st.one_of(
        sub.map(Not),
        st.tuples(sub, sub).map(lambda ab: And(*ab)),
        st.tuples(sub, sub).map(lambda ab: Or(*ab)),
        st.tuples(sub, sub).map(lambda ab: Implies(*ab)),
    )


prop_formulas = st.recursive(prop_atomic, _prop_extend, max_leaves=6)
