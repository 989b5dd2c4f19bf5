"""
Four truth values
=================

Formulas take one of four values: t, f, b (both) and n (neither).
t and b are designated.  Negation swaps truth and falsity and leaves b and
n alone, so a contradiction need not explode.
"""

from bdlogic import Prop, Not, Or, And, Implies, entails_over
from bdlogic.semantics import TruthValue as TV, eval_formula, propositional_structures
from bdlogic.syntax import cons, des, det

p, q = Prop("p"), Prop("q")
values = [TV.T, TV.F, TV.B, TV.N]

# Tables for conjunction and implication, row = left argument.
structures = {(s.propositions["p"], s.propositions["q"]): s
              for s in propositional_structures(["p", "q"])}
for name, make in (("and", And), ("implies", Implies)):
    print(name)
    for v1 in values:
        row = [eval_formula(structures[v1, v2], {}, make(p, q)) for v2 in values]
        print(" ", v1, *row)

# des, cons and det are two-valued.
for v in values:
    s = structures[v, TV.T]
    print(v, "des:", eval_formula(s, {}, des(p)), "cons:", eval_formula(s, {}, cons(p)),
          "det:", eval_formula(s, {}, det(p)))

# Neither explosion nor excluded middle holds over all 16 structures...
family = list(propositional_structures(["p", "q"]))
print("p, ~p |= q      ", entails_over(family, [p, Not(p)], [q]))
print("|= p | ~p       ", entails_over(family, [], [Or(p, Not(p))]))

# ...but modus ponens does, since implication is classical.
print("p -> q, p |= q  ", entails_over(family, [Implies(p, q), p], [q]))
