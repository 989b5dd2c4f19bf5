"""
Equality with a null
====================

In a structure with a null element, an equation involving the null is
neither true nor false.  The derived ``==`` treats two nulls as equal.
"""

import itertools

from bdlogic import And, Eq, ForAll, Not, Or, Var, entails_over
from bdlogic.semantics import Structure, bottom_equalities, eval_formula
from bdlogic.syntax import strong_eq

x, y = Var("x"), Var("y")
s = Structure(domain=(0, 1, 2), equality=next(bottom_equalities((0, 1, 2), 0)), bottom=0)

print("      x = y   x == y")
for dx, dy in itertools.product(s.domain, repeat=2):
    alpha = {"x": dx, "y": dy}
    print(dx, dy, " ", eval_formula(s, alpha, Eq(x, y)), "     ",
          eval_formula(s, alpha, strong_eq(x, y)))

# Being defined on both sides and having a decided equation go together.
family = [Structure(domain=tuple(range(n)), equality=eq, bottom=0)
          for n in (1, 2, 3) for eq in bottom_equalities(tuple(range(n)), 0)]
both_defined = And(Eq(x, x), Eq(y, y))
decided = Or(Eq(x, y), Not(Eq(x, y)))
print(len(family), "structures")
print("defined => decided:", entails_over(family, [both_defined], [decided]))
print("decided => defined:", entails_over(family, [decided], [both_defined]))

# Quantifiers range over the null too, so not even x = x holds everywhere.
print("forall x. x = x :", eval_formula(s, {}, ForAll("x", Eq(x, x))))
