"""
Models of a relational theory
=============================

A relational theory pins every fact not listed to false.  A listed fact is
either true or both, so a basis of ``k`` facts has ``2**k`` models.
Collapsing b to t makes all of them the same.
"""

import itertools

import bdlogic as bd
from bdlogic.database import canonical_models
from bdlogic.parser import parse_formula
from bdlogic.semantics import eval_formula

lang = bd.RelationalLanguage.build(["a", "b"], {"P": 1})
basis = bd.FactBase.of(lang, [parse_formula(t, lang.sig) for t in ("P(a)", "P(b)")])
models = list(canonical_models(lang, basis))
print(len(models), "models")

a = parse_formula("exists x. P(x) & ~P(x)", lang.sig)
for s in models:
    names = {d: c for c, d in s.constants.items()}
    row = " ".join(f"P({names[d]})={v}" for (d,), v in sorted(s.predicates["P"].items()))
    print(row, "  ", a, "=", eval_formula(s, {}, a), "  collapsed:",
          eval_formula(bd.nabla(s), {}, a))

print("collapsed models pairwise isomorphic:",
      all(bd.models_isomorphic(bd.nabla(s1), bd.nabla(s2))
          for s1, s2 in itertools.combinations(models, 2)))

# Entailment from the theory only needs these models.
for text in ("P(a) & P(b)", "forall x. P(x) | x == nil", "~P(nil)", "P(a) & ~P(a)"):
    print(f"{text:28}", bd.theory_entails(lang, basis, parse_formula(text, lang.sig)))
