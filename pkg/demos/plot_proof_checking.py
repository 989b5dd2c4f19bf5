"""
Checking derivations
====================

A derivation is a numbered list of sequents, each justified by a rule and
earlier steps.  The checker replays every step and reports the first one
that does not follow.
"""

from pathlib import Path

from bdlogic.proof import check_derivation, load_proof

here = Path(__file__).parent
text = (here / "data" / "de_morgan.proof").read_text()
sig, d = load_proof(text)
print(check_derivation("bd", d))

# Excluded middle needs the right negation rule, which only some systems have.
em = """\
prop p
1. Id : p |- p
2. not-R from 1 : |- p, ~p
3. or-R from 2 : |- p | ~p
"""
_, d = load_proof(em)
for system in ("bd", "lp", "k3", "focl"):
    print(f"{system:5}", check_derivation(system, d))

# A broken eigenvariable condition is caught at the step that uses it.
bad = """\
const a
pred P/1
1. Id : P(y) |- P(y)
2. forall-R[y: y] from 1 : P(y) |- forall x. P(x)
"""
_, d = load_proof(bad)
print(check_derivation("bd", d))
