"""First-order Belnap-Dunn logic with classical implication and a null value.

Submodules:

``syntax``, ``parser``
    terms, formulas, substitution, abbreviations and the ASCII grammar
``semantics``
    the four-valued matrix, structures and valuation
``search``
    consequence over product families of structures
``proof``
    sequent-calculus derivation checking
``database``
    relational languages and theories, consistency, canonical models
``query``
    plain, consistent and strongly consistent answers; repairs
"""

from .errors import (ArityError, BDError, ParseError, ResourceLimitError, RuleError,
                     SignatureError, UndeclaredSymbolError, ValidationError)
from .parser import parse_formula, parse_term
from .semantics import (Assignment, Structure, TruthValue, entails_over, eval_formula,
                        eval_term, is_model, tv_and, tv_impl, tv_not, tv_or, tv_quant)
from .syntax import (Atom, Const, Eq, Exists, FALSUM, ForAll, Implies, Not, Or, And, Prop,
                     Signature, Var, expand, free_vars, substitute)
from .proof import (Derivation, RuleInstance, Sequent, Step, check_derivation, check_rule,
                    derives, load_proof)
from .database import (Database, FactBase, RelationalLanguage, completion_axiom,
                       entails_rsa, enumerate_rsa_models, is_consistent_db, models_isomorphic,
                       nabla, relational_theory, rsa, theory_entails)
from .query import (Query, answers, consistent_answers, consistent_core, consistent_with,
                    is_applicable, leq_lambda, repairs, strongly_consistent_answers)
from .formats import load_database

__version__ = "0.1.0"

__all__ = [
    "And",
    "answers",
    "ArityError",
    "Assignment",
    "Atom",
    "BDError",
    "check_derivation",
    "check_rule",
    "completion_axiom",
    "consistent_answers",
    "consistent_core",
    "consistent_with",
    "Const",
    "Database",
    "Derivation",
    "derives",
    "entails_over",
    "entails_rsa",
    "enumerate_rsa_models",
    "Eq",
    "eval_formula",
    "eval_term",
    "Exists",
    "expand",
    "FactBase",
    "FALSUM",
    "ForAll",
    "free_vars",
    "Implies",
    "is_applicable",
    "is_consistent_db",
    "is_model",
    "leq_lambda",
    "load_database",
    "load_proof",
    "models_isomorphic",
    "nabla",
    "Not",
    "Or",
    "parse_formula",
    "parse_term",
    "ParseError",
    "Prop",
    "Query",
    "relational_theory",
    "RelationalLanguage",
    "repairs",
    "ResourceLimitError",
    "rsa",
    "RuleError",
    "RuleInstance",
    "Sequent",
    "Signature",
    "SignatureError",
    "Step",
    "strongly_consistent_answers",
    "Structure",
    "substitute",
    "theory_entails",
    "TruthValue",
    "tv_and",
    "tv_impl",
    "tv_not",
    "tv_or",
    "tv_quant",
    "UndeclaredSymbolError",
    "ValidationError",
    "Var",
]
