"""Checking sequent-calculus derivations.

Sequents are pairs of finite *sets* of formulas, compared up to renaming
of bound variables.  A rule application names the rule and may carry
witnesses:

``A``
    the principal formula as it occurs in the conclusion; for ``Id`` the
    literal on both sides, for ``Cut`` the cut formula, for ``=-Repl`` the
    literal template containing the variable ``x``
``t``, ``t1``, ``t2``
    terms instantiated into the principal formula
``x``, ``y``
    the template variable of ``=-Repl`` and the eigenvariable of the four
    eigenvariable rules

Missing witnesses are searched for among the formulas of the sequents
involved, except for the template of ``=-Repl`` and the term of
``=-Refl``, which must be given.

A rule instance is checked against the schema by computing the formulas
the schema adds to each side of each sequent ("active" formulas) and
asking whether a single context ``Gamma |- Delta`` completes all of them.
For sides ``X_i = S_i + Gamma`` this is the case exactly when each ``S_i``
lies in ``X_i`` and each ``X_i - S_i`` lies in every ``X_j``.

``=-Repl`` is read as: from ``A[x:=t1], Gamma |- Delta`` infer
``t1 = t2, A[x:=t2], Gamma |- Delta``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Optional

from .errors import ParseError, RuleError
from .parser import Parser, parse_formula_list
from .syntax import (FALSUM, And, App, Atom, Const, Eq, Exists, Falsum, ForAll, Formula,
                     Implies, Not, Or, Prop, Signature, Term, Var, alpha_normal, formula_text,
                     free_vars, is_literal, ne, substitute)


# --------------------------------------------------------------------------
# Sequents
# --------------------------------------------------------------------------

def _normalize(formulas) -> tuple:
    seen = {}
    for a in formulas:
        seen.setdefault(alpha_normal(a), a)
    return tuple(seen[k] for k in sorted(seen, key=formula_text))


@dataclass(frozen=True, eq=False)
class Sequent:
    left: tuple = ()
    right: tuple = ()
    left_keys: frozenset = field(init=False, repr=False)
    right_keys: frozenset = field(init=False, repr=False)

    def __post_init__(self):
        left, right = _normalize(self.left), _normalize(self.right)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "left_keys", frozenset(alpha_normal(a) for a in left))
        object.__setattr__(self, "right_keys", frozenset(alpha_normal(a) for a in right))

    def __eq__(self, other):
        return (isinstance(other, Sequent) and self.left_keys == other.left_keys
                and self.right_keys == other.right_keys)

    def __hash__(self):
        return hash((self.left_keys, self.right_keys))

    def __str__(self):
        def side(fs):
            return ", ".join(formula_text(a) for a in fs)
        return f"{side(self.left)} |- {side(self.right)}".strip()


# --------------------------------------------------------------------------
# Rules and systems
# --------------------------------------------------------------------------

RULES = (
    "Id", "Cut", "F-L", "∧-L", "∧-R", "∨-L", "∨-R", "⊃-L", "⊃-R",
    "∀-L", "∀-R", "∃-L", "∃-R", "¬F-R", "¬¬-L", "¬¬-R", "¬∧-L", "¬∧-R",
    "¬∨-L", "¬∨-R", "¬⊃-L", "¬⊃-R", "¬∀-L", "¬∀-R", "¬∃-L", "¬∃-R",
    "=-Refl", "=-Repl", "δ-=-L", "δ-=-R", "¬-L", "¬-R",
)

def _ascii_aliases() -> dict:
    out = {}
    for name in RULES:
        out[name.lower()] = name
    simple = {"and": "∧", "or": "∨", "imp": "⊃", "forall": "∀", "exists": "∃"}
    for side in ("L", "R"):
        for k, v in simple.items():
            out[f"{k}-{side}".lower()] = f"{v}-{side}"
            out[f"not{k}-{side}".lower()] = f"¬{v}-{side}"
        out[f"notnot-{side}".lower()] = f"¬¬-{side}"
        out[f"not-{side}".lower()] = f"¬-{side}"
        out[f"delta-eq-{side}".lower()] = f"δ-=-{side}"
    out.update({"f-l": "F-L", "false-l": "F-L", "notf-r": "¬F-R", "notfalse-r": "¬F-R",
                "eq-refl": "=-Refl", "eq-repl": "=-Repl", "id": "Id", "cut": "Cut"})
    return out


_ALIASES = _ascii_aliases()


def rule_name(name: str) -> str:
    """Canonical name of a rule given in either its symbolic or ASCII form
    (``and-L``, ``notforall-R``, ``eq-Repl``, ``delta-eq-L`` ...)."""
    canon = _ALIASES.get(name.strip().lower())
    if canon is None:
        raise RuleError(f"unknown rule {name!r}")
    return canon


_BASE = frozenset(RULES) - {"δ-=-L", "δ-=-R", "¬-L", "¬-R"}


@dataclass(frozen=True)
class RuleSystem:
    name: str
    rules: frozenset

    def admits(self, rule: str) -> bool:
        return rule in self.rules


BD = RuleSystem("bd", _BASE)
PBD = RuleSystem("pbd", (_BASE - {"=-Refl"}) | {"δ-=-L", "δ-=-R"})
FOCL = RuleSystem("focl", _BASE | {"¬-L", "¬-R"})
LPISH = RuleSystem("lp", _BASE | {"¬-R"})
K3ISH = RuleSystem("k3", _BASE | {"¬-L"})
SYSTEMS = {s.name: s for s in (BD, PBD, FOCL, LPISH, K3ISH)}


def system(name) -> RuleSystem:
    if isinstance(name, RuleSystem):
        return name
    try:
        return SYSTEMS[name.lower()]
    except KeyError:
        raise RuleError(f"unknown rule system {name!r}; choose from {sorted(SYSTEMS)}") from None


@dataclass(frozen=True)
class RuleInstance:
    rule: str
    A: Optional[Formula] = None
    t: Optional[Term] = None
    t1: Optional[Term] = None
    t2: Optional[Term] = None
    x: Optional[str] = None
    y: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "rule", rule_name(self.rule))


# --------------------------------------------------------------------------
# Schema matching
# --------------------------------------------------------------------------

class _Fail(Exception):
    pass


@dataclass
class _Shape:
    """Active formulas of the conclusion and of each premise, per side."""
    c_left: tuple = ()
    c_right: tuple = ()
    premises: list = field(default_factory=list)
    eigen: Optional[tuple] = None          # (y, x, body)


def _keys(formulas) -> frozenset:
    return frozenset(alpha_normal(a) for a in formulas)


def _side_ok(sides) -> bool:
    """``sides`` lists (X, S) pairs that must share one context."""
    for x, s in sides:
        if not s <= x:
            return False
    for (xi, si), (xj, _) in itertools.product(sides, repeat=2):
        if not (xi - si) <= xj:
            return False
    return True


def _context(sides) -> frozenset:
    out = frozenset()
    for x, s in sides:
        out |= x - s
    return out


def _fits(shape: _Shape, premises, conclusion: Sequent) -> Optional[str]:
    if len(premises) != len(shape.premises):
        return f"expects {len(shape.premises)} premise(s), got {len(premises)}"
    left = [(conclusion.left_keys, _keys(shape.c_left))]
    right = [(conclusion.right_keys, _keys(shape.c_right))]
    for p, (pl, pr) in zip(premises, shape.premises):
        left.append((p.left_keys, _keys(pl)))
        right.append((p.right_keys, _keys(pr)))
    if not _side_ok(left):
        return "left-hand sides do not match the rule schema"
    if not _side_ok(right):
        return "right-hand sides do not match the rule schema"
    if shape.eigen is not None:
        y, x, body = shape.eigen
        for a in _context(left) | _context(right):
            if y in free_vars(a):
                return f"eigenvariable {y} is free in the context"
        if y != x and y in free_vars(body):
            return f"eigenvariable {y} is free in the quantified formula"
    return None


def _match_term(pattern, x, target, binding):
    """Extend ``binding`` (a one-element list) so that replacing free ``x``
    in ``pattern`` yields ``target``; False on a clash."""
    if isinstance(pattern, Var):
        if pattern.name == x:
            if binding[0] is None:
                binding[0] = target
                return True
            return binding[0] == target
        return pattern == target
    if type(pattern) is not type(target):
        return False
    if isinstance(pattern, Const):
        return pattern == target
    if isinstance(pattern, App):
        return pattern.fn == target.fn and len(pattern.args) == len(target.args) and \
            all(_match_term(p, x, t, binding) for p, t in zip(pattern.args, target.args))
    return False


def _match(pattern, x, target, binding) -> bool:
    if type(pattern) is not type(target):
        return False
    if isinstance(pattern, Atom):
        return pattern.pred == target.pred and len(pattern.args) == len(target.args) and \
            all(_match_term(p, x, t, binding) for p, t in zip(pattern.args, target.args))
    if isinstance(pattern, Eq):
        return _match_term(pattern.left, x, target.left, binding) and \
            _match_term(pattern.right, x, target.right, binding)
    if isinstance(pattern, (Prop, Falsum)):
        return pattern == target
    if isinstance(pattern, Not):
        return _match(pattern.body, x, target.body, binding)
    if isinstance(pattern, (And, Or, Implies)):
        return _match(pattern.left, x, target.left, binding) and \
            _match(pattern.right, x, target.right, binding)
    if isinstance(pattern, (ForAll, Exists)):
        if pattern.var == x:
            return alpha_normal(pattern) == alpha_normal(target)
        # bound variables are matched positionally after renaming the target's
        renamed = substitute(target.var, Var(pattern.var), target.body) \
            if target.var != pattern.var else target.body
        return _match(pattern.body, x, renamed, binding)
    return False


def instance_terms(body: Formula, x: str, candidates) -> list:
    """Terms ``t`` with ``body[x:=t]`` equal (up to bound renaming) to some
    candidate formula."""
    out = []
    if x not in free_vars(body):
        return [Var(x)]
    for c in candidates:
        binding = [None]
        if _match(body, x, c, binding) and binding[0] is not None:
            t = binding[0]
            if alpha_normal(substitute(x, t, body)) == alpha_normal(c) and t not in out:
                out.append(t)
    return out


def _principals(inst, conclusion, side, shape_ok):
    if inst.A is not None:
        return [inst.A]
    pool = conclusion.left if side == "L" else conclusion.right
    return [a for a in pool if shape_ok(a)]


def _shapes(inst: RuleInstance, premises, conclusion):
    """Candidate schema instances for ``inst``."""
    r = inst.rule
    side = r[-1]
    prem_left = [a for p in premises for a in p.left]
    prem_right = [a for p in premises for a in p.right]

    def on(a):                       # principal goes to the conclusion side of the rule
        return ((a,), ()) if side == "L" else ((), (a,))

    def act(*fs):                    # premise active formulas on the rule's side
        return (tuple(fs), ()) if side == "L" else ((), tuple(fs))

    def shape(a, *prems, eigen=None):
        cl, cr = on(a)
        return _Shape(cl, cr, list(prems), eigen)

    if r == "Id":
        cands = [inst.A] if inst.A is not None else \
            [a for a in conclusion.left if alpha_normal(a) in conclusion.right_keys]
        out = []
        for a in cands:
            if not is_literal(a):
                raise _Fail(f"Id requires a literal, got {formula_text(a)}")
            out.append(_Shape((a,), (a,)))
        return out
    if r == "F-L":
        return [_Shape((FALSUM,), ())]
    if r == "¬F-R":
        return [_Shape((), (Not(FALSUM),))]
    if r == "Cut":
        return None                  # handled separately
    if r == "=-Refl":
        if inst.t is None:
            raise _Fail("=-Refl needs the witness t")
        return [_Shape((), (), [((Eq(inst.t, inst.t),), ())])]
    if r == "=-Repl":
        if inst.A is None or inst.x is None or inst.t1 is None or inst.t2 is None:
            raise _Fail("=-Repl needs the witnesses A, x, t1 and t2")
        if not is_literal(inst.A):
            raise _Fail(f"=-Repl requires a literal, got {formula_text(inst.A)}")
        a1 = substitute(inst.x, inst.t1, inst.A)
        a2 = substitute(inst.x, inst.t2, inst.A)
        return [_Shape((Eq(inst.t1, inst.t2), a2), (), [((a1,), ())])]
    if r in ("δ-=-L", "δ-=-R"):
        if inst.t1 is not None and inst.t2 is not None:
            pairs = [(inst.t1, inst.t2)]
        else:
            pool = [inst.A] if inst.A is not None else \
                (conclusion.left if side == "L" else conclusion.right)
            pairs = [(a.left.left, a.left.right) for a in pool
                     if isinstance(a, Or) and isinstance(a.left, Eq)
                     and alpha_normal(a.right) == alpha_normal(Not(a.left))]
        return [shape(Or(Eq(t1, t2), ne(t1, t2)),
                      act(And(Eq(t1, t1), Eq(t2, t2)))) for t1, t2 in pairs]

    neg = r.startswith("¬") and r not in ("¬-L", "¬-R")
    op = r[1:-2] if neg else r[:-2]

    def body_of(a):
        return a.body if neg else a

    kinds = {"∧": And, "∨": Or, "⊃": Implies, "∀": ForAll, "∃": Exists, "¬": Not}
    if r in ("¬-L", "¬-R"):
        cands = _principals(inst, conclusion, side, lambda a: isinstance(a, Not))
        out = []
        for a in cands:
            if not isinstance(a, Not):
                raise _Fail(f"{r} needs a negation, got {formula_text(a)}")
            # the negated formula moves to the opposite side in the premise
            prem = ((), (a.body,)) if side == "L" else ((a.body,), ())
            out.append(shape(a, prem))
        return out

    kind = kinds[op]

    def ok(a):
        if neg:
            return isinstance(a, Not) and isinstance(a.body, kind)
        return isinstance(a, kind)

    out = []
    for a in _principals(inst, conclusion, side, ok):
        if not ok(a):
            raise _Fail(f"{r} does not apply to {formula_text(a)}")
        b = body_of(a)
        wrap = Not if neg else (lambda f: f)
        if kind in (And, Or, Implies) and op != "¬":
            a1, a2 = b.left, b.right
            out.extend(_binary(r, a, a1, a2, shape, act, side))
        elif kind is Not:            # double negation
            out.append(shape(a, act(b.body)))
        else:
            x, body = b.var, b.body
            eigen_rule = r in ("∃-L", "∀-R", "¬∀-L", "¬∃-R")
            if eigen_rule:
                if inst.y is not None:
                    ys = [inst.y]
                else:
                    pool = prem_left if side == "L" else prem_right
                    pool = [f.body for f in pool if isinstance(f, Not)] if neg else pool
                    ys = [t.name for t in instance_terms(body, x, pool) if isinstance(t, Var)]
                for y in ys:
                    out.append(shape(a, act(wrap(substitute(x, Var(y), body))),
                                     eigen=(y, x, body)))
            else:
                if inst.t is not None:
                    ts = [inst.t]
                else:
                    pool = prem_left if side == "L" else prem_right
                    pool = [f.body for f in pool if isinstance(f, Not)] if neg else pool
                    ts = instance_terms(body, x, pool)
                for t in ts:
                    out.append(shape(a, act(wrap(substitute(x, t, body)))))
    return out


def _binary(r, a, a1, a2, shape, act, side):
    n1, n2 = Not(a1), Not(a2)
    table = {
        "∧-L": [act(a1, a2)],
        "∧-R": [act(a1), act(a2)],
        "∨-L": [act(a1), act(a2)],
        "∨-R": [act(a1, a2)],
        "⊃-L": [((), (a1,)), ((a2,), ())],
        "⊃-R": [((a1,), (a2,))],
        "¬∧-L": [act(n1), act(n2)],
        "¬∧-R": [act(n1, n2)],
        "¬∨-L": [act(n1, n2)],
        "¬∨-R": [act(n1), act(n2)],
        "¬⊃-L": [act(a1, n2)],
        "¬⊃-R": [act(a1), act(n2)],
    }
    return [shape(a, *table[r])]


def _check_cut(inst, premises, conclusion) -> Optional[str]:
    if len(premises) != 2:
        return f"expects 2 premise(s), got {len(premises)}"
    p1, p2 = premises
    cands = [inst.A] if inst.A is not None else \
        [a for a in p1.right if alpha_normal(a) in p2.left_keys]
    for a in cands:
        k = alpha_normal(a)
        if k not in p1.right_keys or k not in p2.left_keys:
            continue
        lefts = {p1.left_keys | (p2.left_keys - {k}), p1.left_keys | p2.left_keys}
        rights = {(p1.right_keys - {k}) | p2.right_keys, p1.right_keys | p2.right_keys}
        if conclusion.left_keys in lefts and conclusion.right_keys in rights:
            return None
    return "premises and conclusion do not form a Cut instance"


def check_rule(sys, inst: RuleInstance, premises, conclusion: Sequent) -> bool:
    """Whether ``premises / conclusion`` is an instance of ``inst``'s rule.
    Raises :class:`RuleError` when the rule is not part of ``sys``."""
    return _rule_failure(system(sys), inst, list(premises), conclusion) is None


def _rule_failure(sys: RuleSystem, inst, premises, conclusion) -> Optional[str]:
    if not sys.admits(inst.rule):
        raise RuleError(f"rule {inst.rule} is not part of system {sys.name}")
    orders = [premises] if len(premises) < 2 else \
        [list(p) for p in dict.fromkeys(itertools.permutations(premises))]
    reason = None
    for prems in orders:
        if inst.rule == "Cut":
            reason = _check_cut(inst, prems, conclusion)
            if reason is None:
                return None
            continue
        try:
            shapes = _shapes(inst, prems, conclusion)
        except _Fail as e:
            return str(e)
        if not shapes:
            reason = reason or f"no principal formula for {inst.rule} in the conclusion"
        for sh in shapes:
            why = _fits(sh, prems, conclusion)
            if why is None:
                return None
            reason = reason or why
    return reason


# --------------------------------------------------------------------------
# Derivations
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Step:
    sequent: Sequent
    rule: Optional[RuleInstance] = None      # None marks a hypothesis
    premises: tuple = ()                     # 1-based step numbers


@dataclass(frozen=True)
class Derivation:
    steps: tuple

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    @property
    def conclusion(self) -> Sequent:
        return self.steps[-1].sequent

    @property
    def hypotheses(self) -> frozenset:
        return frozenset(s.sequent for s in self.steps if s.rule is None)


@dataclass(frozen=True)
class CheckReport:
    valid: bool
    step: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.valid

    def __str__(self):
        return "valid" if self.valid else f"invalid at step {self.step}: {self.reason}"


def check_derivation(sys, d: Derivation, hypotheses=()) -> CheckReport:
    """Check every step in order; steps are numbered from 1."""
    sys = system(sys)
    hyps = frozenset(hypotheses)
    if not d.steps:
        return CheckReport(False, 0, "empty derivation")
    for i, st in enumerate(d.steps, start=1):
        if st.rule is None:
            if st.sequent not in hyps:
                return CheckReport(False, i, "hypothesis is not among the given sequents")
            continue
        for j in st.premises:
            if not 1 <= j < i:
                return CheckReport(False, i, f"premise {j} is not an earlier step")
        try:
            why = _rule_failure(sys, st.rule, [d.steps[j - 1].sequent for j in st.premises],
                                st.sequent)
        except RuleError as e:
            return CheckReport(False, i, str(e))
        if why is not None:
            return CheckReport(False, i, f"{st.rule.rule}: {why}")
    return CheckReport(True)


def derives(sys, gamma, delta, d: Derivation) -> bool:
    """Whether ``d`` proves some ``G |- D`` with ``G`` in ``gamma`` and ``D``
    in ``delta``."""
    if not check_derivation(sys, d):
        return False
    c = d.conclusion
    return c.left_keys <= _keys(gamma) and c.right_keys <= _keys(delta)


# --------------------------------------------------------------------------
# Proof files
# --------------------------------------------------------------------------

_STEP_RE = re.compile(r"""\s*(?P<num>\d+)\s*\.\s*
    (?P<rule>[^\s\[:]+)\s*
    (?:\[(?P<wit>[^\]]*)\])?\s*
    (?:from\s+(?P<prem>[0-9,\s]*?))?\s*
    :(?P<seq>.*)$""", re.VERBOSE)
_DECL_RE = re.compile(r"\s*(const|pred|prop|func)\b(.*)$")


def parse_sequent(text: str, sig: Signature) -> Sequent:
    p = Parser(text, sig)
    left = parse_formula_list(p, stop=("|-",))
    p.expect("|-")
    right = parse_formula_list(p)
    p.finish()
    return Sequent(tuple(left), tuple(right))


def _parse_witnesses(text: str, sig: Signature) -> dict:
    out = {}
    for part in filter(None, (s.strip() for s in text.split(";"))):
        key, sep, value = part.partition(":")
        key, value = key.strip(), value.strip()
        if not sep:
            raise ParseError(f"witness {part!r} is not of the form key: value")
        p = Parser(value, sig)
        if key == "A":
            out[key] = p.formula()
        elif key in ("t", "t1", "t2"):
            out[key] = p.term()
        elif key in ("x", "y"):
            out[key] = p.variable_name()
        else:
            raise ParseError(f"unknown witness {key!r}")
        p.finish()
    return out


def _arity_decl(items, kind):
    out = {}
    for item in items:
        name, sep, n = item.partition("/")
        if not sep or not n.isdigit():
            raise ParseError(f"{kind} declaration {item!r} must look like NAME/ARITY")
        out[name] = int(n)
    return out


def load_proof(text: str):
    """Parse a proof file; returns ``(signature, derivation)``.

    The file starts with declarations (``const a b``, ``pred P/1 Q/2``,
    ``prop p q``, ``func f/1``) followed by one step per line::

        1. Id[A: P(a)] : P(a) |- P(a), Q(a)
        2. hyp : p |- q
        3. and-L from 1 : P(a) & R(a) |- P(a), Q(a)

    Blank lines and ``#`` comments are ignored.
    """
    consts, preds, props, funcs = [], {}, [], {}
    steps_src = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _DECL_RE.match(line)
        if m and not steps_src:
            kind, items = m.group(1), m.group(2).split()
            if kind == "const":
                consts += items
            elif kind == "prop":
                props += items
            elif kind == "pred":
                preds.update(_arity_decl(items, kind))
            else:
                funcs.update(_arity_decl(items, kind))
            continue
        steps_src.append((lineno, line))
    sig = Signature(constants=tuple(consts), predicates=preds, functions=funcs,
                    propositions=tuple(props))
    steps = []
    for lineno, line in steps_src:
        try:
            steps.append(_parse_step(line, sig, len(steps) + 1))
        except ParseError as e:
            raise ParseError(f"line {lineno}: {e}") from None
    if not steps:
        raise ParseError("proof file has no steps")
    return sig, Derivation(tuple(steps))


def _parse_step(line, sig, expected) -> Step:
    m = _STEP_RE.match(line)
    if not m:
        raise ParseError(f"cannot read step {line!r}")
    if int(m.group("num")) != expected:
        raise ParseError(f"step numbered {m.group('num')}, expected {expected}")
    seq = parse_sequent(m.group("seq"), sig)
    rule = m.group("rule")
    prem = m.group("prem") or ""
    premises = tuple(int(x) for x in re.split(r"[,\s]+", prem.strip()) if x)
    if rule.lower() == "hyp":
        if premises or m.group("wit"):
            raise ParseError("a hypothesis takes no premises or witnesses")
        return Step(seq)
    try:
        name = rule_name(rule)
    except RuleError as e:
        raise ParseError(str(e)) from None
    wit = _parse_witnesses(m.group("wit") or "", sig)
    return Step(seq, RuleInstance(name, **wit), premises)
