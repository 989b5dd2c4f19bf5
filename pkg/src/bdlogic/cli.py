"""Command-line front end.

Exit status: 0 success, 1 invalid proof, 2 unreadable or malformed input,
3 input that parses but is not valid (undeclared symbols, bad queries,
non-relational languages ...), 4 a resource ceiling was hit.
"""

from __future__ import annotations

import argparse
import sys
import warnings

from . import database as dbm
from . import query as qm
from .errors import BDError, ParseError, ResourceLimitError, RuleError, SignatureError, \
    ValidationError
from .formats import load_database, parse_query
from .parser import parse_formula
from .proof import SYSTEMS, check_derivation, load_proof
from .semantics import eval_formula
from .syntax import formula_text, free_vars

EXIT_OK, EXIT_INVALID_PROOF, EXIT_PARSE, EXIT_VALIDATION, EXIT_RESOURCE = 0, 1, 2, 3, 4


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None


def _fact_set(lang, facts) -> str:
    return "{" + ", ".join(formula_text(a) for a in lang.sorted_facts(facts)) + "}"


def _cmd_check(args, out):
    dbf = load_database(_read(args.file))
    db = dbf.db
    if args.literal:
        rep = dbm.literal_report(db.lang, db.basis, db.constraints)
        if not rep.satisfiable:
            print("note: no model of the theory satisfies the constraints; "
                  "consistency holds vacuously", file=sys.stderr)
    else:
        rep = dbm.consistency_report(db.lang, db.basis, db.constraints)
    if rep.consistent:
        out.append("consistent")
        return EXIT_OK
    out.append("inconsistent")
    if rep.witness is not None:
        out.append(f"witness: {formula_text(rep.witness)}")
    if rep.constraint is not None:
        out.append(f"constraint: {formula_text(rep.constraint)}")
        if rep.assignment:
            out.append("assignment: " + ", ".join(f"{x}={c}"
                                                  for x, c in sorted(rep.assignment.items())))
    return EXIT_OK


def _get_query(dbf, spec):
    if ":-" in spec:
        return parse_query(spec, dbf.db.lang)
    try:
        return dbf.queries[spec]
    except KeyError:
        raise ValidationError(f"no query named {spec!r} in the database file") from None


def _cmd_answer(args, out):
    dbf = load_database(_read(args.file))
    db, q = dbf.db, _get_query(dbf, args.query)
    nulls = not args.no_nulls
    if args.mode == "plain":
        result = qm.answers(db, q, nulls)
    elif args.mode == "consistent":
        result = (qm.consistent_answers_literal(db, q, nulls) if args.literal
                  else qm.consistent_answers(db, q, nulls))
    else:
        rs = (qm.repairs_literal(db, args.max_universe) if args.literal
              else qm.repairs(db, max_nodes=args.max_nodes))
        if not rs:
            print("note: there are no repairs; every tuple qualifies vacuously", file=sys.stderr)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", qm.NoRepairsWarning)
            result = qm.strongly_consistent_answers(db, q, nulls, repair_list=rs)
    for t in qm.sort_tuples(db.lang, result):
        out.append(", ".join(t) if t else "()")
    return EXIT_OK


def _cmd_repairs(args, out):
    db = load_database(_read(args.file)).db
    if args.literal:
        rs = qm.repairs_literal(db, args.max_universe)
    else:
        rs = qm.repairs(db, exhaustive=args.exhaustive, max_universe=args.max_universe,
                        max_nodes=args.max_nodes)
    if not rs:
        print("note: no basis is consistent with the constraints", file=sys.stderr)
    for r in rs:
        out.append(_fact_set(db.lang, r))
    return EXIT_OK


def _cmd_prove(args, out):
    _, d = load_proof(_read(args.file))
    report = check_derivation(args.system, d, d.hypotheses)
    out.append(str(report))
    return EXIT_OK if report.valid else EXIT_INVALID_PROOF


def _cmd_eval(args, out):
    db = load_database(_read(args.file)).db
    a = parse_formula(args.formula, db.lang.sig)
    if free_vars(a):
        raise ValidationError(f"formula has free variables {sorted(free_vars(a))}")
    facts = db.lang.sorted_facts(db.basis)
    for s in dbm.canonical_models(db.lang, db.basis, args.max_structures):
        label = ", ".join(f"{formula_text(f)}={s.predicates[f.pred][db.lang.key(f)[1]]}"
                          for f in facts) or "(no facts)"
        out.append(f"{label}: {eval_formula(s, {}, a)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bdlogic",
        description="Four-valued first-order logic: proof checking and query answering "
                    "over possibly inconsistent databases with null values.")
    ap.add_argument("--max-structures", type=int, default=dbm.DEFAULT_MAX_STRUCTURES,
                    help="ceiling on structures enumerated (default %(default)s)")
    ap.add_argument("--max-universe", type=int, default=qm.DEFAULT_MAX_UNIVERSE,
                    help="ceiling on candidate atoms for exhaustive repair search "
                         "(default %(default)s)")
    ap.add_argument("--max-nodes", type=int, default=qm.DEFAULT_MAX_NODES,
                    help="ceiling on bases visited by the conflict-directed repair search "
                         "(default %(default)s)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="report whether a database is consistent")
    p.add_argument("file")
    p.add_argument("--literal", action="store_true",
                   help="use the unrestricted consistency test over all models")
    p.set_defaults(run=_cmd_check)

    p = sub.add_parser("answer", help="answer a query")
    p.add_argument("file")
    p.add_argument("--query", required=True,
                   help="name of a query in the file, or a definition NAME(x) :- FORMULA")
    p.add_argument("--mode", choices=("plain", "consistent", "strong"), default="plain")
    p.add_argument("--no-nulls", action="store_true", help="drop tuples containing nil")
    p.add_argument("--literal", action="store_true",
                   help="use the unrestricted consistency test")
    p.set_defaults(run=_cmd_answer)

    p = sub.add_parser("repairs", help="list the repairs of a database")
    p.add_argument("file")
    p.add_argument("--exhaustive", action="store_true",
                   help="try every subset of the atom universe")
    p.add_argument("--literal", action="store_true",
                   help="use the unrestricted consistency test (exhaustive)")
    p.set_defaults(run=_cmd_repairs)

    p = sub.add_parser("prove", help="check a derivation")
    p.add_argument("file")
    p.add_argument("--system", choices=sorted(SYSTEMS), default="bd")
    p.set_defaults(run=_cmd_prove)

    p = sub.add_parser("eval", help="evaluate a closed formula in every model of the theory")
    p.add_argument("file")
    p.add_argument("--formula", required=True)
    p.set_defaults(run=_cmd_eval)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out: list = []
    try:
        status = args.run(args, out)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValidationError, SignatureError, RuleError) as e:
        print(f"invalid input: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except BDError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    for line in out:
        print(line)
    return status


if __name__ == "__main__":
    sys.exit(main())
