"""Reading database files.

One declaration per line; ``#`` starts a comment::

    const a b c d
    pred P/3
    fact P(a, b, nil)
    constraint forall x, y, z, y', z'. P(x,y,z) & P(x,y',z') => y = y'
    query q(x) :- exists y, z, z'. P(x,y,z) & P(x,y,z') & z != z'

``nil`` is always declared.  ``const`` and ``pred`` lines may appear
anywhere; every other line is read against the full set of declarations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .database import Database, FactBase, RelationalLanguage
from .errors import BDError, ParseError
from .parser import Parser, parse_formula
from .query import Query, check_query
from .syntax import Signature

_QUERY_RE = re.compile(r"\s*(?P<name>[A-Za-z_][A-Za-z0-9_']*)\s*"
                       r"(?:\((?P<head>[^)]*)\))?\s*:-(?P<body>.*)$")


@dataclass(frozen=True)
class DatabaseFile:
    db: Database
    queries: dict = field(default_factory=dict)


def _arity(item):
    name, sep, n = item.partition("/")
    if not sep or not n.isdigit():
        raise ParseError(f"predicate declaration {item!r} must look like NAME/ARITY")
    return name, int(n)


def parse_query(text: str, lang: RelationalLanguage) -> Query:
    m = _QUERY_RE.match(text)
    if not m:
        raise ParseError(f"cannot read query {text!r}; expected NAME(x1, ..., xn) :- FORMULA")
    head = tuple(v.strip() for v in (m.group("head") or "").split(",") if v.strip())
    q = Query(head, parse_formula(m.group("body"), lang.sig), m.group("name"))
    check_query(q, lang)
    return q


def load_database(text: str) -> DatabaseFile:
    consts, preds, rest = [], {}, []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, body = line.partition(" ")
        if keyword == "const":
            consts += body.split()
        elif keyword == "pred":
            for item in body.split():
                try:
                    name, n = _arity(item)
                except ParseError as e:
                    raise ParseError(f"line {lineno}: {e}") from None
                preds[name] = n
        elif keyword in ("fact", "constraint", "query"):
            rest.append((lineno, keyword, body))
        else:
            raise ParseError(f"line {lineno}: unknown declaration {keyword!r}")
    lang = RelationalLanguage(Signature(constants=tuple(consts), predicates=preds))
    facts, constraints, queries = [], [], {}
    for lineno, keyword, body in rest:
        try:
            if keyword == "fact":
                p = Parser(body, lang.sig)
                a = p.formula()
                p.finish()
                facts.append(lang.check_fact(a))
            elif keyword == "constraint":
                constraints.append(parse_formula(body, lang.sig))
            else:
                q = parse_query(body, lang)
                if q.name in queries:
                    raise ParseError(f"query {q.name!r} defined twice")
                queries[q.name] = q
        except BDError as e:
            raise type(e)(f"line {lineno}: {e}") from None
    return DatabaseFile(Database(lang, FactBase(frozenset(facts)), tuple(constraints)), queries)
