"""The null-value functional-dependency database used across the tests."""

from bdlogic.formats import load_database

TEXT = """\
const a b c d
pred P/3
fact P(a, b, nil)
fact P(a, nil, c)
fact P(a, nil, d)
fact P(b, c, d)
constraint forall x, y, z, y', z'. P(x,y,z) & P(x,y',z') => y {rel} y'
query q(x) :- exists y, z, z'. P(x,y,z) & P(x,y,z') & z != z'
"""


def text(strong=False):
    return TEXT.format(rel="==" if strong else "=")


def load(strong=False):
    """``(db, query)`` for the plain-equality or strong-equality variant."""
    f = load_database(text(strong))
    return f.db, f.queries["q"]
