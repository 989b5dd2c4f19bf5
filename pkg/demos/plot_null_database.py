"""
Querying an inconsistent database with nulls
============================================

Four facts over ``P(x, y, z)``, where ``y`` should be determined by ``x``.
The three ``a`` rows disagree, and two of them have a null in the ``y``
column.  Whether those rows conflict depends on how the constraint
compares the ``y`` values.
"""

from pathlib import Path

import bdlogic as bd
from bdlogic.database import consistency_report
from bdlogic.formats import load_database

here = Path(__file__).parent / "data"

for name in ("nulls_fd.db", "nulls_fd_strong.db"):
    f = load_database((here / name).read_text())
    db, q = f.db, f.queries["q"]
    print(name)

    # The model that takes every fact at face value breaks the constraint.
    rep = consistency_report(db.lang, db.basis, db.constraints)
    print("  consistent:", rep.consistent, " witness:", rep.witness)

    # Repairs: closest bases that satisfy the constraint.
    for r in bd.repairs(db):
        print("  repair:", sorted(map(str, r)))

    print("  answers:             ", sorted(bd.answers(db, q)))
    print("  consistent answers:  ", sorted(bd.consistent_answers(db, q)))
    print("  strongly consistent: ", sorted(bd.strongly_consistent_answers(db, q)))

# With ``=`` a null never equals itself, so any row with a null in the
# ``y`` column clashes with itself and only P(a, b, nil) can stay.  With
# ``==`` two nulls are equal, and the two null rows may stay together.
