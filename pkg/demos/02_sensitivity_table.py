"""Sensitivity to synchronism for the 19 rules that are not maximally sensitive.

For each rule and ring size the number of distinct dynamics is counted over
all valid labelings and compared with the closed form for its class.
"""

from sensync.cli import format_rows, scan_rows
from sensync.sensitivity import NONMAX_19

rows = scan_rows(NONMAX_19, range(3, 9))
print(format_rows(rows, "csv"), end="")

# a compact view: one line per rule, sensitivity as n grows
print()
for w in NONMAX_19:
    vals = [r.sensitivity_float for r in rows if r.rule == w]
    cls = next(r.klass for r in rows if r.rule == w)
    print(f"{w:>4} {cls:>4}  " + "  ".join(vals))
