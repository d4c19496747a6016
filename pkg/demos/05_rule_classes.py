"""The 256 elementary rules fall into 88 classes under reflection and
negation.  Rules in one class have the same number of dynamics at every
size, so only representatives need to be scanned.
"""

from collections import Counter

from sensync.rule import LocalRule, classes
from sensync.sensitivity import classify, count_distinct_dynamics

table = classes()
print(len(table), "classes; orbit sizes:", dict(Counter(len(m) for m in table.values())))

for rep in (8, 30, 128, 170):
    members = sorted(table[rep])
    counts = {w: count_distinct_dynamics(w, 5) for w in members}
    print(f"class of {rep:>3} ({classify(rep)}): {counts}  symmetric={LocalRule(rep).is_symmetric()}")
