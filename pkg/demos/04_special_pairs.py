"""Special pairs: two schedules that are not equivalent yet give the same
dynamics.  Rules 128, 162 and 160 have exactly 10n, n and 12n of them once
the ring is large enough, and every pair differs on a single arc.
"""

from sensync.special import find_special_pairs, verify_closure

for rule, n in [(128, 6), (128, 7), (128, 8), (162, 6), (162, 8), (160, 9)]:
    s = find_special_pairs(rule, n)
    sizes = dict(sorted(s.class_sizes.items()))
    print(f"rule {rule:>3}  n={n}  pairs={len(s):>4}  per cell={len(s) / n:g}  "
          f"disjoint={s.disjoint}  closed={verify_closure(s, rule)}  classes={sizes}")

print()
print("first few pairs for rule 162, n=6:")
for p in list(find_special_pairs(162, 6))[:3]:
    print("  ", p.lab_a.to_hex(), p.lab_b.to_hex(), "differ on", p.differing_arcs)
