"""One block-sequential step of rule 128 on a ring of six cells.

The schedule updates cells 1, 2, 3 together, then 0 and 4, then 5.  Cells
updated later see the new values of their neighbours, so the result differs
from the synchronous update.  The schedule is then reduced to its arc
labeling, which is all the dynamics depends on.
"""

from sensync import OrderedPartition, label_of, realize, step

n = 6
delta = OrderedPartition.of({1, 2, 3}, {0, 4}, {5})
x = 0b110111  # cell i is bit i, so this reads 111011 from cell 0


def show(v):
    return "".join(str((v >> i) & 1) for i in range(n))


print("schedule      ", delta)
print("start         ", show(x))
print("block update  ", show(step(128, delta, x)))
print("synchronous   ", show(step(128, OrderedPartition.sync(n), x)))

lab = label_of(delta)
print()
print("arc labeling  ", lab.to_hex())
print("   ", "  ".join(f"{i}->{j}:{sign}" for (i, j), sign in lab.labels.items()))
canon = realize(lab)
print("canonical schedule with the same labeling:", canon)
same = all(step(128, canon, v) == step(128, delta, v) for v in range(1 << n))
print("identical dynamics:", same)
