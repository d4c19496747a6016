"""Rule 8 sits between the classes: its number of dynamics grows like
phi^(2n), the Lucas numbers at even index, minus 2^n.

Three routes to the same number: brute-force enumeration, the Lucas
recurrence, and the weighted sum over cyclic words of + and -.
"""

from sensync.oracle import cyclic_word_sum
from sensync.sensitivity import count_distinct_dynamics, lucas_bisection

print(" n  enumerated  L(2n)-2^n  words-2^n")
for n in range(5, 10):
    d = count_distinct_dynamics(8, n)
    print(f"{n:>2}  {d:>10}  {lucas_bisection(n) - 2**n:>9}  {cyclic_word_sum(n) - 2**n:>9}")
