"""Reproduce the bounds table and the growth comparison.

Shows the layer-count factorization behind the closed form, prints the
four bound columns for small sizes, and checks where the new lower bound
overtakes the deterministic-two-way upper bound.
"""
from math import factorial

from ufabound import (asymptotic_floor, count_ordered_prefix_tables, p_count,
                      s_count, stirling2, table1_row)

# The count factors through layer data: a layer function (how high each
# state sits) times a nested set chain (what the layers contain).
n = 4
total = 0
print(f"rank breakdown at n = {n}:")
for k in range(n):
    part = p_count(n, k) * s_count(n, k)
    total += part
    print(f"  rank {k}: {p_count(n, k):4d} layer functions x "
          f"{s_count(n, k):4d} chains = {part}")
print("  total:", total, "==", count_ordered_prefix_tables(n))

# Stirling numbers drive both factors.
print("\nstirling2 row n=5:", [stirling2(5, k) for k in range(6)])

# The four columns: deterministic-two-way to unambiguous (lower/upper),
# this package's nondeterministic-two-way to unambiguous lower bound, and
# the nondeterministic-two-way to deterministic tradeoff.
print("\nn,dfa2ufa_lower,dfa2ufa_upper,nfa2ufa_lower,nfa2dfa")
for size in range(1, 9):
    print(",".join(str(x) for x in (size,) + table1_row(size)))

# From n = 6 on, the new lower bound exceeds 2^n * n!, the best known
# upper bound for the deterministic-two-way variant of the problem.
print("\ncount versus 2^n * n!:")
for size in range(2, 9):
    count = count_ordered_prefix_tables(size)
    other = 2**size * factorial(size)
    marker = ">" if count > other else "<"
    print(f"  n={size}: {count} {marker} {other}"
          f"   (single-term floor {asymptotic_floor(size)})")
