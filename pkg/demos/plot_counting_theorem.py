"""
How many graphs share a coloring
================================

Counts are kept as powers of two, so nothing here overflows.
"""

from gccd.counting import (
    PartitionSpec,
    gamma_max,
    gamma_partition,
    gamma_total,
    oracle_fixed_partition_count,
    oracle_spectrum,
    p1_bound,
    verify_theorem_bound,
)

# Graphs properly colored by a fixed split of the vertices: every
# cross-class pair may or may not be an edge, nothing else may.
p = PartitionSpec.of([3, 2, 1])
print(p, gamma_partition(p), oracle_fixed_partition_count(6, p))

# The balanced split maximises that count.
count, best = gamma_max(9, 3)
print("best split of 9 into 3:", best.parts, count)

# Compare against all graphs: the fraction is at most 2^-(m-n).
for m, n in [(4, 2), (8, 3), (12, 4)]:
    p1, bound = p1_bound(m, n)
    print(m, n, gamma_total(m), "p1 =", p1, "bound =", bound, verify_theorem_bound(m, n))

# The full chromatic spectrum of order-5 graphs, by brute force.
spec = oracle_spectrum(5)
print(spec.counts, spec.total)
