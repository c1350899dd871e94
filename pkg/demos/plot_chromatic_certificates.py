"""
Exact chromatic numbers with certificates
=========================================
"""

from gccd.codec import Graph
from gccd.coloring import brooks_bound, chromatic_number, clique_lower, dsatur_upper, is_k_colorable

# The solver squeezes chi between a clique and a greedy coloring, then
# closes the gap with backtracking.
for name, g in [("C5", Graph.cycle(5)), ("C6", Graph.cycle(6)), ("K4", Graph.complete(4))]:
    cert = chromatic_number(g)
    print(
        name,
        "clique", clique_lower(g).size,
        "dsatur", dsatur_upper(g).used,
        "brooks", brooks_bound(g),
        "chi", cert.n,
        "witness", cert.witness.colors,
    )
    # one color fewer is refuted, which is what makes the number a certificate
    assert is_k_colorable(g, cert.n - 1) is None

# Graphs beyond the order guard are refused unless the caller raises it.
big = Graph.empty(30)
print(chromatic_number(big, max_order=30).n)
