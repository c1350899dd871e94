"""
Bit strings as graphs
=====================

A payload is read as the lower triangle of an adjacency matrix, row by row.
"""

from gccd.codec import BitString, ExtensionPlan, Padding, bits_to_graph, graph_to_bits, pair_at

# Seven bits do not fill a triangle, so the smallest fitting order is 5
# and three padding bits are appended.
payload = BitString.from_str("1011001")
plan = ExtensionPlan.build(payload.length)
print(plan)

g = bits_to_graph(payload, plan)
for t, bit in enumerate(payload):
    print(t, pair_at(t, plan.total_order), bit)
print("edges:", sorted(g.edges))

# Decoding keeps only the first l positions, so padding never leaks back.
assert graph_to_bits(g, payload.length) == payload

# Pinning a clique on the last vertices forces a floor on the chromatic number.
pinned = ExtensionPlan.build(payload.length, Padding.CLIQUE_PIN, 3)
print(pinned, sorted(bits_to_graph(payload, pinned).edges)[-3:])
