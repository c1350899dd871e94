"""
Coloring as a check digit
=========================
"""

from gccd.codec import BitString
from gccd.scheme import encode, parse_message, serialize_message, verify

msg = encode(BitString.from_str("110"))
print("n =", msg.n, "colors =", msg.colors.colors)

wire = serialize_message(msg)
print(wire.hex(" "))
assert parse_message(wire) == msg

# Every alternative payload of the same length, run through the verifier.
for value in range(8):
    received = BitString.from_int(value, 3)
    if received == msg.payload:
        continue
    out = verify(msg.with_payload(received))
    print(received, out.verdict, out.stage.value if out.stage else "")
