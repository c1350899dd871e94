"""Graph-coloring check digits: encode a payload, verify a received one.

The sender turns payload ``D`` into a graph, finds its chromatic number ``n``
and the canonical minimal coloring, and sends ``{D, colors}``.  The receiver
rebuilds the graph from ``D'`` and accepts only if the received colors are
still a proper ``n``-coloring and the graph is not ``(n-1)``-colorable.

Acceptance means "verification passed"; it does not prove ``D' == D``.

Wire format (big-endian)::

    magic "GCCD" | version u8 | mode u8 | m u16 | n u16 | pin_size u16
    | payload_bit_len u64 | colors m x u16 | payload ceil(l/8) bytes

Payload bytes are MSB-first with bit 0 = a21 and unused trailing bits zero.
"""

from __future__ import annotations

import enum
import struct
from dataclasses import dataclass, replace
from typing import Optional

from .codec import BitString, CodecError, ExtensionPlan, Padding, bits_to_graph
from .coloring import DEFAULT_MAX_ORDER, Coloring, ColoringError, chromatic_number, is_k_colorable, is_proper

__all__ = [
    "BadHeader",
    "BadMagic",
    "BadVersion",
    "CheckedMessage",
    "ColorOutOfRange",
    "LengthMismatch",
    "MAGIC",
    "Stage",
    "TrailingGarbage",
    "VERSION",
    "VerificationOutcome",
    "WireFormatError",
    "encode",
    "parse_message",
    "serialize_message",
    "verify",
]

MAGIC = b"GCCD"
VERSION = 1
_HEADER = struct.Struct(">4sBBHHHQ")


class WireFormatError(ValueError):
    pass


class BadMagic(WireFormatError):
    pass


class BadVersion(WireFormatError):
    pass


class BadHeader(WireFormatError):
    """Header fields that disagree with each other."""


class ColorOutOfRange(WireFormatError):
    pass


class LengthMismatch(WireFormatError):
    pass


class TrailingGarbage(WireFormatError):
    pass


@dataclass(frozen=True)
class CheckedMessage:
    """Payload plus check digits.

    Only the structure is validated on construction; a received message may
    carry a corrupted payload, which is what :func:`verify` is for.
    """

    payload: BitString
    plan: ExtensionPlan
    n: int
    colors: Coloring

    def with_payload(self, payload: BitString) -> CheckedMessage:
        return replace(self, payload=payload)

    def structural_problem(self) -> Optional[str]:
        if self.payload.length != self.plan.payload_len:
            return f"payload has {self.payload.length} bits, header says {self.plan.payload_len}"
        if len(self.colors) != self.plan.total_order:
            return f"{len(self.colors)} colors for {self.plan.total_order} vertices"
        if not 1 <= self.n <= self.plan.total_order:
            return f"chromatic number {self.n} impossible for order {self.plan.total_order}"
        return None


class Stage(enum.Enum):
    MALFORMED = "malformed"
    IMPROPER_COLORING = "improper_coloring"
    CHROMATIC_DROP = "chromatic_drop"


@dataclass(frozen=True)
class VerificationOutcome:
    stage: Optional[Stage] = None
    detail: str = ""

    @property
    def accepted(self) -> bool:
        return self.stage is None

    @property
    def verdict(self) -> str:
        return "accepted" if self.accepted else "error_detected"

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "stage": None if self.stage is None else self.stage.value,
            "detail": self.detail,
        }


def encode(
    payload: BitString,
    mode: Padding = Padding.ZERO_FILL,
    pin_size: int = 0,
    max_order: int = DEFAULT_MAX_ORDER,
) -> CheckedMessage:
    if payload.length == 0:
        raise CodecError("empty payloads are not supported")
    plan = ExtensionPlan.build(payload.length, mode, pin_size)
    cert = chromatic_number(bits_to_graph(payload, plan), max_order=max_order)
    return CheckedMessage(payload, plan, cert.n, cert.witness)


def verify(msg: CheckedMessage) -> VerificationOutcome:
    problem = msg.structural_problem()
    if problem:
        return VerificationOutcome(Stage.MALFORMED, problem)
    g = bits_to_graph(msg.payload, msg.plan)
    check = Coloring(msg.colors.colors, max(msg.colors.k, msg.n))
    if any(c >= msg.n for c in check.colors) or not is_proper(g, check):
        return VerificationOutcome(Stage.IMPROPER_COLORING, f"colors are not a proper {msg.n}-coloring")
    if is_k_colorable(g, msg.n - 1) is not None:
        return VerificationOutcome(Stage.CHROMATIC_DROP, f"graph is {msg.n - 1}-colorable")
    return VerificationOutcome()


def serialize_message(msg: CheckedMessage) -> bytes:
    plan = msg.plan
    head = _HEADER.pack(MAGIC, VERSION, plan.mode.value, plan.total_order, msg.n, plan.pin_size, plan.payload_len)
    colors = struct.pack(f">{len(msg.colors)}H", *msg.colors.colors)
    return head + colors + msg.payload.to_bytes()


def parse_message(data: bytes) -> CheckedMessage:
    """Decode and structurally validate a wire-format message.

    The coloring is not checked against the payload here; that is
    :func:`verify`'s job.
    """
    if len(data) < 4 or data[:4] != MAGIC:
        raise BadMagic("missing GCCD magic")
    if len(data) < _HEADER.size:
        raise LengthMismatch(f"header needs {_HEADER.size} bytes, got {len(data)}")
    _, version, mode_byte, m, n, pin_size, l = _HEADER.unpack_from(data)
    if version != VERSION:
        raise BadVersion(f"unsupported version {version}")
    try:
        mode = Padding(mode_byte)
    except ValueError:
        raise BadHeader(f"unknown padding mode {mode_byte}") from None
    if l == 0:
        raise BadHeader("empty payload")
    try:
        plan = ExtensionPlan.build(l, mode, pin_size)
    except CodecError as exc:
        raise BadHeader(str(exc)) from None
    if plan.total_order != m:
        raise BadHeader(f"order {m} does not match a {l}-bit payload (expected {plan.total_order})")
    if not 1 <= n <= m:
        raise BadHeader(f"chromatic number {n} impossible for order {m}")

    expected = _HEADER.size + 2 * m + (l + 7) // 8
    if len(data) < expected:
        raise LengthMismatch(f"message needs {expected} bytes, got {len(data)}")
    if len(data) > expected:
        raise TrailingGarbage(f"{len(data) - expected} bytes after the payload")
    colors = struct.unpack_from(f">{m}H", data, _HEADER.size)
    if any(c >= n for c in colors):
        raise ColorOutOfRange(f"color values {sorted(set(c for c in colors if c >= n))} not below {n}")
    if len(set(colors)) != n:
        raise BadHeader(f"minimal {n}-coloring uses {len(set(colors))} colors")
    try:
        payload = BitString.from_bytes(data[_HEADER.size + 2 * m:], l)
    except CodecError as exc:
        raise TrailingGarbage(str(exc)) from None
    try:
        return CheckedMessage(payload, plan, n, Coloring(colors, n))
    except ColoringError as exc:  # pragma: no cover - ranges checked above
        raise ColorOutOfRange(str(exc)) from None
