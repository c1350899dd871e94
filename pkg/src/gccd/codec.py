"""Bit strings, labeled graphs and the below-diagonal adjacency codec.

A graph on ``m`` vertices is identified with the bit string of its lower
triangle read row by row: ``a21, a31, a32, a41, a42, a43, ...``.  Vertices are
labeled ``1..m``; linear positions are 0-based.

Payloads whose length is not a triangular number are padded up to the next
order by a deterministic extension that both endpoints regenerate.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

__all__ = [
    "BitString",
    "CodecError",
    "ExtensionPlan",
    "Graph",
    "Padding",
    "bits_to_graph",
    "graph_to_bits",
    "order_for_length",
    "padding_bit",
    "pair_at",
    "pos_of",
    "serialize_symbols",
    "triangle_size",
]


class CodecError(ValueError):
    """Invalid position, length or plan passed to the codec."""


def triangle_size(m: int) -> int:
    return m * (m - 1) // 2


@dataclass(frozen=True)
class BitString:
    """Ordered payload bits with an explicit length.

    Leading zeros are significant: ``BitString.from_str("0011")`` and
    ``BitString.from_str("11")`` are different payloads.
    """

    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise CodecError("bits must be 0 or 1")
        object.__setattr__(self, "bits", bits)

    @classmethod
    def from_str(cls, text: str) -> BitString:
        if any(ch not in "01" for ch in text):
            raise CodecError(f"not a bit literal: {text!r}")
        return cls(tuple(int(ch) for ch in text))

    @classmethod
    def from_int(cls, value: int, length: int) -> BitString:
        """Fixed-width big-endian rendering of a non-negative integer."""
        if value < 0:
            raise CodecError("value must be non-negative")
        if value.bit_length() > length:
            raise CodecError(f"{value} does not fit in {length} bits")
        return cls(tuple((value >> (length - 1 - k)) & 1 for k in range(length)))

    @classmethod
    def from_bytes(cls, data: bytes, length: int) -> BitString:
        """Unpack ``length`` bits, MSB-first; unused trailing bits must be zero."""
        if len(data) != (length + 7) // 8:
            raise CodecError(f"{len(data)} bytes cannot hold exactly {length} bits")
        value = int.from_bytes(data, "big")
        spare = 8 * len(data) - length
        if value & ((1 << spare) - 1):
            raise CodecError("nonzero bits after the end of the payload")
        return cls.from_int(value >> spare, length)

    @property
    def length(self) -> int:
        return len(self.bits)

    def __len__(self) -> int:
        return len(self.bits)

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __getitem__(self, t: int) -> int:
        return self.bits[t]

    def __str__(self) -> str:
        return "".join(map(str, self.bits))

    def to_int(self) -> int:
        value = 0
        for b in self.bits:
            value = (value << 1) | b
        return value

    def to_bytes(self) -> bytes:
        nbytes = (self.length + 7) // 8
        spare = 8 * nbytes - self.length
        return (self.to_int() << spare).to_bytes(nbytes, "big")

    def flipped(self, positions: Iterable[int]) -> BitString:
        bits = list(self.bits)
        for t in positions:
            bits[t] ^= 1
        return BitString(tuple(bits))


def _norm_edge(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i > j else (j, i)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``1..order``.

    Edges are stored once as ``(i, j)`` with ``i > j``, mirroring the
    below-diagonal entry ``a_ij``.
    """

    order: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.order < 1:
            raise CodecError("graph order must be positive")
        norm = set()
        for i, j in self.edges:
            if i == j:
                raise CodecError(f"self-loop at vertex {i}")
            if not (1 <= i <= self.order and 1 <= j <= self.order):
                raise CodecError(f"edge ({i}, {j}) outside 1..{self.order}")
            norm.add(_norm_edge(i, j))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_index(cls, m: int, index: int) -> Graph:
        """Graph whose edge at linear position ``t`` is bit ``t`` of ``index``."""
        edges = []
        t = 0
        for i in range(2, m + 1):
            for j in range(1, i):
                if (index >> t) & 1:
                    edges.append((i, j))
                t += 1
        return cls(m, frozenset(edges))

    @classmethod
    def empty(cls, m: int) -> Graph:
        return cls(m)

    @classmethod
    def complete(cls, m: int) -> Graph:
        return cls(m, frozenset((i, j) for i in range(2, m + 1) for j in range(1, i)))

    @classmethod
    def cycle(cls, m: int) -> Graph:
        if m < 3:
            raise CodecError("a cycle needs at least 3 vertices")
        return cls(m, frozenset((v % m + 1, v) for v in range(1, m + 1)))

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhoods as 0-based bitmasks: bit ``u-1`` of ``masks[v-1]``."""
        masks = [0] * self.order
        for i, j in self.edges:
            masks[i - 1] |= 1 << (j - 1)
            masks[j - 1] |= 1 << (i - 1)
        return tuple(masks)

    @property
    def size(self) -> int:
        return len(self.edges)

    def has_edge(self, i: int, j: int) -> bool:
        return _norm_edge(i, j) in self.edges

    def degree(self, v: int) -> int:
        return self.masks[v - 1].bit_count()

    def max_degree(self) -> int:
        return max(self.degree(v) for v in range(1, self.order + 1))

    def neighbors(self, v: int) -> list[int]:
        mask = self.masks[v - 1]
        return [u for u in range(1, self.order + 1) if (mask >> (u - 1)) & 1]

    def without_edge(self, i: int, j: int) -> Graph:
        return Graph(self.order, self.edges - {_norm_edge(i, j)})

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for start in range(self.order):
            if (seen >> start) & 1:
                continue
            comp = 1 << start
            frontier = comp
            while frontier:
                low = frontier & -frontier
                frontier ^= low
                nbrs = self.masks[low.bit_length() - 1] & ~comp
                comp |= nbrs
                frontier |= nbrs
            seen |= comp
            comps.append([v + 1 for v in range(self.order) if (comp >> v) & 1])
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def to_index(self) -> int:
        return sum(1 << pos_of(i, j, self.order) for i, j in self.edges)


def pos_of(i: int, j: int, m: int) -> int:
    """Linear index of entry ``a_ij`` (``1 <= j < i <= m``)."""
    if not (1 <= j < i <= m):
        raise CodecError(f"no below-diagonal entry ({i}, {j}) in order {m}")
    return (i - 1) * (i - 2) // 2 + (j - 1)


def pair_at(t: int, m: int) -> tuple[int, int]:
    """Inverse of :func:`pos_of`."""
    if not (0 <= t < triangle_size(m)):
        raise CodecError(f"position {t} outside order-{m} triangle")
    # largest i with (i-1)(i-2)/2 <= t
    i = (3 + math.isqrt(8 * t + 1)) // 2
    while (i - 1) * (i - 2) // 2 > t:
        i -= 1
    while i * (i - 1) // 2 <= t:
        i += 1
    return i, t - (i - 1) * (i - 2) // 2 + 1


def order_for_length(l: int) -> tuple[int, int]:
    """Smallest order whose triangle holds ``l`` bits, and the slack left over."""
    if l < 1:
        raise CodecError("empty payloads are not supported")
    m = (1 + math.isqrt(8 * l + 1)) // 2
    while triangle_size(m) < l:
        m += 1
    return m, triangle_size(m) - l


class Padding(enum.Enum):
    ZERO_FILL = 0
    CLIQUE_PIN = 1


@dataclass(frozen=True)
class ExtensionPlan:
    payload_len: int
    payload_order: int
    total_order: int
    mode: Padding = Padding.ZERO_FILL
    pin_size: int = 0

    @classmethod
    def build(cls, l: int, mode: Padding = Padding.ZERO_FILL, pin_size: int = 0) -> ExtensionPlan:
        m0, _ = order_for_length(l)
        if mode is Padding.ZERO_FILL:
            if pin_size:
                raise CodecError("zero-fill padding takes no pin size")
            return cls(l, m0, m0, mode, 0)
        if pin_size < 1:
            raise CodecError("clique pinning needs pin_size >= 1")
        return cls(l, m0, m0 + pin_size, mode, pin_size)

    def __post_init__(self) -> None:
        m0, _ = order_for_length(self.payload_len)
        expected = m0 + (self.pin_size if self.mode is Padding.CLIQUE_PIN else 0)
        if self.payload_order != m0 or self.total_order != expected:
            raise CodecError("inconsistent extension plan")
        if self.mode is Padding.ZERO_FILL and self.pin_size != 0:
            raise CodecError("zero-fill padding takes no pin size")
        if self.mode is Padding.CLIQUE_PIN and self.pin_size < 1:
            raise CodecError("clique pinning needs pin_size >= 1")

    @property
    def capacity(self) -> int:
        return triangle_size(self.total_order)


def padding_bit(plan: ExtensionPlan, t: int) -> int:
    if not (plan.payload_len <= t < plan.capacity):
        raise CodecError(f"position {t} is not a padding position")
    if plan.mode is Padding.ZERO_FILL:
        return 0
    i, j = pair_at(t, plan.total_order)
    first_pinned = plan.total_order - plan.pin_size + 1
    return int(j >= first_pinned)


def bits_to_graph(b: BitString, plan: ExtensionPlan) -> Graph:
    if b.length != plan.payload_len:
        raise CodecError(f"payload has {b.length} bits, plan expects {plan.payload_len}")
    m = plan.total_order
    edges = []
    t = 0
    for i in range(2, m + 1):
        for j in range(1, i):
            bit = b.bits[t] if t < plan.payload_len else padding_bit(plan, t)
            if bit:
                edges.append((i, j))
            t += 1
    return Graph(m, frozenset(edges))


def graph_to_bits(g: Graph, l: int) -> BitString:
    if l > triangle_size(g.order):
        raise CodecError(f"{l} bits exceed the order-{g.order} triangle")
    return BitString(tuple(int(g.has_edge(*pair_at(t, g.order))) for t in range(l)))


def serialize_symbols(g: Graph, coloring: Sequence[int]) -> tuple[int, ...]:
    """All below-diagonal bits followed by the diagonal color values."""
    colors = tuple(getattr(coloring, "colors", coloring))
    if len(colors) != g.order:
        raise CodecError(f"coloring has {len(colors)} entries for {g.order} vertices")
    return graph_to_bits(g, triangle_size(g.order)).bits + colors
