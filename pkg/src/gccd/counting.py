"""Exact counts of labeled graphs that a given class partition colors properly.

Every count here is a power of two, so counts are carried as exponents and
probabilities as negative exponents.  Integers are only materialised when a
caller asks for ``.value``.

The brute-force oracles enumerate all ``2**C(m,2)`` labeled graphs of a small
order as integers whose bit ``t`` is the edge at linear position ``t``.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .codec import pos_of, triangle_size

__all__ = [
    "ChromaticSpectrum",
    "DyadicProbability",
    "PartitionSpec",
    "PowerOfTwoCount",
    "cross_pairs_exponent",
    "gamma_max",
    "gamma_partition",
    "gamma_total",
    "oracle_fixed_partition_count",
    "oracle_spectrum",
    "overhead_ratio",
    "p1_bound",
    "partitions_into",
    "set_partitions",
    "verify_theorem_bound",
]

ORACLE_SPECTRUM_MAX_ORDER = 7
ORACLE_PARTITION_MAX_ORDER = 6


@dataclass(frozen=True)
class PartitionSpec:
    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(int(x) for x in self.parts)
        if not parts or any(x < 1 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be nonincreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts: Sequence[int]) -> PartitionSpec:
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def m(self) -> int:
        return sum(self.parts)

    @property
    def n(self) -> int:
        return len(self.parts)

    def labels(self) -> list[int]:
        """Canonical class assignment: the first ``x1`` vertices get class 0, and so on."""
        out = []
        for cls_, size in enumerate(self.parts):
            out.extend([cls_] * size)
        return out


@functools.total_ordering
@dataclass(frozen=True)
class PowerOfTwoCount:
    exponent: int

    @property
    def value(self) -> int:
        return 1 << self.exponent

    def __lt__(self, other: PowerOfTwoCount) -> bool:
        return self.exponent < other.exponent

    def __truediv__(self, other: PowerOfTwoCount) -> DyadicProbability:
        return DyadicProbability(other.exponent - self.exponent)

    def __str__(self) -> str:
        return f"2^{self.exponent}"


@functools.total_ordering
@dataclass(frozen=True)
class DyadicProbability:
    """The value ``2**-neg_exponent``."""

    neg_exponent: int

    def __post_init__(self) -> None:
        if self.neg_exponent < 0:
            raise ValueError("probabilities cannot exceed 1")

    @property
    def value(self) -> Fraction:
        return Fraction(1, 1 << self.neg_exponent)

    def __float__(self) -> float:
        return 2.0 ** -self.neg_exponent

    def __lt__(self, other: DyadicProbability) -> bool:
        # smaller value means larger exponent
        return self.neg_exponent > other.neg_exponent

    def __str__(self) -> str:
        return f"2^-{self.neg_exponent}"


@dataclass(frozen=True)
class ChromaticSpectrum:
    m: int
    counts: tuple[int, ...]  # counts[n - 1] graphs with chromatic number n

    def __getitem__(self, n: int) -> int:
        return self.counts[n - 1]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def at_most(self, n: int) -> int:
        return sum(self.counts[:n])


def gamma_total(m: int) -> PowerOfTwoCount:
    if m < 1:
        raise ValueError("order must be positive")
    return PowerOfTwoCount(triangle_size(m))


def _partitions(m: int, n: int, cap: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        if m == 0:
            yield ()
        return
    # largest part first, so the output is reverse-lexicographic
    for first in range(min(cap, m - n + 1), 0, -1):
        if first * n < m:
            break
        for rest in _partitions(m - first, n - 1, first):
            yield (first,) + rest


def partitions_into(m: int, n: int) -> list[PartitionSpec]:
    if not 1 <= n <= m:
        raise ValueError(f"cannot split {m} into {n} positive parts")
    return [PartitionSpec(p) for p in _partitions(m, n, m)]


def cross_pairs_exponent(p: PartitionSpec) -> int:
    """Number of vertex pairs lying in different classes.

    Summed term by term as ``(x2+...+xn)x1 + (x3+...+xn)x2 + ...`` and checked
    against ``C(m,2) - sum C(xi,2)``.
    """
    xs = p.parts
    literal = sum(sum(xs[j + 1:]) * xs[j] for j in range(len(xs) - 1))
    identity = comb(p.m, 2) - sum(comb(x, 2) for x in xs)
    if literal != identity:
        raise RuntimeError(f"cross-pair identity violated for {xs}: {literal} != {identity}")
    return literal


def gamma_partition(p: PartitionSpec) -> PowerOfTwoCount:
    return PowerOfTwoCount(cross_pairs_exponent(p))


def _balanced(m: int, n: int) -> PartitionSpec:
    q, r = divmod(m, n)
    return PartitionSpec((q + 1,) * r + (q,) * (n - r))


@functools.lru_cache(maxsize=None)
def _min_intra_pairs(s: int, k: int) -> tuple[int, tuple[int, ...]]:
    """Fewest same-class pairs over splits of ``s`` into ``k`` positive parts."""
    if k == 1:
        return comb(s, 2), (s,)
    best: tuple[int, tuple[int, ...]] | None = None
    for x in range(1, s - k + 2):
        rest, parts = _min_intra_pairs(s - x, k - 1)
        cand = comb(x, 2) + rest
        if best is None or cand < best[0]:
            best = (cand, tuple(sorted(parts + (x,), reverse=True)))
    assert best is not None
    return best


def gamma_max(m: int, n: int) -> tuple[PowerOfTwoCount, PartitionSpec]:
    """Largest ``gamma_partition`` over partitions of ``m`` into ``n`` parts.

    Maximising cross pairs means minimising same-class pairs, which a small
    dynamic program does exactly without listing every partition.
    """
    if not 1 <= n <= m:
        raise ValueError(f"cannot split {m} into {n} positive parts")
    intra, parts = _min_intra_pairs(m, n)
    best = PartitionSpec(parts)
    if best != _balanced(m, n):
        raise RuntimeError(f"maximising partition for ({m}, {n}) is not the balanced one")
    e = cross_pairs_exponent(best)
    if e != comb(m, 2) - intra:
        raise RuntimeError(f"inconsistent maximum for ({m}, {n})")
    return PowerOfTwoCount(e), best


class TheoremCheck(NamedTuple):
    y: int
    holds: bool
    equality: bool


def verify_theorem_bound(m: int, n: int) -> TheoremCheck:
    """Check ``gamma_total(m) >= 2**y * gamma_max(m, n)`` with ``y = m - n``."""
    y = m - n
    lhs = gamma_total(m).exponent
    rhs = y + gamma_max(m, n)[0].exponent
    return TheoremCheck(y, lhs >= rhs, lhs == rhs)


def p1_bound(m: int, n: int) -> tuple[DyadicProbability, DyadicProbability]:
    """Exact ``p1 = gamma_max / gamma_total`` and the bound ``2**-(m-n)``."""
    p1 = gamma_max(m, n)[0] / gamma_total(m)
    return p1, DyadicProbability(m - n)


def overhead_ratio(m: int) -> Fraction:
    """Payload bits carried per check-digit element at order ``m``."""
    if m < 2:
        raise ValueError("order must be at least 2")
    return Fraction(triangle_size(m), m)


def _graph_indices(m: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    total = 1 << triangle_size(m)
    return np.arange(start, total if stop is None else stop, dtype=np.int64)


def _intra_mask(m: int, labels: Sequence[int]) -> int:
    """Bits of the positions joining two vertices with the same label."""
    mask = 0
    for i in range(2, m + 1):
        for j in range(1, i):
            if labels[i - 1] == labels[j - 1]:
                mask |= 1 << pos_of(i, j, m)
    return mask


def set_partitions(m: int) -> Iterator[list[int]]:
    """Restricted growth strings of length ``m`` (each set partition once)."""
    labels = [0] * m

    def rec(v: int, blocks: int) -> Iterator[list[int]]:
        if v == m:
            yield list(labels)
            return
        for c in range(blocks + 1):
            labels[v] = c
            yield from rec(v + 1, max(blocks, c + 1))

    if m == 0:
        yield []
        return
    yield from rec(1, 1)


def oracle_spectrum(m: int, shards: int = 1) -> ChromaticSpectrum:
    """Chromatic number of every labeled graph of order ``m``, tallied.

    A graph is properly colored by a set partition exactly when it has no edge
    inside a block, so the chromatic number is the fewest blocks among set
    partitions whose intra-block positions are all absent.  ``shards`` splits
    the index range; the tally does not depend on it.
    """
    if not 1 <= m <= ORACLE_SPECTRUM_MAX_ORDER:
        raise ValueError(f"oracle spectrum supports orders 1..{ORACLE_SPECTRUM_MAX_ORDER}")
    masks_by_blocks: dict[int, set[int]] = {}
    for labels in set_partitions(m):
        masks_by_blocks.setdefault(max(labels) + 1, set()).add(_intra_mask(m, labels))
    total = 1 << triangle_size(m)
    bounds = np.linspace(0, total, shards + 1, dtype=np.int64)
    counts = np.zeros(m, dtype=np.int64)
    for start, stop in zip(bounds[:-1], bounds[1:]):
        idx = _graph_indices(m, int(start), int(stop))
        chi = np.full(idx.shape, m, dtype=np.int64)
        for blocks in sorted(masks_by_blocks, reverse=True):
            ok = np.zeros(idx.shape, dtype=bool)
            for mask in masks_by_blocks[blocks]:
                ok |= (idx & mask) == 0
            chi[ok] = blocks
        counts += np.bincount(chi, minlength=m + 1)[1:]
    return ChromaticSpectrum(m, tuple(int(c) for c in counts))


def oracle_fixed_partition_count(m: int, p: PartitionSpec) -> int:
    """Count graphs of order ``m`` properly colored by the canonical assignment of ``p``."""
    if m > ORACLE_PARTITION_MAX_ORDER:
        raise ValueError(f"fixed-partition oracle supports orders up to {ORACLE_PARTITION_MAX_ORDER}")
    if p.m != m:
        raise ValueError(f"partition {p.parts} does not sum to {m}")
    mask = _intra_mask(m, p.labels())
    return int(np.count_nonzero((_graph_indices(m) & mask) == 0))
