"""Vertex coloring: proper-coloring checks, bounds and exact chromatic numbers.

Colors are 0-based integers in ``range(k)``.  The exact solvers work on
neighbourhood bitmasks and break color symmetry by never opening more than one
new color at a time, which is what makes the lexicographically least coloring
the natural canonical witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .codec import Graph

__all__ = [
    "ChromaticCertificate",
    "CliqueBound",
    "Coloring",
    "ColoringError",
    "DEFAULT_MAX_ORDER",
    "OrderGuardExceeded",
    "brooks_bound",
    "canonical_coloring",
    "chromatic_number",
    "clique_lower",
    "dsatur_upper",
    "is_k_colorable",
    "is_proper",
]

DEFAULT_MAX_ORDER = 24
EXACT_CLIQUE_MAX_ORDER = 16


class ColoringError(ValueError):
    pass


class OrderGuardExceeded(ColoringError):
    """The graph is larger than the solver is allowed to handle."""


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        colors = tuple(int(c) for c in self.colors)
        if self.k < 1 and colors:
            raise ColoringError("palette must be non-empty")
        bad = [c for c in colors if not 0 <= c < self.k]
        if bad:
            raise ColoringError(f"colors {bad} outside palette of size {self.k}")
        object.__setattr__(self, "colors", colors)

    @classmethod
    def of(cls, colors: Sequence[int]) -> Coloring:
        """Coloring with the smallest palette that holds ``colors``."""
        return cls(tuple(colors), max(colors, default=-1) + 1)

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        # 1-based, like vertex labels
        return self.colors[v - 1]

    @property
    def used(self) -> int:
        return len(set(self.colors))

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for v, c in enumerate(self.colors, start=1):
            out.setdefault(c, []).append(v)
        return [out[c] for c in sorted(out)]


@dataclass(frozen=True)
class ChromaticCertificate:
    n: int
    witness: Coloring
    infeasibility_checked: bool


class CliqueBound(NamedTuple):
    size: int
    vertices: frozenset[int]
    exact: bool


def is_proper(g: Graph, c: Coloring) -> bool:
    if len(c.colors) != g.order:
        raise ColoringError(f"coloring has {len(c.colors)} entries for {g.order} vertices")
    if any(col >= c.k for col in c.colors):
        return False
    return all(c.colors[i - 1] != c.colors[j - 1] for i, j in g.edges)


def dsatur_upper(g: Graph) -> Coloring:
    """Greedy DSATUR coloring; ties go to the lowest vertex label."""
    masks = g.masks
    m = g.order
    colors = [0] * m
    seen = [0] * m  # bitmask of colors on colored neighbours
    uncolored = (1 << m) - 1
    while uncolored:
        best, best_key = -1, (-1, -1)
        rest = uncolored
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            key = (seen[v].bit_count(), (masks[v] & uncolored).bit_count())
            if key > best_key:
                best, best_key = v, key
        free = ~seen[best]
        c = (free & -free).bit_length() - 1
        colors[best] = c
        uncolored &= ~(1 << best)
        nbrs = masks[best]
        while nbrs:
            low = nbrs & -nbrs
            nbrs ^= low
            seen[low.bit_length() - 1] |= 1 << c
    return Coloring.of(colors)


def _max_clique(masks: Sequence[int]) -> int:
    """Exact maximum clique (as a bitmask) by simple branch and bound."""
    best = 0

    def expand(clique: int, cand: int) -> None:
        nonlocal best
        if not cand:
            if clique.bit_count() > best.bit_count():
                best = clique
            return
        while cand:
            if clique.bit_count() + cand.bit_count() <= best.bit_count():
                return
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            expand(clique | (1 << v), cand & masks[v])

    expand(0, (1 << len(masks)) - 1)
    return best


def _greedy_clique(masks: Sequence[int]) -> int:
    order = sorted(range(len(masks)), key=lambda v: (-masks[v].bit_count(), v))
    clique = 0
    for v in order:
        if masks[v] & clique == clique:
            clique |= 1 << v
    return clique


def clique_lower(g: Graph) -> CliqueBound:
    exact = g.order <= EXACT_CLIQUE_MAX_ORDER
    mask = _max_clique(g.masks) if exact else _greedy_clique(g.masks)
    vertices = frozenset(v + 1 for v in range(g.order) if (mask >> v) & 1)
    return CliqueBound(len(vertices), vertices, exact)


def brooks_bound(g: Graph) -> int:
    """Per component: max degree, plus one for complete graphs and odd cycles."""
    bound = 0
    for comp in g.components():
        size = len(comp)
        degs = [g.degree(v) for v in comp]
        delta = max(degs)
        complete = delta == size - 1 and all(d == size - 1 for d in degs)
        odd_cycle = size >= 3 and size % 2 == 1 and all(d == 2 for d in degs)
        bound = max(bound, delta + 1 if complete or odd_cycle else delta)
    return bound


def _exists_coloring(masks: Sequence[int], k: int) -> bool:
    """Decide k-colorability, branching on the most saturated vertex."""
    m = len(masks)
    if m == 0:
        return True
    if k <= 0:
        return False
    full = (1 << k) - 1
    colors = [-1] * m
    # forbidden[v]: bitmask of colors used by colored neighbours of v
    forbidden = [0] * m

    def solve(remaining: int, used: int) -> bool:
        if remaining == 0:
            return True
        best, best_sat, best_deg = -1, -1, -1
        for v in range(m):
            if colors[v] >= 0:
                continue
            sat = forbidden[v].bit_count()
            if sat > best_sat or (sat == best_sat and masks[v].bit_count() > best_deg):
                best, best_sat, best_deg = v, sat, masks[v].bit_count()
        v = best
        allowed = full & ~forbidden[v]
        limit = min(k, used + 1)
        for c in range(limit):
            if not (allowed >> c) & 1:
                continue
            colors[v] = c
            touched = []
            nbrs = masks[v]
            while nbrs:
                low = nbrs & -nbrs
                nbrs ^= low
                u = low.bit_length() - 1
                if colors[u] < 0 and not (forbidden[u] >> c) & 1:
                    forbidden[u] |= 1 << c
                    touched.append(u)
            ok = all(forbidden[u] != full for u in touched)
            if ok and solve(remaining - 1, max(used, c + 1)):
                return True
            for u in touched:
                forbidden[u] &= ~(1 << c)
            colors[v] = -1
        return False

    return solve(m, 0)


def _lex_least(masks: Sequence[int], k: int) -> Optional[list[int]]:
    """Lexicographically least proper coloring over ``range(k)``, vertices in label order."""
    m = len(masks)
    full = (1 << k) - 1
    colors = [-1] * m
    forbidden = [0] * m

    def solve(v: int, used: int) -> bool:
        if v == m:
            return True
        allowed = full & ~forbidden[v]
        for c in range(min(k, used + 1)):
            if not (allowed >> c) & 1:
                continue
            colors[v] = c
            touched = []
            later = masks[v] >> (v + 1)
            u = v + 1
            while later:
                if later & 1 and not (forbidden[u] >> c) & 1:
                    forbidden[u] |= 1 << c
                    touched.append(u)
                later >>= 1
                u += 1
            if all(forbidden[u] != full for u in touched) and solve(v + 1, max(used, c + 1)):
                return True
            for u in touched:
                forbidden[u] &= ~(1 << c)
        colors[v] = -1
        return False

    return colors if solve(0, 0) else None


def is_k_colorable(g: Graph, k: int) -> Optional[Coloring]:
    """Lexicographically least proper k-coloring, or ``None``."""
    if k <= 0:
        return None
    if not _exists_coloring(g.masks, k):
        return None
    colors = _lex_least(g.masks, k)
    return None if colors is None else Coloring(tuple(colors), k)


def canonical_coloring(g: Graph, n: int) -> Coloring:
    found = is_k_colorable(g, n)
    if found is None:
        raise ColoringError(f"graph is not {n}-colorable")
    return found


def chromatic_number(g: Graph, max_order: int = DEFAULT_MAX_ORDER) -> ChromaticCertificate:
    if g.order > max_order:
        raise OrderGuardExceeded(f"order {g.order} exceeds the solver limit of {max_order}")
    lower = clique_lower(g).size
    upper = min(dsatur_upper(g).used, brooks_bound(g))
    n = upper
    for k in range(lower, upper):
        if _exists_coloring(g.masks, k):
            n = k
            break
    # n - 1 is refuted either by the clique bound or by the failed searches above
    witness = canonical_coloring(g, n)
    return ChromaticCertificate(n, witness, infeasibility_checked=True)

