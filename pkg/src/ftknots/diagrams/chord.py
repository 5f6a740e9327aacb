"""Chord diagrams on an oriented Wilson loop and the Hamiltonian weight system.

A chord diagram of degree n is a cyclic word of length 2n in which every
label occurs twice.  The canonical representative relabels chords 1..n by
first occurrence and takes the lexicographically least word over all 2n
rotations.  Reflections are not allowed because the loop is oriented.

A diagram is *separated* exactly when its intersection graph is
disconnected.  If the chords in a connected component of the intersection
graph are drawn in the disk, each complementary region meets the circle in
one arc.  A chord that crosses nothing in the component lies inside one of
those arcs.  So a disconnected intersection graph means some chords live
on an arc that no other chord crosses into, which is a connected-sum
decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from ..errors import ValidationError

__all__ = [
    "ChordDiagram",
    "IntersectionGraph",
    "DEGREE_GUARD",
    "canonical_word",
    "canonicalize",
    "enumerate_chord_diagrams",
    "four_t_relators",
    "ham",
    "hamiltonian_count",
    "intersection_graph",
    "is_separated",
    "raw_pairings",
]

DEGREE_GUARD = 7


def _check_word(word: Sequence[int]) -> None:
    counts: dict[int, int] = {}
    for x in word:
        counts[x] = counts.get(x, 0) + 1
    bad = sorted(x for x, c in counts.items() if c != 2)
    if bad:
        raise ValidationError(
            f"malformed chord word {' '.join(map(str, word))}: labels {bad} do not occur exactly twice"
        )


def _relabel(word: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    out = []
    for x in word:
        if x not in seen:
            seen[x] = len(seen) + 1
        out.append(seen[x])
    return tuple(out)


@lru_cache(maxsize=1 << 18)
def canonical_word(word: tuple[int, ...]) -> tuple[int, ...]:
    """Least relabelled rotation of ``word`` (no validation)."""
    n = len(word)
    if n == 0:
        return ()
    return min(_relabel(word[r:] + word[:r]) for r in range(n))


@dataclass(frozen=True, order=True)
class ChordDiagram:
    word: tuple[int, ...]

    def __post_init__(self) -> None:
        w = tuple(int(x) for x in self.word)
        _check_word(w)
        object.__setattr__(self, "word", w)

    @classmethod
    def parse(cls, text: str) -> ChordDiagram:
        try:
            return cls(tuple(int(tok) for tok in text.split()))
        except ValueError as exc:
            raise ValidationError(f"bad chord word {text!r}") from exc

    @property
    def degree(self) -> int:
        return len(self.word) // 2

    def canonical(self) -> ChordDiagram:
        return ChordDiagram(canonical_word(self.word))

    def is_canonical(self) -> bool:
        return canonical_word(self.word) == self.word

    def rotated(self, r: int) -> ChordDiagram:
        r %= max(1, len(self.word))
        return ChordDiagram(self.word[r:] + self.word[:r])

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.word)


def canonicalize(d: ChordDiagram) -> ChordDiagram:
    return d.canonical()


def raw_pairings(n: int) -> Iterator[tuple[int, ...]]:
    """All (2n-1)!! perfect matchings of 2n points, as words."""
    word = [0] * (2 * n)

    def rec(free: list[int], label: int) -> Iterator[tuple[int, ...]]:
        if not free:
            yield tuple(word)
            return
        a = free[0]
        for i in range(1, len(free)):
            b = free[i]
            word[a] = word[b] = label
            yield from rec(free[1:i] + free[i + 1:], label + 1)

    yield from rec(list(range(2 * n)), 1)


def _guard(n: int, unsafe: bool, limit: int = DEGREE_GUARD) -> None:
    if n < 1:
        raise ValidationError(f"degree must be at least 1, got {n}")
    if n > limit and not unsafe:
        raise ValidationError(f"degree {n} exceeds the guard {limit}; pass unsafe=True to override")


@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[ChordDiagram, ...]:
    words = {canonical_word(w) for w in raw_pairings(n)}
    return tuple(ChordDiagram(w) for w in sorted(words))


def enumerate_chord_diagrams(n: int, unsafe: bool = False) -> list[ChordDiagram]:
    """Canonical chord diagrams of degree n, sorted by word."""
    _guard(n, unsafe)
    return list(_enumerate(n))


# ---------------------------------------------------------------------------
# intersection graphs


@dataclass(frozen=True)
class IntersectionGraph:
    """Vertex i is the chord labelled i+1 in relabelled-by-first-occurrence order."""

    n: int
    adjacency: tuple[tuple[bool, ...], ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> IntersectionGraph:
        adj = [[False] * n for _ in range(n)]
        for a, b in edges:
            if a == b:
                raise ValidationError("intersection graphs have no loops")
            adj[a][b] = adj[b][a] = True
        return cls(n, tuple(tuple(r) for r in adj))

    @property
    def masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << j for j, x in enumerate(row) if x) for row in self.adjacency)

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if self.adjacency[i][j]]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        masks = self.masks
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in range(self.n):
                if frontier >> v & 1:
                    nxt |= masks[v]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1


@lru_cache(maxsize=1 << 16)
def _graph_of_word(word: tuple[int, ...]) -> IntersectionGraph:
    word = _relabel(word)
    n = len(word) // 2
    ends: dict[int, list[int]] = {}
    for i, x in enumerate(word):
        ends.setdefault(x, []).append(i)
    edges = []
    for a in range(1, n + 1):
        a1, a2 = ends[a]
        for b in range(a + 1, n + 1):
            b1, b2 = ends[b]
            # chords cross iff exactly one endpoint of b lies strictly between a's endpoints
            if (a1 < b1 < a2) != (a1 < b2 < a2):
                edges.append((a - 1, b - 1))
    return IntersectionGraph.from_edges(n, edges)


def intersection_graph(d: ChordDiagram) -> IntersectionGraph:
    return _graph_of_word(d.word)


@lru_cache(maxsize=1 << 16)
def _ham_count(n: int, masks: tuple[int, ...]) -> int:
    if n < 3:
        return 0
    full = (1 << n) - 1
    # paths from vertex 0; dp[mask] maps end vertex -> number of paths
    dp: dict[int, dict[int, int]] = {1: {0: 1}}
    for size in range(1, n):
        nxt: dict[int, dict[int, int]] = {}
        for mask, ends in dp.items():
            for v, cnt in ends.items():
                cand = masks[v] & ~mask
                while cand:
                    low = cand & -cand
                    w = low.bit_length() - 1
                    cand ^= low
                    slot = nxt.setdefault(mask | low, {})
                    slot[w] = slot.get(w, 0) + cnt
        dp = nxt
    closing = sum(cnt for v, cnt in dp.get(full, {}).items() if masks[v] & 1)
    return closing // 2


def hamiltonian_count(g: IntersectionGraph) -> int:
    """Number of unoriented Hamiltonian cycles; 0 for fewer than 3 vertices."""
    return _ham_count(g.n, g.masks)


def ham(d: ChordDiagram) -> int:
    """The weight system: Hamiltonian cycle count of the intersection graph mod 2."""
    return hamiltonian_count(intersection_graph(d)) & 1


def is_separated(d: ChordDiagram) -> bool:
    if d.degree < 1:
        raise ValidationError("separatedness needs degree at least 1")
    return not intersection_graph(d).is_connected()


# ---------------------------------------------------------------------------
# 4T relators


def _four_t_from(word: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
    n = len(word) // 2
    for e in range(2 * n):
        alpha = word[e]
        rest = word[:e] + word[e + 1:]
        for beta in range(1, n + 1):
            if beta == alpha:
                continue
            i1, i2 = (i for i, x in enumerate(rest) if x == beta)
            terms = []
            for at in (i1, i1 + 1, i2, i2 + 1):
                terms.append(canonical_word(rest[:at] + (alpha,) + rest[at:]))
            yield tuple(sorted(terms))


@lru_cache(maxsize=None)
def _four_t(n: int) -> tuple[tuple[ChordDiagram, ...], ...]:
    rels = set()
    for d in _enumerate(n):
        rels.update(_four_t_from(d.word))
    return tuple(tuple(ChordDiagram(w) for w in r) for r in sorted(rels))


def four_t_relators(n: int, unsafe: bool = False) -> list[tuple[ChordDiagram, ...]]:
    """All 4T relators of degree n as sorted 4-tuples (multisets) of canonical diagrams.

    Each relator moves one endpoint of a chord alpha to the four places
    immediately on either side of the endpoints of another chord beta.  Over
    Z/2 the relator is the sum of the four diagrams.
    """
    _guard(n, unsafe)
    return list(_four_t(n))
