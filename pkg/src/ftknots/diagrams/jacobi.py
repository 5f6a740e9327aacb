"""Jacobi diagrams (unitrivalent graphs on the Wilson loop) reduced mod 2.

Nodes are encoded as integers: ``0..m-1`` are the loop positions (legs) in
cyclic order, ``m..m+k-1`` are the internal trivalent vertices.  Vertex
orientations are not stored.  Every computation here is over Z/2, where
the sign conventions of AS and STU drop out.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
from pathlib import Path
from typing import Callable, Iterable, Iterator, Sequence

from ..errors import ValidationError
from .chord import ChordDiagram, canonical_word, ham

__all__ = [
    "JacobiDiagram",
    "DiagramSumMod2",
    "JACOBI_GUARD",
    "enumerate_jacobi",
    "haired_tetrahedron",
    "has_two_nonadjacent_insulated",
    "insulated_vertices",
    "is_good_vertex",
    "parse_jacobi",
    "random_picker",
    "read_jacobi",
    "stu_expand",
    "stu_reduce",
    "wheel",
]

JACOBI_GUARD = 5

Edge = tuple[int, int]


def _norm_edges(edges: Iterable[Sequence[int]]) -> tuple[Edge, ...]:
    return tuple(sorted((min(a, b), max(a, b)) for a, b in edges))


@dataclass(frozen=True)
class JacobiDiagram:
    n_legs: int
    n_internal: int
    edges: tuple[Edge, ...]
    _nbrs: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        m, k = self.n_legs, self.n_internal
        if m < 0 or k < 0:
            raise ValidationError("negative leg or vertex count")
        edges = _norm_edges(self.edges)
        object.__setattr__(self, "edges", edges)
        total = m + k
        nbrs: list[list[int]] = [[] for _ in range(total)]
        for a, b in edges:
            if not (0 <= a < total and 0 <= b < total):
                raise ValidationError(f"edge ({a}, {b}) refers to an unknown node")
            if a == b:
                raise ValidationError(f"loop edge at {self.node_name(a)}")
            nbrs[a].append(b)
            nbrs[b].append(a)
        for x in range(total):
            want = 1 if x < m else 3
            if len(nbrs[x]) != want:
                raise ValidationError(
                    f"{self.node_name(x)} has degree {len(nbrs[x])}, expected {want}"
                )
        object.__setattr__(self, "_nbrs", tuple(tuple(sorted(ns)) for ns in nbrs))
        if m == 0 and k > 0:
            raise ValidationError("internal graph does not touch the Wilson loop")
        if not _reaches_loop(m, self._nbrs, skip=None):
            raise ValidationError("diagram is not connected (including the Wilson loop)")

    # -- basic structure -------------------------------------------------

    def node_name(self, x: int) -> str:
        return f"p{x}" if x < self.n_legs else f"v{x - self.n_legs}"

    @property
    def degree(self) -> int:
        return (self.n_legs + self.n_internal) // 2

    def neighbors(self, x: int) -> tuple[int, ...]:
        return self._nbrs[x]

    def internal_neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbours of internal vertex ``v`` (0-based), as node codes."""
        return self._nbrs[self.n_legs + v]

    def is_chord_diagram(self) -> bool:
        return self.n_internal == 0

    def to_chord_diagram(self) -> ChordDiagram:
        if self.n_internal:
            raise ValidationError("diagram has internal vertices")
        return ChordDiagram(_word_from_legs(self.n_legs, self._nbrs)).canonical()

    @classmethod
    def from_chord(cls, d: ChordDiagram) -> JacobiDiagram:
        ends: dict[int, list[int]] = {}
        for i, x in enumerate(d.word):
            ends.setdefault(x, []).append(i)
        return cls(len(d.word), 0, tuple(tuple(v) for v in ends.values()))

    # -- canonical form --------------------------------------------------

    def certificate(self) -> tuple:
        return _certificate(self.n_legs, self.n_internal, self.edges)

    def canonical(self) -> JacobiDiagram:
        m, k, edges = self.certificate()
        return JacobiDiagram(m, k, edges)

    def isomorphic(self, other: JacobiDiagram) -> bool:
        return self.certificate() == other.certificate()

    # -- text format -----------------------------------------------------

    def to_text(self) -> str:
        lines = [f"legs {self.n_legs}"]
        lines += [f"edge {self.node_name(a)} {self.node_name(b)}" for a, b in self.edges]
        return "\n".join(lines) + "\n"

    def __str__(self) -> str:
        return "; ".join(f"{self.node_name(a)}-{self.node_name(b)}" for a, b in self.edges)


def _reaches_loop(m: int, nbrs: Sequence[Sequence[int]], skip: int | None) -> bool:
    """Every non-skipped internal node is joined to some leg avoiding ``skip``."""
    total = len(nbrs)
    seen = [False] * total
    stack = [x for x in range(m)]
    for x in stack:
        seen[x] = True
    if skip is not None:
        seen[skip] = True
    while stack:
        x = stack.pop()
        for y in nbrs[x]:
            if not seen[y]:
                seen[y] = True
                stack.append(y)
    return all(seen)


def _word_from_legs(m: int, nbrs: Sequence[Sequence[int]]) -> tuple[int, ...]:
    label: dict[int, int] = {}
    word = []
    for p in range(m):
        q = nbrs[p][0]
        key = min(p, q)
        if key not in label:
            label[key] = len(label) + 1
        word.append(label[key])
    return tuple(word)


# ---------------------------------------------------------------------------
# canonical certificate


def _certificate(m: int, k: int, edges: Sequence[Edge]) -> tuple:
    """Least relabelled edge list over rotations of the loop.

    For each rotation the internal vertices are numbered first by the leg
    order in which they are met, then breadth-first from already numbered
    vertices; ties in the breadth-first step are branched over.  The set of
    numberings tried is invariant under isomorphism, so the minimum is a
    canonical form.
    """
    total = m + k
    nbrs: list[list[int]] = [[] for _ in range(total)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    best = None
    for r in range(max(m, 1)):
        seed: dict[int, int] = {}
        for p in range(m):
            q = nbrs[(p + r) % m][0]
            if q >= m and q not in seed:
                seed[q] = len(seed)
        for lab in _bfs_numberings(m, k, nbrs, seed):
            def code(x: int) -> int:
                return (x - r) % m if x < m else m + lab[x]

            enc = tuple(sorted(
                (min(code(a), code(b)), max(code(a), code(b))) for a, b in edges
            ))
            if best is None or enc < best:
                best = enc
    return (m, k, best if best is not None else ())


def _bfs_numberings(m: int, k: int, nbrs, seed: dict[int, int]) -> Iterator[dict[int, int]]:
    order = sorted(seed, key=seed.get)

    def rec(lab: dict[int, int], order: list[int], i: int) -> Iterator[dict[int, int]]:
        while i < len(order):
            u = order[i]
            fresh = []
            for y in nbrs[u]:
                if y >= m and y not in lab and y not in fresh:
                    fresh.append(y)
            if len(fresh) > 1:
                for perm in permutations(fresh):
                    lab2 = dict(lab)
                    for y in perm:
                        lab2[y] = len(lab2)
                    yield from rec(lab2, order + list(perm), i + 1)
                return
            for y in fresh:
                lab[y] = len(lab)
                order = order + [y]
            i += 1
        if len(lab) == k:
            yield lab

    yield from rec(dict(seed), order, 0)


# ---------------------------------------------------------------------------
# insulated and good vertices


def insulated_vertices(j: JacobiDiagram) -> set[int]:
    """Internal vertices (0-based) none of whose edges reach the loop."""
    m = j.n_legs
    return {v for v in range(j.n_internal) if all(y >= m for y in j.internal_neighbors(v))}


def _check_vertex(j: JacobiDiagram, v: int) -> None:
    if not 0 <= v < j.n_internal:
        raise ValidationError(f"unknown internal vertex v{v}")


def is_good_vertex(j: JacobiDiagram, v: int) -> bool:
    """Removing ``v`` keeps the graph together with the loop connected."""
    _check_vertex(j, v)
    return _reaches_loop(j.n_legs, j._nbrs, skip=j.n_legs + v)


def has_two_nonadjacent_insulated(j: JacobiDiagram) -> bool:
    iv = sorted(insulated_vertices(j))
    m = j.n_legs
    for a in range(len(iv)):
        for b in range(a + 1, len(iv)):
            if m + iv[b] not in j.internal_neighbors(iv[a]):
                return True
    return False


# ---------------------------------------------------------------------------
# STU reduction over Z/2


@dataclass(frozen=True)
class DiagramSumMod2:
    """Chord diagrams with odd multiplicity; ``terms`` counts summands before cancellation."""

    diagrams: frozenset[ChordDiagram]
    terms: int = 0

    def ham(self) -> int:
        return sum(ham(d) for d in self.diagrams) & 1

    def __iter__(self):
        return iter(sorted(self.diagrams))

    def __len__(self) -> int:
        return len(self.diagrams)

    def __add__(self, other: DiagramSumMod2) -> DiagramSumMod2:
        return DiagramSumMod2(self.diagrams ^ other.diagrams, self.terms + other.terms)


Picker = Callable[[list[int], dict[int, list[int]]], "tuple[int, int] | None"]


def _default_pick(order: list[int], nbr: dict[int, list[int]]):
    # internal ids are -(i+1): the lowest index i is the largest id
    best = None
    for v, ns in nbr.items():
        if v < 0 and any(y >= 0 for y in ns) and (best is None or v > best):
            best = v
    if best is None:
        return None
    legs = [y for y in nbr[best] if y >= 0]
    p = min(legs, key=order.index)
    return best, p


def random_picker(rng: random.Random) -> Picker:
    def pick(order, nbr):
        cands = sorted(v for v, ns in nbr.items() if v < 0 and any(y >= 0 for y in ns))
        if not cands:
            return None
        v = rng.choice(cands)
        p = rng.choice(sorted(y for y in nbr[v] if y >= 0))
        return v, p
    return pick


def _to_state(j: JacobiDiagram) -> tuple[list[int], dict[int, list[int]]]:
    m = j.n_legs

    def ident(x: int) -> int:
        return x if x < m else -(x - m + 1)

    nbr = {ident(x): [ident(y) for y in j.neighbors(x)] for x in range(m + j.n_internal)}
    return list(range(m)), nbr


def _terminal_word(order: list[int], nbr: dict[int, list[int]]) -> tuple[int, ...]:
    label: dict[int, int] = {}
    word = []
    for p in order:
        key = min(p, nbr[p][0])
        if key not in label:
            label[key] = len(label) + 1
        word.append(label[key])
    return canonical_word(tuple(word))


def stu_expand(j: JacobiDiagram, pick: Picker | None = None) -> list[tuple[int, ...]]:
    """Every chord-diagram summand (canonical word) of the full STU expansion."""
    pick = pick or _default_pick
    order, nbr = _to_state(j)
    stack = [(order, nbr, j.n_legs)]
    out = []
    while stack:
        order, nbr, uid = stack.pop()
        choice = pick(order, nbr)
        if choice is None:
            if any(v < 0 for v in nbr):
                raise ValidationError("stuck: internal vertices without legs remain")
            out.append(_terminal_word(order, nbr))
            continue
        v, p = choice
        others = list(nbr[v])
        others.remove(p)
        x, y = others
        at = order.index(p)
        for first, second in ((x, y), (y, x)):
            a, b = uid, uid + 1
            new_order = order[:at] + [a, b] + order[at + 1:]
            new = dict(nbr)
            del new[v], new[p]
            new[a] = [first]
            new[b] = [second]
            for target, leg in ((first, a), (second, b)):
                lst = list(new[target]) if new[target] is nbr.get(target) else new[target]
                lst[lst.index(v)] = leg
                new[target] = lst
            stack.append((new_order, new, uid + 2))
    return out


def stu_reduce(j: JacobiDiagram, pick: Picker | None = None) -> DiagramSumMod2:
    """Resolve all internal vertices by STU and keep what survives mod 2."""
    odd: set[tuple[int, ...]] = set()
    terms = stu_expand(j, pick)
    for w in terms:
        odd ^= {w}
    return DiagramSumMod2(frozenset(ChordDiagram(w) for w in odd), len(terms))


# ---------------------------------------------------------------------------
# particular diagrams


def wheel(n: int, sigma: Sequence[int] | None = None) -> JacobiDiagram:
    """Internal n-cycle v0..v(n-1), with a leg from v_i to loop position sigma[i]."""
    if n < 2:
        raise ValidationError(f"wheels need n >= 2, got {n}")
    sigma = list(range(n)) if sigma is None else [int(x) for x in sigma]
    if sorted(sigma) != list(range(n)):
        raise ValidationError(f"{sigma} is not a permutation of 0..{n - 1}")
    edges = [(n + i, n + (i + 1) % n) for i in range(n)]
    edges += [(sigma[i], n + i) for i in range(n)]
    return JacobiDiagram(n, n, tuple(edges))


def haired_tetrahedron() -> JacobiDiagram:
    """K4 with two adjacent edges subdivided, each new vertex legged to the loop."""
    # legs p0, p1; tetrahedron a,b,c,d = v0..v3; hair vertices h1 = v4 on ab, h2 = v5 on ac
    m = 2
    a, b, c, d, h1, h2 = (m + i for i in range(6))
    edges = [(a, h1), (h1, b), (a, h2), (h2, c), (a, d), (b, c), (b, d), (c, d),
             (0, h1), (1, h2)]
    return JacobiDiagram(m, 6, tuple(edges))


# ---------------------------------------------------------------------------
# enumeration


def _generate(m: int, k: int) -> Iterator[tuple[Edge, ...]]:
    """Labelled structures with legs 0..m-1 fixed and vertices numbered in discovery order.

    Covers every diagram with m legs and k internal vertices at least once
    (per rotation) and only produces connected ones.
    """
    leg = [-1] * m
    vadj: list[list[int]] = []

    def emit() -> tuple[Edge, ...]:
        edges = []
        for i in range(m):
            q = leg[i]
            if q >= m or q > i:
                edges.append((i, q))
        for u, ns in enumerate(vadj):
            for y in ns:
                if y > m + u:
                    edges.append((m + u, y))
        return tuple(sorted(edges))

    def internal(u: int, last: int) -> Iterator[tuple[Edge, ...]]:
        while u < len(vadj) and len(vadj[u]) == 3:
            u += 1
            last = -1
        if u == len(vadj):
            if len(vadj) == k:
                yield emit()
            return
        for w in range(max(u + 1, last), len(vadj)):
            if len(vadj[w]) < 3:
                vadj[u].append(m + w)
                vadj[w].append(m + u)
                yield from internal(u, w)
                vadj[u].pop()
                vadj[w].pop()
        if len(vadj) < k:
            w = len(vadj)
            vadj.append([m + u])
            vadj[u].append(m + w)
            yield from internal(u, w)
            vadj[u].pop()
            vadj.pop()

    def legs(i: int) -> Iterator[tuple[Edge, ...]]:
        if i == m:
            yield from internal(0, -1)
            return
        if leg[i] != -1:
            yield from legs(i + 1)
            return
        for j in range(i + 1, m):
            if leg[j] == -1:
                leg[i], leg[j] = j, i
                yield from legs(i + 1)
                leg[i] = leg[j] = -1
        for v in range(len(vadj)):
            if len(vadj[v]) < 3:
                leg[i] = m + v
                vadj[v].append(i)
                yield from legs(i + 1)
                vadj[v].pop()
                leg[i] = -1
        if len(vadj) < k:
            leg[i] = m + len(vadj)
            vadj.append([i])
            yield from legs(i + 1)
            vadj.pop()
            leg[i] = -1

    yield from legs(0)


def _insulated_raw(m: int, k: int, edges: Sequence[Edge]) -> tuple[list[int], list[set[int]]]:
    nbrs: list[set[int]] = [set() for _ in range(m + k)]
    touches = [False] * (m + k)
    for a, b in edges:
        nbrs[a].add(b)
        nbrs[b].add(a)
        if a < m:
            touches[b] = True
    iv = [x for x in range(m, m + k) if not touches[x]]
    return iv, nbrs


def _passes(m: int, k: int, edges: Sequence[Edge], filt: str) -> bool:
    if filt == "all":
        return True
    iv, nbrs = _insulated_raw(m, k, edges)
    if filt == "has_iv":
        return bool(iv)
    return any(b not in nbrs[a] for i, a in enumerate(iv) for b in iv[i + 1:])


FILTERS = ("all", "has_iv", "has_2iv")


@lru_cache(maxsize=None)
def _enumerate(n: int, filt: str) -> tuple[JacobiDiagram, ...]:
    found: dict[tuple, None] = {}
    for k in range(0, 2 * n):
        m = 2 * n - k
        for edges in _generate(m, k):
            if not _passes(m, k, edges, filt):
                continue
            cert = _certificate(m, k, edges)
            found.setdefault(cert, None)
    return tuple(JacobiDiagram(m, k, e) for (m, k, e) in sorted(found))


def enumerate_jacobi(n: int, filter: str = "all", unsafe: bool = False) -> list[JacobiDiagram]:
    """Isomorphism classes of degree-n Jacobi diagrams, canonical and sorted.

    Loop edges are excluded; double edges between internal vertices are
    allowed.  ``filter`` is ``all``, ``has_iv`` (an insulated vertex) or
    ``has_2iv`` (two insulated vertices not joined by an edge).
    """
    if filter not in FILTERS:
        raise ValidationError(f"unknown filter {filter!r}; choose from {', '.join(FILTERS)}")
    if n < 1:
        raise ValidationError(f"degree must be at least 1, got {n}")
    if n > JACOBI_GUARD and not unsafe:
        raise ValidationError(f"degree {n} exceeds the Jacobi guard {JACOBI_GUARD}")
    return list(_enumerate(n, filter))


# ---------------------------------------------------------------------------
# file format


def parse_jacobi(text: str) -> JacobiDiagram:
    """``legs <m>`` then ``edge <u> <v>`` lines with nodes ``p<i>`` / ``v<j>``."""
    m = None
    raw: list[tuple[tuple[str, int], tuple[str, int]]] = []

    def node(tok: str, lineno: int) -> tuple[str, int]:
        if len(tok) < 2 or tok[0] not in "pv" or not tok[1:].isdigit():
            raise ValidationError(f"line {lineno}: bad node name {tok!r}")
        return tok[0], int(tok[1:])

    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "legs" and len(parts) == 2:
            if m is not None:
                raise ValidationError(f"line {lineno}: duplicate legs line")
            try:
                m = int(parts[1])
            except ValueError as exc:
                raise ValidationError(f"line {lineno}: bad leg count") from exc
        elif parts[0] == "edge" and len(parts) == 3:
            raw.append((node(parts[1], lineno), node(parts[2], lineno)))
        else:
            raise ValidationError(f"line {lineno}: cannot parse {line!r}")
    if m is None:
        raise ValidationError("missing 'legs <m>' line")
    used = {i for e in raw for kind, i in e if kind == "v"}
    k = max(used) + 1 if used else 0
    if used != set(range(k)):
        raise ValidationError(f"internal vertices must be v0..v{k - 1} with none skipped")
    for e in raw:
        for kind, i in e:
            if kind == "p" and i >= m:
                raise ValidationError(f"leg p{i} out of range for {m} legs")
    edges = tuple(tuple(i if kind == "p" else m + i for kind, i in e) for e in raw)
    return JacobiDiagram(m, k, edges)


def read_jacobi(path: str | Path) -> JacobiDiagram:
    try:
        return parse_jacobi(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
