"""Quotients of diagram spaces: GF(2) ranks over chord diagrams, rational theta calculus."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterable, Sequence

from .diagrams.chord import ChordDiagram, enumerate_chord_diagrams, four_t_relators, is_separated
from .diagrams.jacobi import JACOBI_GUARD, enumerate_jacobi, stu_reduce
from .errors import ValidationError

__all__ = [
    "KINDS",
    "RelatorSystem",
    "ThetaSystem",
    "build_system",
    "check_weight_system",
    "gf2_rank",
    "parse_kinds",
    "rank_of_rows",
    "theta_quotient",
    "theta_system",
]

KINDS = ("fourT", "separated", "iv", "twoiv")
_ALIASES = {
    "fourt": "fourT", "4t": "fourT",
    "separated": "separated", "sep": "separated",
    "iv": "iv",
    "twoiv": "twoiv", "2iv": "twoiv",
}
SYSTEM_GUARD = 6


def parse_kinds(text: str | Iterable[str]) -> frozenset[str]:
    """Accepts ``"4T,sep,iv"`` style lists; case-insensitive aliases allowed."""
    items = text.split(",") if isinstance(text, str) else list(text)
    out = set()
    for item in items:
        key = item.strip().lower()
        if not key:
            continue
        if key not in _ALIASES:
            raise ValidationError(f"unknown relator kind {item.strip()!r}; choose from {', '.join(KINDS)}")
        out.add(_ALIASES[key])
    return frozenset(out)


@dataclass(frozen=True)
class RelatorSystem:
    """Relators are GF(2) vectors over ``basis``, packed as int bitsets (bit i = basis[i])."""

    degree: int
    basis: tuple[ChordDiagram, ...]
    relators: tuple[int, ...]
    kinds: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if len(set(self.basis)) != len(self.basis):
            raise ValidationError("basis has duplicate diagrams")
        limit = 1 << len(self.basis)
        for r in self.relators:
            if not 0 <= r < limit:
                raise ValidationError("relator vector longer than the basis")

    def index(self) -> dict[ChordDiagram, int]:
        return {d: i for i, d in enumerate(self.basis)}

    def vector(self, diagrams: Iterable[ChordDiagram]) -> int:
        """Characteristic vector mod 2 of a multiset of basis diagrams."""
        idx = self.index()
        v = 0
        for d in diagrams:
            v ^= 1 << idx[d.canonical()]
        return v

    def with_relators(self, extra: Iterable[int]) -> RelatorSystem:
        return RelatorSystem(self.degree, self.basis, self.relators + tuple(extra), self.kinds)


def build_system(n: int, kinds: Iterable[str] | str, unsafe: bool = False) -> RelatorSystem:
    kinds = parse_kinds(kinds)
    if n < 1:
        raise ValidationError(f"degree must be at least 1, got {n}")
    if not unsafe:
        if kinds & {"iv", "twoiv"} and n > JACOBI_GUARD:
            raise ValidationError(f"iv/twoiv relators need degree <= {JACOBI_GUARD}, got {n}")
        if n > SYSTEM_GUARD:
            raise ValidationError(f"degree {n} exceeds the guard {SYSTEM_GUARD}")
    basis = tuple(enumerate_chord_diagrams(n, unsafe=True))
    idx = {d: i for i, d in enumerate(basis)}
    rels: list[int] = []

    def vec(ds: Iterable[ChordDiagram]) -> int:
        v = 0
        for d in ds:
            v ^= 1 << idx[d]
        return v

    if "fourT" in kinds and n >= 2:
        rels += [vec(r) for r in four_t_relators(n, unsafe=True)]
    if "separated" in kinds:
        rels += [1 << i for i, d in enumerate(basis) if is_separated(d)]
    for kind, filt in (("iv", "has_iv"), ("twoiv", "has_2iv")):
        if kind in kinds:
            for j in enumerate_jacobi(n, filt, unsafe=True):
                rels.append(vec(stu_reduce(j).diagrams))
    return RelatorSystem(n, basis, tuple(rels), kinds)


def rank_of_rows(rows: Iterable[int]) -> int:
    """Rank over GF(2) of int-packed row vectors."""
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = r
                break
            r ^= p
    return len(pivots)


def gf2_rank(sys: RelatorSystem) -> tuple[int, int]:
    """(rank, quotient dimension)."""
    rank = rank_of_rows(sys.relators)
    return rank, len(sys.basis) - rank


def check_weight_system(sys: RelatorSystem, w: Callable[[ChordDiagram], int]) -> bool:
    """True iff w kills every relator mod 2, i.e. descends to the quotient."""
    values = 0
    for i, d in enumerate(sys.basis):
        if w(d) & 1:
            values |= 1 << i
    return all(bin(r & values).count("1") % 2 == 0 for r in sys.relators)


# ---------------------------------------------------------------------------
# theta graphs with hairs


Triple = tuple[int, int, int]


def _triples(total: int) -> list[Triple]:
    return [(a, b, total - a - b) for a in range(total + 1) for b in range(a, total + 1)
            if total - a - b >= b]


@dataclass(frozen=True)
class ThetaSystem:
    """Columns are unordered hair triples; rows are rational relators."""

    n: int
    generators: tuple[Triple, ...]
    relators: tuple[tuple[Fraction, ...], ...]


def theta_system(n: int, kill_all_nonzero: bool = True) -> ThetaSystem:
    """Hair-count triples (a,b,c) with a+b+c = n-1, modulo the IHX increment relation.

    For odd n the wheel is zero by its orientation-reversing symmetry and is
    not a generator.  The generator (0,1,n-2) is placed in the last column so
    that it is the one reported as free when it survives.
    """
    if n % 2 == 0:
        raise ValidationError(f"theta calculus is for odd degree, got {n}")
    if not 3 <= n <= 15:
        raise ValidationError(f"theta degree must satisfy 3 <= n <= 15, got {n}")
    gens = [t for t in _triples(n - 1) if t != (0, 1, n - 2)] + [(0, 1, n - 2)]
    col = {t: i for i, t in enumerate(gens)}
    rows: list[tuple[Fraction, ...]] = []
    seen = set()
    for base in {tuple(p) for t in _triples(n - 2) for p in permutations(t)}:
        key = tuple(sorted(base))
        if key in seen:
            continue
        seen.add(key)
        row = [Fraction(0)] * len(gens)
        for i in range(3):
            bumped = list(base)
            bumped[i] += 1
            row[col[tuple(sorted(bumped))]] += 1
        rows.append(tuple(row))
    if kill_all_nonzero:
        for t in gens:
            if all(t):
                row = [Fraction(0)] * len(gens)
                row[col[t]] = Fraction(1)
                rows.append(tuple(row))
    return ThetaSystem(n, tuple(gens), tuple(sorted(rows)))


def _rref_free_columns(rows: Sequence[Sequence[Fraction]], width: int) -> list[int]:
    m = [list(r) for r in rows]
    pivot_cols = []
    r = 0
    for c in range(width):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
    return [c for c in range(width) if c not in pivot_cols]


def theta_quotient(n: int, kill_all_nonzero: bool = True) -> tuple[int, list[Triple]]:
    """Dimension over Q of the theta quotient and the triples spanning it."""
    sys = theta_system(n, kill_all_nonzero)
    free = _rref_free_columns(sys.relators, len(sys.generators))
    return len(free), [sys.generators[c] for c in free]
