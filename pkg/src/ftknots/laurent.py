"""Laurent polynomials in s = t^(1/2) and their conversion to z = s - 1/s.

Working in ``s`` keeps every exponent an integer: ``t^(k/2)`` is ``s^k``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import ValidationError

__all__ = [
    "LaurentPoly",
    "ZPoly",
    "S",
    "det",
    "det_leibniz",
    "expand_z",
    "rewrite_in_z",
    "substitute_t",
]


class LaurentPoly:
    """Finitely supported map exponent -> nonzero integer coefficient."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            if c:
                clean[int(e)] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> LaurentPoly:
        return cls({e: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def min_degree(self) -> int:
        if not self._terms:
            raise ValidationError("zero polynomial has no degree")
        return min(self._terms)

    def max_degree(self) -> int:
        if not self._terms:
            raise ValidationError("zero polynomial has no degree")
        return max(self._terms)

    @staticmethod
    def _coerce(x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")

    def __add__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> LaurentPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> LaurentPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> LaurentPoly:
        other = self._coerce(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> LaurentPoly:
        if k < 0:
            if len(self._terms) != 1 or next(iter(self._terms.values())) not in (1, -1):
                raise ValidationError("only unit monomials have negative powers")
            (e, c), = self._terms.items()
            return LaurentPoly({e * k: c ** (-k)})
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def involute(self) -> LaurentPoly:
        """Image under s -> -1/s (the symmetry fixing z = s - 1/s)."""
        return LaurentPoly({-e: c if e % 2 == 0 else -c for e, c in self._terms.items()})

    def exact_div(self, other: LaurentPoly) -> LaurentPoly:
        """Quotient when ``other`` divides ``self`` in Z[s, 1/s]; raises otherwise."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly()
        rem = dict(self._terms)
        lo_d, hi_d = other.min_degree(), other.max_degree()
        lead = other._terms[hi_d]
        quot: dict[int, int] = {}
        lo_rem = self.min_degree()
        while rem:
            top = max(rem)
            if top - lo_rem < hi_d - lo_d:
                raise ValidationError("Laurent division is not exact")
            c, r = divmod(rem[top], lead)
            if r:
                raise ValidationError("Laurent division is not exact")
            shift = top - hi_d
            quot[shift] = c
            for e, d in other._terms.items():
                k = e + shift
                v = rem.get(k, 0) - c * d
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return LaurentPoly(quot)

    def __repr__(self) -> str:
        return f"LaurentPoly({self._terms!r})"

    def __str__(self) -> str:
        return _format_terms(sorted(self._terms.items()), "s")


def _format_terms(items: Sequence[tuple[int, int]], var: str) -> str:
    if not items:
        return "0"
    parts = []
    for i, (e, c) in enumerate(items):
        if e == 0:
            body = str(abs(c))
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


S = LaurentPoly.monomial(1)


class ZPoly:
    """Integer polynomial in z; coefficient tuple with trailing zeros removed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: ZPoly) -> ZPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return ZPoly(self.coeff(i) + other.coeff(i) for i in range(n))

    def __sub__(self, other: ZPoly) -> ZPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return ZPoly(self.coeff(i) - other.coeff(i) for i in range(n))

    def __mul__(self, other) -> ZPoly:
        if isinstance(other, int):
            return ZPoly(other * c for c in self.coeffs)
        out = [0] * max(0, len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ZPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, ZPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"ZPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        return _format_terms([(e, c) for e, c in enumerate(self.coeffs) if c], "z")


def substitute_t(p_in_t: LaurentPoly) -> LaurentPoly:
    """Re-read a Laurent polynomial in t as one in s via t^k -> s^(2k)."""
    return LaurentPoly({2 * e: c for e, c in p_in_t.terms.items()})


@lru_cache(maxsize=None)
def _z_power(d: int) -> LaurentPoly:
    return (S - S ** -1) ** d


def expand_z(q: ZPoly) -> LaurentPoly:
    """Substitute z = s - 1/s."""
    out = LaurentPoly()
    for d, c in enumerate(q.coeffs):
        if c:
            out = out + c * _z_power(d)
    return out


def rewrite_in_z(p: LaurentPoly) -> ZPoly:
    """The unique Q in Z[z] with Q(s - 1/s) == p.

    Raises :class:`ValidationError` when ``p`` is not fixed by s -> -1/s or
    when peeling leaves a residue.
    """
    if p.involute() != p:
        raise ValidationError(f"not expressible in z: {p} is not symmetric under s -> -1/s")
    rem = p
    out: dict[int, int] = {}
    while not rem.is_zero():
        top = rem.max_degree()
        if top < 0:
            raise ValidationError(f"not expressible in z: residue {rem}")
        c = rem.coeff(top)
        out[top] = c
        rem = rem - c * _z_power(top)
    return ZPoly(out.get(i, 0) for i in range(max(out) + 1)) if out else ZPoly()


# ---------------------------------------------------------------------------
# determinants

Matrix = Sequence[Sequence[LaurentPoly]]

_COFACTOR_MAX = 8


def _square(m: Matrix) -> int:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise ValidationError(f"matrix is not square: {n} rows, a row of length {len(row)}")
    return n


def det(m: Matrix) -> LaurentPoly:
    """Exact determinant; the 0x0 determinant is 1.

    Memoised cofactor expansion up to size 8, fraction-free (Bareiss)
    elimination with exact Laurent division above that.
    """
    n = _square(m)
    rows = [[LaurentPoly._coerce(x) for x in row] for row in m]
    if n <= _COFACTOR_MAX:
        return _det_cofactor(rows)
    return _det_bareiss(rows)


def _det_cofactor(rows: list[list[LaurentPoly]]) -> LaurentPoly:
    # Laplace along rows; minors keyed by the set of columns still in play
    n = len(rows)
    minors: dict[tuple[int, ...], LaurentPoly] = {(): LaurentPoly.const(1)}
    for r in range(n - 1, -1, -1):
        size = n - r
        nxt = {}
        for cols in combinations(range(n), size):
            acc = LaurentPoly()
            for pos, c in enumerate(cols):
                entry = rows[r][c]
                if entry.is_zero():
                    continue
                sub = minors.get(cols[:pos] + cols[pos + 1:])
                if sub is None or sub.is_zero():
                    continue
                term = entry * sub
                acc = acc - term if pos % 2 else acc + term
            nxt[cols] = acc
        minors = nxt
    return minors[tuple(range(n))]


def _det_bareiss(rows: list[list[LaurentPoly]]) -> LaurentPoly:
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = LaurentPoly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero()), None)
            if swap is None:
                return LaurentPoly()
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * piv - a[i][k] * a[k][j]).exact_div(prev)
            a[i][k] = LaurentPoly()
        prev = piv
    return a[n - 1][n - 1] if sign == 1 else -a[n - 1][n - 1]


def det_leibniz(m: Matrix) -> LaurentPoly:
    """Sum over permutations with signs; slow reference implementation."""
    from itertools import permutations

    n = _square(m)
    total = LaurentPoly()
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = LaurentPoly.const(1)
        for i, j in enumerate(perm):
            term = term * LaurentPoly._coerce(m[i][j])
            if term.is_zero():
                break
        total = total - term if inversions % 2 else total + term
    return total
