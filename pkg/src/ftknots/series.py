"""Truncated integer power series and the discrete exponential/logarithm.

``exp_z`` sends ``sum a_i x^i`` to ``prod_i (1 + (-x)^i)^(a_i)``; it is a
bijection from ``x Z[[x]]`` onto ``1 + x Z[[x]]`` taking addition to
multiplication, and ``log_z`` is its inverse.  Everything here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable, Sequence

from .errors import ValidationError

__all__ = [
    "IntSeries",
    "binom",
    "exp_z",
    "exp_z_coefficient",
    "log_z",
    "mul",
    "parse_series",
]


def binom(a: int, k: int) -> int:
    """Binomial coefficient a(a-1)...(a-k+1)/k! for any integer ``a``."""
    if k < 0:
        return 0
    num = 1
    for j in range(k):
        num *= a - j
    return num // factorial(k)


@dataclass(frozen=True)
class IntSeries:
    """Element of Z[[x]] / x^(order+1), stored as ``coeffs[0..order]``."""

    order: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValidationError(f"order must be non-negative, got {self.order}")
        if len(self.coeffs) != self.order + 1:
            raise ValidationError(
                f"expected {self.order + 1} coefficients for order {self.order}, "
                f"got {len(self.coeffs)}"
            )
        if not all(isinstance(c, int) for c in self.coeffs):
            raise ValidationError("coefficients must be integers")

    @classmethod
    def of(cls, coeffs: Iterable[int], order: int) -> IntSeries:
        """Pad with zeros (or reduce modulo x^(order+1)) to the given order."""
        cs = [int(c) for c in coeffs][: order + 1]
        cs.extend([0] * (order + 1 - len(cs)))
        return cls(order, tuple(cs))

    @classmethod
    def zero(cls, order: int) -> IntSeries:
        return cls(order, (0,) * (order + 1))

    @classmethod
    def one(cls, order: int) -> IntSeries:
        return cls.of([1], order)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i <= self.order else 0

    def _check(self, other: IntSeries) -> None:
        if not isinstance(other, IntSeries):
            raise TypeError(f"expected IntSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise ValidationError(
                f"order mismatch: {self.order} vs {other.order}"
            )

    def __add__(self, other: IntSeries) -> IntSeries:
        self._check(other)
        return IntSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> IntSeries:
        return IntSeries(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other: IntSeries) -> IntSeries:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntSeries(self.order, tuple(other * a for a in self.coeffs))
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def inverse(self) -> IntSeries:
        """Multiplicative inverse; requires constant term +1 or -1."""
        c0 = self.coeffs[0]
        if c0 not in (1, -1):
            raise ValidationError(f"series with constant term {c0} is not invertible over Z")
        inv = [0] * (self.order + 1)
        inv[0] = c0
        for k in range(1, self.order + 1):
            acc = sum(self.coeffs[j] * inv[k - j] for j in range(1, k + 1))
            inv[k] = -acc * c0
        return IntSeries(self.order, tuple(inv))

    def __pow__(self, e: int) -> IntSeries:
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = IntSeries.one(self.order)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.coeffs)


def mul(f: IntSeries, g: IntSeries) -> IntSeries:
    """Cauchy product truncated at the common order."""
    f._check(g)
    n = f.order
    out = [0] * (n + 1)
    for i, a in enumerate(f.coeffs):
        if a:
            for j in range(n + 1 - i):
                out[i + j] += a * g.coeffs[j]
    return IntSeries(n, tuple(out))


def _factor(i: int, order: int) -> IntSeries:
    # 1 + (-x)^i
    cs = [0] * (order + 1)
    cs[0] = 1
    if i <= order:
        cs[i] += -1 if i % 2 else 1
    return IntSeries(order, tuple(cs))


def exp_z(a: IntSeries) -> IntSeries:
    """Truncation of prod_{i>=1} (1 + (-x)^i)^(a_i)."""
    if a.coeffs[0] != 0:
        raise ValidationError(f"exp_z needs zero constant term, got {a.coeffs[0]}")
    result = IntSeries.one(a.order)
    for i in range(1, a.order + 1):
        if a.coeffs[i]:
            result = result * _factor(i, a.order) ** a.coeffs[i]
    return result


def log_z(b: IntSeries) -> IntSeries:
    """Inverse of :func:`exp_z`, solved one degree at a time."""
    if b.coeffs[0] != 1:
        raise ValidationError(f"log_z needs constant term 1, got {b.coeffs[0]}")
    n = b.order
    a = [0] * (n + 1)
    partial = IntSeries.one(n)
    for i in range(1, n + 1):
        # only the factor (1 + (-x)^i)^(a_i) touches degree i, adding (-1)^i a_i
        a[i] = (-1) ** i * (b.coeffs[i] - partial.coeffs[i])
        if a[i]:
            partial = partial * _factor(i, n) ** a[i]
    return IntSeries(n, tuple(a))


def exp_z_coefficient(a: Sequence[int], ell: int) -> int:
    """Coefficient of x^ell in exp_z(a) by summing over partitions of ell.

    Uses ``(-1)^ell * sum prod_j binom(a_j, i_j)`` over all ``(i_1, i_2, ...)``
    with ``sum_j j * i_j == ell``.  Independent of :func:`exp_z`; used as a
    cross-check.
    """
    total = 0

    def rec(j: int, remaining: int, prod: int) -> None:
        nonlocal total
        if remaining == 0:
            total += prod
            return
        if j > remaining:
            return
        aj = a[j] if j < len(a) else 0
        for mult in range(remaining // j + 1):
            c = binom(aj, mult)
            if c:
                rec(j + 1, remaining - j * mult, prod * c)

    rec(1, ell, 1)
    return (-1) ** ell * total


def parse_series(text: str, order: int) -> IntSeries:
    """Parse ``"c0,c1,c2,..."``; missing high coefficients are zero."""
    text = text.strip()
    if not text:
        return IntSeries.zero(order)
    try:
        cs = [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise ValidationError(f"bad series literal {text!r}") from exc
    if len(cs) > order + 1:
        raise ValidationError(
            f"{len(cs)} coefficients given but order is {order}"
        )
    return IntSeries.of(cs, order)
