"""Truncated q-series with exact rational coefficients and the sz evaluation map."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .stuffle import binomial
from .words import DomainError, LinearCombination, Word, canonical_form, format_fraction, make_word


@dataclass(frozen=True)
class TruncatedSeries:
    """Coefficients of ``q^0 .. q^order``; everything above is unknown, not zero."""

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 0:
            raise DomainError("order must be nonnegative")
        if len(self.coeffs) != self.order + 1:
            raise DomainError(f"expected {self.order + 1} coefficients, got {len(self.coeffs)}")

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Union[int, Fraction]], order: int | None = None) -> TruncatedSeries:
        cs = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        return cls(order, tuple(cs))

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls(order, (Fraction(0),) * (order + 1))

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls.from_coeffs([1], order)

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def _check(self, other: TruncatedSeries) -> None:
        if not isinstance(other, TruncatedSeries):
            raise TypeError(f"expected TruncatedSeries, got {type(other).__name__}")
        if other.order != self.order:
            raise DomainError(f"order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        return TruncatedSeries(self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: TruncatedSeries) -> TruncatedSeries:
        self._check(other)
        return TruncatedSeries(self.order, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(self.order, tuple(other * a for a in self.coeffs))
        self._check(other)
        return TruncatedSeries(self.order, tuple(_cauchy(self.coeffs, other.coeffs, self.order)))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def format(self) -> str:
        return "\n".join(f"{n}: {format_fraction(c)}" for n, c in enumerate(self.coeffs))


def _cauchy(a: Sequence, b: Sequence, order: int) -> list:
    out = [0] * (order + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(order + 1 - i):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def parse_series(text: str) -> TruncatedSeries:
    coeffs = []
    for line in text.splitlines():
        if not line.strip():
            continue
        idx, _, value = line.partition(":")
        if int(idx) != len(coeffs):
            raise DomainError(f"expected index {len(coeffs)}, got {idx.strip()}")
        coeffs.append(Fraction(value.strip()))
    return TruncatedSeries.from_coeffs(coeffs)


@lru_cache(maxsize=4096)
def _factor(m: int, k: int, order: int) -> tuple[int, ...]:
    # q^{mk} / (1 - q^m)^k = sum_{n >= k} C(n-1, k-1) q^{mn}
    out = [0] * (order + 1)
    n = k
    c = 1
    while m * n <= order:
        out[m * n] = c
        # C(n, k-1) from C(n-1, k-1)
        c = c * n // (n - k + 1)
        n += 1
    return tuple(out)


@lru_cache(maxsize=None)
def _sz_int(w: Word, order: int) -> tuple[int, ...]:
    blocks = canonical_form(w)
    total = [0] * (order + 1)
    if not blocks:
        total[0] = 1
        return tuple(total)
    d = len(blocks)
    # least q-order blocks j.. can still add, using m_i >= d - i
    rest = [0] * (d + 1)
    for i in range(d - 1, -1, -1):
        rest[i] = rest[i + 1] + blocks[i][0] * (d - i)

    def visit(j: int, m: int, acc: list[int], used: int) -> None:
        k, z = blocks[j]
        used += m * k
        if used + rest[j + 1] > order:
            return
        acc = _cauchy(acc, _factor(m, k, order), order)
        if j == d - 1:
            weight = binomial(m - 1, z)
            if weight:
                for i, x in enumerate(acc):
                    total[i] += weight * x
            return
        for m_next in range(d - j - 1, m - z):
            weight = binomial(m - m_next - 1, z)
            if weight:
                visit(j + 1, m_next, [weight * x for x in acc], used)

    one = [1] + [0] * order
    for m1 in range(d, order + 1):
        visit(0, m1, one, 0)
    return tuple(total)


def sz(w: Word, order: int) -> TruncatedSeries:
    """q-expansion of an admissible word through ``q^order``.

    Every summand with largest index ``m_1`` starts at ``q^{m_1 k_1}``, so
    restricting to ``m_1 <= order`` drops nothing below ``q^{order + 1}``.
    """
    if order < 0:
        raise DomainError("order must be nonnegative")
    w = make_word(w)
    return TruncatedSeries.from_coeffs(_sz_int(w, order), order)


def sz_lin(a: LinearCombination, order: int) -> TruncatedSeries:
    out = [Fraction(0)] * (order + 1)
    for w, c in a.items():
        for i, x in enumerate(_sz_int(w, order)):
            if x:
                out[i] += c * x
    return TruncatedSeries(order, tuple(out))


def psi(w: Word, n: int) -> int:
    """Coefficient of ``q^n`` in ``sz(w)``."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    value = _sz_int(make_word(w), n)[n]
    assert isinstance(value, int) and value >= 0, value
    return value
