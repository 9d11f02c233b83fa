"""Exact rational matrices: fraction-free elimination, rank and right kernel."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .words import DomainError


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[tuple[Fraction, ...], ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> RationalMatrix:
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        for r in data:
            if len(r) != ncols:
                raise DomainError(f"ragged matrix: expected {ncols} columns, got {len(r)}")
        return cls(data, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def apply(self, v: Sequence) -> list[Fraction]:
        if len(v) != self.ncols:
            raise DomainError("vector length does not match column count")
        return [sum((a * Fraction(x) for a, x in zip(r, v)), Fraction(0)) for r in self.rows]


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    out = []
    for r in m.rows:
        den = math.lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * den) for x in r])
    return out


def _primitive(row: list[int]) -> list[int]:
    g = math.gcd(*row)
    return [x // g for x in row] if g > 1 else row


def reduced_echelon(m: RationalMatrix) -> tuple[list[list[int]], list[int]]:
    """Integer reduced echelon form by fraction-free Gauss-Jordan.

    Returns the nonzero rows (each primitive, pivot positive) and the pivot columns.
    Every pivot column is zero in all other returned rows.
    """
    rows = _integer_rows(m)
    pivots: list[int] = []
    r = 0
    for c in range(m.ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-x for x in rows[r]]
        p = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                a = rows[i][c]
                rows[i] = _primitive([p[c] * x - a * y for x, y in zip(rows[i], p)])
        rows[r] = _primitive(p)
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(m: RationalMatrix) -> int:
    return len(reduced_echelon(m)[1])


def normalize(v: Sequence) -> tuple[Fraction, ...]:
    """Scale to coprime integers with the first nonzero entry positive."""
    v = [Fraction(x) for x in v]
    nz = [x for x in v if x != 0]
    if not nz:
        return tuple(v)
    den = math.lcm(*(x.denominator for x in nz))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    sign = 1 if nz[0] > 0 else -1
    return tuple(Fraction(sign * x // g) for x in ints)


def kernel_basis(m: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of ``{v : m v = 0}``, one vector per free column, normalized."""
    rows, pivots = reduced_echelon(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.ncols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.ncols
        v[f] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = Fraction(-row[f], row[pc])
        basis.append(normalize(v))
    return basis
