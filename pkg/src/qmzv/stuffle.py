"""The Schlesinger-Zudilin stuffle product.

Three independent routes compute the same product of two words:

* :func:`stuffle_front` peels the first letters,
  ``u_a A * u_b B = u_a (A * u_b B) + u_b (u_a A * B) + u_{a+b} (A * B)``;
* :func:`stuffle_reversed` peels the last letters symmetrically;
* :func:`stuffle_block` peels a whole tail ``u_j u_0^n`` from each factor
  using a triple sum with binomial weights.

:func:`multiplicity_recursive` computes single coefficients of the product
by the matching recursion on coefficients, never forming the product.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Union

from .words import (
    EMPTY,
    LinearCombination,
    Word,
    depth,
    format_word,
    make_word,
    require_admissible,
    tail_split,
)

# Raw products are dicts word -> int; cached values are shared and must not be mutated.
Raw = Dict[Word, int]


@lru_cache(maxsize=65536)
def binomial(n: int, k: int) -> int:
    """``C(n, k)``, zero outside ``0 <= k <= n``."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


_tail = lru_cache(maxsize=None)(tail_split)


@lru_cache(maxsize=None)
def _front(a: Word, b: Word) -> Raw:
    # callers pass (a, b) with a <= b; the product is commutative
    if not a:
        return {b: 1}
    if not b:
        return {a: 1}
    out: Raw = defaultdict(int)
    x, y = a[0], b[0]
    for w, c in _front_pair(a[1:], b).items():
        out[(x,) + w] += c
    for w, c in _front_pair(a, b[1:]).items():
        out[(y,) + w] += c
    for w, c in _front_pair(a[1:], b[1:]).items():
        out[(x + y,) + w] += c
    return dict(out)


def _front_pair(a: Word, b: Word) -> Raw:
    return _front(a, b) if a <= b else _front(b, a)


@lru_cache(maxsize=None)
def _back(a: Word, b: Word) -> Raw:
    if not a:
        return {b: 1}
    if not b:
        return {a: 1}
    out: Raw = defaultdict(int)
    x, y = a[-1], b[-1]
    for w, c in _back(a[:-1], b).items():
        out[w + (x,)] += c
    for w, c in _back(a, b[:-1]).items():
        out[w + (y,)] += c
    for w, c in _back(a[:-1], b[:-1]).items():
        out[w + (x + y,)] += c
    return dict(out)


def _append(out: Raw, part: Raw, suffix: Word, weight: int) -> None:
    for w, c in part.items():
        out[w + suffix] += weight * c


@lru_cache(maxsize=None)
def _block(a: Word, b: Word) -> Raw:
    if depth(a) == 0 or depth(b) == 0:
        return _front_pair(a, b)
    a1, j1, n1 = _tail(a)
    b1, j2, n2 = _tail(b)
    out: Raw = defaultdict(int)
    for j in range(n2 + 1):
        for k in range(j + 1):
            weight = binomial(n1 + k, n1) * binomial(n1, j - k)
            if not weight:
                continue
            for eps in range(min(1, n2 - j) + 1):
                sub = _block(a1, b1 + (j2,) + (0,) * (n2 - j - eps))
                _append(out, sub, (j1,) + (0,) * (n1 + k), weight)
    for j in range(n1 + 1):
        for k in range(j + 1):
            weight = binomial(n2 + k, n2) * binomial(n2, j - k)
            if not weight:
                continue
            for eps in range(min(1, n1 - j) + 1):
                sub = _block(a1 + (j1,) + (0,) * (n1 - j - eps), b1)
                _append(out, sub, (j2,) + (0,) * (n2 + k), weight)
    for k in range(n2 + 1):
        weight = binomial(n1 + k, n1) * binomial(n1, n2 - k)
        if weight:
            _append(out, _block(a1, b1), (j1 + j2,) + (0,) * (n1 + k), weight)
    return {w: c for w, c in out.items() if c}


def _bilinear(raw_product, a, b) -> LinearCombination:
    a = _as_combination(a)
    b = _as_combination(b)
    # integer accumulation over a common denominator; Fraction arithmetic per term is slow
    den = math.lcm(1, *(c.denominator for c in a.values())) * math.lcm(1, *(c.denominator for c in b.values()))
    acc: dict[Word, int] = defaultdict(int)
    for wa, ca in a.items():
        for wb, cb in b.items():
            k = int(ca * cb * den)
            for w, c in raw_product(wa, wb).items():
                acc[w] += k * c
    return LinearCombination({w: Fraction(c, den) for w, c in acc.items() if c})


def _as_combination(x: Union[Word, LinearCombination]) -> LinearCombination:
    if isinstance(x, LinearCombination):
        return x
    return LinearCombination.of(make_word(x))


def stuffle(a, b) -> LinearCombination:
    """Stuffle product of two words or linear combinations (front recursion)."""
    return _bilinear(lambda x, y: _front_pair(x, y), a, b)


def stuffle_front(a, b) -> LinearCombination:
    return stuffle(a, b)


def stuffle_reversed(a, b) -> LinearCombination:
    """Same product, computed by peeling the last letters."""
    return _bilinear(_back, a, b)


def stuffle_block(a, b) -> LinearCombination:
    """Same product, computed by the tail-block triple sum.

    Factors of depth zero (including the empty word) fall back to the front
    recursion, since the block formula needs a letter ``u_j`` with ``j >= 1``
    in each factor.
    """
    return _bilinear(_block, a, b)


IMPLEMENTATIONS = {
    "front": stuffle_front,
    "back": stuffle_reversed,
    "block": stuffle_block,
}


def stuffle_raw(a: Word, b: Word) -> Raw:
    """Integer coefficients of ``a * b`` as a read-only dict (cached)."""
    return _front_pair(tuple(a), tuple(b))


@dataclass(frozen=True)
class MultiplicityQuery:
    w1: Word
    w2: Word
    target: Word

    def __post_init__(self):
        for w in (self.w1, self.w2, self.target):
            require_admissible(make_word(w))


def multiplicity(q: MultiplicityQuery) -> int:
    """Coefficient of ``q.target`` in ``q.w1 * q.w2``."""
    return stuffle_raw(q.w1, q.w2).get(tuple(q.target), 0)


def multiplicity_recursive(q: MultiplicityQuery) -> int:
    """Coefficient of ``q.target`` in ``q.w1 * q.w2`` from the coefficient recursion."""
    return _mult_rec(tuple(q.w1), tuple(q.w2), tuple(q.target))


@lru_cache(maxsize=None)
def _mult_rec(w1: Word, w2: Word, w: Word) -> int:
    if w1 == EMPTY:
        return int(w == w2)
    if w2 == EMPTY:
        return int(w == w1)
    if w == EMPTY:
        return 0
    p1, j1, n1 = _tail(w1)
    p2, j2, n2 = _tail(w2)
    p3, j3, n3 = _tail(w)
    total = 0
    if j1 == j3:
        k = n3 - n1
        for j in range(max(k, 0), n2 + 1):
            if k < 0:
                break
            weight = binomial(n1 + k, n1) * binomial(n1, j - k)
            if not weight:
                continue
            for eps in range(min(1, n2 - j) + 1):
                total += weight * _mult_rec(p1, p2 + (j2,) + (0,) * (n2 - j - eps), p3)
    if j2 == j3:
        k = n3 - n2
        for j in range(max(k, 0), n1 + 1):
            if k < 0:
                break
            weight = binomial(n2 + k, n2) * binomial(n2, j - k)
            if not weight:
                continue
            for eps in range(min(1, n1 - j) + 1):
                total += weight * _mult_rec(p1 + (j1,) + (0,) * (n1 - j - eps), p2, p3)
    if j1 + j2 == j3:
        k = n3 - n1
        if 0 <= k <= n2:
            weight = binomial(n1 + k, n1) * binomial(n1, n2 - k)
            if weight:
                total += weight * _mult_rec(p1, p2, p3)
    return total


def clear_caches() -> None:
    for f in (_front, _back, _block, _mult_rec, _tail):
        f.cache_clear()

