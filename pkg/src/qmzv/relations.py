"""Search for linear relations among truncated q-expansions of words.

Words are drawn from a box (length <= L, every letter index <= I).  A
relation found here only holds through ``q^Q``; truncation can add spurious
relations but never hides a true one.  Relations known a priori come from
duality (``w - tau(w)``) and from the product: ``sz`` is multiplicative and
duality invariant, so ``a * b - a' * b'`` vanishes whenever ``a'`` and
``b'`` are ``a``, ``b`` or their duals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .duality import tau
from .linalg import RationalMatrix, kernel_basis, normalize, rank
from .qseries import sz, sz_lin
from .stuffle import stuffle_raw
from .words import LinearCombination, Word, admissible_words, format_fraction, format_word

PROVENANCES = ("stuffle-generated", "duality-generated", "kernel-only")

GRADING_NOTE = "grading: box (length <= max_len, letter index <= max_index)"


@dataclass(frozen=True)
class WordBasis:
    words: tuple[Word, ...]

    def __post_init__(self):
        if len(set(self.words)) != len(self.words):
            raise ValueError("duplicate words in basis")

    def index(self, w: Word) -> int:
        return self._lookup()[tuple(w)]

    def __contains__(self, w) -> bool:
        return tuple(w) in self._lookup()

    def __len__(self) -> int:
        return len(self.words)

    def _lookup(self) -> dict[Word, int]:
        cache = self.__dict__.get("_idx")
        if cache is None:
            cache = {w: i for i, w in enumerate(self.words)}
            object.__setattr__(self, "_idx", cache)
        return cache

    def vector(self, a: LinearCombination) -> tuple[Fraction, ...] | None:
        """Coordinates of ``a``, or ``None`` if it leaves the basis."""
        v = [Fraction(0)] * len(self.words)
        for w, c in a.items():
            if w not in self:
                return None
            v[self.index(w)] += c
        return tuple(v)

    def combination(self, v: Sequence) -> LinearCombination:
        return LinearCombination({w: c for w, c in zip(self.words, v)})


def enumerate_basis(max_len: int, max_index: int) -> WordBasis:
    return WordBasis(tuple(admissible_words(max_len, max_index)))


@dataclass(frozen=True)
class RelationCandidate:
    basis: WordBasis
    coefficients: tuple[Fraction, ...]
    order: int
    provenance: str

    def combination(self) -> LinearCombination:
        return self.basis.combination(self.coefficients)

    def vanishes(self) -> bool:
        return sz_lin(self.combination(), self.order).is_zero()

    def format(self) -> str:
        terms = []
        for w, c in self.combination().items():
            sign = "-" if c < 0 else "+"
            body = f"{format_fraction(abs(c))} · {format_word(w)}"
            terms.append((sign, body))
        if not terms:
            return f"{self.provenance} | 0"
        text = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return f"{self.provenance} | {text}"


def evaluation_matrix(basis: WordBasis, order: int) -> RationalMatrix:
    """Rows are powers ``q^0 .. q^order``, columns are basis words."""
    cols = [sz(w, order).coeffs for w in basis.words]
    return RationalMatrix.from_rows(
        [[col[n] for col in cols] for n in range(order + 1)], ncols=len(basis.words)
    )


def discover_in(basis: WordBasis, order: int) -> list[RelationCandidate]:
    m = evaluation_matrix(basis, order)
    out = [RelationCandidate(basis, v, order, "kernel-only") for v in kernel_basis(m)]
    for cand in out:
        assert cand.vanishes(), cand.format()
    return out


def discover(max_len: int, max_index: int, order: int) -> list[RelationCandidate]:
    return discover_in(enumerate_basis(max_len, max_index), order)


def _raw_lc(a: Word, b: Word) -> LinearCombination:
    return LinearCombination(stuffle_raw(a, b))


def generated_relations(basis: WordBasis, order: int) -> list[RelationCandidate]:
    """All duality and product relations that fit inside ``basis``, unreduced."""
    out = []
    for w in basis.words:
        t = tau(w)
        if t != w and t in basis:
            v = basis.vector(LinearCombination({w: 1, t: -1}))
            out.append(RelationCandidate(basis, normalize(v), order, "duality-generated"))
    nonempty = [w for w in basis.words if w]
    for i, a in enumerate(nonempty):
        for b in nonempty[i:]:
            ab = basis.vector(_raw_lc(a, b))
            if ab is None:
                continue
            for a2, b2 in dict.fromkeys([(tau(a), b), (a, tau(b)), (tau(a), tau(b))]):
                if (a2, b2) == (a, b):
                    continue
                other = basis.vector(_raw_lc(a2, b2))
                if other is None:
                    continue
                v = [x - y for x, y in zip(ab, other)]
                if any(v):
                    out.append(RelationCandidate(basis, normalize(v), order, "stuffle-generated"))
    return out


def known_span_in(basis: WordBasis, order: int) -> list[RelationCandidate]:
    """A linearly independent subset of :func:`generated_relations` spanning the same space."""
    chosen: list[RelationCandidate] = []
    current = 0
    for cand in generated_relations(basis, order):
        trial = RationalMatrix.from_rows([c.coefficients for c in chosen] + [cand.coefficients], len(basis))
        r = rank(trial)
        if r > current:
            chosen.append(cand)
            current = r
    return chosen


def known_span(max_len: int, max_index: int, order: int) -> list[RelationCandidate]:
    return known_span_in(enumerate_basis(max_len, max_index), order)


@dataclass(frozen=True)
class Comparison:
    dim_kernel: int
    dim_known: int
    containment: bool
    order: int
    basis_size: int

    def format(self) -> str:
        return (
            f"basis={self.basis_size} order={self.order} dim_kernel={self.dim_kernel} "
            f"dim_known={self.dim_known} containment={str(self.containment).lower()}\n{GRADING_NOTE}"
        )


def compare_in(basis: WordBasis, order: int) -> Comparison:
    m = evaluation_matrix(basis, order)
    kernel = kernel_basis(m)
    known = known_span_in(basis, order)
    contained = all(not any(m.apply(c.coefficients)) for c in known)
    return Comparison(len(kernel), len(known), contained, order, len(basis))


def compare(max_len: int, max_index: int, order: int) -> Comparison:
    return compare_in(enumerate_basis(max_len, max_index), order)


def in_span(vectors: Sequence[Sequence], v: Sequence, ncols: int) -> bool:
    base = rank(RationalMatrix.from_rows(list(vectors), ncols)) if vectors else 0
    return rank(RationalMatrix.from_rows(list(vectors) + [v], ncols)) == base

