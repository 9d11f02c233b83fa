"""Words over the alphabet ``{u_0, u_1, u_2, ...}`` and rational linear combinations.

A word is stored as a plain tuple of nonnegative ints: entry ``j`` stands
for the letter ``u_j`` and ``()`` is the empty word.  Linear combinations
map words to :class:`fractions.Fraction` coefficients.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Tuple, Union

Word = Tuple[int, ...]

EMPTY: Word = ()


class DomainError(ValueError):
    """An operation was called outside of its mathematical domain."""


class ParseError(ValueError):
    """Malformed text input."""


def make_word(letters: Iterable[int]) -> Word:
    w = tuple(letters)
    for x in w:
        if not isinstance(x, int) or isinstance(x, bool) or x < 0:
            raise DomainError(f"letter index must be a nonnegative integer, got {x!r}")
    return w


def parse_word(text: str) -> Word:
    """Parse ``"2,0,0,1"`` (commas and/or whitespace) into a word.

    >>> parse_word("2,0,0,1,1,0")
    (2, 0, 0, 1, 1, 0)
    >>> parse_word("")
    ()
    """
    text = text.strip()
    if not text:
        return EMPTY
    letters = []
    for token in re.split(r"\s*,\s*|\s+", text):
        if not re.fullmatch(r"\d+", token):
            raise ParseError(f"invalid letter index {token!r}")
        letters.append(int(token))
    return tuple(letters)


def format_word(w: Word) -> str:
    return ",".join(str(x) for x in w)


def concat(a: Word, b: Word) -> Word:
    return tuple(a) + tuple(b)


def length(w: Word) -> int:
    return len(w)


def depth(w: Word) -> int:
    return sum(1 for x in w if x != 0)


def index_sum(w: Word) -> int:
    return sum(w)


def is_admissible(w: Word) -> bool:
    """True for the empty word and for words not starting with ``u_0``."""
    return not w or w[0] > 0


def require_admissible(w: Word) -> None:
    if not is_admissible(w):
        raise DomainError(f"word {format_word(w)!r} starts with u_0 (not admissible)")


def word_key(w: Word) -> tuple[int, Word]:
    """Sort key: shorter words first, then lexicographic on indices."""
    return (len(w), tuple(w))


def canonical_form(w: Word) -> list[tuple[int, int]]:
    """Blocks ``[(k_1, z_1), ..., (k_d, z_d)]`` with ``w = u_k1 u_0^z1 ... u_kd u_0^zd``.

    >>> canonical_form((2, 0, 0, 1, 1, 0))
    [(2, 2), (1, 0), (1, 1)]
    """
    require_admissible(w)
    blocks: list[tuple[int, int]] = []
    for x in w:
        if x:
            blocks.append((x, 0))
        else:
            k, z = blocks[-1]
            blocks[-1] = (k, z + 1)
    return blocks


def from_canonical(blocks: Iterable[tuple[int, int]]) -> Word:
    out: list[int] = []
    for k, z in blocks:
        if k < 1 or z < 0:
            raise DomainError(f"invalid block ({k}, {z})")
        out.append(k)
        out.extend([0] * z)
    return tuple(out)


def tail_split(w: Word) -> tuple[Word, int, int]:
    """Split ``w = prefix . u_j . u_0^n`` at the last nonzero letter."""
    w = tuple(w)
    n = 0
    for i in range(len(w) - 1, -1, -1):
        if w[i]:
            return w[:i], w[i], n
        n += 1
    raise DomainError(f"word {format_word(w)!r} has depth 0; no tail u_j u_0^n with j >= 1")


Coefficient = Union[int, Fraction]


class LinearCombination(Mapping[Word, Fraction]):
    """Finite formal sum of words with rational coefficients.

    Zero coefficients are never stored.  Iteration follows :func:`word_key`.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, Coefficient] | Iterable[tuple[Word, Coefficient]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Fraction] = {}
        for w, c in items:
            w = make_word(w)
            acc[w] = acc.get(w, Fraction(0)) + Fraction(c)
        self._terms = {w: c for w, c in sorted(acc.items(), key=lambda t: word_key(t[0])) if c != 0}
        self._hash = None

    @classmethod
    def of(cls, w: Word, c: Coefficient = 1) -> LinearCombination:
        return cls({tuple(w): c})

    def __getitem__(self, w: Word) -> Fraction:
        return self._terms[tuple(w)]

    def __iter__(self) -> Iterator[Word]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def coefficient(self, w: Word) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    def __add__(self, other: LinearCombination) -> LinearCombination:
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return LinearCombination(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> LinearCombination:
        return self.scale(-1)

    def __sub__(self, other: LinearCombination) -> LinearCombination:
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Coefficient) -> LinearCombination:
        return LinearCombination({w: c * x for w, x in self._terms.items()})

    def __rmul__(self, c: Coefficient) -> LinearCombination:
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LinearCombination):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return "LinearCombination({})"
        body = " + ".join(f"{c}*[{format_word(w)}]" for w, c in self._terms.items())
        return f"LinearCombination({body})"


def lc_add(a: LinearCombination, b: LinearCombination) -> LinearCombination:
    return a + b


def lc_scale(c: Coefficient, a: LinearCombination) -> LinearCombination:
    return a.scale(c)


def coefficient_of(a: LinearCombination, w: Word) -> Fraction:
    return a.coefficient(w)


def format_fraction(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_combination(a: LinearCombination) -> str:
    """One ``num/den : word`` line per term, in word order."""
    return "\n".join(f"{format_fraction(c)} : {format_word(w)}" for w, c in a.items())


def parse_combination(text: str) -> LinearCombination:
    terms = []
    for line in text.splitlines():
        if not line.strip():
            continue
        coeff, sep, word = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'coefficient : word', got {line!r}")
        try:
            c = Fraction(coeff.strip())
        except ValueError:
            raise ParseError(f"invalid coefficient {coeff.strip()!r}") from None
        terms.append((parse_word(word), c))
    return LinearCombination(terms)


def admissible_words(max_len: int, max_index: int) -> list[Word]:
    """All admissible words with length <= max_len and indices <= max_index, in word order."""
    out: list[Word] = [EMPTY]
    layer: list[Word] = [EMPTY]
    for n in range(1, max_len + 1):
        first = range(1, max_index + 1) if n == 1 else range(0, max_index + 1)
        layer = [w + (x,) for w in layer for x in first]
        out.extend(layer)
    return sorted(out, key=word_key)
