"""The duality involution on admissible words."""

from __future__ import annotations

from .words import LinearCombination, Word, canonical_form, from_canonical


def tau(w: Word) -> Word:
    """Reverse the canonical blocks and send each ``(k, z)`` to ``(z + 1, k - 1)``.

    >>> tau((2, 0, 0, 1, 1, 0))
    (2, 1, 3, 0)
    >>> tau((3,))
    (1, 0, 0)
    """
    blocks = canonical_form(tuple(w))
    return from_canonical((z + 1, k - 1) for k, z in reversed(blocks))


def tau_lin(a: LinearCombination) -> LinearCombination:
    return LinearCombination([(tau(w), c) for w, c in a.items()])
