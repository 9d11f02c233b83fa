"""Gluing of marked partitions, minimal-block decomposition, and the product check.

``phi(a, b)`` stacks the horizontal blocks of both inputs by decreasing
width (blocks of ``a`` above blocks of ``b`` when widths tie), keeps row
marks with their blocks and takes the union of the column marks.

:func:`verify_theorem` counts, for each pair of words, how often every
marked partition is hit by ``phi`` and compares with the stuffle
multiplicity of its type.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from .partitions import (
    EMPTY_MP,
    MarkedPartition,
    enumerate_marked,
    type_word,
    validate,
)
from .stuffle import MultiplicityQuery, multiplicity, stuffle_raw
from .words import DomainError, Word, admissible_words, format_word, require_admissible, word_key


class PhiInvariantError(AssertionError):
    """phi produced something that is not a marked partition."""


def phi(a: MarkedPartition, b: MarkedPartition) -> MarkedPartition:
    if a.is_empty():
        return b
    if b.is_empty():
        return a
    tagged = [(blk, 0) for blk in a.blocks()] + [(blk, 1) for blk in b.blocks()]
    # stable sort keeps each input's internal order
    tagged.sort(key=lambda t: (-t[0].width, t[1]))
    parts: list[int] = []
    rows: list[int] = []
    for blk, _ in tagged:
        top = len(parts)
        rows.extend(top + r for r in blk.row_marks_local)
        parts.extend([blk.width] * blk.height)
    out = MarkedPartition(tuple(parts), tuple(rows), tuple(sorted(set(a.cols) | set(b.cols))))
    problem = validate(out)
    if problem:
        raise PhiInvariantError(f"phi({a}, {b}) = {out} is invalid: {problem}")
    return out


_GENUINE_PHI = phi


def _require_nonempty(mp: MarkedPartition) -> None:
    if mp.is_empty():
        raise DomainError("the empty marked partition has no minimal block")


def min_part(mp: MarkedPartition) -> int:
    _require_nonempty(mp)
    return mp.parts[-1]


def min_block_col_marks(mp: MarkedPartition) -> frozenset[int]:
    """Column marks lying inside the minimal-width block (columns ``1 .. min_part``)."""
    s = min_part(mp)
    return frozenset(c for c in mp.cols if c <= s)


def split_lower(mp: MarkedPartition) -> MarkedPartition:
    """The minimal-width block on its own, with the column marks it contains."""
    _require_nonempty(mp)
    last = mp.blocks()[-1]
    cm = min_block_col_marks(mp)
    return MarkedPartition((last.width,) * last.height, last.row_marks_local, tuple(sorted(cm)))


def split_rest(mp: MarkedPartition) -> MarkedPartition:
    """Everything above the minimal-width block; its column marks are dropped."""
    _require_nonempty(mp)
    last = mp.blocks()[-1]
    keep = len(mp.parts) - last.height
    if keep == 0:
        return EMPTY_MP
    cm = min_block_col_marks(mp)
    return MarkedPartition(
        mp.parts[:keep],
        tuple(r for r in mp.rows if r <= keep),
        tuple(c for c in mp.cols if c not in cm),
    )


def case_of(a: MarkedPartition, b: MarkedPartition) -> str:
    """Which branch of the minimal-block comparison a preimage pair falls into."""
    if a.is_empty() or b.is_empty():
        return "empty"
    sa, sb = min_part(a), min_part(b)
    return "lt" if sa < sb else "gt" if sa > sb else "eq"


# "empty": one factor is the empty marked partition; otherwise compare min_part(a) with min_part(b)
CASES = ("empty", "lt", "gt", "eq")


@dataclass
class PhiReport:
    w1: Word
    w2: Word
    target: MarkedPartition
    preimages: list[tuple[MarkedPartition, MarkedPartition]]
    expected: int

    @property
    def count(self) -> int:
        return len(self.preimages)

    @property
    def agrees(self) -> bool:
        return self.count == self.expected

    def format(self) -> str:
        lines = []
        for i, (a, b) in enumerate(self.preimages, 1):
            lines.append(f"pair {i}:")
            lines.append(a.to_json())
            lines.append(b.to_json())
        lines.append(f"cells=1 preimages={self.count} mismatches={0 if self.agrees else 1}")
        return "\n".join(lines)


def _fits(part: MarkedPartition, target: MarkedPartition, target_parts: Counter) -> bool:
    # phi keeps every part and unions column marks, so each factor must sit inside the target
    if not set(part.cols) <= set(target.cols):
        return False
    return not Counter(part.parts) - target_parts


def mp_multiplicity(w1: Word, w2: Word, target: MarkedPartition, phi_fn: Optional[Callable] = None) -> PhiReport:
    """Brute force: every pair of marked partitions of types ``w1``, ``w2`` that glues to ``target``.

    With the real ``phi``, factors that cannot occur in any preimage (a part
    or column mark missing from the target) are discarded before pairing.
    A substitute ``phi_fn`` sees every pair.
    """
    w1, w2 = tuple(w1), tuple(w2)
    require_admissible(w1)
    require_admissible(w2)
    problem = validate(target)
    if problem:
        raise DomainError(f"target is not a marked partition: {problem}")
    fn = phi_fn or phi
    prune = fn is _GENUINE_PHI
    parts = Counter(target.parts)
    n = target.weight
    pre = []
    for n1 in range(n + 1):
        left = enumerate_marked(w1, n1)
        right = enumerate_marked(w2, n - n1)
        if prune:
            left = [a for a in left if _fits(a, target, parts)]
            right = [b for b in right if _fits(b, target, parts)] if left else []
        for a in left:
            for b in right:
                if fn(a, b) == target:
                    pre.append((a, b))
    expected = multiplicity(MultiplicityQuery(w1, w2, type_word(target)))
    return PhiReport(w1, w2, target, pre, expected)


@dataclass
class CellResult:
    w1: Word
    w2: Word
    targets: int = 0
    preimages: int = 0
    cases: Counter = field(default_factory=Counter)
    counterexamples: list[str] = field(default_factory=list)


def check_cell(w1: Word, w2: Word, max_n: int, phi_fn: Callable = phi) -> CellResult:
    """Compare phi-preimage counts with stuffle multiplicities for one word pair."""
    res = CellResult(w1, w2)
    hits: Counter = Counter()
    cases: dict[MarkedPartition, Counter] = defaultdict(Counter)
    for n1 in range(max_n + 1):
        left = enumerate_marked(w1, n1)
        if not left:
            continue
        for n2 in range(max_n - n1 + 1):
            for a, b in itertools.product(left, enumerate_marked(w2, n2)):
                p = phi_fn(a, b)
                hits[p] += 1
                cases[p][case_of(a, b)] += 1
    product = stuffle_raw(w1, w2)
    for w in sorted(product, key=word_key):
        m = product[w]
        for n in range(max_n + 1):
            for p in enumerate_marked(w, n):
                got = hits.pop(p, 0)
                res.targets += 1
                res.preimages += got
                res.cases.update(cases.get(p, {}))
                if got != m:
                    res.counterexamples.append(_counterexample(w1, w2, p, got, m))
    # anything left was hit although its type has coefficient 0
    for p, got in sorted(hits.items()):
        res.targets += 1
        res.preimages += got
        res.cases.update(cases[p])
        res.counterexamples.append(_counterexample(w1, w2, p, got, 0))
    return res


def _counterexample(w1: Word, w2: Word, p: MarkedPartition, got: int, expected: int) -> str:
    try:
        t = format_word(type_word(p))
    except DomainError:
        t = "?"
    return (
        f"w1={format_word(w1)} w2={format_word(w2)} target={p.to_json()} "
        f"type={t} preimages={got} expected={expected}"
    )


@dataclass
class TheoremSummary:
    max_len: int
    max_index: int
    max_n: int
    cells: int = 0
    targets: int = 0
    preimages: int = 0
    cases: Counter = field(default_factory=Counter)
    counterexamples: list[str] = field(default_factory=list)

    @property
    def mismatches(self) -> int:
        return len(self.counterexamples)

    def format(self) -> str:
        lines = [
            f"bounds: max_len={self.max_len} max_index={self.max_index} max_N={self.max_n}",
            "cases: " + " ".join(f"{c}={self.cases.get(c, 0)}" for c in CASES),
        ]
        lines.extend(f"counterexample: {c}" for c in self.counterexamples)
        lines.append(
            f"cells={self.cells} targets={self.targets} preimages={self.preimages} mismatches={self.mismatches}"
        )
        return "\n".join(lines)


def _run_cell(args) -> CellResult:
    w1, w2, max_n, phi_fn = args
    return check_cell(w1, w2, max_n, phi_fn)


def verify_theorem(
    max_len: int,
    max_index: int,
    max_n: int,
    jobs: int = 1,
    phi_fn: Optional[Callable] = None,
) -> TheoremSummary:
    """Exhaustive check over all ordered pairs of admissible words in the box.

    Counterexamples are collected, never raised.
    """
    if max_len < 0 or max_index < 0 or max_n < 0:
        raise DomainError("bounds must be nonnegative")
    phi_fn = phi_fn or phi
    words = admissible_words(max_len, max_index)
    cells = [(w1, w2, max_n, phi_fn) for w1 in words for w2 in words]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_cell, cells, chunksize=max(1, len(cells) // (8 * jobs))))
    else:
        results = [_run_cell(c) for c in cells]
    summary = TheoremSummary(max_len, max_index, max_n)
    # cells arrive in word order either way
    for r in results:
        summary.cells += 1
        summary.targets += r.targets
        summary.preimages += r.preimages
        summary.cases.update(r.cases)
        summary.counterexamples.extend(r.counterexamples)
    return summary
