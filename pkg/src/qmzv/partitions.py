"""Partitions, horizontal blocks and marked partitions.

Rows are numbered 1.. from the top, columns 1.. from the left.  A marked
partition stores every mark explicitly, including the forced ones (the
lowest row of each part length, the rightmost column of each column height).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .stuffle import binomial
from .words import DomainError, ParseError, Word, canonical_form, from_canonical

Partition = tuple  # weakly decreasing tuple of positive ints


def make_partition(parts: Sequence[int]) -> Partition:
    p = tuple(parts)
    if any((not isinstance(x, int)) or x <= 0 for x in p):
        raise DomainError(f"parts must be positive integers: {list(p)}")
    if any(p[i] < p[i + 1] for i in range(len(p) - 1)):
        raise DomainError(f"parts must be weakly decreasing: {list(p)}")
    return p


def conjugate(p: Partition) -> Partition:
    """Column heights of the Young diagram.

    >>> conjugate((3, 1))
    (2, 1, 1)
    """
    if not p:
        return ()
    return tuple(sum(1 for x in p if x >= c) for c in range(1, p[0] + 1))


@dataclass(frozen=True)
class HorizontalBlock:
    width: int
    height: int
    row_marks_local: tuple[int, ...] = ()


def _runs(p: Partition) -> list[tuple[int, int]]:
    return [(m, len(list(g))) for m, g in itertools.groupby(p)]


def horizontal_blocks(p) -> list[HorizontalBlock]:
    """Maximal runs of equal rows, top to bottom.

    Accepts a bare partition (blocks carry no marks) or a marked partition.
    """
    if isinstance(p, MarkedPartition):
        return p.blocks()
    return [HorizontalBlock(m, n) for m, n in _runs(tuple(p))]


@dataclass(frozen=True, order=True)
class MarkedPartition:
    parts: tuple[int, ...] = ()
    rows: tuple[int, ...] = ()
    cols: tuple[int, ...] = ()

    @classmethod
    def build(cls, parts, rows=(), cols=()) -> MarkedPartition:
        return cls(make_partition(parts), tuple(sorted(set(rows))), tuple(sorted(set(cols))))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def is_empty(self) -> bool:
        return not self.parts

    def blocks(self) -> list[HorizontalBlock]:
        out = []
        top = 0
        marks = set(self.rows)
        for m, n in _runs(self.parts):
            local = tuple(r - top for r in range(top + 1, top + n + 1) if r in marks)
            out.append(HorizontalBlock(m, n, local))
            top += n
        return out

    def to_json(self) -> str:
        return json.dumps(
            {"parts": list(self.parts), "rows": list(self.rows), "cols": list(self.cols)},
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> MarkedPartition:
        try:
            data = json.loads(text)
            return cls.build(data["parts"], data["rows"], data["cols"])
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"not a marked partition: {text.strip()!r} ({exc})") from None

    def __str__(self) -> str:
        return self.to_json()


EMPTY_MP = MarkedPartition()


def validate(mp: MarkedPartition) -> Optional[str]:
    """Return ``None`` when both markings are distinct, else a description of the first problem."""
    p = mp.parts
    try:
        make_partition(p)
    except DomainError as exc:
        return str(exc)
    if list(mp.rows) != sorted(set(mp.rows)) or list(mp.cols) != sorted(set(mp.cols)):
        return "mark lists must be strictly ascending"
    if not p:
        if mp.rows or mp.cols:
            return "empty partition cannot carry marks"
        return None
    for r in mp.rows:
        if not 1 <= r <= len(p):
            return f"row mark {r} outside rows 1..{len(p)}"
    for c in mp.cols:
        if not 1 <= c <= p[0]:
            return f"column mark {c} outside columns 1..{p[0]}"
    rows = set(mp.rows)
    bottom = 0
    for m, n in _runs(p):
        bottom += n
        if bottom not in rows:
            return f"row group of length {m}: lowest row {bottom} is not marked"
    cols = set(mp.cols)
    for m, _ in _runs(p):
        if m not in cols:
            return f"column group ending at column {m}: rightmost column {m} is not marked"
    return None


def is_valid(mp: MarkedPartition) -> bool:
    return validate(mp) is None


def marking_types(mp: MarkedPartition) -> list[tuple[int, int]]:
    """Per row group ``(k_j, z_j)``: marked rows of length ``m_j`` and marked columns in ``m_{j+1}+1 .. m_j``."""
    runs = _runs(mp.parts)
    cols = set(mp.cols)
    out = []
    for j, block in enumerate(mp.blocks()):
        lower = runs[j + 1][0] if j + 1 < len(runs) else 0
        z = sum(1 for c in range(lower + 1, block.width + 1) if c in cols)
        out.append((len(block.row_marks_local), z))
    return out


def type_word(mp: MarkedPartition) -> Word:
    problem = validate(mp)
    if problem:
        raise DomainError(f"invalid marked partition {mp.to_json()}: {problem}")
    return from_canonical((k, z - 1) for k, z in marking_types(mp))


def _chains(blocks: list[tuple[int, int]], n_total: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All ``(m, n)`` with m strictly decreasing, n_j >= k_j, m_j - m_{j+1} >= z_j, sum m_j n_j = N.

    ``blocks`` holds ``(k_j, z_j)`` with ``z_j`` counted as marks (word exponent + 1).
    """
    d = len(blocks)
    # smallest admissible m_j: m_j >= z_j + ... + z_d
    low = [0] * (d + 1)
    for j in range(d - 1, -1, -1):
        low[j] = low[j + 1] + blocks[j][1]
    # smallest weight from blocks j..: sum k_i * low_i
    wmin = [0] * (d + 1)
    for j in range(d - 1, -1, -1):
        wmin[j] = wmin[j + 1] + blocks[j][0] * low[j]

    def rec(j: int, upper: int, remaining: int, ms: tuple, ns: tuple):
        if j == d:
            if remaining == 0:
                yield ms, ns
            return
        k, _ = blocks[j]
        for m in range(low[j], upper + 1):
            # next part must satisfy m - m_next >= z_j, i.e. m_next <= m - z_j
            if m * k + wmin[j + 1] > remaining:
                break
            n = k
            while m * n + wmin[j + 1] <= remaining:
                yield from rec(j + 1, m - blocks[j][1], remaining - m * n, ms + (m,), ns + (n,))
                n += 1

    yield from rec(0, n_total, n_total, (), ())


@lru_cache(maxsize=None)
def _enumerate(w: Word, n_total: int) -> tuple[MarkedPartition, ...]:
    blocks = [(k, z + 1) for k, z in canonical_form(w)]
    if not blocks:
        return (EMPTY_MP,) if n_total == 0 else ()
    out = []
    for ms, ns in _chains(blocks, n_total):
        parts = tuple(m for m, n in zip(ms, ns) for _ in range(n))
        row_choices = []
        top = 0
        for (k, _), n in zip(blocks, ns):
            free = range(top + 1, top + n)
            row_choices.append([c + (top + n,) for c in itertools.combinations(free, k - 1)])
            top += n
        col_choices = []
        for j, (_, z) in enumerate(blocks):
            lower = ms[j + 1] if j + 1 < len(ms) else 0
            free = range(lower + 1, ms[j])
            col_choices.append([c + (ms[j],) for c in itertools.combinations(free, z - 1)])
        rows_all = [tuple(sorted(itertools.chain(*rs))) for rs in itertools.product(*row_choices)]
        cols_all = [tuple(sorted(itertools.chain(*cs))) for cs in itertools.product(*col_choices)]
        for rows in sorted(rows_all):
            for cols in sorted(cols_all):
                out.append(((ms, ns, rows, cols), MarkedPartition(parts, rows, cols)))
    out.sort(key=lambda t: t[0])
    return tuple(mp for _, mp in out)


def enumerate_marked(w: Word, n_total: int) -> list[MarkedPartition]:
    """All marked partitions of ``n_total`` whose type is ``w``, in a fixed order.

    Order is lexicographic in (distinct parts, multiplicities, row marks, column marks).
    """
    if n_total < 0:
        return []
    return list(_enumerate(tuple(w), n_total))


def psi_census(w: Word, n_total: int) -> int:
    return len(_enumerate(tuple(w), n_total))


def census_formula(w: Word, n_total: int) -> int:
    """Count via the product of binomials, without listing the marks."""
    blocks = [(k, z + 1) for k, z in canonical_form(tuple(w))]
    if not blocks:
        return int(n_total == 0)
    total = 0
    for ms, ns in _chains(blocks, n_total):
        term = 1
        for j, ((k, z), m, n) in enumerate(zip(blocks, ms, ns)):
            lower = ms[j + 1] if j + 1 < len(ms) else 0
            term *= binomial(n - 1, k - 1) * binomial(m - lower - 1, z - 1)
        total += term
    return total


def parse_marked_lines(text: str) -> list[MarkedPartition]:
    return [MarkedPartition.from_json(line) for line in text.splitlines() if line.strip()]


def format_marked_lines(mps) -> str:
    return "\n".join(mp.to_json() for mp in mps)




def integer_partitions(n: int, largest: int | None = None) -> Iterator[Partition]:
    """Partitions of ``n`` as weakly decreasing tuples, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first,) + rest


def all_marked(n: int) -> list[MarkedPartition]:
    """Every marked partition of ``n``, of any type."""
    out = []
    for p in integer_partitions(n):
        runs = _runs(p)
        row_opts, col_opts = [], []
        top = 0
        for j, (m, h) in enumerate(runs):
            lower = runs[j + 1][0] if j + 1 < len(runs) else 0
            free_rows = range(top + 1, top + h)
            row_opts.append([c + (top + h,) for r in range(h) for c in itertools.combinations(free_rows, r)])
            free_cols = range(lower + 1, m)
            col_opts.append([c + (m,) for r in range(m - lower) for c in itertools.combinations(free_cols, r)])
            top += h
        for rs in itertools.product(*row_opts):
            rows = tuple(sorted(itertools.chain(*rs)))
            for cs in itertools.product(*col_opts):
                out.append(MarkedPartition(p, rows, tuple(sorted(itertools.chain(*cs)))))
    return out
