"""Schlesinger-Zudilin multiple q-zeta values: words, stuffle, q-series and marked partitions."""

from .duality import tau, tau_lin
from .partitions import (
    EMPTY_MP,
    MarkedPartition,
    conjugate,
    enumerate_marked,
    horizontal_blocks,
    psi_census,
    type_word,
    validate,
)
from .phi import min_block_col_marks, min_part, mp_multiplicity, phi, split_lower, split_rest, verify_theorem
from .qseries import TruncatedSeries, psi, sz
from .stuffle import (
    MultiplicityQuery,
    binomial,
    multiplicity,
    multiplicity_recursive,
    stuffle,
    stuffle_block,
    stuffle_reversed,
)
from .words import (
    DomainError,
    LinearCombination,
    ParseError,
    canonical_form,
    concat,
    depth,
    is_admissible,
    length,
    parse_word,
    tail_split,
)

__version__ = "0.1.0"
