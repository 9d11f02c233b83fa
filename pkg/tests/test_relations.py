import random
from fractions import Fraction

import pytest
import sympy

from qmzv.linalg import RationalMatrix, kernel_basis, normalize, rank, reduced_echelon
from qmzv.relations import (
    GRADING_NOTE,
    RelationCandidate,
    WordBasis,
    compare,
    compare_in,
    discover,
    discover_in,
    enumerate_basis,
    evaluation_matrix,
    generated_relations,
    in_span,
    known_span,
    known_span_in,
)
from qmzv.words import DomainError, LinearCombination as LC

F = Fraction
DUALITY = LC({(2,): 1, (1, 0): -1})


def M(rows, ncols=None):
    return RationalMatrix.from_rows(rows, ncols)


def test_kernel_examples():
    (v,) = kernel_basis(M([[1, 2], [2, 4]]))
    assert v == (2, -1)
    assert kernel_basis(M([[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == []
    assert kernel_basis(M([[0]])) == [(1,)]
    assert kernel_basis(M([], 2)) == [(1, 0), (0, 1)]


def test_ragged_rejected():
    with pytest.raises(DomainError):
        M([[1, 2], [3]])


def test_normalize():
    assert normalize([F(-1, 2), F(3, 4), 0]) == (2, -3, 0)
    assert normalize([0, 0]) == (0, 0)


def test_echelon_rows_are_reduced():
    rows, pivots = reduced_echelon(M([[2, 4, 6], [1, 1, 1], [3, 5, 7]]))
    assert pivots == [0, 1]
    for r, p in zip(rows, pivots):
        assert r[p] > 0
        assert all(other[p] == 0 for other in rows if other is not r)


def _sympy_kernel(rows, ncols):
    return sympy.Matrix(rows).nullspace() if rows else [sympy.eye(ncols)[:, i] for i in range(ncols)]


def test_kernel_against_sympy_random():
    rng = random.Random(20261016)
    for _ in range(60):
        nrows, ncols = rng.randint(1, 7), rng.randint(1, 7)
        # build low-rank matrices often, so kernels are nontrivial
        r = rng.randint(0, min(nrows, ncols))
        left = [[F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(r)] for _ in range(nrows)]
        right = [[F(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(ncols)] for _ in range(r)]
        rows = [[sum((left[i][k] * right[k][j] for k in range(r)), F(0)) for j in range(ncols)] for i in range(nrows)]
        m = M(rows, ncols)
        ours = kernel_basis(m)
        theirs = _sympy_kernel([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows], ncols)
        assert len(ours) == len(theirs) == ncols - rank(m)
        assert rank(m) == sympy.Matrix(rows).rank()
        for v in ours:
            assert not any(m.apply(v))
        for t in theirs:
            vec = [F(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in t]
            assert in_span(ours, vec, ncols)


def test_enumerate_basis():
    assert enumerate_basis(1, 2).words == ((), (1,), (2,))
    assert enumerate_basis(0, 7).words == ((),)
    assert enumerate_basis(2, 1).words == ((), (1,), (1, 0), (1, 1))
    with pytest.raises(ValueError):
        WordBasis(((1,), (1,)))


def test_vector_and_combination():
    b = enumerate_basis(2, 2)
    v = b.vector(DUALITY)
    assert b.combination(v) == DUALITY
    assert b.vector(LC({(3,): 1})) is None


def test_discover_duality_pair():
    basis = WordBasis(((2,), (1, 0)))
    (cand,) = discover_in(basis, 30)
    assert cand.combination() == DUALITY
    assert cand.provenance == "kernel-only"
    assert cand.format() == "kernel-only | 1 · 2 - 1 · 1,0"


def test_discover_trivial_and_box():
    assert discover_in(WordBasis(((),)), 12) == []
    found = [c.combination() for c in discover(2, 2, 30)]
    assert DUALITY in found


def test_known_span_examples():
    assert any(c.combination() == DUALITY for c in known_span(2, 2, 30))
    assert known_span_in(WordBasis(()), 10) == []
    assert known_span(1, 1, 30) == []


def test_compare_examples():
    a = compare(1, 1, 30)
    assert (a.dim_kernel, a.dim_known, a.containment) == (0, 0, True)
    b = compare(2, 2, 30)
    assert b.dim_known >= 1 and b.containment
    c = compare(0, 0, 10)
    assert (c.dim_kernel, c.dim_known, c.containment) == (0, 0, True)
    assert b.format().splitlines() == [
        f"basis=9 order=30 dim_kernel={b.dim_kernel} dim_known={b.dim_known} containment=true",
        GRADING_NOTE,
    ]


def test_every_candidate_vanishes():
    for cand in discover(3, 2, 30) + known_span(3, 2, 30):
        assert cand.vanishes()


def test_generated_relations_are_genuine_at_higher_order():
    # product and duality relations are identities, so they hold past the truncation used to find them
    basis = enumerate_basis(3, 2)
    for cand in generated_relations(basis, 20):
        assert RelationCandidate(basis, cand.coefficients, 40, cand.provenance).vanishes()


def test_known_span_inside_kernel_and_independent():
    basis = enumerate_basis(3, 2)
    result = compare_in(basis, 30)
    known = known_span_in(basis, 30)
    assert result.containment
    assert rank(M([c.coefficients for c in known], len(basis))) == len(known) == result.dim_known
    kernel = discover_in(basis, 30)
    for c in known:
        assert in_span([k.coefficients for k in kernel], c.coefficients, len(basis))


def test_kernel_dimension_non_increasing_in_order():
    basis = enumerate_basis(3, 2)
    dims = [len(discover_in(basis, q)) for q in (4, 8, 12, 20, 30, 40)]
    assert dims == sorted(dims, reverse=True)


def test_provenance_labels():
    kinds = {c.provenance for c in known_span(3, 3, 30)}
    assert kinds <= {"stuffle-generated", "duality-generated"}
    assert "duality-generated" in kinds
    assert "stuffle-generated" in kinds


def test_evaluation_matrix_shape():
    basis = enumerate_basis(2, 1)
    m = evaluation_matrix(basis, 6)
    assert m.nrows == 7 and m.ncols == 4
    assert m.rows[0] == (1, 0, 0, 0)
