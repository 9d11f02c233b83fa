import importlib
import itertools
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from oracles import quasi_shuffles
from qmzv.stuffle import (
    MultiplicityQuery,
    binomial,
    multiplicity,
    multiplicity_recursive,
    stuffle,
    stuffle_block,
    stuffle_raw,
    stuffle_reversed,
)
from qmzv.words import DomainError, LinearCombination, admissible_words, is_admissible

LC = LinearCombination


def all_words(max_len, max_index):
    return [w for n in range(max_len + 1) for w in itertools.product(range(max_index + 1), repeat=n)]


def test_stuffle_examples():
    assert stuffle((1,), (1,)) == LC({(1, 1): 2, (2,): 1})
    assert stuffle((), (2, 0)) == LC({(2, 0): 1})
    assert stuffle((1,), (0,)) == LC({(1, 0): 1, (0, 1): 1, (1,): 1})


def test_stuffle_is_bilinear_on_combinations():
    a = LC({(1,): 2, (2,): -1})
    b = LC({(1,): 1, (): 3})
    expected = 2 * stuffle((1,), (1,)) + stuffle((1,), ()).scale(6) - stuffle((2,), (1,)) - stuffle((2,), ()).scale(3)
    assert stuffle(a, b) == expected


def test_reversed_examples():
    assert stuffle_reversed((1,), (1,)) == LC({(1, 1): 2, (2,): 1})
    assert stuffle_reversed((), (3, 0, 1)) == LC({(3, 0, 1): 1})
    assert stuffle_reversed((1, 0), (2,)) == stuffle((1, 0), (2,))


def test_block_examples():
    assert stuffle_block((1, 0), (1,)) == stuffle((1, 0), (1,))
    assert stuffle_block((1,), (1,)) == LC({(1, 1): 2, (2,): 1})
    # depth-zero factors fall back to the front recursion
    assert stuffle_block((0, 0), (1, 0)) == stuffle((0, 0), (1, 0))


def test_example_product_coefficient_matches_quasi_shuffle_count():
    # direct enumeration of quasi-shuffles gives 6 for this coefficient
    oracle = quasi_shuffles((1, 0, 1, 0), (2, 0, 0))
    assert oracle[(3, 0, 0, 1, 0)] == 6
    for impl in (stuffle, stuffle_reversed, stuffle_block):
        assert impl((1, 0, 1, 0), (2, 0, 0)).coefficient((3, 0, 0, 1, 0)) == 6


def test_front_recursion_matches_quasi_shuffle_oracle():
    ws = all_words(3, 2)
    for a in ws:
        for b in ws:
            assert stuffle(a, b) == LC(quasi_shuffles(a, b)), (a, b)


def test_multiplicity_examples():
    q = MultiplicityQuery((1, 0, 1, 0), (2, 0, 0), (3, 0, 0, 1, 0))
    assert multiplicity(q) == multiplicity_recursive(q) == 6
    w = (2, 0, 1)
    assert multiplicity(MultiplicityQuery((), w, w)) == 1
    assert multiplicity(MultiplicityQuery((1,), (1,), (1, 1))) == 2


def test_multiplicity_recursive_boundary_cases():
    assert multiplicity_recursive(MultiplicityQuery((), (2, 0), (2, 0))) == 1
    assert multiplicity_recursive(MultiplicityQuery((), (2, 0), (2,))) == 0
    assert multiplicity_recursive(MultiplicityQuery((3,), (), (3,))) == 1
    assert multiplicity_recursive(MultiplicityQuery((1,), (1,), ())) == 0
    assert multiplicity_recursive(MultiplicityQuery((), (), ())) == 1


def test_multiplicity_query_rejects_non_admissible():
    with pytest.raises(DomainError):
        MultiplicityQuery((0, 1), (1,), (1,))


def test_binomial():
    assert binomial(4, 2) == 6
    assert binomial(3, 5) == 0
    assert binomial(0, 0) == 1
    assert binomial(-1, 0) == 0
    assert binomial(5, -1) == 0


def test_commutativity_all_words():
    # every word (admissible or not) up to length 4, indices <= 3, on the ordered-key back route;
    # the front route stores one entry per unordered pair, so it cannot witness commutativity
    back = importlib.import_module("qmzv.stuffle")._back
    ws = all_words(4, 3)
    for a in ws:
        for b in ws:
            assert back(a, b) == back(b, a), (a, b)
        back.cache_clear()


def _times(x, c, left=False):
    # x is a raw product {word: count}; multiply termwise by the word c on the right (or left)
    out = Counter()
    for w, k in x.items():
        for v, m in (stuffle_raw(c, w) if left else stuffle_raw(w, c)).items():
            out[v] += k * m
    return out


def test_associativity():
    # all words up to length 3, indices <= 2: 64000 triples, on integer dicts for speed
    ws = all_words(3, 2)
    for a in ws:
        for b in ws:
            ab = stuffle_raw(a, b)
            for c in ws:
                assert _times(ab, c) == _times(stuffle_raw(b, c), a, left=True), (a, b, c)


def test_associativity_on_combinations():
    x = LC({(1,): 2, (2, 0): -1})
    y = LC({(1, 1): 1, (): 1})
    z = LC({(3,): 1, (1, 0): 4})
    assert stuffle(stuffle(x, y), z) == stuffle(x, stuffle(y, z))


def test_closure_and_grading():
    ws = admissible_words(3, 3)
    for a in ws:
        for b in ws:
            for w, c in stuffle(a, b).items():
                assert c > 0 and c.denominator == 1
                assert is_admissible(w)
                assert sum(w) == sum(a) + sum(b)
                assert max(len(a), len(b)) <= len(w) <= len(a) + len(b)


def test_three_routes_agree_with_non_admissible_inputs():
    ws = all_words(3, 2)
    for a in ws:
        for b in ws:
            f = stuffle(a, b)
            assert stuffle_reversed(a, b) == f
            assert stuffle_block(a, b) == f


def test_recursion_is_zero_off_support():
    ws = admissible_words(2, 2)
    targets = admissible_words(4, 4)
    for a in ws:
        for b in ws:
            prod = stuffle(a, b)
            for w in targets:
                assert multiplicity_recursive(MultiplicityQuery(a, b, w)) == prod.coefficient(w)


word = st.lists(st.integers(0, 4), min_size=0, max_size=5).map(tuple)


@settings(max_examples=60, deadline=None)
@given(word, word)
def test_routes_agree_random(a, b):
    f = stuffle(a, b)
    assert stuffle_reversed(a, b) == f == stuffle_block(a, b)
    assert f == LC(quasi_shuffles(a, b))


def test_fractional_coefficients():
    from fractions import Fraction as F

    got = stuffle(LC({(1,): F(1, 2)}), LC({(1,): F(2, 3), (2,): F(1, 6)}))
    assert got == LC({(1, 1): F(2, 3), (2,): F(1, 3), (1, 2): F(1, 12), (2, 1): F(1, 12), (3,): F(1, 12)})
    assert stuffle(LC(), (1,)) == LC()
