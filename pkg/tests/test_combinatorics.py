import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from envelope_lab.combinatorics import (
    AlcovePoint,
    IntegerDifference,
    LambdaShape,
    PartitionIndex,
    Permutation,
    anti_dominant,
    enumerate_indices,
    i_max,
    leq_sigma,
    sample_alcove,
    shapes_up_to,
    suite_permutations,
)

shapes = st.lists(st.integers(0, 2), min_size=1, max_size=3).filter(lambda l: 0 < sum(l) <= 4).map(LambdaShape)


@given(shapes)
def test_index_count_is_multinomial(shape):
    idx = enumerate_indices(shape)
    assert len(idx) == shape.count() == math.factorial(shape.n) // math.prod(math.factorial(x) for x in shape.lam)
    assert len(set(idx)) == len(idx)
    assert all(I.shape == shape for I in idx)


@given(shapes)
def test_leq_is_a_partial_order_with_top(shape):
    ident = Permutation.identity(shape.n)
    idx = enumerate_indices(shape)
    top = i_max(shape)
    for I in idx:
        assert leq_sigma(I, I, ident)
        assert leq_sigma(I, top, ident)
    for I, J in itertools.product(idx, repeat=2):
        if I != J and leq_sigma(I, J, ident):
            assert not leq_sigma(J, I, ident)


def test_ell_counts_inversions():
    I = PartitionIndex([[3], [1, 2]])
    assert I.ell == 2
    assert PartitionIndex([[1], [2, 3]]).ell == 0
    assert I.p(2, 3) == 2 and I.p(1, 3) == 0


@given(st.permutations(range(1, 5)), st.permutations(range(1, 5)))
def test_permutation_group_laws(a, b):
    s, t = Permutation(a), Permutation(b)
    assert (s * t).inverse() == t.inverse() * s.inverse()
    assert (s * s.inverse()).is_identity()
    assert all((s * t)(x) == s(t(x)) for x in range(1, 5))


def test_permutation_parse():
    assert Permutation.parse("w0", 3) == Permutation([3, 2, 1])
    assert Permutation.parse("2,1,3", 3) == Permutation.transposition(3, 1, 2)
    with pytest.raises(ValueError):
        Permutation([1, 1, 2])


def test_suite_permutations_deterministic():
    a = suite_permutations(4, random.Random(5))
    b = suite_permutations(4, random.Random(5))
    assert a == b and a[0].is_identity() and a[1] == Permutation.longest(4)


def test_alcove_characteristics():
    al = AlcovePoint([0, Fraction(7, 3), Fraction(-1, 2)])
    assert al.m(1, 2) == 2 and al.eps(1, 2) == Fraction(1, 3)
    assert al.m(1, 3) == -1 and al.m(2, 3) == -3
    assert anti_dominant(4).anti_dominant
    with pytest.raises(IntegerDifference):
        AlcovePoint([0, 2])


@given(st.integers(0, 10_000), st.integers(2, 4))
def test_sample_alcove_range(seed, N):
    al = sample_alcove(N, random.Random(seed))
    assert all(-2 <= m <= 2 for _, m in al.m_table())


def test_shapes_up_to_counts():
    assert len(shapes_up_to(2, 2)) == 2 + 2 + 3
    assert LambdaShape((2, 1)).dim == 2 and LambdaShape((1, 2)).lam1 == 1
