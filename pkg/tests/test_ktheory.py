import random
from fractions import Fraction

import pytest

from envelope_lab.algebra import H_VAR, RationalExpression, z, zh_ring
from envelope_lab.combinatorics import (
    AlcovePoint,
    LambdaShape,
    Permutation,
    all_permutations,
    anti_dominant,
    enumerate_indices,
    sample_alcove,
    suite_permutations,
)
from envelope_lab.ktheory import (
    LocalizationClass,
    axioms_check,
    cocycle_check,
    compare_reference_r,
    diagonal_consistency,
    exchange_consistency,
    geometric_r,
    gluing_check,
    mat_equal,
    mat_mul,
    reference_rn,
    stab_matrix,
)
from envelope_lab.suites import nor_display_check
from envelope_lab.trig import stab_class


def sample(N, seed):
    return sample_alcove(N, random.Random(seed))


@pytest.mark.parametrize("lam", [(1, 1), (2, 1), (1, 1, 1), (2, 2), (1, 0, 2)])
def test_stab_classes_satisfy_axioms(lam):
    shape = LambdaShape(lam)
    al = sample(shape.N, sum(lam))
    for sigma in suite_permutations(shape.n, random.Random(4)):
        for I in enumerate_indices(shape):
            c = stab_class(sigma, I, al)
            assert axioms_check(sigma, I, al, c)["ok"]
            assert gluing_check(c)["ok"]


def test_wrong_diagonal_fails_axiom_II():
    shape = LambdaShape((1, 2))
    al = anti_dominant(2)
    sigma = Permutation.identity(3)
    I = enumerate_indices(shape)[1]
    c = stab_class(sigma, I, al)
    bad = c.replace(I, c[I] * 2)
    r = axioms_check(sigma, I, al, bad)
    assert not r["ok"] and r["II"] == [I]


def test_shifted_class_fails_axiom_III():
    shape = LambdaShape((1, 2))
    al = anti_dominant(2)
    sigma = Permutation.identity(3)
    ring = zh_ring(3)
    I = enumerate_indices(shape)[-1]
    c = stab_class(sigma, I, al)
    off = [J for J in enumerate_indices(shape) if J != I and not c[J].is_zero()]
    assert off
    J = off[0]
    bad = c.replace(J, c[J] * ring.var(z(1), 5))
    r = axioms_check(sigma, I, al, bad)
    assert not r["ok"] and r["III"]


def test_gluing_detects_a_broken_restriction():
    shape = LambdaShape((1, 1))
    al = AlcovePoint([0, Fraction(1, 2)])
    I12, I21 = enumerate_indices(shape)
    c = stab_class(Permutation.identity(2), I21, al)
    ring = zh_ring(2)
    assert gluing_check(c)["ok"]
    bad = c.replace(I12, c[I12] + ring.var(H_VAR))
    assert not gluing_check(bad)["ok"]


def test_constant_class_glues():
    shape = LambdaShape((2, 1))
    ring = zh_ring(3)
    c = LocalizationClass(shape, {J: ring.one() for J in enumerate_indices(shape)})
    assert gluing_check(c)["ok"]


def test_single_point_case():
    shape = LambdaShape((0, 1))
    al = anti_dominant(2)
    (I,) = enumerate_indices(shape)
    c = stab_class(Permutation.identity(1), I, al)
    assert c[I] == zh_ring(1).one()


def test_n2_displays():
    c = nor_display_check()
    assert c.failed == 0 and c.checked == 56


@pytest.mark.parametrize("lam", [(1, 2), (2, 1, 1)])
def test_stab_matrix_triangular(lam):
    shape = LambdaShape(lam)
    al = sample(shape.N, 9)
    for sigma in suite_permutations(shape.n, random.Random(1)):
        A = stab_matrix(sigma, al, shape)
        assert A.is_triangular() and diagonal_consistency(A)


def test_r_of_equal_chambers_is_identity():
    shape = LambdaShape((1, 2))
    al = sample(2, 3)
    idx = enumerate_indices(shape)
    for sigma in all_permutations(3):
        R = geometric_r(sigma, sigma, al, shape)
        for J in idx:
            for I in idx:
                assert R[J, I] == (1 if I == J else 0)


@pytest.mark.parametrize("m", range(-2, 3))
def test_reference_r_n2(m):
    r = compare_reference_r(AlcovePoint([0, Fraction(m) + Fraction(2, 5)]))
    assert r["ok"], r["RN_mismatches"]


def test_reference_r_anti_dominant_includes_older_normalization():
    r = compare_reference_r(anti_dominant(3))
    assert r["ok"] and r["RO_checked"]


def test_reference_rn_diagonal_entry():
    al = AlcovePoint([0, Fraction(1, 2)])
    ring = zh_ring(2)
    expected = RationalExpression.build(
        ring.binomial(1, {z(2): 1, z(1): -1}) * ring.h_half(1), [(1, ring.mono({z(2): 1, z(1): -1, H_VAR: 1}))]
    )
    assert reference_rn(al, 1, 2, 1, 2) == expected
    assert reference_rn(al, 1, 1, 1, 1) == 1


def test_cocycle_on_s3():
    al = sample(2, 0)
    assert cocycle_check(LambdaShape((1, 2)), al) == []


def test_r_inverse_pair():
    shape = LambdaShape((2, 1))
    al = sample(2, 5)
    s, e = Permutation.longest(3), Permutation.identity(3)
    idx = enumerate_indices(shape)
    P = mat_mul(geometric_r(e, s, al, shape), geometric_r(s, e, al, shape), idx, zh_ring(3))
    Id = {(J, I): RationalExpression.lift(zh_ring(3).const(int(I == J))) for J in idx for I in idx}
    assert mat_equal(P, Id, idx)


@pytest.mark.parametrize("lam", [(1, 1), (1, 2), (1, 1, 1)])
def test_elementary_moves(lam):
    shape = LambdaShape(lam)
    al = sample(shape.N, 2)
    for sigma in all_permutations(shape.n):
        for I in enumerate_indices(shape):
            for a in range(1, shape.n):
                assert exchange_consistency(sigma, I, a, al) == []
