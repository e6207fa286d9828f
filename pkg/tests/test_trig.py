import itertools
import random
from fractions import Fraction

import pytest
import sympy

from envelope_lab.algebra import NotDivisible
from envelope_lab.combinatorics import (
    AlcovePoint,
    LambdaShape,
    Permutation,
    enumerate_indices,
    leq_sigma,
    sample_alcove,
    suite_permutations,
)
from envelope_lab.suites import check_flag_example, _trig_shape_task
from envelope_lab.trig import (
    CapExceeded,
    codim,
    euler_and_P,
    exchange_verify_symbolic,
    pe_product,
    substitute_fixed_point,
    trig_weight_symbolic,
    weight_at,
    weight_tilde_at,
)
from sympy_bridge import same, same_at_points, to_sympy

h = sympy.Symbol("h")


def zs(n):
    return [sympy.Symbol(f"z{a}") for a in range(1, n + 1)]


def ts(k, L):
    return [sympy.Symbol(f"t{k}_{a}") for a in range(1, L + 1)]


def oracle_weight(I, alcove, sigma=None):
    """The symmetrized product written out directly in sympy."""
    shape = I.shape
    n, N = shape.n, shape.N
    sigma = sigma or Permutation.identity(n)
    Ip = I.apply(sigma.inverse())
    z = zs(n)
    zsig = [z[sigma(a) - 1] for a in range(1, n + 1)]
    L = [shape.cum(k) for k in range(1, N + 1)]
    tvars = [ts(k, L[k - 1]) for k in range(1, N)] + [zsig]

    def U(tv):
        out = sympy.Integer(1)
        for k in range(1, N):
            ik, ik1 = Ip.cumulative(k), Ip.cumulative(k + 1)
            for a in range(1, L[k - 1] + 1):
                ta = tv[k - 1][a - 1]
                for c in range(1, L[k] + 1):
                    x = tv[k][c - 1] / ta
                    if ik1[c - 1] < ik[a - 1]:
                        out *= 1 - h * x
                    elif ik1[c - 1] == ik[a - 1]:
                        j = Ip.block_of(ik[a - 1])
                        out *= x ** (-alcove.m(j, k + 1))
                    else:
                        out *= 1 - x
                for b in range(a + 1, L[k - 1] + 1):
                    y = tv[k - 1][b - 1] / ta
                    out *= (1 - h * y) / (1 - y)
        return out

    total = sympy.Integer(0)
    for choice in itertools.product(*[itertools.permutations(range(L[k - 1])) for k in range(1, N)]):
        tv = [[tvars[k][i] for i in choice[k]] for k in range(N - 1)] + [zsig]
        total += U(tv)
    return (1 - h) ** shape.lam1 * total


def alcove_for(N, seed):
    return sample_alcove(N, random.Random(seed))


@pytest.mark.parametrize("lam", [(1, 1), (1, 2), (2, 1), (1, 1, 1), (0, 2, 1), (2, 2)])
def test_symbolic_weight_matches_oracle(lam):
    shape = LambdaShape(lam)
    al = alcove_for(shape.N, sum(lam))
    rng = random.Random(1)
    for I in enumerate_indices(shape):
        for sigma in {Permutation.identity(shape.n), Permutation.random(shape.n, rng)}:
            W, Wt = trig_weight_symbolic(I, al, sigma)
            expected = oracle_weight(I, al, sigma)
            assert same_at_points(to_sympy(W), expected)
            E = sympy.Integer(1)
            for k in range(1, shape.N):
                t = ts(k, shape.cum(k))
                E *= sympy.prod([1 - h * b / a for a in t for b in t])
            assert same_at_points(to_sympy(Wt), expected / E)


def test_symbolic_identity_small():
    al = AlcovePoint([0, Fraction(7, 4)])
    for I in enumerate_indices(LambdaShape((1, 2))):
        W, _ = trig_weight_symbolic(I, al)
        assert same(to_sympy(W), oracle_weight(I, al))


def test_point_comparison_detects_errors():
    al = AlcovePoint([0, Fraction(7, 4)])
    I = enumerate_indices(LambdaShape((1, 2)))[0]
    W, _ = trig_weight_symbolic(I, al)
    assert not same_at_points(to_sympy(W), oracle_weight(I, al) * (1 + h / 1000))


def test_fixed_point_substitution_matches_oracle():
    shape = LambdaShape((1, 2))
    al = AlcovePoint([0, Fraction(-5, 3)])
    z = zs(3)
    for I in enumerate_indices(shape):
        for J in enumerate_indices(shape):
            sub = {sympy.Symbol(f"t1_{a}"): z[x - 1] for a, x in enumerate(J.cumulative(1), start=1)}
            expected = oracle_weight(I, al).subs(sub)
            assert same(to_sympy(weight_at(I, J, al)), expected)
            W, _ = trig_weight_symbolic(I, al)
            assert substitute_fixed_point(W, J) == weight_at(I, J, al)


def test_flag_example_all_m():
    c = check_flag_example()
    assert c.failed == 0 and c.checked == 21


def test_triangularity_and_diagonal():
    shape = LambdaShape((1, 1, 2))
    al = alcove_for(3, 7)
    for sigma in suite_permutations(4, random.Random(2)):
        for I in enumerate_indices(shape):
            for J in enumerate_indices(shape):
                wt = weight_tilde_at(I, J, al, sigma)
                if not leq_sigma(J, I, sigma):
                    assert wt.is_zero()
            ef = euler_and_P(sigma, I)
            assert weight_tilde_at(I, I, al, sigma) == ef.P * ef.e == pe_product(sigma, I)


def test_codim_is_dim_minus_ell_sigma():
    shape = LambdaShape((2, 1, 1))
    for sigma in suite_permutations(4, random.Random(0)):
        for I in enumerate_indices(shape):
            assert codim(sigma, I) == shape.dim - I.ell_sigma(sigma)


def test_exchange_symbolic():
    al = AlcovePoint([0, Fraction(4, 3)])
    for I in enumerate_indices(LambdaShape((1, 2))):
        for a in (1, 2):
            assert exchange_verify_symbolic(I, a, al)


@pytest.mark.parametrize("lam", [(2, 1), (1, 2, 1), (0, 3)])
def test_shape_task_all_pass(lam):
    checks = _trig_shape_task((LambdaShape(lam), 11))
    for c in checks.values():
        assert c.failed == 0, c.to_json()


def test_symbolic_cap():
    with pytest.raises(CapExceeded):
        trig_weight_symbolic(enumerate_indices(LambdaShape((3, 3)))[0], AlcovePoint([0, Fraction(1, 2)]), cap=5)
