import random
from fractions import Fraction

import pytest

from envelope_lab.combinatorics import LambdaShape, enumerate_indices
from envelope_lab.elliptic import random_additive
from envelope_lab.quadratic import (
    QuadraticFormData,
    g_index_hat,
    g_over_e_hat,
    m_index,
    m_lambda,
    quasiperiodicity_residuals,
    theta_linear,
)
from envelope_lab.suites import DEFAULT_TAU, quadratic_checks
from envelope_lab.theta import EllipticContext

CTX = EllipticContext(DEFAULT_TAU)


def test_theta_linear_form():
    f = theta_linear([1, -2, 3], 0.25)
    M = f.form()
    assert M.M[0][1] == -2 and M.M[1][1] == 4
    assert M.v == [Fraction(1, 4), Fraction(-1, 2), Fraction(3, 4)]
    rng = random.Random(0)
    x = [random_additive(rng, 0.1) for _ in range(3)]
    res = quasiperiodicity_residuals(CTX, lambda y: f.evaluate(CTX, y), M, x)
    assert max(res.values()) < 1e-8


def test_wrong_form_is_detected():
    f = theta_linear([1, 1], 0.1)
    M = f.form()
    bad = QuadraticFormData(M.names, [[x + (1 if i == j else 0) for j, x in enumerate(row)] for i, row in enumerate(M.M)], M.v)
    rng = random.Random(1)
    x = [random_additive(rng, 0.1) for _ in range(2)]
    assert max(quasiperiodicity_residuals(CTX, lambda y: f.evaluate(CTX, y), bad, x).values()) > 1e-3


def test_symmetry_enforced():
    with pytest.raises(ValueError):
        QuadraticFormData(["a", "b"], [[1, 2], [0, 1]])


@pytest.mark.parametrize("lam", [(1, 1), (2, 1), (1, 2), (1, 1, 1)])
def test_g_lambda_over_e(lam):
    shape = LambdaShape(lam)
    f = g_over_e_hat(shape)
    M = m_lambda(shape, cross=2)
    assert f.form() == M
    rng = random.Random(sum(lam))
    x = [random_additive(rng, 0.1) for _ in M.names]
    assert max(quasiperiodicity_residuals(CTX, lambda y: f.evaluate(CTX, y), M, x).values()) < 1e-8


def test_displayed_cross_coefficient_differs():
    shape = LambdaShape((1, 1))
    assert g_over_e_hat(shape).form() != m_lambda(shape, cross=1)


@pytest.mark.parametrize("lam", [(1, 1), (2, 1), (1, 1, 1)])
def test_g_index(lam):
    rng = random.Random(3)
    for I in enumerate_indices(LambdaShape(lam)):
        g = g_index_hat(I)
        M = m_index(I)
        assert g.form() == M
        x = [random_additive(rng, 0.1) for _ in M.names]
        assert max(quasiperiodicity_residuals(CTX, lambda y: g.evaluate(CTX, y), M, x).values()) < 1e-8


def test_quadratic_suite_small():
    checks = {c.name: c for c in quadratic_checks(CTX, {"seed": 0, "max_n": 3, "max_N": 3})}
    for name in ("quadratic.theta_linear", "quadratic.G_lambda_over_E", "quadratic.G_I", "quadratic.M_I_display"):
        assert checks[name].failed == 0
    assert checks["quadratic.M_lambda_display"].status == "deviation"
