import itertools
import random
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from envelope_lab.lp import convex_weights, feasible


def brute_force_feasible(A, b):
    """Try every basis: x >= 0 with A x = b exists iff some basic solution is nonnegative."""
    import sympy

    m, n = len(A), len(A[0])
    M = sympy.Matrix(A)
    rank = M.rank()
    if rank < sympy.Matrix.hstack(M, sympy.Matrix(b)).rank():
        return False
    for cols in itertools.combinations(range(n), rank):
        sub = M[:, list(cols)]
        if sub.rank() < rank:
            continue
        sol, params = sub.gauss_jordan_solve(sympy.Matrix(b))
        sol = sol.subs({p: 0 for p in params})
        if all(v >= 0 for v in sol):
            return True
    return rank == 0 and all(v == 0 for v in b)


@given(
    st.integers(1, 3),
    st.integers(1, 4),
    st.data(),
)
def test_feasible_matches_basis_enumeration(m, n, data):
    A = [[data.draw(st.integers(-3, 3)) for _ in range(n)] for _ in range(m)]
    b = [data.draw(st.integers(-4, 4)) for _ in range(m)]
    x = feasible(A, b)
    assert (x is not None) == brute_force_feasible(A, b)
    if x is not None:
        assert all(v >= 0 for v in x)
        assert all(sum(Fraction(a) * v for a, v in zip(row, x)) == rhs for row, rhs in zip(A, b))


def test_convex_weights_square():
    pts = [(0, 0), (2, 0), (0, 2), (2, 2)]
    w = convex_weights((Fraction(1, 2), Fraction(3, 2)), pts)
    assert w is not None and sum(w) == 1
    assert convex_weights((3, 0), pts) is None


def test_degenerate_rows():
    assert feasible([[0, 0]], [0]) is not None
    assert feasible([[0, 0]], [1]) is None
    assert feasible([[1, 1], [2, 2]], [1, 2]) is not None
