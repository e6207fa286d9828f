import random
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from envelope_lab.combinatorics import AlcovePoint, LambdaShape, enumerate_indices
from envelope_lab.lp import convex_weights
from envelope_lab.polytopes import (
    O,
    RationalPointSet,
    caratheodory_contains,
    check_extralem,
    check_newton_theorem,
    hull_contains,
    hull_equal,
    minkowski_sum,
    polytope_subset,
    prune_midpoints,
)

points = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=7)


def solve_exact(p, sub):
    return convex_weights(p, sub)


@given(points, st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_hull_membership_matches_caratheodory(pts, p):
    B = RationalPointSet(2, pts)
    assert hull_contains(p, B) == caratheodory_contains(tuple(map(Fraction, p)), B, solve_exact)


@given(points)
def test_pruning_keeps_the_hull(pts):
    B = RationalPointSet(2, pts)
    kept = RationalPointSet(2, prune_midpoints(B.points))
    assert hull_equal(kept, B)


@given(points, points)
def test_minkowski_sum_contains_translates(a, b):
    A, B = RationalPointSet(2, a), RationalPointSet(2, b)
    S = minkowski_sum(A, B)
    q = min(B.points)
    assert polytope_subset(A.translate(q), S)[0]


def test_subset_reports_witness():
    square = RationalPointSet(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    big = RationalPointSet(2, [(0, 0), (2, 0), (0, 2)])
    ok, wit = polytope_subset(big, square)
    assert not ok and wit in big.points


def test_flag_example_polytopes():
    # lambda = (1,2) at the anti-dominant alcove: O_{I,I} are segments in a plane
    al = AlcovePoint([0, Fraction(1, 3)])
    idx = enumerate_indices(LambdaShape((1, 2)))
    for J in idx:
        OJ = O(J, J, al)
        assert len(OJ) >= 2
        for I in idx:
            OI = O(I, J, al)
            if not OI.is_empty():
                assert polytope_subset(OI, OJ)[0]


def test_newton_theorem_small_shapes():
    rng = random.Random(3)
    for lam in [(1, 1), (2, 1), (1, 1, 1), (2, 2)]:
        shape = LambdaShape(lam)
        nu = [Fraction(0)] + [Fraction(rng.randint(-40, 40), 7) + Fraction(1, 11) * k for k in range(1, shape.N)]
        r = check_newton_theorem(shape, AlcovePoint(nu))
        assert not r["failures"] and not r["extralem_failures"]


def test_extralem_single():
    al = AlcovePoint([0, Fraction(5, 2)])
    for J in enumerate_indices(LambdaShape((1, 2))):
        for a in (1, 2):
            assert check_extralem(J, a, al)


def test_csv_and_json():
    S = RationalPointSet(2, [(Fraction(1, 2), 0)])
    assert S.to_csv() == "x1,x2\n1/2,0\n"
    assert S.to_json() == {"dim": 2, "points": [["1/2", "0"]]}
