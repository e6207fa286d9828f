"""Newton polytopes as finite rational point sets, with exact hull membership."""

import itertools
import math
import operator
from fractions import Fraction
from functools import lru_cache

from .combinatorics import enumerate_indices, i_max, leq_sigma, Permutation
from .lp import convex_weights
from .trig import s_shift, weight_at


class RationalPointSet:
    __slots__ = ("dim", "points")

    def __init__(self, dim, points=()):
        self.dim = dim
        pts = set()
        for p in points:
            p = tuple(Fraction(x) for x in p)
            if len(p) != dim:
                raise ValueError("point of the wrong dimension")
            pts.add(p)
        self.points = frozenset(pts)

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(sorted(self.points))

    def __eq__(self, other):
        return isinstance(other, RationalPointSet) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def is_empty(self):
        return not self.points

    def translate(self, v):
        return RationalPointSet(self.dim, (tuple(a + Fraction(b) for a, b in zip(p, v)) for p in self.points))

    def swap(self, a):
        """K_a: exchange coordinates a and a+1 (1-based)."""
        def sw(p):
            p = list(p)
            p[a - 1], p[a] = p[a], p[a - 1]
            return p
        return RationalPointSet(self.dim, (sw(p) for p in self.points))

    def project(self, axes):
        return RationalPointSet(len(axes), (tuple(p[i - 1] for i in axes) for p in self.points))

    def to_json(self):
        return {"dim": self.dim, "points": [[str(x) for x in p] for p in self]}

    def to_csv(self):
        lines = [",".join(f"x{i}" for i in range(1, self.dim + 1))]
        lines += [",".join(str(x) for x in p) for p in self]
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return "{" + ", ".join("(" + ",".join(map(str, p)) + ")" for p in self) + "}"


def newton_support(f, shift=None):
    """z-exponent vectors of f (h treated as a generic number), plus a rational shift."""
    n = f.ring.z_count
    shift = shift or [0] * n
    return RationalPointSet(n, f.z_support()).translate(shift)


def minkowski_sum(A, B):
    if A.dim != B.dim:
        raise ValueError("dimension mismatch")
    return RationalPointSet(A.dim, (tuple(x + y for x, y in zip(p, q)) for p in A.points for q in B.points))


def prune_midpoints(points):
    """Drop points that are midpoints of two other points; the hull is unchanged
    because a vertex is never a proper convex combination."""
    pts = list(points)
    if len(pts) < 3:
        return frozenset(pts)
    den = 1
    for p in pts:
        for x in p:
            den = den * x.denominator // math.gcd(den, x.denominator)
    scaled = {tuple(int(x * den) for x in p): p for p in pts}
    keys = set(scaled)
    keep = []
    for b, orig in scaled.items():
        two_b = tuple(2 * x for x in b)
        if not any(c != b and tuple(map(operator.sub, two_b, c)) in keys for c in keys):
            keep.append(orig)
    return frozenset(keep)


@lru_cache(maxsize=4096)
def generators(pts):
    return prune_midpoints(pts)


def hull_contains(p, B):
    """Exact membership of p in conv(B)."""
    if B.is_empty():
        raise ValueError("empty point set")
    return _contains(tuple(Fraction(x) for x in p), B.points)


@lru_cache(maxsize=200000)
def _contains(p, pts):
    if p in pts:
        return True
    for i in range(len(p)):
        lo = min(q[i] for q in pts)
        hi = max(q[i] for q in pts)
        if p[i] < lo or p[i] > hi:
            return False
    if len(pts) == 1:
        return False
    return convex_weights(p, sorted(pts)) is not None


def polytope_subset(A, B):
    """(True, None) if conv(A) is inside conv(B), else (False, offending point)."""
    if A.is_empty():
        return True, None
    if B.is_empty():
        return False, min(A.points)
    gens = generators(B.points)
    for p in sorted(generators(A.points)):
        if p in B.points:
            continue
        if not _contains(p, gens):
            return False, p
    return True, None


def hull_equal(A, B):
    return polytope_subset(A, B)[0] and polytope_subset(B, A)[0]


def caratheodory_contains(p, B, solve):
    """Brute-force oracle: try every affinely spanning (dim+1)-subset with `solve`."""
    pts = sorted(B.points)
    k = min(len(pts), B.dim + 1)
    for r in range(1, k + 1):
        for sub in itertools.combinations(pts, r):
            w = solve(p, sub)
            if w is not None and all(x >= 0 for x in w):
                return True
    return False


# ------------------------------------------------------------ Newton theorem

def O(I, J, alcove):
    """O_{I,J} = N(W_I(z_J) S_I) with the rational shift carried explicitly."""
    return newton_support(weight_at(I, J, alcove), s_shift(I, alcove))


def _integer_support(I, J, alcove):
    return RationalPointSet(I.n, weight_at(I, J, alcove).z_support())


def check_pair(I, J, alcove):
    """O_{I,J} inside O_{J,J}; returns (ok, witness) with the witness in shifted coordinates."""
    A = _integer_support(I, J, alcove)
    if A.is_empty():
        return True, None
    B = _integer_support(J, J, alcove)
    d = [a - b for a, b in zip(s_shift(I, alcove), s_shift(J, alcove))]
    ok, wit = polytope_subset(A.translate(d), B)
    if ok:
        return True, None
    return False, tuple(x + y for x, y in zip(wit, s_shift(J, alcove)))


def check_extralem(J, a, alcove):
    """O_{s(J),s(J)} = K_a(O_{J,J}) as hulls."""
    sJ = J.swap(a, a + 1)
    left = O(sJ, sJ, alcove)
    right = O(J, J, alcove).swap(a)
    return hull_equal(left, right)


def check_newton_theorem(shape, alcove):
    """All pairs and all adjacent transpositions; returns a report dict."""
    idx = enumerate_indices(shape)
    failures = []
    vacuous = 0
    for J in idx:
        for I in idx:
            if weight_at(I, J, alcove).is_zero():
                vacuous += 1
                continue
            ok, wit = check_pair(I, J, alcove)
            if not ok:
                failures.append({"I": I.to_json(), "J": J.to_json(), "vertex": [str(x) for x in wit]})
    extra = []
    for J in idx:
        for a in range(1, shape.n):
            if not check_extralem(J, a, alcove):
                extra.append({"J": J.to_json(), "a": a})
    return {
        "shape": list(shape.lam),
        "nu": alcove.to_json(),
        "pairs_checked": len(idx) ** 2,
        "vacuous": vacuous,
        "failures": failures,
        "extralem_checked": len(idx) * max(shape.n - 1, 0),
        "extralem_failures": extra,
    }


def base_case_ok(shape, alcove):
    """At J = I^max every other W_I(z_J) vanishes."""
    J = i_max(shape)
    ident = Permutation.identity(shape.n)
    return all(
        leq_sigma(I, J, ident) and (I == J or weight_at(I, J, alcove).is_zero())
        for I in enumerate_indices(shape)
    )


def svg_projection(sets, axes=(1, 2), size=360, labels=None):
    """Plain SVG of 2-coordinate projections: hull outline plus points per set."""
    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]
    proj = [s.project(axes) for s in sets]
    pts = [p for s in proj for p in s.points] or [(Fraction(0), Fraction(0))]
    xs = [float(p[0]) for p in pts]
    ys = [float(p[1]) for p in pts]
    lo_x, hi_x = min(xs) - 0.5, max(xs) + 0.5
    lo_y, hi_y = min(ys) - 0.5, max(ys) + 0.5
    span = max(hi_x - lo_x, hi_y - lo_y)

    def tr(p):
        x = (float(p[0]) - lo_x) / span * (size - 40) + 20
        y = size - ((float(p[1]) - lo_y) / span * (size - 40) + 20)
        return f"{x:.3f},{y:.3f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">']
    out.append(f'<rect width="{size}" height="{size}" fill="white"/>')
    for i, s in enumerate(proj):
        col = colors[i % len(colors)]
        hull = _hull_2d(sorted(s.points))
        if len(hull) >= 2:
            out.append(f'<polygon points="{" ".join(tr(p) for p in hull)}" fill="{col}" fill-opacity="0.15" stroke="{col}"/>')
        for p in sorted(s.points):
            out.append(f'<circle cx="{tr(p).split(",")[0]}" cy="{tr(p).split(",")[1]}" r="3" fill="{col}"/>')
        if labels:
            out.append(f'<text x="10" y="{16 + 14 * i}" font-size="12" fill="{col}">{labels[i]}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _hull_2d(pts):
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]
