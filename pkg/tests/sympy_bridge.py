"""Conversions from package objects to sympy, used as independent oracles."""

from fractions import Fraction

import sympy

from envelope_lab.algebra import H_VAR, LaurentPolynomial, RationalExpression, var_name


def symbols_for(ring):
    return {v: sympy.Symbol(var_name(v)) for v in ring.variables}


def poly_to_sympy(p):
    syms = symbols_for(p.ring)
    out = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for v, k in zip(p.ring.variables, m):
            if k:
                term *= syms[v] ** (sympy.Rational(k, 2) if v == H_VAR else k)
        out += term
    return out


def to_sympy(x):
    if isinstance(x, LaurentPolynomial):
        return poly_to_sympy(x)
    if isinstance(x, RationalExpression):
        return poly_to_sympy(x.num) / poly_to_sympy(x.den_poly())
    raise TypeError(type(x))


def same(a, b):
    return sympy.cancel(sympy.together(a - b)) == 0


def same_at_points(a, b, trials=3, seed=0):
    """Exact comparison at random rational points (h a rational square)."""
    import random

    rng = random.Random(seed)
    syms = sorted((a.free_symbols | b.free_symbols), key=str)
    for _ in range(trials):
        point = {}
        for s in syms:
            v = sympy.Rational(rng.randint(2, 40), rng.randint(41, 97))
            point[s] = v ** 2 if s.name == "h" else v
        if sympy.nsimplify(a.subs(point) - b.subs(point)) != 0:
            return False
    return True
