"""Trigonometric weight functions, Euler classes and stable envelope restrictions."""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    H_VAR,
    LaurentPolynomial,
    NotDivisible,
    RationalExpression,
    ShiftedPolynomial,
    exact_divide,
    make_ring,
    rational_sum,
    t,
    z,
    zh_ring,
)
from .combinatorics import LambdaShape, PartitionIndex, Permutation, leq_sigma

SYM_CAP = 10 ** 6


class CapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class TrigWeightSpec:
    sigma: Permutation
    I: PartitionIndex
    alcove: object

    @property
    def shape(self):
        return self.I.shape


def weight_ring(shape):
    """Ring in z_1..z_n, t^(k)_a (k < N) and h."""
    vs = [z(a) for a in range(1, shape.n + 1)] + [H_VAR]
    for k in range(1, shape.N):
        vs += [t(k, a) for a in range(1, shape.cum(k) + 1)]
    return make_ring(tuple(vs))


def _m_lookup(alcove):
    if isinstance(alcove, dict):
        return alcove
    return dict(alcove.m_table())


def _mtab(alcove):
    return tuple(sorted(_m_lookup(alcove).items()))


def _unit_vec(ring, v):
    e = [0] * ring.size
    e[ring.index[v]] = 1
    return tuple(e)


def _psi_kinds(I):
    """For every (k, a, c): ('lt'|'eq'|'gt', j(I,k,a))."""
    out = {}
    for k in range(1, I.N):
        ik = I.cumulative(k)
        ik1 = I.cumulative(k + 1)
        for a, x in enumerate(ik, start=1):
            j = I.block_of(x)
            for c, y in enumerate(ik1, start=1):
                kind = "lt" if y < x else "eq" if y == x else "gt"
                out[k, a, c] = (kind, j)
    return out


# ------------------------------------------------------------ symbolic path

def trig_weight_symbolic(I, alcove, sigma=None, cap=SYM_CAP):
    """W^D_{sigma,I}(t,z,h) as a normalized RationalExpression, and W~ = W/E."""
    shape = I.shape
    n = shape.n
    sigma = sigma or Permutation.identity(n)
    if shape.sym_size > cap:
        raise CapExceeded(f"symmetrization size {shape.sym_size} exceeds cap {cap}")
    Ip = I.apply(sigma.inverse())
    w = _symbolic_id(Ip, _mtab(alcove))
    if not sigma.is_identity():
        w = w.permute_z(sigma.one_line)
    return w, w.div_factors(_E_factors(shape, weight_ring(shape)))


@lru_cache(maxsize=None)
def _symbolic_id(I, mtab):
    shape = I.shape
    ring = weight_ring(shape)
    m = dict(mtab)
    kinds = _psi_kinds(I)
    N = shape.N
    hvec = _unit_vec(ring, H_VAR)
    hh = tuple(2 * x for x in hvec)
    levels = [shape.cum(k) for k in range(1, N + 1)]
    perms = [list(itertools.permutations(range(1, levels[k - 1] + 1))) for k in range(1, N)]
    terms = []
    for choice in itertools.product(*perms):
        def val(k, a):
            if k == N:
                return _unit_vec(ring, z(a))
            return _unit_vec(ring, t(k, choice[k - 1][a - 1]))

        num = ring.one()
        dens = []
        zero = False
        for k in range(1, N):
            for a in range(1, levels[k - 1] + 1):
                va = val(k, a)
                for c in range(1, levels[k] + 1):
                    x = tuple(p - q for p, q in zip(val(k + 1, c), va))
                    kind, j = kinds[k, a, c]
                    if kind == "lt":
                        num = num.mul_binomial(1, tuple(p + q for p, q in zip(x, hh)))
                    elif kind == "eq":
                        num = num.mul_term(1, tuple(-m[j, k + 1] * p for p in x))
                    else:
                        if not any(x):
                            zero = True
                        num = num.mul_binomial(1, x)
                for b in range(a + 1, levels[k - 1] + 1):
                    y = tuple(p - q for p, q in zip(val(k, b), va))
                    num = num.mul_binomial(1, tuple(p + q for p, q in zip(y, hh)))
                    dens.append((1, y))
        if not zero:
            terms.append(RationalExpression.build(num, dens))
    total = rational_sum(terms, ring)
    pref = ring.one()
    for _ in range(shape.lam1):
        pref = pref.mul_binomial(1, hh)
    return RationalExpression(total.num * pref, total.dens)


def _E_factors(shape, ring):
    hh = tuple(2 * x for x in _unit_vec(ring, H_VAR))
    out = []
    for k in range(1, shape.N):
        L = shape.cum(k)
        for a in range(1, L + 1):
            for b in range(1, L + 1):
                y = tuple(p - q for p, q in zip(_unit_vec(ring, t(k, b)), _unit_vec(ring, t(k, a))))
                out.append((1, tuple(p + q for p, q in zip(y, hh))))
    return out


def substitute_fixed_point(expr, J, ring_to=None):
    """f(z_J, z, h): t^(k)_a -> z_{j^(k)_a}."""
    shape = J.shape
    target = ring_to or zh_ring(shape.n)
    assign = {}
    for k in range(1, shape.N):
        for a, x in enumerate(J.cumulative(k), start=1):
            assign[t(k, a)] = target.var(z(x))
    return expr.substitute(assign, target)


# ---------------------------------------------------------- substituted path

def trig_weight_eval(I, J, alcove, sigma=None):
    """(W^D_{sigma,I}(z_J), W~^D_{sigma,I}(z_J)) as Laurent polynomials in z, h."""
    return weight_at(I, J, alcove, sigma), weight_tilde_at(I, J, alcove, sigma)


def _twisted(fn, I, J, alcove, sigma):
    if sigma is None or sigma.is_identity():
        return fn(I, J, _mtab(alcove))
    inv = sigma.inverse()
    return fn(I.apply(inv), J.apply(inv), _mtab(alcove)).permute_z(sigma.one_line)


def weight_at(I, J, alcove, sigma=None):
    return _twisted(lambda *a: _subst_id(*a)[0], I, J, alcove, sigma)


def weight_tilde_at(I, J, alcove, sigma=None):
    return _twisted(_subst_tilde, I, J, alcove, sigma)


@lru_cache(maxsize=None)
def _subst_id(I, J, mtab):
    shape = I.shape
    n, N = shape.n, shape.N
    ring = zh_ring(n)
    m = dict(mtab)
    kinds = _psi_kinds(I)
    levels = [shape.cum(k) for k in range(1, N + 1)]
    cums = [J.cumulative(k) for k in range(1, N + 1)]
    hpos = ring.h_pos
    zpos = [ring.index[z(a)] for a in range(1, n + 1)]
    size = ring.size

    def mono(pairs):
        e = [0] * size
        for var, k in pairs:
            e[var] += k
        return tuple(e)

    total = {}

    def accumulate(poly):
        for mo, c in poly.terms.items():
            s = total.get(mo, 0) + c
            if s:
                total[mo] = s
            else:
                total.pop(mo, None)

    # t^(N)_c = z_c; deeper levels are chosen as orderings of J's cumulative sets
    values = [None] * (N + 1)
    values[N] = tuple(range(1, n + 1))

    def descend(k, num):
        if k == 0:
            accumulate(num)
            return
        L = levels[k - 1]
        for order in itertools.permutations(cums[k - 1]):
            cur = num
            ok = True
            upper = values[k + 1]
            for a in range(1, L + 1):
                va = order[a - 1]
                for c in range(1, levels[k] + 1):
                    vc = upper[c - 1]
                    kind, j = kinds[k, a, c]
                    if kind == "gt":
                        if vc == va:
                            ok = False
                            break
                        cur = cur.mul_binomial(1, mono([(zpos[vc - 1], 1), (zpos[va - 1], -1)]))
                    elif kind == "lt":
                        if vc == va:
                            cur = cur.mul_binomial(1, mono([(hpos, 2)]))
                        else:
                            cur = cur.mul_binomial(
                                1, mono([(zpos[vc - 1], 1), (zpos[va - 1], -1), (hpos, 2)])
                            )
                    else:
                        e = -m[j, k + 1]
                        if e and vc != va:
                            cur = cur.mul_term(1, mono([(zpos[vc - 1], e), (zpos[va - 1], -e)]))
                if not ok:
                    break
                for b in range(a + 1, L + 1):
                    vb = order[b - 1]
                    cur = cur.mul_binomial(1, mono([(zpos[vb - 1], 1), (zpos[va - 1], -1), (hpos, 2)]))
                    if vb < va:
                        # 1/(1 - z_vb/z_va) = (-z_va/z_vb) / (1 - z_va/z_vb)
                        cur = cur.mul_term(-1, mono([(zpos[va - 1], 1), (zpos[vb - 1], -1)]))
            if not ok:
                continue
            values[k] = order
            descend(k - 1, cur)
        values[k] = None

    descend(N - 1, ring.one())
    S = LaurentPolynomial(ring, total)
    try:
        for k in range(1, N):
            cs = cums[k - 1]
            for i, p in enumerate(cs):
                for q in cs[i + 1:]:
                    S = exact_divide(S, ring.binomial(1, {z(q): 1, z(p): -1}))
    except NotDivisible as exc:
        raise NotDivisible(f"symmetrized sum for I={I}, J={J} is not a Laurent polynomial") from exc
    pref = ring.one()
    for _ in range(shape.lam1):
        pref = pref.mul_binomial(1, mono([(hpos, 2)]))
    return S * pref, S


@lru_cache(maxsize=None)
def _subst_tilde(I, J, mtab):
    """W~ at z_J: the symmetrized sum divided by the off-diagonal factors of E(z_J)."""
    ring = zh_ring(I.n)
    Wt = _subst_id(I, J, mtab)[1]
    try:
        for k in range(1, I.N):
            cs = J.cumulative(k)
            for p in cs:
                for q in cs:
                    if p != q:
                        Wt = exact_divide(Wt, ring.binomial(1, {z(q): 1, z(p): -1, H_VAR: 1}))
    except NotDivisible as exc:
        raise NotDivisible(f"W~ for I={I}, J={J} is not divisible by E(z_J)") from exc
    return Wt


# ------------------------------------------------------------ Euler classes

@dataclass(frozen=True)
class EulerFactors:
    e_hor_plus: LaurentPolynomial
    e_hor_minus: LaurentPolynomial
    e_vert_plus: LaurentPolynomial
    e_vert_minus: LaurentPolynomial
    P: LaurentPolynomial

    @property
    def e(self):
        return self.e_hor_minus * self.e_vert_minus


def _pairs(sigma, I):
    """(sigma(a), sigma(b), b > a) over k < l, sigma(a) in I_k, sigma(b) in I_l."""
    n = I.n
    s = sigma.one_line
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            if a == b:
                continue
            if I.block_of(s[a - 1]) < I.block_of(s[b - 1]):
                yield s[a - 1], s[b - 1], b > a


def euler_and_P(sigma, I):
    ring = zh_ring(I.n)
    one = ring.one()
    ehp, ehm, evp, evm, P = one, one, one, one, one
    for sa, sb, later in _pairs(sigma, I):
        if later:
            ehm = ehm.mul_binomial(1, ring.mono({z(sa): 1, z(sb): -1}))
            evp = evp.mul_binomial(1, ring.mono({z(sb): 1, z(sa): -1, H_VAR: 1}))
            P = P.mul_term(-1, ring.mono({z(sb): 1, z(sa): -1}))
        else:
            ehp = ehp.mul_binomial(1, ring.mono({z(sa): 1, z(sb): -1}))
            evm = evm.mul_binomial(1, ring.mono({z(sb): 1, z(sa): -1, H_VAR: 1}))
    return EulerFactors(ehp, ehm, evp, evm, P)


def pe_product(sigma, I):
    """Right-hand side of the P*e identity, built directly."""
    ring = zh_ring(I.n)
    out = ring.one()
    for sa, sb, later in _pairs(sigma, I):
        if later:
            out = out.mul_binomial(1, ring.mono({z(sb): 1, z(sa): -1}))
        else:
            out = out.mul_binomial(1, ring.mono({z(sb): 1, z(sa): -1, H_VAR: 1}))
    return out


def codim(sigma, I):
    return I.shape.dim - I.ell_sigma(sigma)


def d_factor_value(sigma, I):
    """Sign * sqrt(d ratio) * e from the alternative normalization, as a polynomial.

    The ratio d^hor_- d^vert_- / (d^vert_+ d^vert_-) is a perfect square up to
    the h half powers, so its square root is taken exponentwise.
    """
    ring = zh_ring(I.n)
    num = {}
    sign = 1
    for sa, sb, later in _pairs(sigma, I):
        if later:
            sign = -sign
            # d^hor_- : z_sb/z_sa ; d^vert_+ in the denominator: (z_sa/(h z_sb))^-1
            for v, k in ((z(sb), 1), (z(sa), -1), (z(sb), 1), (z(sa), -1), (H_VAR, 1)):
                num[v] = num.get(v, 0) + k
        # d^vert_- appears in numerator and denominator and cancels
    half = {v: Fraction(k, 2) for v, k in num.items() if k}
    root = ring.monomial(half, sign)
    ef = euler_and_P(sigma, I)
    return root * ef.e


# ------------------------------------------------------------ Stab classes

def stab_restriction(sigma, I, J, alcove):
    """Stab^D_{sigma,I}|_{x_J} = h^{codim/2} W~_{sigma,I}(z_J)."""
    wt = weight_tilde_at(I, J, alcove, sigma)
    if wt.is_zero():
        return wt
    return wt * wt.ring.h_half(codim(sigma, I))


def stab_class(sigma, I, alcove):
    from .ktheory import LocalizationClass
    from .combinatorics import enumerate_indices

    shape = I.shape
    return LocalizationClass(
        shape, {J: stab_restriction(sigma, I, J, alcove) for J in enumerate_indices(shape)}
    )


# ------------------------------------------------------------ exchange relations

def _adjacent_blocks(I, a):
    return I.block_of(a), I.block_of(a + 1)


def exchange_verify_symbolic(I, a, alcove):
    """Check (e1)/(e2)/(e3) as identities in t, z, h. Returns a report dict."""
    shape = I.shape
    k, l = _adjacent_blocks(I, a)
    W, _ = trig_weight_symbolic(I, alcove)
    ring = W.ring
    s = list(range(1, shape.n + 1))
    s[a - 1], s[a] = s[a], s[a - 1]
    Wsz = W.permute_z(tuple(s))
    if k == l:
        ok = Wsz == W
        rel = "e1"
    else:
        sI = I.swap(a, a + 1)
        WsI, _ = trig_weight_symbolic(sI, alcove)
        lhs, rhs = _exchange_sides(ring, a, k, l, _m_lookup(alcove), WsI, Wsz, W)
        ok = lhs == rhs
        rel = "e2" if k < l else "e3"
    return {"relation": rel, "I": I.to_json(), "a": a, "ok": bool(ok)}


def _exchange_sides(ring, a, k, l, m, WsI, Wsz, W):
    za, zb = z(a), z(a + 1)
    if k < l:
        # (1 - z_a/z_{a+1}) W_sI = (1 - h z_a/z_{a+1}) W(sz) + (h - 1)(z_a/z_{a+1})^{m+1} W
        mm = m[k, l]
        lhs = WsI * ring.binomial(1, {za: 1, zb: -1})
        rhs = Wsz * ring.binomial(1, {za: 1, zb: -1, H_VAR: 1}) + W * (
            (ring.var(H_VAR) - 1) * ring.monomial({za: mm + 1, zb: -(mm + 1)})
        )
    else:
        mm = m[l, k]
        lhs = WsI * ring.binomial(1, {zb: 1, za: -1})
        rhs = Wsz * ring.binomial(1, {zb: 1, za: -1, H_VAR: -1}) + W * (
            (ring.var(H_VAR, -1) - 1) * ring.monomial({zb: mm + 1, za: -(mm + 1)})
        )
    return lhs, rhs


def exchange_verify_substituted(I, a, alcove, J):
    """(e1)-(e3) after t = z_J, using W_I(z_J; s z) = K_a(W_I(z_{sJ}; z))."""
    k, l = _adjacent_blocks(I, a)
    W = weight_at(I, J, alcove)
    Wsz = weight_at(I, J.swap(a, a + 1), alcove).swap_z(a)
    if k == l:
        return Wsz == W
    WsI = weight_at(I.swap(a, a + 1), J, alcove)
    lhs, rhs = _exchange_sides(W.ring, a, k, l, _m_lookup(alcove), WsI, Wsz, W)
    return lhs == rhs


def s_shift(I, alcove):
    """Exponent vector of S_I = prod z_a^{-nu_k}, a in I_k."""
    return [-alcove.nu[I.block_of(a) - 1] for a in range(1, I.n + 1)]


def w_bar(I, J, alcove):
    return ShiftedPolynomial(weight_at(I, J, alcove), s_shift(I, alcove))


def wbar_recursion_verify(I, J, a, alcove):
    """The W-bar recursion (k = l, k < l, k > l) with rational exponents."""
    k, l = _adjacent_blocks(I, a)
    ring = zh_ring(I.n)
    za, zb = z(a), z(a + 1)
    sJ = J.swap(a, a + 1)
    left = w_bar(I, sJ, alcove).swap_z(a)
    if k == l:
        return (left - w_bar(I, J, alcove)).is_zero()
    sI = I.swap(a, a + 1)
    n = I.n
    if k < l:
        eps = alcove.eps(k, l)
        lhs = left * ring.binomial(1, {za: 1, zb: -1, H_VAR: 1})
        rhs = w_bar(sI, J, alcove) * ring.binomial(1, {za: 1, zb: -1})
        vec = [0] * n
        vec[a - 1], vec[a] = 1 - eps, eps - 1
        extra = (w_bar(I, J, alcove) * (1 - ring.var(H_VAR))).times_z_power(vec)
    else:
        eps = alcove.eps(l, k)
        lhs = left * ring.binomial(1, {zb: 1, za: -1, H_VAR: -1})
        rhs = w_bar(sI, J, alcove) * ring.binomial(1, {zb: 1, za: -1})
        vec = [0] * n
        vec[a - 1], vec[a] = eps - 1, 1 - eps
        extra = (w_bar(I, J, alcove) * (1 - ring.var(H_VAR, -1))).times_z_power(vec)
    return (lhs - (rhs + extra)).is_zero()


def x_monomial_at(I):
    """X(z_I) = prod_{j<k} prod_{a in I_j, b in I_k} z_b/z_a."""
    ring = zh_ring(I.n)
    exps = {}
    for a in range(1, I.n + 1):
        for b in range(1, I.n + 1):
            if I.block_of(a) < I.block_of(b):
                exps[z(b)] = exps.get(z(b), 0) + 1
                exps[z(a)] = exps.get(z(a), 0) - 1
    return ring.monomial(exps)


def lambda_shape_of(lam):
    return LambdaShape(lam)


def triangular_support(sigma, I, indices):
    return [J for J in indices if leq_sigma(J, I, sigma)]
