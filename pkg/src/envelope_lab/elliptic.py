"""Elliptic weight functions, dynamical R-matrix and their numerical checks.

Every input is additive: z_a = e(x_a), t = e(u), h = e(y), mu_j = e(m_j)
with e(u) = exp(2 pi i u).  Ratios of multiplicative variables become
differences, so theta(h z_b / z_a) is theta(y + x_b - x_a).
"""

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import AlcovePoint, IntegerDifference, LambdaShape, Permutation, enumerate_indices, leq_sigma
from .theta import rel_residual


class DiagonalPoint(ValueError):
    pass


DIAG_TOL = 1e-10


@dataclass
class EllPoint:
    """Additive coordinates: z (length n), y for h, mu (length N)."""

    z: list
    y: complex
    mu: list

    def swapped_z(self, i):
        z = list(self.z)
        z[i - 1], z[i] = z[i], z[i - 1]
        return EllPoint(z, self.y, list(self.mu))

    def inverted(self):
        return EllPoint([-x for x in self.z], -self.y, [-m for m in self.mu])


def random_additive(rng, spread=0.15):
    """Random u with real part in [0,1) and a small imaginary part."""
    return complex(rng.random(), rng.uniform(-spread, spread))


def random_point(shape, rng, spread=0.15):
    return EllPoint(
        [random_additive(rng, spread) for _ in range(shape.n)],
        random_additive(rng, spread),
        [random_additive(rng, spread) for _ in range(shape.N)],
    )


def random_t(shape, rng, spread=0.15):
    return [[random_additive(rng, spread) for _ in range(shape.cum(k))] for k in range(1, shape.N)]


def t_at(J, z):
    """t^(k)_a = z_{i^(k)_a} for J."""
    return [[z[x - 1] for x in J.cumulative(k)] for k in range(1, J.N)]


# ------------------------------------------------------------ R-matrix

def r_matrix(ctx, x, y, mu, felder=False):
    """Nonzero entries {(upper, lower): value} of the dynamical R-matrix.

    Keys are pairs of index pairs; ((j,k),(k,j)) is the entry R^{jk}_{kj}."""
    T = ctx.theta
    N = len(mu)
    den = T(x + y)
    out = {}
    for j in range(1, N + 1):
        out[(j, j), (j, j)] = ctx.num(1)
    for j in range(1, N + 1):
        for k in range(1, N + 1):
            if j == k:
                continue
            d = mu[j - 1] - mu[k - 1]
            out[(j, k), (k, j)] = T(x + d) * T(y) / (den * T(d))
            if felder:
                out[(j, k), (j, k)] = T(x) * T(y + d) / (den * T(d))
            elif j < k:
                out[(j, k), (j, k)] = T(x) * T(y + d) * T(y - d) / (den * T(d) * T(-d))
            else:
                out[(j, k), (j, k)] = T(x) / den
    return out


def r_entry(ctx, upper, lower, x, y, mu):
    return r_matrix(ctx, x, y, mu).get((tuple(upper), tuple(lower)), ctx.num(0))


def r_inversion_residual(ctx, x, y, mu):
    """max residual of R(x,h,mu) = R(1/x,1/h,1/mu) over all entries."""
    a = r_matrix(ctx, x, y, mu)
    b = r_matrix(ctx, -x, -y, [-m for m in mu])
    return max(rel_residual(a[key], b[key]) for key in a)


# ------------------------------------------------------------ weight functions

def _psi_data(I):
    """(k, a, c) -> ('lt'|'gt', None) or ('eq', (e, j)) with the h exponent e."""
    out = {}
    for k in range(1, I.N):
        ik = I.cumulative(k)
        ik1 = I.cumulative(k + 1)
        for a, x in enumerate(ik, start=1):
            j = I.block_of(x)
            for c, w in enumerate(ik1, start=1):
                if w < x:
                    out[k, a, c] = ("lt", None)
                elif w > x:
                    out[k, a, c] = ("gt", None)
                else:
                    out[k, a, c] = ("eq", (1 + I.p(j, x) - I.p(k + 1, x), j))
    return out


def _check_diag(ctx, t):
    for level in t:
        for a, b in itertools.combinations(range(len(level)), 2):
            if level[a] == level[b]:
                raise DiagonalPoint("coincident t variables")
            if abs(ctx.theta(level[b] - level[a])) < DIAG_TOL:
                raise DiagonalPoint("t variables too close to a diagonal")


def sym_u(ctx, I, t, p, level_order=None):
    """Sym_{t^(1)} ... Sym_{t^(N-1)} U_I, summed in the given level order."""
    N = I.N
    T = ctx.theta
    data = _psi_data(I)
    lam = [len(level) for level in t]
    _check_diag(ctx, t)
    order = list(level_order or range(1, N))
    perms = {k: list(itertools.permutations(range(lam[k - 1]))) for k in order}
    total = ctx.num(0)
    for choice in itertools.product(*(perms[k] for k in order)):
        per = dict(zip(order, choice))
        levels = [[t[k - 1][i] for i in per[k]] for k in range(1, N)] + [list(p.z)]
        term = ctx.num(1)
        for k in range(1, N):
            tk, tk1 = levels[k - 1], levels[k]
            for a in range(1, len(tk) + 1):
                ua = tk[a - 1]
                for c in range(1, len(tk1) + 1):
                    xv = tk1[c - 1] - ua
                    kind, extra = data[k, a, c]
                    if kind == "lt":
                        term *= T(p.y + xv)
                    elif kind == "gt":
                        term *= T(xv)
                    else:
                        e, j = extra
                        s = e * p.y + p.mu[k] - p.mu[j - 1]
                        term *= T(xv + s) / T(s)
                    if term == 0:
                        break
                if term == 0:
                    break
                for b in range(a + 1, len(tk) + 1):
                    d = tk[b - 1] - ua
                    term *= T(p.y + d) / T(d)
            if term == 0:
                break
        total += term
    return total


def _twist(I, p, sigma):
    if sigma is None or sigma.is_identity():
        return I, p
    Ip = I.apply(sigma.inverse())
    z = [p.z[sigma(a) - 1] for a in range(1, I.n + 1)]
    return Ip, EllPoint(z, p.y, list(p.mu))


def weight(ctx, I, t, p, sigma=None, prefactor=True, level_order=None):
    """W^ell_{sigma,I}(t, z, h, mu)."""
    Ip, pp = _twist(I, p, sigma)
    val = sym_u(ctx, Ip, t, pp, level_order)
    if prefactor:
        val *= ctx.theta(p.y) ** I.shape.lam1
    return val


def e_ell(ctx, t, y):
    """E^ell_lambda(t, h)."""
    out = ctx.num(1)
    for level in t:
        for ua in level:
            for ub in level:
                out *= ctx.theta(y + ub - ua)
    return out


def weight_tilde(ctx, I, t, p, sigma=None):
    return weight(ctx, I, t, p, sigma) / e_ell(ctx, t, p.y)


def weight_tilde_at(ctx, I, J, p, sigma=None):
    """W~^ell_{sigma,I}(z_J, z, h, mu)."""
    return weight_tilde(ctx, I, t_at(J, p.z), p, sigma)


def psi_I(ctx, I, y, mu):
    """Product of the h, mu denominators of U_I."""
    out = ctx.num(1)
    for (k, a, c), (kind, extra) in _psi_data(I).items():
        if kind == "eq":
            e, j = extra
            out *= ctx.theta(e * y + mu[k] - mu[j - 1])
    return out


def _sigma_pairs(sigma, I):
    """(b_before, hz_b/z_a flag): for k<l, sigma(a) in I_k, sigma(b) in I_l."""
    inv = sigma.inverse()
    out = []
    for a_val in range(1, I.n + 1):
        k = I.block_of(a_val)
        for b_val in range(1, I.n + 1):
            l = I.block_of(b_val)
            if k < l:
                out.append((a_val, b_val, inv(b_val) < inv(a_val)))
    return out


def p_ell(ctx, sigma, I, p):
    """P^ell_{sigma,I}(z, h)."""
    T = ctx.theta
    out = ctx.num(1)
    for za, zb, before in _sigma_pairs(sigma, I):
        d = p.z[zb - 1] - p.z[za - 1]
        out *= T(p.y + d) if before else T(d)
    return out


def e_vert_ell(ctx, sigma, J, p):
    """e^{ell,vert}_{sigma,J,-}(z, h)."""
    out = ctx.num(1)
    for za, zb, before in _sigma_pairs(sigma, J):
        if before:
            out *= ctx.theta(p.y + p.z[zb - 1] - p.z[za - 1])
    return out


def rq_ell(ctx, I, p):
    """R^ell(z_I) and Q^ell(z_I, h)."""
    R = ctx.num(1)
    Q = ctx.num(1)
    for k in range(I.N):
        for l in range(k + 1, I.N):
            for a in I.blocks[k]:
                for b in I.blocks[l]:
                    d = p.z[b - 1] - p.z[a - 1]
                    R *= ctx.theta(d)
                    Q *= ctx.theta(p.y + d)
    return R, Q


# ------------------------------------------------------------ closed forms

def example_two_by_two(ctx, sigma, I, t, p):
    """The four displayed n=2 weight functions, t a single additive value."""
    T = ctx.theta
    z1, z2 = p.z
    y = p.y
    d = p.mu[1] - p.mu[0]
    key = (sigma.one_line, I.word)
    if key == ((1, 2), (1, 2)):
        return T(y) * T(z2 - t) * T(y + z1 - t + d) / T(y + d)
    if key == ((1, 2), (2, 1)):
        return T(y) * T(y + z1 - t) * T(z2 - t + d) / T(d)
    if key == ((2, 1), (1, 2)):
        return T(y) * T(y + z2 - t) * T(z1 - t + d) / T(d)
    if key == ((2, 1), (2, 1)):
        return T(y) * T(z1 - t) * T(y + z2 - t + d) / T(y + d)
    raise KeyError(key)


# ------------------------------------------------------------ exchange

def shifted_mu(I, i, p):
    """mu^(i)_I = (h^{-p_{I,j}(i)} mu_j)_j."""
    return [p.mu[j - 1] - I.p(j, i) * p.y for j in range(1, I.N + 1)]


def exchange_residual(ctx, I, i, t, p, sigma=None):
    """Residual of the exchange relation for sigma s_{i,i+1}."""
    n = I.n
    sigma = sigma or Permutation.identity(n)
    s = Permutation.transposition(n, i, i + 1)
    a = I.block_of(sigma(i))
    b = I.block_of(sigma(i + 1))
    lhs = weight(ctx, I, t, p, sigma * s)
    if a == b:
        return rel_residual(lhs, weight(ctx, I, t, p, sigma))
    x = p.z[sigma(i) - 1] - p.z[sigma(i + 1) - 1]
    mus = shifted_mu(I.apply(sigma.inverse()), i, p)
    R = r_matrix(ctx, x, p.y, mus)
    sI = I.swap(sigma(i), sigma(i + 1))
    rhs = R[(a, b), (a, b)] * weight(ctx, I, t, p, sigma) + R[(b, a), (a, b)] * weight(ctx, sI, t, p, sigma)
    return rel_residual(lhs, rhs)


# ------------------------------------------------------------ orthogonality

def dual_point(shape, p):
    """Parameters h^lambda mu^{-1}: mu'_k = h^{lambda_k} / mu_k."""
    return EllPoint(list(p.z), p.y, [shape.lam[k] * p.y - p.mu[k] for k in range(shape.N)])


def orthogonality_matrices(ctx, shape, p):
    idx = enumerate_indices(shape)
    w0 = Permutation.longest(shape.n)
    dp = dual_point(shape, p)
    What = [[weight_tilde_at(ctx, J, I, p) for J in idx] for I in idx]
    Wp = [[weight_tilde_at(ctx, K, I, dp, w0) for I in idx] for K in idx]
    Qd = []
    for I in idx:
        R, Q = rq_ell(ctx, I, p)
        Qd.append(R * Q)
    return idx, What, Wp, Qd


def orthogonality_residuals(ctx, shape, p):
    """max residuals of W^ W^' = Q^ (off-diagonal scaled by the diagonal) and W^' Q^-1 W^ = 1."""
    idx, What, Wp, Qd = orthogonality_matrices(ctx, shape, p)
    m = len(idx)
    xi_res = 0.0
    for r in range(m):
        for c in range(m):
            v = sum(What[r][k] * Wp[k][c] for k in range(m))
            if r == c:
                xi_res = max(xi_res, rel_residual(v, Qd[r]))
            else:
                xi_res = max(xi_res, float(abs(v) / abs(Qd[r])))
    ort_res = 0.0
    for r in range(m):
        for c in range(m):
            v = sum(Wp[r][k] * What[k][c] / Qd[k] for k in range(m))
            ort_res = max(ort_res, float(abs(v - (1 if r == c else 0))))
    return xi_res, ort_res


def xi_value(ctx, shape, t, tt, p):
    """Xi(t, t~, z, h, mu)."""
    w0 = Permutation.longest(shape.n)
    dp = dual_point(shape, p)
    E = e_ell(ctx, t, p.y)
    Et = e_ell(ctx, tt, p.y)
    total = ctx.num(0)
    for I in enumerate_indices(shape):
        total += weight(ctx, I, t, p) / E * weight(ctx, I, tt, dp, w0) / Et
    return total


def xi_symmetry_residual(ctx, shape, t, tt, p, i):
    return rel_residual(xi_value(ctx, shape, t, tt, p), xi_value(ctx, shape, t, tt, p.swapped_z(i)))


# ------------------------------------------------------------ transformation

def g_lambda(ctx, shape, t, p):
    T = ctx.theta
    N = shape.N
    levels = list(t) + [list(p.z)]
    out = ctx.num(1)
    for k in range(1, N):
        for ua in levels[k - 1]:
            for uc in levels[k]:
                out *= T(uc - ua)
    for k in range(1, N):
        if not levels[k - 1]:
            continue  # empty product gives theta(1) = 0 on both sides
        s = sum(levels[k - 1])
        c = -shape.lam[k - 1] * p.y + p.mu[k - 1] - p.mu[k]
        out *= T(s + c) / (T(s) * T(c))
    return out


def g_index(ctx, I, p, j_max=None):
    """G_I(z, h, mu); j runs to N-1 by default, j_max=N adds the last block's factors."""
    T = ctx.theta
    lam = I.shape.lam
    N = I.N
    j_max = j_max or N - 1
    out = ctx.num(1)
    for j in range(1, N):
        if not I.blocks[j - 1]:
            continue  # same degenerate theta(1) factor
        c = -sum(lam[j - 1:N - 1]) * p.y + p.mu[j - 1] - p.mu[N - 1]
        s = sum(p.z[a - 1] for a in I.blocks[j - 1])
        out *= T(c) * T(s) / T(c + s)
    for j in range(1, j_max + 1):
        for a in I.blocks[j - 1]:
            e = a - 1 - I.p(j, a) - sum(lam[:j - 1])
            out *= T(p.z[a - 1]) / T(p.z[a - 1] + e * p.y)
    return out


def h_defect(I):
    """Exponent k_I with G_{lambda,I} theta(h)^{k_I} carrying the h-multiplier of W^ell_I.

    Counts the theta(h t/t) factors of U_I, the pairs of each t^(k) level and the
    squared h exponents in the z-denominators of G_I (all blocks)."""
    shape = I.shape
    lam = shape.lam
    lt = sum(1 for kind, _ in _psi_data(I).values() if kind == "lt")
    pairs = sum(math.comb(shape.cum(k), 2) for k in range(1, shape.N))
    sq = sum(
        (a - 1 - I.p(j, a) - sum(lam[:j - 1])) ** 2
        for j in range(1, shape.N + 1)
        for a in I.blocks[j - 1]
    )
    return lt + pairs + sq


TRANSFORMATION_VARIANTS = ("literal", "examples", "corrected")


def transformation_ratio(ctx, I, t, p, prefactor=False, variant="literal"):
    """W^ell_I / G_{lambda,I}.

    literal: G_I with the z-denominators for blocks j <= N-1;
    examples: all blocks j <= N, as in the worked N=2 products;
    corrected: all blocks and an extra theta(h)^{k_I}."""
    N = I.N
    j_max = N - 1 if variant == "literal" else N
    g = g_lambda(ctx, I.shape, t, p) * g_index(ctx, I, p, j_max)
    if variant == "corrected":
        g *= ctx.theta(p.y) ** h_defect(I)
    return weight(ctx, I, t, p, prefactor=prefactor) / g


def transformation_residuals(ctx, I, t, p, prefactor=False, variant="literal"):
    """{variable name: residual} for the shift of each t, h and mu_j by tau."""
    base = transformation_ratio(ctx, I, t, p, prefactor, variant)
    tau = ctx.tau
    out = {}
    for k, level in enumerate(t, start=1):
        for a in range(len(level)):
            t2 = [list(lv) for lv in t]
            t2[k - 1][a] += tau
            out[f"t{k}_{a + 1}"] = rel_residual(transformation_ratio(ctx, I, t2, p, prefactor, variant), base)
    p2 = EllPoint(list(p.z), p.y + tau, list(p.mu))
    out["h"] = rel_residual(transformation_ratio(ctx, I, t, p2, prefactor, variant), base)
    for j in range(len(p.mu)):
        mu = list(p.mu)
        mu[j] += tau
        out[f"mu{j + 1}"] = rel_residual(
            transformation_ratio(ctx, I, t, EllPoint(list(p.z), p.y, mu), prefactor, variant), base
        )
    return out


def example1_product(ctx, n, s, t, p):
    """Displayed product for N=2, I_1={s}; t is the single additive t."""
    T = ctx.theta
    y = p.y
    d = p.mu[0] - p.mu[1]
    z = p.z
    out = ctx.num(1)
    for a in range(n):
        out *= T(z[a] - t)
    out *= T(-y + t + d) / (T(-y + d) * T(t))
    out *= T(-y + d) * T(z[s - 1]) / T(-y + z[s - 1] + d)
    out *= T(z[s - 1]) / T(z[s - 1] + (s - 1) * y)
    for b in range(1, s):
        out *= T(z[b - 1]) / T(z[b - 1] - y)
    for b in range(s + 1, n + 1):
        out *= T(z[b - 1]) / T(z[b - 1])
    return out


def example2_product(ctx, t, p):
    """Displayed product for I = ({1,2},{3})."""
    T = ctx.theta
    y = p.y
    d = p.mu[0] - p.mu[1]
    z = p.z
    out = ctx.num(1)
    for ta in t:
        for zc in z:
            out *= T(zc - ta)
    st = t[0] + t[1]
    out *= T(st - 2 * y + d) / (T(st) * T(-2 * y + d))
    sz = z[0] + z[1]
    out *= T(-2 * y + d) * T(sz) / T(-2 * y + sz + d)
    for zc in z:
        out *= T(zc) / T(zc)
    return out


# ------------------------------------------------------------ inversion

def inversion_sign(shape):
    return (-1) ** sum(shape.cum(k) * shape.cum(k + 1) for k in range(1, shape.N))


def inversion_residual(ctx, I, t, p, sigma=None):
    a = weight(ctx, I, [[-u for u in lv] for lv in t], p.inverted(), sigma)
    b = inversion_sign(I.shape) * weight(ctx, I, t, p, sigma)
    return rel_residual(a, b)


# ------------------------------------------------------------ diagonal and support

def diagonal_residual(ctx, sigma, I, p):
    """W~^ell_{sigma,I}(z_I) against P^ell_{sigma,I}."""
    return rel_residual(weight_tilde_at(ctx, I, I, p, sigma), p_ell(ctx, sigma, I, p))


def off_support_value(ctx, sigma, I, J, p):
    """|W~^ell_{sigma,I}(z_J)| relative to the diagonal scale; J not <=_sigma I."""
    scale = abs(p_ell(ctx, sigma, J, p))
    return float(abs(weight_tilde_at(ctx, I, J, p, sigma)) / scale)


def level_order_residual(ctx, I, t, p, rng):
    """Symmetrizing in a shuffled level order gives the same value."""
    order = list(range(1, I.N))
    rng.shuffle(order)
    return rel_residual(sym_u(ctx, I, t, p, order), sym_u(ctx, I, t, p))


# ------------------------------------------------------------ q -> 0 limit

def sample_limit_alcove(N, rng, eps_range=(0.2, 0.8), m_range=(-2, 2), max_den=40):
    """Alcove point with every fractional part eps_{j,k} inside eps_range."""
    lo, hi = eps_range
    while True:
        nu = [Fraction(0)]
        for _ in range(N - 1):
            den = rng.randint(2, max_den)
            nu.append(Fraction(rng.randint(-2 * den, 2 * den), den))
        try:
            a = AlcovePoint(nu)
        except IntegerDifference:
            continue
        if all(lo <= a.eps(i, j) <= hi and m_range[0] <= a.m(i, j) <= m_range[1]
               for i in range(1, N + 1) for j in range(i + 1, N + 1)):
            return a


def limit_constant_exponent(shape):
    """c(h) = sign * h^{-e/2}; returns (sign, e)."""
    return inversion_sign(shape), sum(shape.cum(k) ** 2 for k in range(1, shape.N))


def q_limit_delta(I, alcove, log10_q, t, p0, dps=40, W=None):
    """Delta(q) for q = 10^log10_q: the normalized elliptic weight against W^D at the same point.

    p0 carries additive z and y (its mu is ignored: mu_j = q^{nu_j})."""
    from .algebra import H_VAR, t as tvar, z as zvar
    from .theta import EllipticContext
    from .trig import trig_weight_symbolic

    ctx = EllipticContext.from_q_mp(log10_q, dps)
    mp = ctx.mp
    shape = I.shape
    mu = [ctx.tau * mp.mpf(v.numerator) / v.denominator for v in alcove.nu]
    p = EllPoint([mp.mpc(x) for x in p0.z], mp.mpc(p0.y), mu)
    tt = [[mp.mpc(u) for u in lv] for lv in t]
    w = weight(ctx, I, tt, p)
    if W is None:
        W = trig_weight_symbolic(I, alcove)[0]
    point = {zvar(a): ctx.exp2(p.z[a - 1]) for a in range(1, shape.n + 1)}
    for k, lv in enumerate(tt, start=1):
        for a, u in enumerate(lv, start=1):
            point[tvar(k, a)] = ctx.exp2(u)
    point[H_VAR] = ctx.exp2(p.y)
    wd = W.evaluate(point, sqrt_h=ctx.exp1(p.y))
    sign, e = limit_constant_exponent(shape)
    levels = tt + [p.z]
    X = sum(
        levels[k][b] - levels[k - 1][a]
        for k in range(1, shape.N)
        for a in range(len(levels[k - 1]))
        for b in range(len(levels[k]))
    )
    scale = sign * ctx.exp1(-p.y * e) * ctx.exp1(-p.y * I.ell) * ctx.exp1(-X)
    return float(abs(w / scale - wd) / abs(wd))


def q_limit_sequence(I, alcove, t, p0, exponents=(2, 3, 4, 5, 6), dps=40):
    from .trig import trig_weight_symbolic

    W = trig_weight_symbolic(I, alcove)[0]
    return [q_limit_delta(I, alcove, -k, t, p0, dps, W) for k in exponents]


def x_substitution_ok(I):
    """X(t) at t = z_I equals prod_{j<k} prod_{a in I_j, b in I_k} z_b/z_a."""
    from .trig import x_monomial_at
    from .algebra import z as zvar, zh_ring

    exps = {}
    levels = [I.cumulative(k) for k in range(1, I.N + 1)]
    for k in range(1, I.N):
        for a in levels[k - 1]:
            for b in levels[k]:
                exps[zvar(b)] = exps.get(zvar(b), 0) + 1
                exps[zvar(a)] = exps.get(zvar(a), 0) - 1
    return zh_ring(I.n).monomial(exps) == x_monomial_at(I)


def ell_codim_values(shape):
    """{ell_I + codim_I} over all I; a single value means h^{-ell/2}/h^{codim/2} is I-independent."""
    from .trig import codim

    ident = Permutation.identity(shape.n)
    return {I.ell + codim(ident, I) for I in enumerate_indices(shape)}
