"""Quadratic forms of theta-function line bundles and a numeric quasi-periodicity checker.

A section f of L(M, v) satisfies
    f(x + e_j)     = (-1)^{M_jj} f(x)
    f(x + tau e_j) = (-1)^{M_jj} exp(-2 pi i (sum_k M_jk x_k + v_j) - pi i tau M_jj) f(x)
with M_jj the coefficient of x_j^2 and M_jk half the coefficient of x_j x_k.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .theta import rel_residual


@dataclass
class QuadraticFormData:
    names: list
    M: list
    v: list = field(default=None)

    def __post_init__(self):
        p = len(self.names)
        if self.v is None:
            self.v = [Fraction(0)] * p
        for j in range(p):
            for k in range(p):
                if self.M[j][k] != self.M[k][j]:
                    raise ValueError("M must be symmetric")

    def __eq__(self, other):
        return self.names == other.names and self.M == other.M and self.v == other.v

    def to_json(self):
        return {
            "names": list(self.names),
            "M": [[str(x) for x in row] for row in self.M],
            "v": [str(x) for x in self.v],
        }


def _zero(p):
    return [[Fraction(0)] * p for _ in range(p)]


def add_product(M, alpha, beta, coeff):
    """M += coeff * sym(alpha beta^T), i.e. the polynomial coeff (alpha.x)(beta.x)."""
    p = len(M)
    for j in range(p):
        for k in range(p):
            M[j][k] += Fraction(coeff) * (Fraction(alpha[j]) * beta[k] + Fraction(beta[j]) * alpha[k]) / 2


class ThetaProduct:
    """prod theta(r.x + c)^power over integral r; coordinates named by `names`."""

    def __init__(self, names):
        self.names = list(names)
        self.pos = {n: i for i, n in enumerate(self.names)}
        self.factors = []

    def vec(self, coeffs):
        r = [0] * len(self.names)
        for name, c in coeffs.items():
            r[self.pos[name]] += c
        return r

    def add(self, coeffs, power=1, const=0):
        r = self.vec(coeffs)
        if not any(r) and const == 0:
            return False  # theta(0) factor, omitted
        self.factors.append((tuple(r), power, const))
        return True

    def evaluate(self, ctx, x):
        out = ctx.num(1)
        for r, power, c in self.factors:
            val = ctx.theta(sum(ri * xi for ri, xi in zip(r, x)) + c)
            out = out * val if power == 1 else out * val ** power
        return out

    def form(self):
        p = len(self.names)
        M = _zero(p)
        v = [Fraction(0)] * p
        for r, power, c in self.factors:
            add_product(M, r, r, power)
            for j in range(p):
                v[j] += power * c * r[j]
        return QuadraticFormData(self.names, M, v)

    def __truediv__(self, other):
        out = ThetaProduct(self.names)
        out.factors = list(self.factors) + [(r, -pw, c) for r, pw, c in other.factors]
        return out


# ------------------------------------------------------------ G_lambda / E

def _v_names(shape):
    return [f"v{j}_{a}" for j in range(1, shape.N + 1) for a in range(1, shape.lam[j - 1] + 1)]


def _common_names(shape):
    return ["y"] + [f"nu{k}" for k in range(1, shape.N)]


def _t_images(shape):
    """t^(k)_a -> v name under the cumulative substitution, k = 1..N."""
    out = {}
    for k in range(1, shape.N + 1):
        names = [f"v{j}_{a}" for j in range(1, k + 1) for a in range(1, shape.lam[j - 1] + 1)]
        for a, name in enumerate(names, start=1):
            out[k, a] = name
    return out


def _nu_sum(k, N):
    """mu_k/mu_{k+1} -> nu_k; mu_j/mu_N -> nu_j + ... + nu_{N-1}."""
    return {f"nu{i}": 1 for i in range(k, N)}


def g_lambda_hat(shape):
    names = _v_names(shape) + _common_names(shape)
    f = ThetaProduct(names)
    img = _t_images(shape)
    N = shape.N
    for k in range(1, N):
        for a in range(1, shape.cum(k) + 1):
            for c in range(1, shape.cum(k + 1) + 1):
                coeffs = {img[k + 1, c]: 1}
                coeffs[img[k, a]] = coeffs.get(img[k, a], 0) - 1
                f.add(coeffs)
    for k in range(1, N):
        if shape.cum(k) == 0:
            continue
        tsum = {img[k, a]: 1 for a in range(1, shape.cum(k) + 1)}
        shift = {"y": -shape.lam[k - 1], f"nu{k}": 1}
        f.add({**tsum, **shift})
        f.add(tsum, -1)
        f.add(shift, -1)
    return f


def e_hat(shape):
    names = _v_names(shape) + _common_names(shape)
    f = ThetaProduct(names)
    img = _t_images(shape)
    for k in range(1, shape.N):
        for a in range(1, shape.cum(k) + 1):
            for b in range(1, shape.cum(k) + 1):
                coeffs = {"y": 1}
                coeffs[img[k, b]] = coeffs.get(img[k, b], 0) + 1
                coeffs[img[k, a]] = coeffs.get(img[k, a], 0) - 1
                f.add(coeffs)
    return f


def g_over_e_hat(shape):
    return g_lambda_hat(shape) / e_hat(shape)


def m_lambda(shape, cross=1):
    """The displayed form for G^_lambda / E^; `cross` scales the nu-v term."""
    names = _v_names(shape) + _common_names(shape)
    p = len(names)
    pos = {n: i for i, n in enumerate(names)}
    M = _zero(p)

    def unit(name):
        e = [0] * p
        e[pos[name]] = 1
        return e

    N = shape.N
    for j in range(1, N + 1):
        for k in range(j + 1, N + 1):
            for a in range(1, shape.lam[j - 1] + 1):
                for b in range(1, shape.lam[k - 1] + 1):
                    r = [x - y for x, y in zip(unit(f"v{j}_{a}"), unit(f"v{k}_{b}"))]
                    add_product(M, r, r, 1)
    ey = unit("y")
    add_product(M, ey, ey, -sum(shape.cum(k) ** 2 for k in range(1, N)))
    for k in range(1, N):
        alpha = [x - shape.lam[k - 1] * y for x, y in zip(unit(f"nu{k}"), ey)]
        beta = [0] * p
        for j in range(1, k + 1):
            for a in range(1, shape.lam[j - 1] + 1):
                beta[pos[f"v{j}_{a}"]] = 1
        add_product(M, alpha, beta, cross)
    return QuadraticFormData(names, M)


# ------------------------------------------------------------ G_I

def g_index_hat(I):
    shape = I.shape
    N = shape.N
    lam = shape.lam
    names = [f"x{a}" for a in range(1, shape.n + 1)] + _common_names(shape)
    f = ThetaProduct(names)
    for j in range(1, N):
        if not I.blocks[j - 1]:
            continue
        c = {"y": -sum(lam[j - 1:N - 1]), **_nu_sum(j, N)}
        s = {f"x{a}": 1 for a in I.blocks[j - 1]}
        f.add(c)
        f.add(s)
        f.add({**c, **s}, -1)
    for j in range(1, N):
        for a in I.blocks[j - 1]:
            e = a - 1 - I.p(j, a) - sum(lam[:j - 1])
            f.add({f"x{a}": 1})
            f.add({f"x{a}": 1, "y": e}, -1)
    return f


def m_index(I):
    """The displayed form for G^_I."""
    shape = I.shape
    N = shape.N
    n = shape.n
    lam = shape.lam
    names = [f"x{a}" for a in range(1, n + 1)] + _common_names(shape)
    p = len(names)
    pos = {nm: i for i, nm in enumerate(names)}
    M = _zero(p)

    def unit(name):
        e = [0] * p
        e[pos[name]] = 1
        return e

    ey = unit("y")
    for k in range(1, N):
        nus = [0] * p
        for i in range(k, N):
            nus[pos[f"nu{i}"]] = 1
        xs = [0] * p
        for a in I.blocks[k - 1]:
            xs[pos[f"x{a}"]] = 1
        add_product(M, nus, xs, -2)
        for a in I.blocks[k - 1]:
            e = I.p(k, a) - a + 1 + sum(lam[:k - 1])
            add_product(M, ey, ey, -e * e)
            add_product(M, ey, unit(f"x{a}"), 2 * (I.p(k, a) - a + 1 + n - lam[N - 1]))
    return QuadraticFormData(names, M)


# ------------------------------------------------------------ checker

def quasiperiodicity_residuals(ctx, f, form, x):
    """Per-coordinate residuals of both quasi-periodicity laws at the point x."""
    import cmath
    import math

    M = form.M
    v = form.v
    base = f(x)
    tau = ctx.tau
    out = {}
    for j, name in enumerate(form.names):
        sign = -1 if M[j][j] % 2 else 1
        x1 = list(x)
        x1[j] += 1
        out[f"{name}+1"] = rel_residual(f(x1), sign * base)
        x2 = list(x)
        x2[j] += tau
        lin = sum(float(M[j][k]) * x[k] for k in range(len(x))) + complex(v[j])
        if ctx.mp:
            fac = ctx.mp.exp(-2j * ctx.mp.pi * lin - 1j * ctx.mp.pi * tau * float(M[j][j]))
        else:
            fac = cmath.exp(-2j * math.pi * lin - 1j * math.pi * tau * float(M[j][j]))
        out[f"{name}+tau"] = rel_residual(f(x2), sign * fac * base)
    return out


def theta_linear(r, zc):
    """theta(r.x + z) as a ThetaProduct with its expected form."""
    names = [f"x{i}" for i in range(1, len(r) + 1)]
    f = ThetaProduct(names)
    f.add({names[i]: r[i] for i in range(len(r))}, 1, zc)
    return f
