"""Numerical theta function in additive coordinates.

theta(u) = (x^{1/2} - x^{-1/2}) prod_{s>=1} (1 - q^s x)(1 - q^s / x),
with x = e^{2 pi i u}, q = e^{2 pi i tau} and x^{1/2} = e^{pi i u}.
"""

import cmath
import math

import mpmath


class ThetaDomainError(ValueError):
    pass


class EllipticContext:
    """tau, truncation tolerance, |q| cap and optional extended precision (dps)."""

    def __init__(self, tau, tol=1e-14, q_cap=0.6, dps=None, max_terms=100000):
        self.dps = dps
        if dps:
            self.mp = mpmath.MPContext()
            self.mp.dps = dps
            self.tau = self.mp.mpc(tau)
            self.tol = self.mp.mpf(tol)
        else:
            self.mp = None
            self.tau = complex(tau)
            self.tol = tol
        if self.tau.imag <= 0:
            raise ThetaDomainError("tau needs a positive imaginary part")
        self.q = self.exp2(self.tau)
        self.abs_q = abs(self.q)
        if self.abs_q >= 1:
            raise ThetaDomainError("|q| must be below 1")
        if self.abs_q > q_cap:
            raise ThetaDomainError(f"|q| = {float(self.abs_q):.3g} above the cap {q_cap}")
        self.q_cap = q_cap
        self.max_terms = max_terms
        # stop once the whole geometric tail, not just the next term, is below tol
        self.cutoff = self.tol * (1 - self.abs_q)

    @classmethod
    def from_q(cls, q, **kw):
        """Context with real 0 < q < 1."""
        tau = complex(0, -math.log(q) / (2 * math.pi))
        return cls(tau, **kw)

    @classmethod
    def from_q_mp(cls, log10_q, dps, **kw):
        """Extended precision context with q = 10^log10_q exactly in tau."""
        mp = mpmath.MPContext()
        mp.dps = dps
        tau = mp.mpc(0, -log10_q * mp.log(10) / (2 * mp.pi))
        return cls(tau, dps=dps, **kw)

    # scalar helpers usable in both precisions
    def num(self, u):
        return self.mp.mpc(u) if self.mp else complex(u)

    def exp2(self, u):
        """e^{2 pi i u}."""
        if self.mp:
            return self.mp.exp(2j * self.mp.pi * self.mp.mpc(u))
        return cmath.exp(2j * math.pi * u)

    def exp1(self, u):
        """e^{pi i u}."""
        if self.mp:
            return self.mp.exp(1j * self.mp.pi * self.mp.mpc(u))
        return cmath.exp(1j * math.pi * u)

    def phi(self, x):
        """phi(x) = prod_{s>=0} (1 - q^s x), multiplicative argument."""
        out = 1 - x
        qs = self.q
        for _ in range(self.max_terms):
            if abs(qs) * abs(x) < self.cutoff:
                return out
            out *= 1 - qs * x
            qs *= self.q
        raise ThetaDomainError("phi product did not converge")

    def theta(self, u):
        if self.mp:
            u = self.mp.mpc(u)
        half = self.exp1(u)
        x = half * half
        out = half - 1 / half
        if out == 0:
            return out
        xi = 1 / x
        big = max(abs(x), abs(xi))
        qs = self.q
        for _ in range(self.max_terms):
            if abs(qs) * big < self.cutoff:
                return out
            out *= (1 - qs * x) * (1 - qs * xi)
            qs *= self.q
        raise ThetaDomainError("theta product did not converge")

    def theta_mult(self, x):
        """theta as a function of a multiplicative argument with a chosen root."""
        if self.mp:
            x = self.mp.mpc(x)
            r = self.mp.sqrt(x)
        else:
            r = cmath.sqrt(x)
        return (r - 1 / r) * self.phi(self.q * x) * self.phi(self.q / x)


def rel_residual(a, b):
    scale = max(abs(a), abs(b), 1e-300)
    return float(abs(a - b) / scale)


def functional_equation_residuals(ctx, u):
    """Residuals of theta(-u) = -theta(u), theta(u+1) = -theta(u),
    theta(u+tau) = -e^{-pi i tau - 2 pi i u} theta(u) and
    theta(qx)/theta(x) = -1/(q^{1/2} x)."""
    th = ctx.theta(u)
    tau = ctx.tau
    out = {
        "odd": rel_residual(ctx.theta(-u), -th),
        "period_1": rel_residual(ctx.theta(u + 1), -th),
        "period_tau": rel_residual(ctx.theta(u + tau), -ctx.exp1(-tau - 2 * u) * th),
    }
    x = ctx.exp2(u)
    out["mult_q"] = rel_residual(ctx.theta(u + tau) / th, -1 / (ctx.exp1(tau) * x))
    return out


def _prod(factors):
    out = 1
    for f in factors:
        out *= f
    return out


def identity_two_terms(ctx, al, h, y1, y2, x):
    """The three products of the four-term identity: lhs = rhs1 + rhs2."""
    T = ctx.theta
    return (
        _prod(T(v) for v in (al + y1 - x, h + y2 - x, h + y1 - y2, al)),
        _prod(T(v) for v in (al + h + y1 - x, y2 - x, y1 - y2, al - h)),
        _prod(T(v) for v in (h + y1 - x, al + y2 - x, h, al + y1 - y2)),
    )


def identity_two(ctx, al, h, y1, y2, x):
    """Both sides of the four-term identity, all arguments additive."""
    a, b, c = identity_two_terms(ctx, al, h, y1, y2, x)
    return a, b + c


def identity_three_terms(ctx, a1, a2, h, y1, y2, x1, x2):
    """The four products of the eight-term identity: p1 - p2 = p3 - p4."""
    T = ctx.theta
    return (
        _prod(T(v) for v in (a1 + a2 + h + y1 - x1, y2 - x1, h + y1 - x2, a2 + h + y2 - x2, h + x2 - x1, y1 - y2, a1)),
        _prod(T(v) for v in (h + y1 - x1, a2 + h + y2 - x1, a1 + a2 + h + y1 - x2, y2 - x2, a1 + x2 - x1, y1 - y2, h)),
        _prod(T(v) for v in (a1 + a2 + h + y1 - x1, h + y2 - x1, y1 - x2, a2 + h + y2 - x2, x2 - x1, h + y1 - y2, a1)),
        _prod(T(v) for v in (h + y1 - x1, a1 + a2 + h + y2 - x1, a2 + h + y1 - x2, y2 - x2, x2 - x1, a1 + y1 - y2, h)),
    )


def identity_three(ctx, a1, a2, h, y1, y2, x1, x2):
    """Both sides of the eight-term identity, all arguments additive."""
    p1, p2, p3, p4 = identity_three_terms(ctx, a1, a2, h, y1, y2, x1, x2)
    return p1 - p2, p3 - p4


def term_residual(lhs, rhs, terms):
    """|lhs - rhs| relative to the largest product in the identity.

    Rounding error in a sum of products scales with the largest product, so this
    is the relative error that does not penalize cancellation between terms."""
    scale = max(max(abs(t) for t in terms), 1e-300)
    return float(abs(lhs - rhs) / scale)
