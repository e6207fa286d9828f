"""Exact Laurent polynomials over Q and rational expressions with binomial
denominators.

Monomials are dense exponent tuples over a declared variable shape (a
``Ring``).  The entry for ``h`` stores twice the exponent so that half-integer
powers of ``h`` stay integral.
"""

import cmath
import operator
import re
from fractions import Fraction
from functools import lru_cache

# variable kinds, in global order
Z, T, H, MU, AUX = 0, 1, 2, 3, 4
H_VAR = (H,)


def z(a):
    return (Z, a)


def t(k, a):
    return (T, k, a)


def mu(j):
    return (MU, j)


def aux(i):
    return (AUX, i)


def var_name(v):
    kind = v[0]
    if kind == Z:
        return f"z{v[1]}"
    if kind == T:
        return f"t{v[1]}_{v[2]}"
    if kind == H:
        return "h"
    if kind == MU:
        return f"mu{v[1]}"
    return f"x{v[1]}"


_NAME_RE = re.compile(r"^(?:z(\d+)|t(\d+)_(\d+)|(h)|mu(\d+)|x(\d+))$")


def parse_var(name):
    m = _NAME_RE.match(name)
    if not m:
        raise ValueError(f"unknown variable name {name!r}")
    g = m.groups()
    if g[0]:
        return z(int(g[0]))
    if g[1]:
        return t(int(g[1]), int(g[2]))
    if g[3]:
        return H_VAR
    if g[4]:
        return mu(int(g[4]))
    return aux(int(g[5]))


class ShapeMismatch(ValueError):
    pass


class NotDivisible(ArithmeticError):
    pass


class DenominatorVanishes(ZeroDivisionError):
    pass


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _add(a, b):
    return tuple(map(operator.add, a, b))


def _sub(a, b):
    return tuple(map(operator.sub, a, b))


class Ring:
    """A declared variable shape: an ordered tuple of variables."""

    __slots__ = ("variables", "index", "size", "h_pos", "zero_mono", "_hash")

    def __init__(self, variables):
        self.variables = tuple(sorted(set(variables)))
        self.index = {v: i for i, v in enumerate(self.variables)}
        self.size = len(self.variables)
        self.h_pos = self.index.get(H_VAR)
        self.zero_mono = (0,) * self.size
        self._hash = hash(self.variables)

    def __eq__(self, other):
        return isinstance(other, Ring) and self.variables == other.variables

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return "Ring(" + ", ".join(var_name(v) for v in self.variables) + ")"

    @property
    def z_count(self):
        return sum(1 for v in self.variables if v[0] == Z)

    def mono(self, exps):
        """Exponent tuple from a map variable -> exponent (true value for h)."""
        e = [0] * self.size
        for v, k in exps.items():
            if v not in self.index:
                raise ShapeMismatch(f"{var_name(v)} not in {self}")
            if v == H_VAR:
                k2 = Fraction(k) * 2
                if k2.denominator != 1:
                    raise ValueError("h exponent must be half-integral")
                e[self.index[v]] += int(k2)
            else:
                k = Fraction(k)
                if k.denominator != 1:
                    raise ValueError("only h may carry fractional exponents")
                e[self.index[v]] += int(k)
        return tuple(e)

    def exps(self, mono):
        """Sparse exponent map of a monomial (true value for h)."""
        out = {}
        for v, k in zip(self.variables, mono):
            if k:
                out[v] = Fraction(k, 2) if v == H_VAR else k
        return out

    def const(self, c):
        c = _norm(Fraction(c)) if not isinstance(c, int) else c
        return LaurentPolynomial(self, {self.zero_mono: c} if c else {})

    def one(self):
        return self.const(1)

    def zero(self):
        return LaurentPolynomial(self, {})

    def var(self, v, power=1):
        return LaurentPolynomial(self, {self.mono({v: power}): 1})

    def monomial(self, exps, coeff=1):
        return LaurentPolynomial(self, {self.mono(exps): _norm(Fraction(coeff))})

    def binomial(self, c, exps):
        """The polynomial 1 - c*X^exps."""
        return self.one() - self.monomial(exps, c)

    def h_half(self, k):
        """h^(k/2)."""
        e = [0] * self.size
        e[self.h_pos] = k
        return LaurentPolynomial(self, {tuple(e): 1})


@lru_cache(maxsize=None)
def make_ring(variables):
    return Ring(variables)


def zh_ring(n):
    """Ring in z_1..z_n and h."""
    return make_ring(tuple([z(a) for a in range(1, n + 1)] + [H_VAR]))


class LaurentPolynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # construction helpers
    @classmethod
    def _clean(cls, ring, terms):
        return cls(ring, {m: c for m, c in terms.items() if c})

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            if other.ring != self.ring:
                raise ShapeMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = _norm(s)
            else:
                terms.pop(m, None)
        return LaurentPolynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return self.ring.zero()
            return LaurentPolynomial(self.ring, {m: _norm(c * other) for m, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = tuple(map(operator.add, ma, mb))
                out[m] = get(m, 0) + ca * cb
        return LaurentPolynomial(self.ring, {m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            mono = self.as_monomial()
            if mono is None:
                raise ValueError("negative power of a non-monomial")
            c, m = mono
            return LaurentPolynomial(
                self.ring, {tuple(-k * e for e in m): _norm(Fraction(1) / Fraction(c) ** (-k))}
            )
        out = self.ring.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def mul_term(self, coeff, mono):
        """Multiply by coeff * X^mono."""
        return LaurentPolynomial(
            self.ring, {_add(m, mono): _norm(c * coeff) for m, c in self.terms.items()}
        )

    def mul_binomial(self, c, mono):
        """Multiply by (1 - c X^mono) without building the binomial."""
        out = dict(self.terms)
        for m, a in self.terms.items():
            mm = _add(m, mono)
            s = out.get(mm, 0) - a * c
            if s:
                out[mm] = _norm(s)
            else:
                out.pop(mm, None)
        return LaurentPolynomial(self.ring, out)

    # predicates
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def as_monomial(self):
        if len(self.terms) != 1:
            return None
        (m, c), = self.terms.items()
        return c, m

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_mono in self.terms)

    def constant_value(self):
        return self.terms.get(self.ring.zero_mono, 0)

    def __len__(self):
        return len(self.terms)

    # structural maps
    def embed(self, ring):
        """Same polynomial in a larger ring."""
        if ring == self.ring:
            return self
        pos = []
        for v in self.ring.variables:
            if v not in ring.index:
                raise ShapeMismatch(f"{var_name(v)} not in {ring}")
            pos.append(ring.index[v])
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.size
            for p, k in zip(pos, m):
                e[p] = k
            out[tuple(e)] = c
        return LaurentPolynomial(ring, out)

    def permute_vars(self, perm):
        """Relabel variables: perm maps ring positions to ring positions."""
        out = {}
        size = self.ring.size
        for m, c in self.terms.items():
            e = [0] * size
            for i, k in enumerate(m):
                e[perm[i]] += k
            out[tuple(e)] = c
        return LaurentPolynomial(self.ring, out)

    def permute_z(self, sigma):
        """z_a -> z_{sigma(a)}; sigma is a 1-based one-line tuple."""
        return self.permute_vars(_z_perm(self.ring, tuple(sigma)))

    def swap_z(self, a):
        """K_a: exchange z_a and z_{a+1}."""
        n = self.ring.z_count
        s = list(range(1, n + 1))
        s[a - 1], s[a] = s[a], s[a - 1]
        return self.permute_z(tuple(s))

    def substitute(self, assignment, target=None):
        """Replace variables by Laurent polynomials of the target ring.

        Variables not in the assignment are carried over unchanged (they must
        exist in the target ring).
        """
        target = target or self.ring
        images = []
        for i, v in enumerate(self.ring.variables):
            if v in assignment:
                img = assignment[v]
                if not isinstance(img, LaurentPolynomial):
                    img = target.const(img)
                if img.ring != target:
                    raise ShapeMismatch("assignment image over a different ring")
                images.append((i, img, img.as_monomial()))
            else:
                if v not in target.index:
                    raise ShapeMismatch(f"{var_name(v)} not in target ring")
                e = [0] * target.size
                e[target.index[v]] = 1
                images.append((i, None, (1, tuple(e))))
        # fast path when every image is a monomial
        if all(mono is not None for _, _, mono in images):
            out = {}
            zero = target.zero_mono
            for m, c in self.terms.items():
                coeff = Fraction(c)
                e = zero
                for (i, img, (ic, im)), k in zip(images, m):
                    if not k:
                        continue
                    v = self.ring.variables[i]
                    if v == H_VAR and img is not None:
                        if k % 2:
                            raise ValueError("half power of h with a non-h image")
                        k //= 2
                    if v != H_VAR or img is not None:
                        coeff *= Fraction(ic) ** k
                        e = _add(e, tuple(k * x for x in im))
                    else:
                        # h -> h keeps the doubled exponent as is
                        e = _add(e, tuple(k * x for x in im))
                out[e] = _norm(out.get(e, 0) + coeff)
            return LaurentPolynomial._clean(target, out)
        total = target.zero()
        for m, c in self.terms.items():
            term = target.const(c)
            for (i, img, mono), k in zip(images, m):
                if not k:
                    continue
                v = self.ring.variables[i]
                if img is None:
                    term = term.mul_term(1, tuple(k * x for x in mono[1]))
                    continue
                if v == H_VAR:
                    if k % 2:
                        raise ValueError("half power of h with a non-h image")
                    k //= 2
                term = term * (img ** k)
            total = total + term
        return total

    def evaluate(self, point, sqrt_h=None):
        """Numeric value; point maps variables to numbers (complex or mpmath)."""
        vals = []
        for v in self.ring.variables:
            if v == H_VAR:
                if sqrt_h is not None:
                    vals.append(sqrt_h)
                elif v in point:
                    vals.append(None)
                else:
                    raise KeyError("h not assigned")
            else:
                vals.append(point[v])
        hval = point.get(H_VAR)
        total = 0
        for m, c in self.terms.items():
            term = c.numerator / c.denominator if isinstance(c, Fraction) else c
            for i, k in enumerate(m):
                if not k:
                    continue
                if i == self.ring.h_pos:
                    if vals[i] is not None:
                        term = term * vals[i] ** k
                    elif k % 2:
                        raise ValueError("half power of h needs a supplied square root")
                    else:
                        term = term * hval ** (k // 2)
                else:
                    term = term * vals[i] ** k
            total = total + term
        return total

    def degree_range(self, pos):
        ks = [m[pos] for m in self.terms]
        return min(ks), max(ks)

    def z_support(self):
        """z-exponent vectors of terms, h treated as a number."""
        zpos = [i for i, v in enumerate(self.ring.variables) if v[0] == Z]
        return {tuple(m[i] for i in zpos) for m in self.terms}

    # presentation
    def sorted_terms(self):
        h = self.ring.h_pos

        def key(item):
            m = item[0]
            deg = sum(Fraction(k, 2) if i == h else k for i, k in enumerate(m))
            return (-deg, tuple(-k for k in m))

        return sorted(self.terms.items(), key=key)

    def to_json(self):
        out = []
        for m, c in self.sorted_terms():
            exps = {}
            for v, k in zip(self.ring.variables, m):
                if k:
                    exps[var_name(v)] = f"{k}/2" if v == H_VAR else k
            out.append({"coeff": str(Fraction(c)), "exps": exps})
        return out

    @staticmethod
    def from_json(data, ring):
        terms = {}
        for item in data:
            exps = {}
            for name, k in item["exps"].items():
                v = parse_var(name)
                exps[v] = Fraction(k)
            m = ring.mono(exps)
            terms[m] = _norm(terms.get(m, 0) + Fraction(item["coeff"]))
        return LaurentPolynomial._clean(ring, terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for v, k in zip(self.ring.variables, m):
                if not k:
                    continue
                if v == H_VAR:
                    k = Fraction(k, 2)
                name = var_name(v)
                factors.append(name if k == 1 else f"{name}^{k}" if k > 0 else f"{name}^({k})")
            c = Fraction(c)
            body = "*".join(factors)
            if not body:
                s = str(abs(c))
            elif abs(c) == 1:
                s = body
            else:
                s = f"{abs(c)}*{body}"
            parts.append(("- " if c < 0 else "+ ") + s)
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    __repr__ = __str__


@lru_cache(maxsize=None)
def _z_perm(ring, sigma):
    perm = list(range(ring.size))
    for a, b in enumerate(sigma, start=1):
        perm[ring.index[z(a)]] = ring.index[z(b)]
    return tuple(perm)


# ---------------------------------------------------------------- division

def exact_divide(p, q):
    """Return r with p = q*r, or raise NotDivisible."""
    if p.ring != q.ring:
        raise ShapeMismatch("operands over different rings")
    if not q.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.terms:
        return p
    if len(q.terms) == 1:
        (qm, qc), = q.terms.items()
        inv = Fraction(1) / Fraction(qc)
        return LaurentPolynomial(
            p.ring, {_sub(m, qm): _norm(c * inv) for m, c in p.terms.items()}
        )
    if len(q.terms) == 2:
        return _divide_binomial(p, q)
    return _long_divide(p, q)


def _divide_binomial(p, q):
    # q = c0 X^e0 (1 - c X^d); chains along d are solved from the bottom up
    (m0, c0), (m1, c1) = q.sorted_terms()
    d = _sub(m1, m0)
    c = _norm(-Fraction(c1) / Fraction(c0))
    pivot = next(i for i, k in enumerate(d) if k)
    dp = d[pivot]
    steps = {}

    def step(k):
        v = steps.get(k)
        if v is None:
            v = steps[k] = tuple(k * y for y in d)
        return v

    classes = {}
    for m, a in p.terms.items():
        k = m[pivot] // dp
        key = tuple(map(operator.sub, m, step(k)))
        classes.setdefault(key, {})[k] = a
    inv0 = _norm(Fraction(1) / Fraction(c0))
    unit = inv0 == 1
    out = {}
    for key, chain in classes.items():
        lo, hi = min(chain), max(chain)
        prev = 0
        base = _sub(key, m0)
        for k in range(lo, hi):
            r = chain.get(k, 0) + c * prev
            if r:
                out[tuple(map(operator.add, base, step(k)))] = r if unit else _norm(r * inv0)
            prev = r
        if chain.get(hi, 0) + c * prev != 0:
            raise NotDivisible("nonzero remainder in binomial division")
    return LaurentPolynomial(p.ring, out)


def _long_divide(p, q):
    # long division in the first variable whose exponent varies in q,
    # leading coefficients divided recursively in the remaining variables
    ms = list(q.terms)
    x = next(i for i in range(q.ring.size) if len({m[i] for m in ms}) > 1)

    def split(poly_terms):
        groups = {}
        for m, c in poly_terms.items():
            mm = m[:x] + (0,) + m[x + 1:]
            groups.setdefault(m[x], {})[mm] = c
        return groups

    qg = split(q.terms)
    qmin, qmax = min(qg), max(qg)
    qlead = LaurentPolynomial(q.ring, qg[qmax])
    pmin = min(m[x] for m in p.terms)
    floor = pmin - qmin
    rem = p
    quot = {}
    while rem.terms:
        top = max(m[x] for m in rem.terms)
        shift = top - qmax
        if shift < floor:
            raise NotDivisible("nonzero remainder in long division")
        lead = LaurentPolynomial(
            q.ring, {m[:x] + (0,) + m[x + 1:]: c for m, c in rem.terms.items() if m[x] == top}
        )
        c = exact_divide(lead, qlead)
        e = [0] * q.ring.size
        e[x] = shift
        part = LaurentPolynomial(q.ring, {_add(m, tuple(e)): v for m, v in c.terms.items()})
        for m, v in part.terms.items():
            quot[m] = _norm(quot.get(m, 0) + v)
        rem = rem - part * q
    return LaurentPolynomial._clean(q.ring, quot)


def divides(p, q):
    """Quotient p/q if exact, else None."""
    try:
        return exact_divide(p, q)
    except NotDivisible:
        return None


# ------------------------------------------------------ binomial factors

def _orient(ring, mono):
    """True when 1 - cX^mono is in canonical orientation."""
    h = ring.h_pos
    for i, k in enumerate(mono):
        if k and i != h:
            return k < 0
    return mono[h] > 0 if h is not None else True


class BinomialFactor:
    """The factor 1 - c X^mono, stored in canonical orientation."""

    __slots__ = ("ring", "c", "mono")

    def __init__(self, ring, c, mono):
        if not any(mono):
            raise ValueError("binomial factor needs a nonconstant monomial")
        if not c:
            raise ValueError("binomial factor needs c != 0")
        self.ring = ring
        self.c = _norm(Fraction(c))
        self.mono = mono

    @staticmethod
    def make(ring, c, mono):
        """Canonical factor together with the unit u = (uc, um): 1 - cX = u * factor."""
        if _orient(ring, mono):
            return BinomialFactor(ring, c, mono), (1, ring.zero_mono)
        c = Fraction(c)
        return BinomialFactor(ring, 1 / c, tuple(-k for k in mono)), (_norm(-c), mono)

    def key(self):
        return (self.mono, Fraction(self.c))

    def __eq__(self, other):
        return isinstance(other, BinomialFactor) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other):
        return self.key() < other.key()

    def poly(self):
        return LaurentPolynomial(self.ring, {self.ring.zero_mono: 1, self.mono: _norm(-Fraction(self.c))})

    def evaluate(self, point, sqrt_h=None):
        return self.poly().evaluate(point, sqrt_h)

    def __str__(self):
        return f"({self.poly()})"

    __repr__ = __str__


def _unit_inverse(unit):
    c, m = unit
    return _norm(Fraction(1) / Fraction(c)), tuple(-k for k in m)


class RationalExpression:
    """numerator / product of binomial factors (with multiplicities)."""

    __slots__ = ("num", "dens")

    def __init__(self, num, dens=()):
        self.num = num
        # dens: tuple of (BinomialFactor, multiplicity), sorted, canonical
        self.dens = tuple(dens)

    @property
    def ring(self):
        return self.num.ring

    @classmethod
    def build(cls, num, factors):
        """From a numerator and raw binomials (c, mono) in any orientation."""
        counts = {}
        for c, mono in factors:
            f, unit = BinomialFactor.make(num.ring, c, mono)
            if unit[0] != 1 or any(unit[1]):
                ic, im = _unit_inverse(unit)
                num = num.mul_term(ic, im)
            counts[f] = counts.get(f, 0) + 1
        return cls(num, tuple(sorted(counts.items())))

    @classmethod
    def lift(cls, p):
        return p if isinstance(p, RationalExpression) else cls(p, ())

    def den_counts(self):
        return dict(self.dens)

    def den_poly(self):
        out = self.num.ring.one()
        for f, k in self.dens:
            for _ in range(k):
                out = out.mul_binomial(f.c, f.mono)
        return out

    def is_polynomial(self):
        return not self.dens

    def normalize(self):
        num = self.num
        if not num.terms:
            return RationalExpression(num, ())
        left = []
        for f, k in self.dens:
            fp = f.poly()
            while k:
                r = divides(num, fp)
                if r is None:
                    break
                num = r
                k -= 1
            if k:
                left.append((f, k))
        return RationalExpression(num, tuple(left))

    def _over(self, counts):
        """Numerator rewritten over the larger denominator multiset counts."""
        num = self.num
        mine = dict(self.dens)
        for f, k in counts.items():
            for _ in range(k - mine.get(f, 0)):
                num = num.mul_binomial(f.c, f.mono)
        return num

    def __add__(self, other):
        other = _lift_any(self, other)
        counts = dict(self.dens)
        for f, k in other.dens:
            counts[f] = max(counts.get(f, 0), k)
        num = self._over(counts) + other._over(counts)
        return RationalExpression(num, tuple(sorted(counts.items()))).normalize()

    __radd__ = __add__

    def __neg__(self):
        return RationalExpression(-self.num, self.dens)

    def __sub__(self, other):
        return self + (-_lift_any(self, other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _lift_any(self, other)
        counts = dict(self.dens)
        for f, k in other.dens:
            counts[f] = counts.get(f, 0) + k
        return RationalExpression(self.num * other.num, tuple(sorted(counts.items()))).normalize()

    __rmul__ = __mul__

    def div_factors(self, factors):
        """Divide by a product of binomials given as raw (c, mono) pairs."""
        r = RationalExpression.build(self.num, factors)
        counts = dict(self.dens)
        for f, k in r.dens:
            counts[f] = counts.get(f, 0) + k
        return RationalExpression(r.num, tuple(sorted(counts.items()))).normalize()

    def mul_term(self, coeff, mono):
        return RationalExpression(self.num.mul_term(coeff, mono), self.dens)

    def is_zero(self):
        return not self.num.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPolynomial)):
            other = _lift_any(self, other)
        if not isinstance(other, RationalExpression):
            return NotImplemented
        counts = dict(self.dens)
        for f, k in other.dens:
            counts[f] = max(counts.get(f, 0), k)
        return self._over(counts) == other._over(counts)

    def __hash__(self):
        return hash(self.normalize().num)

    def substitute(self, assignment, target=None):
        target = target or self.ring
        num = self.num.substitute(assignment, target)
        factors = []
        for f, k in self.dens:
            img = f.poly().substitute(assignment, target)
            if not img.terms:
                raise DenominatorVanishes(f"{f} vanishes under substitution")
            for _ in range(k):
                if len(img.terms) == 1:
                    (m, c), = img.terms.items()
                    num = num.mul_term(_norm(Fraction(1) / Fraction(c)), tuple(-x for x in m))
                elif len(img.terms) == 2:
                    (m0, c0), (m1, c1) = img.terms.items()
                    num = num.mul_term(_norm(Fraction(1) / Fraction(c0)), tuple(-x for x in m0))
                    factors.append((-Fraction(c1) / Fraction(c0), _sub(m1, m0)))
                else:
                    raise ValueError("substitution leaves a non-binomial denominator")
        return RationalExpression.build(num, factors).normalize()

    def permute_z(self, sigma):
        num = self.num.permute_z(sigma)
        factors = []
        perm = _z_perm(self.ring, tuple(sigma))
        for f, k in self.dens:
            m = [0] * self.ring.size
            for i, e in enumerate(f.mono):
                m[perm[i]] += e
            factors.extend([(f.c, tuple(m))] * k)
        return RationalExpression.build(num, factors)

    def evaluate(self, point, sqrt_h=None, pivot_tol=0.0):
        val = self.num.evaluate(point, sqrt_h)
        for f, k in self.dens:
            d = f.evaluate(point, sqrt_h)
            if abs(d) <= pivot_tol:
                raise DenominatorVanishes(f"{f} below pivot tolerance")
            val = val / d ** k
        return val

    def __str__(self):
        if not self.dens:
            return str(self.num)
        den = "*".join(str(f) + (f"^{k}" if k > 1 else "") for f, k in self.dens)
        num = f"({self.num})" if len(self.num) > 1 else str(self.num)
        return f"{num} / {den}"

    __repr__ = __str__

    def to_string(self):
        """'num / den' with an expanded denominator in canonical term order."""
        return f"({self.num}) / ({self.den_poly()})"


def _lift_any(ref, other):
    if isinstance(other, RationalExpression):
        if other.ring != ref.ring:
            raise ShapeMismatch("operands over different rings")
        return other
    if isinstance(other, LaurentPolynomial):
        if other.ring != ref.ring:
            raise ShapeMismatch("operands over different rings")
        return RationalExpression(other, ())
    if isinstance(other, (int, Fraction)):
        return RationalExpression(ref.ring.const(other), ())
    raise TypeError(f"cannot combine with {type(other).__name__}")


def rational_sum(items, ring):
    """Sum of rational expressions over one common denominator, then normalized."""
    items = [RationalExpression.lift(x) for x in items]
    counts = {}
    for r in items:
        for f, k in r.dens:
            counts[f] = max(counts.get(f, 0), k)
    num = ring.zero()
    for r in items:
        num = num + r._over(counts)
    return RationalExpression(num, tuple(sorted(counts.items()))).normalize()


class ShiftedPolynomial:
    """A Laurent polynomial in z, h times z^shift with a rational shift vector."""

    __slots__ = ("poly", "shift")

    def __init__(self, poly, shift):
        self.poly = poly
        self.shift = tuple(Fraction(s) for s in shift)

    def _align(self, other):
        diff = [a - b for a, b in zip(other.shift, self.shift)]
        if any(d.denominator != 1 for d in diff):
            raise ValueError("shifts differ by a non-integral vector")
        ring = self.poly.ring
        e = [0] * ring.size
        for a, d in enumerate(diff, start=1):
            e[ring.index[z(a)]] = int(d)
        return other.poly.mul_term(1, tuple(e))

    def __add__(self, other):
        return ShiftedPolynomial(self.poly + self._align(other), self.shift)

    def __sub__(self, other):
        return ShiftedPolynomial(self.poly - self._align(other), self.shift)

    def __mul__(self, other):
        if isinstance(other, ShiftedPolynomial):
            return ShiftedPolynomial(self.poly * other.poly, [a + b for a, b in zip(self.shift, other.shift)])
        return ShiftedPolynomial(self.poly * other, self.shift)

    __rmul__ = __mul__

    def times_z_power(self, vec):
        """Multiply by z^vec with a rational exponent vector."""
        return ShiftedPolynomial(self.poly, [a + Fraction(b) for a, b in zip(self.shift, vec)])

    def swap_z(self, a):
        s = list(self.shift)
        s[a - 1], s[a] = s[a], s[a - 1]
        return ShiftedPolynomial(self.poly.swap_z(a), s)

    def is_zero(self):
        return self.poly.is_zero()

    def support(self):
        return {tuple(Fraction(k) + s for k, s in zip(e, self.shift)) for e in self.poly.z_support()}


def complex_value(x):
    return complex(x)


def unit_root(x):
    """Principal square root helper for numeric checks."""
    return cmath.sqrt(x)
