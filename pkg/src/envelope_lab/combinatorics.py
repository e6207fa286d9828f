"""Shapes, ordered partitions, permutations and alcove data."""

import itertools
import math
from fractions import Fraction
from functools import lru_cache


class LambdaShape:
    __slots__ = ("lam", "N", "n")

    def __init__(self, lam):
        lam = tuple(int(x) for x in lam)
        if not lam or any(x < 0 for x in lam):
            raise ValueError("shape needs N >= 1 nonnegative parts")
        self.lam = lam
        self.N = len(lam)
        self.n = sum(lam)

    def __eq__(self, other):
        return isinstance(other, LambdaShape) and self.lam == other.lam

    def __hash__(self):
        return hash(self.lam)

    def __repr__(self):
        return f"LambdaShape({list(self.lam)})"

    def cum(self, k):
        """lambda^(k) = lambda_1 + ... + lambda_k."""
        return sum(self.lam[:k])

    @property
    def lam1(self):
        """lambda^{1} = sum of lambda^(k) over k < N."""
        return sum(self.cum(k) for k in range(1, self.N))

    @property
    def dim(self):
        return sum(self.lam[k] * self.lam[l] for k in range(self.N) for l in range(k + 1, self.N))

    @property
    def sym_size(self):
        return math.prod(math.factorial(self.cum(k)) for k in range(1, self.N))

    def count(self):
        out = math.factorial(self.n)
        for x in self.lam:
            out //= math.factorial(x)
        return out


class PartitionIndex:
    """Ordered partition (I_1, ..., I_N) of {1..n}; blocks may be empty."""

    __slots__ = ("blocks", "n", "_word")

    def __init__(self, blocks):
        self.blocks = tuple(tuple(sorted(b)) for b in blocks)
        allv = sorted(x for b in self.blocks for x in b)
        self.n = len(allv)
        if allv != list(range(1, self.n + 1)):
            raise ValueError(f"blocks {blocks} do not partition 1..n")
        word = [0] * self.n
        for k, b in enumerate(self.blocks, start=1):
            for a in b:
                word[a - 1] = k
        self._word = tuple(word)

    @classmethod
    def from_word(cls, word, N):
        blocks = [[] for _ in range(N)]
        for a, k in enumerate(word, start=1):
            blocks[k - 1].append(a)
        return cls(blocks)

    @property
    def N(self):
        return len(self.blocks)

    @property
    def word(self):
        """word[a-1] is the block containing a (1-based)."""
        return self._word

    @property
    def shape(self):
        return LambdaShape(len(b) for b in self.blocks)

    def __eq__(self, other):
        return isinstance(other, PartitionIndex) and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __lt__(self, other):
        return self._word < other._word

    def __repr__(self):
        return "(" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + ")"

    def to_json(self):
        return [list(b) for b in self.blocks]

    def block_of(self, a):
        return self._word[a - 1]

    def cumulative(self, k):
        """Sorted union I_1 u ... u I_k, i.e. (i^(k)_1 < ... )."""
        return tuple(sorted(x for b in self.blocks[:k] for x in b))

    def p(self, j, m):
        """p_{I,j}(m) = |I_j n {1..m-1}|."""
        return sum(1 for x in self.blocks[j - 1] if x < m)

    def j_of(self, k, a):
        """Block containing i^(k)_a."""
        return self.block_of(self.cumulative(k)[a - 1])

    @property
    def ell(self):
        """Pairs a > b with a in I_j, b in I_k, j < k."""
        w = self._word
        return sum(1 for a in range(self.n) for b in range(a) if w[a] < w[b])

    def sigma_I(self):
        """The permutation listing blocks in order, each block sorted."""
        return Permutation([x for b in self.blocks for x in b])

    def ell_sigma(self, sigma):
        """ell_{sigma,I}: pairs a > b with sigma(a) in I_j, sigma(b) in I_k, j < k."""
        w = self._word
        s = sigma.one_line
        return sum(
            1 for a in range(self.n) for b in range(a) if w[s[a] - 1] < w[s[b] - 1]
        )

    def swap(self, i, j):
        """Exchange the numbers i and j."""
        return self.apply(Permutation.transposition(self.n, i, j))

    def apply(self, sigma):
        """sigma(I) = (sigma(I_1), ..., sigma(I_N))."""
        s = sigma.one_line
        return PartitionIndex([[s[a - 1] for a in b] for b in self.blocks])


def enumerate_indices(shape):
    """All partitions of the shape, lexicographic in membership words."""
    return _enumerate(tuple(shape.lam))


@lru_cache(maxsize=None)
def _enumerate(lam):
    N = len(lam)
    base = [k for k in range(1, N + 1) for _ in range(lam[k - 1])]
    words = sorted(set(itertools.permutations(base)))
    return tuple(PartitionIndex.from_word(w, N) for w in words)


def i_max(shape):
    """({n-lam_1+1..n}, ..., {1..lam_N})."""
    n = shape.n
    blocks = []
    hi = n
    for x in shape.lam:
        blocks.append(range(hi - x + 1, hi + 1))
        hi -= x
    return PartitionIndex(blocks)


def leq_sigma(J, I, sigma):
    """J <=_sigma I."""
    inv = sigma.inverse().one_line
    for k in range(1, I.N):
        a = sorted(inv[x - 1] for x in I.cumulative(k))
        b = sorted(inv[x - 1] for x in J.cumulative(k))
        if any(bi > ai for ai, bi in zip(a, b)):
            return False
    return True


class Permutation:
    """Bijection of {1..n} in one-line notation; (s*t)(a) = s(t(a))."""

    __slots__ = ("one_line",)

    def __init__(self, one_line):
        one_line = tuple(int(x) for x in one_line)
        if sorted(one_line) != list(range(1, len(one_line) + 1)):
            raise ValueError(f"{one_line} is not a permutation")
        self.one_line = one_line

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def longest(cls, n):
        return cls(range(n, 0, -1))

    @classmethod
    def transposition(cls, n, i, j):
        s = list(range(1, n + 1))
        s[i - 1], s[j - 1] = s[j - 1], s[i - 1]
        return cls(s)

    @classmethod
    def random(cls, n, rng):
        s = list(range(1, n + 1))
        rng.shuffle(s)
        return cls(s)

    @classmethod
    def parse(cls, text, n):
        text = text.strip()
        if text in ("id", ""):
            return cls.identity(n)
        if text in ("w0", "longest"):
            return cls.longest(n)
        return cls(int(x) for x in text.replace(",", " ").split())

    @property
    def n(self):
        return len(self.one_line)

    def __call__(self, a):
        return self.one_line[a - 1]

    def __mul__(self, other):
        return Permutation(self.one_line[b - 1] for b in other.one_line)

    def inverse(self):
        inv = [0] * self.n
        for a, b in enumerate(self.one_line, start=1):
            inv[b - 1] = a
        return Permutation(inv)

    def length(self):
        s = self.one_line
        return sum(1 for i in range(self.n) for j in range(i + 1, self.n) if s[i] > s[j])

    def is_identity(self):
        return self.one_line == tuple(range(1, self.n + 1))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.one_line == other.one_line

    def __hash__(self):
        return hash(self.one_line)

    def __repr__(self):
        return "".join(map(str, self.one_line)) if self.n < 10 else str(list(self.one_line))

    def to_json(self):
        return list(self.one_line)


def all_permutations(n):
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]


def suite_permutations(n, rng, extra=3):
    """{id, longest} plus `extra` random permutations, deduplicated in order."""
    out = [Permutation.identity(n), Permutation.longest(n)]
    for _ in range(extra):
        out.append(Permutation.random(n, rng))
    seen = []
    for s in out:
        if s not in seen:
            seen.append(s)
    return seen


def compositions(n, N):
    """All lambda in Z_{>=0}^N with |lambda| = n."""
    if N == 1:
        return [(n,)]
    return [(k,) + rest for k in range(n, -1, -1) for rest in compositions(n - k, N - 1)]


def shapes_up_to(max_n, max_N, min_n=1):
    out = []
    for N in range(1, max_N + 1):
        for n in range(min_n, max_n + 1):
            out.extend(LambdaShape(lam) for lam in compositions(n, N))
    return out


class IntegerDifference(ValueError):
    pass


class AlcovePoint:
    """A rational point nu with non-integral pairwise differences."""

    __slots__ = ("nu", "N", "_m", "_eps")

    def __init__(self, nu):
        self.nu = tuple(Fraction(x) for x in nu)
        self.N = len(self.nu)
        self._m = {}
        self._eps = {}
        for i in range(1, self.N + 1):
            for j in range(i + 1, self.N + 1):
                d = self.nu[j - 1] - self.nu[i - 1]
                if d.denominator == 1:
                    raise IntegerDifference(f"nu_{j} - nu_{i} = {d} is an integer")
                m = math.floor(d)
                self._m[i, j] = m
                self._eps[i, j] = d - m

    @classmethod
    def parse(cls, text):
        return cls(Fraction(x.strip()) for x in text.split(","))

    def m(self, i, j):
        """m_{i,j} = floor(nu_j - nu_i), i < j."""
        return self._m[i, j]

    def eps(self, i, j):
        return self._eps[i, j]

    def m_table(self):
        return tuple(sorted(self._m.items()))

    @property
    def anti_dominant(self):
        return all(v == 0 for v in self._m.values())

    def __eq__(self, other):
        return isinstance(other, AlcovePoint) and self.nu == other.nu

    def __hash__(self):
        return hash(self.nu)

    def __repr__(self):
        return "nu=(" + ",".join(map(str, self.nu)) + ")"

    def to_json(self):
        return [str(x) for x in self.nu]


def alcove_from_nu(nu):
    return AlcovePoint(nu)


def anti_dominant(N):
    """A point of the anti-dominant alcove."""
    return AlcovePoint([Fraction(k, N + 1) for k in range(N)])


def sample_alcove(N, rng, m_range=(-2, 2), max_den=64):
    """Seeded rational point with all m_{i,j} in m_range."""
    lo, hi = m_range
    while True:
        nu = [Fraction(0)]
        for _ in range(N - 1):
            den = rng.randint(2, max_den)
            nu.append(Fraction(rng.randint(-2 * den, 2 * den), den))
        try:
            a = AlcovePoint(nu)
        except IntegerDifference:
            continue
        if all(lo <= v <= hi for v in a._m.values()):
            return a
