"""Theta function, elliptic weight functions and the q -> 0 limit."""

import random
from fractions import Fraction

from envelope_lab.combinatorics import AlcovePoint, LambdaShape, enumerate_indices
from envelope_lab.elliptic import (
    exchange_residual,
    q_limit_sequence,
    random_point,
    random_t,
    transformation_residuals,
)
from envelope_lab.theta import EllipticContext, functional_equation_residuals

ctx = EllipticContext(complex(0.1, 0.9))
rng = random.Random(0)

# %% quasi-periodicity of theta
u = complex(0.23, 0.05)
print({k: f"{v:.1e}" for k, v in functional_equation_residuals(ctx, u).items()})

# %% exchange relation for lambda = (1,2)
shape = LambdaShape((1, 2))
for I in enumerate_indices(shape):
    p, t = random_point(shape, rng), random_t(shape, rng)
    print(I, [f"{exchange_residual(ctx, I, i, t, p):.1e}" for i in (1, 2)])

# %% transformation under q-shifts: the h shift needs theta(h)^{k_I}
for I in enumerate_indices(shape):
    p, t = random_point(shape, rng), random_t(shape, rng)
    lit = transformation_residuals(ctx, I, t, p, variant="literal")["h"]
    cor = transformation_residuals(ctx, I, t, p, variant="corrected")["h"]
    print(f"{I}: literal {lit:.1e}  corrected {cor:.1e}")

# %% Delta(q) for q = 1e-2 .. 1e-6 at eps = 1/2
shape = LambdaShape((1, 1))
alcove = AlcovePoint([0, Fraction(1, 2)])
for I in enumerate_indices(shape):
    seq = q_limit_sequence(I, alcove, random_t(shape, rng, 0.05), random_point(shape, rng, 0.05))
    print(I, [f"{d:.1e}" for d in seq])
