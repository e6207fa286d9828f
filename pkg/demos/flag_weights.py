"""Trigonometric weight functions for lambda = (1,2), their restrictions and Newton polytopes."""

from fractions import Fraction

from envelope_lab.combinatorics import AlcovePoint, LambdaShape, enumerate_indices
from envelope_lab.polytopes import O, polytope_subset
from envelope_lab.trig import trig_weight_symbolic, weight_at

shape = LambdaShape((1, 2))
idx = enumerate_indices(shape)

# %% one weight per index; the alcove only enters through m_{1,2}
for m in (-1, 0, 2):
    alcove = AlcovePoint([0, Fraction(m) + Fraction(1, 3)])
    print(f"m_12 = {m}")
    for I in idx:
        W, _ = trig_weight_symbolic(I, alcove)
        print(f"  W_{I} = {W}")

# %% restrictions to fixed points t = z_J are triangular
alcove = AlcovePoint([0, Fraction(4, 3)])
for I in idx:
    row = [str(weight_at(I, J, alcove)) for J in idx]
    print(I, row)

# %% Newton polytopes O(I,J) sit inside O(J,J)
for J in idx:
    for I in idx:
        A = O(I, J, alcove)
        if A.is_empty():
            continue
        ok, _ = polytope_subset(A, O(J, J, alcove))
        print(f"O({I},{J}) = {A}  inside O(J,J): {ok}")
