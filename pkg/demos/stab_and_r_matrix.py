"""Stable envelopes of T*P^1 and the R-matrix they produce."""

from fractions import Fraction

from envelope_lab.combinatorics import AlcovePoint, LambdaShape, Permutation, enumerate_indices
from envelope_lab.ktheory import axioms_check, compare_reference_r, geometric_r, gluing_check, stab_matrix, LocalizationClass

shape = LambdaShape((1, 1))
alcove = AlcovePoint([0, Fraction(5, 2)])

# %% the two chambers give two triangular matrices of restrictions
for sigma in (Permutation([1, 2]), Permutation([2, 1])):
    A = stab_matrix(sigma, alcove, shape)
    print(f"sigma = {sigma}")
    for I in A.indices:
        col = A.column(I)
        c = LocalizationClass(shape, col)
        ok = axioms_check(sigma, I, alcove, c)["ok"] and gluing_check(c)["ok"]
        print(f"  Stab_{I}: " + ", ".join(f"|{J} = {col[J]}" for J in A.indices) + f"  axioms ok: {ok}")

# %% R = Stab_{21}^{-1} Stab_{12}
R = geometric_r(Permutation([2, 1]), Permutation([1, 2]), alcove, shape)
for (J, I), v in sorted(R.items(), key=lambda kv: (kv[0][1].word, kv[0][0].word)):
    print(f"R[{J},{I}] = {v}")

# %% the full n = 2 matrix for N = 3 against the closed form
print(compare_reference_r(AlcovePoint([0, Fraction(7, 5), Fraction(-2, 3)]))["ok"])
