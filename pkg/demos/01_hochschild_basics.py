"""Hochschild cohomology of a single algebra, and first-order deformations.

Walks through the dual numbers Q[x]/(x^2): the cohomology table, what the
degree-two classes mean, and the exact equivalence between "m1 is a
normalized cocycle" and "(A[eps], m + m1 eps) is an associative unital
algebra".
"""

from fractions import Fraction as F

from gscohom import presets
from gscohom.linalg import RatMatrix
from gscohom.hochschild import (hh_algebra, regular_bimodule, HCochain,
                                d_hoch, is_normalized, is_algebra_deformation,
                                deformation_cocycle_check)

dn = presets.dual_numbers()
bim = regular_bimodule(dn)

print("== Hochschild cohomology of Q[x]/(x^2), coefficients in itself")
for n in range(5):
    betti_full, _ = hh_algebra(dn, bim, n)
    betti_norm, _ = hh_algebra(dn, bim, n, normalized=True)
    print("  HH^%d: dim %d (full) = %d (normalized)" %
          (n, betti_full, betti_norm))

print()
print("== degree-zero differential is the commutator map")
x = HCochain(dn, bim, 0, RatMatrix.from_cols([(F(0), F(1))]))
print("  d(x) = 0 since the algebra is commutative:", d_hoch(x).is_zero())

print()
print("== the multiplication is a 2-cocycle (associativity) ...")
m = HCochain(dn, bim, 2, dn.mult_matrix())
print("  d(m) = 0:", d_hoch(m).is_zero())
print("  ... but not normalized (m(1, a) = a):", not is_normalized(m))

print()
print("== a representative 2-class deforms the algebra")
_, reps = hh_algebra(dn, bim, 2, normalized=True)
m1 = reps[0].matrix
print("  representative m1 as a matrix (columns = tensor words):")
for row in m1.to_rows():
    print("   ", [str(v) for v in row])
print("  axiom check over Q[eps]:", is_algebra_deformation(dn, m1))
print("  cochain check (normalized cocycle):",
      deformation_cocycle_check(dn, m1))

print()
print("== a broken candidate fails both checks the same way")
bad = RatMatrix(2, 4, {(1, 0): F(1)})   # m1(1, 1) = x violates the unit
print("  axiom check:", is_algebra_deformation(dn, bad))
print("  cochain check:", deformation_cocycle_check(dn, bad))
