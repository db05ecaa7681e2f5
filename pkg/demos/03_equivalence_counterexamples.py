#!/usr/bin/env python3
"""Two counterexample pairs: curvature spectra alone cannot tell bundles apart.

Pair A (rank 2): a reducible direct sum of two line bundles against an
irreducible rank-2 jet bundle with the same curvature eigenvalues at every
point; the order-(0,1) derivative at 0 separates them (zero vs nonzero).

Pair B (rank 3): a line bundle plus rank-2 jet against a rank-3 jet with
beta' = (3/2) beta + 2.  Curvatures *and* (0,1) derivatives match under the
diagonal ratio intertwiner; only the order-(1,1) derivative separates them.

Both verdicts extend from 0 to the whole disc because every kernel in the
zoo is Mobius-homogeneous.
"""

import numpy as np

from cdbundle import (
    BergmanPower,
    DirectSum,
    Homogeneous,
    Jet,
    Permuted,
    full_report,
    invariants_at_zero,
    kernel_taylor,
    simultaneous_pair_equiv,
    zzbar_distinguishes,
)

np.set_printoptions(precision=6, suppress=True)

print("=" * 70)
print("Pair A: direct sum (lambda=1, mu=5) vs rank-2 jet (alpha=1, beta=1)")
print("=" * 70)
a1 = DirectSum([BergmanPower(1.0), BergmanPower(5.0)])
a2 = Jet(alpha=1.0, beta=1.0, k=1)
inv1 = invariants_at_zero(kernel_taylor(a1, 4))
inv2 = invariants_at_zero(kernel_taylor(a2, 4))
print("curvature diagonals:", np.diag(inv1.curvature).real, np.diag(inv2.curvature).real)
print("(0,1) derivative norms:", np.abs(inv1.d_zbar).max(), np.abs(inv2.d_zbar).max())
rep = full_report(a1, a2)
print("verdict:", rep.verdict.value)
print("certificate:", rep.certificate["level"], "-", rep.certificate["reason"])

print()
print("=" * 70)
print("Pair B: line+jet (beta'=5) vs rank-3 jet (beta=2), shared alpha=1")
print("=" * 70)
b1 = DirectSum([BergmanPower(1.0), Jet(alpha=1.0, beta=5.0, k=1)])
b2 = Jet(alpha=1.0, beta=2.0, k=2)
inv1 = invariants_at_zero(kernel_taylor(b1, 4))
inv2 = invariants_at_zero(kernel_taylor(b2, 4))
print("curvature diagonals:", np.diag(inv1.curvature).real, np.diag(inv2.curvature).real)
print("(0,1) entries:", inv1.d_zbar[1, 2], inv2.d_zbar[1, 2])
print("modulus ratio:", abs(inv1.d_zbar[1, 2] / inv2.d_zbar[1, 2]),
      "= sqrt(5/6) =", np.sqrt(5 / 6))

pair = simultaneous_pair_equiv(inv1, inv2)
print("pair decision at (curvature, (0,1)):", pair.verdict.value)
print("  ", pair.certificate["reason"])
print("(1,1) diagonals:", np.diag(inv1.d_zzbar).real, np.diag(inv2.d_zzbar).real)
print("(1,1) level distinguishes:", zzbar_distinguishes(inv1, inv2, maps=pair.surviving_maps))
rep = full_report(b1, b2)
print("full verdict:", rep.verdict.value, "at level", rep.certificate["level"])

print()
print("=" * 70)
print("Sanity: a frame-permuted copy stays fully equivalent")
print("=" * 70)
hom = Homogeneous(lam=1.8, mu=(1.0, 1.2, 0.7), m=2)
rep = full_report(hom, Permuted(inner=hom, sigma=(3, 1, 2)))
print("verdict:", rep.verdict.value, "| witness claims:", rep.witness_claims)
for note in rep.annotations:
    print("note:", note)
