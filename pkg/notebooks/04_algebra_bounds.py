"""
Dimensions of commutative algebras
==================================

The unital algebra generated by ``l`` commuting matrices in M_n(Q) has
dimension at most ``(l+1) n^(2 - 2/(l+1))``.  The check is done exactly as
``dim^(l+1) <= (l+1)^(l+1) n^(2l)``.  Schur's corner construction and
Kronecker shifts show how close structured families come.
"""

from admissibility import (
    generated_algebra_basis,
    kronecker_shift_family,
    optimal_split,
    random_commuting_family,
    schur_family,
    verify_commuting_algebra_bound,
)

for k in (1, 2, 3):
    fam = schur_family(k)
    r = verify_commuting_algebra_bound(fam)
    print(f"schur k={k}: n={fam.n}, l={fam.l}, dim={r.quantity}, ratio {r.approx['ratio']}")

fam = kronecker_shift_family(2, 3)
print("kron m=2 l=3: dim", generated_algebra_basis(fam).dim)

fam, spec = random_commuting_family(5, 2, rng_seed=7)
r = verify_commuting_algebra_bound(fam)
print("random", spec.construction, "dim", r.quantity, "holds", r.holds)

# Integer minimum of l n^2 / x + x^l, the split behind the bound.
s = optimal_split(8, 3)
print(f"n=8, l=3: x* = {s.x_star}, f = {s.f_at_x_star}, x0 ~ {s.x0_display}")
