"""
Commutants and shifted commutants
=================================

For nilpotent ``A`` of type ``(l_1, ..., l_k)`` the commutant
``{B : AB = BA}`` has dimension ``sum min(l_i, l_j)``.  Multiplying it by
``A^m`` leaves ``sum max(0, min(l_i, l_j) - m)`` dimensions, and
``m * dim span{A^m B}`` never exceeds ``n^2``.
"""

from admissibility import (
    commutant_basis,
    commutant_dimension_formula,
    jordan_matrix,
    partitions,
    shifted_commutant_dimension,
    verify_shifted_commutant_bound,
)

n = 6
worst = None
for p in partitions(n):
    A = jordan_matrix(p)
    C = commutant_basis(A)
    assert C.dim == commutant_dimension_formula(p)
    for m in range(1, n + 1):
        d = shifted_commutant_dimension(A, m, commutant=C)
        if worst is None or m * d > worst[0]:
            worst = (m * d, p.parts, m)
print(f"largest m * dim over n = {n}: {worst[0]} (type {worst[1]}, m = {worst[2]}), n^2 = {n * n}")

report = verify_shifted_commutant_bound(jordan_matrix(next(partitions(n))), 2)
print(report.to_json())
