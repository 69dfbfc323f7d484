"""
Jordan types of nilpotent matrices
==================================

The Jordan type of a nilpotent ``A`` is read off the rank sequence
``rank A^k``: the number of blocks of size at least ``k`` is
``rank A^(k-1) - rank A^k``.  Conjugating by an integer matrix changes the
entries but not the type.
"""

from admissibility import Matrix, Partition, jordan_matrix, jordan_type, partitions
from admissibility.exact_core import inverse

J = jordan_matrix(Partition.of([3, 2, 1]))
print(J)
print("type:", jordan_type(J).parts)

S = Matrix([[1, 1, 0, 0, 0, 0],
            [0, 1, 2, 0, 0, 0],
            [0, 0, 1, 0, 0, 1],
            [0, 0, 0, 1, 0, 0],
            [1, 0, 0, 0, 1, 0],
            [0, 0, 0, 0, 0, 1]])

B = S @ J @ inverse(S)
print("conjugate has type", jordan_type(B).parts)

# Partitions are produced in reverse lexicographic order.
print([p.parts for p in partitions(4)])
