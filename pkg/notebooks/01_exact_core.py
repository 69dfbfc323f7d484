"""
Exact matrices over Q
=====================

Everything in the package runs on ``Matrix``, a square matrix of
``fractions.Fraction`` entries stored as one integer grid over a common
denominator.  No floating point is involved at any stage.
"""

from fractions import Fraction

from admissibility import Matrix, kernel_basis, rref, span_dimension, vectorize

# Entries may be ints, Fractions or "p/q" strings.
A = Matrix([[1, "1/2"], [0, Fraction(2, 3)]])
print(A)
print("A @ A =", A @ A)

# Row reduction returns the reduced echelon form, the rank and the pivots.
R, r, pivots = rref(Matrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]]))
print("rank", r, "pivots", pivots)

# Matrices are flattened row-major when treated as vectors of length n^2.
print("vec(A) =", [str(x) for x in vectorize(A)])

# Dimension of a span of matrices, and a kernel.
I = Matrix.identity(2)
print("dim span{I, A, A^2} =", span_dimension([I, A, A @ A]))
print("kernel of [[1, 1], [1, 1]]:", kernel_basis(Matrix([[1, 1], [1, 1]])))
