"""Commutants and the dimension of ``A^m`` times the commutant.

The commutant of ``A`` is the kernel of ``B -> AB - BA``.  Under row-major
vectorization that operator is the ``n^2 x n^2`` matrix
``A kron I - I kron A^T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotNilpotent
from .exact_core import DEFAULT_SIZE_CAP, EchelonSpan, Matrix, check_size, devectorize, kernel_basis
from .report import BoundReport, decimal_string
from .spectral import Partition, is_nilpotent, jordan_matrix, jordan_type


@dataclass(frozen=True)
class CommutantBasis:
    of: Matrix
    basis: tuple
    dim: int


def commutation_operator(A: Matrix, size_cap=DEFAULT_SIZE_CAP):
    """Rows of the n^2 x n^2 matrix of ``B -> AB - BA`` (row-major vec)."""
    check_size(A.n, size_cap)
    n = A.n
    I = Matrix.identity(n)
    K = A.kron(I) - I.kron(A.transpose())
    return K.rows


def commutant_basis(A: Matrix, size_cap=DEFAULT_SIZE_CAP) -> CommutantBasis:
    kernel = kernel_basis(commutation_operator(A, size_cap))
    basis = tuple(devectorize(v, A.n) for v in kernel.basis)
    return CommutantBasis(A, basis, len(basis))


def commutant_dimension_formula(p) -> int:
    """``sum over ordered pairs of parts of min(p_i, p_j)``."""
    parts = tuple(p)
    return sum(min(a, b) for a in parts for b in parts)


def shifted_commutant_dimension(A: Matrix, m: int, commutant=None, size_cap=DEFAULT_SIZE_CAP) -> int:
    """Dimension of ``span{A^m B : AB = BA}`` for nilpotent ``A``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if not is_nilpotent(A):
        raise NotNilpotent(matrix=A)
    if commutant is None:
        commutant = commutant_basis(A, size_cap)
    Am = A ** m
    if Am.is_zero():
        return 0
    span = EchelonSpan(A.n * A.n)
    for B in commutant.basis:
        span.add(Am @ B)
    return span.dim


def shifted_commutant_dimensions(A: Matrix, size_cap=DEFAULT_SIZE_CAP):
    """``{m: shifted_commutant_dimension(A, m)}`` for m = 1..n, sharing one commutant.

    Uses ``A^{m+1} B = A (A^m B)`` to step the images.
    """
    if not is_nilpotent(A):
        raise NotNilpotent(matrix=A)
    images = list(commutant_basis(A, size_cap).basis)
    out = {}
    for m in range(1, A.n + 1):
        images = [A @ B for B in images]
        images = [B for B in images if not B.is_zero()]
        span = EchelonSpan(A.n * A.n)
        for B in images:
            span.add(B)
        out[m] = span.dim
    return out


def shifted_dimension_by_blocks(p, m: int) -> int:
    """Closed form ``sum over ordered pairs of max(0, min(l_i, l_j) - m)``.

    Each block ``C_ij`` of a commuting matrix is Toeplitz with min(l_i, l_j)
    free parameters, and ``J^m`` drops exactly m of them.
    """
    parts = tuple(p)
    return sum(max(0, min(a, b) - m) for a in parts for b in parts)


def jordan_lemma_certificate(p, m: int) -> int:
    """``sum of min(l_i, l_j)`` over ordered pairs with ``max(l_i, l_j) >= m``."""
    parts = tuple(p)
    return sum(min(a, b) for a in parts for b in parts if max(a, b) >= m)


def verify_shifted_commutant_bound(p, m: int, dim=None) -> BoundReport:
    """Check ``m * dim span{A^m B : AB = BA} <= n^2`` for ``A = jordan_matrix(p)``.

    ``p`` may also be a nilpotent Matrix; it is first reduced to its Jordan type.
    """
    if isinstance(p, Matrix):
        p = jordan_type(p)
    p = p if isinstance(p, Partition) else Partition(tuple(p))
    if m < 1:
        raise ValueError("m must be at least 1")
    n = p.n
    if dim is None:
        dim = shifted_commutant_dimension(jordan_matrix(p), m)
    certificate = jordan_lemma_certificate(p, m)
    return BoundReport.compare(
        dim,
        "m * dim <= n^2",
        m * dim,
        n * n,
        approx={"dim": str(dim), "bound": decimal_string(Fraction(n * n, m))},
        details={
            "partition": p.to_json(),
            "m": m,
            "bound_numerator": n * n,
            "bound_denominator": m,
            "certificate": certificate,
        },
    )

