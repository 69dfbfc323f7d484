"""Nilpotency, Jordan types and joint generalized eigenspaces.

Jordan types come from the rank sequence ``r_t = rank(A^t)``: the number of
Jordan blocks of size at least ``t`` is ``r_{t-1} - r_t``.  No similarity
transform is ever computed.

Eigenvalues are found exactly as rational roots of the characteristic
polynomial.  Matrices whose spectrum is not rational are rejected with
:class:`NotSplitOverRationals`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Iterator

from .errors import NotNilpotent, NotSplitOverRationals
from .exact_core import CommutingFamily, EchelonSpan, Matrix, kernel_basis, rref


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts; the Jordan type of a nilpotent matrix."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise ValueError("a partition needs at least one part")
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts):
        """Sort arbitrary positive parts into a partition."""
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def n(self):
        return sum(self.parts)

    @property
    def largest(self):
        return self.parts[0]

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def to_json(self):
        return list(self.parts)


def partitions(n: int) -> Iterator[Partition]:
    """All partitions of ``n`` in reverse lexicographic order, ``[n]`` first."""
    if n < 1:
        return

    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    for parts in rec(n, n):
        yield Partition(parts)


def matrix_rank(A: Matrix) -> int:
    num, _ = A.integer_rows()
    span = EchelonSpan(A.n)
    for row in num:
        span.add(row)
    return span.dim


def is_nilpotent(A: Matrix) -> bool:
    P = A
    for _ in range(A.n):
        if P.is_zero():
            return True
        P = P @ A
    return P.is_zero()


def rank_sequence(A: Matrix):
    """``[rank(A^0), rank(A^1), ...]`` up to the first zero (or A^n)."""
    ranks = [A.n]
    P = Matrix.identity(A.n)
    for _ in range(A.n):
        P = P @ A
        ranks.append(matrix_rank(P))
        if ranks[-1] == 0 or ranks[-1] == ranks[-2]:
            break
    return ranks


def jordan_type(A: Matrix) -> Partition:
    ranks = rank_sequence(A)
    if ranks[-1] != 0:
        raise NotNilpotent(matrix=A)
    at_least = [ranks[t - 1] - ranks[t] for t in range(1, len(ranks))] + [0]
    parts = []
    for size in range(len(at_least) - 1, 0, -1):
        parts += [size] * (at_least[size - 1] - at_least[size])
    return Partition(tuple(parts))


def jordan_block(size: int) -> Matrix:
    return Matrix._raw([[int(j == i + 1) for j in range(size)] for i in range(size)])


def jordan_matrix(p) -> Matrix:
    """``diag(J_{p_1}, ..., J_{p_k})`` with ones on the superdiagonal of each block."""
    parts = tuple(p.parts if isinstance(p, Partition) else p)
    n = sum(parts)
    rows = [[0] * n for _ in range(n)]
    start = 0
    for size in parts:
        for i in range(start, start + size - 1):
            rows[i][i + 1] = 1
        start += size
    return Matrix._raw(rows)


# ---------------------------------------------------------------------------
# Characteristic polynomials and rational roots

def charpoly(A: Matrix):
    """Coefficients ``[c_0, ..., c_n]`` (ascending, monic) of det(xI - A).

    Faddeev-LeVerrier recursion over the rationals.
    """
    n = A.n
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    M = Matrix.zero(n)
    I = Matrix.identity(n)
    for k in range(1, n + 1):
        M = A @ M + I.scale(coeffs[n - k + 1])
        AM = A @ M
        trace = sum(AM[i, i] for i in range(n))
        coeffs[n - k] = -trace / k
    return coeffs


def _divisors(m: int):
    m = abs(m)
    small, large = [], []
    for d in range(1, isqrt(m) + 1):
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
    return small + large[::-1]


def _evaluate(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs, r):
    """Divide by (x - r); the caller guarantees r is a root."""
    n = len(coeffs) - 1
    out = [Fraction(0)] * n
    carry = Fraction(0)
    for k in range(n, 0, -1):
        carry = coeffs[k] + carry * r
        out[k - 1] = carry
    return out


def rational_roots(coeffs):
    """Rational roots with multiplicity, ascending, plus the leftover factor.

    ``coeffs`` is ascending.  Returns ``(roots, rest)`` where ``roots`` is a
    list of ``(root, multiplicity)`` and ``rest`` the coefficients of the
    factor with no rational root (``[c]`` when the polynomial split).
    """
    coeffs = [Fraction(c) for c in coeffs]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    roots = []
    zero_mult = 0
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs = coeffs[1:]
        zero_mult += 1
    if zero_mult:
        roots.append((Fraction(0), zero_mult))
    if len(coeffs) > 1:
        d = lcm(*(c.denominator for c in coeffs))
        ints = [int(c * d) for c in coeffs]
        candidates = set()
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                candidates.add(Fraction(p, q))
                candidates.add(Fraction(-p, q))
        for r in sorted(candidates):
            mult = 0
            while len(coeffs) > 1 and _evaluate(coeffs, r) == 0:
                coeffs = _deflate(coeffs, r)
                mult += 1
            if mult:
                roots.append((r, mult))
    roots.sort()
    return roots, coeffs


def rational_eigenvalues(A: Matrix, generator=None):
    """``[(eigenvalue, algebraic multiplicity), ...]``; raises if not split."""
    roots, rest = rational_roots(charpoly(A))
    if len(rest) > 1:
        raise NotSplitOverRationals(
            f"characteristic polynomial of generator {generator} has an irreducible factor of degree {len(rest) - 1}",
            generator=generator,
        )
    return roots


# ---------------------------------------------------------------------------
# Joint decomposition of a commuting family

@dataclass(frozen=True)
class JointBlock:
    """An invariant subspace on which each generator has a single eigenvalue."""

    basis: tuple
    eigenvalues: tuple

    @property
    def dim(self):
        return len(self.basis)


def _apply(A: Matrix, v):
    return [sum((a * x for a, x in zip(row, v) if a and x), Fraction(0)) for row in A.rows]


def restrict(A: Matrix, basis) -> Matrix:
    """Matrix of ``A`` on the invariant subspace spanned by ``basis``.

    Column ``j`` holds the coordinates of ``A b_j`` in the basis.  Raises
    ValueError if the span is not invariant.
    """
    basis = [list(b) for b in basis]
    k = len(basis)
    images = [_apply(A, b) for b in basis]
    n = A.n
    aug = [[basis[j][i] for j in range(k)] + [images[j][i] for j in range(k)] for i in range(n)]
    R, r, pivots = rref(aug)
    if pivots != list(range(k)):
        raise ValueError("subspace is not invariant under the matrix")
    return Matrix([[R[i][k + j] for j in range(k)] for i in range(k)])


def joint_spectral_decomposition(family: CommutingFamily):
    """Split Q^n into joint generalized eigenspaces of a commuting family.

    Generators refine the blocks one at a time, in input order.
    """
    family = family.require_verified()
    n = family.n
    blocks = [([[Fraction(int(i == j)) for j in range(n)] for i in range(n)], ())]
    for idx, A in enumerate(family.generators):
        refined = []
        for basis, eigs in blocks:
            R = restrict(A, basis)
            k = R.n
            for lam, mult in rational_eigenvalues(R, generator=idx):
                kernel = kernel_basis((R.shift(lam) ** k).rows)
                assert kernel.dim == mult
                sub = [
                    [sum((c * b[i] for c, b in zip(coords, basis) if c), Fraction(0)) for i in range(n)]
                    for coords in kernel.basis
                ]
                refined.append((sub, eigs + (lam,)))
        blocks = refined
    return [JointBlock(tuple(tuple(v) for v in basis), eigs) for basis, eigs in blocks]


def nilpotent_reduction(family: CommutingFamily):
    """One nilpotent family per joint block: generators restricted, eigenvalue subtracted."""
    family = family.require_verified()
    out = []
    for block in joint_spectral_decomposition(family):
        gens = [restrict(A, block.basis).shift(lam) for A, lam in zip(family.generators, block.eigenvalues)]
        out.append(CommutingFamily.from_matrices(gens, block.dim))
    return out
