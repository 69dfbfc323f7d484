"""Exact rational matrices, row reduction, kernels and spans.

Scalars are :class:`fractions.Fraction`.  A :class:`Matrix` is stored as an
integer numerator grid over one common positive denominator, kept in lowest
terms, so products and sums run on Python ints.

Vectorization is row-major throughout: entry ``(i, j)`` of an ``n x n``
matrix lands at index ``i * n + j``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch, MatrixFormatError, NotCommuting, SizeCapExceeded

DEFAULT_SIZE_CAP = 32


def check_size(n, size_cap=DEFAULT_SIZE_CAP):
    if size_cap is not None and n > size_cap:
        raise SizeCapExceeded(n, size_cap)


def to_rational(value, field=None) -> Fraction:
    """Parse an int, a Fraction, or a string ``"p"`` / ``"p/q"`` with q > 0."""
    if isinstance(value, bool):
        raise MatrixFormatError(f"boolean is not a rational: {value!r}", field)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            p = int(num)
            q = int(den) if sep else 1
        except ValueError:
            raise MatrixFormatError(f"malformed fraction {value!r}", field) from None
        if sep and not den.strip().isdigit():
            raise MatrixFormatError(f"malformed fraction {value!r}", field)
        if q <= 0:
            raise MatrixFormatError(f"denominator must be positive in {value!r}", field)
        return Fraction(p, q)
    raise MatrixFormatError(f"expected integer or 'p/q' string, got {value!r}", field)


def format_rational(x: Fraction):
    """JSON form of a rational: a plain int when integral, else ``"p/q"``."""
    x = Fraction(x)
    if x.denominator == 1:
        return x.numerator
    return f"{x.numerator}/{x.denominator}"


class Matrix:
    """Immutable dense square matrix with exact rational entries."""

    __slots__ = ("n", "_num", "_den", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = [[Fraction(x) for x in row] for row in rows]
        n = len(rows)
        if n == 0:
            raise DimensionMismatch("matrix must have at least one row")
        if any(len(row) != n for row in rows):
            raise DimensionMismatch("matrix must be square")
        den = lcm(*(x.denominator for row in rows for x in row))
        num = tuple(tuple(x.numerator * (den // x.denominator) for x in row) for row in rows)
        self._set(n, num, den)

    def _set(self, n, num, den):
        g = gcd(den, *(x for row in num for x in row))
        if g > 1:
            num = tuple(tuple(x // g for x in row) for row in num)
            den //= g
        self.n = n
        self._num = num
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, num, den=1):
        m = cls.__new__(cls)
        m._set(len(num), tuple(tuple(row) for row in num), den)
        return m

    @classmethod
    def identity(cls, n):
        return cls._raw([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n):
        return cls._raw([[0] * n for _ in range(n)])

    @classmethod
    def diag(cls, values):
        values = [Fraction(v) for v in values]
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n, i, j):
        """The matrix unit with a single 1 at ``(i, j)``."""
        rows = [[0] * n for _ in range(n)]
        rows[i][j] = 1
        return cls._raw(rows)

    # -- access -----------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return Fraction(self._num[i][j], self._den)

    @property
    def rows(self):
        d = self._den
        return tuple(tuple(Fraction(x, d) for x in row) for row in self._num)

    def integer_rows(self):
        """``(numerators, denominator)`` with every entry equal to num / den."""
        return self._num, self._den

    def is_integral(self):
        return self._den == 1

    def is_zero(self):
        return not any(x for row in self._num for x in row)

    def tolist(self):
        return [list(row) for row in self.rows]

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatch(f"size mismatch: {self.n} vs {other.n}")
        return None

    def _combine(self, other, sign):
        if self._check(other) is NotImplemented:
            return NotImplemented
        d = lcm(self._den, other._den)
        a, b = d // self._den, d // other._den
        num = [[a * x + sign * b * y for x, y in zip(r, s)] for r, s in zip(self._num, other._num)]
        return Matrix._raw(num, d)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Matrix._raw([[-x for x in row] for row in self._num], self._den)

    def scale(self, c):
        c = Fraction(c)
        return Matrix._raw([[x * c.numerator for x in row] for row in self._num], self._den * c.denominator)

    def __mul__(self, c):
        if isinstance(c, Matrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        n = self.n
        right = other._num
        out = []
        for row in self._num:
            acc = [0] * n
            for k, a in enumerate(row):
                if a:
                    for j, b in enumerate(right[k]):
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return Matrix._raw(out, self._den * other._den)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("matrix power needs a non-negative integer exponent")
        result = Matrix.identity(self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def shift(self, c):
        """``self - c * I``."""
        return self - Matrix.identity(self.n).scale(c)

    def transpose(self):
        return Matrix._raw([list(col) for col in zip(*self._num)], self._den)

    def kron(self, other):
        """Kronecker product; ``(A kron B)[(i,k),(j,l)] = A[i,j] B[k,l]``."""
        rows = []
        for ra in self._num:
            for rb in other._num:
                rows.append([a * b for a in ra for b in rb])
        return Matrix._raw(rows, self._den * other._den)

    def commutes_with(self, other):
        return self @ other == other @ self

    # -- comparison -------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.n == other.n and self._den == other._den and self._num == other._num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._num, self._den))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.rows)
        return f"Matrix([{body}])"

    # -- serialization ------------------------------------------------------------
    def to_json(self):
        return {"n": self.n, "entries": [[format_rational(x) for x in row] for row in self.rows]}

    @classmethod
    def from_json(cls, obj, field="matrix"):
        return matrix_from_json(obj, field)


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(b.n for b in blocks)
    rows = [[Fraction(0)] * n for _ in range(n)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b.rows):
            rows[offset + i][offset:offset + b.n] = row
        offset += b.n
    return Matrix(rows)


def matrix_from_json(obj, field="matrix") -> Matrix:
    if not isinstance(obj, dict):
        raise MatrixFormatError("matrix must be a JSON object", field)
    for key in ("n", "entries"):
        if key not in obj:
            raise MatrixFormatError(f"missing key {key!r}", f"{field}.{key}")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MatrixFormatError("n must be a positive integer", f"{field}.n")
    entries = obj["entries"]
    if not isinstance(entries, list) or len(entries) != n:
        raise MatrixFormatError(f"entries must be a list of {n} rows", f"{field}.entries")
    rows = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != n:
            raise MatrixFormatError(f"row must have {n} entries (non-square array)", f"{field}.entries[{i}]")
        rows.append([to_rational(x, f"{field}.entries[{i}][{j}]") for j, x in enumerate(row)])
    return Matrix(rows)


def loads_json(text, source="<input>"):
    """``json.loads`` that reports the failing line as a MatrixFormatError."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON in {source}: {exc.msg}", line=exc.lineno) from None


def load_matrix(path) -> Matrix:
    with open(path) as fh:
        return matrix_from_json(loads_json(fh.read(), str(path)))


# ---------------------------------------------------------------------------
# Row reduction

def rref(M):
    """Reduced row echelon form of a rectangular rational matrix (or a Matrix).

    Returns ``(R, rank, pivots)``.  ``R`` keeps the input shape with zero rows
    at the bottom.
    """
    if isinstance(M, Matrix):
        M = M.rows
    R = [[Fraction(x) for x in row] for row in M]
    if not R or not R[0]:
        raise DimensionMismatch("rref needs a nonempty matrix")
    n_rows, n_cols = len(R), len(R[0])
    if any(len(row) != n_cols for row in R):
        raise DimensionMismatch("ragged matrix")
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if R[i][c]), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c]
        prow = [x * inv for x in R[r]]
        R[r] = prow
        support = [j for j in range(c, n_cols) if prow[j]]
        for i in range(n_rows):
            if i != r:
                f = R[i][c]
                if f:
                    row = R[i]
                    for j in support:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return R, r, pivots


def rank(M) -> int:
    span = EchelonSpan(len(M[0]))
    for row in M:
        span.add(row)
    return span.dim


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim held by its RREF basis (canonical)."""

    ambient_dim: int
    basis: tuple

    @classmethod
    def from_vectors(cls, vectors, ambient_dim):
        vectors = [list(v) for v in vectors]
        if not vectors:
            return cls(ambient_dim, ())
        R, r, _ = rref(vectors)
        return cls(ambient_dim, tuple(tuple(row) for row in R[:r]))

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, v) -> bool:
        span = EchelonSpan(self.ambient_dim)
        for b in self.basis:
            span.add(b)
        return span.contains(v)


def kernel_basis(M) -> Subspace:
    """Right null space ``{v : M v = 0}`` as a canonical Subspace."""
    R, r, pivots = rref(M)
    n_cols = len(R[0])
    free = [c for c in range(n_cols) if c not in set(pivots)]
    vectors = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        vectors.append(v)
    return Subspace.from_vectors(vectors, n_cols)


# ---------------------------------------------------------------------------
# Spans

def _integer_vector(v):
    v = [Fraction(x) for x in v]
    d = lcm(*(x.denominator for x in v)) if v else 1
    return [x.numerator * (d // x.denominator) for x in v]


class EchelonSpan:
    """Incrementally grown span of integer-scaled rational vectors.

    Rows are kept in (non-reduced) echelon form with fraction-free integer
    elimination and content removal after every step, so no Fraction objects
    are created on the hot path.
    """

    def __init__(self, ambient_dim):
        self.ambient_dim = ambient_dim
        self._rows = {}

    @property
    def dim(self):
        return len(self._rows)

    def _reduce(self, v):
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector length {len(v)} != {self.ambient_dim}")
        N = self.ambient_dim
        start = 0
        while True:
            lead = next((i for i in range(start, N) if v[i]), None)
            if lead is None:
                return None, v
            row = self._rows.get(lead)
            if row is None:
                return lead, v
            a, b = row[lead], v[lead]
            g = gcd(a, b)
            a, b = a // g, b // g
            v = [a * x - b * y for x, y in zip(v, row)]
            c = gcd(*v)
            if c > 1:
                v = [x // c for x in v]
            start = lead + 1

    def add(self, v) -> bool:
        """Adjoin ``v``; return True iff the span grew."""
        lead, w = self._reduce(_as_ints(v))
        if lead is None:
            return False
        self._rows[lead] = w
        return True

    def contains(self, v) -> bool:
        return self._reduce(_as_ints(v))[0] is None


def _as_ints(v):
    if isinstance(v, Matrix):
        num, _ = v.integer_rows()
        return [x for row in num for x in row]
    if all(isinstance(x, int) for x in v):
        return list(v)
    return _integer_vector(v)


def vectorize(A: Matrix):
    """Row-major flattening to a list of n^2 Fractions."""
    return [x for row in A.rows for x in row]


def devectorize(v, n=None) -> Matrix:
    v = list(v)
    if n is None:
        n = int(round(len(v) ** 0.5))
    if n * n != len(v):
        raise DimensionMismatch(f"vector of length {len(v)} is not a square matrix")
    return Matrix([v[i * n:(i + 1) * n] for i in range(n)])


def span_dimension(matrices: Sequence[Matrix]) -> int:
    matrices = list(matrices)
    if not matrices:
        return 0
    n = matrices[0].n
    span = EchelonSpan(n * n)
    for A in matrices:
        if A.n != n:
            raise DimensionMismatch(f"matrices of sizes {n} and {A.n} in one span")
        span.add(A)
    return span.dim


def inverse(S: Matrix) -> Matrix:
    """Exact inverse of an invertible matrix via RREF of ``[S | I]``."""
    n = S.n
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(S.rows)]
    R, r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise DimensionMismatch("matrix is singular")
    return Matrix([row[n:] for row in R[:n]])



# ---------------------------------------------------------------------------
# Commuting families

@dataclass(frozen=True)
class CommutingFamily:
    """A list of ``n x n`` generators, checked pairwise commuting when ``verified``."""

    n: int
    generators: tuple
    verified: bool = False

    @classmethod
    def from_matrices(cls, matrices, n=None):
        """Build and verify; raises NotCommuting naming the first bad pair."""
        matrices = tuple(matrices)
        if n is None:
            if not matrices:
                raise DimensionMismatch("n is required for an empty family")
            n = matrices[0].n
        for A in matrices:
            if A.n != n:
                raise DimensionMismatch(f"generator of size {A.n} in a family of size {n}")
        for i in range(len(matrices)):
            for j in range(i + 1, len(matrices)):
                if not matrices[i].commutes_with(matrices[j]):
                    raise NotCommuting(i, j)
        return cls(n, matrices, True)

    @property
    def l(self):
        return len(self.generators)

    def require_verified(self):
        if not self.verified:
            return CommutingFamily.from_matrices(self.generators, self.n)
        return self

    def to_json(self):
        return {"n": self.n, "matrices": [A.to_json() for A in self.generators]}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise MatrixFormatError("family must be a JSON object", "family")
        if "n" not in obj or not isinstance(obj["n"], int) or obj["n"] < 1:
            raise MatrixFormatError("n must be a positive integer", "family.n")
        mats = obj.get("matrices")
        if not isinstance(mats, list):
            raise MatrixFormatError("matrices must be a list", "family.matrices")
        gens = [matrix_from_json(m, f"family.matrices[{i}]") for i, m in enumerate(mats)]
        for i, A in enumerate(gens):
            if A.n != obj["n"]:
                raise MatrixFormatError(f"matrix has n={A.n}, family has n={obj['n']}", f"family.matrices[{i}].n")
        return cls.from_matrices(gens, obj["n"])


def load_family(path) -> CommutingFamily:
    with open(path) as fh:
        return CommutingFamily.from_json(loads_json(fh.read(), str(path)))
