"""Generated matrix algebras and exact checks of the dimension bounds.

The unital algebra generated by ``A_1, ..., A_l`` is computed by saturation:
start from the span of ``I`` and the generators, then left-multiply every
new basis element by every generator until the span stops growing.  A span
that contains ``I`` and is closed under left multiplication by the
generators contains every word in them (induction on word length), so it is
the generated algebra.  Commutativity is not needed for this.

Every verdict below is an integer inequality obtained by raising both sides
to a power that clears fractional exponents.  Decimal strings in the
``approx`` fields are for display.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import DimensionMismatch, NotNilpotent, OracleMismatch, OverflowGuard
from .exact_core import CommutingFamily, EchelonSpan, Matrix
from .report import BoundReport, decimal_power, decimal_sqrt, decimal_string
from .spectral import is_nilpotent

__all__ = [
    "AlgebraBasis",
    "BoundReport",
    "CommutingFamily",
    "HeckeBound",
    "HeckeComparison",
    "SplitResult",
    "commuting_bound_check",
    "compare_hecke_bounds",
    "crossover_index",
    "generated_algebra_basis",
    "hecke_bound_bernstein",
    "hecke_bound_new",
    "integer_root",
    "integrality_probe",
    "max_irrep_dimension",
    "monomial_span_dimension",
    "optimal_split",
    "rep_dim_bound_check",
    "split_report",
    "verify_commuting_algebra_bound",
]


@dataclass(frozen=True)
class AlgebraBasis:
    generators: tuple
    n: int
    basis: tuple
    rounds: int

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, M: Matrix) -> bool:
        span = EchelonSpan(self.n * self.n)
        for B in self.basis:
            span.add(B)
        return span.contains(M)


def generated_algebra_basis(generators, n=None) -> AlgebraBasis:
    """Basis of the smallest unital subalgebra of M_n(Q) containing ``generators``."""
    if isinstance(generators, CommutingFamily):
        n, generators = generators.n, generators.generators
    generators = tuple(generators)
    if n is None:
        if not generators:
            raise DimensionMismatch("n is required when there are no generators")
        n = generators[0].n
    for A in generators:
        if A.n != n:
            raise DimensionMismatch(f"generator of size {A.n} for an algebra in M_{n}")
    span = EchelonSpan(n * n)
    basis = []
    for M in (Matrix.identity(n),) + generators:
        if span.add(M):
            basis.append(M)
    frontier = list(basis)
    rounds = 0
    while frontier:
        grown = []
        for B in frontier:
            for A in generators:
                P = A @ B
                if span.add(P):
                    basis.append(P)
                    grown.append(P)
        frontier = grown
        if grown:
            rounds += 1
    return AlgebraBasis(generators, n, tuple(basis), rounds)


def monomial_span_dimension(family: CommutingFamily, cap: int) -> int:
    """Dimension of span{A_1^{j_1} ... A_l^{j_l} : every j_i < cap}.

    Independent of the saturation route; with ``cap = n`` both must agree on
    nilpotent commuting families.
    """
    if cap < 1:
        raise ValueError("exponent cap must be at least 1")
    family = family.require_verified()
    n = family.n
    for i, A in enumerate(family.generators):
        if not is_nilpotent(A):
            raise NotNilpotent(f"generator {i} is not nilpotent", matrix=A)
    monomials = [Matrix.identity(n)]
    for A in family.generators:
        powers = [Matrix.identity(n)]
        while len(powers) < cap:
            P = powers[-1] @ A
            if P.is_zero():
                break
            powers.append(P)
        products = set()
        for M in monomials:
            for P in powers:
                Q = M @ P
                if not Q.is_zero():
                    products.add(Q)
        monomials = sorted(products, key=lambda M: M.integer_rows())
    span = EchelonSpan(n * n)
    for M in monomials:
        span.add(M)
    return span.dim


# ---------------------------------------------------------------------------
# The commuting-family bound  dim <= (l+1) n^(2 - 2/(l+1))

def bound_exponent(l):
    return Fraction(2) - Fraction(2, l + 1)


def commuting_bound_check(dim: int, n: int, l: int) -> BoundReport:
    """``dim <= (l+1) n^(2-2/(l+1))`` decided as ``dim^(l+1) <= (l+1)^(l+1) n^(2l)``."""
    if dim < 1 or n < 1 or l < 0:
        raise ValueError("need dim >= 1, n >= 1, l >= 0")
    lhs = dim ** (l + 1)
    rhs = (l + 1) ** (l + 1) * n ** (2 * l)
    bound = Fraction(l + 1) * _real(n, bound_exponent(l))
    return BoundReport.compare(
        dim,
        "dim^(l+1) <= (l+1)^(l+1) * n^(2l)",
        lhs,
        rhs,
        approx={
            "dim": str(dim),
            "bound": decimal_string(bound),
            "ratio": decimal_string(Fraction(dim) / bound),
        },
        details={"n": n, "l": l},
    )


def _real(base, exponent):
    # display-only rational approximation of base**exponent
    return Fraction(decimal_power(base, exponent, places=30))


def verify_commuting_algebra_bound(family: CommutingFamily, cross_check=True) -> BoundReport:
    """Saturate, then check the commuting-family bound.

    When every generator is nilpotent the saturation dimension is also
    recomputed from monomials with exponents below ``n``; a disagreement
    raises OracleMismatch.
    """
    family = family.require_verified()
    algebra = generated_algebra_basis(family)
    report = commuting_bound_check(algebra.dim, family.n, family.l)
    if cross_check and all(is_nilpotent(A) for A in family.generators):
        oracle = monomial_span_dimension(family, family.n)
        if oracle != algebra.dim:
            raise OracleMismatch(f"saturation gave {algebra.dim}, monomial span gave {oracle}")
        report.details["monomial_dim"] = oracle
    return report


# ---------------------------------------------------------------------------
# f(x) = l n^2 / x + x^l over integers

@dataclass(frozen=True)
class SplitResult:
    n: int
    l: int
    x_star: int
    f_at_x_star: Fraction
    x0_display: str


def split_objective(x, n, l) -> Fraction:
    return Fraction(l * n * n, x) + Fraction(x) ** l


def optimal_split(n: int, l: int) -> SplitResult:
    """Integer ``x`` in ``[1, n^2]`` minimizing ``l n^2/x + x^l``; ties go to the smaller x."""
    if n < 1 or l < 1:
        raise ValueError("need n >= 1 and l >= 1")
    ln2 = l * n * n
    # f(x) = (l n^2 + x^(l+1)) / x, compared by cross-multiplication
    best_x, best_num = 1, ln2 + 1
    for x in range(2, n * n + 1):
        num = ln2 + x ** (l + 1)
        if num * best_x < best_num * x:
            best_x, best_num = x, num
    return SplitResult(n, l, best_x, Fraction(best_num, best_x), decimal_power(n, Fraction(2, l + 1)))


def split_report(n: int, l: int) -> dict:
    """Integer minimum of the split objective against ``(l+1) n^(2-2/(l+1))``.

    ``exceeds`` is decided exactly: ``f^(l+1) > (l+1)^(l+1) n^(2l)``.
    """
    s = optimal_split(n, l)
    f = s.f_at_x_star
    lhs = f.numerator ** (l + 1)
    rhs = (l + 1) ** (l + 1) * n ** (2 * l) * f.denominator ** (l + 1)
    x0_floor = integer_root(n * n, l + 1)
    return {
        "n": n,
        "l": l,
        "x_star": s.x_star,
        "f_min": _fraction_text(f),
        "f_min_approx": decimal_string(f),
        "bound_approx": decimal_string(Fraction(l + 1) * _real(n, bound_exponent(l))),
        "x0_approx": s.x0_display,
        "x0_integral": x0_floor ** (l + 1) == n * n,
        "exceeds": lhs > rhs,
    }


def integrality_probe(n_max=100, l_max=6):
    """``split_report`` for every ``n <= n_max``, ``l <= l_max``, ordered by (n, l)."""
    return [split_report(n, l) for n in range(1, n_max + 1) for l in range(1, l_max + 1)]


def _fraction_text(f: Fraction):
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


# ---------------------------------------------------------------------------
# Irreducible representation dimension  n <= (pq)^((l+1)/2) (l+1)^((l+1)/2)

def rep_dim_bound_check(n: int, p: int, q: int, l: int) -> BoundReport:
    if min(n, p, q, l) < 1:
        raise ValueError("n, p, q, l must all be positive")
    rhs = (p * q * (l + 1)) ** (l + 1)
    return BoundReport.compare(
        n,
        "n^2 <= (p*q*(l+1))^(l+1)",
        n * n,
        rhs,
        approx={"n": str(n), "bound": decimal_sqrt(rhs)},
        details={"p": p, "q": q, "l": l},
    )


def max_irrep_dimension(p: int, q: int, l: int) -> int:
    """Largest n with ``n^2 <= p q (l+1) n^(2 - 2/(l+1))``."""
    if min(p, q, l) < 1:
        raise ValueError("p, q, l must all be positive")
    return isqrt((p * q * (l + 1)) ** (l + 1))


# ---------------------------------------------------------------------------
# Bounds on dim V^K for GL_n in terms of the index [GL_n(O):K]

BERNSTEIN_MAX_N = 20


def integer_root(x: int, k: int) -> int:
    """``floor(x ** (1/k))`` for integers ``x >= 0``, ``k >= 1``."""
    if x < 0 or k < 1:
        raise ValueError("need x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    hi = 1 << (x.bit_length() // k + 1)
    lo = 0
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= x:
            lo = mid
        else:
            hi = mid - 1
    return lo


@dataclass(frozen=True)
class HeckeBound:
    """``index^n * n^(n/2)``, held exactly through its square."""

    n: int
    index: int
    squared: int

    @property
    def floor(self):
        return isqrt(self.squared)

    @property
    def is_integer(self):
        return self.floor ** 2 == self.squared

    @property
    def display(self):
        return decimal_sqrt(self.squared)

    def to_json(self):
        return {
            "n": self.n,
            "index": self.index,
            "squared": str(self.squared),
            "floor": str(self.floor),
            "is_integer": self.is_integer,
            "approx": self.display,
        }


def hecke_bound_new(n: int, index: int) -> HeckeBound:
    if n < 1 or index < 1:
        raise ValueError("need n >= 1 and index >= 1")
    return HeckeBound(n, index, index ** (2 * n) * n ** n)


def hecke_bound_bernstein(n: int, index: int) -> int:
    """``index^(2^(n-1))``; refuses n > 20."""
    if n < 1 or index < 1:
        raise ValueError("need n >= 1 and index >= 1")
    if n > BERNSTEIN_MAX_N:
        raise OverflowGuard(f"exponent 2^{n - 1} is too large; n must be <= {BERNSTEIN_MAX_N}")
    return index ** (2 ** (n - 1))


@dataclass(frozen=True)
class HeckeComparison:
    n: int
    index: int
    new_smaller: bool
    crossover_index: int | None


def crossover_index(n: int):
    """Smallest index with ``index^n n^(n/2) < index^(2^(n-1))``, or None.

    Squared: ``index^(2^n - 2n) > n^n``.  The left side grows with the index
    exactly when ``2^n > 2n``, i.e. n >= 3.
    """
    e = 2 ** n - 2 * n
    if e <= 0:
        return None
    return integer_root(n ** n, e) + 1


def compare_hecke_bounds(n: int, index: int) -> HeckeComparison:
    if n < 1 or index < 1:
        raise ValueError("need n >= 1 and index >= 1")
    new_sq = hecke_bound_new(n, index).squared
    old_sq = index ** (2 ** n)
    return HeckeComparison(n, index, new_sq < old_sq, crossover_index(n))
