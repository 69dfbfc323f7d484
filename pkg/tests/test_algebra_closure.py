from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from admissibility.algebra_closure import (
    commuting_bound_check,
    compare_hecke_bounds,
    crossover_index,
    generated_algebra_basis,
    hecke_bound_bernstein,
    hecke_bound_new,
    integer_root,
    integrality_probe,
    max_irrep_dimension,
    monomial_span_dimension,
    optimal_split,
    rep_dim_bound_check,
    split_objective,
    verify_commuting_algebra_bound,
)
from admissibility.errors import DimensionMismatch, NotCommuting, NotNilpotent, OverflowGuard
from admissibility.exact_core import CommutingFamily, Matrix, span_dimension
from admissibility.families import kronecker_shift_family, random_commuting_family, schur_family
from admissibility.spectral import jordan_matrix, partitions

from conftest import conjugator


def brute_monomial_dimension(family):
    """Span of every monomial with all exponents < n (Cayley-Hamilton makes this the whole algebra)."""
    n = family.n
    powers = []
    for A in family.generators:
        ps = [Matrix.identity(n)]
        for _ in range(n - 1):
            ps.append(ps[-1] @ A)
        powers.append(ps)
    mats = []
    for exps in product(range(n), repeat=family.l):
        M = Matrix.identity(n)
        for ps, e in zip(powers, exps):
            M = M @ ps[e]
        mats.append(M)
    return span_dimension(mats)


def test_generated_algebra_examples():
    assert generated_algebra_basis([Matrix.zero(3)]).dim == 1
    J4 = jordan_matrix([4])
    alg = generated_algebra_basis([J4])
    assert alg.dim == 4
    assert span_dimension(list(alg.basis) + [J4 ** k for k in range(4)]) == 4
    assert generated_algebra_basis(schur_family(2)).dim == 5
    assert generated_algebra_basis([], n=2).dim == 1
    with pytest.raises(DimensionMismatch):
        generated_algebra_basis([Matrix.zero(2), Matrix.zero(3)])


def test_saturation_is_not_tied_to_commutativity():
    E12, E21 = Matrix.unit(2, 0, 1), Matrix.unit(2, 1, 0)
    assert generated_algebra_basis([E12, E21]).dim == 4


def _soundness(alg):
    assert alg.contains(Matrix.identity(alg.n))
    for A in alg.generators:
        for B in alg.basis:
            assert alg.contains(A @ B)
        assert alg.contains(A)
    assert span_dimension(alg.basis) == alg.dim <= alg.n ** 2
    assert alg.rounds <= alg.n ** 2


@pytest.mark.parametrize("seed", range(40))
def test_saturation_sound_and_matches_brute_force(seed):
    family, _ = random_commuting_family(1 + seed % 5, 1 + seed % 3, seed)
    alg = generated_algebra_basis(family)
    _soundness(alg)
    assert alg.dim == brute_monomial_dimension(family)


def test_single_generator_dimension_is_largest_part():
    for n in range(1, 8):
        for p in partitions(n):
            assert generated_algebra_basis([jordan_matrix(p)]).dim == p.largest


@given(st.integers(0, 2**32))
def test_algebra_dimension_conjugation_invariant(seed):
    family, _ = random_commuting_family(5, 2, seed)
    S, S_inv = conjugator(5, seed + 1)
    conj = [S @ A @ S_inv for A in family.generators]
    assert generated_algebra_basis(conj).dim == generated_algebra_basis(family).dim


def test_monomial_span_examples():
    J2 = CommutingFamily.from_matrices([jordan_matrix([2])])
    assert monomial_span_dimension(J2, 1) == 1
    assert monomial_span_dimension(CommutingFamily.from_matrices([jordan_matrix([3])]), 3) == 3
    assert monomial_span_dimension(kronecker_shift_family(2, 2), 2) == 4
    with pytest.raises(NotNilpotent):
        monomial_span_dimension(CommutingFamily.from_matrices([Matrix.identity(2)]), 2)
    with pytest.raises(NotCommuting):
        monomial_span_dimension(CommutingFamily(2, (Matrix.unit(2, 0, 1), Matrix.unit(2, 1, 0))), 2)


def test_commuting_bound_examples():
    r = commuting_bound_check(2, 2, 1)
    assert (r.lhs, r.rhs, r.holds) == (4, 16, True)
    for n in range(1, 6):
        for l in range(1, 5):
            assert commuting_bound_check(1, n, l).holds
    r = commuting_bound_check(5, 4, 4)
    assert (r.lhs, r.rhs, r.holds) == (3125, 5 ** 5 * 4 ** 8, True)
    # n=2, l=1: bound 2 * 2^1 = 4
    assert commuting_bound_check(4, 2, 1).holds
    assert not commuting_bound_check(5, 2, 1).holds


def test_verify_examples():
    r = verify_commuting_algebra_bound(CommutingFamily.from_matrices([jordan_matrix([2])]))
    assert (r.quantity, r.lhs, r.rhs, r.holds) == (2, 4, 16, True)
    r = verify_commuting_algebra_bound(CommutingFamily.from_matrices([Matrix.zero(3)] * 3))
    assert r.quantity == 1 and r.holds
    r = verify_commuting_algebra_bound(kronecker_shift_family(2, 2))
    assert (r.quantity, r.lhs, r.rhs, r.holds) == (4, 64, 6912, True)
    assert r.details["monomial_dim"] == 4
    with pytest.raises(NotCommuting):
        verify_commuting_algebra_bound(CommutingFamily(2, (Matrix.unit(2, 0, 1), Matrix.unit(2, 1, 0))))


def _split_oracle(n, l):
    values = [(split_objective(x, n, l), x) for x in range(1, n * n + 1)]
    return min(values)


def test_optimal_split_examples():
    s = optimal_split(4, 1)
    assert (s.x_star, s.f_at_x_star) == (4, 8)
    assert split_objective(3, 4, 1) == Fraction(25, 3) and split_objective(5, 4, 1) == Fraction(41, 5)
    for l in range(1, 6):
        s = optimal_split(1, l)
        assert (s.x_star, s.f_at_x_star) == (1, l + 1)
    s = optimal_split(8, 3)
    assert [split_objective(x, 8, 3) for x in (2, 3, 4)] == [104, 91, 112]
    assert (s.x_star, s.f_at_x_star) == (3, 91)
    assert s.x0_display == "2.828427"


@pytest.mark.parametrize("n,l", [(n, l) for n in (2, 3, 5, 7, 10, 13) for l in (1, 2, 3, 5)])
def test_optimal_split_against_fraction_scan(n, l):
    f, x = _split_oracle(n, l)
    s = optimal_split(n, l)
    assert (s.f_at_x_star, s.x_star) == (f, x)


def test_rep_dim_examples():
    r = rep_dim_bound_check(2, 1, 1, 1)
    assert (r.lhs, r.rhs, r.holds) == (4, 4, True)
    assert all(rep_dim_bound_check(1, p, q, l).holds for p in (1, 3) for q in (1, 2) for l in (1, 4))
    r = rep_dim_bound_check(9, 2, 2, 1)
    assert (r.lhs, r.rhs, r.holds) == (81, 64, False)


def test_max_irrep_examples():
    assert max_irrep_dimension(1, 1, 1) == 2
    assert max_irrep_dimension(2, 2, 1) == 8
    assert max_irrep_dimension(1, 1, 2) == 5


def test_max_irrep_chain_by_scan():
    for p in range(1, 7):
        for q in range(1, 7):
            for l in range(1, 4):
                n = 1
                while rep_dim_bound_check(n + 1, p, q, l).holds:
                    n += 1
                assert max_irrep_dimension(p, q, l) == n


def test_integer_root_brute():
    for k in range(1, 6):
        for x in range(0, 400):
            r = integer_root(x, k)
            assert r ** k <= x < (r + 1) ** k
    big = 10 ** 60 + 7
    r = integer_root(big, 7)
    assert r ** 7 <= big < (r + 1) ** 7


def test_hecke_new_examples():
    b = hecke_bound_new(2, 3)
    assert (b.squared, b.floor, b.is_integer) == (324, 18, True)
    for k in (1, 2, 9):
        b = hecke_bound_new(1, k)
        assert b.squared == k * k and b.floor == k
    b = hecke_bound_new(3, 2)
    assert (b.squared, b.is_integer, b.display) == (1728, False, "41.569219")


def test_hecke_bernstein_examples():
    assert hecke_bound_bernstein(1, 7) == 7
    assert hecke_bound_bernstein(3, 2) == 16
    assert hecke_bound_bernstein(4, 3) == 6561
    assert hecke_bound_bernstein(20, 2) == 2 ** (2 ** 19)
    with pytest.raises(OverflowGuard):
        hecke_bound_bernstein(21, 2)


def test_compare_examples():
    assert compare_hecke_bounds(3, 6).new_smaller
    assert 6 ** 6 * 27 == 1259712 < 6 ** 8 == 1679616
    assert not compare_hecke_bounds(3, 5).new_smaller
    for index in range(1, 200):
        assert not compare_hecke_bounds(2, index).new_smaller
    assert crossover_index(2) is None and crossover_index(1) is None


def test_crossover_by_scan():
    for n in range(3, 8):
        scan = next(i for i in range(1, 10 ** 4) if hecke_bound_new(n, i).squared < hecke_bound_bernstein(n, i) ** 2)
        assert crossover_index(n) == scan
        # monotone beyond the crossover
        assert all(compare_hecke_bounds(n, i).new_smaller for i in range(scan, scan + 50))


def test_integrality_probe_small():
    rows = integrality_probe(n_max=12, l_max=4)
    assert len(rows) == 48
    for row in rows:
        # the integer minimum never beats the continuous one, and ties exactly when x0 is integral
        assert row["exceeds"] == (not row["x0_integral"])
    assert {(r["n"], r["l"]) for r in rows if r["x0_integral"]} >= {(4, 1), (8, 2), (4, 3), (1, 1)}
