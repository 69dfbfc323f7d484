import pytest
from hypothesis import given, strategies as st

from admissibility.commutant import (
    commutant_basis,
    commutant_dimension_formula,
    commutation_operator,
    jordan_lemma_certificate,
    shifted_commutant_dimension,
    shifted_commutant_dimensions,
    shifted_dimension_by_blocks,
    verify_shifted_commutant_bound,
)
from admissibility.errors import NotNilpotent, SizeCapExceeded
from admissibility.exact_core import Matrix, span_dimension
from admissibility.spectral import jordan_matrix, partitions

from conftest import conjugator

small_partitions = st.integers(1, 6).flatmap(lambda n: st.sampled_from(list(partitions(n))))


def test_commutant_examples():
    assert commutant_basis(Matrix.identity(2)).dim == 4
    J2 = jordan_matrix([2])
    cb = commutant_basis(J2)
    assert cb.dim == 2
    assert span_dimension(list(cb.basis) + [Matrix.identity(2), J2]) == 2
    assert commutant_basis(jordan_matrix([2, 1])).dim == 5


def test_commutant_against_sympy_nullspace():
    sympy = pytest.importorskip("sympy")
    for p in ([2, 1], [3, 1], [2, 2], [3, 2, 1]):
        A = jordan_matrix(p)
        n = A.n
        symbols = sympy.symbols(f"b0:{n * n}")
        B = sympy.Matrix(n, n, symbols)
        S = sympy.Matrix(n, n, lambda i, j: int(A[i, j]))
        eqs = list(S * B - B * S)
        system = sympy.Matrix([[sympy.diff(e, s) for s in symbols] for e in eqs])
        assert len(system.nullspace()) == commutant_basis(A).dim


def test_commutant_basis_invariants():
    A = Matrix([[1, 2, 0], [0, 1, 0], [0, 0, 3]])
    cb = commutant_basis(A)
    for B in cb.basis:
        assert A @ B == B @ A
    assert span_dimension(cb.basis) == cb.dim
    assert span_dimension(list(cb.basis) + [Matrix.identity(3)]) == cb.dim


def test_commutation_operator_size_cap():
    with pytest.raises(SizeCapExceeded):
        commutation_operator(Matrix.zero(5), size_cap=4)


def test_formula_examples():
    assert commutant_dimension_formula([1] * 6) == 36
    assert commutant_dimension_formula([7]) == 7
    assert commutant_dimension_formula([2, 1]) == 5


def test_formula_matches_kernel_up_to_7():
    for n in range(1, 8):
        for p in partitions(n):
            assert commutant_basis(jordan_matrix(p)).dim == commutant_dimension_formula(p)


def test_min_times_max_identity():
    for a in range(1, 51):
        for b in range(1, 51):
            assert min(a, b) * max(a, b) == a * b


def test_shifted_examples():
    assert shifted_commutant_dimension(jordan_matrix([2]), 1) == 1
    assert shifted_commutant_dimension(jordan_matrix([2, 1]), 1) == 1
    for p in ([3], [2, 1], [1, 1, 1], [4, 2]):
        A = jordan_matrix(p)
        for m in range(A.n, A.n + 3):
            assert shifted_commutant_dimension(A, m) == 0
    with pytest.raises(NotNilpotent):
        shifted_commutant_dimension(Matrix.identity(2), 1)
    with pytest.raises(ValueError):
        shifted_commutant_dimension(jordan_matrix([2]), 0)


def test_verify_examples():
    r = verify_shifted_commutant_bound([3], 3)
    assert (r.quantity, r.holds, r.details["bound_numerator"], r.details["bound_denominator"]) == (0, True, 9, 3)
    r = verify_shifted_commutant_bound([2, 1], 1)
    assert (r.quantity, r.lhs, r.rhs, r.holds) == (1, 1, 9, True)
    for n in range(1, 6):
        r = verify_shifted_commutant_bound([1] * n, 1)
        assert r.quantity == 0 and r.rhs == n * n and r.holds
    r = verify_shifted_commutant_bound(jordan_matrix([3, 1]), 1)
    assert r.details["partition"] == [3, 1]


def test_sequence_matches_single_calls():
    for p in ([4, 2, 1], [3, 3], [5]):
        A = jordan_matrix(p)
        seq = shifted_commutant_dimensions(A)
        assert seq == {m: shifted_commutant_dimension(A, m) for m in range(1, A.n + 1)}


def test_closed_form_and_certificate_up_to_8():
    for n in range(1, 9):
        for p in partitions(n):
            dims = shifted_commutant_dimensions(jordan_matrix(p))
            for m, d in dims.items():
                assert d == shifted_dimension_by_blocks(p, m)
                cert = jordan_lemma_certificate(p, m)
                assert d <= cert and m * cert <= n * n
                assert m * d <= n * n


@given(small_partitions)
def test_monotone_in_m(p):
    dims = shifted_commutant_dimensions(jordan_matrix(p))
    values = [dims[m] for m in sorted(dims)]
    assert all(a >= b for a, b in zip(values, values[1:]))


@given(small_partitions, st.integers(1, 6), st.integers(0, 2**32))
def test_shifted_dimension_conjugation_invariant(p, m, seed):
    A = jordan_matrix(p)
    S, S_inv = conjugator(p.n, seed)
    assert shifted_commutant_dimension(S @ A @ S_inv, m) == shifted_commutant_dimension(A, m)
