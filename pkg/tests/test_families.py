import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from admissibility.algebra_closure import generated_algebra_basis, verify_commuting_algebra_bound
from admissibility.errors import SizeCapExceeded
from admissibility.exact_core import Matrix
from admissibility.families import (
    FamilySpec,
    build_family,
    derive_seed,
    kronecker_shift_family,
    polynomial_family,
    random_block_diagonal_family,
    random_commuting_family,
    random_unimodular,
    schur_family,
    tightness_search,
)
from admissibility.spectral import is_nilpotent, jordan_matrix

# regression fixture: random_commuting_family(4, 2, 42), frozen after first run
SEED42_FAMILY = {
    "n": 4,
    "matrices": [
        {"n": 4, "entries": [[-2, 2, 0, 1], [0, -1, 0, 0], [0, 2, 1, 0], [0, 0, 0, -1]]},
        {"n": 4, "entries": [[-2, 2, 0, 1], [0, -1, 0, 0], [0, 2, 1, 0], [0, 0, 0, -1]]},
    ],
}


def test_polynomial_examples():
    fam = polynomial_family([2], 1, coefficients=[[1]])
    assert fam.generators == (jordan_matrix([2]),)
    N = jordan_matrix([3])
    fam = polynomial_family([3], 2, coefficients=[[1, 0], [0, 1]])
    assert fam.generators == (N, N @ N)
    assert generated_algebra_basis(fam).dim == 3
    fam = polynomial_family([1], 4, rng_seed=5)
    assert all(A.is_zero() for A in fam.generators) and generated_algebra_basis(fam).dim == 1


@given(st.integers(1, 4), st.integers(1, 3), st.integers(0, 2**63))
def test_polynomial_family_is_nilpotent_commuting(n, l, seed):
    family, _ = random_commuting_family(n, l, seed)
    assert family.verified
    fam = polynomial_family([n], l, coeff_bound=3, rng_seed=seed)
    assert all(is_nilpotent(A) for A in fam.generators)


def test_kronecker_examples():
    fam = kronecker_shift_family(2, 1)
    assert fam.generators == (jordan_matrix([2]),)
    fam = kronecker_shift_family(2, 2)
    assert fam.n == 4 and generated_algebra_basis(fam).dim == 4
    fam = kronecker_shift_family(3, 2)
    assert fam.n == 9 and generated_algebra_basis(fam).dim == 9
    for A in fam.generators:
        assert not (A @ A).is_zero() and (A @ A @ A).is_zero()
    with pytest.raises(SizeCapExceeded):
        kronecker_shift_family(2, 6)


def test_schur_examples():
    fam = schur_family(1)
    assert fam.generators == (jordan_matrix([2]),)
    assert [generated_algebra_basis(schur_family(k)).dim for k in (1, 2, 3)] == [2, 5, 10]
    assert schur_family(3).l == 9 and schur_family(3).n == 6


def test_random_examples():
    for l in (1, 3):
        fam, _ = random_commuting_family(1, l, 7)
        assert fam.n == 1 and all(A == Matrix.zero(1) for A in fam.generators)
    fam, spec = random_commuting_family(4, 2, 42)
    assert fam.to_json() == SEED42_FAMILY
    fam2, spec2 = random_commuting_family(4, 2, 42)
    assert fam2 == fam and spec2.canonical() == spec.canonical()
    assert build_family(spec) == fam


def test_spec_json_roundtrip_reproduces_family():
    for seed in range(25):
        fam, spec = random_commuting_family(6, 3, seed)
        again = FamilySpec.from_json(json.loads(spec.canonical()))
        assert build_family(again) == fam


def test_unimodular():
    import random

    for seed in range(20):
        S, T = random_unimodular(5, random.Random(seed))
        assert S @ T == Matrix.identity(5)
        assert S.is_integral() and T.is_integral()
        assert max(abs(x) for row in S.rows for x in row) <= 3


def test_block_diagonal_shifts_and_conjugation():
    spec = FamilySpec("block-diagonal", {
        "blocks": [
            {"construction": "polynomial", "params": {"seed": [2], "l": 1, "coefficients": [[1]]}},
            {"construction": "polynomial", "params": {"seed": [1], "l": 1, "coefficients": [[]]}},
        ],
        "shifts": [["1/2"], ["3"]],
    })
    fam = build_family(spec)
    assert fam.generators[0].tolist() == [[Fraction(1, 2), 1, 0], [0, Fraction(1, 2), 0], [0, 0, 3]]
    conj = build_family(FamilySpec("conjugated", {"inner": spec.to_json()}, rng_seed=11))
    assert generated_algebra_basis(conj).dim == generated_algebra_basis(fam).dim == 3


def test_block_family_sizes():
    fam, spec, sizes = random_block_diagonal_family(7, 2, 3)
    assert sum(sizes) == 7 and fam.n == 7 and spec.construction == "conjugated"


def test_unknown_construction():
    with pytest.raises(ValueError):
        FamilySpec("nope")


def test_derive_seed_is_stable():
    assert derive_seed(0, 0) == derive_seed(0, 0)
    assert derive_seed(0, 0) != derive_seed(0, 1) != derive_seed(1, 0)
    assert 0 <= derive_seed(123, 456) < 2 ** 64


def test_search_examples():
    for budget in (1, 5, 30):
        rec = tightness_search(2, 1, budget, 3)
        assert rec.dim <= 2 and rec.evaluations == budget
    rec = tightness_search(2, 1, 30, 3)
    assert rec.dim == 2 and rec.ratio_display == "0.5"
    rec = tightness_search(4, 4, 50, 0)
    assert rec.dim >= 5
    rec = tightness_search(5, 2, 1, 9)
    assert rec.evaluations == 1


def test_search_is_deterministic_and_sound():
    a = tightness_search(6, 2, 40, 17)
    b = tightness_search(6, 2, 40, 17)
    assert a == b and a.to_json() == b.to_json()
    assert not a.violation
    fam = build_family(a.spec)
    assert generated_algebra_basis(fam).dim == a.dim
    assert verify_commuting_algebra_bound(fam).holds


@pytest.mark.parametrize("k", range(1, 7))
def test_schur_bound_with_l_equal_k_squared(k):
    r = verify_commuting_algebra_bound(schur_family(k))
    assert r.quantity == k * k + 1 and r.holds
