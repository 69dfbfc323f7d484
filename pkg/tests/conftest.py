import random

import pytest
from hypothesis import settings, strategies as st

from admissibility.exact_core import Matrix
from admissibility.families import random_unimodular

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def rational_rows(rows_min=1, rows_max=5, cols_min=1, cols_max=5, lo=-9, hi=9):
    return st.integers(rows_min, rows_max).flatmap(
        lambda r: st.integers(cols_min, cols_max).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(lo, hi), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


def square_matrices(n_min=1, n_max=4, lo=-9, hi=9):
    return st.integers(n_min, n_max).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    ).map(Matrix)


def conjugator(n, seed):
    """Random unimodular ``(S, S^-1)`` with entries bounded by 3."""
    return random_unimodular(n, random.Random(seed))


@pytest.fixture
def J2():
    return Matrix([[0, 1], [0, 0]])
