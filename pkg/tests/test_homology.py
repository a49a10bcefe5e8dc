import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclotope.homology import (
    ChainComplex,
    ChainComplexError,
    IntMatrix,
    homology_of,
    rank_mod_p,
    smith_normal_form,
    theorem2_ranks,
)


@pytest.mark.parametrize("dense,factors", [
    ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [1, 1, 1]),
    ([[2, 0], [0, 4]], [2, 4]),
    ([[2, 1], [1, 2]], [1, 3]),
    ([[4, 0], [0, 6]], [2, 12]),
    ([[0, 0], [0, 0]], []),
    ([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], [2, 6, 12]),
])
def test_smith_normal_form(dense, factors):
    assert smith_normal_form(dense) == factors


def _det(rows):
    if not rows:
        return 1
    return sum((-1) ** j * rows[0][j] * _det([r[:j] + r[j + 1:] for r in rows[1:]]) for j in range(len(rows)))


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_snf_product_is_determinant(rows):
    factors = smith_normal_form(rows)
    prod = 1
    for d in factors:
        prod *= d
    det = _det(rows)
    if det:
        assert len(factors) == 3 and prod == abs(det)
    else:
        assert len(factors) < 3
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


def test_snf_invariant_under_permutation(seed):
    rng = random.Random(seed)
    for _ in range(20):
        dense = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(4)]
        m = IntMatrix.from_dense(dense)
        rp = rng.sample(range(4), 4)
        cp = rng.sample(range(5), 5)
        assert smith_normal_form(m) == smith_normal_form(m.permuted(rp, cp))
        assert rank_mod_p(m) == len(smith_normal_form(m))


def test_triplets_round_trip():
    m = IntMatrix.from_dense([[0, 2], [-1, 0], [0, 0]])
    text = m.to_triplets()
    assert text.splitlines()[0] == "3 2"
    assert IntMatrix.from_triplets(text).to_dense() == m.to_dense()


def test_torsion_detected():
    cc = ChainComplex([1, 1], [IntMatrix.from_dense([[0]])])
    assert homology_of(cc).betti == (1, 1)
    cc = ChainComplex([1, 1, 1], [IntMatrix.from_dense([[0]]), IntMatrix.from_dense([[2]])])
    h = homology_of(cc)
    # H_1 = Z/2: rank 0 but kept because of the torsion
    assert h.betti == (1, 0)
    assert h.torsion == ((), (2,))
    assert not h.is_free


def test_d_squared_checked():
    d1 = IntMatrix.from_dense([[1]])
    d2 = IntMatrix.from_dense([[1]])
    with pytest.raises(ChainComplexError):
        homology_of(ChainComplex([1, 1, 1], [d1, d2]))


def test_shape_mismatch():
    with pytest.raises(ChainComplexError):
        ChainComplex([2, 1], [IntMatrix.from_dense([[1]])])


@pytest.mark.parametrize("n,ranks", [(3, (1, 7)), (4, (1, 4, 17)), (7, (1, 7, 21, 35, 35, 141))])
def test_theorem2_ranks(n, ranks):
    assert theorem2_ranks(n) == ranks
