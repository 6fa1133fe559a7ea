from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from sextic_strata.fields import GF, QQ
from sextic_strata.linalg import ScalarMatrix


def test_identity_rank_and_kernel():
    M = ScalarMatrix.identity(QQ, 4)
    assert M.rank() == 4
    assert M.kernel_basis() == []


def test_zero_matrix():
    M = ScalarMatrix.zeros(GF(101), 3, 5)
    assert M.rank() == 0
    assert len(M.kernel_basis()) == 5


def test_proportional_rows_kernel():
    M = ScalarMatrix(QQ, [[1, 2], [2, 4]])
    assert M.rank() == 1
    (v,) = M.kernel_basis()
    # kernel is spanned by (2, -1)
    assert v[0] * Fraction(-1) == v[1] * Fraction(2)
    assert M.mul_vec(v) == [0, 0]


def test_kernel_vectors_annihilate():
    F = GF(7)
    M = ScalarMatrix(F, [[1, 2, 3], [4, 5, 6]])
    for v in M.kernel_basis():
        assert all(x == 0 for x in M.mul_vec(v))


def test_solve_particular_and_inconsistent():
    M = ScalarMatrix(QQ, [[1, 1], [0, 0]])
    assert M.solve([3, 0]) == [Fraction(3), Fraction(0)]  # free variable zeroed
    assert M.solve([3, 1]) is None
    F = GF(5)
    N = ScalarMatrix(F, [[2, 0], [0, 3]])
    x = N.solve([1, 1])
    assert N.mul_vec(x) == [1, 1]


def test_stacking_and_transpose():
    F = GF(5)
    A = ScalarMatrix(F, [[1, 2], [3, 4]])
    B = ScalarMatrix(F, [[0, 1], [1, 0]])
    assert A.hstack(B).shape == (2, 4)
    assert A.vstack(B).shape == (4, 2)
    assert A.transpose().entry(0, 1) == 3
    assert A.matmul(ScalarMatrix.identity(F, 2)) == A


def _random_int_matrix(rng, rows, cols, bound=9):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def test_rank_agrees_with_reductions_on_fixed_corpus():
    # Rank over Q equals rank mod p for all but finitely many p; this fixed
    # corpus documents agreement at p = 101 and p = 32003.
    rng = random.Random(991)
    for _ in range(40):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        data = _random_int_matrix(rng, rows, cols)
        r_q = ScalarMatrix(QQ, data).rank()
        assert r_q == ScalarMatrix(GF(101), data).rank()
        assert r_q == ScalarMatrix(GF(32003), data).rank()


@settings(max_examples=60, deadline=None)
@given(
    data=st.lists(
        st.lists(st.integers(-9, 9), min_size=3, max_size=3),
        min_size=1,
        max_size=5,
    ),
    p=st.sampled_from([2, 3, 101]),
)
def test_rank_mod_p_never_exceeds_rational_rank(data, p):
    # A nonzero minor mod p lifts to a nonzero rational minor.
    assert ScalarMatrix(GF(p), data).rank() <= ScalarMatrix(QQ, data).rank()


@settings(max_examples=40, deadline=None)
@given(
    data=st.lists(
        st.lists(st.integers(-4, 4), min_size=4, max_size=4),
        min_size=2,
        max_size=4,
    )
)
def test_backends_agree(data):
    # The numpy prime-field path and the Fraction path compute the same rank
    # whenever p is large enough not to collide with the minors.
    rq = ScalarMatrix(QQ, data).rank()
    rp = ScalarMatrix(GF(32003), data).rank()
    assert rp == rq


def test_rref_pivots_deterministic():
    F = GF(3)
    M = ScalarMatrix(F, [[0, 1, 2], [1, 0, 1], [1, 1, 0]])
    R1, p1 = M.rref()
    R2, p2 = M.rref()
    assert p1 == p2 and R1 == R2
