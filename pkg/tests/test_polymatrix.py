from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sextic_strata.fields import GF, QQ
from sextic_strata.forms import Form, variables
from sextic_strata.polymatrix import PolyMatrix, det_poly, maximal_minors
from sextic_strata.rng import SplitMix64
from sextic_strata.sampler import random_form
from sextic_strata.strata import SHAPES, StratumLabel


def test_det_diagonal():
    X, Y, Z = variables(QQ)
    z = Form.zero(QQ, 1)
    M = PolyMatrix(QQ, [[X, z], [z, Y]])
    assert det_poly(M) == X * Y


def test_det_x5_block_formula():
    # det [[h, l], [g, q]] = h*q - l*g
    field = GF(101)
    rng = SplitMix64(17)
    h, l = random_form(field, 4, rng), random_form(field, 1, rng)
    g, q = random_form(field, 5, rng), random_form(field, 2, rng)
    M = PolyMatrix(field, [[h, l], [g, q]])
    assert det_poly(M) == h * q - l * g


def test_det_row_swap_flips_sign():
    field = GF(101)
    rng = SplitMix64(23)
    h, l = random_form(field, 4, rng), random_form(field, 1, rng)
    g, q = random_form(field, 5, rng), random_form(field, 2, rng)
    d1 = det_poly(PolyMatrix(field, [[h, l], [g, q]]))
    d2 = det_poly(PolyMatrix(field, [[g, q], [h, l]]))
    assert d2 == -d1


def test_det_rejects_rectangular():
    X, Y, Z = variables(QQ)
    with pytest.raises(ValueError):
        det_poly(PolyMatrix(QQ, [[X, Y, Z]]))


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32), label=st.sampled_from([StratumLabel.X1, StratumLabel.X5]))
def test_det_transpose_invariant(seed, label):
    field = GF(101)
    rng = SplitMix64(seed)
    src, tgt = SHAPES[label]
    entries = [
        [
            random_form(field, d - s, rng) if d - s >= 0 else Form.zero(field, d - s)
            for s in src
        ]
        for d in tgt
    ]
    M = PolyMatrix(field, entries)
    assert det_poly(M.transpose()) == det_poly(M)


def test_maximal_minors_hand_expansion():
    # rows (0,1): X*X - 0*Y = X^2; rows (0,2): X*Y; rows (1,2): Y*Y - X*Z
    X, Y, Z = variables(QQ)
    z = Form.zero(QQ, 1)
    M = PolyMatrix(QQ, [[X, z], [Y, X], [Z, Y]])
    minors = maximal_minors(M)
    assert minors == [X * X, X * Y, Y * Y - X * Z]


def test_maximal_minors_square_is_det():
    field = GF(101)
    rng = SplitMix64(3)
    M = PolyMatrix(field, [[random_form(field, 1, rng) for _ in range(2)] for _ in range(2)])
    assert maximal_minors(M) == [det_poly(M)]


def test_minor_with_repeated_row_vanishes():
    X, Y, Z = variables(QQ)
    M = PolyMatrix(QQ, [[X, Y], [X, Y], [Y, Z]])
    minors = maximal_minors(M)
    assert minors[0].is_zero  # rows (0,1) are equal


def test_maximal_minors_needs_tall_matrix():
    X, Y, Z = variables(QQ)
    with pytest.raises(ValueError):
        maximal_minors(PolyMatrix(QQ, [[X, Y, Z]]))
