import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmcgauss.errors import InvalidParameterError
from cmcgauss.models import (coordinate_bracket, e2tilde_model, e11_model, group_product,
                             left_translation, literal_thm53_point, thm53_normalizing_point)

lam = st.floats(0.5, 2.0)
coord = st.floats(-1.5, 1.5)
point = st.tuples(coord, coord, coord).map(np.array)


def _model(kind, l1, l2):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return e11_model(l1, l2) if kind == "e11" else e2tilde_model(l1, l2)


kinds = st.sampled_from(["e11", "e2tilde"])


def test_e11_frame_at_origin():
    m = e11_model(1, 1)
    r = 1 / math.sqrt(2)
    assert np.allclose(m.frame_at([0, 0, 0])[:, 0], [-r, r, 0], atol=1e-15)
    assert np.allclose(m.metric_at([0, 0, 0]), np.eye(3), atol=1e-15)


def test_sol_metric_in_coordinates():
    m = e11_model(1, 1)
    z = 0.7
    assert np.allclose(m.metric_at([0, 0, z]), np.diag([math.exp(-2 * z), math.exp(2 * z), 1]), atol=1e-14)


def test_e2tilde_euclidean():
    m = e2tilde_model(1, 1)
    for p in np.random.default_rng(0).uniform(-3, 3, size=(20, 3)):
        assert np.allclose(m.metric_at(p), np.eye(3), atol=1e-14)


def test_e2tilde_e2_vertical():
    m = e2tilde_model(2, 0.5)
    assert np.allclose(m.frame_at([0.3, -1, 2.2])[:, 1], [0, 0, 1 / m.lambda3], atol=1e-15)
    assert m.lambda3 == 1.0


@pytest.mark.parametrize("kind, l1, l2, c", [
    ("e11", 1.3, 0.8, (1.69, -0.64, 0)),
    ("e2tilde", 2, 1, (1, 0, 4)),
])
def test_implied_constants(kind, l1, l2, c):
    m = _model(kind, l1, l2)
    assert np.allclose(m.structure_constants().c, c, atol=1e-14)


@given(kinds, lam, lam, point)
def test_frame_orthonormal(kind, l1, l2, p):
    m = _model(kind, l1, l2)
    F = m.frame_at(p)
    assert np.abs(F.T @ m.metric_at(p) @ F - np.eye(3)).max() < 1e-12


@given(kinds, lam, lam, point)
def test_coordinate_brackets_match_algebra(kind, l1, l2, p):
    m = _model(kind, l1, l2)
    C = m.structure_constants().structure_constants()
    E = np.eye(3)
    for i in range(3):
        for j in range(3):
            assert np.abs(coordinate_bracket(m, p, E[i], E[j]) - C[i, j]).max() < 1e-12


@given(kinds, lam, lam, point)
def test_frame_dz_matches_differences(kind, l1, l2, p):
    m = _model(kind, l1, l2)
    h = 1e-6
    dz = (m.frame_at(p + [0, 0, h]) - m.frame_at(p - [0, 0, h])) / (2 * h)
    assert np.abs(dz - m.frame_dz(p)).max() < 1e-7


def test_group_product_examples():
    assert np.allclose(group_product(e11_model(1, 1), [1, 2, 0], [3, 4, 0]), [4, 6, 0])
    assert np.allclose(group_product(e2tilde_model(1, 1), [0, 0, math.pi / 2], [1, 0, 0]),
                       [0, 1, math.pi / 2], atol=1e-15)


@given(kinds, point, point, point)
def test_group_laws(kind, p, q, r):
    m = _model(kind, 1.2, 0.9)
    assert np.abs(m.product(p, np.zeros(3)) - p).max() < 1e-12
    assert np.abs(m.product(np.zeros(3), p) - p).max() < 1e-12
    lhs = m.product(m.product(p, q), r)
    rhs = m.product(p, m.product(q, r))
    assert np.abs(lhs - rhs).max() < 1e-12 * max(1.0, np.abs(lhs).max())


@given(kinds, lam, lam, point, point)
def test_left_translation_is_isometry(kind, l1, l2, a, p):
    m = _model(kind, l1, l2)
    h = 1e-6
    dL = np.column_stack([
        (left_translation(m, a, p + h * e) - left_translation(m, a, p - h * e)) / (2 * h)
        for e in np.eye(3)
    ])
    pulled = dL.T @ m.metric_at(left_translation(m, a, p)) @ dL
    g = m.metric_at(p)
    # metric entries reach ~e^{2|z|}/lambda^2, so compare relative to their size
    assert np.abs(pulled - g).max() < 1e-8 * max(1.0, np.abs(g).max())


@given(kinds, lam, lam, point, point)
def test_left_translation_maps_frame_to_frame(kind, l1, l2, a, p):
    # left-invariance of the frame: dL_a e_i(p) = e_i(a p)
    m = _model(kind, l1, l2)
    h = 1e-6
    dL = np.column_stack([
        (left_translation(m, a, p + h * e) - left_translation(m, a, p - h * e)) / (2 * h)
        for e in np.eye(3)
    ])
    assert np.abs(dL @ m.frame_at(p) - m.frame_at(left_translation(m, a, p))).max() < 1e-8


def test_analytic_christoffel_symbol():
    G = e11_model(1, 1).christoffel([0.2, -0.4, 0.0])
    assert G[0, 0, 2] == pytest.approx(-1.0, abs=1e-14)
    assert np.abs(G - G.transpose(0, 2, 1)).max() == 0.0


def test_lambda_validation():
    with pytest.raises(InvalidParameterError):
        e11_model(0, 1)
    with pytest.raises(InvalidParameterError):
        e2tilde_model(1, -2)
    with pytest.warns(UserWarning):
        e11_model(0.5, 1)
    with pytest.warns(UserWarning):
        e2tilde_model(1, 2)


def test_normalizing_point_reduces_to_literal_when_c_is_zero():
    assert np.array_equal(thm53_normalizing_point(1, 0, 0.3, -0.2), literal_thm53_point(0, 0.3, -0.2))
    assert not np.allclose(thm53_normalizing_point(1, 0.8, 0.3, -0.2), literal_thm53_point(0.8, 0.3, -0.2))
