import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmcgauss.algebra import NonUnimodularSpec, UnimodularSpec
from cmcgauss.errors import InvalidFrameError, InvalidParameterError
from cmcgauss.gaussmap import (conformality, gauss_diagnostics, harmonicity_residual,
                               lemma33_classify, normal_component_residual, vertical_residuals)
from cmcgauss.geometry import frame_change, riemann_tensor
from cmcgauss.surfaces import (FRAME_IDS, PATCH_IDS, catalog_frame_surface, catalog_patch,
                               frame_jet, invariant_frame_jet, surface_jet)

R2 = 1 / math.sqrt(2)
GRID = np.linspace(-2, 2, 20)


def _curv(patch):
    return riemann_tensor(patch.model.structure_constants())


@pytest.mark.parametrize("sid, lams", [("thm53-i", (1.3, 0.8)), ("thm53-i", (1, 1)), ("thm54", (2, 1))])
def test_vertical_residuals_vanish(sid, lams):
    patch = catalog_patch(sid, *lams)
    for u, v in [(0.3, -0.2), (1.5, 1.1), (-2, 0.7)]:
        r1, r2 = vertical_residuals(_curv(patch), surface_jet(patch, u, v))
        assert abs(r1) < 1e-12 and abs(r2) < 1e-12


def test_nonunimodular_invariant_surface_residuals():
    spec = catalog_frame_surface("nonuni-e23", 0.5, 1)
    curv, jet = riemann_tensor(spec.group), invariant_frame_jet(spec)
    # brute force: components R(eps_i, eps_j, eps_k, N) straight from the 4-tensor
    P = jet.principal_frame
    direct = np.einsum("ijkl,i,j,k,l->", curv.R, P[:, 0], P[:, 1], P[:, 0], P[:, 2])
    r1, r2 = vertical_residuals(curv, jet)
    assert r1 == pytest.approx(direct, abs=1e-15)
    assert abs(r1) < 1e-14 and abs(r2) < 1e-14


def test_sol_harmonicity_terms_equal():
    patch = catalog_patch("thm53-i", 1, 1)
    curv = _curv(patch)
    jet = surface_jet(patch, 0.4, 0.1)
    Rp = frame_change(curv, jet.principal_frame)
    half = (curv.K13 + curv.K23) / 2
    assert Rp[2, 0, 0, 2] == pytest.approx(half, abs=1e-12)
    assert Rp[2, 1, 1, 2] == pytest.approx(half, abs=1e-12)
    assert harmonicity_residual(curv, jet) == pytest.approx(0, abs=1e-12)


@given(st.floats(-1, 1).filter(lambda b: abs(b) > 1e-3))
def test_su2_admissible_configuration_is_harmonic(beta):
    # c1 = c2 + c3; N = beta e2 + gamma e3 with e1 tangent
    gamma = math.sqrt(1 - beta * beta)
    curv = riemann_tensor(UnimodularSpec(3, 2, 1))
    k = 2 * beta ** 2 + gamma ** 2
    jet = frame_jet([1, 0, 0], [0, -gamma, beta], [0, beta, gamma], [[0, k], [k, 0]])
    r1, r2 = vertical_residuals(curv, jet)
    assert max(abs(r1), abs(r2)) < 1e-12
    assert abs(harmonicity_residual(curv, jet)) < 1e-12


def test_flat_space_residual_zero():
    jet = frame_jet([1, 0, 0], [0, R2, R2], [0, -R2, R2], [[1, 2], [2, -3]])
    assert harmonicity_residual(riemann_tensor(UnimodularSpec(0, 0, 0)), jet) == 0


def test_normal_component_examples():
    E = np.eye(3)
    assert normal_component_residual(riemann_tensor(UnimodularSpec(1, 0, 4)), (E[0], E[2]), E[1]) < 1e-14
    rng = np.random.default_rng(5)
    Q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    assert normal_component_residual(riemann_tensor(UnimodularSpec(2, 2, 2)), (Q[:, 0], Q[:, 1]), Q[:, 2]) < 1e-14


@pytest.mark.parametrize("c, expected", [((3, 2, 1), 0.0), ((4, 2, 1), 0.5)])
def test_normal_component_mixed_frame(c, expected):
    """Oracle: sum over the 8 triples done by hand-written component loops."""
    curv = riemann_tensor(UnimodularSpec(*c))
    t1, t2, N = np.array([1, 0, 0]), np.array([0, R2, R2]), np.array([0, -R2, R2])
    brute = 0.0
    for X in (t1, t2):
        for Y in (t1, t2):
            for Z in (t1, t2):
                s = sum(curv.R[i, j, k, l] * X[i] * Y[j] * Z[k] * N[l]
                        for i in range(3) for j in range(3) for k in range(3) for l in range(3))
                brute = max(brute, abs(s))
    got = normal_component_residual(curv, (t1, t2), N)
    assert got == pytest.approx(brute, abs=1e-14)
    # |K12 - K13| / 2 for this frame
    assert got == pytest.approx(expected, abs=1e-12)


def test_normal_component_rejects_bad_frame():
    with pytest.raises(InvalidFrameError):
        normal_component_residual(riemann_tensor(UnimodularSpec(1, 1, 1)), ([1, 0, 0], [1, 1, 0]), [0, 0, 1])


def test_lemma33_examples():
    K = (2, -2, 2)
    assert lemma33_classify(K, (0, 0, 1), 1e-9) == {"i", "iv"}
    assert lemma33_classify(K, (0, 0.6, 0.8), 1e-9) == {"iv"}
    assert "vii" in lemma33_classify((1, 1, 1), (0.6, 0, 0.8), 1e-9)
    assert lemma33_classify((1, 2, 3), (0.6, 0, 0.8), 1e-9) == frozenset()
    with pytest.raises(InvalidParameterError):
        lemma33_classify(K, (1, 1, 0), 1e-9)


@given(st.floats(-5, 5), st.floats(0, 2 * math.pi), st.floats(0, math.pi))
def test_lemma33_constant_curvature_always_vii(k, phi, th):
    normal = (math.sin(th) * math.cos(phi), math.sin(th) * math.sin(phi), math.cos(th))
    assert "vii" in lemma33_classify((k, k, k), normal, 1e-9)


def test_conformality_examples():
    assert conformality(surface_jet(catalog_patch("thm53-i", 1.2, 0.9), 0.1, 0.2))
    jet = invariant_frame_jet(catalog_frame_surface("nonuni-e23", 0.5, 1))
    assert sorted(jet.principal_curvatures) == pytest.approx([1 - R2, 1 + R2], abs=1e-14)
    assert not conformality(jet)
    assert conformality(frame_jet([1, 0, 0], [0, 1, 0], [0, 0, 1], 0.7 * np.eye(2)))


def _catalog_jets():
    for sid in PATCH_IDS:
        for lams in ((1.0, 1.0), (1.6, 0.7)):
            if sid == "thm54" and lams == (1.0, 1.0):
                lams = (2.0, 1.0)
            patch = catalog_patch(sid, *lams)
            curv = _curv(patch)
            for u in GRID:
                for v in GRID:
                    yield sid, curv, surface_jet(patch, u, v)
    for sid in FRAME_IDS:
        for xi, eta in ((0.5, 1.0), (0.5, 0.0), (1.7, 0.3)):
            spec = catalog_frame_surface(sid, xi, eta)
            yield sid, riemann_tensor(spec.group), invariant_frame_jet(spec)


def test_vertical_residuals_iff_normal_component():
    seen = {True: 0, False: 0}
    for _, curv, jet in _catalog_jets():
        r1, r2 = vertical_residuals(curv, jet)
        vertical = max(abs(r1), abs(r2)) < 1e-10
        l32 = normal_component_residual(curv, (jet.frame[:, 0], jet.frame[:, 1]), jet.frame[:, 2])
        assert vertical == (l32 < 1e-10)
        seen[vertical] += 1
    assert seen[True] and seen[False]


def test_theorem_surfaces_have_nonempty_cases():
    for sid, curv, jet in _catalog_jets():
        d = gauss_diagnostics(curv, jet)
        if d.vertical_harmonic and not d.umbilic:
            assert d.cases, sid
        if sid == "thm54":
            a, _, g = jet.normal_components()
            assert abs(a) < 1e-12 and abs(g) < 1e-12 and "ii" in d.cases


@given(st.floats(0.01, 100), st.floats(-1, 1), st.floats(0, math.pi))
def test_residual_flags_scale(s, b, phi):
    g = math.sqrt(1 - b * b)
    curv = riemann_tensor(UnimodularSpec(4, 2, 1))
    t2 = np.array([0, -g, b])
    jet = frame_jet([math.cos(phi), math.sin(phi) * t2[1], math.sin(phi) * t2[2]],
                    [-math.sin(phi), math.cos(phi) * t2[1], math.cos(phi) * t2[2]],
                    [0, b, g], [[0.3, 1], [1, -0.2]])
    r = np.array(vertical_residuals(curv, jet))
    rs = np.array(vertical_residuals(curv.R * s, jet))
    tol = 1e-3
    assert np.array_equal(np.abs(r) < tol, np.abs(rs) < tol * s)


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2),
       st.floats(0, 2 * math.pi), st.floats(0, math.pi), st.floats(0, 2 * math.pi))
def test_harmonic_implies_vertical(a, b, d, phi, th, psi):
    n = np.array([math.sin(th) * math.cos(phi), math.sin(th) * math.sin(phi), math.cos(th)])
    t = np.cross(n, [1, 0, 0] if abs(n[0]) < 0.9 else [0, 1, 0])
    t /= np.linalg.norm(t)
    t1 = math.cos(psi) * t + math.sin(psi) * np.cross(n, t)
    t2 = np.cross(n, t1)
    jet = frame_jet(t1, t2, n, [[a, b], [b, d]])
    for spec in (UnimodularSpec(3, 2, 1), NonUnimodularSpec(0.5, 1), UnimodularSpec(1, 1, 1)):
        diag = gauss_diagnostics(riemann_tensor(spec), jet)
        assert diag.vertical_harmonic == (abs(diag.r1213) < 1e-9 and abs(diag.r2123) < 1e-9)
        if diag.harmonic:
            assert diag.vertical_harmonic and diag.minimal
