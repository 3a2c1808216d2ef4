"""Curvature criteria for (vertical) harmonicity of the tangential Gauss map.

The Gauss map is never built as a map into the Grassmannian bundle; all
tests are pointwise statements about ambient curvature components taken
in a principal frame of the surface.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import InvalidFrameError, InvalidParameterError
from .geometry import CurvatureData, frame_change
from .surfaces import SurfaceJet

TOL = 1e-9
CASES = ("i", "ii", "iii", "iv", "v", "vi", "vii")


@dataclass
class GaussDiagnostics:
    r1213: float
    r2123: float
    harmonicity_gap: float
    lemma32_residual: float
    cases: frozenset
    vertical_harmonic: bool
    harmonic: bool
    conformal: bool
    minimal: bool
    umbilic: bool
    raw: dict = field(default_factory=dict)


def _principal_components(R, jet: SurfaceJet) -> np.ndarray:
    return frame_change(R, jet.principal_frame, tol=1e-9)


def vertical_residuals(R, jet: SurfaceJet) -> tuple[float, float]:
    """(R_1213, R_2123) in the principal frame (eps1, eps2, eps3 = N)."""
    Rp = _principal_components(R, jet)
    return float(Rp[0, 1, 0, 2]), float(Rp[1, 0, 1, 2])


def harmonicity_residual(R, jet: SurfaceJet) -> float:
    """R_3113 - R_3223 in the principal frame."""
    Rp = _principal_components(R, jet)
    return float(Rp[2, 0, 0, 2] - Rp[2, 1, 1, 2])


def normal_component_residual(R, tangent_frame, N, tol: float = 1e-9) -> float:
    """max |<R(X, Y) Z, N>| over X, Y, Z drawn from an orthonormal tangent frame."""
    if isinstance(R, CurvatureData):
        R = R.R
    t1, t2 = (np.asarray(t, float) for t in tangent_frame)
    N = np.asarray(N, float)
    Q = np.column_stack([t1, t2, N])
    if np.abs(Q.T @ Q - np.eye(3)).max() > tol:
        raise InvalidFrameError("tangent frame and normal must be orthonormal")
    tangents = (t1, t2)
    best = 0.0
    for X, Y, Z in product(tangents, repeat=3):
        best = max(best, abs(float(np.einsum("ijkl,i,j,k,l->", R, X, Y, Z, N))))
    return best


def _k_equal(a, b, tol):
    return abs(a - b) < tol * max(1.0, abs(a), abs(b))


def lemma33_classify(K, normal, tol: float = TOL) -> frozenset:
    """Every alternative of the normal-form lemma that holds within tol.

    K is (K12, K23, K13) in a Ricci-diagonalizing frame and normal the
    coefficients (alpha, beta, gamma) of the unit normal in that frame.
    """
    K12, K23, K13 = (float(k) for k in K)
    alpha, beta, gamma = (float(x) for x in normal)
    if abs(alpha * alpha + beta * beta + gamma * gamma - 1.0) > 1e-10:
        raise InvalidParameterError("normal must be a unit vector")
    a0, b0, g0 = abs(alpha) < tol, abs(beta) < tol, abs(gamma) < tol
    checks = {
        "i": a0 and b0,
        "ii": a0 and g0,
        "iii": b0 and g0,
        "iv": a0 and _k_equal(K12, K13, tol),
        "v": b0 and _k_equal(K12, K23, tol),
        "vi": g0 and _k_equal(K13, K23, tol),
        "vii": _k_equal(K12, K23, tol) and _k_equal(K23, K13, tol) and _k_equal(K12, K13, tol),
    }
    return frozenset(c for c in CASES if checks[c])


def conformality(jet: SurfaceJet, tol: float = TOL) -> bool:
    return abs(jet.H_trace) < tol or jet.umbilic


def gauss_diagnostics(curv: CurvatureData, jet: SurfaceJet, tol: float = TOL) -> GaussDiagnostics:
    r1, r2 = vertical_residuals(curv, jet)
    gap = harmonicity_residual(curv, jet)
    l32 = normal_component_residual(curv, (jet.frame[:, 0], jet.frame[:, 1]), jet.frame[:, 2])
    vertical = abs(r1) < tol and abs(r2) < tol
    minimal = abs(jet.H_trace) < tol
    return GaussDiagnostics(
        r1213=r1,
        r2123=r2,
        harmonicity_gap=gap,
        lemma32_residual=l32,
        cases=lemma33_classify(curv.sectional, jet.normal_components(), tol),
        vertical_harmonic=vertical,
        # harmonicity is only decided for minimal surfaces
        harmonic=vertical and minimal and abs(gap) < tol,
        conformal=conformality(jet, tol),
        minimal=minimal,
        umbilic=jet.umbilic,
    )
