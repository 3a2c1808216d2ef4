"""Levi-Civita connection and curvature of left-invariant metrics.

Everything here is frame-algebraic: the canonical frame is left-invariant
and orthonormal, so connection coefficients are constants and the
curvature is a polynomial in them.

Curvature convention::

    R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
    K_ij = <R(e_i, e_j) e_j, e_i>
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import GroupSpec, NonUnimodularSpec, UnimodularSpec, mu_constants
from .errors import InvalidFrameError


@dataclass(frozen=True)
class ConnectionTable:
    """``gamma[i, j, k] = <nabla_{e_i} e_j, e_k>`` (0-based storage)."""

    gamma: np.ndarray

    def coef(self, i: int, j: int, k: int) -> float:
        """1-based accessor."""
        return float(self.gamma[i - 1, j - 1, k - 1])

    def nabla(self, i: int, j: int) -> np.ndarray:
        """Frame coefficients of nabla_{e_i} e_j, 1-based indices."""
        return self.gamma[i - 1, j - 1].copy()


@dataclass(frozen=True)
class CurvatureData:
    R: np.ndarray
    K12: float
    K23: float
    K13: float
    ricci: np.ndarray

    def component(self, i: int, j: int, k: int, l: int) -> float:
        """``<R(e_i, e_j) e_k, e_l>`` with 1-based indices."""
        return float(self.R[i - 1, j - 1, k - 1, l - 1])

    @property
    def sectional(self) -> tuple[float, float, float]:
        return (self.K12, self.K23, self.K13)

    def ricci_matrix(self) -> np.ndarray:
        return ricci_from_riemann(self.R)


def levi_civita(spec: GroupSpec) -> ConnectionTable:
    g = np.zeros((3, 3, 3))
    if isinstance(spec, UnimodularSpec):
        m1, m2, m3 = mu_constants(spec).as_array()
        g[0, 1, 2], g[0, 2, 1] = m1, -m1
        g[1, 0, 2], g[1, 2, 0] = -m2, m2
        g[2, 0, 1], g[2, 1, 0] = m3, -m3
    else:
        xi, eta = spec.xi, spec.eta
        g[0, 1, 2], g[0, 2, 1] = eta, -eta
        g[1, 0, 1], g[1, 0, 2] = -(1 + xi), -xi * eta
        g[1, 1, 0] = 1 + xi
        g[1, 2, 0] = xi * eta
        g[2, 0, 1], g[2, 0, 2] = -xi * eta, -(1 - xi)
        g[2, 1, 0] = xi * eta
        g[2, 2, 0] = 1 - xi
    return ConnectionTable(g)


def koszul_connection(spec: GroupSpec) -> ConnectionTable:
    """Connection from the Koszul formula for left-invariant orthonormal fields.

    2<nabla_X Y, Z> = <[X,Y],Z> - <[Y,Z],X> + <[Z,X],Y>; the derivative
    terms vanish because all inner products of frame fields are constant.
    """
    C = spec.structure_constants()
    gamma = 0.5 * (C - np.einsum("jki->ijk", C) + np.einsum("kij->ijk", C))
    return ConnectionTable(gamma)


def riemann_from_connection(gamma: np.ndarray, C: np.ndarray) -> np.ndarray:
    """R[i,j,k,l] = <R(e_i,e_j)e_k, e_l> for constant coefficients."""
    # nabla_i nabla_j e_k = sum_m gamma[j,k,m] gamma[i,m,l] e_l
    term = np.einsum("jkm,iml->ijkl", gamma, gamma)
    return term - term.transpose(1, 0, 2, 3) - np.einsum("ijm,mkl->ijkl", C, gamma)


def ricci_from_riemann(R: np.ndarray) -> np.ndarray:
    """Ric(e_j, e_k) = sum_i <R(e_i, e_j) e_k, e_i>."""
    return np.einsum("ijki->jk", R)


def riemann_tensor(spec: GroupSpec) -> CurvatureData:
    R = riemann_from_connection(levi_civita(spec).gamma, spec.structure_constants())
    ric = ricci_from_riemann(R)
    return CurvatureData(
        R=R,
        K12=float(R[0, 1, 1, 0]),
        K23=float(R[1, 2, 2, 1]),
        K13=float(R[0, 2, 2, 0]),
        ricci=np.diag(ric).copy(),
    )


def sectional_closed_form(spec: GroupSpec) -> tuple[float, float, float]:
    if isinstance(spec, UnimodularSpec):
        c1, c2, c3 = spec.c
        m1, m2, m3 = mu_constants(spec).as_array()
        return (c3 * m3 - m1 * m2, c1 * m1 - m2 * m3, c2 * m2 - m1 * m3)
    xi, eta = spec.xi, spec.eta
    e2 = eta * eta
    K12 = -(xi * e2 + (1 + xi) ** 2 + xi * e2 * (1 + xi))
    K23 = xi * xi * (1 + e2) - 1
    K13 = xi * e2 - (1 - xi) ** 2 + xi * e2 * (1 - xi)
    return (K12, K23, K13)


def check_orthonormal(Q, tol: float = 1e-12) -> np.ndarray:
    Q = np.asarray(Q, dtype=float)
    if Q.shape != (3, 3):
        raise InvalidFrameError(f"expected a 3x3 frame, got shape {Q.shape}")
    err = np.abs(Q.T @ Q - np.eye(3)).max()
    if err > tol:
        raise InvalidFrameError(f"frame is not orthonormal (|Q^T Q - I| = {err:.3e})")
    return Q


def frame_change(R, Q, tol: float = 1e-12) -> np.ndarray:
    """Components of a curvature 4-tensor in the frame ``f_a = sum_i Q[i, a] e_i``."""
    if isinstance(R, CurvatureData):
        R = R.R
    Q = check_orthonormal(Q, tol)
    return np.einsum("ijkl,ia,jb,kc,ld->abcd", R, Q, Q, Q, Q, optimize=True)


def curvature_form(R, X, Y, Z, W) -> float:
    """<R(X,Y)Z, W> for frame-coefficient vectors."""
    if isinstance(R, CurvatureData):
        R = R.R
    return float(np.einsum("ijkl,i,j,k,l->", R, X, Y, Z, W))
