"""Finite-difference curvature and a fixed-step RK4 integrator.

These only touch ``metric_at`` and ``frame_at`` of a model, so they stay
independent of the frame-algebraic formulas in ``geometry``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConditioningError, InvalidParameterError
from .models import CoordModel


@dataclass(frozen=True)
class FDConfig:
    h: float = 1e-5
    richardson: bool = True
    # second derivatives: plain central differences at h=1e-5 lose ~6 digits to roundoff;
    # with Richardson, 5e-3 balances roundoff against the h^4 error (~1e-10 on O(1) inputs)
    h_curv: float = 5e-3

    def __post_init__(self):
        if not (self.h > 0 and self.h_curv > 0):
            raise InvalidParameterError("finite-difference steps must be positive")


def _metric(model, p, cond_max=1e8):
    g = model.metric_at(p)
    if np.linalg.cond(g) > cond_max:
        raise ConditioningError(f"metric condition number exceeds {cond_max:g} at {p}")
    return g


def fd_metric_gradient(model: CoordModel, p, h: float) -> np.ndarray:
    """``dg[m, i, j]`` by central differences."""
    p = np.asarray(p, float)
    dg = np.empty((3, 3, 3))
    for m in range(3):
        step = np.zeros(3)
        step[m] = h
        dg[m] = (model.metric_at(p + step) - model.metric_at(p - step)) / (2 * h)
    return dg


def _hessian_plain(model, p, h):
    d2 = np.empty((3, 3, 3, 3))
    g0 = model.metric_at(p)
    I = np.eye(3) * h
    for a in range(3):
        d2[a, a] = (model.metric_at(p + I[a]) - 2 * g0 + model.metric_at(p - I[a])) / (h * h)
        for b in range(a + 1, 3):
            val = (
                model.metric_at(p + I[a] + I[b]) - model.metric_at(p + I[a] - I[b])
                - model.metric_at(p - I[a] + I[b]) + model.metric_at(p - I[a] - I[b])
            ) / (4 * h * h)
            d2[a, b] = d2[b, a] = val
    return d2


def fd_metric_hessian(model: CoordModel, p, cfg: FDConfig) -> np.ndarray:
    """``d2g[m, n, i, j]`` = second partials of the metric."""
    p = np.asarray(p, float)
    if not cfg.richardson:
        return _hessian_plain(model, p, cfg.h_curv)
    coarse = _hessian_plain(model, p, cfg.h_curv)
    fine = _hessian_plain(model, p, cfg.h_curv / 2)
    return (4 * fine - coarse) / 3


def _christoffel_from(g_inv, dg):
    lowered = np.einsum("ijl->lij", dg) + np.einsum("jil->lij", dg) - dg
    return 0.5 * np.einsum("kl,lij->kij", g_inv, lowered)


def fd_christoffels(model: CoordModel, p, cfg: FDConfig = FDConfig()) -> np.ndarray:
    """Coordinate Christoffel symbols ``G[k, i, j]`` from differenced metric values."""
    g = _metric(model, p)
    return _christoffel_from(np.linalg.inv(g), fd_metric_gradient(model, p, cfg.h))


def fd_coordinate_riemann(model: CoordModel, p, cfg: FDConfig = FDConfig()) -> np.ndarray:
    """Fully covariant ``R[i,j,k,l] = g(R(d_i, d_j) d_k, d_l)``."""
    p = np.asarray(p, float)
    g = _metric(model, p)
    g_inv = np.linalg.inv(g)
    if cfg.richardson:
        h = cfg.h_curv
        dg = (4 * fd_metric_gradient(model, p, h / 2) - fd_metric_gradient(model, p, h)) / 3
    else:
        dg = fd_metric_gradient(model, p, cfg.h)
    d2g = fd_metric_hessian(model, p, cfg)
    G = _christoffel_from(g_inv, dg)

    # dG[m, k, i, j] = d_m G^k_ij
    dginv = -np.einsum("ka,mab,bl->mkl", g_inv, dg, g_inv)
    lowered = np.einsum("ijl->lij", dg) + np.einsum("jil->lij", dg) - dg
    # d2g[m, l, i, j] is already d_m d_l g_ij
    dlowered = np.einsum("mijl->mlij", d2g) + np.einsum("mjil->mlij", d2g) - d2g
    dG = 0.5 * (np.einsum("mkl,lij->mkij", dginv, lowered) + np.einsum("kl,mlij->mkij", g_inv, dlowered))

    # R(d_i, d_j) d_k = (d_i G^l_jk - d_j G^l_ik + G^m_jk G^l_im - G^m_ik G^l_jm) d_l
    up = (
        np.einsum("iljk->ijkl", dG) - np.einsum("jlik->ijkl", dG)
        + np.einsum("mjk,lim->ijkl", G, G) - np.einsum("mik,ljm->ijkl", G, G)
    )
    return np.einsum("ijkm,ml->ijkl", up, g)


def fd_riemann_frame(model: CoordModel, p, cfg: FDConfig = FDConfig()):
    """Frame components of the differenced curvature plus (K12, K23, K13)."""
    F = model.frame_at(p)
    Rc = fd_coordinate_riemann(model, p, cfg)
    R = np.einsum("ijkl,ia,jb,kc,ld->abcd", Rc, F, F, F, F, optimize=True)
    return R, (float(R[0, 1, 1, 0]), float(R[1, 2, 2, 1]), float(R[0, 2, 2, 0]))


def rk4(field, y0, t0: float, t1: float, steps: int):
    """Classical RK4 with a fixed step; returns (ts, ys) including both endpoints."""
    if steps < 1:
        raise InvalidParameterError("rk4 needs at least one step")
    y = np.atleast_1d(np.asarray(y0, dtype=float)).copy()
    ts = np.linspace(t0, t1, steps + 1)
    ys = np.empty((steps + 1,) + y.shape)
    ys[0] = y
    h = (t1 - t0) / steps
    for n in range(steps):
        t = ts[n]
        k1 = np.asarray(field(t, y))
        k2 = np.asarray(field(t + h / 2, y + h / 2 * k1))
        k3 = np.asarray(field(t + h / 2, y + h / 2 * k2))
        k4 = np.asarray(field(t + h, y + h * k3))
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        ys[n + 1] = y
    return ts, ys
