"""Coordinate realizations of E(1,1) and the universal cover of E(2).

Both models live on R^3 with coordinates (x, y, z) and have frames that
depend on z only, which keeps analytic derivatives short.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import UnimodularSpec
from .errors import InvalidParameterError

E11 = "E11"
E2TILDE = "E2tilde"


@dataclass(frozen=True)
class CoordModel:
    kind: str
    lambda1: float
    lambda2: float
    frame_fn: Callable[[float], np.ndarray]
    frame_dz_fn: Callable[[float], np.ndarray]
    metric_fn: Callable[[float], np.ndarray]
    product_fn: Callable[[np.ndarray, np.ndarray], np.ndarray]

    @property
    def lambda3(self) -> float:
        return 1.0 / (self.lambda1 * self.lambda2)

    def frame_at(self, p) -> np.ndarray:
        """3x3 matrix whose columns are e1, e2, e3 in coordinates."""
        return self.frame_fn(float(p[2]))

    def frame_dz(self, p) -> np.ndarray:
        return self.frame_dz_fn(float(p[2]))

    def metric_at(self, p) -> np.ndarray:
        return self.metric_fn(float(p[2]))

    def coframe_at(self, p) -> np.ndarray:
        """Rows are the dual 1-forms; maps coordinate vectors to frame coefficients."""
        return np.linalg.inv(self.frame_at(p))

    def product(self, p, q) -> np.ndarray:
        return self.product_fn(np.asarray(p, float), np.asarray(q, float))

    def metric_derivatives(self, p) -> np.ndarray:
        """``dg[m, i, j] = d g_ij / d x^m``, from the analytic frame derivative."""
        F = self.frame_at(p)
        W = np.linalg.inv(F)
        dW = -W @ self.frame_dz(p) @ W
        dg = np.zeros((3, 3, 3))
        dg[2] = dW.T @ W + W.T @ dW
        return dg

    def christoffel(self, p) -> np.ndarray:
        """Coordinate Christoffel symbols ``G[k, i, j]`` (upper index first)."""
        g_inv = np.linalg.inv(self.metric_at(p))
        dg = self.metric_derivatives(p)
        # lowered[l, i, j] = d_i g_jl + d_j g_il - d_l g_ij
        lowered = np.einsum("ijl->lij", dg) + np.einsum("jil->lij", dg) - dg
        return 0.5 * np.einsum("kl,lij->kij", g_inv, lowered)

    def structure_constants(self) -> UnimodularSpec:
        l1, l2 = self.lambda1, self.lambda2
        if self.kind == E11:
            return UnimodularSpec(l1 * l1, -l2 * l2, 0.0)
        return UnimodularSpec(l2 * l2, 0.0, l1 * l1)

    def frame_components(self, p, v) -> np.ndarray:
        return np.linalg.solve(self.frame_at(p), np.asarray(v, float))


def _check_lambdas(l1, l2):
    if not (l1 > 0 and l2 > 0):
        raise InvalidParameterError(f"lambda parameters must be positive, got ({l1}, {l2})")


def e11_model(lambda1: float, lambda2: float) -> CoordModel:
    l1, l2 = float(lambda1), float(lambda2)
    _check_lambdas(l1, l2)
    if l1 < l2:
        warnings.warn("E(1,1) metrics are normalized with lambda1 >= lambda2", stacklevel=2)
    l3 = 1.0 / (l1 * l2)
    r2 = math.sqrt(2.0)

    def frame(z):
        ez, emz = math.exp(z), math.exp(-z)
        return np.array([
            [-ez / (l1 * r2), ez / (l2 * r2), 0.0],
            [emz / (l1 * r2), emz / (l2 * r2), 0.0],
            [0.0, 0.0, 1.0 / l3],
        ])

    def frame_dz(z):
        ez, emz = math.exp(z), math.exp(-z)
        return np.array([
            [-ez / (l1 * r2), ez / (l2 * r2), 0.0],
            [-emz / (l1 * r2), -emz / (l2 * r2), 0.0],
            [0.0, 0.0, 0.0],
        ])

    def metric(z):
        w1 = np.array([-math.exp(-z), math.exp(z), 0.0])
        w2 = np.array([math.exp(-z), math.exp(z), 0.0])
        g = 0.5 * l1 * l1 * np.outer(w1, w1) + 0.5 * l2 * l2 * np.outer(w2, w2)
        g[2, 2] += l3 * l3
        return g

    def product(p, q):
        x, y, z = p
        return np.array([x + math.exp(z) * q[0], y + math.exp(-z) * q[1], z + q[2]])

    return CoordModel(E11, l1, l2, frame, frame_dz, metric, product)


def e2tilde_model(lambda1: float, lambda2: float) -> CoordModel:
    l1, l2 = float(lambda1), float(lambda2)
    _check_lambdas(l1, l2)
    if not (l1 > l2 or (l1 == 1.0 and l2 == 1.0)):
        warnings.warn(
            "E(2)~ metrics are normalized with lambda1 > lambda2 or lambda1 = lambda2 = 1",
            stacklevel=2,
        )
    l3 = 1.0 / (l1 * l2)

    def frame(z):
        c, s = math.cos(z), math.sin(z)
        return np.array([
            [-s / l2, 0.0, c / l1],
            [c / l2, 0.0, s / l1],
            [0.0, 1.0 / l3, 0.0],
        ])

    def frame_dz(z):
        c, s = math.cos(z), math.sin(z)
        return np.array([
            [-c / l2, 0.0, -s / l1],
            [-s / l2, 0.0, c / l1],
            [0.0, 0.0, 0.0],
        ])

    def metric(z):
        wa = np.array([math.cos(z), math.sin(z), 0.0])
        wb = np.array([-math.sin(z), math.cos(z), 0.0])
        g = l1 * l1 * np.outer(wa, wa) + l2 * l2 * np.outer(wb, wb)
        g[2, 2] += l3 * l3
        return g

    def product(p, q):
        x, y, z = p
        c, s = math.cos(z), math.sin(z)
        return np.array([x + q[0] * c - q[1] * s, y + q[0] * s + q[1] * c, z + q[2]])

    return CoordModel(E2TILDE, l1, l2, frame, frame_dz, metric, product)


def group_product(model: CoordModel, p, q) -> np.ndarray:
    return model.product(p, q)


def left_translation(model: CoordModel, a, p) -> np.ndarray:
    return model.product(a, p)


def coordinate_bracket(model: CoordModel, p, X, Y) -> np.ndarray:
    """Bracket of two frame fields (given as frame indices or coefficient vectors).

    Uses [X, Y]^k = X^z d_z Y^k - Y^z d_z X^k, valid because frame
    coefficients depend on z only. Result is in frame coefficients.
    """
    F, dF = model.frame_at(p), model.frame_dz(p)
    X, Y = np.asarray(X, float), np.asarray(Y, float)
    Xc, Yc = F @ X, F @ Y
    br = Xc[2] * (dF @ Y) - Yc[2] * (dF @ X)
    return np.linalg.solve(F, br)


def thm53_normalizing_point(lambda1: float, c: float, a1: float, a2: float) -> np.ndarray:
    """Group element whose left translation puts the explicit type-(ii) Sol surface on {x = -y}.

    L_A(x, y, z) = (A_x + e^{A_z} x, A_y + e^{-A_z} y, A_z + z); the z-shift
    -c/2 balances the exponentials and the x, y shifts cancel a1, a2.
    """
    del lambda1  # the normalization does not depend on the metric scale
    return np.array([-a1 * math.exp(-c / 2), -a2 * math.exp(c / 2), -c / 2])


def literal_thm53_point(c: float, a1: float, a2: float) -> np.ndarray:
    """The element diag(e^{c/2}, e^{-c/2}) with translation (-a1, -a2), read as (x, y, z)."""
    return np.array([-a1, -a2, c / 2])
