"""Surface jets: fundamental forms, shape operator and principal frames.

Two kinds of surfaces are handled:

* ``ImmersedPatch``: an explicit parametrization into a coordinate model,
  with analytic derivatives when available and finite differences otherwise;
* ``FrameSurfaceSpec``: integral surfaces of a distribution spanned by two
  frame vectors of a Lie group, where everything is frame-algebraic.

Every jet records its tangent/normal frame in canonical-frame coefficients
(``jet.frame``) so curvature components can be taken in it directly.

Orientation: the normal makes (tangent1, tangent2, normal) positively
oriented. Shape operator: S X = -(nabla_X N)^T, with H_trace = tr S and
H_norm = H_trace / 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .algebra import GroupSpec, bracket, nonunimodular_from_xi_eta
from .errors import DegenerateImmersionError, InvalidParameterError
from .geometry import frame_change, levi_civita
from .models import CoordModel, e11_model, e2tilde_model

RANK_TOL = 1e-8
UMBILIC_TOL = 1e-9


@dataclass(frozen=True)
class ImmersedPatch:
    model: CoordModel
    f: Callable[[float, float], np.ndarray]
    df: Optional[Callable[[float, float], np.ndarray]] = None
    d2f: Optional[Callable[[float, float], np.ndarray]] = None
    h: float = 1e-5
    # Richardson base step for finite-difference second derivatives
    h2: float = 1e-3

    def point(self, u, v) -> np.ndarray:
        return np.asarray(self.f(u, v), float)

    def first_derivatives(self, u, v) -> np.ndarray:
        """3x2 matrix [f_u, f_v]."""
        if self.df is not None:
            return np.asarray(self.df(u, v), float)
        h = self.h
        fu = (self.point(u + h, v) - self.point(u - h, v)) / (2 * h)
        fv = (self.point(u, v + h) - self.point(u, v - h)) / (2 * h)
        return np.column_stack([fu, fv])

    def second_derivatives(self, u, v) -> np.ndarray:
        """Array (3, 2, 2) of second partials."""
        if self.d2f is not None:
            return np.asarray(self.d2f(u, v), float)
        coarse = self._second_plain(u, v, self.h2)
        fine = self._second_plain(u, v, self.h2 / 2)
        return (4 * fine - coarse) / 3

    def _second_plain(self, u, v, h):
        f = self.point
        f0 = f(u, v)
        fuu = (f(u + h, v) - 2 * f0 + f(u - h, v)) / (h * h)
        fvv = (f(u, v + h) - 2 * f0 + f(u, v - h)) / (h * h)
        fuv = (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) / (4 * h * h)
        out = np.empty((3, 2, 2))
        out[:, 0, 0], out[:, 1, 1] = fuu, fvv
        out[:, 0, 1] = out[:, 1, 0] = fuv
        return out


@dataclass
class SurfaceJet:
    point: Optional[np.ndarray]
    tangent1: np.ndarray
    tangent2: np.ndarray
    normal: np.ndarray
    frame: np.ndarray
    first_ff: np.ndarray
    shape: np.ndarray
    H_trace: float
    H_norm: float
    principal_curvatures: np.ndarray
    principal_basis: np.ndarray
    umbilic: bool
    symmetry_residual: float = 0.0
    weingarten_gap: float = 0.0
    extras: dict = field(default_factory=dict)

    @property
    def principal_frame(self) -> np.ndarray:
        """Columns eps1, eps2, N in canonical-frame coefficients."""
        P = self.frame.copy()
        P[:, :2] = self.frame[:, :2] @ self.principal_basis
        return P

    def normal_components(self) -> np.ndarray:
        """(alpha, beta, gamma) with N = alpha e1 + beta e2 + gamma e3."""
        return self.frame[:, 2].copy()


def principal_frame(shape, tol: float = UMBILIC_TOL):
    """Eigen-decomposition of a 2x2 shape matrix.

    Returns (curvatures, basis, umbilic). At umbilic points the basis is the
    identity and the curvatures are the diagonal entries.
    """
    S = np.asarray(shape, float)
    S = 0.5 * (S + S.T)
    vals, vecs = np.linalg.eigh(S)
    scale = max(1.0, np.abs(vals).max())
    if abs(vals[1] - vals[0]) < tol * scale:
        return np.diag(S).copy(), np.eye(2), True
    if abs(S[0, 1]) < tol * scale:
        # already diagonal: keep the given basis
        return np.diag(S).copy(), np.eye(2), False
    # fix orientation so the principal basis keeps the tangent orientation
    if np.linalg.det(vecs) < 0:
        vecs[:, 1] *= -1
    return vals, vecs, False


def _make_jet(point, t1, t2, N, frame, first_ff, shape, **extra) -> SurfaceJet:
    vals, basis, umb = principal_frame(shape)
    tr = float(np.trace(shape))
    return SurfaceJet(
        point=point, tangent1=t1, tangent2=t2, normal=N, frame=frame,
        first_ff=first_ff, shape=shape, H_trace=tr, H_norm=tr / 2,
        principal_curvatures=vals, principal_basis=basis, umbilic=umb, **extra,
    )


def frame_jet(tangent1, tangent2, normal, shape) -> SurfaceJet:
    """Jet given directly in canonical-frame coefficients (abstract groups)."""
    t1, t2, N = (np.asarray(x, float) for x in (tangent1, tangent2, normal))
    frame = np.column_stack([t1, t2, N])
    S = np.asarray(shape, float)
    return _make_jet(None, t1, t2, N, frame, np.eye(2), S,
                     symmetry_residual=float(np.abs(S - S.T).max()))


def surface_jet(patch: ImmersedPatch, u: float, v: float) -> SurfaceJet:
    model = patch.model
    p = patch.point(u, v)
    J = patch.first_derivatives(u, v)
    D2 = patch.second_derivatives(u, v)
    g = model.metric_at(p)
    G = model.christoffel(p)

    sv = np.linalg.svd(J, compute_uv=False)
    if sv[-1] < RANK_TOL * max(1.0, sv[0]):
        raise DegenerateImmersionError(f"df has rank < 2 at (u, v) = ({u}, {v})")

    I = J.T @ g @ J
    # Gram-Schmidt of (f_u, f_v): T = J @ B
    a = 1.0 / math.sqrt(I[0, 0])
    proj = I[0, 1] / I[0, 0]
    w2 = I[1, 1] - proj * I[0, 1]
    b = 1.0 / math.sqrt(w2)
    B = np.array([[a, -proj * b], [0.0, b]])
    T = J @ B

    omega = np.cross(J[:, 0], J[:, 1])
    n = np.linalg.solve(g, omega)
    nn = math.sqrt(omega @ n)
    N = n / nn

    # second fundamental form h_ab = g(f_ab + G(f_a, f_b), N)
    cov = D2 + np.einsum("kij,ia,jb->kab", G, J, J)
    h = np.einsum("kab,kl,l->ab", cov, g, N)
    shape = B.T @ h @ B

    # Weingarten route: S X = -(nabla_X N), with d_a N differentiated analytically
    dg = model.metric_derivatives(p)
    dN = np.empty((3, 2))
    for k in range(2):
        dg_a = np.einsum("mij,m->ij", dg, J[:, k])
        domega = np.cross(D2[:, 0, k], J[:, 1]) + np.cross(J[:, 0], D2[:, 1, k])
        dn = np.linalg.solve(g, domega - dg_a @ n)
        dnn2 = 2 * dn @ g @ n + n @ dg_a @ n
        dN[:, k] = dn / nn - n * (dnn2 / (2 * nn)) / nn ** 2
    nablaN = dN + np.einsum("kij,ia,j->ka", G, J, N)
    # S_w[i, j] = g(-nabla_{t_j} N, t_i), the operator matrix in the orthonormal basis
    S_w = -(T.T @ g @ (nablaN @ B))

    W = np.linalg.inv(model.frame_at(p))
    frame = W @ np.column_stack([T, N])
    return _make_jet(
        p, T[:, 0], T[:, 1], N, frame, I, shape,
        symmetry_residual=float(np.abs(S_w - S_w.T).max()),
        weingarten_gap=float(np.abs(S_w - shape).max()),
        extras={"uv": (u, v), "J": J, "shape_weingarten": S_w},
    )


def tangent_plane_curvature(R, jet: SurfaceJet) -> float:
    """Ambient sectional curvature of the tangent plane of a jet."""
    Rf = frame_change(R, jet.frame, tol=1e-9)
    return float(Rf[0, 1, 1, 0])


def gauss_curvature(jet: SurfaceJet, K_tangentplane: float) -> float:
    return float(K_tangentplane + np.linalg.det(jet.shape))


def shape_in_basis(jet: SurfaceJet, vectors) -> np.ndarray:
    """Shape bilinear form evaluated on tangent vectors given in frame coefficients."""
    V = np.column_stack([np.asarray(x, float) for x in vectors])
    coords = jet.frame[:, :2].T @ V
    return coords.T @ jet.shape @ coords


# --------------------------------------------------------------------------
# invariant surfaces of left-invariant distributions


@dataclass(frozen=True)
class FrameSurfaceSpec:
    group: GroupSpec
    tangent_indices: tuple[int, int]

    def __post_init__(self):
        i, j = self.tangent_indices
        if sorted((i, j, self.normal_index)) != [1, 2, 3]:
            raise InvalidParameterError(f"bad tangent indices {self.tangent_indices}")

    @property
    def normal_index(self) -> int:
        i, j = self.tangent_indices
        return 6 - i - j

    @property
    def orientation(self) -> int:
        """+1 when (i, j, n) is an even permutation of (1, 2, 3)."""
        i, j = self.tangent_indices
        return 1 if (i, j, self.normal_index) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)) else -1


@dataclass(frozen=True)
class InvariantSurfaceResult:
    integrable: bool
    shape: np.ndarray
    H_trace: float
    H_norm: float
    bracket_normal: float

    def __iter__(self):
        return iter((self.integrable, self.shape, self.H_trace, self.H_norm))


def invariant_surface_jet(spec: FrameSurfaceSpec, tol: float = 1e-12) -> InvariantSurfaceResult:
    i, j = (k - 1 for k in spec.tangent_indices)
    n = spec.normal_index - 1
    E = np.eye(3)
    br = bracket(spec.group, E[i], E[j])
    gamma = levi_civita(spec.group).gamma
    sign = spec.orientation
    tang = (i, j)
    # S[a, b] = <S e_a, e_b> = -<nabla_{e_a} N, e_b>
    S = np.array([[-sign * gamma[a, n, b] for b in tang] for a in tang])
    tr = float(np.trace(S))
    return InvariantSurfaceResult(bool(abs(br[n]) < tol), S, tr, tr / 2, float(br[n]))


def invariant_frame_jet(spec: FrameSurfaceSpec) -> SurfaceJet:
    i, j = (k - 1 for k in spec.tangent_indices)
    E = np.eye(3)
    N = spec.orientation * E[spec.normal_index - 1]
    return frame_jet(E[i], E[j], N, invariant_surface_jet(spec).shape)


# --------------------------------------------------------------------------
# surface catalog

PATCH_IDS = ("thm53-i", "thm53-ii", "thm54")
FRAME_IDS = {"nonuni-e23": (2, 3), "nonuni-e12": (1, 2), "nonuni-e13": (1, 3)}
CATALOG_IDS = PATCH_IDS + tuple(FRAME_IDS)


def _planar_patch(model, f, fu, fv):
    zero = np.zeros((3, 2, 2))
    return ImmersedPatch(
        model=model,
        f=f,
        df=lambda u, v: np.column_stack([fu, fv]),
        d2f=lambda u, v: zero,
    )


def catalog_patch(surface_id: str, lambda1: float, lambda2: float) -> ImmersedPatch:
    """Explicit immersions: (u, v, 0) and (u, -u, v) in E(1,1); (u, v, 0) in E(2)~."""
    if surface_id == "thm53-i":
        return _planar_patch(e11_model(lambda1, lambda2), lambda u, v: np.array([u, v, 0.0]),
                             np.array([1.0, 0, 0]), np.array([0, 1.0, 0]))
    if surface_id == "thm53-ii":
        return _planar_patch(e11_model(lambda1, lambda2), lambda u, v: np.array([u, -u, v]),
                             np.array([1.0, -1.0, 0]), np.array([0, 0, 1.0]))
    if surface_id == "thm54":
        return _planar_patch(e2tilde_model(lambda1, lambda2), lambda u, v: np.array([u, v, 0.0]),
                             np.array([1.0, 0, 0]), np.array([0, 1.0, 0]))
    raise InvalidParameterError(f"unknown patch id {surface_id!r}")


def catalog_frame_surface(surface_id: str, xi: float, eta: float) -> FrameSurfaceSpec:
    if surface_id not in FRAME_IDS:
        raise InvalidParameterError(f"unknown invariant-surface id {surface_id!r}")
    return FrameSurfaceSpec(nonunimodular_from_xi_eta(xi, eta), FRAME_IDS[surface_id])
