"""Structure constants of 3-dimensional metric Lie algebras.

Two normal forms are supported, both written in an orthonormal frame
``e1, e2, e3``:

* unimodular (Milnor frame)::

      [e1, e2] = c3 e3,   [e2, e3] = c1 e1,   [e3, e1] = c2 e2

* non-unimodular, normalized so that ``a + d = 2``::

      [e1, e2] = a e2 + b e3,   [e2, e3] = 0,   [e1, e3] = c e2 + d e3
      a = 1 + xi, b = (1 + xi) eta, c = -(1 - xi) eta, d = 1 - xi

Vectors are frame-coefficient 3-vectors; indices are 0-based internally.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import InvalidParameterError

ZERO_TOL = 1e-12


@dataclass(frozen=True)
class UnimodularSpec:
    c1: float
    c2: float
    c3: float

    @property
    def c(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3], dtype=float)

    def structure_constants(self) -> np.ndarray:
        """Array ``C[i, j, k] = <[e_i, e_j], e_k>``."""
        C = np.zeros((3, 3, 3))
        c1, c2, c3 = self.c1, self.c2, self.c3
        C[0, 1, 2], C[1, 0, 2] = c3, -c3
        C[1, 2, 0], C[2, 1, 0] = c1, -c1
        C[2, 0, 1], C[0, 2, 1] = c2, -c2
        return C


@dataclass(frozen=True)
class MuTriple:
    mu1: float
    mu2: float
    mu3: float

    def as_array(self) -> np.ndarray:
        return np.array([self.mu1, self.mu2, self.mu3])


@dataclass(frozen=True)
class NonUnimodularSpec:
    xi: float
    eta: float

    @property
    def a(self) -> float:
        return 1.0 + self.xi

    @property
    def b(self) -> float:
        return (1.0 + self.xi) * self.eta

    @property
    def c(self) -> float:
        return -(1.0 - self.xi) * self.eta

    @property
    def d(self) -> float:
        return 1.0 - self.xi

    def structure_constants(self) -> np.ndarray:
        C = np.zeros((3, 3, 3))
        C[0, 1, 1], C[0, 1, 2] = self.a, self.b
        C[0, 2, 1], C[0, 2, 2] = self.c, self.d
        C[1, 0] = -C[0, 1]
        C[2, 0] = -C[0, 2]
        return C


GroupSpec = Union[UnimodularSpec, NonUnimodularSpec]


class MilnorClass(enum.Enum):
    SU2 = "SU(2)"
    SL2R = "SL(2,R)~"
    E2tilde = "E(2)~"
    E11 = "E(1,1)"
    Heisenberg = "Heisenberg"
    AbelianR3 = "R^3"


_SIGN_TABLE = {
    (1, 1, 1): MilnorClass.SU2,
    (1, 1, -1): MilnorClass.SL2R,
    (1, 1, 0): MilnorClass.E2tilde,
    (1, 0, -1): MilnorClass.E11,
    (1, 0, 0): MilnorClass.Heisenberg,
    (0, 0, 0): MilnorClass.AbelianR3,
}


def _signs(values, tol=ZERO_TOL):
    return tuple(0 if abs(v) < tol else (1 if v > 0 else -1) for v in values)


def classify_unimodular(spec: UnimodularSpec, tol: float = ZERO_TOL) -> MilnorClass:
    signs = _signs((spec.c1, spec.c2, spec.c3), tol)
    # replacing every e_i by -e_i negates all c_i, so patterns are taken up to global sign
    if sum(1 for s in signs if s < 0) > sum(1 for s in signs if s > 0):
        signs = tuple(-s for s in signs)
    return _SIGN_TABLE[tuple(sorted(signs, reverse=True))]


def mu_constants(spec: UnimodularSpec) -> MuTriple:
    half = 0.5 * (spec.c1 + spec.c2 + spec.c3)
    return MuTriple(half - spec.c1, half - spec.c2, half - spec.c3)


def bracket(spec: GroupSpec, X, Y) -> np.ndarray:
    """Lie bracket of two left-invariant fields given by frame coefficients."""
    C = spec.structure_constants()
    return np.einsum("i,j,ijk->k", np.asarray(X, float), np.asarray(Y, float), C)


def nonunimodular_from_xi_eta(xi: float, eta: float) -> NonUnimodularSpec:
    if xi < 0 or eta < 0:
        raise InvalidParameterError(f"xi and eta must be non-negative, got ({xi}, {eta})")
    return NonUnimodularSpec(float(xi), float(eta))


def isometry_dimension_hint(spec: GroupSpec, tol: float = 1e-9) -> int:
    # local import: geometry depends on this module
    from .geometry import sectional_closed_form

    K = np.array(sectional_closed_form(spec))
    if np.ptp(K) < tol * max(1.0, np.abs(K).max()):
        return 6
    if isinstance(spec, NonUnimodularSpec):
        return 4 if abs(spec.xi - 1.0) < tol else 3
    c = sorted(spec.c)
    if abs(c[0] - c[1]) < tol or abs(c[1] - c[2]) < tol:
        return 4
    return 3
