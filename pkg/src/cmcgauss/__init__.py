"""Curvature of left-invariant metrics on 3-dimensional Lie groups and
harmonicity tests for the Gauss map of CMC surfaces in them."""
from .algebra import (NonUnimodularSpec, UnimodularSpec, classify_unimodular, mu_constants,
                      nonunimodular_from_xi_eta)
from .classification import TheoremReport, verify_theorem
from .geometry import levi_civita, riemann_tensor, sectional_closed_form
from .models import e2tilde_model, e11_model

__all__ = [
    "NonUnimodularSpec", "UnimodularSpec", "classify_unimodular", "mu_constants",
    "nonunimodular_from_xi_eta", "TheoremReport", "verify_theorem", "levi_civita",
    "riemann_tensor", "sectional_closed_form", "e2tilde_model", "e11_model",
]
