"""Curvature homogeneity checks for Lorentzian 3-metrics.

Thin Python layer over the C++ core. Expressions are plain strings in t, x, y
(``"exp(x)"``, ``"t^3"``); points are ``(t, x, y)`` tuples; tensors come back
as numpy arrays with one length-3 axis per slot (differentiation slots last).
"""

import json as _json

from ._curvhom import (
    DomainError,
    Error,
    Expr,
    Family,
    FamilyError,
    GeometryError,
    HypothesisError,
    ModelError,
    ParseError,
    __version__,
    adapted_basis,
    build_model,
    canonical_curvature_model,
    canonical_first_derivative_model,
    check_curvature_isomorphism,
    check_first_derivative_isomorphism,
    christoffel,
    closed_form,
    curvature_tower,
    custom_metric,
    f_family,
    find_isomorphism,
    h_family,
    identity_residuals,
    invariant_ratio_f,
    invariant_Xi_f,
    invariant_Xi_f_normalized,
    invariant_Xi_h,
    invariants_xi_TX,
    metric_at,
    nabla_k_riemann,
    parse,
    scaling_constant_f,
)
from . import _curvhom


def _axes(grid):
    if isinstance(grid, dict):
        return [(c, float(lo), float(hi), int(n)) for c, (lo, hi, n) in grid.items()]
    return [(c, float(lo), float(hi), int(n)) for c, lo, hi, n in grid]


def classify(family, r, grid, tol=1e-6):
    """Homogeneity report as a dict.

    ``grid`` maps a coordinate to ``(min, max, count)``, e.g. ``{"x": (0, 1, 9)}``.
    """
    return _json.loads(_curvhom.classify_json(family, r, _axes(grid), tol))


def verify(family, r, grid):
    """Engine against closed forms and curvature identities, as a dict."""
    return _json.loads(_curvhom.verify_json(family, r, _axes(grid)))


def verdicts(report):
    """``{property: verdict}`` from a classify report."""
    return {v["property"]: v["verdict"] for v in report["verdicts"]}
