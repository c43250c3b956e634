"""Shapes of yield and forward curves in affine one-factor short-rate models."""

from ._core import (
    AffineModel,
    Error,
    StateSpace,
    cir,
    classify,
    classify_numeric,
    curve,
    gamma_ou,
    geometric_grid,
    mc_check,
    model_from_json,
    quadratic,
    random_model,
    solve_ab,
    thresholds,
    vasicek,
    verify,
)

__all__ = [
    "AffineModel",
    "Error",
    "StateSpace",
    "cir",
    "classify",
    "classify_numeric",
    "curve",
    "gamma_ou",
    "geometric_grid",
    "mc_check",
    "model_from_json",
    "quadratic",
    "random_model",
    "solve_ab",
    "thresholds",
    "vasicek",
    "verify",
]
