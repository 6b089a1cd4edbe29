"""Cutoff extrapolation of regulated partial sums.

Loop-diagram sums approach their limit like a + b sqrt(omega/omega_c)
+ c (omega/omega_c) + O[(omega/omega_c)^{3/2}].  Fitting that model over a
grid of cutoff ratios and reading off the intercept gives the renormalized
value; running the identical pipeline on a sum whose limit is known
analytically calibrates the extrapolation error.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = ["AsymptoticFit", "fit_sqrt_model", "calibrate_uncertainty"]


@dataclass(frozen=True)
class AsymptoticFit:
    """Least-squares result of value(E) ~ a + b/sqrt(E) + c/E, E = omega_c/omega."""

    a: float
    b: float
    c: float
    residual_norm: float


def fit_sqrt_model(points: Iterable[tuple[float, float]]) -> AsymptoticFit:
    """Fit (cutoff_ratio, partial_value) pairs to a + b sqrt(x) + c x, x = 1/cutoff.

    Needs at least 4 points (one more than parameters) with positive,
    distinct cutoffs; raises ValueError otherwise or if the design matrix
    is rank deficient.
    """
    pts = sorted(points)
    if len(pts) < 4:
        raise ValueError(f"need at least 4 points to fit 3 parameters, got {len(pts)}")
    cutoffs = np.array([p[0] for p in pts], dtype=float)
    values = np.array([p[1] for p in pts], dtype=float)
    if np.any(cutoffs <= 0):
        raise ValueError("cutoff ratios must be positive")
    if len(set(cutoffs.tolist())) != len(cutoffs):
        raise ValueError("cutoff ratios must be distinct")
    x = 1.0 / cutoffs
    design = np.column_stack([np.ones_like(x), np.sqrt(x), x])
    sol, _, rank, _ = np.linalg.lstsq(design, values, rcond=None)
    if rank < 3:
        raise ValueError("rank-deficient design matrix; grid too degenerate to fit")
    resid = design @ sol - values
    return AsymptoticFit(
        a=float(sol[0]),
        b=float(sol[1]),
        c=float(sol[2]),
        residual_norm=float(np.sqrt(np.sum(resid * resid))),
    )


def calibrate_uncertainty(
    partial_fn: Callable[[float], float],
    grid: Sequence[float],
    reference: float,
) -> float:
    """Extrapolation error of the pipeline on a sum with a known limit.

    Runs partial_fn over the same cutoff grid, fits the same model, and
    returns |intercept - reference|.  Used as the uncertainty estimate for
    sums extrapolated on that grid whose limit is not known analytically.
    """
    fit = fit_sqrt_model([(e, partial_fn(e)) for e in grid])
    return abs(fit.a - reference)
