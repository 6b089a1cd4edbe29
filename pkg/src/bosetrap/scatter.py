"""Low-energy scattering from a Gaussian two-body potential.

Model: V(r) = V0 exp(-r^2/(2 r0^2)) between two atoms of mass m_A (reduced
mass m_A/2, absorbed into k = sqrt(m_A E)/hbar).  With the dimensionless
depth v0 = m_A V0 r0^2 / hbar^2 and x = r/r0, the s-wave radial equation for
u = r R reads

    u''(x) = [v0 e^(-x^2/2) - (k r0)^2] u(x),

which is integrated outward with the Numerov scheme (marched in extended
precision; in double precision the step-halving checks sit on the roundoff
floor).  The scattering length comes from the zero-energy asymptote
u ~ x - a/r0, phase shifts from matching to free solutions at two sample
points, and the effective range from the small-k expansion
-tan(delta)/k = a + (a^2 r_e/2) k^2 + O(k^4).

Everything returns lengths in the same unit as r0.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

__all__ = [
    "GaussianPotential",
    "zero_energy_a",
    "bound_state_count",
    "phase_shift",
    "fit_effective_range",
    "EffectiveRangeFit",
    "critical_depth",
    "tune_depth",
]

DEFAULT_STEP = 1.0 / 200.0  # in units of r0
X_END = 10.0  # in units of r0; e^(-100) leaves no potential there
_SAMPLE_X1 = 9.0
_SAMPLE_X2 = 10.0
_NODE_REGION = 6.0  # count interior nodes here, away from the u ~ x - a zero


@dataclass(frozen=True)
class GaussianPotential:
    """V(r) = V0 exp(-r^2/(2 r0^2)) with dimensionless v0 = m_A V0 r0^2/hbar^2.

    v0 > 0 is a repulsive barrier, v0 < 0 an attractive well.
    """

    v0: float
    r0: float = 1.0

    def __post_init__(self) -> None:
        if not self.r0 > 0:
            raise ValueError("r0 must be positive")
        if not math.isfinite(self.v0):
            raise ValueError("v0 must be finite")


def _march(v0: float, k_r0: float, step: float) -> tuple[np.ndarray, np.ndarray]:
    """Numerov integration of u'' = W u, W = v0 e^(-x^2/2) - k_r0^2, from 0 to X_END."""
    if not 0 < step <= 0.05:
        raise ValueError("step must be in (0, 0.05] (units of r0)")
    npts = int(round(X_END / step)) + 1
    x = np.arange(npts, dtype=np.longdouble) * np.longdouble(step)
    w = np.longdouble(v0) * np.exp(-0.5 * x * x) - np.longdouble(k_r0) ** 2
    g = (np.longdouble(step) ** 2 / 12.0) * w
    u = np.zeros(npts, dtype=np.longdouble)
    h = np.longdouble(step)
    w0 = w[0]
    u[1] = h * (1.0 + w0 * h * h / 6.0 + w0 * w0 * h**4 / 120.0)
    for i in range(1, npts - 1):
        u[i + 1] = ((2.0 + 10.0 * g[i]) * u[i] - (1.0 - g[i - 1]) * u[i - 1]) / (1.0 - g[i + 1])
    return x, u


def _sample(x: np.ndarray, u: np.ndarray, target: float) -> tuple[float, float]:
    i = int(np.argmin(np.abs(x - np.longdouble(target))))
    return float(x[i]), float(u[i])


def zero_energy_a(pot: GaussianPotential, step: float = DEFAULT_STEP) -> float:
    """Zero-energy scattering length from the asymptote u ~ C (x - a/r0).

    Warns when the well holds bound states (a is then on another branch of
    its depth dependence; the value itself is still correct).
    """
    x, u = _march(pot.v0, 0.0, step)
    x1, u1 = _sample(x, u, _SAMPLE_X1)
    x2, u2 = _sample(x, u, _SAMPLE_X2)
    if u2 == u1:
        raise RuntimeError("degenerate samples; scattering length diverged")
    a = (u2 * x1 - u1 * x2) / (u2 - u1)
    nb = _count_bound(x, u, a)
    if nb > 0:
        warnings.warn(f"potential holds {nb} bound state(s)", stacklevel=2)
    return a * pot.r0


def _count_bound(x: np.ndarray, u: np.ndarray, a_dimless: float) -> int:
    inside = u[(x > 0) & (x <= _NODE_REGION)]
    signs = np.sign(inside)
    flips = int(np.sum(signs[1:] * signs[:-1] < 0))
    # a node beyond the counting region shows up as a large positive a
    return flips + (1 if a_dimless > _NODE_REGION else 0)


def bound_state_count(pot: GaussianPotential, step: float = DEFAULT_STEP) -> int:
    """Number of s-wave bound states (node count of the zero-energy solution)."""
    x, u = _march(pot.v0, 0.0, step)
    x1, u1 = _sample(x, u, _SAMPLE_X1)
    x2, u2 = _sample(x, u, _SAMPLE_X2)
    a = (u2 * x1 - u1 * x2) / (u2 - u1) if u2 != u1 else math.inf
    return _count_bound(x, u, a)


def phase_shift(pot: GaussianPotential, k: float, step: float = DEFAULT_STEP) -> float:
    """s-wave phase shift at wave number k (in 1/r0 units), in (-pi/2, pi/2] mod pi.

    Matches u against sin(kx + delta) at two asymptotic sample points; k must
    resolve them (k r0 too close to a multiple of pi is rejected).
    """
    kr = k * pot.r0
    if not kr > 0:
        raise ValueError("k must be positive")
    s = math.sin(kr * (_SAMPLE_X1 - _SAMPLE_X2))
    # the matching system degenerates when k (x1 - x2) hits a multiple of pi;
    # small |s| at small k is harmless (the numerators shrink with it)
    if abs(s) < 0.01:
        raise ValueError(f"sample points degenerate at k r0 = {kr:.4g} (sin(k dx) ~ 0)")
    x, u = _march(pot.v0, kr, step)
    _, u1 = _sample(x, u, _SAMPLE_X1)
    _, u2 = _sample(x, u, _SAMPLE_X2)
    a_cos = (u1 * math.cos(kr * _SAMPLE_X2) - u2 * math.cos(kr * _SAMPLE_X1)) / s
    a_sin = (u2 * math.sin(kr * _SAMPLE_X1) - u1 * math.sin(kr * _SAMPLE_X2)) / s
    delta = math.atan2(a_sin, a_cos)
    while delta > math.pi / 2:
        delta -= math.pi
    while delta <= -math.pi / 2:
        delta += math.pi
    return delta


@dataclass(frozen=True)
class EffectiveRangeFit:
    a0: float  # zero-energy march
    a0_fit: float  # intercept of the small-k fit
    r_eff: float
    residual_norm: float


def fit_effective_range(
    pot: GaussianPotential,
    ks: np.ndarray | None = None,
    step: float = DEFAULT_STEP,
) -> EffectiveRangeFit:
    """Effective range from -tan(delta)/k = a + (a^2 r_e/2) k^2 over small k."""
    if ks is None:
        ks = np.linspace(0.02, 0.2, 10) / pot.r0
    ks = np.asarray(ks, dtype=float)
    if len(ks) < 5 or np.any(ks <= 0):
        raise ValueError("need at least 5 positive wave numbers")
    af = np.array([-math.tan(phase_shift(pot, k, step)) / (k * pot.r0) for k in ks])
    k2 = (ks * pot.r0) ** 2
    design = np.column_stack([np.ones_like(k2), k2])
    sol, _, rank, _ = np.linalg.lstsq(design, af, rcond=None)
    if rank < 2:
        raise ValueError("degenerate k grid")
    a0 = zero_energy_a(pot) / pot.r0
    if a0 == 0.0:
        raise ValueError("a0 = 0; effective range undefined in this parametrization")
    resid = design @ sol - af
    r_eff = 2.0 * sol[1] / (a0 * a0)
    return EffectiveRangeFit(
        a0=a0 * pot.r0,
        a0_fit=float(sol[0]) * pot.r0,
        r_eff=float(r_eff) * pot.r0,
        residual_norm=float(np.sqrt(np.sum(resid * resid))),
    )


_VCRIT_CACHE: dict[None, float] = {}


def critical_depth() -> float:
    """Dimensionless depth v0 where the first bound state appears (a0 diverges)."""
    if None not in _VCRIT_CACHE:

        def inv_a(v: float) -> float:
            x, u = _march(v, 0.0, DEFAULT_STEP)
            x1, u1 = _sample(x, u, _SAMPLE_X1)
            x2, u2 = _sample(x, u, _SAMPLE_X2)
            return (u2 - u1) / (u2 * x1 - u1 * x2)

        _VCRIT_CACHE[None] = float(brentq(inv_a, -2.0, -1.0, xtol=1e-14, rtol=8.9e-16))
    return _VCRIT_CACHE[None]


def tune_depth(a_target: float, r0: float = 1.0) -> GaussianPotential:
    """Find the Gaussian depth whose scattering length is a_target.

    Positive targets use a repulsive barrier (no bound state), negative ones
    an attractive well above the first binding threshold, so the returned
    potential is always on the zero-bound-state branch.
    """
    if not math.isfinite(a_target):
        raise ValueError("a_target must be finite")
    if a_target == 0.0:
        return GaussianPotential(0.0, r0)
    goal = a_target / r0

    def a_of(v: float) -> float:
        x, u = _march(v, 0.0, DEFAULT_STEP)
        x1, u1 = _sample(x, u, _SAMPLE_X1)
        x2, u2 = _sample(x, u, _SAMPLE_X2)
        return (u2 * x1 - u1 * x2) / (u2 - u1)

    if goal > 0:
        if goal >= _SAMPLE_X1 - 1.0:
            raise ValueError(f"positive targets validated for a/r0 < {_SAMPLE_X1 - 1.0}")
        hi = 1.0
        while a_of(hi) < goal:
            hi *= 2.0
            if hi > 1e7:
                raise ValueError(f"a/r0 = {goal} not reachable with a repulsive barrier")
        v = brentq(lambda v: a_of(v) - goal, 1e-300, hi, xtol=5e-16, rtol=8.9e-16)
    else:
        lo = critical_depth() * (1.0 - 1e-12)
        if a_of(lo) > goal:
            raise ValueError(f"a/r0 = {goal} beyond the no-bound-state branch")
        v = brentq(lambda v: a_of(v) - goal, lo, -1e-300, xtol=5e-16, rtol=8.9e-16)
    return GaussianPotential(float(v), r0)
