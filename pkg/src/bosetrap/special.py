"""Small special-function helpers needed by the coefficient sums.

Only what the closed forms actually use: log-gamma on the positive axis,
the real dilogarithm for arguments <= 1, and one particular 4F3 series.
Everything here is plain python floats; accuracy target is ~1e-15 relative
so that downstream 1e-9 checks never see these as the bottleneck.
"""

from __future__ import annotations

import math

__all__ = ["log_gamma", "dilog", "hyp4f3_series"]

_PI2_6 = math.pi * math.pi / 6.0


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    if not x > 0:
        raise ValueError(f"log_gamma needs x > 0, got {x}")
    return math.lgamma(x)


def _dilog_series(z: float) -> float:
    # power series sum z^k / k^2, good for |z| <= 1/2
    total = 0.0
    term = z
    k = 1
    while True:
        contrib = term / (k * k)
        total += contrib
        if abs(contrib) < 1e-18 * max(1.0, abs(total)):
            return total
        k += 1
        term *= z
        if k > 300:  # |z|<=0.5 converges way before this
            raise RuntimeError("dilog series did not converge")


def dilog(z: float) -> float:
    """Real dilogarithm Li2(z) for z <= 1.

    Series on |z| <= 1/2, standard reflection/inversion identities elsewhere.
    """
    if z > 1.0:
        raise ValueError(f"dilog defined here for z <= 1 only, got {z}")
    if z == 1.0:
        return _PI2_6
    if z == 0.0:
        return 0.0
    if abs(z) <= 0.5:
        return _dilog_series(z)
    if z > 0.5:
        # Li2(z) + Li2(1-z) = pi^2/6 - ln(z) ln(1-z)
        return _PI2_6 - math.log(z) * math.log1p(-z) - _dilog_series(1.0 - z)
    if z >= -1.0:
        # Landen: Li2(z) = -Li2(z/(z-1)) - ln^2(1-z)/2, maps [-1,0) to (0,1/2]
        w = z / (z - 1.0)
        return -_dilog_series(w) - 0.5 * math.log1p(-z) ** 2
    # z < -1: inversion Li2(z) = -pi^2/6 - ln^2(-z)/2 - Li2(1/z)
    return -_PI2_6 - 0.5 * math.log(-z) ** 2 - dilog(1.0 / z)


def hyp4f3_series(z: float) -> float:
    """4F3(1,1,1,5/2; 2,2,2; z) by direct series, for 0 <= z < 1.

    term_k = (5/2)_k z^k / ((k+1)^3 k!), ratio z (k+5/2)(k+1)^2/(k+2)^3.
    """
    if not 0.0 <= z < 1.0:
        raise ValueError(f"hyp4f3_series needs 0 <= z < 1, got {z}")
    total = 0.0
    term = 1.0
    k = 0
    while True:
        total += term
        if term < 1e-18 * max(1.0, total) and k > 3:
            return total
        term *= z * (k + 2.5) * (k + 1.0) ** 2 / (k + 2.0) ** 3
        k += 1
        if k > 100000:
            raise RuntimeError("hyp4f3 series did not converge")
