"""Named coefficient sums of the perturbative energy expansion.

Every coefficient is a sum over intermediate pair states of products of the
contact matrix elements from hobasis divided by excitation energies, with an
optional regulator weight per energy denominator:

  hard-cutoff:   theta(omega_c/omega - delta_eps)   (boundary inclusive)
  exponential:   exp(-delta_eps * omega / omega_c)

The "tree" sums (alpha2_1, alpha3_2, alpha41_3, alpha42_3, alpha43_3,
alpha5_3) converge and have cutoff-independent limits; alpha3_2, alpha43_3
and alpha5_3 also have closed forms.  The "loop" sums beta2_2, beta2_3,
beta3_3 diverge like sqrt(omega_c/omega) and only enter physics through
renormalized combinations; alpha3_3 is finite but is only available by
extrapolating its hard-cutoff partial sums in the cutoff ratio.

Summation order is fixed (ascending indices, math.fsum accumulation at the
top level, fixed-order numpy reductions inside), so repeated calls are
bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from . import extrapolate
from .hobasis import k_sp_matrix
from .special import dilog, hyp4f3_series

__all__ = [
    "RegulatorSpec",
    "CoefficientValue",
    "DEFAULT_CUTOFF_GRID",
    "alpha2_1",
    "alpha2_12",
    "alpha3_2",
    "alpha3_3_partial",
    "alpha3_3",
    "alpha41_3",
    "alpha42_3",
    "alpha43_3",
    "alpha43_3_partial",
    "alpha5_3",
    "beta2_2",
    "beta2_2_asymptote",
    "beta2_3",
    "beta3_3",
]

SCHEMES = ("hard-cutoff", "exponential")

# cutoff ratios omega_c/omega used for the alpha3_3 extrapolation; deep
# enough that the neglected (omega/omega_c)^(3/2) term biases the intercept
# by ~1e-5 only (the calibration run on alpha43_3 measures exactly this)
DEFAULT_CUTOFF_GRID = (160.0, 200.0, 280.0, 400.0, 560.0, 800.0, 1130.0, 1600.0)

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
_SQRT_PI_OVER_2 = math.sqrt(math.pi / 2.0)
_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class RegulatorSpec:
    """How intermediate pair-state energies are cut off.

    cutoff_ratio is omega_c/omega, the cutoff in units of the trap quantum
    at the frequency where the sum is evaluated.  Ratios below 2 would cut
    inside the first excited pair state, so they are rejected.
    """

    scheme: str
    cutoff_ratio: float

    def __post_init__(self) -> None:
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if not self.cutoff_ratio >= 2.0:
            raise ValueError(f"cutoff_ratio must be >= 2, got {self.cutoff_ratio}")

    def weights(self, delta_eps: np.ndarray) -> np.ndarray:
        """Regulator weight for an array of excitation energies."""
        de = np.asarray(delta_eps, dtype=float)
        if self.scheme == "hard-cutoff":
            return (de <= self.cutoff_ratio).astype(float)
        return np.exp(-de / self.cutoff_ratio)

    def nmax(self, rate: int) -> int:
        """Largest index kept in a 1-index sum whose denominator is rate*n.

        For the hard cutoff this is exact; for the exponential regulator the
        dropped tail has weight below e^-52 ~ 3e-23.
        """
        if self.scheme == "hard-cutoff":
            return int(math.floor(self.cutoff_ratio / rate + 1e-9))
        n = int(math.ceil(52.0 * self.cutoff_ratio / rate))
        if n > 50_000_000:
            raise ValueError("cutoff_ratio too large for direct summation")
        return n


@dataclass(frozen=True)
class CoefficientValue:
    """A coefficient with provenance: how it was obtained and how uncertain it is."""

    value: float
    uncertainty: float = 0.0
    method: str = "analytic"

    def __post_init__(self) -> None:
        if self.method not in ("analytic", "sum", "extrapolated"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.uncertainty < 0:
            raise ValueError("uncertainty must be >= 0")


# ---------------------------------------------------------------------------
# cached summand tables
# ---------------------------------------------------------------------------


@lru_cache(maxsize=32)
def _krel0_sq(nmax: int) -> np.ndarray:
    """k_rel(n,0)^2 = (4/pi^(3/2)) Gamma(n+3/2)/Gamma(n+1) for n = 0..nmax."""
    n = np.arange(nmax + 1, dtype=float)
    out = 4.0 / math.pi**1.5 * np.exp(gammaln(n + 1.5) - gammaln(n + 1.0))
    out.setflags(write=False)
    return out


@lru_cache(maxsize=32)
def _ksp00_sq(nmax: int) -> np.ndarray:
    """k_sp(n,0,0)^2 = (2/pi) 4^-n Gamma(n+3/2)/(Gamma(n+1) Gamma(3/2))."""
    n = np.arange(nmax + 1, dtype=float)
    out = (
        2.0
        / math.pi
        * np.exp(gammaln(n + 1.5) - gammaln(n + 1.0) - math.lgamma(1.5) - n * math.log(4.0))
    )
    out.setflags(write=False)
    return out


def _ksp_row(n1: int, n2max: int) -> np.ndarray:
    """k_sp(n1, n2, 0) for n2 = 0..n2max, one row at a time (memory friendly)."""
    n2 = np.arange(n2max + 1, dtype=float)
    s = n1 + n2
    lg = (
        gammaln(s + 1.5)
        - 0.5
        * (
            math.lgamma(n1 + 1.0)
            + gammaln(n2 + 1.0)
            + math.lgamma(n1 + 1.5)
            + gammaln(n2 + 1.5)
        )
        - s * _LOG2
    )
    return _SQRT_2_OVER_PI * np.exp(lg)


# ---------------------------------------------------------------------------
# first order and the tree sums
# ---------------------------------------------------------------------------


def alpha2_1() -> CoefficientValue:
    """Leading two-body coefficient sqrt(2/pi) (the condensate contact element)."""
    return CoefficientValue(_SQRT_2_OVER_PI)


def alpha2_12() -> CoefficientValue:
    """Effective-range correction coefficient (3/4) sqrt(2/pi)."""
    return CoefficientValue(0.75 * _SQRT_2_OVER_PI)


def alpha3_2(mode: str = "analytic", regulator: RegulatorSpec | None = None) -> CoefficientValue:
    """Three-body second-order coefficient.

    analytic: (2/pi)(2/sqrt(3) + log(8 - 4 sqrt(3)) - 1).
    sum:      sum_{n>=1} k_sp(n,0,0)^2 w(2n)/(2n); terms fall off like 4^-n,
              so already at cutoff_ratio 60 the sum is converged far below 1e-9.
    """
    if mode == "analytic":
        val = 2.0 / math.pi * (2.0 / math.sqrt(3.0) + math.log(8.0 - 4.0 * math.sqrt(3.0)) - 1.0)
        return CoefficientValue(val)
    if mode != "sum":
        raise ValueError(f"mode must be 'analytic' or 'sum', got {mode!r}")
    reg = regulator if regulator is not None else RegulatorSpec("hard-cutoff", 60.0)
    # summand falls like 4^-n, so nothing survives past a few hundred terms
    nmax = min(reg.nmax(2), 500)
    n = np.arange(1, nmax + 1, dtype=float)
    terms = _ksp00_sq(nmax)[1:] * reg.weights(2.0 * n) / (2.0 * n)
    return CoefficientValue(math.fsum(terms), method="sum")


def alpha43_3(mode: str = "analytic") -> CoefficientValue:
    """Four-body third-order coefficient with the condensate middle vertex.

    analytic: (2/pi)^(3/2) [pi^2/24 + log2 - (log2)^2/2].
    sum:      sqrt(2/pi) sum_{n>=1} k_rel(n,0)^2/(4n^2), truncated where the
              ~0.14 n^(-3/2) terms drop below 1e-10, plus the midpoint
              Euler-Maclaurin tail: integral of the power-law expansion of
              the summand from nmax+1/2 (the f' correction is ~5e-18 at
              that point and is dropped).
    """
    if mode == "analytic":
        val = (2.0 / math.pi) ** 1.5 * (math.pi**2 / 24.0 + _LOG2 - 0.5 * _LOG2**2)
        return CoefficientValue(val)
    if mode != "sum":
        raise ValueError(f"mode must be 'analytic' or 'sum', got {mode!r}")
    nmax = 1_300_000  # first term below 1e-10
    n = np.arange(1, nmax + 1, dtype=float)
    terms = _SQRT_2_OVER_PI * _krel0_sq(nmax)[1:] / (4.0 * n * n)
    head = math.fsum(terms)
    # summand(x) = sqrt(2/pi)/pi^1.5 * x^-1.5 * (1 + 3/(8x) - 7/(128x^2) + ...)
    # using Gamma(x+3/2)/Gamma(x+1) = sqrt(x)(1 + 3/(8x) - 7/(128x^2) + ...);
    # the integral from b = nmax + 1/2 keeps the next omitted piece ~ b^-3.5,
    # far below the fsum roundoff of the head.
    b = nmax + 0.5
    tail = (
        _SQRT_2_OVER_PI
        / math.pi**1.5
        * (2.0 / math.sqrt(b) + 0.25 * b**-1.5 - 7.0 / 320.0 * b**-2.5)
    )
    return CoefficientValue(head + tail, method="sum")


def alpha5_3(mode: str = "4f3") -> CoefficientValue:
    """Five-body third-order coefficient; three independent routes.

    4f3:   3/(4 (2 pi)^(3/2)) 4F3(1,1,1,5/2; 2,2,2; 1/4).
    dilog: (2/pi)^(3/2) [Li2(1/2 - sqrt3/4)/2 - log(1 + sqrt3/2)
             - (log(1 + sqrt3/2) - log2)^2/4 + log2].
    sum:   sqrt(2/pi) sum_{n>=1} k_sp(n,0,0)^2/(4n^2); the summand decays
           like 4^-n sqrt(n), so 64 terms reach full double precision.
    """
    if mode == "4f3":
        val = 3.0 / (4.0 * (2.0 * math.pi) ** 1.5) * hyp4f3_series(0.25)
        return CoefficientValue(val)
    if mode == "dilog":
        lg = math.log1p(math.sqrt(3.0) / 2.0)
        val = (2.0 / math.pi) ** 1.5 * (
            0.5 * dilog(0.5 - math.sqrt(3.0) / 4.0) - lg - 0.25 * (lg - _LOG2) ** 2 + _LOG2
        )
        return CoefficientValue(val)
    if mode != "sum":
        raise ValueError(f"mode must be '4f3', 'dilog' or 'sum', got {mode!r}")
    nmax = 64
    n = np.arange(1, nmax + 1, dtype=float)
    val = math.fsum(_SQRT_2_OVER_PI * _ksp00_sq(nmax)[1:] / (4.0 * n * n))
    return CoefficientValue(val, method="sum")


def alpha41_3(regulator: RegulatorSpec) -> float:
    """Four-body third-order tree sum with denominators (2n1+2n2)(2n1).

    sum_{n1>=1, n2>=0} k_sp(n1,n2,0) k_sp(n2,0,0) k_sp(n1,0,0)
        * w(2n1+2n2) w(2n1) / ((2n1+2n2)(2n1)).
    Converges exponentially; cutoff dependence is already < 1e-9 at 40.
    """
    # matrix-element products decay like 2^-(n1+n2); past ~500 nothing is left
    if regulator.scheme == "hard-cutoff":
        n1max = min(regulator.nmax(2), 500)
        n2max = n1max
    else:
        n1max = min(regulator.nmax(4), 500)  # weight e^(-(4 n1 + 2 n2)/E)
        n2max = min(regulator.nmax(2), 500)
    ksp00 = np.sqrt(_ksp00_sq(max(n1max, n2max)))
    n2 = np.arange(n2max + 1, dtype=float)
    rows = []
    for n1 in range(1, n1max + 1):
        de_pair = 2.0 * n1 + 2.0 * n2
        de_single = 2.0 * n1
        w = regulator.weights(de_pair) * regulator.weights(np.array(de_single))
        terms = _ksp_row(n1, n2max) * ksp00[: n2max + 1] * ksp00[n1] * w / (de_pair * de_single)
        rows.append(float(np.sum(terms)))
    return math.fsum(rows)


def alpha42_3(regulator: RegulatorSpec) -> float:
    """Four-body third-order tree sum with denominators (2n1)(2n2).

    sum_{n1,n2>=1} k_sp(n1,n2,0) k_sp(n2,0,0) k_sp(n1,0,0)
        * w(2n1) w(2n2) / (4 n1 n2).
    """
    nmax = min(regulator.nmax(2), 500)  # 2^-(n1+n2) decay, same cap as alpha41_3
    ksp00 = np.sqrt(_ksp00_sq(nmax))
    n2 = np.arange(1, nmax + 1, dtype=float)
    w2 = regulator.weights(2.0 * n2)
    rows = []
    for n1 in range(1, nmax + 1):
        w1 = float(regulator.weights(np.array(2.0 * n1)))
        terms = (
            _ksp_row(n1, nmax)[1:]
            * ksp00[1:]
            * ksp00[n1]
            * w1
            * w2
            / (4.0 * n1 * n2)
        )
        rows.append(float(np.sum(terms)))
    return math.fsum(rows)


# ---------------------------------------------------------------------------
# loop sums (divergent without a regulator)
# ---------------------------------------------------------------------------


def beta2_2(regulator: RegulatorSpec) -> float:
    """Two-body second-order loop sum: sum_{n>=1} k_rel(n,0)^2 w(2n)/(2n).

    Grows like sqrt(cutoff_ratio); see beta2_2_asymptote.
    """
    nmax = regulator.nmax(2)
    n = np.arange(1, nmax + 1, dtype=float)
    terms = _krel0_sq(nmax)[1:] * regulator.weights(2.0 * n) / (2.0 * n)
    return math.fsum(terms)


def beta2_2_asymptote(cutoff_ratio: float) -> float:
    """Large-cutoff form of beta2_2 with the exponential regulator.

    (2/pi)[sqrt(E/2) - (1 - log2) - (3/2) sqrt(1/(2E))], E = omega_c/omega;
    the remainder is O(1/E).
    """
    if cutoff_ratio <= 0:
        raise ValueError("cutoff_ratio must be positive")
    e = cutoff_ratio
    return 2.0 / math.pi * (math.sqrt(e / 2.0) - (1.0 - _LOG2) - 1.5 / math.sqrt(2.0 * e))


def beta2_3(regulator: RegulatorSpec, mode: str = "direct") -> float:
    """Two-body third-order loop sum over two relative pair states.

    direct:     sum_{n,n'>=1} k_rel(n,0) k_rel(n,n') k_rel(n',0)
                    w(2n) w(2n') / (4 n n'), summed row by row.
    factorized: beta2_2(reg)^2 / alpha2_1, which the separable k_rel makes
                exact term by term for any per-denominator regulator.
    """
    if mode == "factorized":
        b = beta2_2(regulator)
        return b * b * _SQRT_PI_OVER_2
    if mode != "direct":
        raise ValueError(f"mode must be 'direct' or 'factorized', got {mode!r}")
    nmax = regulator.nmax(2)
    kr0sq = _krel0_sq(nmax)[1:]
    n = np.arange(1, nmax + 1, dtype=float)
    v = kr0sq * regulator.weights(2.0 * n) / (2.0 * n)
    rows = [float(np.sum(_SQRT_PI_OVER_2 * v[i] * v)) for i in range(len(v))]
    return math.fsum(rows)


def beta3_3(regulator: RegulatorSpec, mode: str = "direct") -> float:
    """Three-body third-order loop sum (one relative leg, one s-orbital leg).

    direct:     sum_{n,n1>=1} k_rel(n,0) k_mixed(n,n1) k_sp(n1,0,0)
                    w(2n) w(2n1) / (4 n n1).
    factorized: beta2_2(reg) alpha3_2(sum, reg) / alpha2_1, exact term by
                term because k_mixed is separable.
    """
    if mode == "factorized":
        return beta2_2(regulator) * alpha3_2("sum", regulator).value * _SQRT_PI_OVER_2
    if mode != "direct":
        raise ValueError(f"mode must be 'direct' or 'factorized', got {mode!r}")
    nmax = regulator.nmax(2)
    n = np.arange(1, nmax + 1, dtype=float)
    w = regulator.weights(2.0 * n)
    v_rel = _krel0_sq(nmax)[1:] * w / (2.0 * n)
    v_sp = _ksp00_sq(nmax)[1:] * w / (2.0 * n)
    rows = [float(np.sum(_SQRT_PI_OVER_2 * v_rel[i] * v_sp)) for i in range(len(v_rel))]
    return math.fsum(rows)


# ---------------------------------------------------------------------------
# alpha3_3: hard-cutoff partial sums over single-particle shells, extrapolated
# ---------------------------------------------------------------------------


def _shell_mask_table(l: int, cutoff_ratio: float) -> tuple[np.ndarray, np.ndarray]:
    """K table and the masked K/delta_eps table for angular momentum l."""
    size = int(math.floor((cutoff_ratio - 2.0 * l) / 2.0 + 1e-9)) + 1
    if size < 1:
        return np.empty((0, 0)), np.empty((0, 0))
    kmat = k_sp_matrix(l, size)
    n = np.arange(size, dtype=float)
    de = 2.0 * (n[:, None] + n[None, :] + l)
    mask = (de > 0.0) & (de <= cutoff_ratio + 1e-9)
    a = np.where(mask, kmat / np.where(de == 0.0, 1.0, de), 0.0)
    return kmat, a


def alpha3_3_partial(regulator: RegulatorSpec) -> float:
    """Hard-cutoff partial sum of the three-body third-order loop diagram.

    Per angular momentum l, with A = K/delta_eps masked to excitations at or
    below the cutoff, the shell contributes (2l+1) sum A[ab] K[bc] A[ac];
    only the two denominator pair states feel the regulator, the middle
    vertex does not.  Diverges logarithmically slowly with the cutoff via
    its sqrt(omega/omega_c) approach; extrapolate with alpha3_3().
    """
    if regulator.scheme != "hard-cutoff":
        raise ValueError("partial sums are defined for the hard-cutoff scheme")
    e = regulator.cutoff_ratio
    parts = []
    for l in range(0, int(e // 2) + 1):
        kmat, a = _shell_mask_table(l, e)
        if kmat.size == 0:
            break
        parts.append((2.0 * l + 1.0) * float(np.sum((a @ kmat) * a)))
    return math.fsum(parts)


def alpha43_3_partial(regulator: RegulatorSpec) -> float:
    """Hard-cutoff partial sum of alpha43_3 through the same shell pipeline.

    Same masked tables as alpha3_3_partial; the middle vertex is the
    condensate element k_sp(0,0,0).  Equals the relative-basis partial sum
    shell for shell (completeness), which the tests exploit.
    """
    if regulator.scheme != "hard-cutoff":
        raise ValueError("partial sums are defined for the hard-cutoff scheme")
    e = regulator.cutoff_ratio
    k0000 = _SQRT_2_OVER_PI
    parts = []
    for l in range(0, int(e // 2) + 1):
        kmat, a = _shell_mask_table(l, e)
        if kmat.size == 0:
            break
        parts.append((2.0 * l + 1.0) * k0000 * float(np.sum(a * a)))
    return math.fsum(parts)


def _hard_shell_partials(cutoff_ratio: float) -> tuple[float, float]:
    """(alpha3_3, alpha43_3) hard-cutoff partial sums in one table sweep.

    Building the k_sp tables dominates the cost at large cutoffs, so the
    extrapolation evaluates both pipelines from the same tables.
    """
    p33, p43 = [], []
    for l in range(0, int(cutoff_ratio // 2) + 1):
        kmat, a = _shell_mask_table(l, cutoff_ratio)
        if kmat.size == 0:
            break
        w = 2.0 * l + 1.0
        p33.append(w * float(np.sum((a @ kmat) * a)))
        p43.append(w * _SQRT_2_OVER_PI * float(np.sum(a * a)))
    return math.fsum(p33), math.fsum(p43)


def alpha3_3(grid: tuple[float, ...] | None = None) -> CoefficientValue:
    """Extrapolated three-body third-order coefficient with calibrated error.

    Fits the hard-cutoff partial sums over the grid to a + b sqrt(x) + c x,
    x = omega/omega_c, and returns the intercept.  The uncertainty is the
    error the identical pipeline makes on alpha43_3, whose limit is known
    in closed form and whose partial sums approach it the same way.  The
    default grid reaches omega_c/omega = 1600 and takes ~15 s.
    """
    if grid is None:
        grid = DEFAULT_CUTOFF_GRID
    grid = tuple(float(e) for e in grid)
    pairs = [_hard_shell_partials(e) for e in grid]
    fit = extrapolate.fit_sqrt_model([(e, p[0]) for e, p in zip(grid, pairs)])
    fit43 = extrapolate.fit_sqrt_model([(e, p[1]) for e, p in zip(grid, pairs)])
    calib = abs(fit43.a - alpha43_3("analytic").value)
    return CoefficientValue(fit.a, uncertainty=calib, method="extrapolated")
