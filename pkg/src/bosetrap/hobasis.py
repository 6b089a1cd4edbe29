"""Isotropic 3D harmonic-oscillator basis and contact matrix elements.

Conventions: trap units (hbar = m = omega = 1), oscillator length 1.
Orbitals are |n l m> with radial n >= 0, energy 2n + l + 3/2.  The contact
pseudopotential only connects zero total angular momentum channels, so the
building blocks are

  k_sp(n1, n2, l) : pair matrix element <00|delta|(n1 l)(n2 l)>-type radial
                    factor in the single-particle product basis,
  k_rel(n, np)    : s-wave matrix element in the relative coordinate,
  k_mixed(n, n1)  : one relative-coordinate leg against one s-orbital leg.

All are dimensionless and evaluated with log-gamma so n of a few hundred is
safe.  `k_sp_quadrature_oracle` recomputes k_sp from the radial integral and
is used by the tests as an independent route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import eval_genlaguerre, gammaln

__all__ = [
    "Orbital",
    "orbital_energy",
    "delta_eps_sp",
    "delta_eps_relcom",
    "k_sp",
    "k_sp_matrix",
    "k_sp_quadrature_oracle",
    "k_rel",
    "k_mixed",
]

_SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


@dataclass(frozen=True)
class Orbital:
    """Single-particle state |n l m> of the isotropic trap."""

    n: int
    l: int
    m: int = 0

    def __post_init__(self) -> None:
        if self.n < 0 or self.l < 0:
            raise ValueError(f"need n >= 0 and l >= 0, got n={self.n} l={self.l}")
        if abs(self.m) > self.l:
            raise ValueError(f"|m| <= l violated: m={self.m} l={self.l}")


def orbital_energy(orb: Orbital) -> float:
    """Energy of |n l m> in units of the trap quantum."""
    return 2.0 * orb.n + orb.l + 1.5


def delta_eps_sp(n1: int, l1: int, n2: int, l2: int) -> int:
    """Excitation energy of a pair of orbitals over the condensate pair."""
    if min(n1, l1, n2, l2) < 0:
        raise ValueError("quantum numbers must be non-negative")
    return 2 * (n1 + n2) + l1 + l2


def delta_eps_relcom(n: int, l: int, ncm: int, lcm: int) -> int:
    """Excitation energy of a relative/center-of-mass pair state."""
    if min(n, l, ncm, lcm) < 0:
        raise ValueError("quantum numbers must be non-negative")
    return 2 * (n + ncm) + l + lcm


def _check_nl(n1: int, n2: int, l: int) -> None:
    if n1 < 0 or n2 < 0 or l < 0:
        raise ValueError(f"need n1, n2, l >= 0, got {n1}, {n2}, {l}")


def k_sp(n1: int, n2: int, l: int) -> float:
    """Radial contact element between s-pair (00) and pair (n1 l)(n2 l).

    k_sp = sqrt(2/pi) 2^(-n1-n2-l) Gamma(n1+n2+l+3/2)
           / sqrt(Gamma(n1+1) Gamma(n2+1) Gamma(n1+l+3/2) Gamma(n2+l+3/2))
    """
    _check_nl(n1, n2, l)
    s = n1 + n2 + l
    lg = (
        math.lgamma(s + 1.5)
        - 0.5
        * (
            math.lgamma(n1 + 1.0)
            + math.lgamma(n2 + 1.0)
            + math.lgamma(n1 + l + 1.5)
            + math.lgamma(n2 + l + 1.5)
        )
        - s * math.log(2.0)
    )
    return _SQRT_2_OVER_PI * math.exp(lg)


def k_sp_matrix(l: int, size: int) -> np.ndarray:
    """Table k_sp(n1, n2, l) for 0 <= n1, n2 < size (vectorized).

    Deliberately uncached: the cutoff scans walk size up to ~800 per shell
    and caching every (l, size) block would hold hundreds of MB.
    """
    if l < 0 or size < 1:
        raise ValueError("need l >= 0 and size >= 1")
    n = np.arange(size)
    n1 = n[:, None]
    n2 = n[None, :]
    s = n1 + n2 + l
    lg = (
        gammaln(s + 1.5)
        - 0.5
        * (
            gammaln(n1 + 1.0)
            + gammaln(n2 + 1.0)
            + gammaln(n1 + l + 1.5)
            + gammaln(n2 + l + 1.5)
        )
        - s * math.log(2.0)
    )
    out = _SQRT_2_OVER_PI * np.exp(lg)
    out.setflags(write=False)
    return out


def k_sp_quadrature_oracle(n1: int, n2: int, l: int) -> float:
    """k_sp recomputed from the radial integral (slow; cross-check only).

    (4/sqrt(pi)) N1 N2 Int_0^inf L_n1^(l+1/2)(r^2) L_n2^(l+1/2)(r^2)
        e^(-2 r^2) r^(2l+2) dr,   N = sqrt(2 Gamma(n+1)/Gamma(n+l+3/2)).
    """
    _check_nl(n1, n2, l)
    if n1 + n2 + l > 30:
        raise ValueError("oracle validated for n1+n2+l <= 30 only")
    norm1 = math.exp(0.5 * (math.log(2.0) + math.lgamma(n1 + 1.0) - math.lgamma(n1 + l + 1.5)))
    norm2 = math.exp(0.5 * (math.log(2.0) + math.lgamma(n2 + 1.0) - math.lgamma(n2 + l + 1.5)))

    def integrand(r: float) -> float:
        r2 = r * r
        return (
            eval_genlaguerre(n1, l + 0.5, r2)
            * eval_genlaguerre(n2, l + 0.5, r2)
            * math.exp(-2.0 * r2)
            * r ** (2 * l + 2)
        )

    val, err = quad(integrand, 0.0, 12.0, epsabs=1e-13, epsrel=1e-13, limit=400)
    val *= 4.0 / math.sqrt(math.pi) * norm1 * norm2
    err *= 4.0 / math.sqrt(math.pi) * norm1 * norm2
    if err > 1e-12 * max(1.0, abs(val)):
        raise RuntimeError(f"quadrature did not converge: estimate {val}, error {err}")
    return val


def _k_rel_ground(n: int) -> float:
    # <n, l=0| delta |ground> in the relative coordinate:
    # (2/pi^(3/4)) sqrt(Gamma(n+3/2)/Gamma(n+1))
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    return 2.0 / math.pi ** 0.75 * math.exp(0.5 * (math.lgamma(n + 1.5) - math.lgamma(n + 1.0)))


def k_rel(n: int, nprime: int) -> float:
    """s-wave contact element between relative states n and nprime.

    Separable: k_rel(n, np) = sqrt(pi/2) k_rel(n, 0) k_rel(np, 0), and
    k_rel(n, 0) itself is (2/pi^(3/4)) sqrt(Gamma(n+3/2)/Gamma(n+1)).
    """
    return math.sqrt(math.pi / 2.0) * _k_rel_ground(n) * _k_rel_ground(nprime)


def k_mixed(n: int, n1: int) -> float:
    """One leg a relative s state n, the other an s orbital pair (n1 0)(00)."""
    return math.sqrt(math.pi / 2.0) * _k_rel_ground(n) * k_sp(n1, 0, 0)
