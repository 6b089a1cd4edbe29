"""Effective m-body interaction energies of N trapped bosons.

The total energy through third order in the scattering length is

  E/hbar omega = (3/2) N + sum_m U_m C(N, m) m!/m! = (3/2) N
               + (1/2!) U_2 N(N-1) + (1/3!) U_3 N(N-1)(N-2) + (1/4!) U_4 ...

with U_m polynomials in xi = a_t(omega0)/sigma(omega), where a_t(omega0) is
the scattering length renormalized at trap frequency omega0 and sigma(omega)
= sqrt(hbar/(m omega)) is the oscillator length where the energy is measured.

Two routes are provided.  The closed route (u2/u3/u4) uses the renormalized
coefficient functions of omega0/omega, already in the infinite-cutoff limit.
The regulated route (u2_regulated/u3_regulated) assembles the same orders
from the cutoff sums plus the explicit counterterm; at omega = omega0 the
cancellation is exact at any cutoff, away from it a sqrt(omega/omega_c)
remainder survives and vanishes as the cutoff grows.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

from scipy.optimize import brentq
from scipy.special import gamma as gamma_fn

from . import coeffs
from .coeffs import CoefficientValue, RegulatorSpec

__all__ = [
    "TrapContext",
    "CoefficientSet",
    "CoefficientTable",
    "UTerm",
    "InteractionEnergies",
    "default_coefficients",
    "coefficient_table",
    "counterterm",
    "u2",
    "u3",
    "u4",
    "u2_regulated",
    "u3_regulated",
    "interaction_energies",
    "interaction_energy",
    "total_energy",
    "exact_two_body_energy",
    "rescaled_u",
    "omega_s",
    "scheme_independence_residual",
    "RB87_SCATTERING_LENGTH",
    "RB87_EFFECTIVE_RANGE",
    "RB87_MASS",
    "HBAR",
]

XI_VALIDITY = 0.2  # |xi| beyond this and the truncated series is not trustworthy

# CODATA-ish constants for the rubidium-87 convenience constructor (SI)
HBAR = 1.054571817e-34
ATOMIC_MASS_UNIT = 1.66053906892e-27
RB87_SCATTERING_LENGTH = 5.3e-9
RB87_EFFECTIVE_RANGE = 7.9e-9
RB87_MASS = 86.9 * ATOMIC_MASS_UNIT

_DEFAULT_REGULATOR = RegulatorSpec("exponential", 200.0)


@dataclass(frozen=True)
class TrapContext:
    """Physical setting: measurement trap, renormalization trap, interaction.

    omega is the trap frequency where energies are evaluated, omega0 the one
    where the scattering length a_t was fixed; both in the same (arbitrary)
    frequency unit.  a_t and r_eff carry the same length unit as sigma.
    """

    omega: float
    omega0: float
    a_t: float
    r_eff: float = 0.0
    mass: float = 1.0
    hbar: float = 1.0
    regulator: RegulatorSpec = _DEFAULT_REGULATOR

    def __post_init__(self) -> None:
        if not self.omega > 0 or not self.omega0 > 0:
            raise ValueError("trap frequencies must be positive")
        if not self.mass > 0 or not self.hbar > 0:
            raise ValueError("mass and hbar must be positive")

    def sigma(self, freq: float) -> float:
        """Oscillator length at a given trap frequency."""
        return math.sqrt(self.hbar / (self.mass * freq))

    @property
    def xi(self) -> float:
        """a_t(omega0)/sigma(omega), the working expansion parameter."""
        return self.a_t / self.sigma(self.omega)

    @property
    def xi0(self) -> float:
        """a_t(omega0)/sigma(omega0)."""
        return self.a_t / self.sigma(self.omega0)

    @property
    def ratio(self) -> float:
        """omega0/omega."""
        return self.omega0 / self.omega

    @classmethod
    def dimensionless(
        cls,
        xi: float,
        omega_over_omega0: float = 1.0,
        reff_ratio: float = 0.0,
        regulator: RegulatorSpec = _DEFAULT_REGULATOR,
    ) -> "TrapContext":
        """Trap units: hbar = mass = omega0 = 1, given xi at the measurement trap."""
        omega = omega_over_omega0
        a_t = xi * math.sqrt(1.0 / omega)
        return cls(
            omega=omega,
            omega0=1.0,
            a_t=a_t,
            r_eff=reff_ratio * a_t,
            regulator=regulator,
        )

    @classmethod
    def rubidium87(
        cls,
        omega: float,
        omega0: float,
        regulator: RegulatorSpec = _DEFAULT_REGULATOR,
    ) -> "TrapContext":
        """Rb-87 triplet parameters (a = 5.3 nm, r_eff = 7.9 nm, m = 86.9 u); omegas in rad/s."""
        return cls(
            omega=omega,
            omega0=omega0,
            a_t=RB87_SCATTERING_LENGTH,
            r_eff=RB87_EFFECTIVE_RANGE,
            mass=RB87_MASS,
            hbar=HBAR,
            regulator=regulator,
        )


@dataclass(frozen=True)
class CoefficientSet:
    """The omega-independent coefficient constants feeding the tables."""

    alpha2_1: float
    alpha2_12: float
    alpha3_2: float
    alpha3_3: float
    alpha3_3_uncertainty: float
    alpha41_3: float
    alpha42_3: float
    alpha43_3: float
    alpha5_3: float


@lru_cache(maxsize=4)
def default_coefficients(tree_cutoff: float = 80.0) -> CoefficientSet:
    """Analytic values where known, hard-cutoff tree sums at tree_cutoff,
    extrapolated alpha3_3 on the default grid.  Cached (alpha3_3 costs ~15 s)."""
    reg = RegulatorSpec("hard-cutoff", tree_cutoff)
    a33 = coeffs.alpha3_3()
    return CoefficientSet(
        alpha2_1=coeffs.alpha2_1().value,
        alpha2_12=coeffs.alpha2_12().value,
        alpha3_2=coeffs.alpha3_2("analytic").value,
        alpha3_3=a33.value,
        alpha3_3_uncertainty=a33.uncertainty,
        alpha41_3=coeffs.alpha41_3(reg),
        alpha42_3=coeffs.alpha42_3(reg),
        alpha43_3=coeffs.alpha43_3("analytic").value,
        alpha5_3=coeffs.alpha5_3("dilog").value,
    )


@dataclass(frozen=True)
class CoefficientTable:
    """Renormalized expansion coefficients at a given omega0/omega."""

    ratio: float  # omega0/omega
    c2_1: float
    c2_2: float
    c2_3: float
    d2_12: float
    c3_2: float
    c3_3: float
    c4_3: float
    c3_3_uncertainty: float


def coefficient_table(
    omega: float,
    omega0: float,
    cset: CoefficientSet | None = None,
) -> CoefficientTable:
    """Closed-form coefficient functions of r = omega0/omega.

    omega0 = 0 is allowed here (the r -> 0 limit used by the rescaled form).
    """
    if omega <= 0 or omega0 < 0:
        raise ValueError("need omega > 0 and omega0 >= 0")
    cs = cset if cset is not None else default_coefficients()
    r = omega0 / omega
    b = 2.0 / math.pi * (1.0 - math.log(2.0))
    c2_2 = b * (1.0 - math.sqrt(r))
    c2_3 = c2_2 * c2_2 / cs.alpha2_1 - cs.alpha43_3 * (1.0 - r)
    c3_3 = (
        -12.0 * cs.alpha3_2 * c2_2 / cs.alpha2_1
        + 12.0 * cs.alpha3_3
        - 6.0 * cs.alpha43_3
        - 18.0 * cs.alpha5_3
    )
    return CoefficientTable(
        ratio=r,
        c2_1=cs.alpha2_1,
        c2_2=c2_2,
        c2_3=c2_3,
        d2_12=cs.alpha2_12 * (1.0 - r),
        c3_2=-6.0 * cs.alpha3_2,
        c3_3=c3_3,
        c4_3=48.0 * cs.alpha41_3 + 48.0 * cs.alpha42_3 - 72.0 * cs.alpha5_3,
        c3_3_uncertainty=12.0 * cs.alpha3_3_uncertainty,
    )


@dataclass(frozen=True)
class UTerm:
    """One effective interaction with its contribution breakdown by structure."""

    total: float
    contributions: dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class InteractionEnergies:
    xi: float
    u2: UTerm
    u3: UTerm
    u4: UTerm
    warnings: tuple[str, ...] = ()


def u2(ctx: TrapContext, cset: CoefficientSet | None = None) -> UTerm:
    """Two-body effective interaction, closed (infinite-cutoff) route."""
    t = coefficient_table(ctx.omega, ctx.omega0, cset)
    xi = ctx.xi
    reff = ctx.r_eff / ctx.sigma(ctx.omega)
    parts = {
        "xi": t.c2_1 * xi,
        "xi^2": t.c2_2 * xi * xi,
        "xi^3": t.c2_3 * xi**3,
        "reff*xi^2": t.d2_12 * reff * xi * xi,
    }
    return UTerm(total=math.fsum(parts.values()), contributions=parts)


def u3(ctx: TrapContext, cset: CoefficientSet | None = None) -> UTerm:
    """Three-body effective interaction, closed route."""
    t = coefficient_table(ctx.omega, ctx.omega0, cset)
    xi = ctx.xi
    parts = {"xi^2": t.c3_2 * xi * xi, "xi^3": t.c3_3 * xi**3}
    return UTerm(total=math.fsum(parts.values()), contributions=parts)


def u4(ctx: TrapContext, cset: CoefficientSet | None = None) -> UTerm:
    """Four-body effective interaction, closed route."""
    t = coefficient_table(ctx.omega, ctx.omega0, cset)
    parts = {"xi^3": t.c4_3 * ctx.xi**3}
    return UTerm(total=parts["xi^3"], contributions=parts)


def interaction_energies(ctx: TrapContext, cset: CoefficientSet | None = None) -> InteractionEnergies:
    """U_2, U_3, U_4 with breakdowns; warns when |xi| leaves the small-xi regime."""
    notes: list[str] = []
    if abs(ctx.xi) > XI_VALIDITY:
        msg = f"|xi| = {abs(ctx.xi):.3g} > {XI_VALIDITY}; third-order truncation unreliable"
        warnings.warn(msg, stacklevel=2)
        notes.append(msg)
    return InteractionEnergies(
        xi=ctx.xi,
        u2=u2(ctx, cset),
        u3=u3(ctx, cset),
        u4=u4(ctx, cset),
        warnings=tuple(notes),
    )


# ---------------------------------------------------------------------------
# regulated route: cutoff sums plus explicit counterterm
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Counterterm:
    """Expansion of a_ct(omega0)/sigma(omega0) in powers of xi0."""

    xi0: float
    order: int
    chi2: float  # coefficient of xi0^2
    chi3: float  # coefficient of xi0^3 (0 when order == 2)
    chi2_reff: float  # coefficient of (r_eff/sigma0) xi0^2

    @property
    def value(self) -> float:
        return (self.chi2 + self.chi2_reff) * self.xi0**2 + self.chi3 * self.xi0**3


def counterterm(
    ctx: TrapContext,
    order: int = 3,
    cset: CoefficientSet | None = None,
) -> Counterterm:
    """Counterterm fixed at omega0 so the physical a_t is reproduced there.

    order 2 cancels the one-loop divergence, order 3 also the two-loop one.
    The regulator's cutoff_ratio is interpreted at the measurement trap
    omega; the same physical omega_c gives ratio * omega/omega0 at omega0.
    """
    if order not in (2, 3):
        raise ValueError("counterterm implemented at orders 2 and 3")
    cs = cset if cset is not None else default_coefficients()
    reg0 = RegulatorSpec(ctx.regulator.scheme, ctx.regulator.cutoff_ratio * ctx.omega / ctx.omega0)
    b2 = coeffs.beta2_2(reg0)
    chi2 = b2 / cs.alpha2_1
    chi3 = 0.0
    if order == 3:
        b3 = coeffs.beta2_3(reg0, "direct")
        chi3 = -(b3 - 2.0 * b2 * b2 / cs.alpha2_1 - cs.alpha43_3) / cs.alpha2_1
    chi2_reff = -cs.alpha2_12 * (ctx.r_eff / ctx.sigma(ctx.omega0)) / cs.alpha2_1
    return Counterterm(xi0=ctx.xi0, order=order, chi2=chi2, chi3=chi3, chi2_reff=chi2_reff)


def u2_regulated(ctx: TrapContext, cset: CoefficientSet | None = None) -> UTerm:
    """U_2 from the regulated sums at finite cutoff plus the counterterm.

    Exactly alpha2_1 * xi at omega = omega0 for any cutoff; elsewhere it
    approaches the closed route like sqrt(omega/omega_c).
    """
    cs = cset if cset is not None else default_coefficients()
    ct = counterterm(ctx, order=3, cset=cs)
    r = ctx.ratio
    sr = math.sqrt(r)
    xi = ctx.xi
    b2w = coeffs.beta2_2(ctx.regulator)
    b3w = coeffs.beta2_3(ctx.regulator, "direct")
    reff_w = ctx.r_eff / ctx.sigma(ctx.omega)
    parts = {
        "xi": cs.alpha2_1 * xi,
        "xi^2": (sr * ct.chi2 * cs.alpha2_1 - b2w) * xi * xi,
        "xi^3": (b3w - cs.alpha43_3 + cs.alpha2_1 * r * ct.chi3 - 2.0 * b2w * sr * ct.chi2)
        * xi**3,
        "reff*xi^2": cs.alpha2_12 * (1.0 - r) * reff_w * xi * xi,
    }
    return UTerm(total=math.fsum(parts.values()), contributions=parts)


def u3_regulated(ctx: TrapContext, cset: CoefficientSet | None = None) -> UTerm:
    """U_3 from the regulated sums; hard-cutoff only (the three-body loop
    partial sums are implemented for that scheme)."""
    if ctx.regulator.scheme != "hard-cutoff":
        raise ValueError("u3_regulated needs a hard-cutoff regulator")
    cs = cset if cset is not None else default_coefficients()
    ct = counterterm(ctx, order=3, cset=cs)
    xi = ctx.xi
    sr = math.sqrt(ctx.ratio)
    a32w = coeffs.alpha3_2("sum", ctx.regulator).value
    b33w = coeffs.beta3_3(ctx.regulator, "direct")
    a33w = coeffs.alpha3_3_partial(ctx.regulator)
    parts = {
        "xi^2": -6.0 * a32w * xi * xi,
        "xi^3": (
            12.0 * a33w
            + 12.0 * b33w
            - 6.0 * cs.alpha43_3
            - 18.0 * cs.alpha5_3
            - 12.0 * a32w * sr * ct.chi2
        )
        * xi**3,
    }
    return UTerm(total=math.fsum(parts.values()), contributions=parts)


# ---------------------------------------------------------------------------
# totals, the exact two-body benchmark, rescaled forms
# ---------------------------------------------------------------------------


def interaction_energy(ctx: TrapContext, n_atoms: int, cset: CoefficientSet | None = None) -> float:
    """Interaction part of E/(hbar omega): sum_m U_m binom(N, m)."""
    if n_atoms != int(n_atoms) or n_atoms < 0:
        raise ValueError("atom number must be a non-negative integer")
    n = int(n_atoms)
    vals = interaction_energies(ctx, cset)
    e = 0.0
    e += vals.u2.total * (n * (n - 1) / 2.0)
    e += vals.u3.total * (n * (n - 1) * (n - 2) / 6.0)
    e += vals.u4.total * (n * (n - 1) * (n - 2) * (n - 3) / 24.0)
    return e


def total_energy(ctx: TrapContext, n_atoms: int, cset: CoefficientSet | None = None) -> float:
    """E/(hbar omega) of the N-atom ground state through third order."""
    if n_atoms != int(n_atoms) or n_atoms < 0:
        raise ValueError("atom number must be a non-negative integer")
    n = int(n_atoms)
    return 1.5 * n + interaction_energy(ctx, n, cset)


def exact_two_body_energy(xi: float) -> float:
    """Exact relative-motion energy of two contact-interacting trapped atoms.

    Solves sqrt(2) Gamma(3/4 - E/2)/Gamma(1/4 - E/2) = 1/xi for the branch
    connected to E = 3/2 at xi = 0, in units of the trap quantum.  Validated
    for |xi| < 1 (the root stays inside the connected bracket there).
    """
    if not abs(xi) < 1.0:
        raise ValueError(f"need |xi| < 1, got {xi}")
    if xi == 0.0:
        return 1.5

    def f(e: float) -> float:
        return math.sqrt(2.0) * gamma_fn(0.75 - e / 2.0) / gamma_fn(0.25 - e / 2.0) - 1.0 / xi

    eps = 1e-13
    lo, hi = (1.5 + eps, 2.5 - eps) if xi > 0 else (0.5 + eps, 1.5 - eps)
    if f(lo) * f(hi) > 0:
        raise ValueError(f"no root bracketed for xi = {xi}; outside validated range")
    return float(brentq(f, lo, hi, xtol=1e-16, rtol=8.881784197001252e-16))


def omega_s(mass: float, a_t: float, hbar: float = 1.0) -> float:
    """Frequency scale hbar/(m a_t^2) where xi would reach 1."""
    if mass <= 0 or a_t == 0:
        raise ValueError("need mass > 0 and a_t != 0")
    return hbar / (mass * a_t * a_t)


def rescaled_u(
    x: float,
    reff_over_at: float = 0.0,
    cset: CoefficientSet | None = None,
) -> tuple[float, float, float]:
    """(U2, U3, U4) times x = omega/omega_s, zero-frequency renormalization.

    In these units xi = sqrt(x) and every U_m * x is dimensionless and finite
    as x -> 0, which is the natural way to plot the hierarchy.
    """
    if x < 0:
        raise ValueError("x = omega/omega_s must be >= 0")
    t = coefficient_table(1.0, 0.0, cset)
    u2t = t.c2_1 * x**1.5 + t.c2_2 * x * x + (t.c2_3 + t.d2_12 * reff_over_at) * x**2.5
    u3t = t.c3_2 * x * x + t.c3_3 * x**2.5
    u4t = t.c4_3 * x**2.5
    return u2t, u3t, u4t


def scheme_independence_residual(
    ctx: TrapContext,
    omega0_prime: float,
    n_atoms: int,
    cset: CoefficientSet | None = None,
) -> float:
    """Interaction-energy change under re-renormalizing at omega0_prime.

    The scattering length at the new reference trap is fixed by matching the
    two-body interaction there: a_t' = sigma(omega0') U_2(omega0'; omega0)
    / alpha2_1.  The residual is O(xi^4) and shrinks 16-fold when xi halves.
    """
    if omega0_prime <= 0:
        raise ValueError("omega0_prime must be positive")
    cs = cset if cset is not None else default_coefficients()
    e_old = interaction_energy(ctx, n_atoms, cs)
    ctx_at_prime = TrapContext(
        omega=omega0_prime,
        omega0=ctx.omega0,
        a_t=ctx.a_t,
        r_eff=ctx.r_eff,
        mass=ctx.mass,
        hbar=ctx.hbar,
        regulator=ctx.regulator,
    )
    a_prime = ctx.sigma(omega0_prime) * u2(ctx_at_prime, cs).total / cs.alpha2_1
    ctx_new = TrapContext(
        omega=ctx.omega,
        omega0=omega0_prime,
        a_t=a_prime,
        r_eff=ctx.r_eff,
        mass=ctx.mass,
        hbar=ctx.hbar,
        regulator=ctx.regulator,
    )
    return interaction_energy(ctx_new, n_atoms, cs) - e_old
