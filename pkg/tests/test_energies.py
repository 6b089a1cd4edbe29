import math

import pytest

from bosetrap.coeffs import RegulatorSpec, beta2_2, beta2_3
from bosetrap.energies import (
    TrapContext,
    coefficient_table,
    counterterm,
    default_coefficients,
    exact_two_body_energy,
    interaction_energies,
    interaction_energy,
    omega_s,
    rescaled_u,
    total_energy,
    u2,
    u2_regulated,
    u3,
    u3_regulated,
    u4,
)

# trap-units interaction table at r = omega0/omega = 0 (frozen regressions;
# the spec-level decimal gates live in the acceptance suite)
C2_1 = 0.7978845608028654
C2_2 = 0.19534857206227818
C2_3 = -0.3911185306395326
D2_12 = 0.5984134206021491
C3_2 = -0.8557583134846957
C3_3 = 2.792176921481944
C4_3 = 2.433174845358679
C3_3_EQUAL_TRAPS = 3.211212889295243

# exact two-body trap energies for xi = a_t/sigma (transcendental solve)
BUSCH_REFS = {0.01: 1.50799798527955, 0.05: 1.540331227642388, -0.05: 1.4606404269568807}


@pytest.fixture(scope="module")
def cset():
    return default_coefficients()


def test_table_at_free_space_reference(cset):
    t = coefficient_table(1.0, 0.0, cset)
    assert t.ratio == 0.0
    assert t.c2_1 == pytest.approx(C2_1, abs=1e-14)
    assert t.c2_2 == pytest.approx(C2_2, abs=1e-14)
    assert t.c2_3 == pytest.approx(C2_3, abs=1e-14)
    assert t.d2_12 == pytest.approx(D2_12, abs=1e-14)
    assert t.c3_2 == pytest.approx(C3_2, abs=1e-14)
    assert t.c3_3 == pytest.approx(C3_3, abs=1e-10)
    assert t.c4_3 == pytest.approx(C4_3, abs=1e-10)
    assert t.c3_3_uncertainty > 0


def test_table_at_equal_traps(cset):
    # renormalizing in the measurement trap leaves only the first-order
    # two-body term; the higher two-body coefficients cancel identically
    t = coefficient_table(1.0, 1.0, cset)
    assert t.c2_2 == 0.0
    assert t.c2_3 == 0.0
    assert t.d2_12 == 0.0
    assert t.c3_3 == pytest.approx(C3_3_EQUAL_TRAPS, abs=1e-10)


def test_reff_coefficient_is_linear_in_ratio(cset):
    t = coefficient_table(1.0, 0.25, cset)
    assert t.d2_12 == pytest.approx(cset.alpha2_12 * (1.0 - 0.25), rel=1e-15)


def test_table_rejects_bad_frequencies(cset):
    with pytest.raises(ValueError):
        coefficient_table(-1.0, 0.0, cset)
    with pytest.raises(ValueError):
        coefficient_table(1.0, -0.5, cset)


def test_u_terms_assemble(cset):
    ctx = TrapContext.dimensionless(0.01, 2.0)
    for term in (u2(ctx, cset), u3(ctx, cset), u4(ctx, cset)):
        assert term.total == pytest.approx(math.fsum(term.contributions.values()), abs=1e-18)
    assert set(u2(ctx, cset).contributions) == {"xi", "xi^2", "xi^3", "reff*xi^2"}
    assert set(u3(ctx, cset).contributions) == {"xi^2", "xi^3"}
    assert set(u4(ctx, cset).contributions) == {"xi^3"}


def test_u2_leading_term(cset):
    ctx = TrapContext.dimensionless(0.01, 1.0)
    assert u2(ctx, cset).total == pytest.approx(cset.alpha2_1 * 0.01, abs=1e-16)


def test_interaction_energy_small_n(cset):
    ctx = TrapContext.dimensionless(0.01, 2.0)
    assert interaction_energy(ctx, 0, cset) == 0.0
    assert interaction_energy(ctx, 1, cset) == 0.0
    assert interaction_energy(ctx, 2, cset) == pytest.approx(u2(ctx, cset).total, rel=1e-15)
    e3 = 3.0 * u2(ctx, cset).total + u3(ctx, cset).total
    assert interaction_energy(ctx, 3, cset) == pytest.approx(e3, rel=1e-14)
    e4 = 6.0 * u2(ctx, cset).total + 4.0 * u3(ctx, cset).total + u4(ctx, cset).total
    assert interaction_energy(ctx, 4, cset) == pytest.approx(e4, rel=1e-14)
    with pytest.raises(ValueError):
        interaction_energy(ctx, -1, cset)


def test_total_energy(cset):
    ctx = TrapContext.dimensionless(0.01, 2.0)
    assert total_energy(ctx, 1, cset) == 1.5
    n = 5
    expect = 1.5 * n + interaction_energy(ctx, n, cset)
    assert total_energy(ctx, n, cset) == pytest.approx(expect, rel=1e-15)


def test_warnings_on_large_xi(cset):
    assert interaction_energies(TrapContext.dimensionless(0.01, 1.0), cset).warnings == ()
    with pytest.warns(UserWarning, match="truncation"):
        warned = interaction_energies(TrapContext.dimensionless(0.3, 1.0), cset)
    assert len(warned.warnings) == 1


def test_counterterm_structure(cset):
    ctx = TrapContext.dimensionless(0.01, 1.0)
    ct2 = counterterm(ctx, 2, cset)
    assert ct2.chi3 == 0.0
    ct3 = counterterm(ctx, 3, cset)
    assert ct3.chi2 == ct2.chi2
    assert ct3.value == pytest.approx(
        ct3.chi2 * 1e-4 + ct3.chi3 * 1e-6, rel=1e-15
    )
    # frozen values for the default exponential cutoff 200 at omega = omega0
    assert ct3.chi2 == pytest.approx(7.678102345240951, abs=1e-12)
    assert ct3.chi3 == pytest.approx(59.5033932679221, abs=1e-10)
    with pytest.raises(ValueError):
        counterterm(ctx, 4, cset)


def test_counterterm_tracks_regulator(cset):
    reg = RegulatorSpec("exponential", 200.0)
    ctx = TrapContext.dimensionless(0.01, 1.0, regulator=reg)
    ct = counterterm(ctx, 3, cset)
    assert ct.chi2 == pytest.approx(beta2_2(reg) / cset.alpha2_1, rel=1e-15)
    b2 = beta2_2(reg)
    b3 = beta2_3(reg, "direct")
    chi3 = -(b3 - 2.0 * b2 * b2 / cset.alpha2_1 - cset.alpha43_3) / cset.alpha2_1
    assert ct.chi3 == pytest.approx(chi3, rel=1e-15)


def test_regulated_route_matches_closed_route(cset):
    # at omega != omega0 the finite-cutoff assembly keeps an
    # O(sqrt(omega/omega_c)) remainder; hard cutoff 200 sits around 5e-7
    ctx = TrapContext.dimensionless(0.01, 2.0, regulator=RegulatorSpec("hard-cutoff", 200.0))
    assert abs(u2_regulated(ctx, cset).total - u2(ctx, cset).total) < 1e-6
    assert abs(u3_regulated(ctx, cset).total - u3(ctx, cset).total) < 1e-6


def test_regulated_route_is_exact_at_the_reference_trap(cset):
    for scheme in ("hard-cutoff", "exponential"):
        ctx = TrapContext.dimensionless(
            0.01, 1.0, regulator=RegulatorSpec(scheme, 50.0)
        )
        assert abs(u2_regulated(ctx, cset).total - cset.alpha2_1 * 0.01) < 1e-15


def test_u3_regulated_needs_hard_cutoff(cset):
    ctx = TrapContext.dimensionless(0.01, 1.0)
    with pytest.raises(ValueError):
        u3_regulated(ctx, cset)


@pytest.mark.parametrize("xi,ref", sorted(BUSCH_REFS.items()))
def test_exact_two_body_energy(xi, ref):
    assert exact_two_body_energy(xi) == pytest.approx(ref, abs=1e-12)


def test_exact_two_body_energy_limits():
    assert exact_two_body_energy(0.0) == 1.5
    # transcendental residual: sqrt(2) Gamma(3/4 - E/2) / Gamma(1/4 - E/2) = 1/xi
    xi = 0.03
    e = exact_two_body_energy(xi)
    lhs = math.sqrt(2.0) * math.gamma(0.75 - e / 2.0) / math.gamma(0.25 - e / 2.0)
    assert lhs == pytest.approx(1.0 / xi, rel=1e-10)


def test_rescaled_route_against_exact_two_body(cset):
    # scan variable x = omega/omega_s with xi = sqrt(x); the mismatch with
    # the exact dimensionless two-body energy is the xi^4 Busch term
    for x in (0.0025, 0.01, 0.04):
        u2t, u3t, u4t = rescaled_u(x, 0.0, cset)
        exact = (exact_two_body_energy(math.sqrt(x)) - 1.5) * x
        assert abs(u2t - exact) < 0.5 * x**3
    assert rescaled_u(0.0, 0.0, cset) == (0.0, 0.0, 0.0)
    with pytest.raises(ValueError):
        rescaled_u(-0.1, 0.0, cset)


def test_rescaled_route_reff_shift_is_linear(cset):
    base = rescaled_u(0.01, 0.0, cset)[0]
    shifted = rescaled_u(0.01, 0.3, cset)[0]
    assert shifted - base == pytest.approx(cset.alpha2_12 * 0.3 * 0.01**2.5, rel=1e-12)


def test_omega_s():
    # hbar / (m a^2), the natural frequency scale of the scattering length
    assert omega_s(2.0, 3.0) == pytest.approx(1.0 / (2.0 * 9.0), rel=1e-15)


def test_rubidium_context():
    ctx = TrapContext.rubidium87(2.0 * math.pi * 100.0, 2.0 * math.pi * 100.0)
    assert ctx.xi > 0
    assert ctx.xi == pytest.approx(ctx.a_t / ctx.sigma(ctx.omega), rel=1e-15)
    assert ctx.xi0 == pytest.approx(ctx.xi, rel=1e-15)


def test_context_validation():
    with pytest.raises(ValueError):
        TrapContext.dimensionless(0.01, -2.0)
