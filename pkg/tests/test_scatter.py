import math

import numpy as np
import pytest

from bosetrap.scatter import (
    GaussianPotential,
    bound_state_count,
    critical_depth,
    fit_effective_range,
    phase_shift,
    tune_depth,
    zero_energy_a,
)

# depth where the first bound state appears (frozen; brentq on 1/a)
VCRIT = -1.3420023254576399

# tuned depths for a grid of target scattering lengths at r0 = 1 (frozen)
TUNED = {
    -2.0: -0.7391186530078124,
    -1.0: -0.5067965625142208,
    0.5: 0.551959273742344,
    1.0: 1.7243401004009247,
    2.0: 16.510371031725924,
}

A_AT_MINUS_ONE = -4.712670510656703  # a0 for v0 = -1
DELTA_01 = 0.4189830510129538  # phase shift at k = 0.1 for v0 = -1


def test_critical_depth():
    assert critical_depth() == pytest.approx(VCRIT, abs=1e-12)
    # just above the threshold there is no bound state, just below there is one
    assert bound_state_count(GaussianPotential(VCRIT * 0.999)) == 0
    assert bound_state_count(GaussianPotential(VCRIT * 1.01)) == 1


@pytest.mark.parametrize("a_target,v0", sorted(TUNED.items()))
def test_tuned_depths_frozen(a_target, v0):
    assert tune_depth(a_target).v0 == pytest.approx(v0, rel=1e-10)


@pytest.mark.parametrize("a_target", [-2.0, -1.0, -0.5, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0])
def test_round_trip(a_target):
    pot = tune_depth(a_target)
    assert abs(zero_energy_a(pot) - a_target) < 1e-9


def test_tune_zero_is_free():
    assert tune_depth(0.0).v0 == 0.0


def test_tune_depth_scales_with_r0():
    # the dimensionless depth depends only on a/r0
    assert tune_depth(-1.0, r0=2.0).v0 == pytest.approx(tune_depth(-0.5).v0, rel=1e-9)
    assert tune_depth(-1.0, r0=2.0).r0 == 2.0


def test_tune_depth_guards():
    with pytest.raises(ValueError):
        tune_depth(8.0)  # beyond the first-bound-state branch
    with pytest.raises(ValueError):
        tune_depth(-1e15)  # more negative than the branch can reach


def test_born_limit():
    # first-order Born value for this potential: sqrt(pi/2) v0 r0
    for v0 in (-1e-4, 1e-4):
        born = math.sqrt(math.pi / 2.0) * v0
        got = zero_energy_a(GaussianPotential(v0))
        assert abs(got - born) / abs(born) < 0.01
        assert abs(got - born) / abs(born) == pytest.approx(7.07e-5, rel=0.05)


def test_zero_energy_a_frozen():
    assert zero_energy_a(GaussianPotential(-1.0)) == pytest.approx(A_AT_MINUS_ONE, rel=1e-10)


def test_step_halving():
    a1 = zero_energy_a(GaussianPotential(-1.0), step=0.005)
    a2 = zero_energy_a(GaussianPotential(-1.0), step=0.0025)
    assert abs(a2 - a1) / abs(a1) < 1e-10


def test_a_is_monotone_on_no_bound_branch():
    vals = [zero_energy_a(GaussianPotential(v)) for v in (-1.3, -1.0, -0.5, -0.1)]
    assert all(x < y < 0 for x, y in zip(vals, vals[1:]))


def test_near_threshold_blowup():
    # approaching the first bound state from the shallow side drives
    # a0 to large negative values
    a = zero_energy_a(GaussianPotential(0.9 * VCRIT))
    assert a < -10.0
    assert a == pytest.approx(-14.358320512112677, rel=1e-10)


def test_bound_state_warning():
    with pytest.warns(UserWarning):
        zero_energy_a(GaussianPotential(-2.0))


def test_bound_state_counts():
    assert bound_state_count(GaussianPotential(-1.0)) == 0
    assert bound_state_count(GaussianPotential(-2.0)) == 1
    assert bound_state_count(GaussianPotential(-8.0)) == 1


def test_phase_shift_frozen():
    assert phase_shift(GaussianPotential(-1.0), 0.1) == pytest.approx(DELTA_01, abs=1e-9)


def test_phase_shift_low_k_limit():
    # delta ~ -a k as k -> 0; the leftover is the effective-range k^2 term,
    # so the deviation shrinks by ~4x when k halves
    pot = GaussianPotential(-1.0)
    dev = [abs(phase_shift(pot, k) / k - (-A_AT_MINUS_ONE)) for k in (0.04, 0.02)]
    assert dev[1] < abs(A_AT_MINUS_ONE) * 8e-3
    assert 3.0 < dev[0] / dev[1] < 5.0


def test_phase_shift_guards():
    pot = GaussianPotential(-1.0)
    with pytest.raises(ValueError):
        phase_shift(pot, 0.0)
    with pytest.raises(ValueError):
        phase_shift(pot, math.pi)  # sampling points one wavelength apart


def test_effective_range_sign_structure():
    # negative a: positive effective range; small positive a: negative,
    # with |r_eff| growing but r_eff * a^2 shrinking as a -> 0
    assert fit_effective_range(tune_depth(-1.0)).r_eff > 0
    assert fit_effective_range(tune_depth(-2.0)).r_eff > 0
    reffs = {a: fit_effective_range(tune_depth(a)).r_eff for a in (0.2, 0.1, 0.05)}
    assert all(r < 0 for r in reffs.values())
    assert abs(reffs[0.05]) > abs(reffs[0.1]) > abs(reffs[0.2])
    assert abs(reffs[0.05]) * 0.05**2 < abs(reffs[0.1]) * 0.1**2 < abs(reffs[0.2]) * 0.2**2


def test_effective_range_frozen_values():
    assert fit_effective_range(tune_depth(-1.0)).r_eff == pytest.approx(3.795447824836267, rel=1e-6)
    assert fit_effective_range(tune_depth(0.05)).r_eff == pytest.approx(-37.06637309406788, rel=1e-6)


def test_effective_range_self_consistency():
    # zero-momentum intercept of the fit reproduces the direct a0
    for a in (-2.0, -1.0, 0.1, 0.2):
        fit = fit_effective_range(tune_depth(a))
        assert abs(fit.a0_fit - fit.a0) / abs(fit.a0) < 5e-3


def test_effective_range_scales_with_r0():
    # dimensionless shape fixed by a/r0; lengths scale linearly
    f1 = fit_effective_range(tune_depth(-1.0, r0=1.0))
    f2 = fit_effective_range(tune_depth(-2.0, r0=2.0))
    assert f2.r_eff == pytest.approx(2.0 * f1.r_eff, rel=1e-6)


def test_effective_range_guards():
    with pytest.raises(ValueError):
        fit_effective_range(tune_depth(-1.0), ks=np.array([0.1, 0.2]))
    with pytest.raises(ValueError):
        fit_effective_range(GaussianPotential(0.0))  # a0 = 0 has no expansion


def test_potential_validation():
    with pytest.raises(ValueError):
        GaussianPotential(-1.0, r0=0.0)
    with pytest.raises(ValueError):
        zero_energy_a(GaussianPotential(-1.0), step=0.2)
