"""Tour of the Gaussian-well scattering solver: depth tuning, the Born
limit, and why shallow wells have large negative effective ranges.

Run as: python3 demos/scattering_tour.py   (a few seconds)
"""

import math

from bosetrap.scatter import (
    GaussianPotential,
    critical_depth,
    fit_effective_range,
    tune_depth,
    zero_energy_a,
)

print("Well depth vs scattering length (lengths in units of the well width)")
print("  target a    tuned V0        achieved a     r_eff       a^2 r_eff")
for target in (-2.0, -1.0, -0.5, 0.05, 0.1, 0.2, 0.5, 1.0):
    pot = tune_depth(target)
    fit = fit_effective_range(pot)
    a_chk = zero_energy_a(pot)
    print(
        f"  {target:+8.3f}   {pot.v0:+12.6f}   {a_chk:+12.9f}   "
        f"{fit.r_eff:+9.3f}   {fit.r_eff * target**2:+8.4f}"
    )
print()
print("Attractive wells (a < 0) have r_eff > 0; weakly repulsive-looking")
print("wells (small a > 0) hide a huge negative r_eff, but the volume")
print("a^2 r_eff stays small, so the trap-energy range correction is tame.")
print()

vc = critical_depth()
print(f"First bound state appears at V0 = {vc:.9f}")
for frac in (0.9, 0.99, 0.999):
    pot = GaussianPotential(frac * vc)
    print(f"  V0 = {frac:.3f} vc:  a = {zero_energy_a(pot):10.4f}  (diverging to -inf)")
print()

print("Born limit: for a vanishing depth, a -> sqrt(pi/2) V0 (integral of V)")
for v0 in (-1e-3, -1e-4, 1e-4):
    a_num = zero_energy_a(GaussianPotential(v0))
    a_born = math.sqrt(math.pi / 2.0) * v0
    print(f"  V0 = {v0:+.0e}:  a = {a_num:+.8e}, Born = {a_born:+.8e}, rel dev {abs(a_num / a_born - 1.0):.1e}")
print()

print("Width scaling: scattering observables in units of r0 only depend on")
print("the dimensionless depth, so doubling r0 at fixed a/r0 doubles r_eff.")
f1 = fit_effective_range(tune_depth(-1.0, r0=1.0))
f2 = fit_effective_range(tune_depth(-2.0, r0=2.0))
print(f"  r0 = 1: r_eff = {f1.r_eff:.6f}    r0 = 2 (same shape): r_eff = {f2.r_eff:.6f}")
