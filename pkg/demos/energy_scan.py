"""Renormalization in action: bare sums run away with the cutoff, the
renormalized energies do not.

Run as: python3 demos/energy_scan.py   (takes ~20 s on first run)
"""

import math

from bosetrap.coeffs import RegulatorSpec, beta2_2
from bosetrap.energies import (
    TrapContext,
    coefficient_table,
    default_coefficients,
    exact_two_body_energy,
    interaction_energy,
    total_energy,
    u2,
    u2_regulated,
)

cset = default_coefficients()
xi = 0.01

print("1. The bare second-order pair sum diverges like sqrt(cutoff)")
print("   cutoff   beta2_2        beta2_2 * xi^2")
for cutoff in (50.0, 200.0, 800.0):
    b = beta2_2(RegulatorSpec("hard-cutoff", cutoff))
    print(f"   {cutoff:6.0f}   {b:12.6f}   {b * xi**2:.3e}")
print()

print("2. After matching to the two-body spectrum the cutoff drops out")
print("   (U2 at omega = 2 omega0, same xi, counterterm included)")
for cutoff in (50.0, 200.0, 800.0):
    ctx = TrapContext.dimensionless(xi, 2.0, regulator=RegulatorSpec("hard-cutoff", cutoff))
    print(f"   cutoff {cutoff:6.0f}:  U2 = {u2_regulated(ctx, cset).total:.12e}")
ctx = TrapContext.dimensionless(xi, 2.0)
print(f"   closed form :  U2 = {u2(ctx, cset).total:.12e}")
print()

print("3. At the reference trap U2 truncates to its first order exactly")
ctx0 = TrapContext.dimensionless(xi, 1.0, regulator=RegulatorSpec("exponential", 200.0))
print(f"   U2(omega0) - alpha2_1 xi = {u2_regulated(ctx0, cset).total - cset.alpha2_1 * xi:.1e}")
print()

print("4. Against the exact two-body spectrum (free-space length)")
t = coefficient_table(1.0, 0.0, cset)
print("   xi        series E2       exact E2        difference")
for x in (0.005, 0.01, 0.02, 0.05):
    series = 1.5 + t.c2_1 * x + t.c2_2 * x**2 + t.c2_3 * x**3
    exact = exact_two_body_energy(x)
    print(f"   {x:.3f}   {series:.10f}   {exact:.10f}   {series - exact:+.2e}")
print("   (the difference is the truncated xi^4 tail, ~0.4 xi^4)")
print()

print("5. Ground-state energies for a few atom numbers, xi = 0.01")
print("   N    E/hbar omega    interaction part")
for n in (2, 3, 5, 10):
    c = TrapContext.dimensionless(0.01, 1.0)
    print(f"   {n:2d}   {total_energy(c, n, cset):.9f}   {interaction_energy(c, n, cset):.3e}")
print()

print("6. Rubidium-87 numbers: a 150 Hz measurement trap prepared at 50 Hz")
ctx_rb = TrapContext.rubidium87(omega=2 * math.pi * 150.0, omega0=2 * math.pi * 50.0)
e = total_energy(ctx_rb, 3, cset)
hz = e * ctx_rb.omega / (2 * math.pi)
print(f"   xi = {ctx_rb.xi:.6f}, E(N=3) = {e:.9f} hbar omega = {hz:.3f} Hz")
