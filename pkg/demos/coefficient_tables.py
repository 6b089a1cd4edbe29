"""Walk through the interaction coefficients, from closed forms to the
extrapolated loop sum.

Run as: python3 demos/coefficient_tables.py   (takes ~20 s; the slow part is
the cutoff ladder for the one constant that has no closed form)
"""

import math

from bosetrap.coeffs import (
    DEFAULT_CUTOFF_GRID,
    RegulatorSpec,
    alpha2_1,
    alpha2_12,
    alpha3_2,
    alpha3_3,
    alpha41_3,
    alpha42_3,
    alpha43_3,
    alpha5_3,
)
from bosetrap.energies import coefficient_table, default_coefficients

print("Closed-form constants")
print("---------------------")
print(f"alpha2_1  = {alpha2_1().value:.15f}   (= sqrt(2/pi))")
print(f"alpha2_12 = {alpha2_12().value:.15f}   (= 0.75 sqrt(2/pi))")
print(f"alpha3_2  = {alpha3_2().value:.15f}")
print(f"alpha43_3 = {alpha43_3().value:.15f}")
print(f"alpha5_3  = {alpha5_3().value:.15f}")
print()

# the two absolutely convergent tree sums: a modest hard cutoff is enough,
# doubling it moves the digits we print by less than 1e-8
reg = RegulatorSpec("hard-cutoff", 80.0)
print("Convergent tree sums at hard cutoff 80")
print(f"alpha41_3 = {alpha41_3(reg):.12f}")
print(f"alpha42_3 = {alpha42_3(reg):.12f}")
print()

# the three-body loop sum needs renormalization: its partial sums approach
# the limit like a + b sqrt(omega/omega_c), so we extrapolate over a ladder
# of cutoffs and calibrate the error bar on alpha43_3, whose limit we know
print(f"Extrapolating alpha3_3 over cutoffs {DEFAULT_CUTOFF_GRID} ...")
a33 = alpha3_3()
print(f"alpha3_3  = {a33.value:.9f} +- {a33.uncertainty:.2e}  ({a33.method})")
print()

cset = default_coefficients()
labels = [
    (1.0, 0.0, "free-space length (omega0 -> 0)"),
    (1.0, 1.0, "reference-trap length, omega = omega0"),
    (2.0, 1.0, "reference-trap length, omega = 2 omega0"),
]
for omega, omega0, label in labels:
    t = coefficient_table(omega, omega0, cset)
    print(f"Interaction coefficients, expansion in the {label}")
    print(f"  c2_1 = {t.c2_1:+.6f}   c2_2 = {t.c2_2:+.6f}   c2_3 = {t.c2_3:+.6f}")
    print(f"  c3_2 = {t.c3_2:+.6f}   c3_3 = {t.c3_3:+.6f}   c4_3 = {t.c4_3:+.6f}")
    print(f"  d2_12 (range correction weight) = {t.d2_12:+.6f}")
    print()

# sanity: the expansion variable is xi = a_t/sigma at the actual trap, so at
# the reference trap the xi^2 and xi^3 two-body coefficients vanish exactly
t0 = coefficient_table(1.0, 1.0, cset)
assert t0.c2_2 == 0.0 and t0.c2_3 == 0.0
print("At the reference trap the higher two-body coefficients vanish exactly:")
print(f"  c2_2 = {t0.c2_2}, c2_3 = {t0.c2_3}, c3_3 = {t0.c3_3:.6f}")
print()
print(f"check: c2_1 stays {t0.c2_1:.15f} = sqrt(2/pi) = {math.sqrt(2/math.pi):.15f}")
