#!/usr/bin/env python3
"""The jump of E(s_k) from 0 to 1/k and how thin its window is.

E(s_k(t)) stays near 0 until the critical time where e^(-kt) = (n-k)/(n-1),
then locks onto the equilibrium value 1/k.  For k proportional to n the
0.25/k -> 0.75/k crossing window has width of order n^(-3/2): measured
widths times n^(3/2) stay constant as n doubles.  A two-sided Gaussian
envelope with fitted constant bounds the deviation from the step function.
"""
from interchange.closed_form import expected_cycles
from interchange.transition import (
    critical_time,
    default_envelope_grid,
    deviation_envelope,
    fit_envelope_constant,
    measure_window,
    step_deviation,
)

print(__doc__)

n, k = 200, 100
t0 = critical_time(n, k)
print(f"n = {n}, k = {k}: critical time {t0:.6f}")
print(f"{'t/t_crit':>9} {'E(s_k)':>13}")
for factor in (0.5, 0.8, 0.95, 1.0, 1.05, 1.2, 2.0):
    print(f"{factor:>9.2f} {expected_cycles(n, k, factor * t0):>13.6e}")

print()
print("window width at k = n/2, measured between the 0.25/k and 0.75/k crossings")
print(f"{'n':>5} {'width':>13} {'width * n^1.5':>14}")
for size in (200, 400, 800):
    profile = measure_window(size, size // 2)
    print(f"{size:>5} {profile.width:>13.6e} {profile.width * size**1.5:>14.3f}")

print()
print("deviation envelope |E - step| <= C q exp(-c (n-k) min(k^2 dt^2, 1)),")
print("with c = 1/8 and C fitted on a 200-point validation grid:")
for size, half in ((200, 100), (400, 200), (1000, 300)):
    fitted = fit_envelope_constant(size, half)
    grid = default_envelope_grid(size, half)
    margin = max(
        step_deviation(size, half, float(t))
        / deviation_envelope(size, half, float(t), 1.0, 0.125)
        for t in grid
    )
    print(f"  (n={size}, k={half}): fitted C = {fitted:.4f} (max ratio {margin:.4f})")
