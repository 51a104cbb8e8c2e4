#!/usr/bin/env python3
"""Three independent routes to the expected number of k-cycles.

The interchange process on K_n (every unordered pair swaps at rate 1, so
the total jump rate is n(n-1)/2) starts at the identity and relaxes toward
a uniform permutation, where the expected number of k-cycles is exactly
1/k.  This script evaluates E(s_k(t)) three ways that share no code path:

  closed    incomplete-beta formula, double precision
  spectral  character-decomposition exponential sum, exact coefficients
  chain     matrix exponential of the conjugacy-class chain (n <= 8)

and shows they agree to near machine precision.
"""
from interchange import closed_form, exact_chain, spectral

print(__doc__)

n = 7
print(f"n = {n}, three routes side by side")
print(f"{'k':>3} {'t':>6} {'closed':>22} {'spectral':>22} {'chain':>22}")
for k in (1, 2, 4, 7):
    for t in (0.05, 0.3, 1.5):
        closed = closed_form.expected_cycles(n, k, t)
        spec = float(spectral.spectral_expected_cycles(n, k, t))
        chain = exact_chain.brute_force_expected_cycles(n, k, t)
        print(f"{k:>3} {t:>6.2f} {closed:>22.16f} {spec:>22.16f} {chain:>22.16f}")

print()
print("equilibrium: E(s_k) -> 1/k as t -> infinity")
for k in (1, 2, 4, 7):
    late = closed_form.expected_cycles(n, k, 40.0)
    print(f"  k={k}: E(s_k(40)) = {late:.12f}   1/k = {1 / k:.12f}")

print()
print("the pieces of the formula also satisfy the beta identity")
print("head + tail = (n-k)! (k-1)! / n!  for every (n, k):")
import math

for k in (1, 3, 6):
    parts = closed_form.formula_parts(n, k, 0.2)
    beta = math.factorial(n - k) * math.factorial(k - 1) / math.factorial(n)
    print(
        f"  k={k}: head {parts.head:.3e} + tail {parts.tail:.3e}"
        f" = {parts.head + parts.tail:.12e} vs beta {beta:.12e}"
    )
