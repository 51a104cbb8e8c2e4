#!/usr/bin/env python3
"""Why the exponential sum needs exact coefficients and extra precision.

The k-cycle count decomposes over a thin family of irreducibles whose
coefficients a d alternate in sign and reach astronomical size, while the
value of the sum near the transition can be ~1e-10 and smaller: more than
twenty orders of magnitude of cancellation.  A naive float64 summation
returns pure noise there; carrying the coefficients exactly and the
exponentials at ~log2(sum |a d|) + 64 bits recovers every digit.
"""
import math

from interchange import closed_form, spectral
from interchange.transition import critical_time

print(__doc__)

n, k = 60, 30
t = critical_time(n, k) / 4
basis = spectral.cycle_basis(n, k)

print(f"n = {n}, k = {k}, t = {t:.6f} (a quarter of the critical time)")
print(f"terms in the sum: {len(basis.terms)}")
largest = max(abs(float(term.a * term.d)) for term in basis.terms)
print(f"largest |a d|: {largest:.3e}")

naive = math.fsum(
    float(term.a * term.d) * math.exp(float(term.lam) * t) for term in basis.terms
)
careful = float(spectral.spectral_expected_cycles(n, k, t))
closed = closed_form.expected_cycles(n, k, t)
bits = spectral.default_precision_bits(basis)

print()
print(f"float64 coefficient sum : {naive: .6e}   <- noise, wrong sign possible")
print(f"exact-coefficient sum   : {careful: .6e}   ({bits} working bits)")
print(f"closed form             : {closed: .6e}")
print(f"relative agreement      : {abs(careful - closed) / closed:.2e}")

print()
print("asking for too little precision raises instead of lying:")
try:
    spectral.spectral_expected_cycles(200, 100, 0.00688, precision_bits=64)
except spectral.InsufficientPrecisionError as err:
    print(f"  InsufficientPrecisionError: {err}")
