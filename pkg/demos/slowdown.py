#!/usr/bin/env python3
"""The distance to the start grows at full speed until c = 1, then brakes.

With t = c/n, the expected Cayley distance per point converges to
u(c) = 1 - sum_k (k^(k-2)/k!) (1/c) (c e^-c)^k.  Below c = 1 this is
exactly c/2 (every second jump is wasted against a prior swap only rarely);
above c = 1 the walk decelerates sharply, with infinite deceleration at
the threshold.  The closed-form distance n - sum_k E(s_k) and straight
simulation both land on the curve.
"""
from interchange.closed_form import expected_distance, slowdown_u
from interchange.simulate import monte_carlo

print(__doc__)

n, replicas = 3000, 300
print(f"{'c':>5} {'u(c)':>10} {'c/2':>10} {'closed d/n':>12} {'MC d/n':>10}")
for c in (0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0):
    u = slowdown_u(c)
    closed = expected_distance(n, c / n) / n
    result = monte_carlo(
        n=n, t=c / n, k_list=(1,), epsilon=0.05, replicas=replicas, base_seed=7
    )
    mc = result.estimates["d"].mean / n
    print(f"{c:>5.2f} {u:>10.6f} {c / 2:>10.6f} {closed:>12.6f} {mc:>10.6f}")

print()
print("below the threshold u(c) = c/2 to the last digit;")
print("above it u(c) < c/2 and the gap widens with c.")
