"""Closed-form cycle statistics built on the incomplete beta function.

The expected number of k-cycles at time t under the interchange process on
the complete graph (total jump rate n(n-1)/2) is

    E = C(n,k) [ (1/k) x phi(x) + integral_x^1 phi(y) dy ],
    phi(y) = y^(n-k) (1-y)^(k-1),   x = e^(-kt).

The integral term times C(n,k) equals (1/k) times a regularized incomplete
beta tail, which scipy evaluates by continued fraction with log-gamma
prefactors; the prefactor term is assembled in log space.  An exact
rational evaluator at rational x provides the independent cross-check of
the floating route.  Derived quantities: Cayley distance n - sum_k E,
the fixed-k density limit, the slowdown curve, and the giant-component
fraction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

import numpy as np
from scipy.special import betainc, betaln, gammaln


class ConvergenceError(RuntimeError):
    """Raised when a series or root cannot reach the requested tolerance."""


def _validate_nk(n: int, k: int) -> None:
    if not (isinstance(n, (int, np.integer)) and isinstance(k, (int, np.integer))):
        raise TypeError("n and k must be integers")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")


def _log_comb(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


@dataclass(frozen=True)
class ModelParams:
    """The (n, k, t) triple every formula runs on, with x = e^(-kt) derived.

    x = 1 exactly at t = 0; for very large kt the stored x underflows to 0
    (the mathematical value stays positive).
    """

    n: int
    k: int
    t: float
    x: float = 0.0

    def __post_init__(self):
        _validate_nk(self.n, self.k)
        if self.t < 0:
            raise ValueError("t must be nonnegative")
        object.__setattr__(self, "x", math.exp(-self.k * self.t))
        assert 0.0 <= self.x <= 1.0
        assert (self.x == 1.0) == (self.t == 0.0)


def phi(y: float, n: int, k: int) -> float:
    """Integrand y^(n-k) (1-y)^(k-1), with the 0^0 = 1 convention at the ends."""
    _validate_nk(n, k)
    if not 0.0 <= y <= 1.0:
        raise ValueError("y must lie in [0, 1]")
    if y == 0.0:
        return 1.0 if n == k else 0.0
    if y == 1.0:
        return 1.0 if k == 1 else 0.0
    return math.exp((n - k) * math.log(y) + (k - 1) * math.log1p(-y))


def incomplete_beta_tail(x: float, n: int, k: int) -> float:
    """integral_x^1 phi(y) dy; the full-interval value is Beta(n-k+1, k)."""
    _validate_nk(n, k)
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    # 1 - I_x(a, b) = I_{1-x}(b, a): evaluate the tail directly so small
    # tails keep full relative precision.
    return math.exp(betaln(n - k + 1, k)) * float(betainc(k, n - k + 1, 1.0 - x))


def _value_from_xw(n: int, k: int, x: float, w: float) -> float:
    """E(s_k) given x = e^(-kt) and w = 1 - x (w passed separately so callers
    can supply -expm1(-kt), which keeps precision when x is close to 1)."""
    if w <= 0.0:  # t = 0
        return float(n) if k == 1 else 0.0
    if x <= 0.0:  # t = infinity
        return 1.0 / k
    log_prefactor = (
        _log_comb(n, k)
        - math.log(k)
        + (n - k + 1) * math.log(x)
        + (k - 1) * math.log(w)
    )
    prefactor = math.exp(log_prefactor)
    tail = float(betainc(k, n - k + 1, w)) / k
    return prefactor + tail


def expected_cycles(n: int, k: int, t: float) -> float:
    """Expected number of k-cycles at time t, stable for n well beyond 10^3."""
    _validate_nk(n, k)
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return float(n) if k == 1 else 0.0
    return _value_from_xw(n, k, math.exp(-k * t), -math.expm1(-k * t))


def expected_cycles_float_at_x(n: int, k: int, x: float) -> float:
    """Floating route with x supplied directly (for cross-checks at fixed x)."""
    _validate_nk(n, k)
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    return _value_from_xw(n, k, x, 1.0 - x)


def expected_cycles_at_x(n: int, k: int, x) -> Fraction:
    """Exact rational value of the formula at rational x.

    The tail integral of the polynomial phi is expanded termwise:
    integral_x^1 y^(n-k+i) dy summed against binomial coefficients.  This is
    the ground-truth path the floating route is validated against.
    """
    _validate_nk(n, k)
    x = Fraction(x)
    if not 0 <= x <= 1:
        raise ValueError("x must lie in [0, 1]")
    tail = Fraction(0)
    for i in range(k):
        power = n - k + i + 1
        tail += Fraction(comb(k - 1, i) * (-1) ** i, power) * (1 - x**power)
    prefactor = Fraction(1, k) * x ** (n - k + 1) * (1 - x) ** (k - 1)
    return comb(n, k) * (prefactor + tail)


@dataclass(frozen=True)
class ClosedFormParts:
    """Pieces of the formula at one (n, k, t): useful for identity checks."""

    phi_at_x: float
    tail: float     # integral_x^1 phi
    head: float     # integral_0^x phi
    value: float


def formula_parts(n: int, k: int, t: float) -> ClosedFormParts:
    _validate_nk(n, k)
    if t < 0:
        raise ValueError("t must be nonnegative")
    x = math.exp(-k * t)
    tail = incomplete_beta_tail(x, n, k)
    total = math.exp(betaln(n - k + 1, k))
    return ClosedFormParts(
        phi_at_x=phi(x, n, k),
        tail=tail,
        head=total - tail,
        value=expected_cycles(n, k, t),
    )


def expected_cycles_by_k(n: int, t: float) -> np.ndarray:
    """Vector of E(s_k) for k = 1..n (index k-1), evaluated in one sweep."""
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError("n must be a positive integer")
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        out = np.zeros(n)
        out[0] = float(n)
        return out
    ks = np.arange(1, n + 1, dtype=np.float64)
    xs = np.exp(-ks * t)
    ws = -np.expm1(-ks * t)
    with np.errstate(divide="ignore"):
        log_pref = (
            gammaln(n + 1) - gammaln(ks + 1) - gammaln(n - ks + 1)
            - np.log(ks)
            + (n - ks + 1) * np.log(xs)
            + (ks - 1) * np.log(ws)
        )
    return np.exp(log_pref) + betainc(ks, n - ks + 1, ws) / ks


def expected_distance(n: int, t: float) -> float:
    """Expected Cayley distance from the start: n minus the expected cycle count."""
    if t == 0:
        return 0.0
    return float(n - expected_cycles_by_k(n, t).sum())


def small_k_density(k: int, c: float) -> float:
    """Limit of E(s_k(c/n))/n for fixed k: (k^(k-2)/k!) (1/c) (c e^-c)^k."""
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise ValueError("k must be a positive integer")
    if c <= 0:
        raise ValueError("c must be positive")
    return math.exp(
        (k - 2) * math.log(k) - math.lgamma(k + 1) - math.log(c) + k * (math.log(c) - c)
    )


def _slowdown_terms_needed(c: float, tol: float) -> int:
    """Smallest K with a certified tail bound below tol.

    Stirling gives term_k <= (1/(c sqrt(2 pi))) k^(-5/2) (c e^(1-c))^k.  The
    p-series bound sum_{k>K} k^(-3/2-1) <= (2/3) K^(-3/2) always applies (the
    geometric factor is <= 1); away from c = 1 the geometric tail kicks in
    much sooner.
    """
    prefactor = 1.0 / (c * math.sqrt(2.0 * math.pi))
    k_pseries = math.ceil((2.0 * prefactor / (3.0 * tol)) ** (2.0 / 3.0))
    best = max(4, k_pseries)
    rho = c * math.exp(1.0 - c)
    if rho < 0.999:
        k = 4
        while k < best:
            tail = prefactor * rho ** (k + 1) * (k + 1) ** (-2.5) / (1.0 - rho)
            if tail <= tol:
                best = k
                break
            k *= 2
    return best


def slowdown_u(c: float, tol: float = 1e-10) -> float:
    """Limiting normalized distance 1 - sum_k (k^(k-2)/k!) (1/c) (c e^-c)^k.

    Equals c/2 for c < 1; the series is truncated at a certified tail bound.
    """
    if c <= 0:
        raise ValueError("c must be positive")
    if tol <= 0:
        raise ValueError("tol must be positive")
    cutoff = _slowdown_terms_needed(c, tol)
    if cutoff > 50_000_000:
        raise ConvergenceError(
            f"series needs {cutoff} terms to certify tol={tol}; loosen tol"
        )
    log_c = math.log(c)
    partials = []
    for start in range(1, cutoff + 1, 1_000_000):
        ks = np.arange(start, min(start + 1_000_000, cutoff + 1), dtype=np.float64)
        terms = np.exp(
            (ks - 2.0) * np.log(ks) - gammaln(ks + 1.0) - log_c + ks * (log_c - c)
        )
        partials.append(float(terms.sum()))
    return 1.0 - math.fsum(partials)


def giant_component_theta(c: float, tol: float = 1e-12) -> float:
    """Unique positive root of 1 - z = e^(-cz) for c > 1.

    Equals the survival probability of a Poisson(c) branching process.
    Bisection on a guaranteed bracket, then Newton polish.
    """
    if c <= 1:
        raise ValueError("the positive root exists only for c > 1")
    if tol <= 0:
        raise ValueError("tol must be positive")

    def f(z: float) -> float:
        return -math.expm1(-c * z) - z

    hi = 1.0
    lo = 0.5
    while f(lo) <= 0.0:
        lo *= 0.5
        if lo < 1e-300:
            raise ConvergenceError("failed to bracket the root")
    while hi - lo > max(tol, 1e-15):
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    z = 0.5 * (lo + hi)
    for _ in range(3):
        slope = -1.0 + c * math.exp(-c * z)
        if slope == 0.0:
            break
        z -= f(z) / slope
    return z
