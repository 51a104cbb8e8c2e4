"""Quantitative description of the sharp transition of E(s_k).

As n grows, the expected k-cycle count jumps from 0 to its equilibrium
value 1/k at the critical time where e^(-kt) = (n-k)/(n-1), with a window
of width ~ 1/(k sqrt(n-k)).  This module computes the critical time, the
log-integrand and its peak, the two-sided deviation envelope with
user-supplied constants (the sharp statement only promises unspecified
universal constants, so we expose them and ship a fitter), and an
empirical window-width measurement driven by the closed form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .closed_form import expected_cycles


def critical_time(n: int, k: int) -> float:
    """The unique t with e^(-kt) = (n-k)/(n-1); zero when k = 1."""
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got n={n}, k={k}")
    return math.log((n - 1) / (n - k)) / k


def peak_location(n: int, k: int) -> float:
    """Argmax of phi over [0,1]: (n-k)/(n-1)."""
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got n={n}, k={k}")
    return (n - k) / (n - 1)


def polynomial_prefactor(n: int, k: int) -> float:
    """The factor q = n^(3/2) k^(-3/2) (n-k)^(-1/2) in the deviation bound."""
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got n={n}, k={k}")
    return n**1.5 * k**-1.5 / math.sqrt(n - k)


@dataclass(frozen=True)
class TransitionParams:
    n: int
    k: int
    t_crit: float
    y_peak: float
    q: float

    @classmethod
    def for_model(cls, n: int, k: int) -> "TransitionParams":
        return cls(
            n=n,
            k=k,
            t_crit=critical_time(n, k),
            y_peak=peak_location(n, k),
            q=polynomial_prefactor(n, k),
        )


def psi(y: float, n: int, k: int) -> float:
    """log phi(y) = (n-k) log y + (k-1) log(1-y) on the open interval."""
    if not 0.0 < y < 1.0:
        raise ValueError("y must lie strictly inside (0, 1)")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return (n - k) * math.log(y) + (k - 1) * math.log1p(-y)


def deviation_envelope(
    n: int, k: int, t: float, big_c: float, small_c: float
) -> float:
    """Bound envelope C q exp(-c (n-k) min(k^2 (t - t_crit)^2, 1))."""
    dt = abs(t - critical_time(n, k))
    q = polynomial_prefactor(n, k)
    return big_c * q * math.exp(-small_c * (n - k) * min((k * dt) ** 2, 1.0))


def step_deviation(n: int, k: int, t: float) -> float:
    """|E(s_k(t)) - (1/k) [t > t_crit]|, the quantity the envelope bounds."""
    step = 1.0 / k if t > critical_time(n, k) else 0.0
    return abs(expected_cycles(n, k, t) - step)


def default_envelope_grid(n: int, k: int, points: int = 200) -> np.ndarray:
    """Validation grid spanning [t_crit/4, 4 t_crit]: covers both the
    quadratic and the saturated regime of the exponent."""
    t0 = critical_time(n, k)
    return np.linspace(t0 / 4.0, 4.0 * t0, points)


def fit_envelope_constant(
    n: int, k: int, ts: np.ndarray | None = None, small_c: float = 0.125
) -> float:
    """Smallest C making the deviation bound hold on the grid.

    small_c defaults to 1/8: half the 1/4 produced by the second-order bound
    on the log-integrand near its peak, leaving margin for the conversion
    from x-space to t-space.
    """
    if ts is None:
        ts = default_envelope_grid(n, k)
    worst = 0.0
    for t in np.asarray(ts, dtype=np.float64):
        envelope_unit = deviation_envelope(n, k, float(t), 1.0, small_c)
        worst = max(worst, step_deviation(n, k, float(t)) / envelope_unit)
    return worst


def boundary_term(n: int, k: int, x: float) -> float:
    """(1/k) C(n,k) x^(n-k) (1-x)^(k-1): the non-integral part of the formula."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if x == 0.0:
        return 0.0 if n > k else 1.0 / k
    if x == 1.0:
        return 0.0 if k > 1 else 1.0
    log_value = (
        math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
        - math.log(k)
        + (n - k) * math.log(x)
        + (k - 1) * math.log1p(-x)
    )
    return math.exp(log_value)


def boundary_term_envelope(n: int, k: int, x: float, const: float) -> float:
    """(const q / k) exp(-min(|eps|, 1/4)^2 (n-k) / 4), eps = (x - y_peak)/y_peak."""
    y = peak_location(n, k)
    eps = (x - y) / y
    q = polynomial_prefactor(n, k)
    return const * q / k * math.exp(-min(abs(eps), 0.25) ** 2 * (n - k) / 4.0)


@dataclass
class TransitionProfile:
    """Sampled E(s_k) curve with interpolated crossing times."""

    n: int
    k: int
    grid: list[tuple[float, float]]
    crossings: dict[float, float]
    width: float = field(default=0.0)


class BracketError(RuntimeError):
    """A requested crossing level was not bracketed by the grid."""


def _geometric_grid(t0: float, span: float, min_offset: float) -> np.ndarray:
    offsets = [span]
    while offsets[-1] > min_offset:
        offsets.append(offsets[-1] * 0.85)
    ts = {t0}
    for off in offsets:
        if t0 - off > 0.0:
            ts.add(t0 - off)
        ts.add(t0 + off)
    return np.array(sorted(ts))


def _first_crossing(
    ts: np.ndarray,
    values: np.ndarray,
    target: float,
    evaluate,
    min_dt: float,
    extra: list[tuple[float, float]],
) -> float:
    """Smallest interpolated t with values crossing target; refines the first
    bracketing interval by bisection down to min_dt before interpolating."""
    diff = values - target
    idx = None
    for i in range(len(ts) - 1):
        if diff[i] == 0.0:
            return float(ts[i])
        if diff[i] * diff[i + 1] < 0.0:
            idx = i
            break
    if idx is None:
        raise BracketError(f"level {target} not bracketed")
    t_lo, t_hi = float(ts[idx]), float(ts[idx + 1])
    f_lo, f_hi = float(diff[idx]), float(diff[idx + 1])
    while t_hi - t_lo > min_dt:
        t_mid = 0.5 * (t_lo + t_hi)
        f_mid = evaluate(t_mid) - target
        extra.append((t_mid, f_mid + target))
        if f_mid == 0.0:
            return t_mid
        if f_lo * f_mid < 0.0:
            t_hi, f_hi = t_mid, f_mid
        else:
            t_lo, f_lo = t_mid, f_mid
    return t_lo + (0.0 - f_lo) * (t_hi - t_lo) / (f_hi - f_lo)


def measure_window(
    n: int,
    k: int,
    f_lo: float = 0.25,
    f_hi: float = 0.75,
    resolution: float = 1e-3,
) -> TransitionProfile:
    """Profile E(s_k) around the critical time and measure the crossing window.

    The grid spans at least 10 natural widths 1/(k sqrt(n-k)) on both sides
    of the critical time, geometrically refined toward it; crossings of
    f/k are bisected down to resolution * (natural width) and interpolated.
    Widens the span once if a crossing is not bracketed, then fails.
    """
    if not 0.0 < f_lo < f_hi < 1.0:
        raise ValueError("need 0 < f_lo < f_hi < 1")
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got n={n}, k={k}")
    if resolution <= 0.0:
        raise ValueError("resolution must be positive")
    t0 = critical_time(n, k)
    w_nat = 1.0 / (k * math.sqrt(n - k))
    evaluate = lambda t: expected_cycles(n, k, t)
    last_error: BracketError | None = None
    for span in (10.0 * w_nat, 40.0 * w_nat):
        ts = _geometric_grid(t0, span, resolution * w_nat)
        values = np.array([evaluate(t) for t in ts])
        extra: list[tuple[float, float]] = []
        try:
            crossings = {
                f: _first_crossing(ts, values, f / k, evaluate, resolution * w_nat, extra)
                for f in (f_lo, f_hi)
            }
        except BracketError as err:
            last_error = err
            continue
        grid = sorted(list(zip(ts.tolist(), values.tolist())) + extra)
        width = crossings[f_hi] - crossings[f_lo]
        if width <= 0.0:
            raise RuntimeError("crossing times are not increasing in the level")
        return TransitionProfile(n=n, k=k, grid=grid, crossings=crossings, width=width)
    raise RuntimeError(
        f"could not bracket the window for n={n}, k={k}: {last_error}"
    )
