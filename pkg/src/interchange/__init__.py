"""Cycle statistics of the random-transposition (interchange) process on K_n.

Three independent routes to the expected number of k-cycles at time t:

* ``closed_form`` -- the incomplete-beta formula, stable floating point and
  exact rational evaluation, plus the distance/slowdown/giant-component
  quantities derived from it;
* ``spectral`` -- the character-decomposition exponential sum over Young
  diagrams, with exact coefficients and high-precision exponentials;
* ``exact_chain`` / ``simulate`` -- brute force: the conjugacy-class Markov
  chain for n <= 8, and a Monte Carlo simulator with incremental cycle
  tracking and a coupled random graph for larger n.

``transition`` quantifies the sharp jump of E(s_k) at its critical time.
"""

__version__ = "0.1.0"

from .closed_form import (
    expected_cycles,
    expected_cycles_at_x,
    expected_distance,
    giant_component_theta,
    slowdown_u,
    small_k_density,
)
from .exact_chain import brute_force_expected_cycles, build_class_chain
from .simulate import CycleState, monte_carlo, new_identity, sample_path
from .spectral import cycle_basis, spectral_expected_cycles
from .transition import critical_time, measure_window

__all__ = [
    "__version__",
    "expected_cycles",
    "expected_cycles_at_x",
    "expected_distance",
    "giant_component_theta",
    "slowdown_u",
    "small_k_density",
    "brute_force_expected_cycles",
    "build_class_chain",
    "CycleState",
    "monte_carlo",
    "new_identity",
    "sample_path",
    "cycle_basis",
    "spectral_expected_cycles",
    "critical_time",
    "measure_window",
]
