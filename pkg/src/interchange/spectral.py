"""Spectral route to expected cycle counts.

The number of k-cycles of a permutation decomposes over irreducible
characters of the symmetric group with nonzero coefficients on a thin
family of Young diagrams.  Evolving each character under the walk
multiplies it by exp(lambda t), where the eigenvalue comes from the
character ratio at a transposition, so the expectation is a short
exponential sum.  The catch is that the coefficients are huge and
alternating: the sum survives only through massive cancellation, so it is
evaluated with exact rational coefficients and high-precision exponentials.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

import mpmath
from mpmath import mpf


class InsufficientPrecisionError(ArithmeticError):
    """Raised when the certified rounding bound swamps the result scale."""


@dataclass(frozen=True)
class YoungDiagram:
    """Non-increasing positive row lengths; indexes an irreducible of S_n."""

    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) == 0:
            raise ValueError("empty row sequence")
        if any(r < 1 for r in rows):
            raise ValueError(f"rows must be positive: {rows}")
        if any(rows[i] < rows[i + 1] for i in range(len(rows) - 1)):
            raise ValueError(f"rows must be non-increasing: {rows}")

    @property
    def n(self) -> int:
        return sum(self.rows)

    def __repr__(self) -> str:
        return f"YoungDiagram({list(self.rows)})"


def _as_diagram(diagram) -> YoungDiagram:
    if isinstance(diagram, YoungDiagram):
        return diagram
    return YoungDiagram(tuple(diagram))


def hook_length_dimension(diagram) -> int:
    """Dimension of the irreducible: n! over the product of hook lengths."""
    diagram = _as_diagram(diagram)
    rows = diagram.rows
    ncols = rows[0]
    col_height = [sum(1 for r in rows if r > j) for j in range(ncols)]
    hook_product = 1
    for i, row_len in enumerate(rows):
        for j in range(row_len):
            hook_product *= (row_len - j) + (col_height[j] - i) - 1
    num = factorial(diagram.n)
    assert num % hook_product == 0
    return num // hook_product


def frobenius_ratio(diagram) -> Fraction:
    """Character at a transposition over the dimension, as an exact rational.

    For rows (r_1, ..., r_j) this is sum_i [r_i^2 - (2i-1) r_i] / (n(n-1)).
    """
    diagram = _as_diagram(diagram)
    n = diagram.n
    if n < 2:
        raise ValueError("character ratio needs n >= 2")
    s = sum(r * r - (2 * i - 1) * r for i, r in enumerate(diagram.rows, start=1))
    ratio = Fraction(s, n * (n - 1))
    assert -1 <= ratio <= 1
    return ratio


@dataclass(frozen=True)
class RepTerm:
    """One irreducible's contribution to the k-cycle count decomposition."""

    diagram: YoungDiagram
    index: int | None        # None marks the trivial one-row diagram
    a: Fraction              # decomposition coefficient
    d: int                   # dimension
    r: Fraction              # character ratio at a transposition
    lam: Fraction            # walk eigenvalue C(n,2) (r - 1), always <= 0


@dataclass(frozen=True)
class CycleBasis:
    n: int
    k: int
    terms: tuple[RepTerm, ...]


def _make_term(n: int, diagram: YoungDiagram, index: int | None, a: Fraction) -> RepTerm:
    d = hook_length_dimension(diagram)
    r = frobenius_ratio(diagram)
    lam = Fraction(n * (n - 1), 2) * (r - 1)  # half-integer: n(n-1) r is an integer
    assert lam <= 0
    return RepTerm(diagram=diagram, index=index, a=a, d=d, r=r, lam=lam)


@lru_cache(maxsize=None)
def cycle_basis(n: int, k: int) -> CycleBasis:
    """All representations with nonzero weight in the k-cycle decomposition.

    For k <= n/2 these are [n-k, k-i, 1^i] for i = 0..k-1 with coefficient
    (-1)^i / k.  For k > n/2 the low indices i = 0..2k-n-2 instead use
    [k-i-1, n-k+1, 1^i] with the sign flipped, the index i = 2k-n-1 is
    absent, and i = 2k-n..k-1 rejoins the first family.  The trivial
    diagram [n] always carries 1/k.
    """
    if not isinstance(n, int) or not isinstance(k, int):
        raise TypeError("n and k must be integers")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if n == 1:
        # single point: only the trivial representation, no transpositions
        term = RepTerm(YoungDiagram((1,)), None, Fraction(1), 1, Fraction(1), Fraction(0))
        return CycleBasis(n=1, k=1, terms=(term,))
    terms = [_make_term(n, YoungDiagram((n,)), None, Fraction(1, k))]
    if 2 * k <= n:
        for i in range(k):
            diagram = YoungDiagram((n - k, k - i) + (1,) * i)
            terms.append(_make_term(n, diagram, i, Fraction((-1) ** i, k)))
    else:
        for i in range(0, 2 * k - n - 1):
            diagram = YoungDiagram((k - i - 1, n - k + 1) + (1,) * i)
            terms.append(_make_term(n, diagram, i, Fraction((-1) ** (i + 1), k)))
        for i in range(2 * k - n, k):
            diagram = YoungDiagram((n - k, k - i) + (1,) * i)
            terms.append(_make_term(n, diagram, i, Fraction((-1) ** i, k)))
    basis = CycleBasis(n=n, k=k, terms=tuple(terms))
    # Value of the decomposition at the identity: n fixed points, no longer cycles.
    identity_value = sum(t.a * t.d for t in basis.terms)
    assert identity_value == (n if k == 1 else 0)
    return basis


def default_precision_bits(basis: CycleBasis) -> int:
    """Working precision that survives the alternating-sum cancellation.

    The rounding noise scales with sum |a d|, so carry that many bits plus a
    64-bit guard.  (For k <= n/2 this is within a few bits of
    log2(C(n,k)) + 64; for k > n/2 the dimensions far exceed C(n,k) and the
    coefficient sum is the scale that actually matters.)
    """
    total = sum(abs(t.a) * t.d for t in basis.terms)
    bits = total.numerator.bit_length() - total.denominator.bit_length() + 1
    return max(64, bits + 64)


_mp_lock = threading.Lock()

#: raise-threshold for the certified rounding bound, relative to the result
REL_NOISE_LIMIT = 2.0**-30


def spectral_sum(
    terms: tuple[RepTerm, ...],
    t: float,
    precision_bits: int,
    rel_limit: float = REL_NOISE_LIMIT,
) -> mpf:
    """Evaluate sum a d exp(lam t) with exact coefficients at the given precision.

    Raises InsufficientPrecisionError when the certified rounding bound
    exceeds rel_limit times the result scale.
    """
    if precision_bits < 64:
        raise ValueError("precision_bits must be >= 64")
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        # exp(0) = 1 exactly, so the sum is the exact rational identity value.
        exact = sum(term.a * term.d for term in terms)
        return mpf(exact.numerator) / exact.denominator
    with _mp_lock, mpmath.workprec(precision_bits):
        total = mpf(0)
        total_abs = mpf(0)
        max_arg = 0.0
        for term in terms:
            coeff = term.a * term.d
            arg = mpf(term.lam.numerator) / term.lam.denominator * t
            value = mpf(coeff.numerator) / coeff.denominator * mpmath.exp(arg)
            total += value
            total_abs += abs(value)
            max_arg = max(max_arg, abs(float(arg)))
        # Per-term relative error ~ (rounding of the exp argument, amplified
        # by |arg|) plus a few ulp; summation adds at most one ulp per term.
        noise_factor = 8.0 + 2.0 * max_arg + len(terms)
        err_bound = total_abs * mpf(2) ** (-precision_bits) * noise_factor
        result = total
    scale = abs(result)
    if err_bound > scale * rel_limit:
        raise InsufficientPrecisionError(
            f"rounding bound {mpmath.nstr(err_bound, 3)} exceeds {rel_limit:.1e} "
            f"of the result scale {mpmath.nstr(scale, 3)}; raise precision_bits"
        )
    return result


def spectral_expected_cycles(
    n: int, k: int, t: float, precision_bits: int | None = None
) -> mpf:
    """Expected number of k-cycles at time t via the exponential sum.

    With explicit precision_bits the sum is evaluated once and raises
    InsufficientPrecisionError if the certified rounding bound is not below
    2^-30 of the result, rather than returning noise.  The default starts
    from default_precision_bits and escalates until the bound is certified
    three decades tighter, so the default is dependable even at points where
    the result is many orders below the coefficient scale.
    """
    basis = cycle_basis(n, k)
    if precision_bits is not None:
        return spectral_sum(basis.terms, t, precision_bits)
    bits = default_precision_bits(basis)
    for _ in range(5):
        try:
            return spectral_sum(basis.terms, t, bits, rel_limit=2.0**-40)
        except InsufficientPrecisionError:
            bits += 96
    return spectral_sum(basis.terms, t, bits, rel_limit=2.0**-40)
