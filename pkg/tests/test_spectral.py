"""Young-diagram machinery and the exponential-sum route."""
import math
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from interchange import closed_form
from interchange.spectral import (
    InsufficientPrecisionError,
    YoungDiagram,
    cycle_basis,
    default_precision_bits,
    frobenius_ratio,
    hook_length_dimension,
    spectral_expected_cycles,
)


# -- independent oracle: count standard tableaux by direct enumeration ----


def count_standard_tableaux(shape: tuple[int, ...]) -> int:
    """Place 1..n one at a time into row-valid positions (ballot counting)."""
    n = sum(shape)

    @lru_cache(maxsize=None)
    def rec(filled: tuple[int, ...]) -> int:
        if sum(filled) == n:
            return 1
        total = 0
        for r, f in enumerate(filled):
            if f < shape[r] and (r == 0 or filled[r - 1] > f):
                total += rec(filled[:r] + (f + 1,) + filled[r + 1 :])
        return total

    return rec((0,) * len(shape))


@st.composite
def partitions(draw, max_n=9):
    n = draw(st.integers(min_value=1, max_value=max_n))
    bins = draw(st.integers(min_value=1, max_value=n))
    assignment = draw(st.lists(st.integers(0, bins - 1), min_size=n, max_size=n))
    counts = sorted((assignment.count(b) for b in set(assignment)), reverse=True)
    return tuple(counts)


# -- diagrams and dimensions ----------------------------------------------


def test_diagram_validation():
    with pytest.raises(ValueError):
        YoungDiagram(())
    with pytest.raises(ValueError):
        YoungDiagram((1, 2))
    with pytest.raises(ValueError):
        YoungDiagram((2, 0))
    assert YoungDiagram((3, 1, 1)).n == 5


def test_hook_dimension_known_values():
    assert hook_length_dimension((7,)) == 1
    assert hook_length_dimension((2, 2)) == 2      # matches tableau enumeration
    assert hook_length_dimension((3, 1)) == 3
    assert count_standard_tableaux((2, 2)) == 2
    assert count_standard_tableaux((3, 1)) == 3


def test_hook_dimension_rejects_invalid():
    with pytest.raises(ValueError):
        hook_length_dimension((1, 3))
    with pytest.raises(ValueError):
        hook_length_dimension(())


@given(shape=partitions())
@settings(max_examples=60, deadline=None)
def test_hook_dimension_matches_enumeration(shape):
    assert hook_length_dimension(shape) == count_standard_tableaux(shape)


@given(n=st.integers(min_value=1, max_value=8))
@settings(max_examples=8, deadline=None)
def test_dimension_squares_sum_to_factorial(n):
    from interchange.exact_chain import integer_partitions

    total = sum(hook_length_dimension(p) ** 2 for p in integer_partitions(n))
    assert total == factorial(n)


def closed_dimension_low(n: int, k: int, i: int) -> int:
    """Closed form for the dimension of [n-k, k-i, 1^i]."""
    num = factorial(n) * (n - 2 * k + i + 1)
    den = factorial(i) * k * factorial(n - k) * factorial(k - i - 1) * (n - k + i + 1)
    assert num % den == 0
    return num // den


def closed_dimension_high(n: int, k: int, i: int) -> int:
    """Closed form for the dimension of [k-i-1, n-k+1, 1^i]."""
    num = factorial(n) * (2 * k - n - i - 1)
    den = factorial(i) * k * factorial(n - k) * factorial(k - i - 1) * (n - k + i + 1)
    assert num % den == 0
    return num // den


def test_dimension_closed_forms_match_hooks():
    for n in (4, 7, 12, 25, 40):
        for k in range(1, n + 1):
            basis = cycle_basis(n, k)
            for term in basis.terms:
                if term.index is None:
                    continue
                i = term.index
                if 2 * k <= n or i >= 2 * k - n:
                    assert term.d == closed_dimension_low(n, k, i)
                else:
                    assert term.d == closed_dimension_high(n, k, i)


# -- character ratios ------------------------------------------------------


def test_frobenius_trivial_and_sign():
    for n in (2, 3, 5, 9, 30):
        assert frobenius_ratio((n,)) == 1
        assert frobenius_ratio((1,) * n) == -1


def test_frobenius_rejects_small_n():
    with pytest.raises(ValueError):
        frobenius_ratio((1,))


def test_frobenius_closed_form_on_both_families():
    for n in (6, 11, 20):
        for k in range(1, n + 1):
            for term in cycle_basis(n, k).terms:
                if term.index is None:
                    continue
                i = term.index
                expected = Fraction(
                    (n - k) ** 2 - n - 2 * k + k * k - 2 * i * k, n * (n - 1)
                )
                assert term.r == expected


@given(shape=partitions())
@settings(max_examples=60, deadline=None)
def test_frobenius_ratio_range_and_integrality(shape):
    n = sum(shape)
    if n < 2:
        return
    r = frobenius_ratio(shape)
    assert -1 <= r <= 1
    assert (r * n * (n - 1)).denominator == 1


# -- cycle basis -----------------------------------------------------------


def test_basis_n4_k2_terms():
    basis = cycle_basis(4, 2)
    by_rows = {term.diagram.rows: term for term in basis.terms}
    assert set(by_rows) == {(4,), (2, 2), (2, 1, 1)}
    trivial = by_rows[(4,)]
    assert trivial.index is None and trivial.a == Fraction(1, 2) and trivial.d == 1
    assert trivial.lam == 0
    first = by_rows[(2, 2)]
    assert first.index == 0 and first.a == Fraction(1, 2) and first.d == 2
    assert first.lam == -6
    second = by_rows[(2, 1, 1)]
    assert second.index == 1 and second.a == Fraction(-1, 2) and second.d == 3
    assert second.lam == -8


def test_basis_n3_k3_branch():
    basis = cycle_basis(3, 3)
    indexed = {term.index: term for term in basis.terms}
    # high-k branch: indices 0 and 1 from the flipped family, index 2k-n-1 = 2 absent
    assert set(indexed) == {None, 0, 1}
    assert indexed[0].diagram.rows == (2, 1)
    assert indexed[0].a == Fraction(-1, 3)
    assert indexed[1].diagram.rows == (1, 1, 1)
    assert indexed[1].a == Fraction(1, 3)
    assert sum(t.a * t.d for t in basis.terms) == 0


def test_basis_k1():
    for n in (2, 5, 17):
        basis = cycle_basis(n, 1)
        non_trivial = [t for t in basis.terms if t.index is not None]
        assert len(non_trivial) == 1
        assert non_trivial[0].diagram.rows == (n - 1, 1)
        assert non_trivial[0].a == 1 and non_trivial[0].d == n - 1
        assert sum(t.a * t.d for t in basis.terms) == n


def test_basis_counts_and_identity_sum():
    for n in range(1, 13):
        for k in range(1, n + 1):
            basis = cycle_basis(n, k)
            expected = n if k == 1 else 0
            assert sum(t.a * t.d for t in basis.terms) == expected
            if 2 * k <= n:
                assert len(basis.terms) == k + 1
            else:
                # index 2k-n-1 is skipped
                assert len(basis.terms) == k if k > 1 else 1
            for term in basis.terms:
                assert term.d >= 1
                assert term.lam <= 0
                assert (term.lam == 0) == (term.index is None)


def test_basis_rejects_bad_k():
    with pytest.raises(ValueError):
        cycle_basis(5, 0)
    with pytest.raises(ValueError):
        cycle_basis(5, 6)


# -- the exponential sum ---------------------------------------------------


def test_spectral_t0_is_exact():
    assert spectral_expected_cycles(9, 1, 0.0) == 9
    for k in range(2, 10):
        assert spectral_expected_cycles(9, k, 0.0) == 0


def test_spectral_two_element_chain():
    for t in (0.01, 0.3, 1.7, 6.0):
        value = float(spectral_expected_cycles(2, 2, t))
        assert value == pytest.approx((1 - math.exp(-2 * t)) / 2, rel=1e-13)


def test_spectral_matches_closed_form_cross_route():
    value = float(spectral_expected_cycles(20, 10, 0.08))
    other = closed_form.expected_cycles(20, 10, 0.08)
    assert abs(value - other) <= 1e-10 * abs(other)


def test_spectral_range_bounds():
    for n, k in ((12, 3), (30, 17), (25, 25)):
        for t in (0.001, 0.05, 0.4, 3.0):
            value = float(spectral_expected_cycles(n, k, t))
            assert -1e-12 <= value <= n / k + 1e-9


def test_spectral_insufficient_precision_signals():
    with pytest.raises(InsufficientPrecisionError):
        spectral_expected_cycles(200, 100, 0.00688, precision_bits=64)


def test_spectral_validates_arguments():
    with pytest.raises(ValueError):
        spectral_expected_cycles(10, 2, -0.5)
    with pytest.raises(ValueError):
        spectral_expected_cycles(10, 2, 0.1, precision_bits=32)


def test_default_precision_tracks_coefficient_scale():
    low = cycle_basis(60, 30)
    assert default_precision_bits(low) >= math.log2(comb(60, 30)) + 64
    # for k > n/2 the dimensions dwarf C(n,k); the guard must follow them
    high = cycle_basis(60, 59)
    assert default_precision_bits(high) > math.ceil(math.log2(comb(60, 59))) + 64
