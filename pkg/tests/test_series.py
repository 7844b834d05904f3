from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rieszwalk.exceptions import FieldMismatchError, NonInvertibleSeriesError, NotDivisibleError
from rieszwalk.series import (
    DOUBLE,
    EXACT,
    TruncatedSeries,
    series_compose_monomial,
    series_mul,
    series_reciprocal,
    series_shift_down,
)

S = TruncatedSeries.from_coeffs


def test_difference_of_squares():
    assert series_mul(S([1, 1], order=4), S([1, -1], order=4)) == S([1, 0, -1], order=4)


def test_scalar_scaling():
    assert S([Fr(1, 2), Fr(-1, 4)]) * 2 == S([1, Fr(-1, 2)])


def test_geometric_reciprocal():
    assert series_reciprocal(S([1, -1], order=6)).coeffs == (1,) * 7


def test_reciprocal_of_constant():
    assert series_reciprocal(TruncatedSeries.constant(Fr(1, 2), 3)) == TruncatedSeries.constant(2, 3)


def test_reciprocal_two_plus_z_multiplies_back():
    a = S([2, 1], order=10)
    inv = series_reciprocal(a)
    assert inv.coeffs[:3] == (Fr(1, 2), Fr(-1, 4), Fr(1, 8))
    assert series_mul(a, inv) == TruncatedSeries.constant(1, 10)


def test_reciprocal_rejects_zero_constant():
    with pytest.raises(NonInvertibleSeriesError):
        series_reciprocal(S([0, 1]))
    with pytest.raises(NonInvertibleSeriesError):
        series_reciprocal(S([1e-16, 1.0], field=DOUBLE))


def test_shift_down_examples():
    assert series_shift_down(S([0, 1, 1]), 1) == S([1, 1])
    f = S([0, 0, 0, Fr(1, 2), 0, 0, 0, Fr(-1, 4)])
    assert series_shift_down(f, 3) == S([Fr(1, 2), 0, 0, 0, Fr(-1, 4)])
    with pytest.raises(NotDivisibleError):
        series_shift_down(S([1, 1]), 1)


def test_shift_down_beyond_known_order():
    with pytest.raises(NotDivisibleError):
        series_shift_down(S([0, 0], order=1), 3)


def test_compose_monomial():
    assert series_compose_monomial(S([1, 1]), 4).coeffs == (1, 0, 0, 0, 1, 0, 0, 0)
    g = S([0, Fr(1, 2), Fr(-1, 4)])
    h = series_compose_monomial(g, 4)
    assert (h[4], h[8]) == (Fr(1, 2), Fr(-1, 4))
    assert h.valid_order == 4 * 2 + 3
    c = series_compose_monomial(TruncatedSeries.constant(Fr(3, 7), 0), 5)
    assert c.coeffs == (Fr(3, 7), 0, 0, 0, 0)
    with pytest.raises(ValueError):
        series_compose_monomial(g, 0)


def test_field_rules():
    with pytest.raises(FieldMismatchError):
        S([0.5])
    with pytest.raises(FieldMismatchError):
        S([1]) + S([1.0], field=DOUBLE)
    assert S([Fr(1, 3)]).to_field(DOUBLE)[0] == pytest.approx(1 / 3)


def test_known_order_is_min_of_operands():
    assert (S([1, 2, 3]) + S([1])).valid_order == 0
    assert series_mul(S([1, 2, 3]), S([1, 1])).valid_order == 1


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

small = st.fractions(min_value=-4, max_value=4, max_denominator=6)


@st.composite
def series(draw, order=None, unit=False):
    n = draw(st.integers(0, 8)) if order is None else order
    coeffs = draw(st.lists(small, min_size=n + 1, max_size=n + 1))
    if unit and coeffs[0] == 0:
        coeffs[0] = Fr(1)
    return S(coeffs, field=EXACT)


@settings(max_examples=60, deadline=None)
@given(series(), series(), series())
def test_ring_laws(a, b, c):
    assert series_mul(series_mul(a, b), c) == series_mul(a, series_mul(b, c))
    assert series_mul(a, b) == series_mul(b, a)
    assert series_mul(a, b + c) == series_mul(a, b) + series_mul(a, c)


@settings(max_examples=60, deadline=None)
@given(series(unit=True))
def test_reciprocal_round_trip(a):
    assert series_mul(a, series_reciprocal(a)) == TruncatedSeries.constant(1, a.valid_order)


@settings(max_examples=60, deadline=None)
@given(series(order=8), series(order=8), st.integers(0, 8))
def test_truncation_commutes_with_operations(a, b, n):
    assert series_mul(a.truncate(n), b.truncate(n)) == series_mul(a, b).truncate(n)
    assert a.truncate(n) + b.truncate(n) == (a + b).truncate(n)
    if a[0] != 0:
        assert series_reciprocal(a.truncate(n)) == series_reciprocal(a).truncate(n)


@settings(max_examples=40, deadline=None)
@given(series(), st.integers(1, 5))
def test_compose_then_read_back(a, m):
    h = series_compose_monomial(a, m)
    assert h.valid_order == m * a.valid_order + m - 1
    assert all(h[m * i] == a[i] for i in range(a.valid_order + 1))
    assert all(h[n] == 0 for n in range(h.valid_order + 1) if n % m)
