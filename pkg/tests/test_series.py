import numpy as np
import pytest

from harmlab.catalog import catalog_lookup, catalog_names
from harmlab.errors import DivisionNearZero, RadiusExceeded
from harmlab.expr import parse_expr
from harmlab.series import (
    PowerSeries,
    series_antiderivative,
    series_derivative,
    series_from_expr,
    tail_bound,
)


def test_derivative_examples():
    np.testing.assert_allclose(series_derivative(PowerSeries([0, 1, 0, 0])).coeffs, [1, 0, 0])
    np.testing.assert_allclose(series_derivative(PowerSeries([1, 1, 1])).coeffs, [1, 2])


def test_antiderivative_examples():
    np.testing.assert_allclose(series_antiderivative(PowerSeries([1])).coeffs, [0, 1])
    np.testing.assert_allclose(series_antiderivative(PowerSeries([0, 1])).coeffs, [0, 0, 0.5])


def test_derivative_antiderivative_inverse(rng):
    p = PowerSeries(rng.normal(size=20) + 1j * rng.normal(size=20))
    assert np.array_equal(series_derivative(series_antiderivative(p)).coeffs, p.coeffs)
    assert series_antiderivative(p).trunc_order == 20


def test_from_expr_examples():
    np.testing.assert_allclose(series_from_expr(parse_expr("exp(z)"), 2).coeffs, [1, 1, 0.5])
    np.testing.assert_allclose(series_from_expr(parse_expr("1/(1-z)"), 3).coeffs, [1, 1, 1, 1])
    # quotient rule at 0: (1*1 - 0.3*0.3)/1 = 0.91
    np.testing.assert_allclose(series_from_expr(parse_expr("(z+0.3)/(1+0.3*z)"), 1).coeffs, [0.3, 0.91])


def test_from_expr_pole_at_origin():
    with pytest.raises(DivisionNearZero):
        series_from_expr(parse_expr("1/z"), 4)


def test_radius_guard():
    p = series_from_expr(parse_expr("exp(z)"), 10)
    with pytest.raises(RadiusExceeded):
        p(0.71)


def test_series_matches_function_within_tail_bound(rng):
    for name in catalog_names():
        for fn in catalog_lookup(name):
            p = series_from_expr(fn, 30)
            z = 0.5 * np.sqrt(rng.uniform(size=20)) * np.exp(2j * np.pi * rng.uniform(size=20))
            for zk in z:
                err = abs(p(zk) - fn.eval_jet(zk, 0).value)
                assert err <= tail_bound(p, zk) + 1e-14


def test_series_arithmetic():
    a = series_from_expr(parse_expr("1+z"), 6)
    b = series_from_expr(parse_expr("1/(1+z)"), 6)
    np.testing.assert_allclose((a * b).coeffs, [1, 0, 0, 0, 0, 0, 0], atol=1e-15)
    np.testing.assert_allclose((a / a).coeffs, [1, 0, 0, 0, 0, 0, 0], atol=1e-15)
    np.testing.assert_allclose((a + 2).coeffs[:2], [3, 1])


def test_jets_of_series_match_expression():
    f = parse_expr("exp(z)*(1+z^2)")
    p = series_from_expr(f, 64)
    np.testing.assert_allclose(p.eval_jet(0.4 - 0.3j, 4).coeffs, f.eval_jet(0.4 - 0.3j, 4).coeffs,
                               rtol=1e-13)
