import numpy as np
import pytest

from harmlab.catalog import catalog_lookup, catalog_names, TYPE2_NAMES
from harmlab.errors import DegenerateAtPoint, DivisionNearZero, InvalidParameter, NegativeInnerValue
from harmlab.expr import parse_expr
from harmlab.harmonic import Dilatation, HarmonicMap, ScalarFieldSampler, jacobian_sampler
from harmlab.mobius import compose_mobius, disk_automorphism, mobius_from_3_points
from harmlab.schwarzian import (
    canonical_dilatation,
    compute_Q_analytic,
    compute_Q_blackbox,
    hyperbolic_density,
    random_mobius,
    schwarzian,
    schwarzian_invariance_residuals,
    schwarzian_series,
    solve_schwarzian_series,
)
from harmlab.series import PowerSeries


def test_schwarzian_examples(rng):
    assert schwarzian(parse_expr("exp(z)"), 0.3 + 0.2j) == pytest.approx(-0.5)
    assert schwarzian(parse_expr("z^2"), 1.0) == pytest.approx(-1.5)
    M = random_mobius(rng)
    z = np.array([0.1, -0.2j, 0.3 + 0.3j])
    assert np.abs(schwarzian(compose_mobius(M, parse_expr("z")), z)).max() <= 1e-12


def test_schwarzian_symbolic_oracle():
    sympy = pytest.importorskip("sympy")
    z = sympy.symbols("z")
    f = sympy.exp(z) / (2 + z**2)
    d1, d2, d3 = (sympy.diff(f, z, k) for k in (1, 2, 3))
    S = d3 / d1 - sympy.Rational(3, 2) * (d2 / d1) ** 2
    oracle = complex(S.subs(z, 0.2 - 0.1j).evalf())
    assert schwarzian(parse_expr("exp(z)/(2+z^2)"), 0.2 - 0.1j) == pytest.approx(oracle, rel=1e-12)


def test_schwarzian_critical_point():
    with pytest.raises(DivisionNearZero):
        schwarzian(parse_expr("z^2"), 0.0)


def test_Q_analytic_examples():
    assert compute_Q_analytic(parse_expr("z"), 0.4 - 0.1j) == pytest.approx(0, abs=1e-14)
    assert compute_Q_analytic(parse_expr("z^2"), 0.5) == pytest.approx(-12)
    T = disk_automorphism(0.3, 0.2 + 0.1j)
    assert compute_Q_analytic(compose_mobius(T, parse_expr("z")), 0.2) == pytest.approx(0, abs=1e-12)
    with pytest.raises(DegenerateAtPoint):
        compute_Q_analytic(parse_expr("z^2"), 0.0)


@pytest.mark.parametrize("name", TYPE2_NAMES)
def test_Q_cancellation_on_catalog(name):
    omega = Dilatation(HarmonicMap(*catalog_lookup(name)))
    r = np.linspace(0.05, 0.7, 8)
    z = (r[:, None] * np.exp(2j * np.pi * np.arange(12) / 12)).ravel()
    z = z[np.abs(omega.eval_jet(z, 1).coeffs[1]) >= 0.1]
    res = np.abs(compute_Q_analytic(omega, z) - 2 * schwarzian(omega, z))
    assert res.max() <= 1e-9


def test_Q_blackbox_examples():
    shear = jacobian_sampler(HarmonicMap(parse_expr("z"), parse_expr("z^2/2")))
    assert abs(compute_Q_blackbox(shear, 0.3)) <= 1e-2
    sq = jacobian_sampler(HarmonicMap(parse_expr("z"), parse_expr("z^3/3")))
    assert compute_Q_blackbox(sq, 0.5) == pytest.approx(-12, rel=2e-2)
    flat = ScalarFieldSampler(lambda z: np.full(np.shape(z), 0.75))
    with pytest.raises(NegativeInnerValue):
        compute_Q_blackbox(flat, 0.2)
    with pytest.raises(InvalidParameter):
        compute_Q_blackbox(shear, 0.3, 1e-3, 2e-3)


def test_solve_free_equation():
    rec = solve_schwarzian_series(PowerSeries([0.0]), 16)
    np.testing.assert_allclose(rec.coeffs, np.eye(17)[1], atol=0)


def test_solve_self_consistency_cubic():
    Q = schwarzian_series(parse_expr("z+z^3/10"), 64)
    rec = solve_schwarzian_series(Q, 64)
    for z in (0.1, 0.3j, 0.2 - 0.2j):
        assert abs(2 * schwarzian(rec, z) - Q(z)) <= 1e-9


def test_schwarzian_series_matches_pointwise():
    fn = parse_expr("exp(z)-z^2/3")
    Q = schwarzian_series(fn, 64)
    for z in (0.2, -0.3j):
        assert Q(z) == pytest.approx(2 * schwarzian(fn, z), rel=1e-12)


def test_solve_mobius_related_for_blaschke():
    omega = parse_expr("0.9*z/(1+0.2*z)")
    rec = solve_schwarzian_series(schwarzian_series(omega, 64), 64)
    probes = 0.3 * np.exp(2j * np.pi * np.arange(23) / 23)
    M = mobius_from_3_points(rec(probes[:3]), omega(probes[:3]))
    assert np.abs(M(rec(probes[3:])) - omega(probes[3:])).max() <= 1e-8


@pytest.mark.parametrize("name", TYPE2_NAMES)
def test_solve_self_consistency_catalog(name):
    omega = Dilatation(HarmonicMap(*catalog_lookup(name)))
    Q = schwarzian_series(omega, 64)
    rec = solve_schwarzian_series(Q, 64)
    z = 0.5 * np.exp(2j * np.pi * np.arange(7) / 7)
    z = np.append(z, [0.0, 0.25j])
    assert np.abs(2 * schwarzian(rec, z) - Q(z)).max() <= 1e-9


def test_canonical_dilatation_is_orbit_representative():
    omega = parse_expr("0.9*(z+0.3)/(1+0.3*z)")
    T = disk_automorphism(-1.1, 0.2 - 0.4j)
    other = compose_mobius(T, omega)
    reps = []
    for w in (omega, other):
        rec = solve_schwarzian_series(schwarzian_series(w, 64), 64)
        lam, dlog = hyperbolic_density(w, 0.0)
        reps.append(canonical_dilatation(rec, float(lam), complex(dlog)))
    z = np.array([0.1, 0.3j, -0.25])
    np.testing.assert_allclose(reps[0](z), reps[1](z), atol=1e-12)


@pytest.mark.parametrize("name", catalog_names())
def test_mobius_invariance(name, rng):
    z = 0.6 * np.sqrt(rng.uniform(size=50)) * np.exp(2j * np.pi * rng.uniform(size=50))
    for fn in catalog_lookup(name):
        for _ in range(10):
            M = random_mobius(rng)
            _, res = schwarzian_invariance_residuals(fn, M, z)
            assert res.size == 0 or res.max() <= 1e-9
