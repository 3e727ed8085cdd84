import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harmlab.errors import DegenerateMobius, FitMismatch, InvalidParameter, NotDiskAutomorphism, PoleHit
from harmlab.expr import parse_expr
from harmlab.mobius import (
    Mobius,
    automorphism_params,
    circle_residual,
    compose_mobius,
    disk_automorphism,
    fit_disk_automorphism,
    is_disk_automorphism,
    mobius_apply,
    mobius_compose,
    mobius_from_3_points,
    mobius_inverse,
)
from harmlab.schwarzian import random_mobius

THREE = [0.1 + 0.2j, -0.5, 0.3j]


def same_map(M1, M2, pts=THREE, tol=1e-12):
    return np.allclose(M1(np.array(pts)), M2(np.array(pts)), atol=tol, rtol=0)


def test_apply_examples():
    assert mobius_apply(Mobius.identity(), 0.3 - 2j) == 0.3 - 2j
    assert mobius_apply(Mobius(0, 1, 1, 0), 2) == 0.5


def test_pole_and_degenerate():
    with pytest.raises(PoleHit):
        Mobius(0, 1, 1, 0)(0)
    with pytest.raises(DegenerateMobius):
        Mobius(1, 2, 2, 4)


def test_compose_inverse_identity(rng):
    M = random_mobius(rng)
    assert same_map(mobius_compose(M, mobius_inverse(M)), Mobius.identity())
    assert same_map(mobius_compose(mobius_inverse(M), M), Mobius.identity())


def test_compose_is_map_composition(rng):
    A, B = random_mobius(rng), random_mobius(rng)
    w = np.array(THREE)
    np.testing.assert_allclose(mobius_compose(A, B)(w), A(B(w)), rtol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_compose_associative(seed):
    rng = np.random.default_rng(seed)
    A, B, C = (random_mobius(rng, 0.5) for _ in range(3))
    left = mobius_compose(mobius_compose(A, B), C)
    right = mobius_compose(A, mobius_compose(B, C))
    np.testing.assert_allclose(left.matrix(), right.matrix(), atol=1e-12 * np.abs(left.matrix()).max())


def test_disk_automorphism_examples():
    assert same_map(disk_automorphism(0, 0), Mobius.identity())
    assert same_map(disk_automorphism(np.pi, 0), Mobius(-1, 0, 0, 1))
    T = disk_automorphism(0, 0.4)
    theta = 2 * np.pi * np.arange(16) / 16
    np.testing.assert_allclose(np.abs(T(np.exp(1j * theta))), 1, atol=1e-12)
    with pytest.raises(InvalidParameter):
        disk_automorphism(0, 1.0)


def test_automorphism_literal_invariants():
    gamma, z0 = 0.7, 0.3 + 0.1j
    T = disk_automorphism(gamma, z0)
    assert abs(T(-z0)) <= 1e-12
    # T'(w) = e^{i gamma} (1 - |z0|^2) / (1 + conj(z0) w)^2, so at -z0 the phase is gamma
    d = T.apply_jet(__import__("harmlab").Jet.variable(-z0, 1)).coeffs[1]
    assert cmath.phase(d) == pytest.approx(gamma, abs=1e-12)
    g, z = automorphism_params(T)
    assert g == pytest.approx(gamma) and z == pytest.approx(z0)


def test_is_disk_automorphism_examples():
    assert is_disk_automorphism(disk_automorphism(0.3, 0.2j))
    assert not is_disk_automorphism(Mobius(2, 0, 0, 1))
    assert not is_disk_automorphism(Mobius(0, 1, 1, 0))


def test_three_point_examples():
    M = mobius_from_3_points(THREE, THREE)
    assert M(0.77 - 0.1j) == pytest.approx(0.77 - 0.1j)
    assert mobius_from_3_points([0, 1, -1], [0, 2, -2])(1j) == pytest.approx(2j)
    assert mobius_from_3_points([0, 1, 2], [1, 0.5, 1 / 3])(3) == pytest.approx(0.25)
    with pytest.raises(DegenerateMobius):
        mobius_from_3_points([0, 0, 1], [0, 1, 2])


def test_three_point_fit_recovers_random_map(rng):
    for _ in range(20):
        M = random_mobius(rng, 0.5)
        src = rng.normal(size=3) + 1j * rng.normal(size=3)
        fit = mobius_from_3_points(src, M(src))
        probe = rng.normal() + 1j * rng.normal()
        assert fit(probe) == pytest.approx(M(probe), rel=1e-9)


REC = parse_expr("z+z^3/10")


def test_fit_identity():
    M = fit_disk_automorphism(REC, REC)
    assert same_map(M, Mobius.identity()) and is_disk_automorphism(M)


def test_fit_recovers_automorphism():
    T = disk_automorphism(0.7, 0.3 + 0.1j)
    M = fit_disk_automorphism(compose_mobius(T, REC), REC)
    np.testing.assert_allclose(M.normalized().matrix(), T.normalized().matrix(), atol=1e-9)
    g, z0 = automorphism_params(M)
    assert g == pytest.approx(0.7, abs=1e-9) and z0 == pytest.approx(0.3 + 0.1j, abs=1e-9)
    assert circle_residual(M) <= 1e-9


def test_fit_rejects_dilation():
    with pytest.raises(NotDiskAutomorphism):
        fit_disk_automorphism(parse_expr("2*(z+z^3/10)"), REC)


def test_fit_rejects_unrelated():
    with pytest.raises(FitMismatch):
        fit_disk_automorphism(parse_expr("z+z^2/5"), REC)
