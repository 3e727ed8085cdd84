import json

import jsonschema
import numpy as np
import pytest

from harmlab.errors import ConfigError, InvalidParameter
from harmlab.grid import GridSpec
from harmlab.report import Check, CheckReport, validate_report, worst_index, residual_check


def test_grid_points_respect_radius_and_exclusions():
    g = GridSpec(0.7, 21, 48, exclusion_centers=[0.3j], exclusion_radius=0.1)
    pts = g.points()
    assert np.abs(pts).max() <= 0.7 + 1e-15
    assert np.abs(pts - 0.3j).min() >= 0.1
    assert GridSpec(0.7, 21, 48).points().size == 21 * 48


def test_grid_enumeration_is_radius_major():
    pts = GridSpec(0.6, 2, 4).points()
    np.testing.assert_allclose(pts[:4], 0.3 * np.exp(2j * np.pi * np.arange(4) / 4))


@pytest.mark.parametrize("kw", [dict(r_max=1.0), dict(n_radial=1), dict(n_angular=3),
                                dict(exclusion_radius=-1)])
def test_grid_validation(kw):
    base = dict(r_max=0.7, n_radial=4, n_angular=8)
    with pytest.raises(InvalidParameter):
        GridSpec(**{**base, **kw})


def test_pass_iff_residual_within_tolerance():
    assert Check("a", 1e-5, 1e-5).passed
    assert not Check("a", 2e-5, 1e-5).passed
    assert not Check("a", float("nan"), 1.0).passed
    assert not Check("a", 0.0, 1.0, reason="boom").passed


def test_worst_point_tie_break():
    pts = np.array([0.5 + 0.1j, -0.2 + 0.3j, -0.2 - 0.4j])
    assert worst_index(pts, np.array([1.0, 1.0, 1.0])) == 2
    assert worst_index(pts, np.array([1.0, np.nan, 3.0])) == 1


def test_report_schema():
    rep = CheckReport("demo")
    g = GridSpec(0.5, 2, 4)
    rep.add(residual_check("x", g.points(), np.zeros(8), 1e-3, g.summary(), 1e-3))
    doc = json.loads(rep.to_json("2026-01-01T00:00:00+00:00"))
    validate_report(doc)
    # all residuals tie, so the lexicographically smallest (x, y) wins
    assert doc["checks"][0]["worst_point"] == [pytest.approx(-0.5), pytest.approx(0.0, abs=1e-15)]
    doc["checks"][0].pop("pass")
    with pytest.raises(jsonschema.ValidationError):
        validate_report(doc)
