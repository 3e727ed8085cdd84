"""Verification suites behind the command line: check, reconstruct, grid export."""
from __future__ import annotations

import csv
import logging
import math
import os
from dataclasses import dataclass, fields

import numpy as np

from .catalog import catalog_lookup
from .errors import ConfigError, HarmlabError, IoError, ParseError, UnknownCatalogEntry
from .expr import parse_expr
from .family import (
    FamilyParams,
    Type1Params,
    sample_params,
    sample_type1_params,
    type1_family_member,
    type1_params_from_map,
    verify_family,
    verify_type1_family,
)
from .grid import GridSpec
from .harmonic import (
    Dilatation,
    HarmonicMap,
    JacobianType,
    classify_type,
    critical_points,
    is_sense_preserving,
    jacobian,
    jacobian_sampler,
    verify_jacobian_pde,
    verify_R_harmonic,
)
from .jets import EPS_DIV
from .mobius import automorphism_params, circle_residual, default_probes, fit_disk_automorphism, fit_residual
from .report import Check, CheckReport, failed_check, residual_check
from .schwarzian import (
    compute_Q_analytic,
    compute_Q_blackbox,
    canonical_dilatation,
    hyperbolic_density,
    hyperbolic_density_blackbox,
    random_mobius,
    schwarzian,
    schwarzian_invariance_residuals,
    schwarzian_series,
    solve_schwarzian_series,
)

log = logging.getLogger(__name__)

BLACKBOX_PROBES = (0.3, 0.3j, -0.2 + 0.1j, 0.1 - 0.25j)


@dataclass
class SuiteConfig:
    map_spec: str
    r_max: float = 0.7
    n_radial: int = 21
    n_angular: int = 48
    step: float = 1e-3
    seed: int = 42
    n_params: int = 20
    exclusion_radius: float = 0.1
    tol_analytic: float = 1e-10
    tol_family: float = 1e-11
    tol_fd: float = 1e-4
    tol_q: float = 1e-9
    tol_fit: float = 1e-6
    tol_blackbox: float = 2e-2
    inner_step: float = 1e-3
    outer_step: float = 1e-2
    series_order: int = 64
    blackbox: bool = False

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name in ("map_spec", "blackbox"):
                continue
            if f.name == "seed":
                if v < 0:
                    raise ConfigError("seed must be non-negative")
            elif not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ConfigError(f"{f.name} must be positive, got {v!r}")

    def grid(self) -> GridSpec:
        try:
            return GridSpec(self.r_max, self.n_radial, self.n_angular)
        except HarmlabError as exc:
            raise ConfigError(str(exc)) from exc


def seed_from_env(default: int = 42) -> int:
    raw = os.environ.get("HARMLAB_SEED")
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"HARMLAB_SEED must be an integer, got {raw!r}") from None


def parse_map_spec(spec: str) -> HarmonicMap:
    """``"<h-expr>;<g-expr>"`` or a catalog name."""
    try:
        if ";" in spec:
            h_text, g_text = spec.split(";", 1)
            return HarmonicMap(parse_expr(h_text), parse_expr(g_text))
        return HarmonicMap(*catalog_lookup(spec.strip()))
    except (ParseError, UnknownCatalogEntry) as exc:
        raise ConfigError(f"bad map spec {spec!r}: {exc}") from exc


def parse_complex(text: str) -> complex:
    """A complex constant written in the expression grammar, e.g. ``0.4+0.2*i``."""
    try:
        node = parse_expr(text)
        v = node.eval_jet(0.0, 0).value
    except HarmlabError as exc:
        raise ConfigError(f"bad complex literal {text!r}: {exc}") from exc
    if node.eval_jet(0.5, 0).value != v:
        raise ConfigError(f"complex literal {text!r} depends on z")
    return complex(v)


def _guarded(report: CheckReport, name: str, fn):
    """Run ``fn`` and merge its report; domain errors become failed checks."""
    try:
        out = fn()
    except HarmlabError as exc:
        report.add(failed_check(name, f"{type(exc).__name__}: {exc}"))
        return None
    if isinstance(out, CheckReport):
        report.extend(out)
    elif isinstance(out, Check):
        report.add(out)
    return out


def schwarzian_invariance_check(fns, points, seed, n_maps=10, tol=1e-9) -> Check:
    rng = np.random.default_rng(seed)
    pts_all, res_all = [], []
    for fn in fns:
        for _ in range(n_maps):
            M = random_mobius(rng)
            p, r = schwarzian_invariance_residuals(fn, M, points)
            pts_all.append(p)
            res_all.append(r)
    return residual_check("schwarzian_mobius_invariance", np.concatenate(pts_all),
                          np.concatenate(res_all), tol)


def q_cancellation_check(omega, points, tol, grid_summary=None) -> Check:
    d1 = np.abs(omega.eval_jet(points, 1).coeffs[1])
    pts = points[d1 >= 0.1]
    res = np.abs(compute_Q_analytic(omega, pts) - 2 * schwarzian(omega, pts))
    return residual_check("Q_equals_twice_schwarzian", pts, res, tol, grid_summary)


def run_check_suite(cfg: SuiteConfig) -> CheckReport:
    """Run every check applicable to the map's Jacobian type."""
    f = parse_map_spec(cfg.map_spec)
    grid = cfg.grid()
    pts = grid.points()
    report = CheckReport(f"check:{cfg.map_spec}")
    report.extras["seed"] = cfg.seed
    gate = is_sense_preserving(f, grid)
    report.extend(gate)
    report.extras["levy"] = gate.extras
    if not gate.passed:
        log.warning("map %s is not sense-preserving on the grid; suite aborted", cfg.map_spec)
        report.extras["aborted"] = "sense-preservation gate failed"
        return report

    jtype = classify_type(f, grid)
    report.extras["type"] = str(jtype)
    _guarded(report, "jacobian_pde", lambda: verify_jacobian_pde(f, grid, cfg.step, cfg.tol_fd, cfg.tol_analytic))
    omega = Dilatation(f)

    if jtype is JacobianType.Type2:
        Z = critical_points(f, cfg.r_max)
        report.extras["critical_points"] = [[z.real, z.imag] for z in Z]
        grid_R = grid.with_exclusions(Z, cfg.exclusion_radius) if Z else grid
        _guarded(report, "R_harmonic_fd", lambda: verify_R_harmonic(f, grid_R, cfg.step, cfg.tol_fd))
        _guarded(report, "Q_equals_twice_schwarzian",
                 lambda: q_cancellation_check(omega, grid_R.points(), cfg.tol_q, grid_R.summary()))
        params = sample_params(cfg.n_params, cfg.seed)
        _guarded(report, "family", lambda: verify_family(f, params, grid, cfg.tol_family))
        fns = [f.h, omega]
    else:
        h, a = type1_params_from_map(f)
        rng_seed = cfg.seed
        t1 = [Type1Params(a, p.b, p.alpha, p.beta) for p in sample_type1_params(cfg.n_params, rng_seed)]
        Jf = jacobian(f, pts)

        def same_jacobian():
            res = [np.abs(jacobian(type1_family_member(h, p), pts) - Jf) / (1 + Jf) for p in t1]
            return residual_check("type1_equal_jacobian", np.tile(pts, len(t1)),
                                  np.concatenate(res), cfg.tol_family, grid.summary())

        _guarded(report, "type1_equal_jacobian", same_jacobian)
        _guarded(report, "type1_jacobian_law",
                 lambda: verify_type1_family(h, sample_type1_params(cfg.n_params, rng_seed + 1), grid))
        fns = [f.h]
    _guarded(report, "schwarzian_mobius_invariance",
             lambda: schwarzian_invariance_check(fns, pts, cfg.seed, tol=cfg.tol_q))
    return report


def reconstruct_command(cfg: SuiteConfig) -> CheckReport:
    """Rebuild the dilatation from Q and fit the disk automorphism to the true one."""
    f = parse_map_spec(cfg.map_spec)
    grid = cfg.grid()
    report = CheckReport(f"reconstruct:{cfg.map_spec}")
    gate = is_sense_preserving(f, grid)
    report.extend(gate)
    if not gate.passed:
        return report
    if classify_type(f, grid) is not JacobianType.Type2:
        report.add(failed_check("reconstruct_precondition_type2",
                                "Q is undefined for a Type1 Jacobian"))
        return report
    omega = Dilatation(f)
    if abs(omega.eval_jet(0.0, 1).coeffs[1]) <= EPS_DIV:
        report.add(failed_check("reconstruct_precondition_origin", "0 lies in Z (omega'(0) = 0)"))
        return report

    N = cfg.series_order
    probes = default_probes()
    try:
        Q = schwarzian_series(omega, N)
        rec = solve_schwarzian_series(Q, N)
        report.add(residual_check("Q_series_matches_dilatation", probes,
                                  np.abs(Q(probes) - 2 * schwarzian(omega, probes)), cfg.tol_q))
        report.add(residual_check("reconstruction_solves_ode", probes,
                                  np.abs(2 * schwarzian(rec, probes) - Q(probes)), cfg.tol_q))
        lam0, dlog0 = hyperbolic_density(omega, 0.0)
        canon = canonical_dilatation(rec, float(lam0), complex(dlog0))
        T = fit_disk_automorphism(omega, canon, probes, cfg.tol_fit)
    except HarmlabError as exc:
        report.add(failed_check("reconstruct", f"{type(exc).__name__}: {exc}"))
        return report
    report.add(Check("automorphism_fit_validation", fit_residual(T, omega, canon, probes[3:]),
                     cfg.tol_fit))
    report.add(Check("automorphism_circle", circle_residual(T), 1e-9))
    gamma, z0 = automorphism_params(T)
    report.extras["recovered"] = {"gamma": gamma, "z0": [z0.real, z0.imag]}

    if cfg.blackbox:
        J = jacobian_sampler(f)
        bp = np.array(BLACKBOX_PROBES)

        def blackbox_q():
            q_bb = compute_Q_blackbox(J, bp, cfg.inner_step, cfg.outer_step)
            q_an = 2 * schwarzian(omega, bp)
            scale = np.where(np.abs(q_an) >= 0.1, np.abs(q_an), 1.0)
            return residual_check("Q_blackbox", bp, np.abs(q_bb - q_an) / scale, cfg.tol_blackbox,
                                  step=cfg.outer_step)

        def blackbox_density():
            lam_bb, _ = hyperbolic_density_blackbox(J, 0.0, cfg.inner_step, cfg.outer_step)
            return Check("density_blackbox", abs(float(lam_bb) - float(lam0)) / float(lam0),
                         cfg.tol_fd, 0j, step=cfg.inner_step)

        _guarded(report, "Q_blackbox", blackbox_q)
        _guarded(report, "density_blackbox", blackbox_density)
    return report


CSV_HEADER = ["x", "y", "re_f", "im_f", "jacobian", "re_omega", "im_omega"]


def emit_grid_csv(f: HarmonicMap, grid: GridSpec, path) -> int:
    """Write one row per grid point; returns the row count."""
    pts = grid.points()
    vals = f(pts)
    J = jacobian(f, pts)
    w = Dilatation(f).eval_jet(pts, 0).value
    fmt = "{:.16e}".format
    try:
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_HEADER)
            for k in range(pts.size):
                writer.writerow([fmt(v) for v in (pts[k].real, pts[k].imag, vals[k].real, vals[k].imag,
                                                  J[k], w[k].real, w[k].imag)])
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return int(pts.size)


def read_grid_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if rows[0] != CSV_HEADER:
        raise IoError(f"unexpected header {rows[0]}")
    return np.array([[float(v) for v in r] for r in rows[1:]])
