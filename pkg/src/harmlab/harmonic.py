"""Harmonic maps ``f = h + conj(g) + c`` on the unit disk.

Jacobians and dilatations come from jets of ``h`` and ``g``; black-box
Wirtinger derivatives use central finite differences on scalar samplers.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analytic import function_radius
from .errors import DegenerateAtPoint, DivisionNearZero, PreconditionViolation, RadiusExceeded
from .grid import GridSpec
from .jets import EPS_DIV, Jet
from .report import Check, CheckReport, residual_check

TOL_CONST = 1e-10


@dataclass(frozen=True)
class HarmonicMap:
    h: object
    g: object
    c: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "c", complex(self.c))

    @property
    def radius(self) -> float:
        return min(function_radius(self.h), function_radius(self.g))

    def h_prime(self, z, order=0) -> Jet:
        return self.h.eval_jet(z, order + 1).derivative()

    def g_prime(self, z, order=0) -> Jet:
        return self.g.eval_jet(z, order + 1).derivative()

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return self.h.eval_jet(z, 0).value + np.conj(self.g.eval_jet(z, 0).value) + self.c

    def f_z(self, z):
        return self.h_prime(z).value

    def f_zbar(self, z):
        return np.conj(self.g_prime(z).value)


class Dilatation:
    """The analytic dilatation ``omega = g'/h'`` as an analytic function."""

    def __init__(self, f: HarmonicMap):
        self.f = f

    @property
    def radius(self):
        return self.f.radius

    def eval_jet(self, z, order):
        hp = self.f.h_prime(z, order)
        mag = np.abs(hp.value)
        if mag.size and mag.min() <= EPS_DIV:
            raise DivisionNearZero(mag.min())
        return (self.f.g_prime(z, order) / hp).check_finite()

    def __call__(self, z):
        return self.eval_jet(z, 0).value


class JacobianType(enum.Enum):
    Type1 = "Type1"
    Type2 = "Type2"

    def __str__(self):
        return self.value


def jacobian(f: HarmonicMap, z):
    """``|h'(z)|^2 - |g'(z)|^2``."""
    hp = f.h_prime(z).value
    gp = f.g_prime(z).value
    return np.abs(hp) ** 2 - np.abs(gp) ** 2


def dilatation(f: HarmonicMap, z):
    return Dilatation(f).eval_jet(z, 0).value


def is_sense_preserving(f: HarmonicMap, grid: GridSpec) -> CheckReport:
    """Levy criterion in both forms: ``min J > 0`` and ``max |omega| < 1``.

    Strict inequalities are encoded with tolerances at the adjacent doubles,
    so ``pass <=> max_residual <= tolerance`` still holds literally.
    """
    pts = grid.points()
    summary = grid.summary()
    report = CheckReport("sense_preserving")
    J = jacobian(f, pts)
    report.add(residual_check("levy_jacobian_positive", pts, -J, -np.nextafter(0.0, 1.0), summary))
    try:
        w = np.abs(dilatation(f, pts))
        wcheck = residual_check("levy_dilatation_below_one", pts, w, np.nextafter(1.0, 0.0), summary)
    except DivisionNearZero as exc:
        wcheck = Check("levy_dilatation_below_one", float("inf"), np.nextafter(1.0, 0.0),
                       None, summary, reason=str(exc))
    report.add(wcheck)
    agree = report.checks[0].passed == wcheck.passed
    report.add(Check("levy_criteria_agree", 0.0 if agree else 1.0, 0.0, None, summary))
    report.extras = {"min_jacobian": float(J.min()),
                     "max_abs_dilatation": float(wcheck.max_residual)}
    return report


# -- black-box scalar fields ---------------------------------------------------

@dataclass(frozen=True)
class ScalarFieldSampler:
    """Real field ``u(z)`` on the disk ``|z| < radius``; ``fn`` is vectorized."""

    fn: Callable
    radius: float = 1.0

    def __call__(self, z):
        return np.asarray(self.fn(np.asarray(z, dtype=complex)), dtype=float)

    @classmethod
    def from_table(cls, xs, ys, values, radius=None):
        """Quintic spline through samples ``values[i, j] = u(xs[i] + 1j*ys[j])``."""
        from scipy.interpolate import RectBivariateSpline

        spline = RectBivariateSpline(xs, ys, values, kx=5, ky=5)
        if radius is None:
            radius = min(abs(xs[0]), abs(xs[-1]), abs(ys[0]), abs(ys[-1]))
        return cls(lambda z: spline.ev(z.real, z.imag), radius)


def jacobian_sampler(f: HarmonicMap) -> ScalarFieldSampler:
    return ScalarFieldSampler(lambda z: jacobian(f, z), min(1.0, f.radius))


def log_sampler(u: ScalarFieldSampler) -> ScalarFieldSampler:
    return ScalarFieldSampler(lambda z: np.log(u(z)), u.radius)


class Wirtinger(enum.Enum):
    Dz = "Dz"
    Dzbar = "Dzbar"
    Dzzbar = "Dzzbar"
    Dzz = "Dzz"


def _check_stencil(u, z, reach):
    z = np.asarray(z, dtype=complex)
    if z.size and np.abs(z).max() + reach > u.radius:
        raise RadiusExceeded(
            f"stencil reaches |z| = {np.abs(z).max() + reach:.6g} beyond sampler radius {u.radius}")


def wirtinger_fd(u: ScalarFieldSampler, z, step: float = 1e-3, which=Wirtinger.Dzzbar):
    """Central-difference Wirtinger derivatives of a real field, O(step^2)."""
    which = Wirtinger(which)
    z = np.asarray(z, dtype=complex)
    _check_stencil(u, z, 2 * step)
    s = step
    if which in (Wirtinger.Dz, Wirtinger.Dzbar):
        ux = (u(z + s) - u(z - s)) / (2 * s)
        uy = (u(z + 1j * s) - u(z - 1j * s)) / (2 * s)
        return (ux - 1j * uy) / 2 if which is Wirtinger.Dz else (ux + 1j * uy) / 2
    u0 = u(z)
    if which is Wirtinger.Dzzbar:
        lap = (u(z + s) + u(z - s) + u(z + 1j * s) + u(z - 1j * s) - 4 * u0) / s**2
        return lap / 4 + 0j
    uxx = (u(z + s) - 2 * u0 + u(z - s)) / s**2
    uyy = (u(z + 1j * s) - 2 * u0 + u(z - 1j * s)) / s**2
    uxy = (u(z + s + 1j * s) - u(z + s - 1j * s) - u(z - s + 1j * s) + u(z - s - 1j * s)) / (4 * s**2)
    return (uxx - uyy - 2j * uxy) / 4


# -- the characterization PDE -------------------------------------------------

def jacobian_pde_rhs(f: HarmonicMap, z):
    """``|omega'|^2 / (1 - |omega|^2)^2`` from jets."""
    w = Dilatation(f).eval_jet(z, 1)
    return np.abs(w.coeffs[1]) ** 2 / (1 - np.abs(w.coeffs[0]) ** 2) ** 2


def jacobian_pde_lhs(f: HarmonicMap, z):
    """``-(ln J)_{z zbar}`` from second derivatives of ``h`` and ``g``.

    With ``A = h'`` and ``B = g'``: ``J_z = A' conj(A) - B' conj(B)`` and
    ``J_{z zbar} = |A'|^2 - |B'|^2``.
    """
    a = f.h_prime(z, 1).coeffs
    b = f.g_prime(z, 1).coeffs
    J = np.abs(a[0]) ** 2 - np.abs(b[0]) ** 2
    Jz = a[1] * np.conj(a[0]) - b[1] * np.conj(b[0])
    Jzzb = np.abs(a[1]) ** 2 - np.abs(b[1]) ** 2
    return np.abs(Jz) ** 2 / J**2 - Jzzb / J


def verify_jacobian_pde(f: HarmonicMap, grid: GridSpec, step: float = 1e-3,
                   tol_fd: float = 1e-4, tol_analytic: float = 1e-10) -> CheckReport:
    """Compare ``-(ln J)_{z zbar}`` with ``|omega'|^2 (1-|omega|^2)^-2`` on the grid.

    Two routes for the left side: a five-point Laplacian of sampled ``ln J``,
    and a closed form from second derivatives of ``h`` and ``g``.
    """
    pts = grid.points()
    summary = grid.summary()
    rhs = jacobian_pde_rhs(f, pts)
    lhs_fd = -wirtinger_fd(log_sampler(jacobian_sampler(f)), pts, step, Wirtinger.Dzzbar).real
    lhs_an = jacobian_pde_lhs(f, pts)
    report = CheckReport("jacobian_pde")
    report.add(residual_check("jacobian_pde_fd", pts, np.abs(lhs_fd - rhs) / (1 + np.abs(rhs)), tol_fd, summary, step))
    report.add(residual_check("jacobian_pde_factorized", pts, np.abs(lhs_an - rhs) / (1 + np.abs(rhs)),
                              tol_analytic, summary))
    return report


# Name used by the published operation list; same function.
verify_pde_eq1 = verify_jacobian_pde


def classify_type(f: HarmonicMap, grid: GridSpec, tol_const: float = TOL_CONST) -> JacobianType:
    """Type1 iff the dilatation is constant (``max |omega'| <= tol_const``)."""
    w1 = Dilatation(f).eval_jet(grid.points(), 1).coeffs[1]
    return JacobianType.Type1 if np.abs(w1).max() <= tol_const else JacobianType.Type2


def critical_points(f: HarmonicMap, r_max: float, tol: float = 1e-12):
    """Zeros of ``omega'`` in ``|z| <= r_max`` found by Newton from a seed grid."""
    omega = Dilatation(f)
    reach = min(f.radius, 1.0) - 1e-9
    r = np.linspace(0, r_max, 8)
    theta = 2 * np.pi * np.arange(16) / 16
    z = np.unique((r[:, None] * np.exp(1j * theta)[None, :]).reshape(-1))
    if np.abs(omega.eval_jet(z, 1).coeffs[1]).max() <= TOL_CONST:
        return []  # constant dilatation: no isolated zeros
    for _ in range(60):
        try:
            c = omega.eval_jet(z, 2).coeffs
        except (DivisionNearZero, ArithmeticError):
            break
        d1, d2 = c[1], 2 * c[2]
        with np.errstate(all="ignore"):
            stepv = np.where(np.abs(d2) > 1e-14, d1 / d2, 0)
        z = z - stepv
        mag = np.abs(z)
        z = np.where(mag < reach, z, reach * z / np.maximum(mag, reach))
    roots = []
    try:
        d1 = np.abs(omega.eval_jet(z, 1).coeffs[1])
    except ArithmeticError:
        return roots
    for zi, ok in zip(z, d1 <= tol * 1e3):
        if ok and abs(zi) <= r_max and all(abs(zi - r0) > 1e-6 for r0 in roots):
            roots.append(complex(zi))
    return sorted(roots, key=lambda c: (c.real, c.imag))


def log_R(f: HarmonicMap, z):
    """``R = ln(-J^2 (ln J)_{z zbar})`` with the mixed derivative from the PDE."""
    w = Dilatation(f).eval_jet(z, 1).coeffs
    dw = np.abs(w[1])
    if dw.size and dw.min() < EPS_DIV:
        k = int(np.argmin(dw))
        raise DegenerateAtPoint(f"omega' vanishes at z = {np.asarray(z).reshape(-1)[k]}")
    J = jacobian(f, z)
    return 2 * np.log(J) + 2 * np.log(dw) - 2 * np.log1p(-np.abs(w[0]) ** 2)


def verify_R_harmonic(f: HarmonicMap, grid: GridSpec, step: float = 1e-3,
                      tol: float = 1e-4) -> CheckReport:
    """Check ``|Laplacian R| <= tol`` at every grid point (Z must be excluded)."""
    if classify_type(f, grid) is JacobianType.Type1:
        raise PreconditionViolation("R is only defined for Type2 Jacobians")
    pts = grid.points()
    # Degeneracy is detected at the stencil centres before any differencing.
    log_R(f, pts)
    u = ScalarFieldSampler(lambda z: log_R(f, z), min(1.0, f.radius))
    lap = 4 * wirtinger_fd(u, pts, step, Wirtinger.Dzzbar).real
    report = CheckReport("R_harmonic")
    report.add(residual_check("R_harmonic_fd", pts, np.abs(lap), tol, grid.summary(), step))
    return report
