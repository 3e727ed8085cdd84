"""Families of harmonic maps sharing one Jacobian.

For a Type2 representative ``f = h + conj(g)`` the family is

    F = e^{ia}(h + conj(z0) g)/s + e^{ib} conj(g + z0 h)/s + C,  s = sqrt(1 - |z0|^2),

equivalently ``F = A o R[f]`` with the rotation ``R[f] = e^{ia} h + e^{ib} conj(g)``
and the unit-Jacobian real-affine map ``A(w) = (w + e^{i(a+b)} conj(z0 w))/s + C``.
Type1 representatives use ``e^{ia} h + e^{ib} a conj(h) + b`` instead.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .analytic import linear_combination
from .errors import DivisionNearZero, InvalidParameter, PreconditionViolation, SenseReversed
from .grid import GridSpec
from .harmonic import Dilatation, HarmonicMap, JacobianType, classify_type, is_sense_preserving, jacobian
from .jets import EPS_DIV
from .mobius import Z0_GUARD, default_probes, fit_disk_automorphism, circle_residual
from .report import Check, CheckReport, failed_check, residual_check
from .series import DEFAULT_ORDER, PowerSeries, series_antiderivative, series_from_expr


@dataclass(frozen=True)
class FamilyParams:
    alpha: float = 0.0
    beta: float = 0.0
    z0: complex = 0j
    C: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "z0", complex(self.z0))
        object.__setattr__(self, "C", complex(self.C))
        if abs(self.z0) >= 1:
            raise InvalidParameter(f"|z0| = {abs(self.z0)} must be < 1")
        if abs(self.z0) > Z0_GUARD:
            raise InvalidParameter(f"|z0| = {abs(self.z0)} exceeds the numerical guard {Z0_GUARD}")

    @property
    def scale(self):
        return 1.0 / math.sqrt(1 - abs(self.z0) ** 2)

    def as_dict(self):
        return {"alpha": self.alpha, "beta": self.beta,
                "z0": [self.z0.real, self.z0.imag], "C": [self.C.real, self.C.imag]}


@dataclass(frozen=True)
class Type1Params:
    a: complex = 0j
    b: complex = 0j
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        if abs(self.a) >= 1:
            raise InvalidParameter(f"|a| = {abs(self.a)} must be < 1")


@dataclass(frozen=True)
class RealAffineMap:
    """``w -> p w + q conj(w) + c``."""

    p: complex
    q: complex
    c: complex = 0j

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        return self.p * w + self.q * np.conj(w) + self.c

    @property
    def jacobian(self):
        return abs(self.p) ** 2 - abs(self.q) ** 2

    def after(self, f: HarmonicMap) -> HarmonicMap:
        """``A o f`` as a harmonic map."""
        p, q = self.p, self.q
        return HarmonicMap(
            linear_combination([(p, f.h), (q, f.g)]),
            linear_combination([(p.conjugate(), f.g), (q.conjugate(), f.h)]),
            p * f.c + q * f.c.conjugate() + self.c,
        )


def sample_params(n: int, seed: int = 42, z0_radius: float = 0.8):
    """Seeded family parameters: angles uniform, ``z0`` area-uniform in a disk."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        alpha, beta = rng.uniform(0, 2 * np.pi, 2)
        r = z0_radius * math.sqrt(rng.uniform())
        t = rng.uniform(0, 2 * np.pi)
        C = complex(*rng.uniform(-1, 1, 2))
        out.append(FamilyParams(float(alpha), float(beta), r * cmath.exp(1j * t), C))
    return out


def sample_type1_params(n: int, seed: int = 42, a_radius: float = 0.9):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        r = a_radius * math.sqrt(rng.uniform())
        a = r * cmath.exp(1j * rng.uniform(0, 2 * np.pi))
        b = complex(*rng.uniform(-1, 1, 2))
        alpha, beta = rng.uniform(0, 2 * np.pi, 2)
        out.append(Type1Params(a, b, float(alpha), float(beta)))
    return out


def rotate_parts(f: HarmonicMap, alpha: float, beta: float) -> HarmonicMap:
    """``e^{i alpha} h + e^{i beta} conj(g) + c``, stored as ``(e^{ia} h, e^{-ib} g, c)``."""
    return HarmonicMap(
        linear_combination([(cmath.exp(1j * alpha), f.h)]),
        linear_combination([(cmath.exp(-1j * beta), f.g)]),
        f.c,
    )


def affine_map(params: FamilyParams) -> RealAffineMap:
    s = params.scale
    q = cmath.exp(1j * (params.alpha + params.beta)) * params.z0.conjugate() * s
    return RealAffineMap(s, q, params.C)


def family_member(f: HarmonicMap, params: FamilyParams) -> HarmonicMap:
    """Member of the equal-Jacobian family of ``f`` for the given parameters.

    A constant carried by ``f`` is transported by the affine factor, so
    zero parameters return ``f`` itself even when ``f.c != 0``.
    """
    s = params.scale
    ea = cmath.exp(1j * params.alpha)
    eb = cmath.exp(-1j * params.beta)
    z0 = params.z0
    H = linear_combination([(ea * s, f.h), (ea * s * z0.conjugate(), f.g)])
    G = linear_combination([(eb * s, f.g), (eb * s * z0, f.h)])
    q = cmath.exp(1j * (params.alpha + params.beta)) * z0.conjugate() * s
    c = s * f.c + q * f.c.conjugate() + params.C
    return HarmonicMap(H, G, c)


def checked_family_member(f: HarmonicMap, params: FamilyParams, grid: GridSpec) -> HarmonicMap:
    F = family_member(f, params)
    if not is_sense_preserving(F, grid).passed:
        raise SenseReversed(f"family member for {params} is not sense-preserving")
    return F


def member_dilatation_closed_form(omega_val, params: FamilyParams):
    """``e^{-i(alpha+beta)} (omega + z0) / (1 + conj(z0) omega)``."""
    w = np.asarray(omega_val, dtype=complex)
    z0 = params.z0
    return member_dilatation_phase(params) * (w + z0) / (1 + z0.conjugate() * w)


def member_dilatation_phase(params: FamilyParams) -> complex:
    """``e^{i gamma}`` of the automorphism relating the dilatations; ``gamma = -(alpha+beta)``."""
    return cmath.exp(-1j * (params.alpha + params.beta))


def special_case_family(v, params: FamilyParams, N: int = DEFAULT_ORDER) -> HarmonicMap:
    """Family with Jacobian ``1 - |v|^2`` built from a primitive of ``v``."""
    vs = v if isinstance(v, PowerSeries) else series_from_expr(v, N)
    if np.abs(vs.coeffs[1:]).max(initial=0.0) <= 1e-14:
        raise PreconditionViolation("v must be non-constant")
    V = series_antiderivative(vs.with_order(N))
    zser = PowerSeries([0, 1], V.r_max)
    s = params.scale
    z0 = params.z0
    H = (zser + V * z0.conjugate()) * (cmath.exp(1j * params.alpha) * s)
    G = (zser * z0 + V) * (cmath.exp(-1j * params.beta) * s)
    return HarmonicMap(H, G, params.C)


def type1_params_from_map(f: HarmonicMap):
    """``(h, a)`` with ``f = h + a conj(h) + const`` for a constant-dilatation map.

    ``a = conj(omega)``. Taking ``f_zbar(0)/f_z(0)`` instead differs by the
    unimodular factor ``conj(h'(0))/h'(0)``, which the rotation ``beta`` absorbs.
    """
    w = Dilatation(f).eval_jet(0.0, 0).value
    return f.h, complex(np.conj(w))


def type1_family_member(h, p: Type1Params) -> HarmonicMap:
    """``e^{i alpha} h + e^{i beta} a conj(h) + b``."""
    hp = h.eval_jet(0.0, 1).coeffs[1]
    if abs(hp) <= EPS_DIV:
        raise DivisionNearZero(abs(hp), 0.0)
    H = linear_combination([(cmath.exp(1j * p.alpha), h)])
    G = linear_combination([(cmath.exp(-1j * p.beta) * p.a.conjugate(), h)])
    return HarmonicMap(H, G, p.b)


def verify_family(f: HarmonicMap, params_list, grid: GridSpec, tol: float = 1e-11,
                  fit_tol: float = 1e-9) -> CheckReport:
    """Check each family member against ``f`` on the grid.

    Per parameter set: relative Jacobian defect, the dilatation law, the two
    modulus identities for ``|H'|`` and ``|G'|``, the factorization through
    ``A o R``, and a three-point automorphism fit of the member's dilatation.
    """
    report = CheckReport("family")
    summary = grid.summary()
    if classify_type(f, grid) is not JacobianType.Type2:
        report.add(failed_check("family_precondition_type2",
                                "representative has a Type1 Jacobian; use the Type1 family"))
        return report
    pts = grid.points()
    Jf = jacobian(f, pts)
    omega = Dilatation(f)
    w = omega.eval_jet(pts, 0).value
    hp = f.h_prime(pts).value
    gp = f.g_prime(pts).value
    fz = f(pts)

    rows = {k: [] for k in ("jacobian", "dilatation", "eq_H", "eq_G", "factorization")}
    fit_res = []
    for params in params_list:
        F = family_member(f, params)
        s2 = 1 - abs(params.z0) ** 2
        Hp = F.h_prime(pts).value
        Gp = F.g_prime(pts).value
        rows["jacobian"].append(np.abs(jacobian(F, pts) - Jf) / (1 + Jf))
        rows["dilatation"].append(np.abs(Gp / Hp - member_dilatation_closed_form(w, params)))
        rows["eq_H"].append(np.abs(np.abs(Hp) ** 2 - np.abs(hp + params.z0.conjugate() * gp) ** 2 / s2))
        rows["eq_G"].append(np.abs(np.abs(Gp) - np.abs(gp + params.z0 * hp) / math.sqrt(s2)))
        composed = affine_map(params)(rotate_parts(f, params.alpha, params.beta)(pts))
        rows["factorization"].append(np.abs(F(pts) - composed) / (1 + np.abs(composed)))
        try:
            M = fit_disk_automorphism(Dilatation(F), omega, default_probes())
            fit_res.append(circle_residual(M))
        except Exception as exc:  # surfaced as a failed check below
            fit_res.append(float("inf"))
            report.extras.setdefault("fit_errors", []).append(f"{type(exc).__name__}: {exc}")

    names = {
        "jacobian": "family_equal_jacobian",
        "dilatation": "family_dilatation_law",
        "eq_H": "family_modulus_H",
        "eq_G": "family_modulus_G",
        "factorization": "family_affine_factorization",
    }
    n = len(params_list)
    tiled = np.tile(pts, n)
    for key, name in names.items():
        res = np.concatenate(rows[key]) if n else np.zeros(0)
        tol_k = 1e-12 if key == "factorization" else tol
        report.add(residual_check(name, tiled, res, tol_k, summary))
    worst = max(fit_res, default=0.0)
    report.add(Check("family_automorphism_fit", worst, fit_tol, None, summary))

    F0 = family_member(f, FamilyParams())
    item1 = np.abs(F0(pts) - fz)
    report.add(residual_check("family_contains_representative", pts, item1, 0.0, summary))
    return report


def verify_type1_family(h, params_list, grid: GridSpec, tol: float = 1e-12) -> CheckReport:
    """Jacobian law ``(1 - |a|^2) |h'|^2`` for Type1 family members."""
    report = CheckReport("type1_family")
    pts = grid.points()
    hp2 = np.abs(h.eval_jet(pts, 1).coeffs[1]) ** 2
    res = []
    for p in params_list:
        F = type1_family_member(h, p)
        res.append(np.abs(jacobian(F, pts) - (1 - abs(p.a) ** 2) * hp2) / (1 + hp2))
    n = len(params_list)
    report.add(residual_check("type1_jacobian_law", np.tile(pts, n),
                              np.concatenate(res) if n else np.zeros(0), tol, grid.summary()))
    return report
