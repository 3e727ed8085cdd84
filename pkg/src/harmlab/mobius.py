"""Fractional-linear maps, disk automorphisms and three-point fitting."""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMobius, FitMismatch, InvalidParameter, NotDiskAutomorphism, PoleHit
from .jets import EPS_DIV, Jet, jet_recip

EPS_DET = 1e-12
Z0_GUARD = 0.95


@dataclass(frozen=True)
class Mobius:
    """``w -> (a w + b) / (c w + d)`` with ``|ad - bc| > EPS_DET``."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for k in "abcd":
            object.__setattr__(self, k, complex(getattr(self, k)))
        if abs(self.det) <= EPS_DET:
            raise DegenerateMobius(f"|ad - bc| = {abs(self.det):.3e}")

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @property
    def det(self):
        return self.a * self.d - self.b * self.c

    def matrix(self):
        return np.array([[self.a, self.b], [self.c, self.d]])

    def normalized(self):
        """Same map scaled to determinant 1, with the sign fixed by ``d``
        (or ``c`` when ``d = 0``) having non-negative real part."""
        s = cmath.sqrt(self.det)
        m = self.matrix() / s
        lead = m[1, 1] if abs(m[1, 1]) > 1e-14 else m[1, 0]
        if lead.real < 0 or (lead.real == 0 and lead.imag < 0):
            m = -m
        return Mobius(*m.reshape(-1))

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        den = self.c * w + self.d
        if np.any(np.abs(den) <= EPS_DIV):
            raise PoleHit("evaluation at the pole of a Mobius map")
        out = (self.a * w + self.b) / den
        return out if out.ndim else complex(out)

    def apply_jet(self, j: Jet) -> Jet:
        return (j * self.a + self.b) * jet_recip(j * self.c + self.d)

    def __matmul__(self, other: "Mobius") -> "Mobius":
        return mobius_compose(self, other)

    def inverse(self) -> "Mobius":
        return mobius_inverse(self)


def mobius_apply(M: Mobius, w):
    return M(w)


def mobius_compose(M1: Mobius, M2: Mobius) -> Mobius:
    """``M1 o M2`` (``M2`` applied first)."""
    return Mobius(*(M1.matrix() @ M2.matrix()).reshape(-1))


def mobius_inverse(M: Mobius) -> Mobius:
    return Mobius(M.d, -M.b, -M.c, M.a)


def disk_automorphism(gamma: float, z0: complex) -> Mobius:
    """``T(w) = e^{i gamma} (w + z0) / (1 + conj(z0) w)``."""
    z0 = complex(z0)
    if abs(z0) >= 1:
        raise InvalidParameter(f"|z0| = {abs(z0)} must be < 1")
    if abs(z0) > Z0_GUARD:
        raise InvalidParameter(f"|z0| = {abs(z0)} exceeds the numerical guard {Z0_GUARD}")
    e = cmath.exp(1j * gamma)
    return Mobius(e, e * z0, z0.conjugate(), 1)


def automorphism_params(M: Mobius):
    """``(gamma, z0)`` with ``M = disk_automorphism(gamma, z0)`` up to scale.

    ``gamma`` is reduced to ``(-pi, pi]``.
    """
    if abs(M.d) <= EPS_DIV:
        raise NotDiskAutomorphism("d = 0: the origin is not mapped into the disk")
    e = M.a / M.d
    gamma = cmath.phase(e)
    return gamma, M.b / M.a


def circle_residual(M: Mobius, samples: int = 32) -> float:
    """``max | |M(e^{i theta})| - 1 |`` over uniformly spaced ``theta``."""
    w = np.exp(2j * np.pi * np.arange(samples) / samples)
    den = M.c * w + M.d
    if np.any(np.abs(den) <= EPS_DIV):
        return float("inf")
    return float(np.abs(np.abs((M.a * w + M.b) / den) - 1).max())


def is_disk_automorphism(M: Mobius, tol: float = 1e-9, samples: int = 32) -> bool:
    if abs(M.d) <= EPS_DIV:
        return False
    return circle_residual(M, samples) <= tol and abs(M.b / M.d) < 1


def _to_01inf(p1, p2, p3):
    """Matrix of the map sending ``p1, p2, p3`` to ``0, 1, inf``."""
    return np.array([[p2 - p3, -p1 * (p2 - p3)], [p2 - p1, -p3 * (p2 - p1)]])


def mobius_from_3_points(src, dst) -> Mobius:
    """Unique Mobius map with ``M(src[k]) = dst[k]`` (cross-ratio construction)."""
    src = [complex(s) for s in src]
    dst = [complex(d) for d in dst]
    if len(src) != 3 or len(dst) != 3:
        raise InvalidParameter("need exactly three source and three target points")
    for pts in (src, dst):
        for i in range(3):
            for j in range(i + 1, 3):
                if abs(pts[i] - pts[j]) <= EPS_DIV * max(1.0, abs(pts[i])):
                    raise DegenerateMobius("points must be pairwise distinct")
    A = _to_01inf(*src)
    B = _to_01inf(*dst)
    Binv = np.array([[B[1, 1], -B[0, 1]], [-B[1, 0], B[0, 0]]])
    m = Binv @ A
    m = m / cmath.sqrt(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])
    return Mobius(*m.reshape(-1)).normalized()


def default_probes(n: int = 8, radius: float = 0.4):
    return radius * np.exp(2j * np.pi * np.arange(n) / n)


def fit_residual(M: Mobius, omega_target, omega_rec, probes) -> float:
    probes = np.asarray(probes, dtype=complex)
    t = omega_target.eval_jet(probes, 0).value
    r = omega_rec.eval_jet(probes, 0).value
    return float(np.abs(M(r) - t).max()) if probes.size else 0.0


def fit_disk_automorphism(omega_target, omega_rec, probes=None, tol: float = 1e-6) -> Mobius:
    """Fit ``T`` with ``omega_target = T o omega_rec`` on probe points.

    The first three probes determine ``T``; the rest validate it.
    """
    probes = default_probes() if probes is None else np.asarray(probes, dtype=complex)
    if probes.size < 3:
        raise InvalidParameter("need at least three probes")
    t = omega_target.eval_jet(probes, 0).value
    r = omega_rec.eval_jet(probes, 0).value
    M = mobius_from_3_points(r[:3], t[:3])
    if probes.size > 3:
        res = float(np.abs(M(r[3:]) - t[3:]).max())
        if not res <= tol:
            raise FitMismatch(f"validation residual {res:.3e} exceeds {tol:.1e}")
    if not is_disk_automorphism(M):
        raise NotDiskAutomorphism(f"fitted map has circle residual {circle_residual(M):.3e}")
    return M


class MobiusImage:
    """Analytic function ``M o fn``."""

    def __init__(self, M: Mobius, fn):
        self.M = M
        self.fn = fn

    @property
    def radius(self):
        return getattr(self.fn, "radius", 1.0)

    def eval_jet(self, z, order):
        return self.M.apply_jet(self.fn.eval_jet(z, order)).check_finite()

    def __call__(self, z):
        return self.eval_jet(z, 0).value


def compose_mobius(M: Mobius, fn):
    """``M o fn`` as an expression tree when ``fn`` is one."""
    from .expr import Add, Const, Div, Expr, Mul

    if isinstance(fn, Expr):
        return Div(Add(Mul(Const(M.a), fn), Const(M.b)), Add(Mul(Const(M.c), fn), Const(M.d)))
    return MobiusImage(M, fn)
