"""Schwarzian derivatives, the coefficient Q, and dilatation reconstruction.

``Q = 2 P_zz - P_z^2`` with ``P = ln(-(ln J)_{z zbar})``. For a Jacobian of
Type2 with dilatation ``omega`` this equals ``2 S[omega]``; solving
``2 S[omega] = Q`` goes through the linear equation ``w'' + (Q/4) w = 0``,
whose solution ratios ``w1/w2`` all have Schwarzian ``Q/2``.
"""
from __future__ import annotations

import numpy as np

from .errors import DegenerateAtPoint, DivisionNearZero, InvalidParameter, NegativeInnerValue
from .harmonic import ScalarFieldSampler, Wirtinger, _check_stencil, log_sampler, wirtinger_fd
from .jets import EPS_DIV
from .mobius import Mobius, MobiusImage
from .series import DEFAULT_ORDER, PowerSeries, series_derivative, series_from_expr

# Below this, a sampled -(ln J)_{z zbar} is treated as a zero (point of Z).
INNER_ZERO = 1e-8


def schwarzian(fn, z):
    """``f'''/f' - 3/2 (f''/f')^2`` from an order-3 jet."""
    c = fn.eval_jet(z, 3).coeffs
    mag = np.abs(c[1])
    if mag.size and mag.min() <= EPS_DIV:
        raise DivisionNearZero(mag.min())
    r = c[2] / c[1]
    return 6 * c[3] / c[1] - 6 * r * r


def compute_Q_analytic(omega, z):
    """``2 P_zz - P_z^2`` evaluated term by term from jets of ``omega``.

    The conjugate terms cancel, so the result must agree with
    ``2 * schwarzian(omega, z)``; both are computed independently.
    """
    c = omega.eval_jet(z, 3).coeffs
    w, w1, w2, w3 = c[0], c[1], 2 * c[2], 6 * c[3]
    if np.abs(w1).min() <= EPS_DIV:
        raise DegenerateAtPoint("omega' vanishes (point of Z)")
    D = 1 - np.abs(w) ** 2
    wb = np.conj(w)
    Pz = w2 / w1 + 2 * wb * w1 / D
    Pzz = (w3 * w1 - w2 * w2) / w1**2 + 2 * wb * w2 / D + 2 * wb**2 * w1**2 / D**2
    return 2 * Pzz - Pz**2


def compute_Q_blackbox(J: ScalarFieldSampler, z, inner_step: float = 1e-3, outer_step: float = 1e-2):
    """Q from samples of ``J`` alone, by nested central differences.

    ``u = ln(-(ln J)_{z zbar})`` is formed with a five-point Laplacian at
    ``inner_step`` on every node of a nine-point outer stencil.
    """
    if outer_step < 5 * inner_step:
        raise InvalidParameter("outer_step must be at least 5 * inner_step")
    z = np.asarray(z, dtype=complex)
    _check_stencil(J, z, 2 * (inner_step + outer_step))
    lnJ = log_sampler(J)

    def u(zz):
        lam2 = -wirtinger_fd(lnJ, zz, inner_step, Wirtinger.Dzzbar).real
        if np.any(lam2 <= INNER_ZERO):
            raise NegativeInnerValue(
                f"-(ln J)_(z zbar) = {np.min(lam2):.3e} on the stencil (Type1 region or point of Z)")
        return np.log(lam2)

    U = ScalarFieldSampler(u, J.radius)
    dz = wirtinger_fd(U, z, outer_step, Wirtinger.Dz)
    dzz = wirtinger_fd(U, z, outer_step, Wirtinger.Dzz)
    return 2 * dzz - dz**2


def hyperbolic_density_blackbox(J: ScalarFieldSampler, z, inner_step=1e-3, outer_step=1e-2):
    """``(lambda, d_z ln lambda)`` at ``z`` where ``lambda^2 = -(ln J)_{z zbar}``."""
    lnJ = log_sampler(J)
    U = ScalarFieldSampler(lambda zz: np.log(-wirtinger_fd(lnJ, zz, inner_step).real), J.radius)
    lam = np.sqrt(-wirtinger_fd(lnJ, z, inner_step).real)
    return lam, 0.5 * wirtinger_fd(U, z, outer_step, Wirtinger.Dz)


def hyperbolic_density(omega, z):
    """``lambda = |omega'| / (1 - |omega|^2)`` and ``d_z ln lambda`` from jets."""
    c = omega.eval_jet(z, 2).coeffs
    D = 1 - np.abs(c[0]) ** 2
    lam = np.abs(c[1]) / D
    dlog = c[2] / c[1] + np.conj(c[0]) * c[1] / D
    return lam, dlog


def schwarzian_series(fn, N: int = DEFAULT_ORDER) -> PowerSeries:
    """Power series of ``2 S[fn]`` at the origin, order ``N``."""
    p = series_from_expr(fn, N + 3)
    d1 = series_derivative(p)
    d2 = series_derivative(d1)
    d3 = series_derivative(d2)
    inv = d1.with_order(N).reciprocal()
    r = d2.with_order(N) * inv
    return (d3.with_order(N) * inv - r * r * 1.5) * 2


def schwarzian_basis(Q: PowerSeries, N: int = DEFAULT_ORDER):
    """Solutions ``w1 = z + ...`` and ``w2 = 1 + ...`` of ``w'' + (Q/4) w = 0``."""
    q = Q.with_order(N).coeffs / 4
    if not np.all(np.isfinite(q)):
        raise InvalidParameter("Q must have finite coefficients (0 must not lie in Z)")
    w1 = np.zeros(N + 1, dtype=complex)
    w2 = np.zeros(N + 1, dtype=complex)
    w1[1] = 1.0
    w2[0] = 1.0
    for n in range(N - 1):
        k = np.arange(n + 1)
        w1[n + 2] = -np.dot(q[k], w1[n - k]) / ((n + 2) * (n + 1))
        w2[n + 2] = -np.dot(q[k], w2[n - k]) / ((n + 2) * (n + 1))
    return PowerSeries(w1, Q.r_max), PowerSeries(w2, Q.r_max)


def solve_schwarzian_series(Q: PowerSeries, N: int = DEFAULT_ORDER) -> PowerSeries:
    """A solution of ``2 S[omega] = Q`` normalized by ``omega(0) = 0``,
    ``omega'(0) = 1``, ``omega''(0) = 0``."""
    w1, w2 = schwarzian_basis(Q, N)
    return w1 / w2


def canonical_dilatation(omega_rec, lam0: float, dlog_lam0: complex):
    """The Mobius image of ``omega_rec`` fitting the hyperbolic density at 0.

    Returns ``M o omega_rec`` with value 0, derivative ``lam0 > 0`` and second
    derivative ``2 lam0 dlog_lam0`` at the origin; any dilatation with the
    same Jacobian is a disk automorphism of this one.
    """
    c = omega_rec.eval_jet(0.0, 2).coeffs
    if abs(c[0]) > 1e-12 or abs(c[1] - 1) > 1e-12:
        raise InvalidParameter("omega_rec must satisfy omega(0) = 0, omega'(0) = 1")
    # M(w) = a w / (1 + k w): second Taylor coefficient of M o rec is
    # a*rec_2 - a*k, which must equal lam0 * dlog_lam0.
    a = lam0
    k = (a * c[2] - lam0 * dlog_lam0) / a
    return MobiusImage(Mobius(a, 0, k, 1), omega_rec)


def random_mobius(rng, min_det: float = 0.1) -> Mobius:
    """Random determinant-one Mobius map with well-separated coefficients."""
    while True:
        m = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        if abs(det) >= min_det:
            return Mobius(*(m / np.sqrt(det)).reshape(-1))


def schwarzian_invariance_residuals(fn, M: Mobius, z, min_derivative: float = 0.1,
                                    pole_margin: float = 0.1):
    """``|S[M o fn] - S[fn]| / (1 + |S[fn]|)`` at the admissible points of ``z``.

    Points where ``|fn'|`` is small or ``M o fn`` is near a pole are dropped;
    returns ``(points, residuals)``.
    """
    z = np.asarray(z, dtype=complex).reshape(-1)
    c = fn.eval_jet(z, 1).coeffs
    keep = (np.abs(c[1]) >= min_derivative) & \
        (np.abs(M.c * c[0] + M.d) >= pole_margin * (abs(M.c) + abs(M.d)))
    z = z[keep]
    if z.size == 0:
        return z, np.zeros(0)
    s0 = schwarzian(fn, z)
    s1 = schwarzian(MobiusImage(M, fn), z)
    return z, np.abs(s1 - s0) / (1 + np.abs(s0))
