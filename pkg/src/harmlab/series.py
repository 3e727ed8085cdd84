"""Power series centred at the origin, truncated at a fixed order."""
from __future__ import annotations

import numpy as np

from . import kernels
from .errors import RadiusExceeded
from .jets import Jet, _guard_c0

DEFAULT_ORDER = 64
DEFAULT_RMAX = 0.7


class PowerSeries:
    """``sum_{n<=N} a_n z^n``; evaluation is refused beyond ``r_max``."""

    __slots__ = ("coeffs", "r_max", "_primitive_of")

    def __init__(self, coeffs, r_max=DEFAULT_RMAX):
        self._primitive_of = None
        c = np.array(coeffs, dtype=complex).reshape(-1)
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        c.setflags(write=False)
        self.coeffs = c
        self.r_max = float(r_max)

    @property
    def trunc_order(self):
        return self.coeffs.size - 1

    @property
    def radius(self):
        return self.r_max

    def eval_jet(self, z, order):
        z = np.asarray(z, dtype=complex)
        if z.size and np.abs(z).max() > self.r_max * (1 + 1e-12):
            raise RadiusExceeded(f"|z| = {np.abs(z).max():.6g} exceeds series radius {self.r_max}")
        out = kernels.taylor_shift(self.coeffs, z.reshape(-1), order)
        return Jet(out.reshape((order + 1,) + z.shape))

    def __call__(self, z):
        return self.eval_jet(z, 0).value

    def with_order(self, n):
        c = np.zeros(n + 1, dtype=complex)
        m = min(n, self.trunc_order) + 1
        c[:m] = self.coeffs[:m]
        return PowerSeries(c, self.r_max)

    def _pair(self, other):
        n = max(self.trunc_order, other.trunc_order)
        return self.with_order(n).coeffs, other.with_order(n).coeffs, min(self.r_max, other.r_max)

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            c = self.coeffs.copy()
            c[0] += other
            return PowerSeries(c, self.r_max)
        a, b, r = self._pair(other)
        return PowerSeries(a + b, r)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(-self.coeffs, self.r_max)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries(self.coeffs * other, self.r_max)
        n = min(self.trunc_order, other.trunc_order)
        a = self.with_order(n).coeffs[:, None]
        b = other.with_order(n).coeffs[:, None]
        return PowerSeries(kernels.mul(a, b)[:, 0], min(self.r_max, other.r_max))

    __rmul__ = __mul__

    def reciprocal(self):
        _guard_c0(Jet(self.coeffs), 1e-12)
        return PowerSeries(kernels.recip(self.coeffs[:, None])[:, 0], self.r_max)

    def __truediv__(self, other):
        if not isinstance(other, PowerSeries):
            return PowerSeries(self.coeffs / other, self.r_max)
        return self * other.reciprocal()

    def __repr__(self):
        return f"PowerSeries(order={self.trunc_order}, r_max={self.r_max})"


def series_derivative(p: PowerSeries) -> PowerSeries:
    n = p.trunc_order
    if n == 0:
        return PowerSeries([0.0], p.r_max)
    if p._primitive_of is not None:
        # c/(m+1)*(m+1) need not round-trip in floating point
        return PowerSeries(p._primitive_of, p.r_max)
    return PowerSeries(p.coeffs[1:] * np.arange(1, n + 1), p.r_max)


def series_antiderivative(p: PowerSeries) -> PowerSeries:
    """Antiderivative vanishing at the origin; order grows by one."""
    c = np.zeros(p.trunc_order + 2, dtype=complex)
    c[1:] = p.coeffs / np.arange(1, p.trunc_order + 2)
    out = PowerSeries(c, p.r_max)
    out._primitive_of = p.coeffs
    return out


def series_from_expr(fn, N: int = DEFAULT_ORDER, r_max: float = DEFAULT_RMAX) -> PowerSeries:
    """Taylor coefficients of ``fn`` at 0 up to order ``N``.

    ``fn`` is anything with an ``eval_jet(z, order)`` method (an expression
    tree or another analytic function).
    """
    jet = fn.eval_jet(0.0, N).check_finite()
    return PowerSeries(jet.coeffs, r_max)


def tail_bound(p: PowerSeries, z) -> float:
    """Geometric tail estimate ``max|a_n| |z|^(N+1) / (1 - |z|)``."""
    r = float(np.abs(z))
    return float(np.abs(p.coeffs).max() * r ** (p.trunc_order + 1) / (1 - r))
