"""Truncated Taylor jets with forward-mode arithmetic.

A :class:`Jet` of order ``k`` stores ``c_m = f^(m)(z) / m!`` for ``m = 0..k``.
Coefficients may carry a trailing batch shape so that a single jet describes
the same function at many points at once; ``coeffs.shape == (k + 1, *batch)``.
"""
from __future__ import annotations

import numpy as np

from . import kernels
from .errors import DivisionNearZero, NonFiniteValue, OrderMismatch

EPS_DIV = 1e-12


class Jet:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=complex)
        if c.ndim == 0:
            raise ValueError("a jet needs at least one coefficient")
        c.setflags(write=False)
        self.coeffs = c

    @classmethod
    def constant(cls, value, order, batch_shape=()):
        c = np.zeros((order + 1,) + tuple(batch_shape), dtype=complex)
        c[0] = value
        return cls(c)

    @classmethod
    def variable(cls, z, order):
        """Jet of the identity function at ``z``."""
        z = np.asarray(z, dtype=complex)
        c = np.zeros((order + 1,) + z.shape, dtype=complex)
        c[0] = z
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @property
    def order(self):
        return self.coeffs.shape[0] - 1

    @property
    def batch_shape(self):
        return self.coeffs.shape[1:]

    @property
    def value(self):
        return self.coeffs[0]

    def derivative_value(self, m):
        """``f^(m)(z)`` recovered from the stored Taylor coefficient."""
        return self.coeffs[m] * float(np.prod(np.arange(1, m + 1)))

    def derivative(self):
        """Jet of ``f'`` (order drops by one)."""
        if self.order == 0:
            raise OrderMismatch("cannot differentiate an order-0 jet")
        m = np.arange(1, self.order + 1, dtype=float).reshape((-1,) + (1,) * len(self.batch_shape))
        return Jet(self.coeffs[1:] * m)

    def truncate(self, order):
        if order > self.order:
            raise OrderMismatch(f"cannot raise jet order {self.order} to {order}")
        return Jet(self.coeffs[: order + 1])

    def check_finite(self):
        if not np.all(np.isfinite(self.coeffs)):
            raise NonFiniteValue("non-finite jet coefficient")
        return self

    def _flat(self):
        return self.coeffs.reshape(self.coeffs.shape[0], -1)

    def _wrap(self, flat):
        return Jet(flat.reshape(flat.shape[:1] + self.batch_shape))

    def _lift(self, other):
        if isinstance(other, Jet):
            return other
        return Jet.constant(other, self.order, ())

    def __add__(self, other):
        other = self._lift(other)
        _check_orders(self, other)
        fa, fb, shape = _common(self, other)
        return Jet((fa + fb).reshape((self.order + 1,) + shape))

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.coeffs)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            return jet_mul(self, other)
        return Jet(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return jet_mul(self, jet_recip(other))
        return Jet(self.coeffs / other)

    def __rtruediv__(self, other):
        return jet_recip(self) * other

    def __repr__(self):
        return f"Jet(order={self.order}, coeffs={self.coeffs.tolist()})"


def _check_orders(a, b):
    if a.order != b.order:
        raise OrderMismatch(f"jet orders differ: {a.order} vs {b.order}")


def _common(a, b):
    """Broadcast two jets' batch shapes; return flat ``(k + 1, n)`` arrays."""
    shape = np.broadcast_shapes(a.batch_shape, b.batch_shape)
    k = a.order + 1

    def flat(j):
        c = j.coeffs.reshape((k,) + (1,) * (len(shape) - len(j.batch_shape)) + j.batch_shape)
        return np.broadcast_to(c, (k,) + shape).reshape(k, -1)

    return flat(a), flat(b), shape


def jet_mul(a: Jet, b: Jet) -> Jet:
    """Truncated Cauchy product ``c_m = sum_j a_j b_(m-j)``."""
    _check_orders(a, b)
    fa, fb, shape = _common(a, b)
    out = kernels.mul(fa, fb)
    return Jet(out.reshape((a.order + 1,) + shape))


def _guard_c0(a: Jet, eps: float):
    mag = np.abs(a.coeffs[0])
    if mag.size and mag.min() <= eps:
        idx = int(np.argmin(mag))
        raise DivisionNearZero(float(mag.flat[idx]))


def jet_recip(a: Jet, eps: float = EPS_DIV) -> Jet:
    _guard_c0(a, eps)
    return a._wrap(kernels.recip(a._flat()))


def jet_exp(a: Jet) -> Jet:
    return a._wrap(kernels.exp(a._flat()))


def jet_log(a: Jet, eps: float = EPS_DIV) -> Jet:
    """Principal-branch logarithm."""
    _guard_c0(a, eps)
    return a._wrap(kernels.log(a._flat()))


def jet_powint(a: Jet, n: int) -> Jet:
    if n < 0:
        return jet_recip(jet_powint(a, -n))
    result = Jet.constant(1.0, a.order, a.batch_shape)
    base = a
    while n:
        if n & 1:
            result = jet_mul(result, base)
        n >>= 1
        if n:
            base = jet_mul(base, base)
    return result
