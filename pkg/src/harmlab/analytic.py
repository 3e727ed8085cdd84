"""Uniform evaluation of holomorphic functions and linear combinations of them.

An *analytic function* here is any object with ``eval_jet(z, order)`` and a
``radius`` attribute: expression trees (:mod:`harmlab.expr`), truncated power
series (:mod:`harmlab.series`), or the combinators defined below.
"""
from __future__ import annotations

import numpy as np

from .expr import Add, Const, Expr, Mul, Neg
from .jets import Jet
from .series import PowerSeries


def eval_jet(fn, z, order: int) -> Jet:
    """Jet of ``fn`` at ``z`` (scalar or array) up to ``order``."""
    return fn.eval_jet(z, order)


def derivative_jet(fn, z, order: int) -> Jet:
    """Jet of ``fn'`` at ``z``."""
    return fn.eval_jet(z, order + 1).derivative()


class LinearCombination:
    """``const + sum_k coef_k * fn_k`` for functions of mixed kinds."""

    def __init__(self, terms, const=0.0):
        self.terms = tuple((complex(c), f) for c, f in terms)
        self.const = complex(const)

    @property
    def radius(self):
        return min((f.radius for _, f in self.terms), default=1.0)

    def eval_jet(self, z, order):
        z = np.asarray(z, dtype=complex)
        out = Jet.constant(self.const, order, z.shape)
        for c, f in self.terms:
            out = out + f.eval_jet(z, order) * c
        return out

    def __call__(self, z):
        return self.eval_jet(z, 0).value


def linear_combination(terms, const=0.0):
    """Build ``const + sum coef * fn``, keeping the simplest representation.

    Expression trees stay expression trees and series stay series; mixed
    inputs fall back to :class:`LinearCombination`.
    """
    terms = [(complex(c), f) for c, f in terms if c != 0]
    const = complex(const)
    if all(isinstance(f, Expr) for _, f in terms):
        node = None
        for c, f in terms:
            if c == 1:
                t = f
            elif c == -1:
                t = Neg(f)
            else:
                t = Mul(Const(c), f)
            node = t if node is None else Add(node, t)
        if node is None:
            return Const(const)
        return node if const == 0 else Add(node, Const(const))
    if all(isinstance(f, PowerSeries) for _, f in terms):
        out = PowerSeries([const], min(f.r_max for _, f in terms))
        for c, f in terms:
            out = out + f * c
        return out
    return LinearCombination(terms, const)


def function_radius(fn) -> float:
    return float(getattr(fn, "radius", 1.0))
