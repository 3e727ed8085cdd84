"""Both kernel backends against brute-force references and each other."""
import math

import numpy as np
import pytest

from harmlab import _pykernels, kernels


def random_jets(rng, k, n):
    return rng.uniform(-1, 1, (k, n)) + 1j * rng.uniform(-1, 1, (k, n))


def test_mul_matches_polynomial_product(backend, rng):
    a = random_jets(rng, 6, 5)
    b = random_jets(rng, 6, 5)
    out = kernels.mul(a, b)
    for p in range(5):
        full = np.convolve(a[:, p], b[:, p])[:6]
        np.testing.assert_allclose(out[:, p], full, atol=1e-15)


def test_recip_inverts(backend, rng):
    a = random_jets(rng, 8, 4)
    a[0] += 3.0
    one = kernels.mul(a, kernels.recip(a))
    expected = np.zeros_like(a)
    expected[0] = 1
    np.testing.assert_allclose(one, expected, atol=1e-14)


def test_exp_log_against_scalar_series(backend):
    # exp(c0 + u) = e^{c0} sum u^m/m!
    a = np.zeros((5, 1), dtype=complex)
    a[0] = 0.2 + 0.1j
    a[1] = 1
    e = kernels.exp(a)[:, 0]
    ref = np.exp(0.2 + 0.1j) / np.array([math.factorial(m) for m in range(5)])
    np.testing.assert_allclose(e, ref, rtol=1e-15)
    # log(1 + u) = sum (-1)^{m+1} u^m / m
    b = np.zeros((6, 1), dtype=complex)
    b[0] = b[1] = 1
    lg = kernels.log(b)[:, 0]
    ref = [0] + [(-1) ** (m + 1) / m for m in range(1, 6)]
    np.testing.assert_allclose(lg, ref, atol=1e-15)


def test_log_principal_branch(backend):
    a = np.array([[-1 + 1e-300j, -1 - 1e-300j]])
    np.testing.assert_allclose(kernels.log(a)[0].imag, [np.pi, -np.pi])


def test_taylor_shift_matches_numpy_polynomial(backend, rng):
    coeffs = rng.normal(size=12) + 1j * rng.normal(size=12)
    z = np.array([0.3 - 0.2j, -0.5, 0.1j])
    out = kernels.taylor_shift(coeffs, z, 4)
    p = np.polynomial.Polynomial(coeffs)
    for m in range(5):
        ref = p.deriv(m)(z) / math.factorial(m) if m else p(z)
        np.testing.assert_allclose(out[m], ref, rtol=1e-12)


def test_taylor_shift_order_beyond_degree(backend):
    out = kernels.taylor_shift(np.array([1.0, 2.0], dtype=complex), np.array([0.5 + 0j]), 3)
    np.testing.assert_allclose(out[:, 0], [2.0, 2.0, 0.0, 0.0])


@pytest.mark.skipif("cython" not in kernels.BACKENDS, reason="compiled kernels not built")
@pytest.mark.parametrize("name", ["mul", "recip", "exp", "log"])
def test_backends_agree(name, rng):
    from harmlab import _ckernels

    a = random_jets(rng, 10, 33)
    a[0] += 2
    b = random_jets(rng, 10, 33)
    args = (a, b) if name == "mul" else (a,)
    np.testing.assert_allclose(getattr(_ckernels, name)(*args), getattr(_pykernels, name)(*args),
                               rtol=1e-13, atol=1e-14)


def test_set_backend_rejects_unknown():
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")


def test_env_var_forces_fallback():
    import os
    import subprocess
    import sys

    code = "import harmlab.kernels as k; print(k.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                         env={**os.environ, "HARMLAB_PURE_PYTHON": "1"})
    assert out.stdout.strip() == "python"
