import numpy as np
import pytest

from paracalc import kernels


def _random_quad(rng):
    return rng.normal(size=4) + 1j * rng.normal(size=4)


def test_backend_is_selected():
    assert kernels.BACKEND in ("numba", "numpy")
    for name in ("pv_mul", "matvec4", "poly_eval", "scalar_poly_eval", "plane_wave_eval"):
        assert callable(getattr(kernels, name))


def test_numpy_and_numba_paths_agree():
    jit = kernels.jitted_impls()
    if jit is None:
        pytest.skip("numba not importable")
    rng = np.random.default_rng(0)
    for _ in range(25):
        a, b, x = _random_quad(rng), _random_quad(rng), _random_quad(rng)
        np.testing.assert_allclose(
            jit["pv_mul"](a, b), kernels.NUMPY_IMPLS["pv_mul"](a, b), rtol=1e-14
        )
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        np.testing.assert_allclose(
            jit["matvec4"](m, x), kernels.NUMPY_IMPLS["matvec4"](m, x), rtol=1e-14
        )
        exps = rng.integers(0, 4, size=(12, 4))
        coeffs = rng.normal(size=(12, 4)) + 1j * rng.normal(size=(12, 4))
        np.testing.assert_allclose(
            jit["poly_eval"](exps, coeffs, x),
            kernels.NUMPY_IMPLS["poly_eval"](exps, coeffs, x),
            rtol=0, atol=1e-11,
        )
        sc = rng.normal(size=12) + 1j * rng.normal(size=12)
        np.testing.assert_allclose(
            jit["scalar_poly_eval"](exps, sc, x),
            kernels.NUMPY_IMPLS["scalar_poly_eval"](exps, sc, x),
            rtol=0, atol=1e-11,
        )
        amp = _random_quad(rng)
        np.testing.assert_allclose(
            jit["plane_wave_eval"](a, amp, x),
            kernels.NUMPY_IMPLS["plane_wave_eval"](a, amp, x),
            rtol=1e-12,
        )


def test_empty_polynomial_evaluates_to_zero():
    exps = np.zeros((0, 4), np.int64)
    coeffs = np.zeros((0, 4), np.complex128)
    x = np.ones(4, np.complex128)
    np.testing.assert_array_equal(kernels.poly_eval(exps, coeffs, x), np.zeros(4))
    assert kernels.scalar_poly_eval(exps, np.zeros(0, np.complex128), x) == 0


def test_pv_mul_identity():
    rng = np.random.default_rng(1)
    e = np.array([1, 0, 0, 0], np.complex128)
    for _ in range(5):
        a = _random_quad(rng)
        np.testing.assert_array_equal(kernels.pv_mul(e, a), a)
        np.testing.assert_array_equal(kernels.pv_mul(a, e), a)
