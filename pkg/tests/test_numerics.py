import numpy as np
import pytest
from hypothesis import given, strategies as st

from horokit.numerics import (
    DivergentAtOne, NonConvergence, PoleAtNonpositiveInteger, QuadratureSpec,
    cbeta, cgamma, cloggamma, composite_gl, gauss_2f1, integrate, quad1d,
)

# reference values from mpmath at 30 digits
GAMMA_ORACLE = [
    (0.3 + 0.4j, 0.9115615278045859 - 1.3671933575854187j),
    (-2.7 + 1.1j, -0.044545929693393146 - 0.03580079366913618j),
    (5.5 - 3.0j, 6.2430185174211035 + 21.474963762080638j),
    (12.5 + 0.5j, 43634640.22385522 + 128204383.90881816j),
    (0.5, 1.772453850905516),
]

HYP2F1_ORACLE = [
    ((0.25 + 0.5j, 0.25 - 0.5j, 1.0, 0.5), 1.2077656711609384),
    ((1.5, -0.3, 2.2, -0.9), 1.151605208725985),
    ((0.3 + 1j, 0.7, 1.9 - 0.4j, 0.95 + 0.1j), 0.7292824984458437 + 0.34161186385739917j),
    ((0.25, 0.75, 1.3, -1.0), 0.8989045168680933),
]

re = st.floats(-6, 6)
im = st.floats(-6, 6)


@pytest.mark.parametrize("z, ref", GAMMA_ORACLE)
def test_gamma_oracle(z, ref):
    assert abs(complex(cgamma(z)) / ref - 1) < 1e-13


@given(re, im)
def test_gamma_recurrence(x, y):
    z = complex(x, y)
    if abs(z - round(x)) < 1e-3 and round(x) <= 0:
        return
    assert abs(cgamma(z + 1) / (z * cgamma(z)) - 1) < 1e-11


@given(st.floats(0.05, 0.95), st.floats(-4, 4))
def test_gamma_reflection(x, y):
    z = complex(x, y)
    assert abs(cgamma(z) * cgamma(1 - z) * np.sin(np.pi * z) / np.pi - 1) < 1e-11


def test_gamma_conjugate_symmetry():
    z = np.array([0.3 + 2j, 4.1 - 0.7j, -1.5 + 0.2j])
    assert np.allclose(cgamma(z.conj()), cgamma(z).conj(), rtol=1e-14)


def test_gamma_poles():
    with pytest.raises(PoleAtNonpositiveInteger):
        cgamma(-3.0)


def test_loggamma_large_argument():
    # Stirling: log Gamma(z) ~ (z - 1/2) log z - z + log(2 pi)/2
    z = 200 + 30j
    stirling = (z - 0.5) * np.log(z) - z + 0.5 * np.log(2 * np.pi) + 1 / (12 * z)
    assert abs(cloggamma(z) - stirling) < 1e-8


@given(st.floats(0.1, 5), st.floats(0.1, 5))
def test_beta_symmetric(a, b):
    assert abs(cbeta(a, b) - cbeta(b, a)) <= 1e-13 * abs(cbeta(a, b))


def test_beta_three_quarters():
    assert abs(cbeta(0.75, 0.75) - 1.6944261695879582) < 1e-13


@pytest.mark.parametrize("args, ref", HYP2F1_ORACLE)
def test_2f1_oracle(args, ref):
    assert abs(gauss_2f1(*args) - ref) < 1e-12 * abs(ref)


@given(st.floats(-0.9, 0.9), st.floats(0.1, 2), st.floats(0.1, 2))
def test_2f1_methods_agree(x, a, b):
    c = a + b + 0.37
    s = gauss_2f1(a, b, c, x, method="series")
    methods = ["auto"] + (["pfaff"] if x < 0.4 else []) + (["one_minus_x"] if x > 0.1 else [])
    for m in methods:
        assert abs(gauss_2f1(a, b, c, x, method=m) - s) < 1e-10 * max(1, abs(s))


def test_2f1_gauss_value():
    a, b, c = 0.3, 0.2, 1.5
    ref = cgamma(c) * cgamma(c - a - b) / (cgamma(c - a) * cgamma(c - b))
    assert abs(gauss_2f1(a, b, c, 1.0) - ref) < 1e-14


def test_2f1_errors():
    with pytest.raises(PoleAtNonpositiveInteger):
        gauss_2f1(1, 1, -2, 0.5)
    with pytest.raises(DivergentAtOne):
        gauss_2f1(1, 1, 1.5, 1.0)
    with pytest.raises(ValueError):
        gauss_2f1(1, 1, 2, 1.5)


def test_quad_gaussian_and_tails():
    r = quad1d(lambda x: np.exp(-x ** 2), -np.inf, np.inf, QuadratureSpec(rel_tol=1e-13))
    assert abs(r.value - np.sqrt(np.pi)) < 1e-12


def test_quad_breakpoints():
    r = quad1d(lambda x: np.abs(x - 0.3), 0, 1, points=(0.3,))
    assert abs(r.value - (0.3 ** 2 + 0.7 ** 2) / 2) < 1e-14


def test_quad_budget():
    with pytest.raises(NonConvergence):
        quad1d(lambda x: np.sin(1 / x), 1e-9, 1, QuadratureSpec(max_subdivisions=10))


def test_integrate_2d():
    spec = QuadratureSpec(domain=((0, 1), (0, 2)), rel_tol=1e-10)
    r = integrate(lambda x, y: x * y ** 2, spec)
    assert abs(r.value - 0.5 * 8 / 3) < 1e-10


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=0)


@given(st.integers(1, 39))
def test_composite_gl_exact_on_polynomials(k):
    x, w = composite_gl(np.linspace(-1, 2, 4), 20)
    assert abs(np.sum(w * x ** k) - (2 ** (k + 1) - (-1) ** (k + 1)) / (k + 1)) < 1e-10 * 2 ** k
