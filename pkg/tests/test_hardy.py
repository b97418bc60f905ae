import numpy as np
import pytest
from hypothesis import given, strategies as st

from horokit import hardy as hd
from horokit import spectra as sp
from horokit import transforms as tr
from horokit import tube_hardy as th

LAMBDA_RATIO = np.sqrt(np.pi / 2)


def test_norm_ordering(packets):
    for f in packets:
        assert hd.hardy_norm_spectral(f) > 2 * hd.restricted_norm(f)


def test_orbital_integral_at_identity(packet):
    O = hd.OrbitalIntegral(packet)
    assert abs(O(0.0)[0] - hd.restricted_norm(packet)) < 1e-14
    with pytest.raises(ValueError):
        O(1j * np.pi)


def test_orbital_integral_direct(packet):
    x = 0.4 * np.pi
    a = hd.orbital_integral(packet, 1j * x, route="direct", n_theta=64)
    b = hd.orbital_integral(packet, 1j * x).real[0]
    assert abs(a / b - 1) < 1e-6


def test_d_operator_at_extreme_point(packet):
    # at X = 2 Z_H the Weyl sum reproduces COSH
    assert abs(hd.OrbitalIntegral(packet).d_operator(1j * hd.EXTREME_X)[0] / hd.hardy_norm_spectral(packet) - 1) < 1e-13


def test_geometric_norm(packets):
    for f in packets:
        G = hd.hardy_norm_geometric(f)
        assert G.monotone
        assert G.sup <= G.spectral
        assert abs(G.extrapolated / G.spectral - 1) < 2e-2


def test_geometric_norm_narrow_packet():
    f = tr.WavePacket(sp.gaussian_packet(0.3))
    G = hd.hardy_norm_geometric(f, (0.2, 0.1, 0.05))
    assert abs(G.values[-1] / G.spectral - 1) < 2e-2


def test_extrapolation_exact_on_quadratics():
    G = hd.GeometricNorm((0.2, 0.1, 0.05), tuple(3 - e - 2 * e ** 2 for e in (0.2, 0.1, 0.05)), 3.0)
    assert abs(G.extrapolated - 3) < 1e-14


@given(st.floats(0, 0.9), st.floats(0, 0.9))
def test_kernel_hermitian(s, t):
    z, w = hd.d_point(s * np.pi / 2), hd.d_point(t * np.pi / 2)
    assert abs(hd.reproducing_kernel(z, w) - np.conj(hd.reproducing_kernel(w, z))) < 1e-12


def test_gram_positive():
    G = hd.gram_matrix([hd.d_point(s * np.pi / 2) for s in (0.0, 0.3, 0.6, 0.8)])
    assert np.min(np.linalg.eigvalsh(G)) > 0


def test_kernel_outside_domain():
    with pytest.raises(ValueError):
        hd.kernel_rule([np.cosh(1j * np.pi / 2 + 0.1)])


def test_reproducing_via_X(packet):
    w = hd.d_point(0.5 * np.pi / 2)
    KX = hd.KernelOnX(w)
    assert abs(KX.inner(packet) - tr.eval_packet(packet, w).value) < 1e-8
    ell = np.array([0.5, 2.0, 4.0])
    assert np.allclose(KX.profile(ell), hd.kernel_profile(w)(ell), atol=1e-8)


def test_abel_geometric(packet):
    s = np.array([0.0, 0.7, 2.5])
    assert np.allclose(hd.abel_geometric(packet, s), tr.abel_spectral(packet, s), atol=1e-10)


def test_lambda_norm_ratio(packets):
    for f in packets:
        r = th.tube_hardy_norm(hd.lambda_map(f).tube_function) / hd.hardy_norm_spectral(f)
        assert abs(r - LAMBDA_RATIO) < 1e-10


def test_lambda_two_paths(packets):
    ell = np.linspace(0.1, 6, 5)
    f = packets[2]
    a, b = hd.lambda_path_abel(f, ell), hd.lambda_path_spherical(f, ell)
    assert np.max(np.abs(a - b)) < 1e-8 * np.max(np.abs(b))
    assert np.allclose(b, hd.lambda_map(f).spectral(ell), atol=1e-10)


def test_lambda_image_is_tau_invariant(packet):
    L = hd.lambda_map(packet)
    assert th.tau_defect(L.tube_function, L.multiplier) < 1e-12


def test_tau_multiplier_limit():
    m = hd.tau_multiplier()
    assert m(1, np.array([[0.0]]))[0] == -1
    assert abs(m(1, np.array([[1e-6]]))[0] + 1) < 1e-5


def test_lambda_evaluation_in_tube(packet):
    L = hd.lambda_map(packet)
    z = np.array([0.2, 0.3 + 0.5j])
    lam, w = L.tube_function.nodes
    ref = np.exp(1j * np.outer(z, lam[:, 0])) @ (w * L.tube_profile(lam))
    assert np.allclose(L(z), ref, rtol=1e-12)
