import numpy as np
import pytest
from hypothesis import given, strategies as st

from horokit import geometry as geo
from horokit import spectra as sp
from horokit import transforms as tr

M = geo.RankOneModel(2)


def test_packet_matches_direct_synthesis(packet):
    u = np.array([1.0, 0.3 + 0.2j, 4.0])
    ell, w = packet.nodes
    ref = sp.spherical_fn(ell, u) @ (w * packet.profile(ell) * sp.plancherel_density(ell))
    assert np.allclose(packet.at_u(u), ref, rtol=1e-14)
    r = tr.eval_packet(packet, M.y_o)
    assert r.error_estimate < 1e-8 * abs(r.value)


@pytest.mark.parametrize("s, theta", [(0.0, 0.0), (0.3, 0.0), (-0.6, 1.1)])
def test_radon_real_vs_spectral(packet, s, theta):
    zeta = np.exp(s) * np.array([1.0, np.sin(theta), np.cos(theta)])
    xi = geo.HoroParam(zeta)
    r = tr.radon_real(packet, xi)
    assert abs(r.value - tr.radon_spectral(packet, xi)) < 1e-9 * abs(r.value)


@pytest.mark.parametrize("z", [0.4j, 0.3 + 0.9j, -0.5 - 1.2j])
def test_radon_holomorphic_vs_spectral(packet, z):
    xi = geo.HoroParam(np.exp(z) * M.xi_o)
    r = tr.radon_holomorphic(packet, xi)
    assert abs(r.value - tr.radon_spectral(packet, xi)) < 1e-9 * abs(r.value)


@pytest.mark.parametrize("z", [0.0, 0.8, 0.3 + 0.4j, -1.0 - 1.3j])
def test_abel_vs_spectral(packets, z):
    f = packets[1]
    r = tr.abel(f, z)
    assert abs(r.value - tr.abel_spectral(f, z)) < 1e-9 * abs(r.value)


def test_abel_tube_guard(packet):
    with pytest.raises(geo.GeometryError):
        tr.abel(packet, 1.6j)


@given(st.floats(0, 3), st.floats(-8, 8), st.floats(-4, 4))
def test_dual_transform_of_horosphere_exponentials(ell, t, v):
    r = tr.dual_transform(tr.cosh_power_phi(ell))
    ref = np.exp(-0.25j * np.pi * (1 + 1j * ell)) * sp.cosh_power_integral(ell)
    assert abs(r.value - ref) < 1e-9 * abs(ref)


def test_inversion(packets):
    for f in packets:
        r = tr.invert(f)
        assert abs(r.kappa - 0.25) < 1e-12
        assert r.err_a < 1e-10 and r.err_b < 1e-10


@given(st.floats(-6, 6), st.floats(-5, 5), st.booleans())
def test_y_points_on_quadric(t, v, weyl):
    y = tr.y_points(np.array([t]), np.array([v]), weyl, M)[0]
    ref = geo.a_matrix(t, 2) @ geo.n_matrix([v], 2) @ (M.weyl.m @ M.y_o if weyl else M.y_o)
    assert abs(geo.box(y) - 1) < 1e-9 * max(1, np.max(np.abs(y)) ** 2)
    assert np.max(np.abs(y - ref)) < 1e-9 * max(1, np.max(np.abs(y)))


@given(st.integers(0, 10 ** 6), st.floats(-3, 3))
def test_kernel_poles_are_poles(seed, t):
    xi = geo.sample_Xi(M, 1.2, 1, seed)[0]
    zeta = xi.zeta
    A = zeta[0] * np.sinh(t) - zeta[2] * np.cosh(t)
    B = 0.5 * (zeta[2] - zeta[0]) * np.exp(t)
    for c, weyl in ((A + 1j, False), (A - 1j, True)):
        for v in np.roots([B, zeta[1], c]):
            # continue y_points to the complex root
            q = 0.5 * v ** 2 * np.exp(t)
            y = (-1 if weyl else 1) * 1j * np.array([np.sinh(t) - q, -v, np.cosh(t) - q])
            assert abs(1 - geo.minkowski_pair(zeta, y)) < 1e-8 * max(1, abs(v) ** 2 * np.exp(t))


def test_panel_table_accuracy():
    T = tr.PanelTable(lambda x: np.exp(1j * x) / (1 + x ** 2), -5, 5)
    x = np.linspace(-5, 5, 1001)
    assert np.max(np.abs(T(x) - np.exp(1j * x) / (1 + x ** 2))) < 1e-13
    assert T(np.array([6.0]))[0] == 0


def test_boundary_and_radial_tables(packet):
    B = tr.BoundaryTable(packet)
    eta = np.array([-50.0, -1.3, 0.0, 0.7, 12.0])
    assert np.allclose(B(eta), packet.at_u(1j * eta), atol=1e-12)
    R = tr.RadialTable(packet, r_max=10)
    u = np.cosh(np.array([0.0, 0.4, 3.3]))
    assert np.allclose(R.at_u(u), packet.at_u(u), atol=1e-12)


def test_cauchy_transform_at_base_point():
    f = tr.WavePacket(sp.gaussian_packet(1.0))
    xi = geo.HoroParam(M.xi_o)
    r = tr.cauchy_transform(f, xi, order=6)
    ref = 2 * np.pi * tr.radon_spectral(f, xi)
    assert abs(r.value - ref) < 1e-6 * abs(ref)


def test_coset_of_round_trip():
    zeta = np.exp(0.2 + 0.7j) * np.array([1.0, np.sin(0.9), np.cos(0.9)])
    g, t = tr.coset_of(geo.HoroParam(zeta), M)
    back = geo.horo_from_coset(g, t, M).zeta
    assert np.allclose(back, zeta, atol=1e-12)


def test_transform_result_validation():
    with pytest.raises(ValueError):
        tr.TransformResult(1.0, -1.0, "x")
