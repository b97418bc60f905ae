import numpy as np
import pytest
from hypothesis import given, strategies as st

from horokit import geometry as geo

models = st.sampled_from([geo.RankOneModel(2), geo.RankOneModel(3), geo.RankOneModel(4)])
seeds = st.integers(0, 2 ** 31 - 1)


@given(models, seeds, st.floats(-1.5, 1.5))
def test_iwasawa_round_trip(M, seed, y):
    rng = np.random.default_rng(seed)
    g = geo.random_group_element(M, rng, 2.0, 2.0)
    z = g.m @ geo.a_matrix(1j * y, M.n) @ M.x_o
    back = geo.reconstruct(geo.iwasawa_point(z), M)
    assert np.max(np.abs(back - z)) < 1e-10 * max(1, np.max(np.abs(z)))


@given(models, seeds)
def test_generators_preserve_form(M, seed):
    rng = np.random.default_rng(seed)
    g = geo.random_group_element(M, rng)
    assert g.check()
    assert np.allclose((g @ g.inv()).m, np.eye(M.dim), atol=1e-10)
    assert abs(geo.box(g.m @ M.x_o) - 1) < 1e-10


@given(models, seeds, st.floats(-1.5, 1.5))
def test_complex_convexity(M, seed, y):
    rng = np.random.default_rng(seed)
    g = geo.random_group_element(M, rng, 2.0, 2.0)
    w = geo.iwasawa_point(g.m @ geo.a_matrix(1j * y, M.n) @ M.x_o).w
    assert abs(w.imag) <= abs(y) + 1e-9


def test_base_points():
    M = geo.RankOneModel(2)
    assert geo.box(M.x_o) == 1
    assert geo.box(M.y_o) == 1
    assert geo.box(M.xi_o) == 0
    assert geo.minkowski_pair(M.xi_o, M.x_o) == 1
    assert geo.horosphere_contains(geo.HoroParam(M.xi_o), M.x_o)


def test_horosphere_incidence_two_ways(rng):
    M = geo.RankOneModel(3)
    g = geo.random_group_element(M, rng)
    xi = geo.horo_from_coset(g, 0.0, M)
    z = g.m @ geo.n_matrix([0.4, -0.2], 3) @ M.x_o
    assert geo.horosphere_contains(xi, z)
    assert geo.horosphere_contains_transposed(xi, z, M)


def test_horo_log_a_scaling():
    M = geo.RankOneModel(2)
    xi = geo.HoroParam(np.exp(0.3 + 0.9j) * M.xi_o)
    assert abs(geo.horo_log_a(xi) - (0.3 + 0.9j)) < 1e-14


@given(seeds)
def test_kernel_separation(seed):
    M = geo.RankOneModel(2)
    c = np.pi / 2 - 0.1
    Ys = np.array(geo.sample_Y(M, 50, seed))
    for xi in geo.sample_Xi(M, c, 2, seed + 1):
        pairs = geo.minkowski_pair(xi.zeta[None, :], Ys)
        assert np.min(np.abs(1 - pairs)) >= np.cos(c) - 1e-12


def test_cauchy_kernel_guard():
    M = geo.RankOneModel(2)
    with pytest.raises(geo.NearSingularKernel):
        geo.cauchy_kernel(M.xi_o, M.x_o)


def test_cauchy_kernel_on_group(rng):
    M = geo.RankOneModel(2)
    g = geo.random_group_element(M, rng)
    direct = geo.cauchy_kernel(M.xi_o, g.m @ M.y_o)
    assert abs(geo.cauchy_kernel_coset(g) - direct) < 1e-12


def test_errors():
    M = geo.RankOneModel(2)
    with pytest.raises(geo.GeometryError):
        geo.RankOneModel(1)
    with pytest.raises(geo.ShapeMismatch):
        geo.minkowski_pair(np.ones(3), np.ones(4))
    with pytest.raises(geo.ShapeMismatch):
        geo.n_matrix([1.0, 2.0], 2)
    with pytest.raises(geo.NonOrthogonalBlock):
        geo.k_matrix(np.array([[1.0, 1.0], [0.0, 1.0]]), 2)
    with pytest.raises(geo.GeometryError):
        geo.HoroParam(M.x_o)
    with pytest.raises(geo.BranchCutHit):
        geo.iwasawa_point(np.array([-1.0, 0.0, 0.0]))
    with pytest.raises(geo.GeometryError):
        geo.sample_Xi(M, 2.0, 1, 0)
    with pytest.raises(geo.OutsideDenseSet):
        geo.eval_f_lambda(1.0, M, a=1j * 1.6)


def test_f_lambda_at_rho_is_one():
    M = geo.RankOneModel(2)
    assert geo.eval_f_lambda(1.0, M, w=1, a=0.3 + 0.2j) == 1
