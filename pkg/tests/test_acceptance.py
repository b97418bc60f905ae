"""The twelve acceptance criteria, each at its stated tolerance and time budget.

Every test records one PASS/FAIL line (printed in the terminal summary).
"""
import time

import numpy as np
import pytest

from conftest import CRITERIA
from horokit import geometry as geo
from horokit import hardy as hd
from horokit import spectra as sp
from horokit import transforms as tr
from horokit import tube_hardy as th
from horokit.numerics import QuadratureSpec, cgamma, quad1d


@pytest.fixture
def clock():
    return time.perf_counter()


def verdict(n, title, ok, detail, t0, budget):
    elapsed = time.perf_counter() - t0
    ok = bool(ok) and elapsed <= budget
    line = f"{'PASS' if ok else 'FAIL'} criterion {n:2d}: {title} | {detail} | {elapsed:.1f}s of {budget}s"
    CRITERIA[n] = line
    print(line)
    assert ok, line


def rel(a, b):
    return abs(complex(a) - complex(b)) / abs(complex(b))


def test_c01_special_functions(clock):
    rng = np.random.default_rng(1)
    z = rng.uniform(-8, 8, 400) + 1j * rng.uniform(-8, 8, 400)
    rec = np.max(np.abs(cgamma(z + 1) / (z * cgamma(z)) - 1))
    zr = rng.uniform(0.02, 0.98, 200) + 1j * rng.uniform(-5, 5, 200)
    refl = np.max(np.abs(cgamma(zr) * cgamma(1 - zr) * np.sin(np.pi * zr) / np.pi - 1))
    ell = np.linspace(0, 30, 3001)[1:]
    planch = np.max(np.abs(sp.plancherel_density_gamma(ell) / sp.plancherel_density(ell) - 1))
    verdict(1, "Gamma recurrence/reflection, Plancherel density",
            rec <= 1e-11 and refl <= 1e-11 and planch <= 1e-10,
            f"recurrence {rec:.1e}, reflection {refl:.1e}, plancherel {planch:.1e}", clock, 1)


def test_c02_cosh_power_integral(clock):
    q = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-15, tail_cutoff=40.0, decay_rate=1.0)
    errs = []
    for lam in (0, 1, 2, 5, 10):
        r = quad1d(lambda t: np.cosh(2 * t) ** (-(1 + 1j * lam) / 2), -np.inf, np.inf, q)
        errs.append(rel(r.value, sp.cosh_power_integral(lam)))
    verdict(2, "int (cosh 2t)^-(1+i lam)/2 dt = B(1/2,(1+i lam)/4)/2", max(errs) <= 1e-8,
            "rel errors " + ", ".join(f"{e:.1e}" for e in errs), clock, 5)


def test_c03_phi_at_y_o_and_interior(clock):
    ell = np.linspace(0, 20, 41)
    e1 = np.max(np.abs(sp.phi_y_o_beta(ell) / sp.phi_y_o_gauss(ell) - 1))
    e2 = 0.0
    for x in np.linspace(0.1, 1.4, 8):
        l = np.linspace(0, 8, 17)
        a = sp.spherical_fn(l, [np.cos(2 * x)])[0]
        b = sp.spherical_fn_k_integral(l, x, n_theta=512)
        e2 = max(e2, float(np.max(np.abs(a - b) / np.abs(b))))
    verdict(3, "phi(y_o) Beta form vs Gauss 2F1(1); 2F1 route vs K-integral inside",
            e1 <= 1e-8 and e2 <= 1e-6,
            f"phi(y_o) {e1:.1e}, interior {e2:.1e}, phi_0(y_o) = {sp.phi_y_o_beta(0.0).real:.13f}", clock, 10)


def test_c04_derivation_chain(clock):
    ell = np.linspace(0.25, 16, 400)
    e1 = np.max(np.abs(sp.c1_coth(ell) / sp.c1_gamma_route(ell) - 1))
    k = sp.kappa_ratio(ell)
    spread = np.max(np.abs(k - k[0]))
    verdict(4, "c1 coth form vs Gamma route; kappa = C2/(g C1) constant", e1 <= 1e-9 and spread <= 1e-9,
            f"c1 {e1:.1e}, kappa spread {spread:.1e}, kappa = {k[0].real:.15f}{k[0].imag:+.1e}i", clock, 5)


def test_c05_cauchy_equals_radon(clock, packets):
    M = geo.RankOneModel(2)
    xis = [geo.HoroParam(np.exp(z) * M.xi_o) for z in (0.0, 0.5j, 0.3 + 0.9j)]
    xis += geo.sample_Xi(M, 1.2, 1, 100)
    errs = []
    for f in packets:
        table = tr.BoundaryTable(f)
        for xi in xis:
            c = tr.cauchy_transform(f, xi, table).value
            errs.append(rel(c, 2 * np.pi * tr.radon_spectral(f, xi)))
    verdict(5, "C(f) = 2 pi R(f) on Xi_+ (3 packets x 4 points incl. xi_o)", max(errs) <= 5e-3,
            f"max rel {max(errs):.1e} over {len(errs)} pairs", clock, 600)


def test_c06_inversion(clock, packets):
    errs = []
    for f in packets:
        r = tr.invert(f)
        errs += [r.err_a, r.err_b]
    verdict(6, "(L R f)^vee(y_o) = f(y_o), spectral and H-orbit routes", max(errs) <= 1e-3,
            f"max rel {max(errs):.1e}", clock, 300)


def test_c07_gutzmer(clock, packets):
    spread = []
    for f in packets:
        O = hd.OrbitalIntegral(f)
        r = [hd.orbital_integral_direct(f, s * np.pi) / O(1j * s * np.pi)[0].real for s in (0.2, 0.5, 0.9)]
        spread.append(max(r) / min(r) - 1)
    verdict(7, "direct G-orbit / spectral orbital integral constant at 3 interior points",
            max(spread) <= 1e-3, "variation " + ", ".join(f"{s:.1e}" for s in spread), clock, 600)


def test_c08_geometric_norm(clock, packets):
    eps = (0.2, 0.1, 0.05)
    narrow = hd.hardy_norm_geometric(tr.WavePacket(sp.gaussian_packet(0.3)), eps)
    fam = [hd.hardy_norm_geometric(f, eps) for f in packets]
    ok_narrow = narrow.monotone and narrow.sup <= narrow.spectral and rel(narrow.values[-1], narrow.spectral) <= 2e-2
    ok_fam = all(G.monotone and G.sup <= G.spectral and rel(G.extrapolated, G.spectral) <= 2e-2 for G in fam)
    detail = (f"low-frequency packet eps=0.05 ratio {narrow.values[-1] / narrow.spectral:.4f}; family eps=0.05 ratios "
              + ", ".join(f"{G.values[-1] / G.spectral:.3f}" for G in fam)
              + ", extrapolated " + ", ".join(f"{G.extrapolated / G.spectral:.4f}" for G in fam))
    verdict(8, "grid-sup D O/|W_H| vs ||f||_H^2: monotone, below, within 2%", ok_narrow and ok_fam, detail,
            clock, 120)


def test_c09_reproducing_kernel(clock, packets):
    errs = []
    for s in (0.1, 0.4, 0.7):
        w = hd.d_point(s * np.pi / 2)
        KX = hd.KernelOnX(w)
        errs += [rel(KX.inner(f), tr.eval_packet(f, w).value) for f in packets]
    G = hd.gram_matrix([hd.d_point(s * np.pi / 2) for s in (0.0, 0.3, 0.6)])
    lo = float(np.min(np.linalg.eigvalsh(G)))
    verdict(9, "<f, K_w>_H = f(w) at 3 interior points; Gram positivity", max(errs) <= 1e-4 and lo > 0,
            f"max rel {max(errs):.1e}, min eigenvalue {lo:.2e}", clock, 120)


def test_c10_lambda_map(clock, packets):
    r = [th.tube_hardy_norm(hd.lambda_map(f).tube_function) / hd.hardy_norm_spectral(f) for f in packets]
    var = max(r) / min(r) - 1
    ell = np.linspace(0.1, 8.0, 9)
    two = max(float(np.max(np.abs(hd.lambda_path_abel(f, ell) - hd.lambda_path_spherical(f, ell))
                        / np.max(np.abs(hd.lambda_path_spherical(f, ell))))) for f in packets)
    verdict(10, "Lambda norm ratio constant; Abel path = spherical path", var <= 1e-3 and two <= 1e-8,
            f"ratio {r[0]:.10f} variation {var:.1e}, two-path {two:.1e}", clock, 60)


def test_c11_tube(clock):
    M = th.line_model(1.0)
    m = th.trivial_multiplier(M)
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(25):
        z = rng.uniform(-2, 2) + 1j * rng.uniform(-0.9, 0.9)
        w = rng.uniform(-2, 2) + 1j * rng.uniform(-0.9, 0.9)
        worst = max(worst, rel(th.tube_kernel(z, w, m), th.line_kernel_closed_form(z, w)))
    F = th.project_tau_invariant(th.tube_function(lambda l: np.exp(-l[..., 0] ** 2 / 2) * (1 + 0.3 * l[..., 0]), M), m)
    rep = max(rel(th.inner_product(F, th.kernel_profile(w, m)), F(np.array([w]))) for w in (0.4j, 0.5 - 0.7j))
    lam = np.linspace(-6, 6, 241)
    conv = max(float(np.max(th.tube_cosh(y, lam, M) - th.tube_cosh(M.y_o, lam, M)))
               for y in np.linspace(-0.999, 0.999, 81))
    verdict(11, "line kernel closed form; tube reproducing; COSH_y <= COSH",
            worst <= 1e-8 and rep <= 1e-6 and conv <= 0,
            f"closed form {worst:.1e}, reproducing {rep:.1e}, max COSH_y - COSH {conv:.1e}", clock, 60)


def test_c12_geometry(clock):
    M = geo.RankOneModel(2)
    rng = np.random.default_rng(12)
    rt, cv = 0.0, -np.inf
    for _ in range(1000):
        g = geo.random_group_element(M, rng, 2.0, 2.0)
        y = rng.uniform(-1, 1) * 1.5
        z = g.m @ geo.a_matrix(1j * y, 2) @ M.x_o
        f = geo.iwasawa_point(z)
        rt = max(rt, float(np.max(np.abs(geo.reconstruct(f, M) - z)) / max(1, np.max(np.abs(z)))))
        cv = max(cv, abs(f.w.imag) - abs(y))
    c = np.pi / 2 - 0.1
    Ys = np.array(geo.sample_Y(M, 1000, 13))
    pairs = np.concatenate([geo.minkowski_pair(x.zeta[None, :], Ys) for x in geo.sample_Xi(M, c, 10, 14)])
    sep = float(np.min(np.abs(1 - pairs)))
    verdict(12, "Iwasawa round trip; complex convexity; separation over 10^4 pairs",
            rt <= 1e-10 and cv <= 1e-9 and sep > 0.05 and pairs.size == 10 ** 4,
            f"round trip {rt:.1e}, convexity excess {cv:.1e}, min |1 - xi.y| {sep:.3f}", clock, 60)
