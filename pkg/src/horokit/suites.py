"""Named verification suites: each check compares two routes (or a value and a bound)."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, asdict
from importlib import resources

import numpy as np

from . import geometry as geo
from . import hardy as hd
from . import spectra as sp
from . import transforms as tr
from . import tube_hardy as th
from .numerics import cgamma, quad1d, QuadratureSpec

SUITES = ("specfun", "geometry", "cauchy-radon", "inversion", "hardy-norm", "kernels", "tube")


class ConfigInvalid(ValueError):
    pass


# ------------------------------------------------------------------ records

@dataclass
class Check:
    """mode: 'rel' |a-b|/|b| <= tol, 'abs' |a-b| <= tol, 'le' a <= b + tol, 'ge' a >= b - tol."""

    name: str
    anchor: str
    route_a: complex
    route_b: complex
    tol: float
    mode: str = "rel"
    wall: float = 0.0
    note: str = ""

    @property
    def abs_diff(self):
        return float(abs(complex(self.route_a) - complex(self.route_b)))

    @property
    def rel_diff(self):
        b = abs(complex(self.route_b))
        return self.abs_diff / b if b else None

    @property
    def passed(self):
        a, b = complex(self.route_a), complex(self.route_b)
        if not (np.isfinite(a) and np.isfinite(b)):
            return False
        if self.mode == "rel":
            return self.rel_diff <= self.tol
        if self.mode == "abs":
            return self.abs_diff <= self.tol
        if self.mode == "le":
            return a.real <= b.real + self.tol
        if self.mode == "ge":
            return a.real >= b.real - self.tol
        raise ValueError(self.mode)

    def record(self):
        enc = lambda v: [complex(v).real, complex(v).imag] if complex(v).imag else complex(v).real
        return {"check": self.name, "anchor": self.anchor, "route_a": enc(self.route_a),
                "route_b": enc(self.route_b), "abs_diff": self.abs_diff, "rel_diff": self.rel_diff,
                "tol": self.tol, "mode": self.mode, "pass": bool(self.passed),
                "wall": round(self.wall, 3), "note": self.note}


def failed(name, anchor, err):
    return Check(name, anchor, np.nan, np.nan, 0.0, note=f"{type(err).__name__}: {err}")


# ------------------------------------------------------------------ config

def _default_packets():
    return [{"sigma": 1.0}, {"sigma": 0.8, "coeffs": [1.0, 0.5]}, {"sigma": 0.6, "center": 1.5}]


@dataclass
class SuiteConfig:
    model: dict = field(default_factory=lambda: {"type": "sl2r", "n": 2})
    packets: list = field(default_factory=_default_packets)
    grids: dict = field(default_factory=dict)
    quadrature: dict = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if not isinstance(self.packets, list) or not self.packets:
            raise ConfigInvalid("at least one packet is required")
        for p in self.packets:
            if not isinstance(p, dict) or float(p.get("sigma", 0)) <= 0:
                raise ConfigInvalid(f"bad packet definition {p!r}")
        if self.model.get("type") not in ("sl2r", "so1n"):
            raise ConfigInvalid("model type must be 'sl2r' or 'so1n'")
        n = int(self.model.get("n", 2))
        if n < 2 or (self.model["type"] == "sl2r" and n != 2):
            raise ConfigInvalid("n must be >= 2 (and 2 for sl2r)")

    @classmethod
    def from_dict(cls, d):
        unknown = set(d) - {"model", "packets", "grids", "quadrature", "seed"}
        if unknown:
            raise ConfigInvalid(f"unknown config keys {sorted(unknown)}")
        try:
            return cls(**d)
        except TypeError as e:
            raise ConfigInvalid(str(e)) from e

    @classmethod
    def load(cls, path):
        try:
            with open(path) as fh:
                d = json.load(fh)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigInvalid(f"cannot read config: {e}") from e
        return cls.from_dict(d)

    @property
    def n(self):
        return int(self.model.get("n", 2))

    def wave_packets(self):
        return [tr.WavePacket(sp.gaussian_packet(float(p["sigma"]), tuple(p.get("coeffs", (1.0,))),
                                                 float(p.get("center", 0.0))))
                for p in self.packets]

    def grid(self, key, default):
        return self.grids.get(key, default)

    def quad(self, key, default):
        return self.quadrature.get(key, default)


def golden():
    return json.loads(resources.files("horokit").joinpath("golden.json").read_text())


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def _run(checks, name, anchor, fn):
    """Run fn() -> list of Check (or a Check); failures become failed records."""
    t = time.perf_counter()
    try:
        out = fn()
    except Exception as e:  # noqa: BLE001  errors become failed checks
        checks.append(failed(name, anchor, e))
        return
    out = out if isinstance(out, list) else [out]
    dt = (time.perf_counter() - t) / max(1, len(out))
    for c in out:
        c.wall = dt
        checks.append(c)


# ------------------------------------------------------------------ suites

def suite_specfun(cfg: SuiteConfig):
    checks = []
    z = np.array([0.3 + 0.4j, -2.7 + 1.1j, 5.5 - 3.0j, 0.01 + 7j, 12.5 + 0.5j])
    _run(checks, "gamma recurrence", "Gamma(z+1) = z Gamma(z)",
         lambda: Check("gamma recurrence", "Gamma(z+1) = z Gamma(z)",
                       np.max(np.abs(cgamma(z + 1) / (z * cgamma(z)) - 1)), 0.0, 1e-11, "abs"))
    zr = np.array([0.25 + 0.5j, 0.7 - 1.2j, 0.1 + 3j])
    _run(checks, "gamma reflection", "Gamma(z) Gamma(1-z) = pi / sin(pi z)",
         lambda: Check("gamma reflection", "Gamma(z) Gamma(1-z) = pi / sin(pi z)",
                       np.max(np.abs(cgamma(zr) * cgamma(1 - zr) * np.sin(np.pi * zr) / np.pi - 1)),
                       0.0, 1e-11, "abs"))
    ell = np.linspace(0.05, 30, 200)
    _run(checks, "plancherel density", "|c(i ell)|^-2 = (pi ell/2) tanh(pi ell/2)",
         lambda: Check("plancherel density", "|c(i ell)|^-2 = (pi ell/2) tanh(pi ell/2)",
                       np.max(np.abs(sp.plancherel_density_gamma(ell) / sp.plancherel_density(ell) - 1)),
                       0.0, 1e-10, "abs"))

    def cosh_power():
        out = []
        q = QuadratureSpec(rel_tol=1e-12, abs_tol=1e-15, tail_cutoff=40.0)
        for lam in cfg.grid("beta_lambda", [0, 1, 2, 5, 10]):
            r = quad1d(lambda t: np.cosh(2 * t) ** (-(1 + 1j * lam) / 2), -np.inf, np.inf,
                       q.with_(decay_rate=1.0))
            out.append(Check(f"cosh-power integral lam={lam}",
                             "int dt/(cosh 2t)^((1+i lam)/2) = B(1/2,(1+i lam)/4)/2",
                             r.value, complex(sp.cosh_power_integral(lam)), 1e-8))
        return out

    _run(checks, "cosh-power integral", "Beta closed form", cosh_power)
    ells = np.array([0.0, 0.5, 1.0, 3.0, 7.5])
    _run(checks, "phi(y_o) closed form", "phi(y_o) = 2/B((3-i ell)/4,(3+i ell)/4) vs Gauss sum",
         lambda: [Check(f"phi(y_o) closed form ell={l}", "phi(y_o) Beta form vs 2F1 at 1",
                        complex(sp.phi_y_o_beta(l)), complex(sp.phi_y_o_gauss(l)[0]), 1e-8) for l in ells])

    def interior():
        out = []
        for x in (0.2, 0.5, 0.9, 1.3):
            l = np.array([0.3, 2.0, 6.0])
            a = sp.spherical_fn(l, [np.cos(2 * x)])[0]
            b = sp.spherical_fn_k_integral(l, x)
            out.append(Check(f"phi(a^2) x={x}", "2F1 route vs K-integral route",
                             complex(a[np.argmax(np.abs(a - b))]), complex(b[np.argmax(np.abs(a - b))]), 1e-6))
        return out

    _run(checks, "phi interior", "2F1 route vs K-integral route", interior)
    ell = np.linspace(0.25, 16, 64)
    _run(checks, "c1 coth form", "coth display vs Gamma-only c1",
         lambda: Check("c1 coth form", "coth display vs Gamma-only c1",
                       np.max(np.abs(sp.c1_coth(ell) - sp.c1_gamma_route(ell)) / np.abs(sp.c1_gamma_route(ell))),
                       0.0, 1e-9, "abs"))

    def kappa():
        k = sp.kappa_ratio(ell)
        g = golden()["inversion_kappa"]
        return [Check("kappa constant", "C2 / (g C1) independent of ell",
                      np.max(np.abs(k - k[0])), 0.0, 1e-9, "abs"),
                Check("kappa golden", "C2 / (g C1) vs stored constant", complex(k[0]), g, 1e-9)]

    _run(checks, "kappa", "C2 = kappa g C1", kappa)
    _run(checks, "COSH symmetry", "COSH(-ell) = COSH(ell)",
         lambda: Check("COSH symmetry", "COSH(-ell) = COSH(ell)",
                       np.max(np.abs(sp.cosh_weight(-ell) - sp.cosh_weight(ell)) / sp.cosh_weight(ell)),
                       0.0, 1e-14, "abs"))
    return checks


def suite_geometry(cfg: SuiteConfig):
    checks = []
    M = geo.RankOneModel(cfg.n)
    rng = np.random.default_rng(cfg.seed)
    count = int(cfg.grid("iwasawa_points", 1000))

    def roundtrip():
        worst = 0.0
        for _ in range(count):
            g = geo.random_group_element(M, rng, 2.0, 2.0)
            z = g.m @ geo.a_matrix(1j * rng.uniform(-1.5, 1.5), M.n) @ M.x_o
            worst = max(worst, float(np.max(np.abs(geo.reconstruct(geo.iwasawa_point(z), M) - z))
                                     / max(1.0, np.max(np.abs(z)))))
        return Check("iwasawa round trip", "z = n_v a_w . x_o reconstruction", worst, 0.0, 1e-10, "abs")

    _run(checks, "iwasawa round trip", "Iwasawa reconstruction", roundtrip)

    def convexity():
        worst = -np.inf
        for _ in range(500):
            g = geo.random_group_element(M, rng, 2.0, 2.0)
            y = rng.uniform(-1, 1) * np.pi / 2 * 0.999
            w = geo.iwasawa_point(g.m @ geo.a_matrix(1j * y, M.n) @ M.x_o).w
            worst = max(worst, abs(w.imag) - abs(y))
        return Check("complex convexity", "|Im log a(g exp(iY) x_o)| <= |Y|", worst, 0.0, 1e-9, "le")

    _run(checks, "complex convexity", "complex convexity", convexity)

    def separation():
        c = float(cfg.grid("separation_c", np.pi / 2 - 0.1))
        Ys = np.array(geo.sample_Y(M, 1000, cfg.seed + 1))
        Xs = geo.sample_Xi(M, c, 10, cfg.seed + 2)
        pairs = np.concatenate([geo.minkowski_pair(x.zeta[None, :], Ys) for x in Xs])
        m = float(np.min(np.abs(1 - pairs)))
        nonreal = float(np.min(np.abs(pairs.imag) + (pairs == 0)))
        return [Check("kernel separation", "min |1 - xi.y| over Xi_c x Y", m, 0.05, 0.0, "ge"),
                Check("kernel separation bound", "min |1 - xi.y| >= cos c", m, np.cos(c), 1e-12, "ge"),
                Check("xi.y not real", "xi.y outside R minus {0}", nonreal, 0.0, 1e-9, "ge")]

    _run(checks, "kernel separation", "separation", separation)
    return checks


def _xi_points(cfg: SuiteConfig, M):
    pts = [geo.HoroParam(np.exp(complex(*z)) * M.xi_o)
           for z in cfg.grid("xi_log", [[0.0, 0.0], [0.0, 0.5], [0.3, 0.9]])]
    for s in range(int(cfg.grid("xi_random", 1))):
        pts += geo.sample_Xi(M, 1.2, 1, cfg.seed + 100 + s)
    return pts


def suite_cauchy_radon(cfg: SuiteConfig):
    checks = []
    M = geo.RankOneModel(2)
    g = golden()["cauchy_radon_ratio"]
    order = int(cfg.quad("cauchy_order", 8))
    for i, f in enumerate(cfg.wave_packets()):
        table = tr.BoundaryTable(f)
        for xi in _xi_points(cfg, M):
            z = geo.horo_log_a(xi)
            name = f"cauchy vs radon packet={i} z={z.real:.3f}{z.imag:+.3f}i"
            _run(checks, name, "C(f) = 2 pi R(f) on Xi_+",
                 lambda: Check(name, "C(f) = 2 pi R(f) on Xi_+",
                               tr.cauchy_transform(f, xi, table, order=order).value,
                               g * tr.radon_spectral(f, xi), 5e-3))
    return checks


def suite_inversion(cfg: SuiteConfig):
    checks = []
    for i, f in enumerate(cfg.wave_packets()):
        def run(f=f, i=i):
            r = tr.invert(f)
            return [Check(f"inversion spectral packet={i}", "(L R f)^vee(y_o) = f(y_o), spectral route",
                          r.route_a, r.f_y_o, 1e-3),
                    Check(f"inversion H-quadrature packet={i}", "(L R f)^vee(y_o) = f(y_o), H-orbit route",
                          r.route_b, r.f_y_o, 1e-3)]
        _run(checks, f"inversion packet={i}", "inversion at y_o", run)
    return checks


def suite_hardy_norm(cfg: SuiteConfig):
    checks = []
    xs = cfg.grid("gutzmer_s", [0.2, 0.5, 0.9])
    eps = tuple(cfg.grid("eps", [0.2, 0.1, 0.05]))
    for i, f in enumerate(cfg.wave_packets()):
        def gutz(f=f, i=i):
            O = hd.OrbitalIntegral(f)
            r = [hd.orbital_integral_direct(f, s * np.pi) / O(1j * s * np.pi)[0].real for s in xs]
            return [Check(f"gutzmer ratio constant packet={i}", "direct G-orbit / spectral orbit integral",
                          max(r) / min(r) - 1, 0.0, 1e-3, "abs"),
                    Check(f"gutzmer ratio golden packet={i}", "orbit-integral ratio vs stored constant",
                          r[0], golden()["gutzmer_ratio"], 1e-3)]
        _run(checks, f"gutzmer packet={i}", "Gutzmer identity", gutz)

        def geo_norm(f=f, i=i):
            G = hd.hardy_norm_geometric(f, eps)
            out = [Check(f"geometric norm monotone packet={i}", "D O(iX) increases toward the extreme point",
                         float(G.monotone), 1.0, 0.0, "ge"),
                   Check(f"geometric norm below spectral packet={i}", "D O(iX)/|W_H| <= ||f||_H^2",
                         G.sup, G.spectral, 1e-12 * G.spectral, "le"),
                   Check(f"geometric norm extrapolated packet={i}", "eps -> 0 extrapolation vs ||f||_H^2",
                         G.extrapolated, G.spectral, 2e-2)]
            return out
        _run(checks, f"geometric norm packet={i}", "geometric Hardy norm", geo_norm)

    def narrow():
        f = tr.WavePacket(sp.gaussian_packet(float(cfg.grid("narrow_sigma", 0.3))))
        G = hd.hardy_norm_geometric(f, eps)
        return Check("geometric norm at eps=%g" % min(eps), "grid sup vs ||f||_H^2, low-frequency packet",
                     G.values[int(np.argmin(eps))], G.spectral, 2e-2)

    _run(checks, "geometric norm narrow", "geometric Hardy norm", narrow)
    return checks


def suite_kernels(cfg: SuiteConfig):
    checks = []
    packets = cfg.wave_packets()
    for s in cfg.grid("kernel_s", [0.1, 0.4, 0.7]):
        def repro(s=s):
            w = hd.d_point(s * np.pi / 2)
            KX = hd.KernelOnX(w)
            return [Check(f"reproducing x={s:.2f}pi/2 packet={i}", "<f, K_w>_H via K_w on X vs f(w)",
                          KX.inner(f), tr.eval_packet(f, w).value, 1e-4) for i, f in enumerate(packets)]
        _run(checks, f"reproducing x={s:.2f}pi/2", "<f, K_w>_H = f(w)", repro)

    def gram():
        pts = [hd.d_point(s * np.pi / 2) for s in cfg.grid("gram_s", [0.0, 0.3, 0.6])]
        G = hd.gram_matrix(pts)
        return [Check("gram positivity", "smallest eigenvalue of the kernel Gram matrix",
                      float(np.min(np.linalg.eigvalsh(G))), 0.0, 0.0, "ge"),
                Check("kernel hermitian", "K(z,w) = conj K(w,z)",
                      float(np.max(np.abs(G - G.conj().T))), 0.0, 1e-10, "abs")]

    _run(checks, "gram", "kernel Gram matrix", gram)

    def lam_ratio():
        r = [th.tube_hardy_norm(hd.lambda_map(f).tube_function) / hd.hardy_norm_spectral(f) for f in packets]
        return [Check("lambda norm ratio constant", "||Lambda f||^2 / ||f||_H^2 across packets",
                      max(r) / min(r) - 1, 0.0, 1e-3, "abs"),
                Check("lambda norm ratio golden", "||Lambda f||^2 / ||f||_H^2 vs stored constant",
                      r[0], golden()["lambda_norm_ratio"], 1e-3)]

    _run(checks, "lambda ratio", "Lambda unitary", lam_ratio)
    ell = np.asarray(cfg.grid("lambda_ell", list(np.linspace(0.1, 8.0, 9))), float)
    for i, f in enumerate(packets):
        def two_path(f=f, i=i):
            a = hd.lambda_path_abel(f, ell)
            b = hd.lambda_path_spherical(f, ell)
            return Check(f"lambda diagram packet={i}", "F_A(Lambda f) = D_a(F_X f), max-norm relative",
                         float(np.max(np.abs(a - b)) / np.max(np.abs(b))), 0.0, 1e-8, "abs")
        _run(checks, f"lambda diagram packet={i}", "commutative diagram", two_path)

        def tau(f=f, i=i):
            L = hd.lambda_map(f)
            return Check(f"lambda tau invariance packet={i}", "tau(eps) F_A(Lambda f) = F_A(Lambda f)",
                         th.tau_defect(L.tube_function, L.multiplier), 0.0, 1e-8, "abs")
        _run(checks, f"lambda tau packet={i}", "tau invariance", tau)
    return checks


def suite_tube(cfg: SuiteConfig):
    checks = []
    M = th.line_model(1.0)
    m = th.trivial_multiplier(M)
    rng = np.random.default_rng(cfg.seed)

    def closed():
        out = [Check("line kernel at origin", "K(0,0) = sqrt(pi/2)/2",
                     th.tube_kernel(0.0, 0.0, m), golden()["line_kernel_origin"], 1e-12)]
        worst, arg = 0.0, None
        for _ in range(int(cfg.grid("kernel_pairs", 25))):
            z = rng.uniform(-2, 2) + 1j * rng.uniform(-0.9, 0.9)
            w = rng.uniform(-2, 2) + 1j * rng.uniform(-0.9, 0.9)
            a, b = th.tube_kernel(z, w, m), complex(th.line_kernel_closed_form(z, w))
            if abs(a - b) / abs(b) >= worst:
                worst, arg = abs(a - b) / abs(b), (a, b)
        out.append(Check("line kernel closed form", "kernel quadrature vs closed form (worst pair)",
                         arg[0], arg[1], 1e-8))
        return out

    _run(checks, "line kernel", "tube kernel", closed)

    def repro():
        F = th.tube_function(lambda l: np.exp(-l[..., 0] ** 2 / 2) * (1 + 0.3 * l[..., 0]), M)
        P = th.project_tau_invariant(F, m)
        w = 0.4j
        return Check("tube reproducing", "<F, K_w> = F(w) on the tau-invariant part",
                     th.inner_product(P, th.kernel_profile(w, m)), complex(P(np.array([w]))), 1e-6)

    _run(checks, "tube reproducing", "tube reproducing kernel", repro)

    def convex():
        lam = np.linspace(-6, 6, 121)[:, None]
        worst = -np.inf
        for y in np.linspace(-0.99, 0.99, 41):
            worst = max(worst, float(np.max(th.tube_cosh(y, lam, M) - th.tube_cosh(M.y_o, lam, M))))
        S = th.sign_flip_model()
        g = np.linspace(-3, 3, 13)
        lam2 = np.stack(np.meshgrid(g, g), -1).reshape(-1, 2)
        for y in np.stack(np.meshgrid(np.linspace(-.95, .95, 9), np.linspace(-.95, .95, 9)), -1).reshape(-1, 2):
            worst = max(worst, float(np.max(th.tube_cosh(y, lam2, S) / th.tube_cosh(S.y_o, lam2, S) - 1)))
        return Check("COSH_y <= COSH", "max over grids of COSH_y - COSH", worst, 0.0, 0.0, "le")

    _run(checks, "cosh convexity", "COSH_y <= COSH", convex)

    def cocycle():
        L = hd.tau_multiplier()
        lam = np.linspace(-4, 4, 17)[:, None]
        return [Check("multiplier cocycle", "m(sw,l) = m(s,wl) m(w,l)", L.cocycle_defect(lam), 0.0, 1e-12, "abs"),
                Check("multiplier unimodular", "|m| = 1", L.modulus_defect(lam), 0.0, 1e-12, "abs")]

    _run(checks, "cocycle", "multiplier cocycle", cocycle)

    def sup_route():
        F = th.tube_function(lambda l: np.exp(-l[..., 0] ** 2 / 2), M)
        v = th.hardy_norm_sup(F, (0.2, 0.1, 0.05, 0.01))
        N = th.tube_hardy_norm(F)
        return [Check("tube sup monotone", "line norms increase toward the extreme point",
                      float(np.all(np.diff(v) > 0)), 1.0, 0.0, "ge"),
                Check("tube sup below norm", "sup route <= COSH route", float(v[-1]), N, 1e-12 * N, "le"),
                Check("tube gaussian norm", "int e^{-l^2} cosh(2l) dl/sqrt(2 pi) = e/sqrt 2",
                      N, np.e / np.sqrt(2), 1e-8)]

    _run(checks, "tube sup route", "tube Hardy norm", sup_route)
    return checks


REGISTRY = {
    "specfun": suite_specfun,
    "geometry": suite_geometry,
    "cauchy-radon": suite_cauchy_radon,
    "inversion": suite_inversion,
    "hardy-norm": suite_hardy_norm,
    "kernels": suite_kernels,
    "tube": suite_tube,
}


def run_suite(name, cfg: SuiteConfig):
    if name == "all":
        names = list(SUITES)
    elif name in REGISTRY:
        names = [name]
    else:
        raise ConfigInvalid(f"unknown suite {name!r}")
    out = {}
    for n in names:
        if n in ("cauchy-radon", "inversion", "hardy-norm", "kernels") and cfg.n != 2:
            raise ConfigInvalid(f"suite {n!r} needs n = 2")
        checks = REGISTRY[n](cfg)
        out[n] = sorted(checks, key=lambda c: c.name)
    return out
