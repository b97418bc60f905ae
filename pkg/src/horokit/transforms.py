"""Wave packets and the Radon, Abel, Cauchy and dual transforms on the n = 2 hyperboloid.

Measure conventions: dn = dv/(2 pi) on N (v the coordinate of n_v), da = dt on
A = {a_t}, dh = dt on H = {h_t} with h_t the hyperbolic rotation by 2t in the
(x_0, x_1)-plane.  With dn = dv/(2 pi) the Radon transform of a packet has the
Fourier-slice form R(f)(k a_z . xi_o) = (1/2) int_R h(ell) e^{-z(1 + i ell)/2} dell.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import geometry as geo
from . import spectra as sp
from .numerics import QuadratureSpec, quad1d, composite_gl, gauss_legendre, NonConvergence

N_HAAR = 1.0 / (2 * np.pi)


@dataclass(frozen=True)
class TransformResult:
    value: complex
    error_estimate: float
    route: str

    def __post_init__(self):
        if not self.error_estimate >= 0:
            raise ValueError("error estimate must be nonnegative")


@dataclass(frozen=True, eq=False)
class WavePacket:
    """K-invariant Hardy-space function f(u) = int_0^inf h(ell) phi_{i ell}(u) |c|^{-2} dell."""

    profile: sp.SpectralProfile
    model: geo.RankOneModel = field(default_factory=lambda: geo.RankOneModel(2))
    order: int = 20
    n_panels: int | None = None

    def __post_init__(self):
        if self.model.n != 2:
            raise ValueError("wave packets are implemented for the n = 2 model")

    @cached_property
    def nodes(self):
        return self.profile.nodes(self.n_panels, self.order)

    @cached_property
    def coarse_nodes(self):
        return self.profile.nodes(self.n_panels, max(6, self.order // 2))

    @cached_property
    def synthesis_weights(self):
        ell, w = self.nodes
        return w * self.profile(ell) * sp.plancherel_density(ell)

    def at_u(self, u):
        u = np.asarray(u, dtype=complex)
        ell, _ = self.nodes
        flat = u.reshape(-1)
        step = max(1, 4_000_000 // max(ell.size, 1))
        vals = np.concatenate([sp.spherical_fn(ell, flat[i:i + step]) @ self.synthesis_weights
                               for i in range(0, flat.size, step)]) if flat.size else np.zeros(0, complex)
        return vals.reshape(u.shape)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return self.at_u(z[..., 0])

    def spectral_integral(self, weight, coarse=False):
        """int_0^inf h(ell) weight(ell) dell on the packet's rule."""
        ell, w = self.coarse_nodes if coarse else self.nodes
        return np.sum(w * self.profile(ell) * weight(ell), axis=-1)


def packet_family(model=None, which=("g1", "g2", "g3")):
    """Three reference packets used across the verification suites."""
    defs = {
        "g1": sp.gaussian_packet(1.0),
        "g2": sp.gaussian_packet(0.8, (1.0, 0.5)),
        "g3": sp.gaussian_packet(0.6, (1.0,), center=1.5),
    }
    return [WavePacket(defs[k]) for k in which]


def eval_packet(f: WavePacket, z) -> TransformResult:
    z = np.asarray(z, dtype=complex)
    v = complex(f(z[None, :])[0])
    ell, w = f.coarse_nodes
    vc = complex((sp.spherical_fn(ell, [z[0]]) @ (w * f.profile(ell) * sp.plancherel_density(ell)))[0])
    return TransformResult(v, abs(v - vc), "spherical-synthesis")


# ------------------------------------------------------------------ Radon

def coset_of(xi: geo.HoroParam, model: geo.RankOneModel):
    """(g, t) with xi = g exp(itZ) . xi_o and g = k a_s."""
    if xi.has_coset:
        return xi.g, xi.t
    z = geo.horo_log_a(xi)
    omega = xi.zeta[1:] / xi.zeta[0]
    if np.max(np.abs(omega.imag)) > 1e-9:
        raise geo.GeometryError("zeta is not of the form e^z (1, omega) with omega real")
    R = _rotation_to(omega.real, model.n)
    g = geo.GroupElement((geo.k_matrix(R, model.n) @ geo.a_matrix(z.real, model.n)).real.astype(complex), real=True)
    return g, z.imag


def _rotation_to(omega, n):
    """An element of SO(n) sending e_n to the unit vector omega."""
    omega = omega / np.linalg.norm(omega)
    e = np.zeros(n)
    e[-1] = 1.0
    M = np.column_stack([omega, np.eye(n)])
    q, _ = np.linalg.qr(M)
    q = q[:, :n] * np.sign(np.dot(q[:, 0], omega))
    R = np.roll(q, -1, axis=1)     # last column is omega
    if np.linalg.det(R) < 0:
        R[:, 0] = -R[:, 0]
    return R


def _n_orbit_points(g, a_t, v, model):
    """Points g n_v a . x_o for an array of real v (n = 2)."""
    n = model.n
    base = geo.a_matrix(a_t, n) @ model.x_o
    c = base
    q = 0.5 * v ** 2
    # n_v applied to c (columns of n_matrix written out for n = 2)
    p0 = (1 + q) * c[0] + v * c[1] - q * c[2]
    p1 = v * c[0] + c[1] - v * c[2]
    p2 = q * c[0] + v * c[1] + (1 - q) * c[2]
    pts = np.stack([p0, p1, p2], axis=-1)
    return pts @ g.m.T


def _n_integral(f, g, a_t, spec):
    model = f.model
    fn = lambda v: f(_n_orbit_points(g, a_t, v, model))
    r = quad1d(fn, -np.inf, np.inf, spec)
    return r


def radon_real(f: WavePacket, xi: geo.HoroParam, spec: QuadratureSpec | None = None) -> TransformResult:
    """R_R(f)(g . xi_o) = int_N f(g n . x_o) dn by quadrature along the horocycle."""
    g, t = coset_of(xi, f.model)
    if abs(t) > 1e-12:
        raise geo.GeometryError("radon_real needs a real horosphere")
    spec = spec or QuadratureSpec(rel_tol=1e-11, abs_tol=1e-14, tail_cutoff=1e4, max_subdivisions=4000)
    r = _n_integral(f, g, 0.0, spec)
    return TransformResult(N_HAAR * r.value, N_HAAR * r.error, "N-quadrature")


def radon_holomorphic(f: WavePacket, xi: geo.HoroParam, spec: QuadratureSpec | None = None) -> TransformResult:
    """R(f)(g a . xi_o) = a^{-2 rho} int_N f(g n a . x_o) dn with a = exp(itZ)."""
    g, t = coset_of(xi, f.model)
    spec = spec or QuadratureSpec(rel_tol=1e-11, abs_tol=1e-14, tail_cutoff=1e4, max_subdivisions=4000)
    r = _n_integral(f, g, 1j * t, spec)
    fac = np.exp(-2 * f.model.rho * 1j * t)
    return TransformResult(N_HAAR * fac * r.value, N_HAAR * r.error, "N-quadrature")


def radon_spectral(f: WavePacket, xi, coarse=False) -> complex:
    """(1/2) int_R h(ell) a(xi^{-1})^{rho(1 + i ell)} dell with a(xi^{-1}) = exp(-zZ), z = log zeta_0."""
    z = geo.horo_log_a(xi) if isinstance(xi, geo.HoroParam) else complex(xi)
    return np.exp(-z / 2) * f.spectral_integral(lambda l: np.cos(z * l / 2), coarse)


def radon_spectral_log(f: WavePacket, z, multiplier=None):
    """Vectorized spectral Radon at A-coordinates z (optionally with a spectral multiplier)."""
    z = np.asarray(z, dtype=complex)
    m = multiplier or (lambda l: 1.0)
    return np.exp(-z / 2) * f.spectral_integral(lambda l: m(l) * np.cos(np.multiply.outer(z, l) / 2))


# ------------------------------------------------------------------ Abel

def abel(f: WavePacket, z: complex, spec: QuadratureSpec | None = None) -> TransformResult:
    """A(f)(a_z) = a_z^{-rho} int_N f(n a_z . x_o) dn, |Im z| < pi/2."""
    if abs(complex(z).imag) >= np.pi / 2:
        raise geo.GeometryError("z must lie in the tube |Im z| < pi/2")
    spec = spec or QuadratureSpec(rel_tol=1e-12, abs_tol=1e-15, tail_cutoff=1e4, max_subdivisions=4000)
    eye = geo.GroupElement(np.eye(3), real=True)
    r = _n_integral(f, eye, complex(z), spec)
    fac = np.exp(-f.model.rho * complex(z))
    return TransformResult(N_HAAR * fac * r.value, N_HAAR * abs(fac) * r.error, "N-quadrature")


def abel_spectral(f: WavePacket, z):
    z = np.asarray(z, dtype=complex)
    return f.spectral_integral(lambda l: np.cos(np.multiply.outer(z, l) / 2))


def fourier_A(values, s, weights, ell):
    """F_A(F)(ell) = (1/2pi) int_R F(s) e^{-i ell s/2} ds on a given s-rule."""
    ph = np.exp(-0.5j * np.multiply.outer(np.asarray(ell, float), s))
    return ph @ (weights * values) / (2 * np.pi)


# ------------------------------------------------------------------ boundary values on Y

class PanelTable:
    """Piecewise Chebyshev-Lobatto interpolant of fn on [lo, hi]; zero outside."""

    def __init__(self, fn, lo, hi, width=0.25, m=16):
        self.lo, self.hi, self.width, self.m = lo, hi, width, m
        n = max(1, int(round((hi - lo) / width)))
        self.width = (hi - lo) / n
        self.edges = lo + self.width * np.arange(n + 1)
        k = np.arange(m)
        self.ref = -np.cos(np.pi * k / (m - 1))
        bw = (-1.0) ** k
        bw[0] *= 0.5
        bw[-1] *= 0.5
        self.bw = bw
        mids = 0.5 * (self.edges[:-1] + self.edges[1:])
        nodes = mids[:, None] + 0.5 * self.width * self.ref[None, :]
        self.values = np.asarray(fn(nodes.ravel()), dtype=complex).reshape(nodes.shape)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape, dtype=complex)
        inside = (x >= self.lo) & (x <= self.hi)
        xi = x[inside]
        j = np.clip(((xi - self.lo) / self.width).astype(int), 0, len(self.edges) - 2)
        loc = (xi - 0.5 * (self.edges[j] + self.edges[j + 1])) / (0.5 * self.width)
        d = loc[:, None] - self.ref[None, :]
        exact = np.abs(d) < 1e-14
        q = self.bw[None, :] / np.where(exact, 1.0, d)
        vals = self.values[j]
        res = np.sum(q * vals, axis=1) / np.sum(q, axis=1)
        hit = np.nonzero(exact.any(axis=1))[0]
        if hit.size:
            res[hit] = vals[hit, np.argmax(exact[hit], axis=1)]
        out[inside] = res
        return out


class BoundaryTable:
    """Boundary values F(eta) = f(i eta) on Y, interpolated in s = asinh(eta).

    Values beyond |s| > s_max are treated as zero (the packet decays like a
    gaussian in log|eta|).
    """

    def __init__(self, f: WavePacket, s_max=30.0, width=0.25, m=16):
        self.f = f
        self.s_max = s_max
        self.table = PanelTable(lambda s: f.at_u(1j * np.sinh(s)), -s_max, s_max, width, m)

    def __call__(self, eta):
        return self.table(np.arcsinh(np.asarray(eta, dtype=float)))


class RadialTable:
    """f(a_r . x_o) = f(cosh r) interpolated on 0 <= r <= r_max, zero beyond."""

    def __init__(self, f: WavePacket, r_max=40.0, width=0.25, m=16):
        self.f = f
        self.r_max = r_max
        self.table = PanelTable(lambda r: f.at_u(np.cosh(r)), 0.0, r_max, width, m)

    def at_u(self, u):
        """Values at real u >= 1."""
        return self.table(np.arccosh(np.asarray(u, dtype=float)))


def _kernel_q(t, zeta):
    """q-locations (and widths) of the complex poles of 1/(1 - xi . y) along the N-orbit at a_t.

    With y = a_t n_v w^j . y_o the pole condition is the quadratic
    B v^2 + zeta_1 v + A -/+ i = 0, A = zeta_0 sinh t - zeta_2 cosh t, B = (zeta_2 - zeta_0) e^t / 2.
    """
    A = zeta[0] * np.sinh(t) - zeta[2] * np.cosh(t)
    B = 0.5 * (zeta[2] - zeta[0]) * np.exp(t)
    out = []
    for c in (A + 1j, A - 1j):
        roots = np.roots([B, zeta[1], c]) if abs(B) > 1e-300 else ([-c / zeta[1]] if zeta[1] else [])
        for v in roots:
            out.append((abs(v.real), abs(v.imag)))
    scale = np.exp(t / 2) / np.sqrt(2.0)
    return [(scale * a, scale * b) for a, b in out]


def _q_panels(t, s_max, n_geo=60, zeta=None):
    """Breakpoints in q (with eta = sinh t - q^2) resolving eta on geometric scales,
    refined around the kernel poles when zeta is given."""
    st = np.sinh(t)
    etas = np.concatenate([-np.geomspace(1e-3, np.sinh(s_max), n_geo), [0.0], np.geomspace(1e-3, np.sinh(s_max), n_geo)])
    qs = np.sqrt(np.clip(st - etas[etas < st], 0, None))
    qs = np.concatenate([[0.0], np.geomspace(1e-4, 1.0, 8), qs])
    q_end = np.sqrt(max(st, 0) + np.sinh(s_max))
    if zeta is not None:
        k = 2.0 ** np.arange(-1, 6)
        for q0, w in _kernel_q(t, zeta):
            if q0 < q_end:
                qs = np.concatenate([qs, [q0], q0 + w * k, np.clip(q0 - w * k, 0, None)])
    qs = np.unique(qs[qs <= q_end])
    return qs


def y_points(t, v, weyl, model):
    """a_t n_v w^j . y_o for arrays t, v (n = 2); returns (..., 3)."""
    q = 0.5 * v ** 2
    sgn = -1.0 if weyl else 1.0
    # n_v y_o = i(-q, -v, 1 - q)
    # written without the cosh/sinh cancellation of the product a_t n_v
    qe = q * np.exp(t)
    return sgn * 1j * np.stack(np.broadcast_arrays(np.sinh(t) - qe, -v, np.cosh(t) - qe), axis=-1)


def cauchy_transform(f: WavePacket, xi: geo.HoroParam, table: BoundaryTable | None = None,
                     t_max=34.0, order=8, guard=1e-8) -> TransformResult:
    """C(f)(xi) = int_Y f(y) / (1 - xi . y) dy with dy = sum_w da dn over a_t n_v w . y_o.

    The N-coordinate is integrated in q = e^{t/2} v / sqrt 2 (so that the boundary
    argument is eta = sinh t - q^2) on panels that follow eta geometrically; the
    A-coordinate on unit panels of [-t_max, t_max].  Returns the value and the
    difference against a rule of lower order as error estimate.
    """
    table = table or BoundaryTable(f)
    zeta = xi.zeta if isinstance(xi, geo.HoroParam) else np.asarray(xi, complex)
    vals = []
    for o in (order, order - 4):
        tn, tw = composite_gl(np.arange(-t_max, t_max + 0.5, 1.0), o)
        total = 0j
        for t, wt in zip(tn, tw):
            qs = _q_panels(t, table.s_max, zeta=zeta)
            qn, qw = composite_gl(qs, o)
            v = np.sqrt(2.0) * np.exp(-t / 2) * qn
            jac = np.sqrt(2.0) * np.exp(-t / 2) * qw * 2  # v and -v
            for weyl in (False, True):
                y = y_points(t, v, weyl, f.model)
                den = 1 - geo.minkowski_pair(zeta, y)
                if np.any(np.abs(den) < guard):
                    raise geo.NearSingularKernel("xi outside the admissible region")
                yneg = y_points(t, -v, weyl, f.model)
                den2 = 1 - geo.minkowski_pair(zeta, yneg)
                fy = table(y[..., 0].imag)
                total += wt * np.sum(0.5 * jac * fy * (1 / den + 1 / den2))
        vals.append(N_HAAR * total)
    return TransformResult(complex(vals[0]), float(abs(vals[0] - vals[1])), "Y-quadrature")


# ------------------------------------------------------------------ dual transform

def h_matrix(t, model):
    """h_t in H = SO_e(1,1): hyperbolic rotation by 2t in the (x_0, x_1)-plane."""
    m = np.eye(model.n + 1, dtype=complex)
    c, s = np.cosh(2 * t), np.sinh(2 * t)
    m[0, 0] = m[1, 1] = c
    m[0, 1] = m[1, 0] = s
    return m


def h_orbit_zeta(t, g, model):
    """g h_t z_H . xi_o = g . i(cosh 2t, sinh 2t, 0, ..., 1) for an array of t."""
    t = np.asarray(t, dtype=float)
    z = np.zeros(t.shape + (model.n + 1,), dtype=complex)
    z[..., 0] = 1j * np.cosh(2 * t)
    z[..., 1] = 1j * np.sinh(2 * t)
    z[..., -1] = 1j
    return z @ g.m.T


def zeta_log_a(zeta):
    """Vectorized A-coordinate z = log zeta_0 on the closure of Xi_+."""
    return np.log(np.asarray(zeta, complex)[..., 0])


def dual_transform(phi, y=None, model=None, g=None, spec: QuadratureSpec | None = None,
                   check_divergence=True) -> TransformResult:
    """phi^vee(g . y_o) = int_H phi(g h z_H . xi_o) dh.

    ``phi`` maps an array of null vectors (..., n+1) to values.  Divergence is
    detected by comparing the integral on [-T, T] and [-2T, 2T].
    """
    model = model or geo.RankOneModel(2)
    if g is None:
        g = geo.GroupElement(np.eye(model.n + 1), real=True)
    spec = spec or QuadratureSpec(rel_tol=1e-11, abs_tol=1e-14, tail_cutoff=40.0, max_subdivisions=4000)
    fn = lambda t: phi(h_orbit_zeta(t, g, model))
    T = spec.tail_cutoff
    r = quad1d(fn, -T, T, spec)
    if check_divergence:
        r2 = quad1d(fn, -2 * T, 2 * T, spec)
        if abs(r2.value - r.value) > 1e3 * max(r.error, spec.abs_tol) + 1e-6 * abs(r.value):
            raise NonConvergence(f"dual transform integrand not integrable (|I_2T - I_T| = {abs(r2.value - r.value):.3e})")
    return TransformResult(r.value, r.error, "H-quadrature")


def cosh_power_phi(ell):
    """The horosphere function a(xi^{-1})^{rho(1 + i ell)} = e^{-z(1 + i ell)/2}."""
    return lambda zeta: np.exp(-0.5 * (1 + 1j * ell) * zeta_log_a(zeta))


def radon_as_function(f: WavePacket, multiplier=None):
    """Spectral R(f) (optionally L R(f) for a multiplier) as a function of null vectors."""
    return lambda zeta: radon_spectral_log(f, zeta_log_a(zeta), multiplier)


def dual_of_radon_spectral(f: WavePacket, multiplier=None):
    """(L R f)^vee(y_o) = (1/4) int_0^inf h m C1 dell for an even multiplier m."""
    m = multiplier or (lambda l: 1.0)
    return 0.25 * f.spectral_integral(lambda l: m(l) * sp.dual_constants(l)[0])


@dataclass(frozen=True)
class InversionReport:
    f_y_o: complex
    route_a: complex
    route_b: complex
    kappa: complex

    @property
    def err_a(self):
        return abs(self.route_a - self.f_y_o) / abs(self.f_y_o)

    @property
    def err_b(self):
        return abs(self.route_b - self.f_y_o) / abs(self.f_y_o)

    @property
    def err_ab(self):
        return abs(self.route_a - self.route_b) / abs(self.route_a)


def inversion_multiplier(kappa):
    return lambda l: sp.multiplier_g(l) / kappa


def invert(f: WavePacket, spec: QuadratureSpec | None = None) -> InversionReport:
    """(L R f)^vee(y_o) two ways, with L the multiplier g/kappa; compare to f(y_o)."""
    model = f.model
    kappa = complex(sp.kappa_ratio(np.array([1.0]))[0])
    mult = inversion_multiplier(kappa)
    a = dual_of_radon_spectral(f, mult)
    b = dual_transform(radon_as_function(f, mult), model=model, spec=spec).value
    fy = eval_packet(f, model.y_o).value
    return InversionReport(complex(fy), complex(a), complex(b), kappa)
