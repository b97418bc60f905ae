"""The Hardy space on D for the n = 2 model: norms, G-orbit integrals, the
K-invariant reproducing kernel and the map Lambda onto a tube Hardy space.

All norms are squared norms.  Points of D are given either as 3-vectors or by
their K-invariant u = z . x_o.  The orbital integral is parametrized by the
complex A-coordinate Z (X = x Z_A with 0 <= x < pi for the imaginary part).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import spectra as sp
from . import transforms as tr
from . import tube_hardy as th
from .numerics import composite_gl, NonConvergence

W_H_ORDER = 1              # |W_H| for SO_e(1,2)/SO_e(1,1)
EXTREME_X = np.pi          # 2 Z_H in units of the A-generator
HAAR_KAK = 1 / (8 * np.pi ** 3)  # dg = HAAR_KAK sinh r dtheta1 dr dtheta2


def _u_of(z):
    z = np.asarray(z, dtype=complex)
    return z[..., 0] if z.ndim and z.shape[-1] == 3 else z


def _abs2_rule(f: tr.WavePacket):
    ell, w = f.nodes
    return ell, w * np.abs(f.profile(ell)) ** 2


# --------------------------------------------------------------------- norms

def hardy_norm_spectral(f: tr.WavePacket) -> float:
    """||f||_H^2 = int_0^inf |h|^2 COSH |c|^{-2} dell."""
    ell, w = _abs2_rule(f)
    return float(np.sum(w * sp.cosh_weight(ell) * sp.plancherel_density(ell)))


def restricted_norm(f: tr.WavePacket) -> float:
    """||f|_X||^2_{L^2(X)} = int_0^inf |h|^2 |c|^{-2} dell."""
    ell, w = _abs2_rule(f)
    return float(np.sum(w * sp.plancherel_density(ell)))


def inner_product(f: tr.WavePacket, g_profile) -> complex:
    """<f, g>_H = int h conj(g^) COSH |c|^{-2} dell for g given by its spectral profile."""
    ell, w = f.nodes
    return complex(np.sum(w * f.profile(ell) * np.conj(g_profile(ell))
                          * sp.cosh_weight(ell) * sp.plancherel_density(ell)))


# ------------------------------------------------------------ orbit integrals

@dataclass(frozen=True, eq=False)
class OrbitalIntegral:
    """O_{|f|^2}(Z) = int_0^inf |h|^2 phi_{i ell}(exp Z) |c|^{-2} dell on a + i(-pi, pi)."""

    packet: tr.WavePacket

    def __call__(self, Z):
        Z = np.atleast_1d(np.asarray(Z, dtype=complex))
        if np.any(np.abs(Z.imag) >= EXTREME_X):
            raise ValueError("Z must lie in the tube a + i 2 Omega_H")
        ell, w = _abs2_rule(self.packet)
        phi = sp.spherical_fn(ell, np.cosh(Z))
        return phi @ (w * sp.plancherel_density(ell))

    def d_operator(self, Z):
        """D O(Z) = int |h|^2 sum_w e^{lambda(wZ)} |c|^{-2} dell."""
        ell, w = _abs2_rule(self.packet)
        return sp.d_operator(lambda l: np.ones_like(l), np.atleast_1d(np.asarray(Z, complex)), (ell, w)).real


def orbit_points(r, theta, x):
    """u = (a_r k_theta exp(i x/2 Z) . x_o)_0 on a (r, theta) grid."""
    c, s = np.cos(x / 2), np.sin(x / 2)
    return np.cosh(r)[:, None] * c + 1j * np.sinh(r)[:, None] * s * np.cos(theta)[None, :]


def orbital_integral_direct(f: tr.WavePacket, x, r_max=40.0, r_panels=None, order=16, n_theta=96):
    """int_G |f(g exp(i x/2 Z) . x_o)|^2 dg over G = K A+ K.

    K-invariance removes the outer K; the inner rotation is integrated by the
    trapezoidal rule (periodic integrand) and r by composite Gauss-Legendre.
    """
    if not 0 <= x < EXTREME_X:
        raise ValueError("need 0 <= x < pi")
    r_panels = r_panels or int(np.ceil(r_max))
    r, wr = composite_gl(np.linspace(0.0, r_max, r_panels + 1), order)
    theta = np.arange(n_theta // 2 + 1) * (2 * np.pi / n_theta)
    wt = np.full(theta.size, 2 * np.pi / n_theta)
    wt[1:-1] *= 2                     # cos(theta) symmetry folds [pi, 2 pi) onto (0, pi)
    u = orbit_points(r, theta, x)
    vals = np.abs(f.at_u(u.ravel()).reshape(u.shape)) ** 2
    inner = vals @ wt
    return float(2 * np.pi * HAAR_KAK * np.sum(wr * np.sinh(r) * inner))


def orbital_integral(f: tr.WavePacket, Z, route="spectral", **kw):
    if route == "spectral":
        return OrbitalIntegral(f)(Z)
    if route == "direct":
        Z = complex(Z)
        if Z.real != 0:
            raise ValueError("the direct route takes purely imaginary Z")
        return orbital_integral_direct(f, abs(Z.imag), **kw)
    raise ValueError(f"unknown route {route!r}")


# ------------------------------------------------------------ geometric norm

@dataclass(frozen=True)
class GeometricNorm:
    eps: tuple
    values: tuple
    spectral: float

    @property
    def sup(self):
        return max(self.values)

    @property
    def extrapolated(self):
        """Polynomial extrapolation of the grid values to eps = 0 (Neville)."""
        e = np.asarray(self.eps, float)
        p = np.asarray(self.values, float).copy()
        n = len(e)
        for k in range(1, n):
            for i in range(n - k):
                p[i] = (e[i + k] * p[i] - e[i] * p[i + 1]) / (e[i + k] - e[i])
        return float(p[0])

    @property
    def monotone(self):
        order = np.argsort(self.eps)[::-1]   # decreasing eps
        v = np.asarray(self.values)[order]
        return bool(np.all(np.diff(v) >= 0))


def hardy_norm_geometric(f: tr.WavePacket, eps=(0.2, 0.1, 0.05)) -> GeometricNorm:
    """sup over X = (1 - eps) 2 Z_H of D O_{|f|^2}(iX) / |W_H|."""
    O = OrbitalIntegral(f)
    vals = tuple(float(v) / W_H_ORDER for v in O.d_operator(1j * (1 - np.asarray(eps)) * EXTREME_X))
    return GeometricNorm(tuple(eps), vals, hardy_norm_spectral(f))


# ------------------------------------------------------------------ kernel

def _growth(u):
    """|Im arccosh u|: phi_{i ell}(u) grows like exp(ell * this / 2)."""
    return np.abs(np.arccosh(np.asarray(u, complex)).imag)


def kernel_rule(u_list, order=20, width=1.0, tol_exp=40.0):
    y = max(float(np.max(_growth(u))) for u in u_list)
    rate = 0.5 * np.pi - y
    if rate <= 0:
        raise ValueError("points outside D")
    L = tol_exp / rate
    return composite_gl(np.linspace(0.0, L, int(np.ceil(L / width)) + 1), order)


def reproducing_kernel(z, w, order=20):
    """K(z, w) = int_0^inf phi(z) conj(phi(w)) / COSH |c|^{-2} dell."""
    uz, uw = complex(_u_of(z)), complex(_u_of(w))
    ell, wt = kernel_rule([uz, uw], order)
    pz = sp.spherical_fn(ell, [uz])[0]
    pw = sp.spherical_fn(ell, [uw])[0]
    return complex(np.sum(wt * pz * np.conj(pw) * sp.plancherel_density(ell) / sp.cosh_weight(ell)))


def gram_matrix(points, order=20):
    us = [complex(_u_of(p)) for p in points]
    ell, wt = kernel_rule(us, order)
    P = sp.spherical_fn(ell, np.array(us))
    return (P * (wt * sp.plancherel_density(ell) / sp.cosh_weight(ell))) @ P.conj().T


def kernel_profile(w):
    """Spectral profile of K_w: conj(phi(w)) / COSH."""
    uw = complex(_u_of(w))
    return lambda ell: np.conj(sp.spherical_fn(ell, [uw])[0]) / sp.cosh_weight(ell)


def kernel_on_X(w, r, order=20):
    """K_w(a_r . x_o) for an array of r (the kernel restricted to X)."""
    uw = complex(_u_of(w))
    ell, wt = kernel_rule([uw, 1.0], order)
    pw = np.conj(sp.spherical_fn(ell, [uw])[0])
    P = sp.spherical_fn(ell, np.cosh(np.asarray(r, float)))
    return P @ (wt * pw * sp.plancherel_density(ell) / sp.cosh_weight(ell))


def spherical_transform(values, r, wr, ell):
    """(1/2pi) int_0^inf F(cosh r) phi_{i ell}(cosh r) sinh r dr on a given r-rule."""
    P = sp.spherical_fn(ell, np.cosh(r))
    return (wr * np.sinh(r) * values) @ P / (2 * np.pi)


@dataclass(eq=False)
class KernelOnX:
    """K_w sampled on X = {a_r . x_o}; its spherical transform gives a second route to <f, K_w>_H."""

    w: np.ndarray
    r_max: float = 40.0
    order: int = 16

    @cached_property
    def samples(self):
        r, wr = composite_gl(np.linspace(0.0, self.r_max, int(2 * self.r_max) + 1), self.order)
        return r, wr, kernel_on_X(self.w, r)

    def profile(self, ell):
        r, wr, K = self.samples
        return spherical_transform(K, r, wr, np.asarray(ell, float))

    def inner(self, f: tr.WavePacket) -> complex:
        return inner_product(f, self.profile)


def d_point(x):
    """exp(i x Z_A) . x_o as a 3-vector."""
    return np.array([np.cos(x), 0.0, 1j * np.sin(x)])


# --------------------------------------------------------------- Lambda map

def abel_geometric(f: tr.WavePacket, s, w_max=None, order=16):
    """A(f)(a_s) = e^{-s/2} int_N f(n a_s . x_o) dn for real s, with dn = dv/2pi.

    Substituting v = sqrt(2) e^{s/2} sinh(w) gives n a_s . x_o with u = cosh s + sinh^2 w;
    the integrand is even in w.  f is read from a radial interpolation table.
    """
    s = np.atleast_1d(np.asarray(s, float))
    R = _decay_radius(f)
    w_max = w_max or 0.5 * R + 2
    w, ww = composite_gl(np.linspace(0.0, w_max, int(np.ceil(2 * w_max)) + 1), order)
    u = np.cosh(s)[:, None] + np.sinh(w)[None, :] ** 2
    table = tr.RadialTable(f, R)
    vals = table.at_u(u.ravel()).reshape(u.shape)
    # e^{-s/2} a_s^{-rho} cancels against dv = sqrt(2) e^{s/2} cosh(w) dw; factor 2 for w < 0
    return 2 * np.sqrt(2) * np.sum(ww * np.cosh(w) * vals, axis=1) / (2 * np.pi)


def _decay_radius(f: tr.WavePacket, digits=40.0):
    """r beyond which f(a_r . x_o) is negligible (gaussian decay of width 2/sigma)."""
    return min(80.0, 2 * np.sqrt(2 * digits) / f.profile.sigma + 4)


def c_minus(ell):
    """c(-i ell)."""
    return sp.c_function(-1j * np.asarray(ell, float))


def tau_multiplier(model: th.ReflectionModel | None = None, scale=2.0) -> th.Multiplier:
    """m(s, lam) = c(-s mu)/c(-mu) with mu = i * scale * lam (tube coordinate lam)."""
    model = model or th.line_model(np.pi / 2)

    def fn(i, lam):
        l = scale * np.asarray(lam, float)[..., 0]
        if np.allclose(model.W[i], 1.0):
            return np.ones(l.shape, complex)
        out = -np.ones(l.shape, complex)       # limit at lam = 0
        nz = l != 0
        out[nz] = sp.c_function(1j * l[nz]) / sp.c_function(-1j * l[nz])
        return out

    return th.Multiplier(model, fn)


@dataclass(frozen=True, eq=False)
class LambdaImage:
    """Lambda f = D_A(A f): F_A(Lambda f)(ell) = h(ell)/c(-i ell), viewed in the tube
    a + i Omega_H with tube coordinate lam = ell/2."""

    packet: tr.WavePacket

    def spectral(self, ell):
        ell = np.asarray(ell, float)
        return self.packet.profile(ell) / c_minus(ell)

    @cached_property
    def tube_model(self):
        return th.line_model(np.pi / 2)

    @cached_property
    def multiplier(self):
        return tau_multiplier(self.tube_model)

    def tube_profile(self, lam):
        """F(Lambda f|_V)(lam) = sqrt(2 pi) F_A(Lambda f)(2 lam) in the unitary normalization."""
        return np.sqrt(2 * np.pi) * self.spectral(2 * np.asarray(lam, float)[..., 0])

    @cached_property
    def tube_function(self):
        L = self.packet.profile.support / 2
        return th.TubeFunction(self.tube_profile, self.tube_model, L, max(40, int(4 * L)), 20)

    def __call__(self, z):
        """Lambda f at complex A-coordinates z in the tube |Im z| < pi/2."""
        z = np.asarray(z, complex)
        return self.tube_function(z[..., None])


def lambda_map(f: tr.WavePacket) -> LambdaImage:
    return LambdaImage(f)


def lambda_path_abel(f: tr.WavePacket, ell, order=16):
    """F_A(Lambda f) through the geometric Abel transform and A-Fourier quadrature."""
    s_max = _decay_radius(f)
    s, ws = composite_gl(np.linspace(0.0, s_max, int(np.ceil(2 * s_max)) + 1), order)
    # A f is even in s
    return 2 * tr.fourier_A(abel_geometric(f, s), s, ws, ell).real / c_minus(ell)


def lambda_path_spherical(f: tr.WavePacket, ell, order=16):
    """D_a(F_X f) with F_X by quadrature of f over X."""
    r_max = _decay_radius(f)
    r, wr = composite_gl(np.linspace(0.0, r_max, int(np.ceil(2 * r_max)) + 1), order)
    vals = f.at_u(np.cosh(r))
    return spherical_transform(vals, r, wr, ell) / c_minus(ell)
