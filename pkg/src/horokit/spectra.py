"""Spectral side of the rank-one (SL(2,R)-type, rho(Z) = 1/2) model.

Spectral parameters are real ``ell`` in rho-coordinates: lambda = i*ell*rho.
Spectral integrals run over the chamber ell >= 0, so that
    f(x) = (1/2) int_R h(ell) phi_{i ell}(x) dell/|c|^2 = int_0^inf h phi pl dell.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import cbeta, cgamma, gauss_2f1, composite_gl, NonConvergence

RHO_Z = 0.5  # rho(Z) for SO_e(1,2) ~ SL(2,R)


class BranchCutHit(ValueError):
    pass


# ----------------------------------------------------------- profiles

@dataclass(frozen=True)
class SpectralProfile:
    """Even profile h(ell) = P(ell^2) * (G(ell - ell0) + G(ell + ell0)) / 2 with
    G a gaussian of width ``sigma`` and P the polynomial with ``coeffs``."""

    sigma: float = 1.0
    coeffs: tuple = (1.0,)
    center: float = 0.0
    scale: complex = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def __call__(self, ell):
        ell = np.asarray(ell, dtype=float)
        g = 0.5 * (np.exp(-0.5 * ((ell - self.center) / self.sigma) ** 2)
                   + np.exp(-0.5 * ((ell + self.center) / self.sigma) ** 2))
        p = np.polyval(self.coeffs[::-1], ell ** 2)
        return self.scale * p * g

    @property
    def support(self):
        """Effective support [0, L]: beyond L the profile is below 1e-30 of its size,
        even after weighting by exp(pi*ell)."""
        deg = 2 * (len(self.coeffs) - 1)
        L = self.center + self.sigma * (12.0 + 0.2 * deg) + 4.0 * np.pi * self.sigma ** 2
        return float(L)

    def nodes(self, n_panels=None, order=20):
        L = self.support
        if n_panels is None:
            n_panels = max(4, int(np.ceil(L / min(self.sigma, 1.0) / 1.5)))
        return composite_gl(np.linspace(0.0, L, n_panels + 1), order)


def gaussian_packet(sigma=1.0, coeffs=(1.0,), center=0.0, scale=1.0) -> SpectralProfile:
    return SpectralProfile(sigma, tuple(coeffs), center, scale)


# ----------------------------------------------------------- c-function etc

def c_function(lam):
    """Harish-Chandra c-function pi^{-1/2} Gamma(lam/2)/Gamma((lam+1)/2) (rho-coordinates)."""
    lam = np.asarray(lam, dtype=complex)
    return cgamma(lam / 2) / cgamma((lam + 1) / 2) / np.sqrt(np.pi)


def plancherel_density(ell):
    """|c(i ell)|^{-2} = (pi ell/2) tanh(pi ell/2)."""
    ell = np.asarray(ell, dtype=float)
    x = 0.5 * np.pi * ell
    return x * np.tanh(x)


def plancherel_density_gamma(ell):
    """1/|c(i ell)|^2 from the Gamma formula (zero at ell = 0)."""
    ell = np.atleast_1d(np.asarray(ell, dtype=float))
    out = np.zeros(ell.shape)
    nz = ell != 0
    out[nz] = 1.0 / np.abs(c_function(1j * ell[nz])) ** 2
    return out


def cosh_weight(ell):
    """COSH(ell) = sum over the two Weyl terms of z_H^{2 w lambda} = 2 cosh(pi ell/2)."""
    ell = np.asarray(ell, dtype=complex)
    lam_z = 1j * ell * RHO_Z                       # lambda(Z)
    zH2 = 1j * np.pi                               # log z_H^2 = i pi Z
    return (np.exp(zH2 * lam_z) + np.exp(-zH2 * lam_z)).real


def mu_weight(ell):
    return plancherel_density(ell) / cosh_weight(ell)


# ----------------------------------------------------------- spherical functions

def _hyp_params(ell):
    ell = np.asarray(ell, dtype=float)
    return (1 + 1j * ell) / 2, (1 - 1j * ell) / 2


def _series_vec(a, b, c, x, tol=1e-17, max_terms=3000):
    """2F1 power series, broadcasting a, b over x."""
    a, b, x = np.broadcast_arrays(np.asarray(a, complex), np.asarray(b, complex), np.asarray(x, complex))
    term = np.ones(x.shape, dtype=complex)
    s = term.copy()
    for k in range(max_terms):
        term = term * (a + k) * (b + k) / ((c + k) * (k + 1)) * x
        s = s + term
        if k > 2 and np.all(np.abs(term) <= tol * np.maximum(np.abs(s), 1e-300)):
            return s
    raise NonConvergence("vectorized 2F1 series did not converge")


def _phi_hyp(ell, u):
    """phi via 2F1((1+i ell)/2, (1-i ell)/2; 1; (1-u)/2) and its u-derivative."""
    a, b = _hyp_params(ell)
    x = (1 - u[:, None]) / 2
    val = _series_vec(a[None, :], b[None, :], 1.0, x)
    der = -0.5 * a * b * _series_vec(a[None, :] + 1, b[None, :] + 1, 2.0, x)
    return val, der


def _taylor_step(c, h, kappa, f, df, tol=1e-17, max_terms=400):
    """Advance the Legendre equation (1-u^2)f'' - 2uf' + kappa f = 0 from c to c+h."""
    c = c[:, None]
    h = h[:, None]
    q = 1 - c * c
    b0, b1 = f, df * h
    val = b0 + b1
    dsum = b1.copy()
    for k in range(max_terms):
        b2 = (2 * c * (k + 1) ** 2 * h * b1 + (k * (k + 1) - kappa) * h * h * b0) / (q * (k + 1) * (k + 2))
        val = val + b2
        dsum = dsum + (k + 2) * b2
        if k > 4 and np.all(np.abs(b2) + np.abs(b1) <= tol * np.maximum(np.abs(val), 1e-300)):
            break
        b0, b1 = b1, b2
    else:
        raise NonConvergence("Taylor continuation of the spherical function stalled")
    safe = np.where(h == 0, 1.0, h)
    dnew = np.where(h == 0, df, dsum / safe)
    return val, dnew


def _phi_ode(ell, u, start_radius=1.0):
    """Continue phi from the circle |1-u| = start_radius radially outward to u."""
    ell = np.asarray(ell, dtype=float)
    kappa = -(1 + ell ** 2) / 4
    d = u - 1
    s = 1 + start_radius * d / np.abs(d)
    f, df = _phi_hyp(ell, s)
    c = s.copy()
    kmax = np.sqrt(np.max(np.abs(kappa))) if ell.size else 1.0
    for _ in range(10000):
        rem = u - c
        r = np.abs(rem)
        active = r > 0
        if not np.any(active):
            return f
        dist = np.minimum(np.abs(c - 1), np.abs(c + 1))
        hmag = np.minimum.reduce([r, 0.35 * dist, 2.0 * np.sqrt(np.abs(1 - c * c)) / kmax])
        h = np.where(active, rem / np.where(r == 0, 1, r) * hmag, 0)
        idx = np.nonzero(active)[0]
        fa, dfa = _taylor_step(c[idx], h[idx], kappa[None, :], f[idx], df[idx])
        f[idx], df[idx] = fa, dfa
        c = np.where(active, c + h, c)
        c = np.where(np.abs(u - c) < 1e-15 * np.maximum(1, np.abs(u)), u, c)
    raise NonConvergence("spherical-function continuation did not reach target")


def _phi_infinity(ell, u):
    """Harish-Chandra expansion at infinity (|u| large, ell != 0):
    phi = c(i ell)(2u)^{(i ell - 1)/2} F1 + c(-i ell)(2u)^{(-i ell - 1)/2} F2,
    with F1, F2 Gauss series in 1/u^2."""
    ell = np.asarray(ell, dtype=float)[None, :]
    u = u[:, None]
    w = 1 / (u * u)
    cp = c_function(1j * ell)
    cm = c_function(-1j * ell)
    F1 = _series_vec(0.25 - 0.25j * ell, 0.75 - 0.25j * ell, 1 - 0.5j * ell, w)
    F2 = _series_vec(0.25 + 0.25j * ell, 0.75 + 0.25j * ell, 1 + 0.5j * ell, w)
    lg = np.log(2 * u)
    return cp * np.exp((0.5j * ell - 0.5) * lg) * F1 + cm * np.exp((-0.5j * ell - 0.5) * lg) * F2


U_FAR = 3.0
ELL_FAR_MIN = 1e-3


def spherical_fn(ell, u, route="auto"):
    """phi_{i ell} at points with K_C-invariant u = z . x_o; returns shape (len(u), len(ell)).

    The function is the analytic continuation of 2F1((1+i ell)/2, (1-i ell)/2; 1; (1-u)/2)
    to C minus (-inf, -1].  Inside |1-u| <= 1 the power series is used; outside,
    the value is continued along the Legendre differential equation.
    """
    ell = np.atleast_1d(np.asarray(ell, dtype=float))
    u = np.atleast_1d(np.asarray(u, dtype=complex))
    if np.any((u.imag == 0) & (u.real <= -1)):
        raise BranchCutHit("u on the cut (-inf, -1]")
    out = np.empty((u.size, ell.size), dtype=complex)
    near = np.abs(1 - u) <= 1.0
    if route == "hyp":
        if not np.all(near):
            raise ValueError("hyp route needs |1-u| <= 1")
        return _phi_hyp(ell, u)[0]
    if route == "ode":
        near = np.zeros(u.shape, bool)
        mid = np.abs(1 - u) <= 0.5
        if np.any(mid):
            out[mid] = _phi_hyp(ell, u[mid])[0]
        rest = ~mid
        if np.any(rest):
            out[rest] = _phi_ode(ell, u[rest], start_radius=0.5)
        return out
    if route == "infinity":
        return _phi_infinity(ell, u)
    far = (np.abs(u) >= U_FAR) & ~near
    mid = ~near & ~far
    if np.any(near):
        out[near] = _phi_hyp(ell, u[near])[0]
    if np.any(mid):
        out[mid] = _phi_ode(ell, u[mid])
    if np.any(far):
        big = ell >= ELL_FAR_MIN
        idx = np.nonzero(far)[0]
        if np.any(big):
            out[np.ix_(idx, np.nonzero(big)[0])] = _phi_infinity(ell[big], u[far])
        if np.any(~big):
            out[np.ix_(idx, np.nonzero(~big)[0])] = _phi_ode(ell[~big], u[far])
    return out


def spherical_fn_laplace(ell, z, n_theta=256):
    """phi_{i ell}(z) = (1/2pi) int_0^{2pi} (xi_theta . z)^{-(1+i ell)/2} dtheta,
    xi_theta = (1, sin theta, cos theta); periodic trapezoid rule."""
    ell = np.atleast_1d(np.asarray(ell, dtype=float))
    z = np.asarray(z, dtype=complex)
    th = 2 * np.pi * np.arange(n_theta) / n_theta
    p = z[0] - z[1] * np.sin(th) - z[2] * np.cos(th)
    if np.any(p.real <= 0):
        raise BranchCutHit("Laplace integrand leaves the right half plane")
    return np.mean(np.exp(-0.5 * (1 + 1j * ell[None, :]) * np.log(p)[:, None]), axis=0)


def spherical_fn_k_integral(ell, x, n_theta=256):
    """phi_lambda(a^2) = int_K |a(k a)^{rho+lambda}|^2 dk at a = exp(i x Z), |x| < pi/2.

    a(k a)^{rho+lambda} = (xi_theta . a x_o)^{-(1+i ell)/2} with a x_o = (cos x, 0, i sin x).
    """
    ell = np.atleast_1d(np.asarray(ell, dtype=float))
    th = 2 * np.pi * np.arange(n_theta) / n_theta
    p = np.cos(x) - 1j * np.sin(x) * np.cos(th)
    v = np.exp(-0.5 * (1 + 1j * ell[None, :]) * np.log(p)[:, None])
    return np.mean(np.abs(v) ** 2, axis=0)


def phi_y_o_gauss(ell):
    """phi_{i ell}(y_o) = 2F1(1/4 + i ell/4, 1/4 - i ell/4; 1; 1) by the Gauss formula."""
    ell = np.atleast_1d(np.asarray(ell, dtype=float))
    return np.array([gauss_2f1(0.25 + 0.25j * l, 0.25 - 0.25j * l, 1.0, 1.0) for l in ell])


def phi_y_o_beta(ell):
    """Beta form of phi(y_o): 2 / B((3 - i ell)/4, (3 + i ell)/4)."""
    ell = np.asarray(ell, dtype=float)
    return 2.0 / cbeta((3 - 1j * ell) / 4, (3 + 1j * ell) / 4)


def phi_y_o_quarter(ell):
    """The quarter-size variant 1/(2B(...)) = phi(y_o)/4, kept for comparison."""
    ell = np.asarray(ell, dtype=float)
    return 0.5 / cbeta((3 - 1j * ell) / 4, (3 + 1j * ell) / 4)


# ----------------------------------------------------------- dual-transform constants

def cosh_power_integral(ell):
    """Closed form of int_R (cosh 2t)^{-(1+i ell)/2} dt = B(1/2, (1+i ell)/4)/2."""
    ell = np.asarray(ell, dtype=float)
    return 0.5 * cbeta(0.5, (1 + 1j * ell) / 4)


def dual_constants(ell):
    """(C1, C2) from Gamma/Beta products only; C2 uses the 1/(2B) normalization."""
    ell = np.asarray(ell, dtype=float)
    C1 = (np.exp(np.pi / 4 * (ell - 1j)) * cbeta(0.5, (1 + 1j * ell) / 4)
          + np.exp(-np.pi / 4 * (ell + 1j)) * cbeta(0.5, (1 - 1j * ell) / 4))
    C2 = 0.5 / (cbeta((3 - 1j * ell) / 4, (3 + 1j * ell) / 4) * np.abs(c_function(1j * ell)) ** 2)
    return C1, C2


def c1_gamma_route(ell):
    """c1 = C1 * (Gamma(1/2)/(Gamma(3/4 - i ell/4) Gamma(3/4 + i ell/4)))^{-1}."""
    ell = np.asarray(ell, dtype=float)
    C1, _ = dual_constants(ell)
    r = cgamma(0.5) / (cgamma(0.75 - 0.25j * ell) * cgamma(0.75 + 0.25j * ell))
    return C1 / r


def c1_coth(ell):
    """(pi/i)(2 + coth(pi(ell - i)/4) + coth(-pi(ell + i)/4))."""
    ell = np.asarray(ell, dtype=complex)
    coth = lambda w: 1 / np.tanh(w)
    return np.pi / 1j * (2 + coth(np.pi * (ell - 1j) / 4) + coth(-np.pi * (ell + 1j) / 4))


def multiplier_g(ell):
    """Inversion multiplier g defined by g * c1 = |c(i ell)|^{-2}.

    Closed form: (i ell/4) sinh(pi ell/2) / (cosh(pi ell/2) + i); smooth, g(0) = 0.
    """
    ell = np.asarray(ell, dtype=float)
    x = 0.5 * np.pi * ell
    big = np.abs(x) > 30
    xs = np.where(big, 0.0, x)
    g = 0.25j * ell * np.sinh(xs) / (np.cosh(xs) + 1j)
    # large |ell|: sinh/(cosh + i) -> sign(ell) * (1 - i e^{-|x|}*2 ...) ~ sign(ell)
    return np.where(big, 0.25j * ell * np.sign(ell) * (1 - 2j * np.exp(-np.abs(x))), g)


def multiplier_g_coth(ell):
    """The closed form (i ell/4) sinh(pi ell/2)/(1 - cosh(pi ell/2)) = -(i ell/4) coth(pi ell/4),
    with the removable singularity at 0 filled by its limit -i/pi."""
    ell = np.atleast_1d(np.asarray(ell, dtype=float))
    out = np.empty(ell.shape, dtype=complex)
    small = np.abs(ell) < 1e-3
    x = np.pi * ell[small] / 4
    # x coth x = 1 + x^2/3 - x^4/45
    out[small] = -1j / np.pi * (1 + x ** 2 / 3 - x ** 4 / 45)
    e = ell[~small]
    out[~small] = -0.25j * e / np.tanh(np.pi * e / 4)
    return out


def kappa_ratio(ell, g=multiplier_g):
    """kappa(ell) = C2 / (g C1)."""
    C1, C2 = dual_constants(ell)
    return C2 / (g(ell) * C1)


# ----------------------------------------------------------- spectral D operator

def weyl_exponential_sum(ell, z):
    """sum_{w in W} e^{lambda(w zZ)} = 2 cos(ell z/2) for lambda = i ell rho."""
    ell = np.asarray(ell, dtype=float)
    return 2 * np.cos(np.multiply.outer(np.asarray(z, dtype=complex), ell) * RHO_Z)


def d_operator(h, z, nodes=None):
    """DF(zZ) = int_0^inf h(ell) sum_w e^{lambda(w zZ)} |c|^{-2} dell for a profile h.

    ``h`` is a callable (e.g. |profile|^2) and ``nodes`` its (ell, weights) rule.
    """
    ell, w = nodes
    return np.sum(w * h(ell) * weyl_exponential_sum(ell, z) * plancherel_density(ell), axis=-1)
