"""Hardy spaces on tube domains T(Omega) = V + i Omega over Weyl-orbit polytopes.

Measures on V and V* are (2 pi)^{-d/2} times Lebesgue, so that
F f(lam) = int f(x) e^{-i<lam, x>} dx and f(z) = int F(lam) e^{i<z, lam>} dlam.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from .numerics import composite_gl


class TubeError(ValueError):
    pass


class NotAGroup(TubeError):
    pass


# ----------------------------------------------------------------- models

@dataclass(frozen=True, eq=False)
class ReflectionModel:
    """A finite group W of orthogonal d x d matrices with a base point y_o."""

    W: tuple
    y_o: tuple
    experimental: bool = False

    def __post_init__(self):
        W = tuple(np.atleast_2d(np.asarray(s, dtype=float)) for s in self.W)
        y = np.atleast_1d(np.asarray(self.y_o, dtype=float))
        d = y.size
        if not np.any(y):
            raise TubeError("y_o must be nonzero")
        for s in W:
            if s.shape != (d, d) or np.max(np.abs(s.T @ s - np.eye(d))) > 1e-12:
                raise TubeError("W must consist of orthogonal d x d matrices")
        object.__setattr__(self, "W", W)
        object.__setattr__(self, "y_o", y)
        self.table  # validates closure

    @property
    def d(self):
        return self.y_o.size

    @property
    def order(self):
        return len(self.W)

    def index(self, m, tol=1e-10):
        for i, s in enumerate(self.W):
            if np.max(np.abs(s - m)) < tol:
                return i
        raise NotAGroup("product or inverse left the group")

    @cached_property
    def table(self):
        """table[i, j] = index of W[i] W[j]."""
        n = self.order
        t = np.empty((n, n), dtype=int)
        for i in range(n):
            for j in range(n):
                t[i, j] = self.index(self.W[i] @ self.W[j])
        if not any(np.allclose(s, np.eye(self.d)) for s in self.W):
            raise NotAGroup("identity missing")
        return t

    @cached_property
    def inverse(self):
        return np.array([self.index(s.T) for s in self.W])

    @cached_property
    def extreme_points(self):
        pts = np.array([s @ self.y_o for s in self.W])
        return np.unique(np.round(pts, 12), axis=0)

    @cached_property
    def _halfspaces(self):
        if self.d == 1:
            r = abs(self.y_o[0])
            return np.array([[1.0, -r], [-1.0, -r]])
        from scipy.spatial import ConvexHull
        return ConvexHull(self.extreme_points).equations

    def contains(self, y):
        """Membership in the open polytope Omega (vectorized over leading axes)."""
        y = np.asarray(y, dtype=float).reshape(-1, self.d)
        H = self._halfspaces
        return np.all(y @ H[:, :-1].T + H[:, -1] < 0, axis=1)


def line_model(y_o=1.0) -> ReflectionModel:
    """V = R, W = {1, -1}, Omega = (-|y_o|, |y_o|)."""
    return ReflectionModel((np.eye(1), -np.eye(1)), (float(y_o),))


def sign_flip_model(y_o=(1.0, 1.0)) -> ReflectionModel:
    """V = R^2 with W the four sign changes.  W is reducible here, so the model
    is outside the irreducible setting and marked experimental."""
    W = tuple(np.diag([a, b]) for a in (1.0, -1.0) for b in (1.0, -1.0))
    return ReflectionModel(W, tuple(y_o), experimental=True)


# -------------------------------------------------------------- multipliers

@dataclass(frozen=True, eq=False)
class Multiplier:
    """A unimodular cocycle m(s, lam) on W x V*; ``fn(i, lam)`` takes the group index."""

    model: ReflectionModel
    fn: Callable | None = None

    def __call__(self, i, lam):
        lam = np.asarray(lam, dtype=float)
        if self.fn is None:
            return np.ones(lam.shape[:-1], dtype=complex)
        return np.asarray(self.fn(i, lam), dtype=complex)

    def act(self, i, lam):
        return np.asarray(lam, dtype=float) @ self.model.W[i].T

    def cocycle_defect(self, lam):
        """max |m(sw, lam) - m(s, w lam) m(w, lam)| over the group table."""
        M = self.model
        worst = 0.0
        for i in range(M.order):
            for j in range(M.order):
                lhs = self(M.table[i, j], lam)
                rhs = self(i, self.act(j, lam)) * self(j, lam)
                worst = max(worst, float(np.max(np.abs(lhs - rhs))))
        return worst

    def modulus_defect(self, lam):
        return max(float(np.max(np.abs(np.abs(self(i, lam)) - 1))) for i in range(self.model.order))


def trivial_multiplier(model: ReflectionModel) -> Multiplier:
    return Multiplier(model, None)


# ----------------------------------------------------------- COSH and COS^m

def tube_cosh(y, lam, model: ReflectionModel):
    """COSH_y(lam) = (1/|W|) sum_s e^{-2 <y, s lam>} (vectorized over lam (..., d))."""
    y = np.asarray(y, dtype=float).reshape(model.d)
    lam = np.asarray(lam, dtype=float)
    if lam.ndim == 0 or lam.shape[-1] != model.d:
        lam = lam[..., None]
    return sum(np.exp(-2 * (lam @ s.T) @ y) for s in model.W) / model.order


def cos_m(w, lam, m: Multiplier):
    """COS^m_w(lam) = (1/|W|) sum_s m(s, lam)^{-1} e^{i <w, s lam>} for complex w."""
    M = m.model
    w = np.asarray(w, dtype=complex).reshape(M.d)
    lam = np.asarray(lam, dtype=float)
    out = 0j
    for i, s in enumerate(M.W):
        out = out + np.exp(1j * ((lam @ s.T) @ w)) / m(i, lam)
    return out / M.order


# -------------------------------------------------------------- functions

def _norm_const(d):
    return (2 * np.pi) ** (-d / 2)


@dataclass(frozen=True, eq=False)
class TubeFunction:
    """f(z) = int F(lam) e^{i<z, lam>} dlam for a spectral profile F on [-radius, radius]^d."""

    profile: Callable
    model: ReflectionModel
    radius: float = 30.0
    panels: int = 60
    order: int = 20

    @cached_property
    def nodes(self):
        x, w = composite_gl(np.linspace(-self.radius, self.radius, self.panels + 1), self.order)
        d = self.model.d
        if d == 1:
            return x[:, None], w * _norm_const(1)
        grids = np.meshgrid(*([x] * d), indexing="ij")
        pts = np.stack([g.ravel() for g in grids], axis=-1)
        wts = np.ones(1)
        for _ in range(d):
            wts = np.multiply.outer(wts, w).ravel()
        return pts, wts * _norm_const(d)

    @cached_property
    def values(self):
        return np.asarray(self.profile(self.nodes[0]), dtype=complex)

    def __call__(self, z):
        """Evaluate at points z of shape (..., d)."""
        z = np.asarray(z, dtype=complex)
        zz = z.reshape(-1, self.model.d)
        lam, w = self.nodes
        out = np.exp(1j * zz @ lam.T) @ (w * self.values)
        return out.reshape(z.shape[:-1])

    def integrate(self, weight):
        """int F-dependent weight(lam) dlam on the profile's rule."""
        lam, w = self.nodes
        return np.sum(w * weight(lam))


def tube_function(profile, model, radius=30.0, panels=60, order=20) -> TubeFunction:
    return TubeFunction(profile, model, radius, panels, order)


def tube_hardy_norm(F: TubeFunction) -> float:
    """Squared Hardy norm int |F|^2 COSH dlam."""
    c = lambda lam: np.abs(F.values) ** 2 * tube_cosh(F.model.y_o, lam, F.model)
    return float(F.integrate(c).real)


def line_norm_spectral(F: TubeFunction, y) -> float:
    """int_V |f(x + iy)|^2 dx computed on the spectral side: int |F|^2 e^{-2<y, lam>} dlam."""
    y = np.asarray(y, dtype=float).reshape(F.model.d)
    return float(F.integrate(lambda lam: np.abs(F.values) ** 2 * np.exp(-2 * lam @ y)).real)


def line_norm_direct(F: TubeFunction, y, half_width=20.0, panels=160, order=16) -> float:
    """int_V |f(x + iy)|^2 dx by quadrature of the evaluated function (d = 1).

    The evaluator resolves e^{i x lam} only for moderate |x|, so ``half_width``
    should stay within the decay scale of f.
    """
    if F.model.d != 1:
        raise TubeError("direct line integral implemented for d = 1")
    x, w = composite_gl(np.linspace(-half_width, half_width, panels + 1), order)
    vals = F(((x + 1j * float(np.ravel(y)[0])))[:, None])
    return float(np.sum(w * np.abs(vals) ** 2) * _norm_const(1))


def hardy_norm_sup(F: TubeFunction, eps=(0.2, 0.1, 0.05)):
    """sup over y in {(1 - e) W y_o} of the W-averaged line norm, per e in ``eps``."""
    M = F.model
    out = []
    for e in eps:
        vals = [F.integrate(lambda lam: np.abs(F.values) ** 2 * tube_cosh((1 - e) * p, lam, M)).real
                for p in M.extreme_points]
        out.append(float(max(vals)))
    return np.array(out)


# ------------------------------------------------------------------ kernels

def kernel_profile(w, m: Multiplier):
    """F(K_w|_V) = conj(COS^m_w) / COSH."""
    M = m.model
    return lambda lam: np.conj(cos_m(w, lam, m)) / tube_cosh(M.y_o, lam, M)


def tube_kernel(z, w, m: Multiplier, n_panels=None, order=20):
    """K(z, w) = int COS^m_z(lam) conj(COS^m_w(lam)) / COSH(lam) dlam."""
    M = m.model
    z = np.asarray(z, dtype=complex).reshape(M.d)
    w = np.asarray(w, dtype=complex).reshape(M.d)
    if not (M.contains(z.imag)[0] and M.contains(w.imag)[0]):
        raise TubeError("points outside the tube")
    # decay rate of the integrand along the worst direction
    rate = 2 * np.min(np.abs(M.y_o)) - np.max(np.abs(z.imag)) - np.max(np.abs(w.imag))
    if M.d == 1:
        rate = 2 * abs(M.y_o[0]) - abs(z.imag[0]) - abs(w.imag[0])
    if rate <= 0:
        raise TubeError("points outside the tube")
    R = 40.0 / rate
    panels = n_panels or max(20, int(np.ceil(2 * R / 0.5)))
    if M.d > 1:
        panels = n_panels or max(16, int(np.ceil(2 * R / 2.0)))
    F = TubeFunction(lambda lam: cos_m(z, lam, m) * np.conj(cos_m(w, lam, m)) / tube_cosh(M.y_o, lam, M),
                     M, R, panels, order)
    return complex(F.integrate(lambda lam: F.values))


def line_kernel_closed_form(z, w):
    """Closed form for V = R, W = {+-1}, y_o = 1 and trivial multiplier."""
    z = np.asarray(z, dtype=complex)
    wb = np.conj(np.asarray(w, dtype=complex))
    return (np.sqrt(np.pi / 2) * np.cosh(np.pi * z / 4) * np.cosh(np.pi * wb / 4)
            / (np.cosh(np.pi * z / 2) + np.cosh(np.pi * wb / 2)))


def inner_product(F: TubeFunction, G_profile) -> complex:
    """<f, g> = int F conj(G) COSH dlam with G given as a profile on V*."""
    M = F.model
    return complex(F.integrate(lambda lam: F.values * np.conj(G_profile(lam)) * tube_cosh(M.y_o, lam, M)))


def project_tau_invariant(F: TubeFunction, m: Multiplier) -> TubeFunction:
    """(1/|W|) sum_s tau(s) F with tau(s)F(lam) = m(s^{-1}, lam) F(s^{-1} lam)."""
    M = m.model
    prof = F.profile

    def avg(lam):
        lam = np.asarray(lam, dtype=float)
        out = 0j
        for i in range(M.order):
            j = M.inverse[i]
            out = out + m(j, lam) * prof(lam @ M.W[j].T)
        return out / M.order

    return TubeFunction(avg, M, F.radius, F.panels, F.order)


def tau_defect(F: TubeFunction, m: Multiplier) -> float:
    """max_s max |tau(s)F - F| on the profile's nodes."""
    M = m.model
    lam = F.nodes[0]
    worst = 0.0
    for i in range(M.order):
        j = M.inverse[i]
        worst = max(worst, float(np.max(np.abs(m(j, lam) * F.profile(lam @ M.W[j].T) - F.values))))
    return worst
