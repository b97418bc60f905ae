"""Rank-one hyperboloid models: SO_e(1,n), the quadrics X_C and Y, null cones and
the Cauchy kernel."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class GeometryError(ValueError):
    pass


class ShapeMismatch(GeometryError):
    pass


class NonOrthogonalBlock(GeometryError):
    pass


class BranchCutHit(GeometryError):
    pass


class NearSingularKernel(GeometryError):
    pass


class OutsideDenseSet(GeometryError):
    pass


@dataclass(frozen=True)
class RankOneModel:
    n: int = 2

    def __post_init__(self):
        if self.n < 2:
            raise GeometryError("n must be >= 2")

    @property
    def dim(self):
        return self.n + 1

    @property
    def rho(self):
        return 0.5 * (self.n - 1)

    @property
    def k(self):
        if self.n % 2:
            raise GeometryError("k = n/2 needs n even")
        return self.n // 2

    @property
    def J(self):
        return np.diag([1.0] + [-1.0] * self.n)

    @property
    def x_o(self):
        return _e(self.dim, 0).astype(complex)

    @property
    def xi_o(self):
        return (_e(self.dim, 0) + _e(self.dim, self.n)).astype(complex)

    @property
    def y_o(self):
        return 1j * _e(self.dim, self.n)

    @property
    def weyl(self):
        """The element w = diag(1_{n-1}, -1_2) acting as -1 on the Lie algebra of A."""
        return GroupElement(np.diag([1.0] * (self.n - 1) + [-1.0, -1.0]).astype(complex), real=True)


def _e(d, i):
    v = np.zeros(d)
    v[i] = 1.0
    return v


@dataclass(frozen=True)
class GroupElement:
    m: np.ndarray
    real: bool = False

    def __post_init__(self):
        m = np.asarray(self.m, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ShapeMismatch("group element must be square")
        if self.real and np.max(np.abs(m.imag)) > 1e-12:
            raise GeometryError("real element has complex entries")
        object.__setattr__(self, "m", m)

    @property
    def dim(self):
        return self.m.shape[0]

    def __matmul__(self, other):
        if isinstance(other, GroupElement):
            return GroupElement(self.m @ other.m, real=self.real and other.real)
        return np.asarray(other, dtype=complex) @ self.m.T

    def inv(self):
        J = np.diag([1.0] + [-1.0] * (self.dim - 1))
        return GroupElement(J @ self.m.T @ J, real=self.real)

    def check(self, tol=1e-12):
        J = np.diag([1.0] + [-1.0] * (self.dim - 1))
        return (np.max(np.abs(self.m.T @ J @ self.m - J)) <= tol * max(1.0, np.max(np.abs(self.m)) ** 2)
                and abs(np.linalg.det(self.m) - 1) <= 1e-10 * max(1.0, np.max(np.abs(self.m)) ** self.dim))


def a_matrix(z, n):
    m = np.eye(n + 1, dtype=complex)
    c, s = np.cosh(complex(z)), np.sinh(complex(z))
    m[0, 0] = m[n, n] = c
    m[0, n] = m[n, 0] = s
    return m


def n_matrix(v, n):
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != n - 1:
        raise ShapeMismatch(f"n_v needs {n - 1} parameters, got {v.size}")
    q = 0.5 * np.dot(v, v)
    m = np.eye(n + 1, dtype=complex)
    m[0, 0], m[0, n], m[n, 0], m[n, n] = 1 + q, -q, q, 1 - q
    m[0, 1:n] = v
    m[n, 1:n] = v
    m[1:n, 0] = v
    m[1:n, n] = -v
    return m


def k_matrix(R, n):
    R = np.asarray(R, dtype=float)
    if R.shape != (n, n):
        raise ShapeMismatch(f"k_R needs an {n}x{n} block")
    if np.max(np.abs(R.T @ R - np.eye(n))) > 1e-10 or np.linalg.det(R) < 0:
        raise NonOrthogonalBlock("block is not in SO(n)")
    m = np.eye(n + 1, dtype=complex)
    m[1:, 1:] = R
    return m


def make_generator(kind: str, param, model: RankOneModel) -> GroupElement:
    n = model.n
    if kind == "a":
        return GroupElement(a_matrix(param, n), real=np.isreal(param))
    if kind == "n":
        return GroupElement(n_matrix(param, n), real=bool(np.all(np.isreal(param))))
    if kind == "k":
        return GroupElement(k_matrix(param, n), real=True)
    raise GeometryError(f"unknown generator kind {kind!r}")


def box(z):
    """Lorentz square z.z (vectorized over leading axes)."""
    return minkowski_pair(z, z)


def minkowski_pair(z, w):
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if z.shape[-1] != w.shape[-1]:
        raise ShapeMismatch("tuples of different length")
    return z[..., 0] * w[..., 0] - np.sum(z[..., 1:] * w[..., 1:], axis=-1)


# ------------------------------------------------------------------ Iwasawa

@dataclass(frozen=True)
class IwasawaFactors:
    v: np.ndarray
    w: complex


def iwasawa_point(z) -> IwasawaFactors:
    """Closed-form z = n_v a_w . x_o on the quadric: e^{-w} = z_0 - z_n, v = e^w (z_1..z_{n-1})."""
    z = np.asarray(z, dtype=complex)
    d = z[0] - z[-1]
    if d.imag == 0 and d.real <= 0:
        raise BranchCutHit(f"z_0 - z_n = {d} lies on the nonpositive real axis")
    w = -np.log(d)
    return IwasawaFactors(np.exp(w) * z[1:-1], complex(w))


def iwasawa_arrays(z):
    """Vectorized form of ``iwasawa_point`` over leading axes; returns (v, w)."""
    z = np.asarray(z, dtype=complex)
    d = z[..., 0] - z[..., -1]
    if np.any((d.imag == 0) & (d.real <= 0)):
        raise BranchCutHit("z_0 - z_n on the nonpositive real axis")
    w = -np.log(d)
    return np.exp(w)[..., None] * z[..., 1:-1], w


def reconstruct(f: IwasawaFactors, model: RankOneModel):
    n = model.n
    return n_matrix(f.v, n) @ a_matrix(f.w, n) @ model.x_o


# -------------------------------------------------------------- horospheres

@dataclass(frozen=True)
class HoroParam:
    """A null vector, optionally with coset coordinates zeta = g . exp(itZ) . xi_o."""

    zeta: np.ndarray
    g: GroupElement | None = None
    t: float | None = None

    def __post_init__(self):
        z = np.asarray(self.zeta, dtype=complex)
        object.__setattr__(self, "zeta", z)
        if np.max(np.abs(z)) == 0:
            raise GeometryError("zero vector is not a horosphere parameter")
        if abs(box(z)) > 1e-12 * max(1.0, np.max(np.abs(z)) ** 2):
            raise GeometryError("horosphere parameter is not a null vector")

    @property
    def has_coset(self):
        return self.g is not None and self.t is not None


def horo_from_coset(g: GroupElement, t: float, model: RankOneModel) -> HoroParam:
    if abs(t) >= np.pi / 2:
        raise GeometryError("|t| must be < pi/2 for a point of Xi_+")
    zeta = np.exp(1j * t) * (g.m @ model.xi_o)
    return HoroParam(zeta, g, float(t))


def horosphere_contains(xi: HoroParam, z, tol=1e-9) -> bool:
    return bool(abs(minkowski_pair(xi.zeta, z) - 1) <= tol)


def horosphere_contains_transposed(xi: HoroParam, z, model: RankOneModel, tol=1e-9) -> bool:
    """Incidence tested on the point side: write z = g . x_o and pair g^{-1}xi with x_o."""
    f = iwasawa_point(z)
    g = GroupElement(n_matrix(f.v, model.n) @ a_matrix(f.w, model.n))
    return bool(abs(minkowski_pair(g.inv().m @ xi.zeta, model.x_o) - 1) <= tol)


def cauchy_kernel(xi, y, guard=1e-8):
    """1/(1 - xi.y); raises NearSingularKernel if the denominator is below ``guard``."""
    zeta = xi.zeta if isinstance(xi, HoroParam) else np.asarray(xi, dtype=complex)
    den = 1 - minkowski_pair(zeta, y)
    if np.any(np.abs(den) < guard):
        raise NearSingularKernel(f"|1 - xi.y| = {np.min(np.abs(den)):.3e}")
    return 1 / den


def cauchy_kernel_coset(g: GroupElement):
    """Kernel as a function on G: K(g) = 1/(1 - i(g_{0n} - g_{nn}))."""
    m = g.m
    return 1 / (1 - 1j * (m[0, -1] - m[-1, -1]))


def horo_log_a(xi: HoroParam):
    """The complex A-coordinate z with xi = k a_z . xi_o (z = log zeta_0, principal branch)."""
    z0 = xi.zeta[0]
    if z0.imag == 0 and z0.real <= 0:
        raise BranchCutHit("zeta_0 on the nonpositive real axis")
    return complex(np.log(z0))


# ----------------------------------------------------------------- sampling

def random_rotation(n, rng):
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_group_element(model: RankOneModel, rng, s_max=1.0, v_max=1.0) -> GroupElement:
    n = model.n
    m = (k_matrix(random_rotation(n, rng), n)
         @ a_matrix(rng.uniform(-s_max, s_max), n)
         @ n_matrix(rng.uniform(-v_max, v_max, n - 1), n))
    return GroupElement(m.real.astype(complex), real=True)


def sample_Y(model: RankOneModel, count: int, seed: int, t_range=(-2.0, 2.0), v_max=2.0,
             weyl=True):
    """Points a_t n_v w . y_o with t, v uniform in the given ranges and w in {1, eps}."""
    rng = np.random.default_rng(seed)
    n = model.n
    out = []
    W = model.weyl.m
    for _ in range(count):
        t = rng.uniform(*t_range) if t_range[1] > t_range[0] else t_range[0]
        v = rng.uniform(-v_max, v_max, n - 1) if v_max > 0 else np.zeros(n - 1)
        y = model.y_o
        if weyl and rng.integers(2):
            y = W @ y
        out.append(a_matrix(t, n) @ n_matrix(v, n) @ y)
    return out


def sample_Xi(model: RankOneModel, c: float, count: int, seed: int, s_max=1.0, v_max=1.0):
    """Points g . exp(itZ) . xi_o with |t| <= c and g = k a n random in G."""
    if not 0 < c <= np.pi / 2:
        raise GeometryError("need 0 < c <= pi/2")
    rng = np.random.default_rng(seed)
    c = min(c, np.nextafter(np.pi / 2, 0))
    out = []
    for _ in range(count):
        g = random_group_element(model, rng, s_max, v_max)
        out.append(horo_from_coset(g, rng.uniform(-c, c), model))
    return out


# ---------------------------------------------------- H-spherical vector f_lambda

def eval_f_lambda(lam, model: RankOneModel, w: int | None = 0, a: complex | None = 0.0, h=None):
    """f_lambda(h w a . xi_o) = (w^{-1} z_H w)^{lambda - rho} a^{lambda - rho}.

    ``lam`` is in rho-coordinates (lam = 1 means rho), ``w`` in {0, 1} picks the
    Weyl element, ``a`` is the complex A-coordinate (a = exp(aZ)) with
    |Im a| < pi/2.  ``h`` is accepted for the coordinates but f_lambda is
    H-invariant.
    """
    if w is None or a is None:
        raise OutsideDenseSet("coordinates (h, w, a) are required")
    if abs(complex(a).imag) >= np.pi / 2:
        raise OutsideDenseSet("a must lie in the tube |Im| < pi/2")
    sgn = 1 if w == 0 else -1
    mu = (complex(lam) - 1) * model.rho
    return np.exp(mu * (sgn * 1j * np.pi / 2 + complex(a)))
