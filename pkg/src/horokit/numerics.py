"""Quadrature and complex special functions (Gamma, Beta, Gauss 2F1)."""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

import numpy as np


class NumericsError(ArithmeticError):
    pass


class NonConvergence(NumericsError):
    pass


class NonFinite(NumericsError):
    pass


class PoleAtNonpositiveInteger(NumericsError):
    pass


class DivergentAtOne(NumericsError):
    pass


class SeriesNonConvergence(NumericsError):
    pass


# ---------------------------------------------------------------- quadrature

@dataclass(frozen=True)
class QuadratureSpec:
    """Integration domain and tolerances.

    ``domain`` is a list of ``(a, b)`` pairs, one per coordinate; endpoints may
    be infinite, in which case the range is cut at ``tail_cutoff`` and a tail
    bound ``|f(cut)| / decay_rate`` is added to the error estimate.
    """

    domain: tuple = ((0.0, 1.0),)
    rel_tol: float = 1e-10
    abs_tol: float = 1e-13
    max_subdivisions: int = 2000
    tail_cutoff: float = 40.0
    decay_rate: float | None = None

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if not self.tail_cutoff > 0:
            raise ValueError("tail_cutoff must be positive")
        object.__setattr__(self, "domain", tuple(tuple(map(float, d)) for d in self.domain))

    def with_(self, **kw) -> "QuadratureSpec":
        d = dict(domain=self.domain, rel_tol=self.rel_tol, abs_tol=self.abs_tol,
                 max_subdivisions=self.max_subdivisions, tail_cutoff=self.tail_cutoff,
                 decay_rate=self.decay_rate)
        d.update(kw)
        return QuadratureSpec(**d)


@dataclass(frozen=True)
class QuadResult:
    value: complex
    error: float
    evaluations: int = field(default=0, compare=False)

    @property
    def re(self):
        return self.value.real

    @property
    def im(self):
        return self.value.imag


# Gauss-Kronrod 7/15 abscissae and weights
_XK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000])
_WK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327])
_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
_WKF = np.concatenate([_WK[:-1], _WK[::-1]])
_WGF = np.zeros(15)
_WGF[1:14:2] = np.concatenate([_WG[:-1], _WG[::-1]])


def _gk15(f, a, b):
    c, h = 0.5 * (a + b), 0.5 * (b - a)
    y = np.asarray(f(c + h * _NODES), dtype=complex)
    if not np.all(np.isfinite(y)):
        raise NonFinite(f"integrand not finite on [{a}, {b}]")
    k = h * np.dot(_WKF, y)
    g = h * np.dot(_WGF, y)
    return k, abs(k - g)


def _truncate(a, b, spec, f):
    tail = 0.0
    lo, hi = a, b
    for end, sgn in ((a, -1), (b, 1)):
        if math.isinf(end):
            cut = sgn * spec.tail_cutoff
            if sgn < 0:
                lo = cut
            else:
                hi = cut
            if spec.decay_rate:
                v = np.asarray(f(np.array([cut])), dtype=complex)[0]
                tail += abs(v) / spec.decay_rate
    return lo, hi, tail


def quad1d(f, a, b, spec: QuadratureSpec | None = None, points=()) -> QuadResult:
    """Adaptive Gauss-Kronrod (7/15) for a vectorized complex integrand on [a, b]."""
    spec = spec or QuadratureSpec()
    lo, hi, tail = _truncate(a, b, spec, f)
    cuts = sorted({lo, hi, *[p for p in points if lo < p < hi]})
    heap, total, err, nev = [], 0j, 0.0, 0
    for u, v in zip(cuts[:-1], cuts[1:]):
        val, e = _gk15(f, u, v)
        nev += 15
        heapq.heappush(heap, (-e, u, v, val))
        total += val
        err += e
    n = len(heap)
    while err > max(spec.rel_tol * abs(total), spec.abs_tol):
        if n >= spec.max_subdivisions:
            raise NonConvergence(f"subdivision budget exhausted (err={err:.3e}, value={total})")
        e0, u, v, val = heapq.heappop(heap)
        m = 0.5 * (u + v)
        v1, e1 = _gk15(f, u, m)
        v2, e2 = _gk15(f, m, v)
        nev += 30
        total += v1 + v2 - val
        err += e1 + e2 + e0
        heapq.heappush(heap, (-e1, u, m, v1))
        heapq.heappush(heap, (-e2, m, v, v2))
        n += 1
        # resum periodically to curb drift
        if n % 64 == 0:
            total = sum(h[3] for h in heap)
            err = sum(-h[0] for h in heap)
    return QuadResult(complex(total), float(err + tail), nev)


def integrate(f, spec: QuadratureSpec) -> QuadResult:
    """Integrate ``f`` over ``spec.domain`` (iterated adaptive rule for products).

    For a d-dimensional domain ``f`` takes d arrays of equal shape and returns
    an array of that shape.
    """
    dom = spec.domain
    if len(dom) == 1:
        return quad1d(f, *dom[0], spec)
    (a, b), rest = dom[0], dom[1:]
    inner_spec = spec.with_(domain=rest, rel_tol=spec.rel_tol * 0.1, abs_tol=spec.abs_tol * 0.1)
    errs = []

    def outer(xs):
        out = np.empty(len(xs), dtype=complex)
        for i, x in enumerate(xs):
            r = integrate(lambda *ys, x=x: f(np.full(np.shape(ys[0]), x), *ys), inner_spec)
            out[i] = r.value
            errs.append(r.error)
        return out

    r = quad1d(outer, a, b, spec)
    span = min(b - a, 2 * spec.tail_cutoff)
    return QuadResult(r.value, r.error + span * (max(errs) if errs else 0.0), r.evaluations)


def gauss_legendre(n: int, a: float, b: float):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w


def composite_gl(edges, n: int = 20):
    """Composite Gauss-Legendre nodes and weights on consecutive panels."""
    xs, ws = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        x, w = gauss_legendre(n, a, b)
        xs.append(x)
        ws.append(w)
    return np.concatenate(xs), np.concatenate(ws)


def sinh_rule(n: int, h: float, scale: float = 1.0):
    """Nodes and weights of the rule x = scale*sinh(t) on a uniform t-grid.

    Trapezoidal in t, so spectrally accurate for analytic integrands on the
    whole line with algebraic or slow exponential decay.
    """
    t = h * np.arange(-n, n + 1)
    return scale * np.sinh(t), scale * h * np.cosh(t)


# ------------------------------------------------------------ special functions

_LANCZOS_G = 7.0
_LANCZOS_P = np.array([
    0.99999999999980993, 676.5203681218851, -1259.1392167224028,
    771.32342877765313, -176.61502916214059, 12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7])


def _is_pole(z):
    return (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))


def _lgamma_right(z):
    # Lanczos approximation, valid for Re z >= 1/2
    zm = z - 1
    s = np.full(z.shape, _LANCZOS_P[0], dtype=complex)
    for i in range(1, len(_LANCZOS_P)):
        s = s + _LANCZOS_P[i] / (zm + i)
    t = zm + _LANCZOS_G + 0.5
    return 0.5 * math.log(2 * math.pi) + (zm + 0.5) * np.log(t) - t + np.log(s)


def cloggamma(z):
    """log Gamma(z) on a branch continuous in the right half plane (vectorized)."""
    z = np.asarray(z, dtype=complex)
    if np.any(_is_pole(z)):
        raise PoleAtNonpositiveInteger(f"Gamma has a pole at {z[_is_pole(z)]}")
    left = z.real < 0.5
    out = np.empty(z.shape, dtype=complex)
    out[~left] = _lgamma_right(z[~left])
    if np.any(left):
        zl = z[left]
        out[left] = math.log(math.pi) - np.log(np.sin(np.pi * zl)) - _lgamma_right(1 - zl)
    return out


def cgamma(z):
    """Complex Gamma function: Lanczos (g=7, n=9) plus reflection."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if np.any(_is_pole(z)):
        raise PoleAtNonpositiveInteger(f"Gamma has a pole at {z[_is_pole(z)]}")
    left = z.real < 0.5
    out = np.empty(z.shape, dtype=complex)
    out[~left] = np.exp(_lgamma_right(z[~left]))
    if np.any(left):
        zl = z[left]
        out[left] = np.pi / (np.sin(np.pi * zl) * np.exp(_lgamma_right(1 - zl)))
    return out[0] if scalar else out


def cbeta(a, b):
    """B(a, b) = Gamma(a)Gamma(b)/Gamma(a+b), symmetric in (a, b) by construction."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    ga, gb = cgamma(a), cgamma(b)
    return (ga * gb) / cgamma(a + b)


def _series_2f1(a, b, c, x, max_terms=4000, tol=1e-16):
    term = 1.0 + 0j
    s = 1.0 + 0j
    for k in range(max_terms):
        term = term * (a + k) * (b + k) / ((c + k) * (k + 1)) * x
        s += term
        if abs(term) <= tol * abs(s) and k > 2:
            return s
        if term == 0:
            return s
    raise SeriesNonConvergence(f"2F1 series did not converge at x={x}")


def _near_int(z, eps=1e-12):
    return abs(z.imag) < eps and abs(z.real - round(z.real)) < eps


def _one_minus_x(a, b, c, x):
    d = c - a - b
    if _near_int(d):
        raise SeriesNonConvergence("c-a-b is an integer; logarithmic case not implemented")
    g = cgamma(np.array([c, d, -d, c - a, c - b, a, b]))
    t1 = g[0] * g[1] / (g[3] * g[4]) * _series_2f1(a, b, 1 - d, 1 - x)
    t2 = g[0] * g[2] / (g[5] * g[6]) * (1 - x) ** d * _series_2f1(c - a, c - b, 1 + d, 1 - x)
    return t1 + t2


def _pfaff(a, b, c, x):
    return (1 - x) ** (-a) * _series_2f1(a, c - b, c, x / (x - 1))


def gauss_2f1(a, b, c, x, method: str = "auto") -> complex:
    """Gauss hypergeometric function 2F1(a, b; c; x) for |x| <= 1 (scalar).

    ``method`` selects ``series``, ``one_minus_x`` (the c-a-b non-integer
    connection formula), ``pfaff`` or ``auto``.
    """
    a, b, c, x = complex(a), complex(b), complex(c), complex(x)
    if c.imag == 0 and c.real <= 0 and c.real == round(c.real):
        raise PoleAtNonpositiveInteger("c is a nonpositive integer")
    if x == 0:
        return 1.0 + 0j
    if x == 1:
        d = c - a - b
        if d.real <= 0:
            raise DivergentAtOne("Re(c-a-b) <= 0")
        g = cgamma(np.array([c, d, c - a, c - b]))
        return complex(g[0] * g[1] / (g[2] * g[3]))
    if abs(x) > 1 + 1e-14:
        raise ValueError("gauss_2f1 requires |x| <= 1")
    if method == "series":
        return complex(_series_2f1(a, b, c, x))
    if method == "one_minus_x":
        return complex(_one_minus_x(a, b, c, x))
    if method == "pfaff":
        return complex(_pfaff(a, b, c, x))
    if abs(x) <= 0.5:
        return complex(_series_2f1(a, b, c, x))
    cands = [(abs(x / (x - 1)), "pfaff")]
    if not _near_int(c - a - b):
        cands.append((abs(1 - x), "one_minus_x"))
    cands.append((abs(x), "series"))
    r, m = min(cands)
    if r > 0.95:
        raise SeriesNonConvergence(f"no convergent transformation near x={x}")
    return gauss_2f1(a, b, c, x, method=m)
