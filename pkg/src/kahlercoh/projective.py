"""Geometry of complex projective space CP^N.

Points are held by homogeneous coordinates.  Inner products are conjugate
linear in the first argument throughout (``np.vdot`` convention).  The
Fubini-Study form is normalized so that ``omega(1, i) = 2`` at the origin of
an affine chart, which gives CP^1 total area 2*pi.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    AccuracyError,
    ChartMismatchError,
    DegenerateGeodesicError,
    DegenerateTriangleError,
    InvalidParameterError,
    InvalidPointError,
)

DEGENERATE_TOL = 1e-9


@dataclass(frozen=True)
class QuadratureSpec:
    nodes_u: int = 16
    nodes_v: int = 16
    nodes_radial: int = 32
    nodes_angular: int = 32
    refine_limit: int = 6

    def __post_init__(self):
        for name in ("nodes_u", "nodes_v", "nodes_radial", "nodes_angular", "refine_limit"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise InvalidParameterError(f"QuadratureSpec.{name} must be a positive integer, got {value!r}")

    @classmethod
    def from_dict(cls, data: dict | None) -> "QuadratureSpec":
        return cls(**(data or {}))

    def to_dict(self) -> dict:
        return {
            "nodes_u": self.nodes_u,
            "nodes_v": self.nodes_v,
            "nodes_radial": self.nodes_radial,
            "nodes_angular": self.nodes_angular,
            "refine_limit": self.refine_limit,
        }


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """A point [z] of CP^N.  Use :func:`projective_equal` to compare."""

    coords: np.ndarray

    def __post_init__(self):
        z = np.array(self.coords, dtype=complex).reshape(-1)
        if z.size < 2:
            raise InvalidPointError("a point of CP^N needs at least two homogeneous coordinates")
        if not np.all(np.isfinite(z)) or not np.any(z):
            raise InvalidPointError(f"invalid homogeneous coordinates {z!r}")
        z.setflags(write=False)
        object.__setattr__(self, "coords", z)

    @property
    def dim(self) -> int:
        return self.coords.size - 1

    def normalized(self) -> np.ndarray:
        return self.coords / np.linalg.norm(self.coords)

    def affine(self, chart: int = 0) -> np.ndarray:
        """Inhomogeneous coordinates in the chart ``z_chart != 0``."""
        z = self.coords
        if abs(z[chart]) <= 1e-14 * np.linalg.norm(z):
            raise ChartMismatchError(f"point has vanishing coordinate {chart}")
        return np.delete(z / z[chart], chart)

    @classmethod
    def from_affine(cls, w, chart: int = 0) -> "ProjectivePoint":
        w = np.atleast_1d(np.asarray(w, dtype=complex))
        return cls(np.insert(w, chart, 1.0))

    def __repr__(self):
        return f"ProjectivePoint({np.array2string(self.coords, precision=6)})"


@dataclass(frozen=True, eq=False)
class TangentPair:
    base: ProjectivePoint
    X: np.ndarray
    Y: np.ndarray
    chart: int = 0

    def __post_init__(self):
        X = np.atleast_1d(np.asarray(self.X, dtype=complex))
        Y = np.atleast_1d(np.asarray(self.Y, dtype=complex))
        if X.shape != (self.base.dim,) or Y.shape != (self.base.dim,):
            raise ValueError("tangent vectors must have N complex components")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)


def as_point(p) -> ProjectivePoint:
    return p if isinstance(p, ProjectivePoint) else ProjectivePoint(p)


def _unit(p) -> np.ndarray:
    return as_point(p).normalized()


def overlap(p, q) -> float:
    """|<p,q>| / (|p| |q|), clipped to [0, 1]."""
    return float(min(1.0, abs(np.vdot(_unit(p), _unit(q)))))


def projective_equal(p, q, tol: float = 1e-12) -> bool:
    # sin of the angle between the lines, via 1 - cos^2 to stay accurate near 0
    u, v = _unit(p), _unit(q)
    c = abs(np.vdot(u, v))
    residual = v - np.vdot(u, v) * u
    sine = min(np.linalg.norm(residual), np.sqrt(max(0.0, 1.0 - c * c)))
    return bool(sine <= tol)


def cayley_distance(p, q) -> float:
    """Fubini-Study geodesic distance, in [0, pi/2]."""
    u, v = _unit(p), _unit(q)
    inner = np.vdot(u, v)
    # arccos is ill-conditioned near 0; use the orthogonal residual there
    sine = np.linalg.norm(v - inner * u)
    return float(np.arctan2(sine, abs(inner)))


def hermitian_metric(w: np.ndarray) -> np.ndarray:
    """Coefficients g_{i jbar} of the Fubini-Study form at affine point w."""
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    s = 1.0 + np.vdot(w, w).real
    return (s * np.eye(w.size) - np.outer(np.conj(w), w)) / s**2


def kahler_form_value(g: np.ndarray, X: np.ndarray, Y: np.ndarray) -> float:
    """i * sum g_ij (dw_i ^ dw~_j)(X, Y) with dw ^ dw~(X, Y) = X conj(Y) - Y conj(X)."""
    h = X @ g @ np.conj(Y)
    return float(-2.0 * h.imag)


def fubini_study_form(t: TangentPair) -> float:
    w = t.base.affine(t.chart)
    return kahler_form_value(hermitian_metric(w), t.X, t.Y)


def _aligned_pair(p, q):
    u, v = _unit(p), _unit(q)
    c = np.vdot(u, v)
    rho = abs(c)
    d = float(np.arctan2(np.linalg.norm(v - c * u), rho))
    if d < DEGENERATE_TOL or d > np.pi / 2 - DEGENERATE_TOL:
        raise DegenerateGeodesicError(f"Cayley distance {d!r} too close to 0 or pi/2")
    return u, v * (np.conj(c) / rho), d


def geodesic(p, q, t: float) -> ProjectivePoint:
    u, v, d = _aligned_pair(p, q)
    z = (np.sin((1.0 - t) * d) * u + np.sin(t * d) * v) / np.sin(d)
    return ProjectivePoint(z)


def _homogeneous_form(Z, Zs, Zt):
    """Pullback of the Fubini-Study form to a lifted surface, evaluated on (d/ds, d/dt).

    Works for any nonvanishing lift; vertical components drop out.
    """
    n2 = np.einsum("...k,...k->...", np.conj(Z), Z).real
    ts = np.einsum("...k,...k->...", np.conj(Zt), Zs)
    zs = np.einsum("...k,...k->...", np.conj(Z), Zs)
    tz = np.einsum("...k,...k->...", np.conj(Zt), Z)
    h = (ts * n2 - zs * tz) / n2**2
    return -2.0 * h.imag


def _side(u, v, a, s):
    sa = np.sin(a)
    B = (np.sin((1 - s) * a)[:, None] * u + np.sin(s * a)[:, None] * v) / sa
    dB = a * (-np.cos((1 - s) * a)[:, None] * u + np.cos(s * a)[:, None] * v) / sa
    return B, dB


def _graded_breakpoints(A, u, v, a):
    """Panel edges in s, graded towards the point of the side uv closest to the cut locus of A.

    Near that point the geodesics from A swing quickly and the integrand
    develops a peak of width about min |<A, B(s)>|.
    """
    s = np.linspace(0.0, 1.0, 513)
    rho = np.abs(_side(u, v, a, s)[0] @ np.conj(A))
    k = int(np.argmin(rho))
    width = max(float(rho[k]), 1e-6)
    if width > 0.05:
        return np.array([0.0, 1.0])
    centre = s[k]
    steps = width * 4.0 ** np.arange(12)
    edges = np.concatenate([centre - steps, [centre], centre + steps])
    return np.unique(np.concatenate([[0.0, 1.0], edges[(edges > 0) & (edges < 1)]]))


def _composite_rule(edges, n):
    x, w = np.polynomial.legendre.leggauss(n)
    lo, hi = edges[:-1, None], edges[1:, None]
    nodes = lo + (hi - lo) * (x + 1) / 2
    weights = (hi - lo) / 2 * w
    return nodes.ravel(), weights.ravel()


def _triangle_integral(A, u, v, a, n_s, n_t, edges=None):
    if edges is None:
        edges = np.array([0.0, 1.0])
    s, ws = _composite_rule(edges, n_s)
    xt, wt = np.polynomial.legendre.leggauss(n_t)
    t, wt = (xt + 1) / 2, wt / 2

    B, dB = _side(u, v, a, s)
    c = B @ np.conj(A)
    dc = dB @ np.conj(A)
    rho = np.abs(c)
    if np.min(rho) < DEGENERATE_TOL:
        raise DegenerateTriangleError("the side uv passes through the cut locus of w")
    drho = np.real(np.conj(c) * dc) / rho
    lam = np.conj(c) / rho
    dlam = np.conj(dc) / rho - np.conj(c) * drho / rho**2
    d = np.arccos(np.clip(rho, 0.0, 1.0))
    sd = np.sin(d)
    ok = sd > 1e-12
    sd_safe = np.where(ok, sd, 1.0)
    dd = np.where(ok, -drho / sd_safe, 0.0)

    # G(s,t) = sin((1-t)d) A + sin(td) lam B, rescaled by 1/sin d (projectively harmless)
    _, T = np.meshgrid(s, t, indexing="ij")
    D = d[:, None] * np.ones_like(T)
    inv = 1.0 / sd_safe[:, None]
    c1 = np.sin((1 - T) * D) * inv
    c2 = np.sin(T * D) * inv
    k1 = np.cos((1 - T) * D) * inv
    k2 = np.cos(T * D) * inv
    lB = (lam[:, None] * B)[:, None, :]
    G = c1[..., None] * A + c2[..., None] * lB
    Gt = D[..., None] * (-k1[..., None] * A + k2[..., None] * lB)
    Gs = (
        ((1 - T) * dd[:, None] * k1)[..., None] * A
        + (T * dd[:, None] * k2)[..., None] * lB
        + c2[..., None] * (dlam[:, None] * B + lam[:, None] * dB)[:, None, :]
    )
    f = _homogeneous_form(G, Gs, Gt)
    f = np.where(ok[:, None], f, 0.0)
    return float(ws @ f @ wt)


def triangle_symplectic_area(u, v, w, spec: QuadratureSpec | None = None, tol: float = 1e-6) -> float:
    """Integral of the Fubini-Study form over the geodesic triangle sigma(u, v, w).

    The surface is F(s, t) = geodesic(w, geodesic(u, v, s), t) on the unit
    square with its standard orientation.  With this orientation
    ``exp(i * area)`` is the phase of <v,u><w,v><u,w>.  Gauss-Legendre in
    (s, t), composite in s when the side uv passes close to the cut locus of
    w, doubling the node counts until successive estimates agree to ``tol``.
    """
    spec = spec or QuadratureSpec()
    pu, pv, pw = _unit(u), _unit(v), _unit(w)
    for x, y in ((pu, pv), (pv, pw), (pw, pu)):
        d = cayley_distance(x, y)
        if d < DEGENERATE_TOL or d > np.pi / 2 - DEGENERATE_TOL:
            raise DegenerateTriangleError(f"side length {d!r} is degenerate")
    pu, pv, a = _aligned_pair(pu, pv)

    edges = _graded_breakpoints(pw, pu, pv, a)
    n_s, n_t = spec.nodes_u, spec.nodes_v
    prev = _triangle_integral(pw, pu, pv, a, n_s, n_t, edges)
    change = np.inf
    for _ in range(spec.refine_limit):
        n_s, n_t = 2 * n_s, 2 * n_t
        cur = _triangle_integral(pw, pu, pv, a, n_s, n_t, edges)
        change = abs(cur - prev)
        prev = cur
        if change < tol:
            return cur
    raise AccuracyError("triangle quadrature did not converge", change)


def bargmann_product(points: Sequence) -> complex:
    """<z2,z1><z3,z2>...<z1,zm> / prod |zk|^2 for homogeneous representatives.

    This is the cyclic m-point function of CP^N pulled back through the
    coherent state embedding; any representatives may be used.
    """
    zs = [as_point(p).coords for p in points]
    num = 1.0 + 0j
    den = 1.0
    for k, z in enumerate(zs):
        nxt = zs[(k + 1) % len(zs)]
        num *= np.vdot(nxt, z)
        den *= np.vdot(z, z).real
    return complex(num / den)


def circle_distance(alpha: float, beta: float) -> float:
    """|exp(i alpha) - exp(i beta)|: distance of two phases modulo 2 pi."""
    return float(abs(np.exp(1j * alpha) - np.exp(1j * beta)))
