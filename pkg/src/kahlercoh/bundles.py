"""Quantizable models: (P^n, m * omega_FS) with the bundle H^m.

Chart points of the standard affine chart are complex scalars (n = 1) or
complex vectors of length n.  The point at infinity of P^1 is the sentinel
:data:`INF`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import AccuracyError, InvalidParameterError
from .projective import QuadratureSpec, kahler_form_value, hermitian_metric


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

FAMILIES = ("P1", "PN")


def is_inf(x) -> bool:
    return x is INF


@dataclass(frozen=True)
class BundleModel:
    """P^n with Kahler form ``power * omega_FS`` and quantum bundle H^power.

    ``metric_override`` replaces the local metric function; it exists for
    negative controls and breaks the quantum condition on purpose.
    """

    family: str = "P1"
    n: int = 1
    power: int = 1
    metric_override: Callable | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParameterError(f"unknown family {self.family!r}")
        if self.family == "P1" and self.n != 1:
            raise InvalidParameterError("family P1 has n = 1")
        if self.n < 1 or self.power < 1:
            raise InvalidParameterError("n and power must be positive integers")

    @classmethod
    def p1(cls, m: int = 1) -> "BundleModel":
        return cls("P1", 1, m)

    @classmethod
    def pn(cls, n: int, m: int = 1) -> "BundleModel":
        return cls("PN", n, m)

    @classmethod
    def parse(cls, text: str) -> "BundleModel":
        """Parse descriptors like ``P1:m=3`` or ``PN:n=2,m=1``."""
        family, _, rest = text.partition(":")
        params = {"n": 1, "m": 1}
        for item in filter(None, rest.split(",")):
            key, _, value = item.partition("=")
            if key.strip() not in params:
                raise InvalidParameterError(f"unknown model parameter {key!r}")
            params[key.strip()] = int(value)
        return cls(family.strip().upper(), params["n"], params["m"])

    def to_dict(self) -> dict:
        return {"family": self.family, "n": self.n, "m": self.power}

    @classmethod
    def from_dict(cls, data: dict) -> "BundleModel":
        return cls(str(data["family"]).upper(), int(data.get("n", 1)), int(data["m"]))

    @property
    def kahler_scale(self) -> int:
        return self.power

    @property
    def dim_sections(self) -> int:
        return math.comb(self.power + self.n, self.n)

    def volume(self) -> float:
        """vol(P^n, m omega_FS) = (2 pi m)^n / n!."""
        return (2 * math.pi * self.power) ** self.n / math.factorial(self.n)

    def metric_hat(self, w):
        """Local metric function in the frame dual to the constant section."""
        if self.metric_override is not None:
            return self.metric_override(w)
        return (1.0 + _norm2(w, self.n)) ** (-self.power)


def _norm2(w, n):
    w = np.asarray(w, dtype=complex)
    if n == 1 and (w.ndim == 0 or w.shape[-1:] != (1,)):
        return np.abs(w) ** 2
    return np.sum(np.abs(w) ** 2, axis=-1)


def kahler_potential(model: BundleModel, w):
    return -np.log(model.metric_hat(w))


@dataclass(frozen=True)
class ChartFunction:
    eval: Callable
    chart: int = 0
    holomorphic: bool = True

    def __call__(self, w):
        return self.eval(w)


def cauchy_riemann_residual(f: Callable, points, h: float = 1e-5) -> float:
    """max |df/dzbar| by central differences over ``points`` (one variable)."""
    z = np.asarray(points, dtype=complex)
    fx = (f(z + h) - f(z - h)) / (2 * h)
    fy = (f(z + 1j * h) - f(z - 1j * h)) / (2 * h)
    return float(np.max(np.abs(0.5 * (fx + 1j * fy))))


def _mixed_partials(g: Callable, w: np.ndarray, h: float) -> np.ndarray:
    """Complex Hessian g_{i jbar} at w by central differences of the real Hessian."""
    n = w.size
    basis = np.eye(n, dtype=complex)

    def second(e1, e2):
        return (g(w + h * e1 + h * e2) - g(w + h * e1 - h * e2)
                - g(w - h * e1 + h * e2) + g(w - h * e1 - h * e2)) / (4 * h * h)

    def pure(e):
        return (g(w + h * e) - 2 * g(w) + g(w - h * e)) / (h * h)

    out = np.empty((n, n), dtype=complex)
    for i in range(n):
        xi, yi = basis[i], 1j * basis[i]
        for j in range(n):
            xj, yj = basis[j], 1j * basis[j]
            if i == j:
                gxx, gyy, cross = pure(xi), pure(yi), 0.0
            else:
                gxx, gyy = second(xi, xj), second(yi, yj)
                cross = second(xi, yj) - second(yi, xj)
            out[i, j] = 0.25 * (gxx + gyy + 1j * cross)
    return out


def _standard_pairs(n: int):
    e = np.eye(n, dtype=complex)
    for i in range(n):
        yield e[i], 1j * e[i]
        for j in range(i + 1, n):
            yield e[i], e[j]
            yield e[i], 1j * e[j]


def curvature_residual(model: BundleModel, grid, h_step: float = 1e-3) -> float:
    """Largest |FD(dbar d log h)(X, Y) + i omega(X, Y)| over grid and standard tangent pairs.

    ``omega = power * omega_FS``.  For a model obeying the quantum condition
    the result is pure discretization error, O(h_step^2).
    """
    if not h_step > 0:
        raise InvalidParameterError("h_step must be positive")
    n = model.n

    def log_h(w):
        return float(np.log(model.metric_hat(w[0] if n == 1 else w)))

    worst = 0.0
    for point in grid:
        w = np.atleast_1d(np.asarray(point, dtype=complex))
        # dbar d g = -sum g_{i jbar} dw_i ^ dw~_j
        hess = _mixed_partials(log_h, w, h_step)
        g = model.kahler_scale * hermitian_metric(w)
        for X, Y in _standard_pairs(n):
            two_form = X @ hess @ np.conj(Y) - Y @ hess @ np.conj(X)
            curvature = -two_form
            omega = kahler_form_value(g, X, Y)
            worst = max(worst, abs(curvature + 1j * omega))
    return worst


def _sphere_rule(n_theta: int, n_phi: int):
    x, wts = np.polynomial.legendre.leggauss(n_theta)
    theta = (x + 1) * (np.pi / 2)
    wt = wts * (np.pi / 2)
    phi = np.arange(n_phi) * (2 * np.pi / n_phi)
    z = np.tan(theta / 2)[:, None] * np.exp(1j * phi)[None, :]
    # m omega_FS = (m/2) sin(theta) dtheta dphi under z = tan(theta/2) e^{i phi}
    weights = (0.5 * np.sin(theta) * wt)[:, None] * np.full(n_phi, 2 * np.pi / n_phi)[None, :]
    return z, weights


def integrate(model: BundleModel, f: Callable, spec: QuadratureSpec | None = None,
              tol: float = 1e-13):
    """Integral of f against Omega = power * omega_FS over the affine chart of P^1.

    Gauss-Legendre in the polar angle and the trapezoid rule in azimuth;
    node counts double until successive estimates agree to ``tol``
    (absolute plus relative).  ``f`` maps an array of chart points of shape
    S to values of shape S or S + extra; the result has shape extra.
    """
    if model.family != "P1":
        raise InvalidParameterError("quadrature is implemented for the P1 family only")
    spec = spec or QuadratureSpec()
    n_t, n_p = spec.nodes_radial, spec.nodes_angular

    def rule(nt, np_):
        z, wts = _sphere_rule(nt, np_)
        vals = np.asarray(f(z), dtype=complex)
        out = model.kahler_scale * np.tensordot(wts, vals, axes=([0, 1], [0, 1]))
        return complex(out) if out.ndim == 0 else out

    prev = rule(n_t, n_p)
    change = math.inf
    for _ in range(spec.refine_limit):
        n_t, n_p = 2 * n_t, 2 * n_p
        cur = rule(n_t, n_p)
        change = float(np.max(np.abs(cur - prev)))
        prev = cur
        if change <= tol * (1 + float(np.max(np.abs(cur)))):
            return cur
    raise AccuracyError("chart quadrature did not converge", change)
