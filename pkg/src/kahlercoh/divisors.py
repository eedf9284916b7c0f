"""Polar divisors of coherent vectors on P^1 models.

The kernel z -> <e_{s(z)}, e_x> is holomorphic in z and, in the constant
frame, a polynomial of degree <= m.  Its coefficients are recovered exactly
by interpolation at the (m+1)-th roots of unity.  Roots inside the closed
unit disk are taken in the first chart, the rest in the second chart
(zeta = 1/z), so every root is computed where it is well conditioned.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bundles import INF, is_inf
from .coherent import OrthonormalBasis, coherent_vector, inner
from .errors import InvalidParameterError, NotARootError
from .multipoint import _lift, two_point_modulus_sq

MULTIPLICITY_TOL = 1e-8
MEMBERSHIP_TOL = 1e-8
CLUSTER_TOL = 1e-2
INF_TOL = 1e-10


@dataclass(frozen=True)
class Divisor:
    components: tuple  # of (point, multiplicity); point is complex or INF

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.components)

    def to_json(self) -> list:
        return [
            {"point": "inf" if is_inf(p) else [p.real, p.imag], "multiplicity": k}
            for p, k in self.components
        ]

    @classmethod
    def from_json(cls, data: list) -> "Divisor":
        comps = []
        for item in data:
            p = item["point"]
            comps.append((INF if p == "inf" else complex(p[0], p[1]), int(item["multiplicity"])))
        return cls(tuple(comps))


def _require_p1(basis):
    if basis.model.family != "P1":
        raise InvalidParameterError("polar divisor computations are implemented for P1 models")


def kernel_coefficients(basis: OrthonormalBasis, x) -> np.ndarray:
    """Coefficients c_k of z -> <e_{s(z)}, e_x> = sum_k c_k z^k (constant frame, auto lift at x)."""
    _require_p1(basis)
    m = basis.model.power
    ex = _lift(basis, x)
    nodes = np.exp(2j * np.pi * np.arange(m + 1) / (m + 1))
    vals = np.array([inner(coherent_vector(basis, z), ex) for z in nodes])
    return np.fft.fft(vals) / (m + 1)


def synthetic_division(coeffs: np.ndarray, root: complex):
    """Divide sum c_k z^k (ascending order) by (z - root); returns (quotient, remainder)."""
    desc = np.asarray(coeffs, dtype=complex)[::-1]
    out = np.empty(len(desc) - 1, dtype=complex)
    acc = 0j
    for i, c in enumerate(desc[:-1]):
        acc = acc * root + c
        out[i] = acc
    remainder = acc * root + desc[-1]
    return out[::-1], remainder


def root_multiplicity(coeffs: np.ndarray, root: complex, tol: float = MULTIPLICITY_TOL) -> int:
    """Number of times (z - root) divides the polynomial at relative tolerance ``tol``."""
    p = np.asarray(coeffs, dtype=complex)
    scale = np.max(np.abs(p))
    if scale == 0:
        raise InvalidParameterError("zero polynomial")
    p = p / scale
    k = 0
    while len(p) > 1:
        q, r = synthetic_division(p, root)
        size = max(1.0, float(np.sum(np.abs(p) * np.abs(root) ** np.arange(len(p)))))
        if abs(r) > tol * size:
            break
        k += 1
        p = q
    return k


def _clusters(roots):
    groups: list[list[complex]] = []
    for r in roots:
        for g in groups:
            if abs(np.mean(g) - r) < CLUSTER_TOL:
                g.append(r)
                break
        else:
            groups.append([r])
    return [complex(np.mean(g)) for g in groups]


def _disk_roots(coeffs, slack=0.0):
    """Cluster centres of roots with |r| <= 1 + slack (ascending coefficients)."""
    desc = np.trim_zeros(np.asarray(coeffs, dtype=complex)[::-1], "f")
    if len(desc) < 2:
        return []
    roots = np.roots(desc)
    return [r for r in _clusters(roots[np.abs(roots) <= 1 + CLUSTER_TOL]) if abs(r) <= 1.0 + slack]


def divisor_of_polynomial(coeffs: np.ndarray, degree: int) -> Divisor:
    """Divisor on P^1 of a section of H^degree given by ascending chart-0 coefficients."""
    p = np.zeros(degree + 1, dtype=complex)
    p[: len(coeffs)] = coeffs
    comps = []
    for r in _disk_roots(p):
        if abs(r) < INF_TOL:
            r = 0j
        k = root_multiplicity(p, r)
        if k:
            comps.append((r, k))
    q = p[::-1]
    for zeta in _disk_roots(q, slack=1e-6):
        if abs(zeta) < INF_TOL:
            zeta = 0j
        point = INF if zeta == 0 else 1 / zeta
        if not is_inf(point) and any(not is_inf(c) and abs(c - point) < 1e-6 * (1 + abs(point)) for c, _ in comps):
            continue
        k = root_multiplicity(q, zeta)
        if k:
            comps.append((point, k))
    return Divisor(tuple(comps))


def polar_divisor_p1(basis: OrthonormalBasis, w) -> Divisor:
    """Zero divisor of the coherent vector over w, i.e. the polar divisor of w."""
    return divisor_of_polynomial(kernel_coefficients(basis, w), basis.model.power)


def polar_membership(basis: OrthonormalBasis, x, y, tol: float = MEMBERSHIP_TOL) -> bool:
    """Whether y lies on the polar divisor of x (normalized overlap below tol)."""
    return bool(np.sqrt(two_point_modulus_sq(basis, x, y)) < tol)


def multiplicity_at(basis: OrthonormalBasis, x, root) -> int:
    """Vanishing order at ``root`` of the kernel z -> <e_{s(z)}, e_x>."""
    p = kernel_coefficients(basis, x)
    if is_inf(root):
        k = root_multiplicity(p[::-1], 0j)
    elif abs(root) > 1:
        k = root_multiplicity(p[::-1], 1 / complex(root))
    else:
        k = root_multiplicity(p, complex(root))
    if k == 0:
        raise NotARootError(f"{root!r} is not a zero of the kernel of {x!r}")
    return k
