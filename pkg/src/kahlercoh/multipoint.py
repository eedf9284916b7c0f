"""Two-point, cyclic m-point and three-point functions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .coherent import OrthonormalBasis, coherent_embedding, coherent_vector, inner
from .errors import ArityError, DegenerateTriangleError, InfiniteDiastasisError
from .projective import DEGENERATE_TOL, bargmann_product, cayley_distance

DEGENERATE_MODULUS = 1e-12


@dataclass(frozen=True)
class MultiPointResult:
    value: complex
    modulus: float
    phase: float | None
    degenerate: bool

    @classmethod
    def from_value(cls, value: complex) -> "MultiPointResult":
        value = complex(value)
        modulus = abs(value)
        if modulus < DEGENERATE_MODULUS:
            return cls(value, modulus, None, True)
        phase = math.atan2(value.imag, value.real)
        if phase == -math.pi:
            phase = math.pi
        return cls(value, modulus, phase, False)

    def to_dict(self) -> dict:
        return {
            "value": [self.value.real, self.value.imag],
            "modulus": self.modulus,
            "phase": self.phase,
            "degenerate": self.degenerate,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "MultiPointResult":
        re, im = data["value"]
        return cls(complex(re, im), data["modulus"], data["phase"], data["degenerate"])


@dataclass(frozen=True)
class TriangleDecomposition:
    a: float
    b: float
    c: float
    phi: float
    rho: float

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "phi": self.phi, "rho": self.rho}


def _lift(basis, x, frame=None):
    if frame is None:
        frame = basis.auto_frame(x)
    return coherent_vector(basis, x, frame)


def two_point_framed(basis: OrthonormalBasis, x, y, frame=None) -> complex:
    ex, ey = coherent_vector(basis, x, frame), coherent_vector(basis, y, frame)
    return inner(ex, ey) / math.sqrt(ex.norm2() * ey.norm2())


def two_point_modulus_sq(basis: OrthonormalBasis, x, y) -> float:
    ex, ey = _lift(basis, x), _lift(basis, y)
    return float(abs(inner(ex, ey)) ** 2 / (ex.norm2() * ey.norm2()))


def diastasis(basis: OrthonormalBasis, x, y) -> float:
    """D = -2 log sqrt(psi)."""
    psi = two_point_modulus_sq(basis, x, y)
    if psi <= 0.0:
        raise InfiniteDiastasisError("points are orthogonal; diastasis is infinite")
    return max(0.0, -math.log(min(psi, 1.0)))


def cyclic_m_point(basis: OrthonormalBasis, points: Sequence, frame=None) -> MultiPointResult:
    """<e1,e2><e2,e3>...<em,e1> / prod |ek|^2.

    With ``frame`` given, every lift uses that reference section; otherwise
    each point gets a frame that does not vanish there.  The lift choice
    cancels either way.
    """
    if len(points) < 2:
        raise ArityError("the cyclic m-point function needs m >= 2 points")
    vecs = [_lift(basis, x, frame) for x in points]
    num = 1.0 + 0j
    den = 1.0
    for k, e in enumerate(vecs):
        num *= inner(e, vecs[(k + 1) % len(vecs)])
        den *= e.norm2()
    return MultiPointResult.from_value(num / den)


def three_point_decompose(basis: OrthonormalBasis, x, y, z) -> TriangleDecomposition:
    ix, iy, iz = (coherent_embedding(basis, p) for p in (x, y, z))
    a, b, c = cayley_distance(ix, iy), cayley_distance(iy, iz), cayley_distance(iz, ix)
    for d in (a, b, c):
        if d < DEGENERATE_TOL or d > math.pi / 2 - DEGENERATE_TOL:
            raise DegenerateTriangleError(f"side length {d!r} is degenerate")
    res = cyclic_m_point(basis, [x, y, z])
    phi = res.phase
    rho = math.cos(a) * math.cos(b) * math.cos(c) * math.cos(phi)
    return TriangleDecomposition(a, b, c, phi, rho)


def unit_modulus_factor(value: complex) -> complex:
    return complex(value / abs(value))


def embedded_m_point(basis: OrthonormalBasis, points: Sequence) -> complex:
    """Cyclic m-point function of CP^N evaluated on embedded images."""
    return bargmann_product([coherent_embedding(basis, x) for x in points])


__all__ = [
    "MultiPointResult",
    "TriangleDecomposition",
    "two_point_framed",
    "two_point_modulus_sq",
    "diastasis",
    "cyclic_m_point",
    "three_point_decompose",
    "embedded_m_point",
    "unit_modulus_factor",
]
