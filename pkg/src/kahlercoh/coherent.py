"""Orthonormal section bases, coherent vectors and the coherent state embedding.

Sections of H^m are represented in the frame dual to the constant section of
the standard affine chart, i.e. as polynomials of degree <= m.  A basis
stores the coefficients of its sections over the monomials w^alpha.  On P^1
the point :data:`~kahlercoh.bundles.INF` is handled in the second chart,
where the monomial z^k becomes zeta^(m-k).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .bundles import INF, BundleModel, ChartFunction, integrate, is_inf
from .errors import DegenerateBasisError, FrameVanishingError, InvalidParameterError, VeryAmplenessError
from .projective import ProjectivePoint, QuadratureSpec

# relative size under which a frame value counts as zero
VANISH_TOL = 1e-13


def monomial_exponents(n: int, m: int) -> tuple[tuple[int, ...], ...]:
    """Multi-indices alpha with |alpha| <= m, ordered by total degree then lexicographically."""
    out = []
    for deg in range(m + 1):
        for alpha in itertools.product(range(deg, -1, -1), repeat=n):
            if sum(alpha) == deg:
                out.append(alpha)
    return tuple(out)


def monomial_values(exponents, w, n: int) -> np.ndarray:
    """Evaluate all monomials at chart points; shape ``S + (len(exponents),)``."""
    E = np.asarray(exponents)
    w = np.asarray(w, dtype=complex)
    if n == 1:
        return w[..., None] ** E[:, 0]
    return np.prod(w[..., None, :] ** E, axis=-1)


def closed_form_gram(model: BundleModel, exponents) -> np.ndarray:
    """Diagonal Gram matrix of monomials on (P^n, m omega_FS, H^m).

    |w^alpha|^2 = (2 pi m)^n alpha! (m - |alpha|)! / (m + n)!
    """
    n, m = model.n, model.power
    diag = [
        (2 * math.pi * m) ** n
        * math.prod(math.factorial(a) for a in alpha)
        * math.factorial(m - sum(alpha))
        / math.factorial(m + n)
        for alpha in exponents
    ]
    return np.diag(np.asarray(diag, dtype=complex))


@dataclass(frozen=True, eq=False)
class OrthonormalBasis:
    """Sections s_j = sum_k coeffs[k, j] w^(alpha_k)."""

    model: BundleModel
    exponents: tuple
    coeffs: np.ndarray
    gram_residual: float
    monomial_gram: np.ndarray | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return self.coeffs.shape[1]

    @property
    def N(self) -> int:
        return self.size - 1

    def monomials(self, x) -> np.ndarray:
        """Monomial values at a chart point, in the frame of the chart containing it."""
        if is_inf(x):
            if self.model.family != "P1":
                raise InvalidParameterError("the point at infinity exists only for P1 models")
            # z^k = zeta^(m-k) times the m-th power of the second-chart frame; zeta = 0
            return np.array([1.0 + 0j if a[0] == self.model.power else 0j for a in self.exponents])
        w = np.asarray(x, dtype=complex)
        if self.model.n > 1 and w.shape != (self.model.n,):
            raise InvalidParameterError(f"chart point must have {self.model.n} coordinates")
        return monomial_values(self.exponents, w, self.model.n)

    def section_values(self, x) -> np.ndarray:
        return self.monomials(x) @ self.coeffs

    def metric_at(self, x) -> float:
        """Local metric in the frame used by :meth:`monomials`."""
        if is_inf(x):
            return 1.0
        return float(self.model.metric_hat(x))

    def frame_coefficients(self, frame=None) -> np.ndarray:
        """Monomial coefficients of a reference section.

        ``None`` is the constant section, an ``int`` selects a basis section,
        and an array is taken as monomial coefficients.
        """
        if frame is None:
            c = np.zeros(len(self.exponents), dtype=complex)
            c[0] = 1.0
            return c
        if isinstance(frame, (int, np.integer)):
            return self.coeffs[:, int(frame)].copy()
        c = np.asarray(frame, dtype=complex)
        if c.shape != (len(self.exponents),):
            raise InvalidParameterError("frame must list one coefficient per monomial")
        return c

    def pullback_frame(self, linear_form) -> np.ndarray:
        """Monomial coefficients of i*(t) for the hyperplane section t = sum tau_j Z_j."""
        return self.coeffs @ np.asarray(linear_form, dtype=complex)

    def auto_frame(self, x) -> np.ndarray:
        """A frame that does not vanish at x; on P^1 the second-chart frame z^m once |x| > 1."""
        if is_inf(x) or (self.model.family == "P1" and abs(x) > 1):
            c = np.zeros(len(self.exponents), dtype=complex)
            c[list(self.exponents).index((self.model.power,))] = 1.0
            return c
        return self.frame_coefficients(None)

    @property
    def sections(self) -> list[ChartFunction]:
        def make(j):
            return ChartFunction(lambda w: monomial_values(self.exponents, w, self.model.n) @ self.coeffs[:, j])
        return [make(j) for j in range(self.size)]

    def rescaled(self, j: int, factor: complex) -> "OrthonormalBasis":
        coeffs = self.coeffs.copy()
        coeffs[:, j] *= factor
        return replace(self, coeffs=coeffs, gram_residual=float("nan"))

    def rotated(self, unitary: np.ndarray) -> "OrthonormalBasis":
        return replace(self, coeffs=self.coeffs @ unitary)

    def to_dict(self) -> dict:
        return {
            "model": self.model.to_dict(),
            "exponents": [list(a) for a in self.exponents],
            "coeffs": [[[z.real, z.imag] for z in row] for row in self.coeffs],
            "gram_residual": self.gram_residual,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "OrthonormalBasis":
        coeffs = np.array([[complex(re, im) for re, im in row] for row in data["coeffs"]])
        return cls(
            BundleModel.from_dict(data["model"]),
            tuple(tuple(a) for a in data["exponents"]),
            coeffs,
            float(data["gram_residual"]),
        )


def _quadrature_gram(model, exponents, coeffs, spec):
    def integrand(z):
        vals = monomial_values(exponents, z, 1) @ coeffs
        h = model.metric_hat(z)
        return h[..., None, None] * np.conj(vals)[..., :, None] * vals[..., None, :]

    return integrate(model, integrand, spec)


def build_onb(model: BundleModel, spec: QuadratureSpec | None = None) -> OrthonormalBasis:
    """Orthonormalize the monomial sections.

    P1 models get their Gram matrix by quadrature, PN models in closed form.
    Symmetric (Lowdin) orthonormalization keeps an already orthogonal family
    aligned with the monomials.
    """
    exponents = monomial_exponents(model.n, model.power)
    eye = np.eye(len(exponents), dtype=complex)
    if model.family == "P1":
        gram = _quadrature_gram(model, exponents, eye, spec)
    else:
        gram = closed_form_gram(model, exponents)
    gram = 0.5 * (gram + gram.conj().T)
    lam, U = np.linalg.eigh(gram)
    if lam[0] <= 1e-12 * lam[-1]:
        raise DegenerateBasisError(f"Gram matrix is numerically singular (eigenvalues {lam})")
    coeffs = (U / np.sqrt(lam)) @ U.conj().T
    if model.family == "P1":
        check = _quadrature_gram(model, exponents, coeffs, spec)
    else:
        check = coeffs.conj().T @ gram @ coeffs
    residual = float(np.max(np.abs(check - eye)))
    return OrthonormalBasis(model, exponents, coeffs, residual, gram)


@dataclass(frozen=True, eq=False)
class Lift:
    """The point q = scale * s(x) of the bundle over x, for the reference section s."""

    x: object
    frame: np.ndarray
    scale: complex = 1.0


@dataclass(frozen=True, eq=False)
class CoherentVector:
    """e_q as coefficients over the basis: coeffs[j] = conj(qhat(s_j))."""

    basis: OrthonormalBasis
    coeffs: np.ndarray
    source: Lift

    @property
    def qhat(self) -> np.ndarray:
        """(qhat(s_0), ..., qhat(s_N)), the coordinate vector phi(q)."""
        return np.conj(self.coeffs)

    def norm2(self) -> float:
        return float(np.vdot(self.coeffs, self.coeffs).real)

    def representing_function(self, w):
        """Local representing function of e_q in the constant frame."""
        return monomial_values(self.basis.exponents, w, self.basis.model.n) @ (self.basis.coeffs @ self.coeffs)


def coherent_vector(basis: OrthonormalBasis, x, frame=None, scale: complex = 1.0) -> CoherentVector:
    frame_c = basis.frame_coefficients(frame)
    mono = basis.monomials(x)
    frame_val = mono @ frame_c
    if abs(frame_val) <= VANISH_TOL * np.linalg.norm(mono) * np.linalg.norm(frame_c):
        raise FrameVanishingError(f"reference section vanishes at {x!r}")
    qhat = (mono @ basis.coeffs) / (scale * frame_val)
    return CoherentVector(basis, np.conj(qhat), Lift(x, frame_c, scale))


def inner(e1: CoherentVector, e2: CoherentVector) -> complex:
    """<e1, e2>, conjugate linear in e1."""
    return complex(np.vdot(e1.coeffs, e2.coeffs))


def coherent_kernel(basis: OrthonormalBasis, x, y, frame=None) -> complex:
    """<e_{s(x)}, e_{s(y)}>: holomorphic in x, antiholomorphic in y."""
    return inner(coherent_vector(basis, x, frame), coherent_vector(basis, y, frame))


def coherent_embedding(basis: OrthonormalBasis, x) -> ProjectivePoint:
    """(s_0(x) : ... : s_N(x)), the holomorphic coherent state embedding."""
    vals = basis.section_values(x)
    if not np.any(np.abs(vals) > 0):
        raise VeryAmplenessError(f"all sections vanish at {x!r}")
    return ProjectivePoint(vals)


def epsilon_function(basis: OrthonormalBasis, x) -> float:
    """sum_j h(s_j, s_j)(x)."""
    vals = basis.section_values(x)
    return float(basis.metric_at(x) * np.sum(np.abs(vals) ** 2))


def epsilon_from_lift(cv: CoherentVector) -> float:
    """|q|^2 <e_q, e_q> for the lift stored in ``cv``."""
    basis, src = cv.basis, cv.source
    frame_val = basis.monomials(src.x) @ src.frame
    q2 = basis.metric_at(src.x) * abs(src.scale * frame_val) ** 2
    return q2 * cv.norm2()


def overcompleteness_matrix(basis: OrthonormalBasis, spec: QuadratureSpec | None = None) -> np.ndarray:
    """G_ij = integral of <s_i, P_x s_j> eps(x) Omega(x)."""
    if basis.model.family != "P1":
        raise InvalidParameterError("overcompleteness quadrature is implemented for P1 models")
    model = basis.model

    def integrand(z):
        # lift q = constant section at z, so qhat(s_j) = s_j(z)
        qhat = monomial_values(basis.exponents, z, 1) @ basis.coeffs
        norm2 = np.sum(np.abs(qhat) ** 2, axis=-1)
        eps = model.metric_hat(z) * norm2
        proj = np.conj(qhat)[..., :, None] * qhat[..., None, :] / norm2[..., None, None]
        return proj * eps[..., None, None]

    return integrate(model, integrand, spec)


def overcompleteness_residual(basis: OrthonormalBasis, spec: QuadratureSpec | None = None) -> float:
    G = overcompleteness_matrix(basis, spec)
    return float(np.max(np.abs(G - np.eye(basis.size))))
