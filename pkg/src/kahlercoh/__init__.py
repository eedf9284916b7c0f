"""Coherent-state embeddings of projective spaces and numerical checks of their identities."""

from .bundles import INF, BundleModel, integrate, is_inf
from .coherent import (
    OrthonormalBasis,
    build_onb,
    coherent_embedding,
    coherent_kernel,
    coherent_vector,
    epsilon_function,
    inner,
)
from .divisors import Divisor, multiplicity_at, polar_divisor_p1, polar_membership
from .errors import KahlerCohError
from .multipoint import cyclic_m_point, diastasis, three_point_decompose, two_point_modulus_sq
from .projective import ProjectivePoint, QuadratureSpec, cayley_distance, geodesic, triangle_symplectic_area

__all__ = [
    "INF",
    "BundleModel",
    "Divisor",
    "KahlerCohError",
    "OrthonormalBasis",
    "ProjectivePoint",
    "QuadratureSpec",
    "build_onb",
    "cayley_distance",
    "coherent_embedding",
    "coherent_kernel",
    "coherent_vector",
    "cyclic_m_point",
    "diastasis",
    "epsilon_function",
    "geodesic",
    "inner",
    "integrate",
    "is_inf",
    "multiplicity_at",
    "polar_divisor_p1",
    "polar_membership",
    "three_point_decompose",
    "triangle_symplectic_area",
    "two_point_modulus_sq",
]
