import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import basis_for
from kahlercoh import INF, BundleModel, build_onb, cayley_distance, coherent, integrate, multipoint
from kahlercoh.coherent import (
    OrthonormalBasis,
    coherent_embedding,
    coherent_kernel,
    coherent_vector,
    epsilon_from_lift,
    epsilon_function,
    inner,
    overcompleteness_residual,
)
from kahlercoh.errors import FrameVanishingError, InvalidParameterError
from strategies import chart_points, complex_vectors, nonzero_scalars

powers = st.integers(1, 5)


@pytest.mark.parametrize("descriptor", ["P1:m=1", "P1:m=3", "P1:m=5", "PN:n=2,m=1", "PN:n=2,m=3", "PN:n=3,m=2"])
def test_basis_is_orthonormal(descriptor):
    basis = basis_for(descriptor)
    assert basis.gram_residual < 1e-12
    assert basis.size == BundleModel.parse(descriptor).dim_sections


def test_basis_serialization_round_trip():
    basis = basis_for("P1:m=3")
    again = OrthonormalBasis.from_dict(basis.to_dict())
    assert again.model == basis.model and again.exponents == basis.exponents
    np.testing.assert_array_equal(again.coeffs, basis.coeffs)
    assert again.gram_residual == basis.gram_residual


@given(chart_points(), chart_points(), powers)
def test_p1_kernel_law(wp, w, m):
    basis = basis_for(f"P1:m={m}")
    ratio = coherent_kernel(basis, wp, w) / coherent_kernel(basis, 0, 0)
    assert ratio == pytest.approx((1 + np.conj(w) * wp) ** m, rel=1e-9)
    assert coherent_kernel(basis, 0, 0).real == pytest.approx((m + 1) / (2 * math.pi * m), rel=1e-12)


@given(complex_vectors(2), complex_vectors(2), st.integers(1, 3))
def test_pn_kernel_law(wp, w, m):
    basis = basis_for(f"PN:n=2,m={m}")
    ratio = coherent_kernel(basis, wp, w) / coherent_kernel(basis, np.zeros(2), np.zeros(2))
    assert ratio == pytest.approx((1 + np.vdot(w, wp)) ** m, rel=1e-9)


@given(chart_points(), chart_points(), nonzero_scalars, nonzero_scalars)
def test_coherent_vectors_are_antilinear_in_the_lift(x, y, c, d):
    basis = basis_for("P1:m=2")
    e, ec = coherent_vector(basis, x), coherent_vector(basis, x, scale=c)
    np.testing.assert_allclose(ec.coeffs, e.coeffs / np.conj(c), rtol=1e-12)
    lhs = inner(ec, coherent_vector(basis, y, scale=d))
    assert lhs == pytest.approx(coherent_kernel(basis, x, y) / (c * np.conj(d)), rel=1e-10)


@pytest.mark.parametrize("m", [1, 3])
def test_reproducing_property_by_quadrature(m):
    basis = basis_for(f"P1:m={m}")
    rng = np.random.default_rng(5)
    s_coeffs = rng.normal(size=m + 1) + 1j * rng.normal(size=m + 1)
    x, c = 0.8 - 1.3j, 0.5 + 2j
    e = coherent_vector(basis, x, scale=c)

    def integrand(z):
        mono = coherent.monomial_values(basis.exponents, z, 1)
        s = mono @ (basis.coeffs @ s_coeffs)
        return basis.model.metric_hat(z) * np.conj(e.representing_function(z)) * s

    got = integrate(basis.model, integrand)
    s_at_x = basis.section_values(x) @ s_coeffs
    assert got == pytest.approx(s_at_x / c, rel=1e-12)


@given(chart_points(), chart_points(), st.integers(0, 2**32 - 1))
def test_kernel_independent_of_basis_choice(x, y, seed):
    basis = basis_for("P1:m=3")
    rng = np.random.default_rng(seed)
    q, _ = np.linalg.qr(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    assert coherent_kernel(basis.rotated(q), x, y) == pytest.approx(coherent_kernel(basis, x, y), rel=1e-10, abs=1e-12)


@given(chart_points(), nonzero_scalars, powers)
def test_epsilon_is_constant_and_lift_independent(x, c, m):
    basis = basis_for(f"P1:m={m}")
    eps = epsilon_function(basis, x)
    assert eps == pytest.approx((m + 1) / basis.model.volume(), rel=1e-10)
    assert epsilon_from_lift(coherent_vector(basis, x, scale=c)) == pytest.approx(eps, rel=1e-10)


@given(chart_points(), chart_points(), powers)
def test_two_point_function_is_cos_squared_of_distance(x, y, m):
    basis = basis_for(f"P1:m={m}")
    d = cayley_distance(coherent_embedding(basis, x), coherent_embedding(basis, y))
    assert multipoint.two_point_modulus_sq(basis, x, y) == pytest.approx(math.cos(d) ** 2, abs=1e-10)


def test_point_at_infinity():
    basis = basis_for("P1:m=2")
    e_inf = coherent_vector(basis, INF, basis.auto_frame(INF))
    assert epsilon_from_lift(e_inf) == pytest.approx(epsilon_function(basis, 0.0), rel=1e-12)
    assert epsilon_function(basis, INF) == pytest.approx(epsilon_function(basis, 0.0), rel=1e-12)
    assert multipoint.two_point_modulus_sq(basis, INF, 0) == pytest.approx(0.0, abs=1e-28)
    # far chart points approach the point at infinity
    assert multipoint.two_point_modulus_sq(basis, INF, 1e6) == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(FrameVanishingError):
        coherent_vector(basis, INF)


def test_frame_choices():
    basis = basis_for("P1:m=2")
    z_frame = np.array([0, 1, 0])
    with pytest.raises(FrameVanishingError):
        coherent_vector(basis, 0.0, z_frame)
    with pytest.raises(InvalidParameterError):
        coherent_vector(basis, 1.0, np.array([1, 0]))
    # the hyperplane section Z_0 pulls back to the first basis section
    np.testing.assert_allclose(basis.pullback_frame([1, 0, 0]), basis.frame_coefficients(0))
    # framed coherent vectors differ from the constant frame by 1/conj(f(x))
    x = 0.4 + 0.9j
    e1, e2 = coherent_vector(basis, x), coherent_vector(basis, x, z_frame)
    np.testing.assert_allclose(e2.coeffs, e1.coeffs / np.conj(x), rtol=1e-12)


@pytest.mark.parametrize("m", [1, 2, 4])
def test_overcompleteness(m):
    assert overcompleteness_residual(basis_for(f"P1:m={m}")) < 1e-10


def test_overcompleteness_fails_for_a_broken_basis():
    broken = basis_for("P1:m=2").rescaled(1, 1.5)
    assert overcompleteness_residual(broken) > 0.1


def test_embedding_is_injective_on_samples():
    basis = basis_for("P1:m=3")
    pts = [0, 1, -1, 1j, 2 + 2j, INF]
    imgs = [coherent_embedding(basis, p) for p in pts]
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            assert cayley_distance(imgs[i], imgs[j]) > 1e-3


def test_build_onb_p1_matches_closed_form():
    quad = build_onb(BundleModel.p1(4))
    gram = coherent.closed_form_gram(BundleModel.p1(4), quad.exponents)
    np.testing.assert_allclose(quad.monomial_gram, gram, atol=1e-12)
