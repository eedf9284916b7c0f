import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import basis_for
from kahlercoh import INF, Divisor, multiplicity_at, polar_divisor_p1, polar_membership
from kahlercoh.divisors import divisor_of_polynomial, kernel_coefficients, root_multiplicity, synthetic_division
from kahlercoh.errors import InvalidParameterError, NotARootError
from strategies import chart_points

powers = st.integers(1, 5)


@given(chart_points(radius=3.0, min_radius=0.3), powers)
def test_polar_divisor_of_generic_point(w, m):
    d = polar_divisor_p1(basis_for(f"P1:m={m}"), w)
    assert d.degree == m and len(d.components) == 1
    root, mult = d.components[0]
    assert root == pytest.approx(-1 / np.conj(w), rel=1e-8)
    assert mult == m


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_polar_divisor_of_poles(m):
    basis = basis_for(f"P1:m={m}")
    assert polar_divisor_p1(basis, 0).components == ((INF, m),)
    assert polar_divisor_p1(basis, INF).components == ((0j, m),)
    assert multiplicity_at(basis, 0, INF) == m
    assert multiplicity_at(basis, INF, 0) == m


@pytest.mark.parametrize("w", [1.0, 1j, np.exp(0.3j), 1e-7, 1e7, -1e-11])
def test_polar_divisor_edge_radii(w):
    d = polar_divisor_p1(basis_for("P1:m=4"), w)
    assert d.degree == 4 and len(d.components) == 1
    root = d.components[0][0]
    if root is not INF and root != 0:
        assert root == pytest.approx(-1 / np.conj(w), rel=1e-6)


@given(chart_points(min_radius=0.3), powers)
def test_multiplicity_at_root_and_non_root(w, m):
    basis = basis_for(f"P1:m={m}")
    assert multiplicity_at(basis, w, -1 / np.conj(w)) == m
    with pytest.raises(NotARootError):
        multiplicity_at(basis, w, w)


@given(chart_points(min_radius=0.3), chart_points(), st.booleans())
def test_membership_is_symmetric(x, y, polar):
    basis = basis_for("P1:m=3")
    if polar:
        y = -1 / np.conj(x)
    assert polar_membership(basis, x, y) == polar_membership(basis, y, x)
    if polar:
        assert polar_membership(basis, x, y)


def test_kernel_coefficients_match_binomials():
    basis = basis_for("P1:m=3")
    w = 0.5 - 0.25j
    c = kernel_coefficients(basis, w)
    expected = np.array([1, 3 * np.conj(w), 3 * np.conj(w) ** 2, np.conj(w) ** 3])
    np.testing.assert_allclose(c / c[0], expected, rtol=1e-12)


def test_synthetic_division_and_multiplicity():
    # (z - 2)^2 (z + 1) = z^3 - 3 z^2 + 4, ascending coefficients
    p = np.array([4, 0, -3, 1], dtype=complex)
    q, r = synthetic_division(p, 2)
    assert r == pytest.approx(0)
    np.testing.assert_allclose(q, [-2, -1, 1])
    assert root_multiplicity(p, 2) == 2
    assert root_multiplicity(p, -1) == 1
    assert root_multiplicity(p, 3) == 0
    with pytest.raises(InvalidParameterError):
        root_multiplicity(np.zeros(3), 1)


def test_divisor_of_polynomial_with_infinity():
    # z (z - 2) as a section of H^4 vanishes at 0, 2 and twice at infinity
    d = divisor_of_polynomial(np.array([0, -2, 1]), 4)
    comps = dict((("inf" if p is INF else complex(p)), k) for p, k in d.components)
    assert comps.pop("inf") == 2
    assert sorted(comps.items(), key=lambda kv: abs(kv[0])) == [(0j, 1), (pytest.approx(2 + 0j), 1)]


def test_divisor_json_round_trip():
    d = Divisor(((0.5 - 1j, 2), (INF, 1)))
    assert Divisor.from_json(d.to_json()) == d


def test_rejects_pn_models():
    with pytest.raises(InvalidParameterError):
        polar_divisor_p1(basis_for("PN:n=2,m=1"), np.zeros(2))
