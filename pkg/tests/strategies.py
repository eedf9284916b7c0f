"""Hypothesis strategies for chart points and projective vectors."""

import numpy as np
from hypothesis import strategies as st

finite = st.floats(-3.0, 3.0, allow_nan=False, allow_infinity=False)


@st.composite
def chart_points(draw, radius=3.0, min_radius=0.0):
    r = draw(st.floats(min_radius, radius))
    theta = draw(st.floats(0.0, 2 * np.pi))
    return complex(r * np.cos(theta), r * np.sin(theta))


@st.composite
def complex_vectors(draw, size=2, min_norm=1e-3):
    re = draw(st.lists(finite, min_size=size, max_size=size))
    im = draw(st.lists(finite, min_size=size, max_size=size))
    z = np.array(re) + 1j * np.array(im)
    if np.linalg.norm(z) < min_norm:
        z[0] += 1.0
    return z


nonzero_scalars = st.builds(complex, finite, finite).filter(lambda c: abs(c) > 1e-2)
