from __future__ import annotations

from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from quadpoisson.multivector import BASIS, MultiVector
from quadpoisson.poly import Poly

settings.register_profile("repo", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

small_ints = st.integers(min_value=-5, max_value=5)
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
nonzero_rationals = rationals.filter(bool)


@st.composite
def polys(draw, max_deg: int = 3, max_terms: int = 4):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(3))
        terms[e] = draw(rationals)
    return Poly(terms)


@st.composite
def homogeneous_polys(draw, grade):
    """Random element of P_{kr}."""
    k, r = grade
    coeffs = [draw(small_ints) for _ in range(k + 1)]
    return Poly({(l, k - l, r - k): c for l, c in enumerate(coeffs)})


@st.composite
def multivectors(draw, degree=None, max_deg: int = 2):
    d = draw(st.integers(0, 3)) if degree is None else degree
    comps = [draw(polys(max_deg=max_deg, max_terms=3)) for _ in BASIS[d]]
    return MultiVector.from_components(d, comps)


@st.composite
def matrices(draw, max_rows: int = 4, max_cols: int = 4):
    from quadpoisson.linalg import Matrix
    rows = draw(st.integers(0, max_rows))
    cols = draw(st.integers(0, max_cols))
    return Matrix(rows, cols, [[draw(small_ints) for _ in range(cols)] for _ in range(rows)])
