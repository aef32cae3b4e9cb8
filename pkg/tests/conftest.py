from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from heisgamma.linalg import Mat3

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-8, max_value=8, max_denominator=12)
nonzero_rationals = rationals.filter(lambda q: q != 0)
squares = st.fractions(min_value=Fraction(1, 4), max_value=6, max_denominator=6).map(lambda q: q * q)


@st.composite
def automorphism_matrices(draw):
    a1, a2, a3, a4 = (draw(rationals) for _ in range(4))
    d = a1 * a4 - a2 * a3
    if d == 0:
        a1 += 1
        d = a1 * a4 - a2 * a3
        if d == 0:
            a1, a2, a3, a4, d = Fraction(1), Fraction(0), Fraction(0), Fraction(1), Fraction(1)
    return Mat3([[a1, a2, 0], [a3, a4, 0], [draw(rationals), draw(rationals), d]])


@st.composite
def order3_params(draw):
    """(a2, a3, a5, a6) with -3 - 4 a2 a3 a rational square."""
    a2 = draw(nonzero_rationals)
    s = draw(st.fractions(min_value=0, max_value=6, max_denominator=5))
    return a2, (-3 - s * s) / (4 * a2), draw(rationals), draw(rationals)


def to_sympy(M):
    import sympy as sp

    return sp.Matrix([[sp.Rational(x.numerator, x.denominator) if isinstance(x, Fraction) else x
                       for x in row] for row in M.rows])


@pytest.fixture
def sp():
    import sympy

    return sympy
