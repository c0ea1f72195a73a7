from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bifocal.ratmat import RatMat

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_rationals = st.fractions(min_value=-9, max_value=9, max_denominator=6)


@st.composite
def matrices(draw, rows=None, cols=None, max_dim=5, elements=small_rationals):
    r = draw(st.integers(1, max_dim)) if rows is None else rows
    c = draw(st.integers(1, max_dim)) if cols is None else cols
    data = draw(st.lists(st.lists(elements, min_size=c, max_size=c), min_size=r, max_size=r))
    return RatMat(data, cols=c)


@st.composite
def square_matrices(draw, max_dim=5, elements=small_rationals):
    n = draw(st.integers(1, max_dim))
    return draw(matrices(rows=n, cols=n, elements=elements))


def to_sympy(m: RatMat):
    import sympy
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row]
                         for row in m.tolist()])


def from_sympy(m) -> RatMat:
    return RatMat([[Fraction(int(x.p), int(x.q)) for x in m.row(r)] for r in range(m.rows)],
                  cols=m.cols)


@pytest.fixture
def sympy_mod():
    return pytest.importorskip("sympy")


# one summary line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE, key=lambda s: int(s.split("-")[1])):
            terminalreporter.write_line(ACCEPTANCE[key])
