import os
from fractions import Fraction

import pytest
import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rma.exactpoly import MPoly, UPoly
from rma.pinchuk import build_pinchuk

settings.register_profile(
    "rma", deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("rma")

EXPENSIVE = os.environ.get("RMA_EXPENSIVE", "") not in ("", "0")

expensive = pytest.mark.skipif(not EXPENSIVE, reason="set RMA_EXPENSIVE=1 to run")


@pytest.fixture(scope="session")
def bundle():
    return build_pinchuk()


# -- strategies -------------------------------------------------------------

small_rationals = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))


@st.composite
def mpolys(draw, nvars=2, max_degree=4, max_terms=5, coeffs=small_rationals):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        exps = draw(st.lists(st.integers(0, max_degree), min_size=nvars, max_size=nvars))
        if sum(exps) > max_degree:
            continue
        terms[tuple(exps)] = draw(coeffs)
    return MPoly(nvars, terms)


@st.composite
def upolys(draw, max_degree=8, height=6, nonzero=True):
    coeffs = draw(st.lists(st.integers(-height, height), min_size=1, max_size=max_degree + 1))
    if nonzero and not any(coeffs):
        coeffs[-1] = 1
    return UPoly([Fraction(c) for c in coeffs])


# -- sympy oracle -----------------------------------------------------------


def to_sympy(p: MPoly, syms):
    expr = sympy.Integer(0)
    for exps, c in p.items():
        term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for s, e in zip(syms, exps):
            term *= s ** e
        expr += term
    return sympy.expand(expr)


def from_sympy(expr, syms) -> MPoly:
    poly = sympy.Poly(sympy.expand(expr), *syms)
    terms = {}
    for monom, c in poly.terms():
        c = sympy.Rational(c)
        terms[tuple(monom)] = Fraction(int(c.p), int(c.q))
    return MPoly(len(syms), terms)


# -- acceptance reporting ---------------------------------------------------

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record_acceptance(number: int, passed: bool, note: str = "") -> None:
    ACCEPTANCE[number] = (passed, note)
    print(acceptance_line(number))


def acceptance_line(number: int) -> str:
    passed, note = ACCEPTANCE[number]
    return f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}" + (f"  {note}" if note else "")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(acceptance_line(n))
