from fractions import Fraction

import pytest
import sympy

from rma.errors import DomainError
from rma.exactpoly import MPoly, UPoly
from rma.pinchuk import (
    CHART_POINT, EXTRA_ZARISKI_POINT, INF, p3_chart_point_check, asymptotic_curve, asymptotic_rows,
    build_pinchuk, case2_quadratic_check, csv_text, extra_point_check, jacobian_sos_identity,
    level_set_param, levelset_rows, off_curve_fibers, q_asymptotic_values, ranges_match,
    shift_family, singular_branches, singular_rows, table1_expected, table1_scan,
    vanishing_roots_check, verify_y_axis_image,
)
from rma.ratfield import jacobian
from rma.realroots import FiberStatus

from conftest import to_sympy

X, Y = sympy.symbols("x y")


# -- the bundle ---------------------------------------------------------------


def test_invariants(bundle):
    assert all(bundle.invariant_checks().values())


def test_degrees(bundle):
    assert bundle.t.total_degree() == 2
    assert bundle.h.total_degree() == 5
    assert bundle.f.total_degree() == 10
    assert bundle.P.total_degree() == 10
    assert bundle.Q.total_degree() == 25


def test_jacobian_identity(bundle):
    assert jacobian_sos_identity(bundle)


def test_jacobian_against_sympy(bundle):
    P, Q = to_sympy(bundle.P, (X, Y)), to_sympy(bundle.Q, (X, Y))
    j = sympy.expand(sympy.diff(P, X) * sympy.diff(Q, Y) - sympy.diff(P, Y) * sympy.diff(Q, X))
    t = X * Y - 1
    h = t * (X * t + 1)
    f = (X * t + 1) ** 2 * (t ** 2 + Y)
    sos = t ** 2 + (t + f * (13 + 15 * h)) ** 2 + f ** 2
    assert sympy.expand(j - sos) == 0


def test_evaluate_matches_polys(bundle):
    for pt in [(1, 0), (1, 1), (Fraction(-2, 3), Fraction(5, 7))]:
        assert bundle.evaluate(*map(Fraction, pt)) == tuple(p.evaluate(list(pt)) for p in (bundle.P, bundle.Q))


def test_u_zero_gives_q():
    b = build_pinchuk(MPoly.zero(2))
    assert not b.u
    assert b.Q == b.q


def test_u_must_be_bivariate():
    with pytest.raises(DomainError):
        build_pinchuk(MPoly.var(0, 1))


def test_shift_family(bundle):
    T = UPoly([Fraction(0), Fraction(1)])
    assert shift_family(bundle, UPoly([])).Q == bundle.Q
    assert shift_family(bundle, T).Q.total_degree() == 25
    cube = shift_family(bundle, UPoly([Fraction(0), 0, 0, 1]))
    assert cube.Q == bundle.Q + bundle.P ** 3
    assert cube.Q.total_degree() == 30
    # the determinant is unchanged by Q -> Q + S(P)
    assert jacobian(cube.map()).det == jacobian(bundle.map()).det


def test_shift_family_annihilator_degree(bundle):
    shifted = shift_family(bundle, UPoly([Fraction(0), Fraction(1)]))
    assert shifted.R.degree == 6


def test_y_axis_line(bundle):
    assert verify_y_axis_image(bundle)


# -- asymptotic curve ---------------------------------------------------------


def test_curve_identity():
    assert asymptotic_curve().identity_holds()


def test_curve_points():
    c = asymptotic_curve()
    assert c.point(Fraction(1)) == (0, 0)
    assert c.point(Fraction(-1)) == (0, 208)
    assert c.point(Fraction(0)) == (-1, Fraction(-163, 4))


def test_extra_point():
    checks = extra_point_check(asymptotic_curve())
    assert all(checks.values())
    assert EXTRA_ZARISKI_POINT == (Fraction(-104, 75), Fraction(-18928, 375))


def test_intersections_with_P():
    c = asymptotic_curve()
    assert c.intersections_with_P(3) == [Fraction(-4235, 4), Fraction(16821, 4)]
    assert c.intersections_with_P(-1) == [Fraction(-163, 4)]
    assert c.intersections_with_P(-2) == []


def test_intersections_match_parameter_values():
    c = asymptotic_curve()
    for s in (Fraction(2), Fraction(-2), Fraction(3, 2)):
        P, Q = c.point(s)
        assert Q in c.intersections_with_P(P)


def test_q_asymptotic_values():
    qp, qm = q_asymptotic_values(3)
    assert (qp, qm) == (Fraction(-4235, 4), Fraction(16821, 4))
    qp, qm = q_asymptotic_values(Fraction(-3, 4))
    assert qp < qm
    with pytest.raises(DomainError):
        q_asymptotic_values(0)
    with pytest.raises(DomainError):
        q_asymptotic_values(-1)


def test_q_asymptotic_matches_sympy():
    s = sympy.Symbol("s")
    Qs = -sympy.Rational(163, 4) + sympy.Rational(117, 2) * s ** 2 - 29 * s ** 3 + sympy.Rational(345, 4) * s ** 4 - 75 * s ** 5
    c = sympy.Rational(-3, 4)
    r = sympy.sqrt(1 + c)
    qp, qm = q_asymptotic_values(Fraction(-3, 4))
    assert abs(float(qp) - float(Qs.subs(s, r))) < 1e-12
    assert abs(float(qm) - float(Qs.subs(s, -r))) < 1e-12


def test_off_curve_fibers_have_two_simple_roots(bundle):
    reps = off_curve_fibers(bundle, count=40)
    assert len(reps) == 40
    for rep in reps:
        assert rep.status is FiberStatus.FULL_DEGREE
        assert rep.roots.distinct_real_count == 2
        assert all(r.multiplicity == 1 for r in rep.roots.roots)


def test_off_curve_fibers_seeded(bundle):
    a = [r.point for r in off_curve_fibers(bundle, count=5, seed=11)]
    b = [r.point for r in off_curve_fibers(bundle, count=5, seed=11)]
    assert a == b


# -- level-set charts ---------------------------------------------------------


def test_symbolic_generic_chart(bundle):
    (ch,) = level_set_param()
    assert all(ch.verify(bundle).values())


@pytest.mark.parametrize("c", [-1, 0, 3, Fraction(-3, 4), -2])
def test_special_charts(bundle, c):
    for ch in level_set_param(c):
        assert all(ch.verify(bundle).values()), ch.name


def test_chart_point_lies_on_level_set(bundle):
    (ch,) = level_set_param(3)
    x, y = ch.point(Fraction(4))
    assert bundle.P.evaluate([x, y]) == 3
    assert bundle.h.evaluate([x, y]) == 4


def test_p3_chart_point():
    a = p3_chart_point_check()
    assert a.point == CHART_POINT
    assert a.matches_golden
    assert a.ordering == ("case2 plus", "A", "case1 x<0", "case2 minus")


# -- range table --------------------------------------------------------------


@pytest.mark.parametrize("c", ["3", "1/2", "0", "-1/2", "-3/4", "-1", "-5/4", "-2", "7"])
def test_table1_ranges(bundle, c):
    c = Fraction(c)
    scans = table1_scan(bundle, c, samples=512)
    found = [r for s in scans for r in s.ranges()]
    assert all(comp.monotone for s in scans for comp in s.components)
    assert ranges_match(found, table1_expected(c))


def test_table1_c0_values(bundle):
    assert table1_expected(0) == [(0, 208), (-INF, 0), (0, INF), (-INF, 0), (208, INF)]


def test_ranges_match_is_a_multiset_comparison():
    assert ranges_match([(1, 2), (-INF, 0)], [(-INF, 0), (1, 2)])
    assert not ranges_match([(1, 2)], [(1, 2), (1, 2)])
    assert not ranges_match([(1, 2)], [(1, 3)])


# -- singular set -------------------------------------------------------------


def test_singular_branches(bundle):
    branches = singular_branches(bundle)
    assert len(branches) == 4
    for br in branches:
        assert all(br.verify(bundle).values()), br.name


def test_case2_quadratic(bundle):
    for y0 in (Fraction(-1), Fraction(-2), Fraction(-7, 3)):
        assert all(case2_quadratic_check(bundle, y0).values())
    with pytest.raises(DomainError):
        case2_quadratic_check(bundle, 1)


def test_vanishing_roots():
    assert all(vanishing_roots_check().values())


# -- CSV ----------------------------------------------------------------------


def test_asymptotic_rows():
    rows = asymptotic_rows()
    assert len(rows) == 6 * 64 + 1
    assert rows[0][0] == -3 and rows[-1][0] == 3
    text = csv_text(("s", "P", "Q"), rows)
    assert text.splitlines()[0] == "s,P,Q"
    assert text == csv_text(("s", "P", "Q"), asymptotic_rows())


def test_levelset_rows_skip_poles(bundle):
    rows = levelset_rows(bundle, 3)
    params = {r[0] for r in rows}
    assert Fraction(-3) not in params and Fraction(1) not in params
    assert len(rows) < 481
    for v, x, y, q in rows[::40]:
        assert bundle.Q.evaluate([x, y]) == q


def test_singular_rows_positive_and_negative():
    pos, neg = singular_branches()[:2]
    assert all(r[0] > 0 for r in singular_rows(pos, count=16))
    assert all(r[0] < 0 for r in singular_rows(neg, count=16))
