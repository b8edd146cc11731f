from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings

from rma.errors import DomainError
from rma.exactpoly import MPoly, UPoly
from rma.fieldext import AnnihilatorPoly
from rma.realroots import (
    ISOLATION_WIDTH, DenseVerdict, FiberStatus, SampleSpec, SturmChain, classify_point_roots,
    dense_image_test, fiber_count, isolate_roots, simplicity_key, squarefree_decompose, sturm_count,
)

from conftest import upolys

INF = float("inf")


def U(*coeffs):
    return UPoly([Fraction(c) for c in coeffs])


def T_minus_Y():
    y = MPoly.var(0, 1)
    one, zero = MPoly.one(1), MPoly.zero(1)
    return AnnihilatorPoly.from_coeffs([-y, zero, one])


def sympy_poly(p: UPoly):
    t = sympy.Symbol("t")
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)], t)


# -- squarefree decomposition ------------------------------------------------


def test_squarefree_simple_case():
    p = U(0, 0, -1, 1)  # T^2 (T - 1)
    assert squarefree_decompose(p) == [(U(0, 1), 2), (U(-1, 1), 1)]


def test_squarefree_input_is_single_factor():
    p = U(-2, 0, 1)
    assert squarefree_decompose(p) == [(p, 1)]


def test_squarefree_pinchuk_specialization():
    p = U(0, 0, 1, 0, 63, 104, Fraction(197, 4))
    factors = squarefree_decompose(p)
    assert factors == [(U(0, 1), 2), (U(1, 0, 63, 104, Fraction(197, 4)).monic(), 1)]


def test_squarefree_zero_raises():
    with pytest.raises(DomainError):
        squarefree_decompose(UPoly([]))


@settings(max_examples=300)
@given(upolys(max_degree=5), upolys(max_degree=3))
def test_squarefree_product_recovers_input(a, b):
    p = a * b * b
    if p.degree < 1:
        return
    factors = squarefree_decompose(p)
    prod = U(1)
    for f, m in factors:
        prod = prod * f ** m
    assert prod.monic() == p.monic()
    oracle = sympy.sqf_list(sympy_poly(p))[1]
    assert sorted(m for _, m in factors) == sorted(m for _, m in oracle)


# -- Sturm counts -------------------------------------------------------------


def test_sturm_two_roots():
    assert sturm_count(U(-2, 0, 1)) == 2


def test_sturm_no_roots():
    assert sturm_count(U(1, 0, 1)) == 0


def test_sturm_quadratics_from_level_set_lemma():
    assert sturm_count(U(63, 104, Fraction(197, 4))) == 0
    assert 104 ** 2 - 197 * 63 < 0


def test_sturm_half_open_interval():
    p = U(0, -1, 0, 1)  # T^3 - T, roots -1, 0, 1
    assert sturm_count(p, Fraction(-1), Fraction(1)) == 2
    assert sturm_count(p, -INF, Fraction(0)) == 2


def test_sturm_chain_ends_in_constant():
    chain = SturmChain.of(U(-1, 1, 0, 1))
    assert chain.sequence[-1].degree == 0


# -- isolation ----------------------------------------------------------------


def test_isolate_cubic():
    s = isolate_roots(U(-1, 1, 0, 1))
    assert s.distinct_real_count == 1 and s.complex_pair_count == 1
    (r,) = s.roots
    assert r.hi - r.lo <= ISOLATION_WIDTH
    assert abs(float(r) - 0.6823278038) < 1e-9
    s.check()


def test_isolate_with_multiplicity():
    p = U(-1, 1) ** 2 * U(2, 1)
    s = isolate_roots(p)
    assert [r.multiplicity for r in s.roots] == [1, 2]
    assert s.roots[0].contains(-2) and s.roots[1].contains(1)


def test_isolate_no_real_roots():
    s = isolate_roots(U(1, 0, 0, 0, 1))
    assert s.roots == () and s.complex_pair_count == 2


@settings(max_examples=1000)
@given(upolys(max_degree=8))
def test_sturm_agrees_with_isolation(p):
    if p.degree < 1:
        return
    s = isolate_roots(p)
    s.check()
    assert sturm_count(p) == s.distinct_real_count
    for r in s.roots:
        if not r.is_exact:
            assert r.hi - r.lo <= ISOLATION_WIDTH


@settings(max_examples=200)
@given(upolys(max_degree=6))
def test_isolation_matches_sympy(p):
    if p.degree < 1:
        return
    roots = sympy.real_roots(sympy_poly(p))
    distinct = sorted(set(roots), key=lambda r: float(r))
    s = isolate_roots(p)
    assert len(distinct) == s.distinct_real_count
    for r, o in zip(s.roots, distinct):
        if o.is_rational:
            assert r.contains(Fraction(int(o.p), int(o.q)))
        else:
            assert float(r.lo) - 1e-12 <= float(o) <= float(r.hi) + 1e-12
        assert r.multiplicity == roots.count(o)


# -- fibers -------------------------------------------------------------------


def test_fiber_pinchuk_generic(bundle):
    rep = fiber_count(bundle.R, (1, 1))
    assert rep.status is FiberStatus.FULL_DEGREE
    assert rep.roots.distinct_real_count == 2
    assert all(r.multiplicity == 1 for r in rep.roots.roots)


def test_fiber_pinchuk_double_root(bundle):
    rep = fiber_count(bundle.R, (0, -1))
    assert [(r.lo, r.hi, r.multiplicity) for r in rep.roots.roots] == [(0, 0, 2)]


def test_fiber_degree_drop_example_uni():
    y = MPoly.var(0, 1)
    R = AnnihilatorPoly.from_coeffs([y - 1, MPoly.zero(1), y])
    rep = fiber_count(R, (0,))
    assert rep.status is FiberStatus.DEGREE_DROP
    assert rep.specialization == U(-1)
    assert rep.roots.distinct_real_count == 0


def test_fiber_identically_zero_raises():
    y = MPoly.var(0, 1)
    R = AnnihilatorPoly.from_coeffs([y, y])
    with pytest.raises(DomainError):
        fiber_count(R, (0,))


def test_fiber_json_uses_exact_strings(bundle):
    data = fiber_count(bundle.R, (0, -1)).to_json()
    assert data["point"] == ["0", "-1"]
    assert data["roots"]["distinct_real_roots"][0] == {"lo": "0", "hi": "0", "multiplicity": 2}


def test_classify_roots(bundle):
    assert [c.kind for c in classify_point_roots(bundle.R, (1, 1))] == ["Simple", "Simple"]
    assert [c.kind for c in classify_point_roots(bundle.R, (0, -1))] == ["Repeated(2)"]
    assert [c.kind for c in classify_point_roots(T_minus_Y(), (0,))] == ["Repeated(2)"]


# -- dense image --------------------------------------------------------------


def test_dense_odd_degree():
    y = MPoly.var(0, 1)
    one, zero = MPoly.one(1), MPoly.zero(1)
    R = AnnihilatorPoly.from_coeffs([-y, one, zero, one])
    assert dense_image_test(R).verdict is DenseVerdict.DENSE_BY_ODD_DEGREE


def test_dense_counterexample_for_square():
    res = dense_image_test(T_minus_Y())
    assert res.verdict is DenseVerdict.COUNTEREXAMPLE
    assert res.point == (Fraction(-1),)


def test_dense_pinchuk_no_counterexample(bundle):
    res = dense_image_test(bundle.R)
    assert res.verdict is DenseVerdict.NO_COUNTEREXAMPLE
    assert res.samples == 17 * 17 + 256


def test_sample_grid_is_seeded():
    a = SampleSpec(seed=5).points(2)
    b = SampleSpec(seed=5).points(2)
    c = SampleSpec(seed=6).points(2)
    assert a == b and a != c


def test_simplicity_key_orders_by_height():
    assert simplicity_key((Fraction(-1),)) < simplicity_key((Fraction(1, 2),))
    assert simplicity_key((Fraction(-1),)) < simplicity_key((Fraction(1),))
