from fractions import Fraction

import pytest
import sympy

from rma.errors import DomainError, ResourceError
from rma.exactpoly import MPoly, UPoly, gcd_list
from rma.fieldext import (
    AnnihilatorPoly, companion_vector_field, eliminate_minimal_poly, extension_degree,
    find_primitive_element, integralize, load_golden_fullR, parity_check, pinchuk_minimal_poly,
    pinchuk_q_in_fh, verify_annihilation,
)
from rma.ratfield import RatFunc, RMap

from conftest import from_sympy, to_sympy


def one_var():
    return MPoly.var(0, 1)


def R_from(text, names=("Y", "T")):
    """Annihilator from an expression in (Y..., T)."""
    p = MPoly.parse(text, list(names))
    m = len(names) - 1
    up = p.as_upoly(m).map_coeffs(lambda c: c.drop_variables(list(range(m))), MPoly.zero(m))
    return AnnihilatorPoly(m, up)


# -- the structured Pinchuk derivation ----------------------------------------


def test_q_in_fh_coefficients(bundle):
    f, h = MPoly.gens(2)
    c0, c1, c2, c3 = pinchuk_q_in_fh(bundle)
    assert c0 == -(h ** 4) * (h + 1) ** 2
    assert c1 == h ** 3 * (h + 1) * (6 * h + 8)
    assert c2 == -Fraction(75, 4) * h ** 4 - 75 * h ** 3 - 98 * h ** 2
    assert c3 == -170 * h - 195 * h ** 2 - 75 * h ** 3


def test_q_in_fh_against_sympy(bundle):
    # independent oracle: eliminate t from f*t = h*(f - h(h+1)) by direct division
    x, y = sympy.symbols("x y")
    t = x * y - 1
    h = t * (x * t + 1)
    f = (x * t + 1) ** 2 * (t ** 2 + y)
    f_, h_ = sympy.symbols("f h")
    coeffs = pinchuk_q_in_fh(bundle)
    expr = sum(to_sympy(c, (f_, h_)) * f_ ** k for k, c in enumerate(coeffs))
    lhs = sympy.expand(expr.subs({f_: f, h_: h}, simultaneous=True))
    rhs = sympy.expand(f ** 2 * to_sympy(bundle.Q, (x, y)))
    assert sympy.expand(lhs - rhs) == 0


def test_minimal_poly_matches_golden(bundle):
    assert pinchuk_minimal_poly(bundle).to_json() == load_golden_fullR().to_json()


def test_minimal_poly_coefficients(bundle):
    R = bundle.R
    P, Q = MPoly.gens(2)
    assert R.coeff(6) == MPoly.const(Fraction(197, 4), 2)
    assert R.coeff(5) == 104 - Fraction(363, 2) * P
    assert R.coeff(4) == 63 - 421 * P + Fraction(825, 4) * P * P
    assert R.coeff(0) == -(P * P) * Q


def test_minimal_poly_specializations(bundle):
    P, Q = MPoly.gens(2)
    zero_P = [c.substitute([MPoly.zero(2), Q]) for c in bundle.R.coeffs]
    expected = [MPoly.zero(2), MPoly.zero(2), -Q, MPoly.zero(2), MPoly.const(63, 2),
                MPoly.const(104, 2), MPoly.const(Fraction(197, 4), 2)]
    assert zero_P == expected
    T = one_var()
    both = UPoly([c.evaluate([0, 0]) for c in bundle.R.coeffs])
    assert MPoly.from_upoly(both, 0, 1) == T ** 4 * (Fraction(197, 4) * T * T + 104 * T + 63)


def test_annihilation_pinchuk(bundle):
    assert verify_annihilation(bundle.R, bundle.map(), bundle.h)


def test_annihilation_small_examples():
    x = one_var()
    R = R_from("T^2 - Y")
    F = RMap.from_polys([x * x])
    assert verify_annihilation(R, F, x)
    assert not verify_annihilation(R, F, x + 1)


def test_pinchuk_R_is_primitive_and_squarefree(bundle):
    assert bundle.R.primitive_flag
    assert bundle.R.is_squarefree()


def test_pinchuk_R_partials(bundle):
    field = companion_vector_field(bundle.R)
    P, Q, T = MPoly.gens(3)
    dQ = AnnihilatorPoly(2, field.grad_y[1]).as_mpoly()
    assert dQ == -((T - P) ** 2)
    dP = AnnihilatorPoly(2, field.grad_y[0]).as_mpoly()
    assert dP.substitute([T, Q, T]) == T ** 3 * (6 * T * T + 14 * T + 8)


def test_companion_for_square():
    field = companion_vector_field(R_from("T^2 - Y"))
    assert field.grad_y[0] == UPoly([-MPoly.one(1)], MPoly.zero(1))
    assert field.r_prime == UPoly([MPoly.zero(1), 2 * MPoly.one(1)], MPoly.zero(1))


def test_golden_file_rejects_bad_json(tmp_path):
    bad = tmp_path / "fullR.json"
    bad.write_text('{"T_degree": 3, "coeffs": [[["1", [0, 0]]]]}')
    with pytest.raises(Exception):
        load_golden_fullR(str(bad))


# -- generic elimination ------------------------------------------------------


def test_eliminate_cubic():
    x = one_var()
    R = eliminate_minimal_poly(RMap.from_polys([x + x ** 3]), x)
    assert R.to_json() == R_from("T^3 + T - Y").to_json()
    assert extension_degree(R) == 3


def test_eliminate_square():
    x = one_var()
    R = eliminate_minimal_poly(RMap.from_polys([x * x]), x)
    assert R.to_json() == R_from("T^2 - Y").to_json()


def test_eliminate_example_uni():
    x = one_var()
    F = RMap(1, (RatFunc(MPoly.one(1), x * x + 1),))
    R = eliminate_minimal_poly(F, x)
    assert R.to_json() == R_from("Y*T^2 + Y - 1").to_json()
    assert extension_degree(R) == 2


def test_eliminate_two_dimensional_against_sympy():
    x, y = MPoly.gens(2)
    F = RMap.from_polys([x + y * y, y])
    R = eliminate_minimal_poly(F, x)
    assert verify_annihilation(R, F, x)
    assert R.degree == 1
    # oracle: x = Y1 - Y2^2
    Y1, Y2, T = sympy.symbols("Y1 Y2 T")
    expected = from_sympy(T - Y1 + Y2 ** 2, (Y1, Y2, T))
    flat = R.as_mpoly()
    assert flat == expected or flat == -expected


def test_eliminate_round_trip_and_content_free():
    x, y = MPoly.gens(2)
    for F, t in [
        (RMap.from_polys([x + y ** 3, y]), x),
        (RMap.from_polys([x * y + x, y - x * x]), x + 2 * y),
        (RMap.from_polys([x ** 3 + x, y + x * x]), y),
    ]:
        R = eliminate_minimal_poly(F, t)
        assert verify_annihilation(R, F, t)
        assert gcd_list(R.coeffs, R.image_arity).is_constant()
        assert R.is_squarefree()


def test_eliminate_budget():
    x = one_var()
    with pytest.raises(ResourceError):
        eliminate_minimal_poly(RMap.from_polys([x ** 30 + x]), x)


# -- integralization ----------------------------------------------------------


def test_integralize_constant_leading_coefficient(bundle):
    t_new, S = integralize(bundle.h, bundle.R, bundle.map())
    assert t_new == RatFunc.poly(bundle.h.scale(Fraction(197, 4)))
    assert S.leading_coefficient == MPoly.one(2)
    assert verify_annihilation(S, bundle.map(), t_new)


def test_integralize_example_uni():
    x = one_var()
    F = RMap(1, (RatFunc(MPoly.one(1), x * x + 1),))
    R = R_from("Y*T^2 + Y - 1")
    t_new, S = integralize(x, R, F)
    assert t_new == RatFunc(x, x * x + 1)
    assert S.to_json() == R_from("T^2 + Y^2 - Y").to_json()
    assert verify_annihilation(S, F, t_new)


def test_integralize_rescale():
    x = one_var()
    R = R_from("3*T^2 - Y")
    t_new, S = integralize(x, R, RMap.from_polys([3 * x * x]))
    assert t_new == RatFunc.poly(3 * x)
    assert S.to_json() == R_from("T^2 - 3*Y").to_json()


# -- parity and primitive elements --------------------------------------------


def test_parity():
    assert parity_check(6, 2)
    assert parity_check(3, 1)
    assert not parity_check(6, 1)
    with pytest.raises(DomainError):
        parity_check(2, 3)


def test_primitive_element_search():
    x, y = MPoly.gens(2)
    F = RMap.from_polys([x * x, y * y])
    res = find_primitive_element(F, max_k=4)
    assert res.status == "verified"
    assert res.annihilator.degree == 4
    assert verify_annihilation(res.annihilator, F, res.t)
