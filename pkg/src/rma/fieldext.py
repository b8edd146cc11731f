"""Annihilating polynomials of primitive elements over the field Q(F).

An :class:`AnnihilatorPoly` is a polynomial ``R(T)`` whose coefficients are
polynomials in the image variables ``Y1..Yn``; it annihilates ``t`` when
``R(F(x))(t(x))`` is identically zero.  Two routes build one: a structured
derivation specific to Pinchuk maps, and generic resultant elimination for
small maps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Sequence

from .errors import ConsistencyError, DomainError, ResourceError, StructuralError
from .exactpoly import MPoly, UPoly, gcd, gcd_list, resultant_in
from .ratfield import RatFunc, RMap

SYLVESTER_BUDGET = 24


@dataclass(frozen=True)
class AnnihilatorPoly:
    """``R(T) = sum coeffs[k] * T**k`` with coefficients in Q[Y1..Yn]."""

    image_arity: int
    poly: UPoly
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.poly:
            raise DomainError("annihilator must be nonzero")
        for c in self.poly.coeffs:
            if not isinstance(c, MPoly) or c.nvars != self.image_arity:
                raise StructuralError("coefficients must be polynomials in the image variables")
        if not self.names:
            default = ("Y",) if self.image_arity == 1 else tuple(f"Y{i + 1}" for i in range(self.image_arity))
            object.__setattr__(self, "names", default)

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[MPoly], names=()) -> "AnnihilatorPoly":
        n = coeffs[0].nvars
        return cls(n, UPoly(coeffs, MPoly.zero(n)), tuple(names))

    @property
    def degree(self) -> int:
        return self.poly.degree

    def coeff(self, k: int) -> MPoly:
        return self.poly.coeff(k)

    @property
    def coeffs(self) -> tuple[MPoly, ...]:
        return self.poly.coeffs

    @property
    def leading_coefficient(self) -> MPoly:
        return self.poly.lc

    @property
    def primitive_flag(self) -> bool:
        """True when the coefficients have no nonconstant common divisor."""
        return gcd_list(self.coeffs, self.image_arity).is_constant()

    def is_squarefree(self) -> bool:
        """Nonzero discriminant-bearing resultant of ``R`` and ``dR/dT``."""
        if self.degree < 1:
            return True
        n = self.image_arity + 1
        full = self.as_mpoly(n)
        return bool(resultant_in(full, full.diff(n - 1), n - 1))

    def as_mpoly(self, nvars: int | None = None) -> MPoly:
        """Flatten to a polynomial in ``(Y1..Yn, T)``."""
        n = self.image_arity + 1 if nvars is None else nvars
        emb = list(range(self.image_arity))
        return MPoly.from_upoly(self.poly.map_coeffs(lambda c: c.embed(n, emb), MPoly.zero(n)),
                                self.image_arity, n)

    def specialize(self, point: Sequence) -> UPoly:
        pt = [Fraction(v) for v in point]
        if len(pt) != self.image_arity:
            raise StructuralError(f"point has {len(pt)} coordinates, expected {self.image_arity}")
        return UPoly([Fraction(c.evaluate(pt)) for c in self.coeffs])

    def substitute_image(self, values: Sequence) -> UPoly:
        """Replace the image variables by polynomials or rational functions."""
        return UPoly([c.evaluate(list(values)) for c in self.coeffs], values[0] * 0)

    def to_json(self) -> dict:
        return {"T_degree": self.degree, "coeffs": [c.to_literal() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict, names=()) -> "AnnihilatorPoly":
        try:
            lits = data["coeffs"]
            deg = data["T_degree"]
            arity = None
            for lit in lits:
                if lit:
                    arity = len(lit[0][1])
                    break
            if arity is None:
                raise StructuralError("all coefficients are zero")
            coeffs = [MPoly.from_literal(lit, arity) for lit in lits]
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed annihilator JSON: {exc}") from exc
        R = cls.from_coeffs(coeffs, names)
        if R.degree != deg:
            raise StructuralError(f"T_degree {deg} disagrees with coefficient list")
        return R

    def format(self) -> str:
        return self.poly.format("T", self.names)


# ---------------------------------------------------------------------------
# structured derivation for Pinchuk maps


FH_NAMES = ("f", "h")
PQ_NAMES = ("P", "Q")


def pinchuk_q_in_fh(bundle) -> list[MPoly]:
    """Coefficients of ``f**0..f**3`` in the expansion of ``f**2 * Q`` over Q[h].

    Uses ``f*t = h*(f - h*(h+1))``, so ``f**2 q = -(f t)**2 - 6 f (f t) h (h+1)``
    is a polynomial in ``f`` and ``h``; subtracting ``f**2 u(f, h)`` gives the
    full expression.  Each returned coefficient is an MPoly in ``(f, h)``
    involving ``h`` only.
    """
    f, h = MPoly.gens(2)
    ft = h * (f - h * (h + 1))
    f2q = -(ft * ft) - 6 * f * ft * h * (h + 1)
    expr = f2q - f * f * bundle.u_spec
    coeffs = expr.as_upoly(0).coeffs
    return [c for c in coeffs] + [MPoly.zero(2)] * (4 - len(coeffs))


def pinchuk_minimal_poly(bundle) -> AnnihilatorPoly:
    """``R(T)`` over Q[P, Q] obtained from ``f**2 Q`` with ``f = P - T`` and ``h = T``."""
    P, Q = MPoly.gens(2)
    coeffs = pinchuk_q_in_fh(bundle)
    # ring (P, Q, T): substitute f := P - T, h := T
    Pr, Qr, T = MPoly.gens(3)
    f_sub = Pr - T
    expr = MPoly.zero(3)
    fk = MPoly.one(3)
    for c in coeffs:
        expr = expr + fk * c.substitute([f_sub, T])
        fk = fk * f_sub
    R = expr - f_sub * f_sub * Qr
    up = R.as_upoly(2).map_coeffs(lambda c: c.drop_variables([0, 1]), MPoly.zero(2))
    return AnnihilatorPoly(2, up, PQ_NAMES)


def load_golden_fullR(path=None) -> AnnihilatorPoly:
    if path is None:
        text = resources.files("rma.data").joinpath("fullR.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return AnnihilatorPoly.from_json(json.loads(text), PQ_NAMES)


# ---------------------------------------------------------------------------
# annihilation checks


def _horner(R: AnnihilatorPoly, image_vals: list, tval):
    acc = None
    for c in reversed(R.coeffs):
        cv = c.evaluate(image_vals) if c else image_vals[0] * 0
        acc = cv if acc is None else acc * tval + cv
    return acc


def verify_annihilation(R: AnnihilatorPoly, F: RMap, t: RatFunc | MPoly) -> bool:
    """Exact test that ``R(F(x))(t(x))`` is the zero rational function."""
    if F.dim != R.image_arity:
        raise StructuralError("map dimension must equal the annihilator's image arity")
    if isinstance(t, MPoly):
        t = RatFunc.poly(t)
    if t.nvars != F.domain_arity:
        raise StructuralError("t must live on the domain of F")
    if F.is_polynomial() and t.is_polynomial():
        vals = F.polys()
        tv = t.num.scale(1 / Fraction(t.den.constant_value()))
        return not _horner(R, vals, tv)
    return _horner(R, list(F.components), t).is_zero()


# ---------------------------------------------------------------------------
# generic elimination


def _system(F: RMap, t: RatFunc) -> tuple[list[MPoly], int]:
    """Polynomial equations in ``(x1..xn, Y1..Yn, T)`` cutting out the graph."""
    n = F.domain_arity
    m = F.dim
    size = n + m + 1
    emb = list(range(n))
    eqs = []
    for i, c in enumerate(F.components):
        Y = MPoly.var(n + i, size)
        eqs.append(c.den.embed(size, emb) * Y - c.num.embed(size, emb))
    T = MPoly.var(n + m, size)
    eqs.append(t.den.embed(size, emb) * T - t.num.embed(size, emb))
    return eqs, size


def _eliminate(eqs: list[MPoly], order: Sequence[int]) -> MPoly:
    current = list(eqs)
    for v in order:
        with_v = [e for e in current if e.degree(v) > 0]
        without = [e for e in current if e.degree(v) <= 0]
        if not with_v:
            continue
        pivot = min(with_v, key=lambda e: (e.degree(v), len(e)))
        new = []
        for e in with_v:
            if e is pivot:
                continue
            if pivot.degree(v) + e.degree(v) > SYLVESTER_BUDGET:
                raise ResourceError(
                    f"Sylvester matrix of size {pivot.degree(v) + e.degree(v)} exceeds the "
                    f"{SYLVESTER_BUDGET}x{SYLVESTER_BUDGET} budget; use the structured Pinchuk derivation")
            r = resultant_in(pivot, e, v)
            if not r:
                continue
            new.append(r.integer_primitive()[1])
        if not new and len(with_v) == 1:
            # variable occurs in one equation only: that equation imposes nothing
            current = without
        else:
            current = without + new
    live = [e for e in current if e]
    if not live:
        raise ConsistencyError("elimination produced only zero polynomials")
    return min(live, key=lambda e: (e.total_degree(), len(e)))


def _strip(p: MPoly, n: int, m: int) -> MPoly:
    """Remove factors free of ``T`` and factors involving ``T`` only."""
    tvar = n + m
    if p.degree(tvar) <= 0:
        raise ConsistencyError("eliminant does not involve T")
    cont = gcd_list(p.as_upoly(tvar).coeffs, p.nvars)
    if not cont.is_constant():
        p = p.divexact(cont)
    yset = set(range(n, n + m))
    groups: dict = {}
    for e, c in p.items():
        key = tuple(e[i] for i in sorted(yset))
        ne = tuple(0 if i in yset else k for i, k in enumerate(e))
        groups.setdefault(key, {})[ne] = c
    tcont = gcd_list((MPoly(p.nvars, g) for g in groups.values()), p.nvars)
    if not tcont.is_constant():
        p = p.divexact(tcont)
    sq = gcd(p, p.diff(tvar))
    if not sq.is_constant():
        p = p.divexact(sq)
    return p.integer_primitive()[1]


def eliminate_minimal_poly(F: RMap, t: RatFunc | MPoly) -> AnnihilatorPoly:
    """Annihilator of ``t`` over Q[Y] by resultant elimination.

    The result is content-free, squarefree over Q(Y) and of minimal degree
    among the candidates produced by two elimination orders; its
    annihilation of ``t`` is verified before returning.
    """
    if isinstance(t, MPoly):
        t = RatFunc.poly(t)
    n, m = F.domain_arity, F.dim
    eqs, size = _system(F, t)
    xs = list(range(n))
    by_degree = sorted(xs, key=lambda v: -max(e.degree(v) for e in eqs))
    orders = [by_degree]
    if n > 1:
        orders.append(list(reversed(by_degree)))
    candidates = []
    for order in orders:
        cand = _strip(_eliminate(eqs, order), n, m)
        candidates.append(cand)
    best = candidates[0]
    for other in candidates[1:]:
        g = gcd(best, other)
        if g.degree(n + m) > 0:
            best = g
    keep = list(range(n, n + m + 1))
    options = []
    for p in (best, *candidates):
        if p not in options:
            options.append(p)
    options.sort(key=lambda p: (p.degree(n + m), len(p)))
    for cand in options:
        flat = cand.drop_variables(keep)
        up = flat.as_upoly(m).map_coeffs(lambda c: c.drop_variables(list(range(m))), MPoly.zero(m))
        R = AnnihilatorPoly(m, up)
        if verify_annihilation(R, F, t):
            return R
    raise ConsistencyError("no eliminated candidate annihilates t")


def extension_degree(R: AnnihilatorPoly) -> int:
    return R.degree


def integralize(t: RatFunc | MPoly, R: AnnihilatorPoly, F: RMap) -> tuple[RatFunc, AnnihilatorPoly]:
    """Scale ``t`` by ``a(F)``, ``a`` the leading coefficient, to get a monic relation.

    ``S(T) = a**(d-1) * R(T / a)``, i.e. the ``k``-th coefficient is
    ``r_k * a**(d-1-k)``.
    """
    if isinstance(t, MPoly):
        t = RatFunc.poly(t)
    d = R.degree
    a = R.leading_coefficient
    coeffs = [R.coeff(k) * a ** (d - 1 - k) for k in range(d)]
    coeffs.append(MPoly.one(R.image_arity))
    S = AnnihilatorPoly(R.image_arity, UPoly(coeffs, MPoly.zero(R.image_arity)), R.names)
    a_of_F = RatFunc.poly(a).substitute(F.components)
    return a_of_F * t, S


@dataclass(frozen=True)
class CompanionField:
    """Partials of ``R`` in the image variables and in ``T``."""

    grad_y: tuple[UPoly, ...]
    r_prime: UPoly


def companion_vector_field(R: AnnihilatorPoly) -> CompanionField:
    z = MPoly.zero(R.image_arity)
    grads = tuple(R.poly.map_coeffs(lambda c, i=i: c.diff(i), z) for i in range(R.image_arity))
    return CompanionField(grads, R.poly.derivative())


def parity_check(d: int, N: int) -> bool:
    """Degree and maximal fiber size must differ by an even number."""
    if not 1 <= N <= d:
        raise DomainError(f"fiber count {N} outside 1..{d}")
    return (d - N) % 2 == 0


# ---------------------------------------------------------------------------
# primitive-element search


@dataclass(frozen=True)
class PrimitiveSearch:
    t: MPoly | None
    annihilator: AnnihilatorPoly | None
    status: str
    multiplier: int | None = None


def find_primitive_element(F: RMap, max_k: int = 16) -> PrimitiveSearch:
    """Try ``t = x1 + k*x2 + k**2*x3 + ...`` for ``k = 1..max_k``.

    A candidate is accepted when its annihilator degree equals the product
    of the degrees obtained for the coordinates separately.
    """
    n = F.domain_arity
    xs = MPoly.gens(n)
    target = 1
    for x in xs:
        target *= eliminate_minimal_poly(F, x).degree
    last = None
    for k in range(1, max_k + 1):
        t = MPoly.zero(n)
        for i, x in enumerate(xs):
            t = t + x.scale(k ** i)
        R = eliminate_minimal_poly(F, t)
        last = (t, R, k)
        if R.degree == target:
            return PrimitiveSearch(t, R, "verified", k)
    if last is None:
        return PrimitiveSearch(None, None, "unverified")
    return PrimitiveSearch(last[0], last[1], "unverified", last[2])


def describe_coeffs(R: AnnihilatorPoly) -> list[str]:
    return [f"T^{k}: {c.format(R.names)}" for k, c in enumerate(R.coeffs)]


__all__ = [
    "AnnihilatorPoly", "CompanionField", "PrimitiveSearch", "companion_vector_field",
    "eliminate_minimal_poly", "extension_degree", "find_primitive_element", "integralize",
    "load_golden_fullR", "parity_check", "pinchuk_minimal_poly", "pinchuk_q_in_fh",
    "verify_annihilation",
]
