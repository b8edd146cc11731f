"""The Pinchuk map of total degree 25 and its plane geometry.

The map is ``F = (P, Q)`` built from auxiliary polynomials in ``(x, y)``::

    t = x*y - 1,  h = t*(x*t + 1),  f = (x*t + 1)**2 * (t**2 + y)
    P = f + h,    q = -t**2 - 6*t*h*(h + 1),  Q = q - u(f, h)

with the default ``u`` of :func:`default_u_spec`.  Besides the bundle this
module provides rational charts for the level sets ``P = c``, the
asymptotic curve, the four branches where the companion field vanishes,
exact Table-1 style range scans and CSV sample emitters.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .exactpoly import MPoly, UPoly, upoly_divexact, upoly_gcd
from .fieldext import AnnihilatorPoly, pinchuk_minimal_poly
from .quadext import QuadExt, sign_of
from .ratfield import RatFunc, RMap, SOSCertificate, UNDEFINED
from .realroots import FiberReport, fiber_count, isolate_roots, squarefree_decompose
from .seeds import rng

XY = ("x", "y")


def default_u_spec() -> MPoly:
    """``170fh + 91h^2 + 195fh^2 + 69h^3 + 75fh^3 + (75/4)h^4`` in ``(f, h)``."""
    return MPoly.parse("170*f*h + 91*h^2 + 195*f*h^2 + 69*h^3 + 75*f*h^3 + 75/4*h^4", ["f", "h"])


@dataclass(frozen=True)
class PinchukBundle:
    t: MPoly
    h: MPoly
    f: MPoly
    P: MPoly
    q: MPoly
    u: MPoly
    Q: MPoly
    u_spec: MPoly
    R: AnnihilatorPoly | None = field(default=None, compare=False)

    def map(self) -> RMap:
        return RMap.from_polys([self.P, self.Q], XY)

    def evaluate(self, x, y, *, with_aux: bool = False):
        """Evaluate ``(P, Q)`` at values of any ring type (rationals, QuadExt, RatFunc)."""
        t = x * y - 1
        xt1 = x * t + 1
        h = t * xt1
        f = xt1 * xt1 * (t * t + y)
        P = f + h
        q = -(t * t) - 6 * t * h * (h + 1)
        Q = q - self.u_spec.evaluate([f, h])
        if with_aux:
            return {"t": t, "h": h, "f": f, "P": P, "q": q, "Q": Q}
        return P, Q

    def invariant_checks(self) -> dict[str, bool]:
        x, y = MPoly.gens(2)
        t = x * y - 1
        h = t * (x * t + 1)
        f = (x * t + 1) ** 2 * (t * t + y)
        return {
            "t": self.t == t,
            "h": self.h == h,
            "f": self.f == f,
            "P": self.P == f + h,
            "q": self.q == -(t * t) - 6 * t * h * (h + 1),
            "Q": self.Q == self.q - self.u_spec.substitute([f, h]),
        }

    def sos_certificate(self) -> SOSCertificate:
        """``t^2 + (t + f(13 + 15h))^2 + f^2`` as a certificate."""
        g2 = self.t + self.f * (13 + 15 * self.h)
        one = Fraction(1)
        return SOSCertificate(((one, self.t), (one, g2), (one, self.f)))


def build_pinchuk(u_spec: MPoly | None = None) -> PinchukBundle:
    u_spec = default_u_spec() if u_spec is None else u_spec
    if u_spec.nvars != 2:
        raise DomainError("u must be a polynomial in (f, h)")
    x, y = MPoly.gens(2)
    t = x * y - 1
    h = t * (x * t + 1)
    f = (x * t + 1) ** 2 * (t * t + y)
    P = f + h
    q = -(t * t) - 6 * t * h * (h + 1)
    u = u_spec.substitute([f, h])
    Q = q - u
    bundle = PinchukBundle(t, h, f, P, q, u, Q, u_spec)
    return replace(bundle, R=pinchuk_minimal_poly(bundle))


def jacobian_sos_identity(bundle: PinchukBundle) -> bool:
    """``j(P, Q) - [t^2 + (t + f(13+15h))^2 + f^2]`` is identically zero."""
    P, Q = bundle.P, bundle.Q
    j = P.diff(0) * Q.diff(1) - P.diff(1) * Q.diff(0)
    return j == bundle.sos_certificate().expand(2)


def shift_family(bundle: PinchukBundle, S: UPoly) -> PinchukBundle:
    """Replace ``Q`` by ``Q + S(P)``; ``u`` absorbs ``-S(f + h)``."""
    f, h = MPoly.gens(2)
    s_fh = _upoly_at(S, f + h)
    new = build_pinchuk(bundle.u_spec - s_fh)
    if new.Q - bundle.Q - _upoly_at(S, bundle.P):
        raise AssertionError("shifted Q does not equal Q + S(P)")
    return new


def _upoly_at(S: UPoly, p: MPoly) -> MPoly:
    acc = MPoly.zero(p.nvars)
    for c in reversed(S.coeffs):
        acc = acc * p + Fraction(c)
    return acc


def verify_y_axis_image(bundle: PinchukBundle) -> bool:
    """On ``x = 0`` the map is ``(y, 50y + 33/4)``, i.e. ``4Q = 200P + 33``."""
    y = MPoly.var(0, 1)
    zero = MPoly.zero(1)
    P0 = bundle.P.substitute([zero, y])
    Q0 = bundle.Q.substitute([zero, y])
    return P0 == y and Q0 == 50 * y + Fraction(33, 4) and not (4 * Q0 - 200 * P0 - 33)


# ---------------------------------------------------------------------------
# asymptotic curve


@dataclass(frozen=True)
class AsymptoticCurve:
    P_of_s: UPoly
    Q_of_s: UPoly
    min_equation: MPoly

    def point(self, s):
        return self.P_of_s(s), self.Q_of_s(s)

    def identity_holds(self) -> bool:
        Ps = MPoly.from_upoly(self.P_of_s, 0, 1)
        Qs = MPoly.from_upoly(self.Q_of_s, 0, 1)
        return not self.min_equation.substitute([Ps, Qs])

    def intersections_with_P(self, c) -> list:
        """Values of ``Q`` on the Zariski closure above ``P = c`` (exact, sorted)."""
        c = Fraction(c)
        a = Fraction(345, 4) * c * c + 231 * c + 104
        b = (c + 1) ** 3 * (75 * c + 104) ** 2
        if b < 0:
            return []
        r = QuadExt.make(0, 1, b) if b else Fraction(0)
        vals = {a - r, a + r} if b else {a}
        return sorted(vals)


def asymptotic_curve() -> AsymptoticCurve:
    Ps = UPoly([Fraction(-1), 0, 1])
    Qs = UPoly([Fraction(-163, 4), 0, Fraction(117, 2), -29, Fraction(345, 4), -75])
    P, Q = MPoly.gens(2)
    lhs = Q - Fraction(345, 4) * P * P - 231 * P - 104
    rhs = (P + 1) ** 3 * (75 * P + 104) ** 2
    return AsymptoticCurve(Ps, Qs, lhs * lhs - rhs)


EXTRA_ZARISKI_POINT = (Fraction(-104, 75), Fraction(-18928, 375))


def extra_point_check(curve: AsymptoticCurve) -> dict[str, bool]:
    """The isolated point satisfies the equation but has no real parameter."""
    P0, Q0 = EXTRA_ZARISKI_POINT
    s2 = P0 + 1
    return {
        "on_equation": curve.min_equation.evaluate([P0, Q0]) == 0,
        "s_squared": s2 == Fraction(-29, 75),
        "no_real_s": s2 < 0,
    }


def q_asymptotic_values(c) -> tuple:
    """``(q+, q-)``: ``Q(s)`` at ``s = +sqrt(1+c)`` and ``s = -sqrt(1+c)``."""
    c = Fraction(c)
    if c <= -1:
        raise DomainError("q+ and q- need c > -1")
    if c == 0:
        raise DomainError("c = 0 has its own parametrization")
    curve = asymptotic_curve()
    s = QuadExt.sqrt(1 + c)
    qp, qm = curve.Q_of_s(s), curve.Q_of_s(-s)
    if not qp < qm:
        raise AssertionError("expected q+ < q-")
    return qp, qm


def off_curve_fibers(bundle: PinchukBundle, count: int = 200, seed: int | None = None,
                     height: int = 400) -> list[FiberReport]:
    """Fiber reports of ``R`` at seeded random points off the asymptotic curve.

    A point is rejected when it satisfies the curve equation, which also
    excludes the isolated point of its Zariski closure.
    """
    curve = asymptotic_curve()
    gen = rng(seed, "pinchuk-fibers")
    out = []
    while len(out) < count:
        pt = [Fraction(gen.randint(-height, height), gen.randint(1, 16)) for _ in range(2)]
        if curve.min_equation.evaluate(pt) == 0:
            continue
        out.append(fiber_count(bundle.R, pt))
    return out


# ---------------------------------------------------------------------------
# level-set charts


@dataclass(frozen=True)
class LevelSetChart:
    """A rational parametrization ``param -> (x, y)`` of part of ``P = c``.

    ``x`` and ``y`` are RatFuncs in one variable (the parameter), or in
    ``(c, param)`` for the symbolic generic chart.  ``expected`` lists
    identities ``name -> RatFunc`` that the composed quantities satisfy.
    """

    name: str
    param: str
    x: RatFunc
    y: RatFunc
    expected: tuple[tuple[str, RatFunc], ...]
    excluded: tuple = ()

    @property
    def param_index(self) -> int:
        return self.x.nvars - 1

    def compose(self, bundle: PinchukBundle, quantity: str) -> RatFunc:
        aux = bundle.evaluate(self.x, self.y, with_aux=True)
        return aux[quantity]

    def verify(self, bundle: PinchukBundle) -> dict[str, bool]:
        aux = bundle.evaluate(self.x, self.y, with_aux=True)
        return {name: aux[name] == value for name, value in self.expected}

    def point(self, value):
        """Chart point at a rational parameter value, or UNDEFINED."""
        if self.x.nvars != 1:
            raise DomainError("specialize the symbolic chart first")
        xv, yv = self.x.evaluate([value]), self.y.evaluate([value])
        if xv is UNDEFINED or yv is UNDEFINED:
            return UNDEFINED
        return xv, yv


def _generic_chart_symbolic() -> LevelSetChart:
    c, h = MPoly.gens(2)
    den = c - 2 * h - h * h
    x = RatFunc((c - h) * (h + 1), den * den)
    y = RatFunc(den * den * (c - h - h * h), (c - h) * (c - h))
    return LevelSetChart("generic", "h", x, y, (("h", RatFunc.poly(h)), ("P", RatFunc.poly(c))))


def _generic_chart(c: Fraction) -> LevelSetChart:
    h = MPoly.var(0, 1)
    den = c - 2 * h - h * h
    x = RatFunc((c - h) * (h + 1), den * den)
    y = RatFunc(den * den * (c - h - h * h), (c - h) * (c - h))
    return LevelSetChart(f"generic c={c}", "h", x, y,
                         (("h", RatFunc.poly(h)), ("P", RatFunc.const(c, 1))))


def level_set_param(c=None) -> list[LevelSetChart]:
    """Charts covering ``P = c``; ``c=None`` gives the symbolic generic chart."""
    if c is None or c == "c":
        return [_generic_chart_symbolic()]
    c = Fraction(c)
    v = MPoly.var(0, 1)
    V = RatFunc.poly(v)
    one = RatFunc.const(1, 1)
    if c == -1:
        t = V
        s = V
        return [
            LevelSetChart("c=-1 t-chart", "t", -(one / t) - one / (t * t), -(t * t),
                          (("P", RatFunc.const(-1, 1)), ("t", t))),
            LevelSetChart("c=-1 s-chart", "s", -(s * s), -(one / (s * s)) + one / s ** 3 - one / s ** 4,
                          (("P", RatFunc.const(-1, 1)), ("h", -one + one / s))),
        ]
    if c == 0:
        t = V
        hh = V
        return [
            LevelSetChart("c=0 t-chart", "t", -(one / t), -t - t * t,
                          (("P", RatFunc.const(0, 1)), ("Q", -(t * t)))),
            LevelSetChart("c=0 h-chart", "h", -(hh + 1) / (hh * (hh + 2) ** 2), -hh * (hh + 1) * (hh + 2) ** 2,
                          (("P", RatFunc.const(0, 1)), ("h", hh),
                           ("Q", hh * hh * (Fraction(197, 4) * hh * hh + 104 * hh + 63)))),
        ]
    return [_generic_chart(c)]


# ---------------------------------------------------------------------------
# exact range scans along a chart


@dataclass(frozen=True)
class ComponentScan:
    lo: object
    hi: object
    limit_lo: object
    limit_hi: object
    derivative_signs: frozenset
    skipped: int

    @property
    def monotone(self) -> bool:
        return len(self.derivative_signs) == 1 and 0 not in self.derivative_signs

    @property
    def q_range(self) -> tuple:
        a, b = self.limit_lo, self.limit_hi
        return (a, b) if _lt(a, b) else (b, a)


@dataclass(frozen=True)
class ChartScan:
    chart: str
    components: tuple[ComponentScan, ...]
    notes: tuple[str, ...] = ()

    def ranges(self) -> list[tuple]:
        return [comp.q_range for comp in self.components]


INF = float("inf")


def _lt(a, b) -> bool:
    if a == -INF or b == INF:
        return a != b
    if a == INF or b == -INF:
        return False
    return sign_of(b - a) > 0


def _as_univariate(r: RatFunc) -> tuple[UPoly, UPoly]:
    return r.num.to_fraction_upoly(0), r.den.to_fraction_upoly(0)


@dataclass(frozen=True)
class _Pole:
    factor: UPoly          # irreducible over Q: linear or quadratic
    root: object           # Fraction or QuadExt
    other_root: object     # conjugate root for quadratic factors, else None


def _poles(den: UPoly) -> list[_Pole]:
    poles = []
    for fac, _ in _factor_low_degree(den):
        if fac.degree == 1:
            poles.append(_Pole(fac, -fac.coeffs[0] / fac.coeffs[1], None))
        elif fac.degree == 2:
            a, b, c = fac.coeffs[2], fac.coeffs[1], fac.coeffs[0]
            disc = b * b - 4 * a * c
            if disc < 0:
                continue
            r1 = QuadExt.make(-b / (2 * a), -1 / (2 * a), disc)
            r2 = QuadExt.make(-b / (2 * a), 1 / (2 * a), disc)
            poles.append(_Pole(fac, r1, r2))
            poles.append(_Pole(fac, r2, r1))
        else:
            raise DomainError("chart denominator has an irreducible factor of degree > 2")
    poles.sort(key=lambda p: float(p.root))
    return poles


def _factor_low_degree(p: UPoly) -> list[tuple[UPoly, int]]:
    """Split into rational linear factors and a remaining part (quadratics only)."""
    out = []
    for fac, mult in squarefree_decompose(p):
        rest = fac
        summary = isolate_roots(rest)
        for r in summary.roots:
            cand = r.lo if r.is_exact else r.midpoint.limit_denominator(1 << 16)
            if rest.degree >= 1 and rest(cand) == 0:
                lin = UPoly([-cand, Fraction(1)])
                rest = upoly_divexact(rest, lin)
                out.append((lin, mult))
        if rest.degree >= 1:
            out.append((rest.monic(), mult))
    return out


def _multiplicity(p: UPoly, fac: UPoly) -> tuple[int, UPoly]:
    k = 0
    while p.degree >= fac.degree:
        q, r = p.divmod_field(fac)
        if r:
            break
        p = q
        k += 1
    return k, p


def _limit_at(N: UPoly, D: UPoly, pole: _Pole, side: int):
    """One-sided limit of ``N/D`` at a real pole of the chart (side +1 = from the right)."""
    jn, N1 = _multiplicity(N, pole.factor) if N else (0, N)
    jd, D1 = _multiplicity(D, pole.factor)
    if not N:
        return Fraction(0)
    k = jd - jn
    val = N1(pole.root) / D1(pole.root)
    if k < 0:
        return Fraction(0)
    if k == 0:
        return val
    # near the root, factor ~ lc * (h - root) * (root - other)
    sgn = side ** k
    if pole.other_root is not None:
        sgn *= sign_of(pole.root - pole.other_root) ** k
    sgn *= sign_of(pole.factor.lc) ** k
    sgn *= sign_of(val)
    return INF if sgn > 0 else -INF


def _limit_at_infinity(N: UPoly, D: UPoly, direction: int):
    if not N:
        return Fraction(0)
    diff = N.degree - D.degree
    ratio = Fraction(N.lc) / Fraction(D.lc)
    if diff < 0:
        return Fraction(0)
    if diff == 0:
        return ratio
    sgn = (1 if ratio > 0 else -1) * (direction ** diff)
    return INF if sgn > 0 else -INF


def _sample_params(lo, hi, samples: int) -> list[Fraction]:
    out = []
    for k in range(1, samples + 1):
        u = Fraction(k, samples + 1)
        if lo == -INF and hi == INF:
            v = (u - Fraction(1, 2)) / (u * (1 - u))
        elif lo == -INF:
            v = _rat_below(hi) - u / (1 - u)
        elif hi == INF:
            v = _rat_above(lo) + u / (1 - u)
        else:
            a, b = _rat_above(lo), _rat_below(hi)
            v = a + (b - a) * u
        out.append(v)
    return out


def _rat_above(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(float(x)).limit_denominator(1 << 40) + Fraction(1, 1 << 36)


def _rat_below(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(float(x)).limit_denominator(1 << 40) - Fraction(1, 1 << 36)


def quantity_on_chart(bundle: PinchukBundle, chart: LevelSetChart, quantity: str = "Q") -> RatFunc:
    if chart.x.nvars != 1:
        raise DomainError("scan needs a chart over a single parameter")
    return chart.compose(bundle, quantity)


def table1_scan(bundle: PinchukBundle, c, chart: LevelSetChart | None = None, samples: int = 512) -> list[ChartScan]:
    """Exact endpoint limits and sampled derivative signs of ``Q`` per component.

    Components are the parameter intervals between real poles of the chart.
    Limits are exact (rationals, quadratic irrationals or infinities); the
    derivative sign is evaluated exactly at ``samples`` interior points.
    """
    charts = [chart] if chart is not None else level_set_param(c)
    scans = []
    for ch in charts:
        Qc = quantity_on_chart(bundle, ch)
        N, D = _as_univariate(Qc)
        chart_den = _chart_denominator(ch)
        poles = _poles(chart_den) if chart_den.degree > 0 else []
        dN = N.derivative() * D - N * D.derivative()
        ends = [None] + poles + [None]
        comps = []
        notes = []
        for left, right in zip(ends, ends[1:]):
            lo = -INF if left is None else left.root
            hi = INF if right is None else right.root
            lim_lo = _limit_at_infinity(N, D, -1) if left is None else _limit_at(N, D, left, +1)
            lim_hi = _limit_at_infinity(N, D, +1) if right is None else _limit_at(N, D, right, -1)
            signs = set()
            skipped = 0
            for v in _sample_params(lo, hi, samples):
                if chart_den(v) == 0 or D(v) == 0:
                    skipped += 1
                    notes.append(f"{ch.name}: sample {v} hits a pole; skipped")
                    continue
                signs.add(sign_of(dN(v)))
            comps.append(ComponentScan(lo, hi, lim_lo, lim_hi, frozenset(signs), skipped))
        scans.append(ChartScan(ch.name, tuple(comps), tuple(notes)))
    return scans


def _chart_denominator(ch: LevelSetChart) -> UPoly:
    dx = ch.x.den.to_fraction_upoly(0)
    dy = ch.y.den.to_fraction_upoly(0)
    g = upoly_gcd(dx, dy)
    return upoly_divexact(dx * dy, g) if g.degree > 0 else dx * dy


def table1_expected(c) -> list[tuple]:
    """Ranges of ``Q`` on the components of ``P = c`` as tabulated."""
    c = Fraction(c)
    if c > 0:
        qp, qm = q_asymptotic_values(c)
        return [(-INF, qp), (qp, qm), (qm, INF), (-INF, INF)]
    if c == 0:
        return [(Fraction(0), Fraction(208)), (-INF, Fraction(0)), (Fraction(0), INF),
                (-INF, Fraction(0)), (Fraction(208), INF)]
    if c > -1:
        qp, qm = q_asymptotic_values(c)
        return [(-INF, qp), (qp, INF), (-INF, qm), (qm, INF)]
    if c == -1:
        v = Fraction(-163, 4)
        return [(-INF, v), (-INF, v), (v, INF), (v, INF)]
    return [(-INF, INF), (-INF, INF)]


def ranges_match(found: Sequence[tuple], expected: Sequence[tuple], rel_tol: float = 1e-6) -> bool:
    """Multiset comparison of ranges with a relative tolerance on finite ends."""

    def close(a, b):
        if a in (INF, -INF) or b in (INF, -INF):
            return a == b
        fa, fb = float(a), float(b)
        return abs(fa - fb) <= rel_tol * max(1.0, abs(fa), abs(fb))

    remaining = list(expected)
    for r in found:
        for i, e in enumerate(remaining):
            if close(r[0], e[0]) and close(r[1], e[1]):
                del remaining[i]
                break
        else:
            return False
    return not remaining


# ---------------------------------------------------------------------------
# singular branches of the companion field


@dataclass(frozen=True)
class SingularBranch:
    name: str
    param: str
    x: RatFunc
    y: RatFunc
    expected: tuple[tuple[str, RatFunc], ...]
    image_line: str
    param_sign: int

    def verify(self, bundle: PinchukBundle) -> dict[str, bool]:
        aux = bundle.evaluate(self.x, self.y, with_aux=True)
        return {name: aux[name] == value for name, value in self.expected}

    def point(self, value):
        xv, yv = self.x.evaluate([value]), self.y.evaluate([value])
        if xv is UNDEFINED or yv is UNDEFINED:
            return UNDEFINED
        return xv, yv


def singular_branches(bundle: PinchukBundle | None = None) -> list[SingularBranch]:
    v = RatFunc.var(0, 1)
    one = RatFunc.const(1, 1)
    zero = RatFunc.const(0, 1)
    minus_one = RatFunc.const(-1, 1)
    case1_y = one / v - one / (v * v)
    case1 = (("P", zero), ("h", zero), ("Q", -(one / (v * v))))
    case2 = (("P", minus_one), ("h", minus_one), ("Q", -(v * v) - Fraction(163, 4)))
    return [
        SingularBranch("case1 x>0", "x", v, case1_y, case1, "P=0, Q<0", +1),
        SingularBranch("case1 x<0", "x", v, case1_y, case1, "P=0, Q<0", -1),
        SingularBranch("case2 plus", "s", -(one / (v * v)) + one / v, -(v * v), case2, "P=-1, Q<-163/4", +1),
        SingularBranch("case2 minus", "s", -(one / (v * v)) - one / v, -(v * v), case2, "P=-1, Q<-163/4", +1),
    ]


def case2_quadratic_check(bundle: PinchukBundle, y0) -> dict[str, bool]:
    """Evaluate on ``x = 1/y0 +- 1/sqrt(-y0)`` in ``Q(sqrt(-y0))``."""
    y0 = Fraction(y0)
    if y0 >= 0:
        raise DomainError("case-2 branches need y < 0")
    out = {}
    root = QuadExt.sqrt(-y0)
    for label, sgn in (("plus", 1), ("minus", -1)):
        x = 1 / y0 + sgn / root
        aux = bundle.evaluate(x, y0, with_aux=True)
        out[f"{label}: P=-1"] = aux["P"] == -1
        out[f"{label}: h=-1"] = aux["h"] == -1
        out[f"{label}: Q=y-163/4"] = aux["Q"] == y0 - Fraction(163, 4)
    return out


def vanishing_roots_check() -> dict[str, bool]:
    """``0`` and ``-1`` are roots of ``T^3 (6T^2 + 14T + 8)``."""
    p = UPoly([Fraction(0), 0, 0, 8, 14, 6])
    return {"T=0": p(Fraction(0)) == 0, "T=-1": p(Fraction(-1)) == 0}


# ---------------------------------------------------------------------------
# the chart point on P = 3 and the branch ordering above it


CHART_C = Fraction(3)
CHART_H = Fraction(4)
CHART_POINT = (Fraction(-5, 441), Fraction(-7497))


@dataclass(frozen=True)
class ChartPointOrdering:
    point: tuple
    case1_y: Fraction
    case2_plus_y: object
    case2_minus_y: object
    ordering: tuple[str, ...]

    @property
    def matches_golden(self) -> bool:
        return self.point == CHART_POINT


def p3_chart_point_check() -> ChartPointOrdering:
    """Recompute the chart point at ``c=3, h=4`` and order branch values above its x."""
    ch = _generic_chart(CHART_C)
    A = ch.point(CHART_H)
    x0 = A[0]
    case1 = (x0 - 1) / (x0 * x0)
    # x = -1/s^2 +- 1/s  <=>  x s^2 -+ s + 1 = 0; take s > 0 roots, y = -s^2
    disc = 1 - 4 * x0
    r = QuadExt.sqrt(disc)
    ys = {}
    for label, sgn in (("case2 plus", 1), ("case2 minus", -1)):
        for root in ((sgn + r) / (2 * x0), (sgn - r) / (2 * x0)):
            if sign_of(root) > 0:
                ys[label] = -(root * root)
    values = {"A": A[1], "case1 x<0": case1, **ys}
    order = tuple(sorted(values, key=lambda k: float(values[k]), reverse=True))
    return ChartPointOrdering(A, case1, ys.get("case2 plus"), ys.get("case2 minus"), order)


# ---------------------------------------------------------------------------
# CSV emitters


def decimal12(v) -> str:
    if v in (INF, -INF):
        return "inf" if v > 0 else "-inf"
    return f"{float(v):.12g}"


def asymptotic_rows(lo=Fraction(-3), hi=Fraction(3), step=Fraction(1, 64)) -> list[tuple]:
    curve = asymptotic_curve()
    rows = []
    s = Fraction(lo)
    while s <= hi:
        P, Q = curve.point(s)
        rows.append((s, P, Q))
        s += step
    return rows


def singular_rows(branch: SingularBranch, count: int = 256, lo=Fraction(1, 8), hi=Fraction(8)) -> list[tuple]:
    rows = []
    for k in range(count):
        v = lo + (hi - lo) * Fraction(k, count - 1)
        v = v * branch.param_sign
        pt = branch.point(v)
        if pt is UNDEFINED:
            continue
        rows.append((v, pt[0], pt[1]))
    return rows


def levelset_rows(bundle: PinchukBundle, c, count: int = 481, lo=Fraction(-6), hi=Fraction(6)) -> list[tuple]:
    rows = []
    for ch in level_set_param(c):
        Qc = quantity_on_chart(bundle, ch)
        for k in range(count):
            v = lo + (hi - lo) * Fraction(k, count - 1)
            pt = ch.point(v)
            q = Qc.evaluate([v])
            if pt is UNDEFINED or q is UNDEFINED:
                continue
            rows.append((v, pt[0], pt[1], q))
    return rows


def csv_text(header: Sequence[str], rows: Sequence[tuple]) -> str:
    lines = [",".join(header)]
    lines += [",".join(decimal12(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"
