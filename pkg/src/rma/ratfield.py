"""Reduced rational functions, rational maps and their Jacobians.

A :class:`RatFunc` is always stored as a reduced fraction whose denominator
is an integer-primitive polynomial with positive leading coefficient, so
equal functions have identical representations.  Evaluation at a pole
returns the :data:`UNDEFINED` marker instead of raising.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, StructuralError
from .exactpoly import MPoly, UPoly, bareiss_det, gcd, polynomial_det, resultant_in, _default_names
from .realroots import isolate_roots, simplicity_key, sturm_count
from .seeds import rng

FALSIFICATION_SAMPLES = 4096


class _Undefined:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Undefined"

    def __bool__(self):
        return False


UNDEFINED = _Undefined()


class RatFunc:
    """A reduced fraction ``num/den`` of polynomials over Q."""

    __slots__ = ("num", "den")

    def __init__(self, num: MPoly, den: MPoly | None = None):
        if den is None:
            den = MPoly.one(num.nvars)
        if num.nvars != den.nvars:
            raise StructuralError("numerator and denominator arity differ")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num: MPoly, den: MPoly) -> "RatFunc":
        r = object.__new__(cls)
        r.num = num
        r.den = den
        return r

    @classmethod
    def const(cls, value, nvars: int) -> "RatFunc":
        return cls._raw(MPoly.const(value, nvars), MPoly.one(nvars))

    @classmethod
    def poly(cls, p: MPoly) -> "RatFunc":
        return cls._raw(p, MPoly.one(p.nvars))

    @classmethod
    def var(cls, index: int, nvars: int) -> "RatFunc":
        return cls.poly(MPoly.var(index, nvars))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def _lift(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.nvars != self.nvars:
                raise StructuralError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise StructuralError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return RatFunc.poly(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.is_constant() and d.is_constant():
            return RatFunc._raw(a + c, b)
        if d.is_constant():
            # gcd(a + c*b, b) = gcd(a, b) = 1
            return RatFunc._raw(a + c * b, b)
        if b.is_constant():
            return RatFunc._raw(c + a * d, d)
        if b == d:
            return RatFunc(a + c, b)
        g = gcd(b, d)
        if g.is_constant():
            return RatFunc(a * d + c * b, b * d)
        bg, dg = b.divexact(g), d.divexact(g)
        return RatFunc(a * dg + c * bg, bg * d)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(-self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc._raw(self.num * other, self.den) if other else RatFunc.const(0, self.nvars)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.num, self.den, o.num, o.den
        if not a or not c:
            return RatFunc.const(0, self.nvars)
        if b.is_constant() and d.is_constant():
            return RatFunc._raw(a * c, b)
        g1 = gcd(a, d) if not d.is_constant() else None
        g2 = gcd(c, b) if not b.is_constant() else None
        if g1 is not None and not g1.is_constant():
            a, d = a.divexact(g1), d.divexact(g1)
        if g2 is not None and not g2.is_constant():
            c, b = c.divexact(g2), b.divexact(g2)
        num, den = a * c, b * d
        cont, prim = den.integer_primitive()
        return RatFunc._raw(num.scale(1 / cont), prim)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        cont, prim = self.num.integer_primitive()
        return RatFunc._raw(self.den.scale(1 / cont), prim)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        # powers of a reduced fraction stay reduced
        return RatFunc._raw(self.num ** k, self.den ** k)

    def __eq__(self, other):
        if isinstance(other, (RatFunc, MPoly, int, Fraction)):
            o = self._lift(other)
            return self.num == o.num and self.den == o.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def diff(self, index: int) -> "RatFunc":
        if self.den.is_constant():
            return RatFunc._raw(self.num.diff(index), self.den)
        a, b = self.num, self.den
        return RatFunc(a.diff(index) * b - a * b.diff(index), b * b)

    def evaluate(self, point: Sequence):
        """Exact value at a rational point, or :data:`UNDEFINED` at a pole."""
        if len(point) != self.nvars:
            raise StructuralError(f"point has {len(point)} coordinates, expected {self.nvars}")
        pt = [Fraction(v) for v in point]
        d = self.den.evaluate(pt)
        if d == 0:
            return UNDEFINED
        return Fraction(self.num.evaluate(pt)) / d

    def substitute(self, assignments: Sequence) -> "RatFunc":
        """Compose with rational functions, one per variable."""
        if len(assignments) != self.nvars:
            raise StructuralError(f"need {self.nvars} assignments, got {len(assignments)}")
        args = [a if isinstance(a, RatFunc) else RatFunc.poly(a) for a in assignments]
        target = {a.nvars for a in args}
        if len(target) != 1:
            raise StructuralError("assignments must share a common arity")
        m = target.pop()
        if all(a.den.is_constant() for a in args):
            polys = [a.num.scale(1 / Fraction(a.den.constant_value())) for a in args]
            return RatFunc(self.num.substitute(polys), self.den.substitute(polys))
        return _eval_rational(self.num, args, m) / _eval_rational(self.den, args, m)

    def format(self, names=None) -> str:
        if self.den == 1:
            return self.num.format(names)
        return f"({self.num.format(names)}) / ({self.den.format(names)})"

    def __repr__(self):
        return f"RatFunc({self.format()})"

    def to_json(self) -> dict:
        out = {"num": self.num.to_literal()}
        if self.den != 1:
            out["den"] = self.den.to_literal()
        return out


def _eval_rational(p: MPoly, args: list[RatFunc], m: int) -> RatFunc:
    """Evaluate ``p`` at rational-function arguments over a common denominator."""
    if not p:
        return RatFunc.const(0, m)
    # write each argument as a_i / b_i and clear to one fraction per term
    degs = [p.degree(i) for i in range(p.nvars)]
    num = MPoly.zero(m)
    den_pows = [[MPoly.one(m)] for _ in args]
    num_pows = [[MPoly.one(m)] for _ in args]
    for i, a in enumerate(args):
        for _ in range(degs[i]):
            den_pows[i].append(den_pows[i][-1] * a.den)
            num_pows[i].append(num_pows[i][-1] * a.num)
    for e, c in p.items():
        term = MPoly.const(c, m)
        for i, k in enumerate(e):
            if degs[i] == 0:
                continue
            term = term * num_pows[i][k] * den_pows[i][degs[i] - k]
        num = num + term
    den = MPoly.one(m)
    for i in range(len(args)):
        den = den * den_pows[i][degs[i]]
    return RatFunc(num, den)


def _normalize(num: MPoly, den: MPoly) -> tuple[MPoly, MPoly]:
    if not den:
        raise DomainError("zero denominator")
    n = num.nvars
    if not num:
        return MPoly.zero(n), MPoly.one(n)
    if den.is_constant():
        return num.scale(Fraction(1) / Fraction(den.constant_value())), MPoly.one(n)
    if not num.is_constant():
        g = gcd(num, den)
        if not g.is_constant():
            num, den = num.divexact(g), den.divexact(g)
    cont, prim = den.integer_primitive()
    return num.scale(1 / cont), prim


def rf_normalize(num: MPoly, den: MPoly) -> RatFunc:
    return RatFunc(num, den)


def rf_eval(f: RatFunc, point: Sequence):
    return f.evaluate(point)


# ---------------------------------------------------------------------------
# rational maps


@dataclass(frozen=True)
class RMap:
    """A map given by ``n`` rational functions in ``domain_arity`` variables."""

    domain_arity: int
    components: tuple[RatFunc, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        comps = tuple(c if isinstance(c, RatFunc) else RatFunc.poly(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if any(c.nvars != self.domain_arity for c in comps):
            raise StructuralError("components must share the domain arity")
        if not self.names:
            object.__setattr__(self, "names", _default_names(self.domain_arity))

    @classmethod
    def from_polys(cls, polys: Sequence[MPoly], names=()) -> "RMap":
        return cls(polys[0].nvars, tuple(RatFunc.poly(p) for p in polys), tuple(names))

    @property
    def dim(self) -> int:
        return len(self.components)

    def is_polynomial(self) -> bool:
        return all(c.is_polynomial() for c in self.components)

    def polys(self) -> list[MPoly]:
        if not self.is_polynomial():
            raise DomainError("map has nonconstant denominators")
        return [c.num.scale(1 / Fraction(c.den.constant_value())) for c in self.components]

    def evaluate(self, point: Sequence):
        vals = [c.evaluate(point) for c in self.components]
        if any(v is UNDEFINED for v in vals):
            return UNDEFINED
        return tuple(vals)

    def compose(self, inner: "RMap") -> "RMap":
        """``self`` after ``inner``; components are normalized immediately."""
        if inner.dim != self.domain_arity:
            raise StructuralError("inner map dimension must match outer domain arity")
        return RMap(inner.domain_arity, tuple(c.substitute(inner.components) for c in self.components),
                    inner.names)

    def to_json(self) -> dict:
        return {"vars": list(self.names), "components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, data: dict) -> "RMap":
        try:
            names = tuple(data["vars"])
            n = len(names)
            comps = []
            for comp in data["components"]:
                num = _poly_from_json(comp["num"], names)
                den = _poly_from_json(comp["den"], names) if "den" in comp else MPoly.one(n)
                comps.append(RatFunc(num, den))
        except (KeyError, TypeError, ValueError) as exc:
            raise StructuralError(f"malformed map JSON: {exc}") from exc
        if not comps:
            raise StructuralError("map has no components")
        return cls(n, tuple(comps), names)


def _poly_from_json(value, names) -> MPoly:
    if isinstance(value, str):
        return MPoly.parse(value, names)
    return MPoly.from_literal(value, len(names))


@dataclass(frozen=True)
class JacobianData:
    matrix: tuple[tuple[RatFunc, ...], ...]
    det: RatFunc


def determinant(matrix: Sequence[Sequence[RatFunc]]) -> RatFunc:
    """Determinant of a square matrix of rational functions.

    Small matrices use cofactor expansion along the sparsest line; larger
    ones clear row denominators and run Bareiss on polynomials.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise StructuralError("matrix must be square")
    if n == 0:
        raise StructuralError("empty matrix")
    if n > 2 and all(e.den.is_constant() for row in matrix for e in row):
        polys = [[e.num.scale(1 / Fraction(e.den.constant_value())) for e in row] for row in matrix]
        return RatFunc.poly(polynomial_det(polys))
    if n <= 5:
        return _laplace([list(r) for r in matrix])
    m = matrix[0][0].nvars
    rows = []
    scale = MPoly.one(m)
    for row in matrix:
        lcm = MPoly.one(m)
        for e in row:
            if not e.den.is_constant():
                g = gcd(lcm, e.den)
                lcm = lcm * e.den.divexact(g)
        rows.append([e.num * lcm.divexact(e.den) for e in row])
        scale = scale * lcm
    return RatFunc(bareiss_det(rows), scale)


def _laplace(mat: list[list[RatFunc]]) -> RatFunc:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    if n == 2:
        return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
    zeros_row = [sum(1 for e in row if e.is_zero()) for row in mat]
    zeros_col = [sum(1 for row in mat if row[j].is_zero()) for j in range(n)]
    best_r = max(range(n), key=lambda i: zeros_row[i])
    best_c = max(range(n), key=lambda j: zeros_col[j])
    m = mat[0][0].nvars
    total = RatFunc.const(0, m)
    if zeros_col[best_c] > zeros_row[best_r]:
        j = best_c
        for i in range(n):
            if mat[i][j].is_zero():
                continue
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(mat) if k != i]
            term = mat[i][j] * _laplace(minor)
            total = total + term if (i + j) % 2 == 0 else total - term
    else:
        i = best_r
        for j in range(n):
            if mat[i][j].is_zero():
                continue
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(mat) if k != i]
            term = mat[i][j] * _laplace(minor)
            total = total + term if (i + j) % 2 == 0 else total - term
    return total


def jacobian(F: RMap) -> JacobianData:
    n = F.domain_arity
    if n < 1:
        raise DomainError("empty domain")
    matrix = tuple(tuple(c.diff(j) for j in range(n)) for c in F.components)
    if F.dim != n:
        raise StructuralError("jacobian determinant needs a square map")
    return JacobianData(matrix, determinant(matrix))


# ---------------------------------------------------------------------------
# positivity recognition


class Answer(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class SOSCertificate:
    """Claimed identity ``p = sum(w_i * g_i**2) + constant`` with ``w_i > 0``."""

    squares: tuple[tuple[Fraction, MPoly], ...]
    constant: Fraction = Fraction(0)

    def expand(self, nvars: int) -> MPoly:
        total = MPoly.const(self.constant, nvars)
        for w, g in self.squares:
            total = total + (g * g).scale(w)
        return total


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    reason: str
    witness: tuple | None = None
    certificate: object = field(default=None, compare=False)

    @property
    def is_yes(self) -> bool:
        return self.answer is Answer.YES

    def describe(self) -> str:
        s = f"{self.answer.value} ({self.reason})"
        if self.witness is not None:
            s += " witness " + repr(self.witness)
        return s


def _positive_constant(p: MPoly) -> bool:
    return p.is_constant() and p.constant_value() > 0


def _even_pattern(p: MPoly) -> bool:
    if p.coefficient((0,) * p.nvars) <= 0:
        return False
    return all(c > 0 and all(k % 2 == 0 for k in e) for e, c in p.items())


def _univariate_index(p: MPoly) -> int | None:
    vs = p.variables()
    return next(iter(vs)) if len(vs) == 1 else None


def _exact_real_root(up: UPoly) -> Fraction | None:
    """A rational real root of ``up`` if one is found, else None."""
    summary = isolate_roots(up)
    for r in summary.roots:
        if r.is_exact:
            return r.lo
    for r in summary.roots:
        cand = r.midpoint.limit_denominator(1 << 20)
        if up(cand) == 0:
            return cand
    return None


def _common_zero_free(gs: Sequence[MPoly]) -> tuple[bool | None, tuple | None]:
    """Decide whether the polynomials have a common real zero.

    Returns ``(True, None)`` when provably zero-free, ``(False, witness)``
    when a common real zero exists, and ``(None, None)`` when undecided.
    """
    gs = [g for g in gs if g]
    if not gs:
        return False, None
    if any(_positive_constant(g) or (g.is_constant() and g) for g in gs):
        return True, None
    n = gs[0].nvars
    used = set().union(*(g.variables() for g in gs))
    if len(used) == 1:
        (v,) = used
        from .exactpoly import upoly_gcd
        g = gs[0].to_fraction_upoly(v)
        for other in gs[1:]:
            g = upoly_gcd(g, other.to_fraction_upoly(v))
        if g.degree <= 0 or sturm_count(g) == 0:
            return True, None
        root = _exact_real_root(g)
        if root is None:
            return False, None
        pt = [Fraction(0)] * n
        pt[v] = root
        return False, tuple(pt)
    if len(used) != 2:
        return None, None
    xv, yv = sorted(used)
    ordered = sorted(gs, key=lambda g: (g.total_degree(), len(g)))
    for i, j in itertools.combinations(range(len(ordered)), 2):
        a, b = ordered[i], ordered[j]
        if a.degree(xv) <= 0 or b.degree(xv) <= 0:
            continue
        r = resultant_in(a, b, xv)
        if not r:
            continue
        if r.is_constant():
            return True, None
        if r.variables() != {yv}:
            continue
        ry = r.to_fraction_upoly(yv)
        summary = isolate_roots(ry)
        ys = []
        for root in summary.roots:
            y0 = root.lo if root.is_exact else root.midpoint.limit_denominator(1 << 24)
            if ry(y0) != 0:
                return None, None
            ys.append(y0)
        for y0 in ys:
            specs = [g.specialize({yv: y0}) for g in gs]
            free, wit = _common_zero_free(specs)
            if free is not True:
                if free is False and wit is not None:
                    wit = list(wit)
                    wit[yv] = y0
                    return False, tuple(wit)
                if free is False:
                    return False, None
                return None, None
        return True, None
    return None, None


def _sample_points(n: int, seed: int | None, count: int) -> list[tuple[Fraction, ...]]:
    radius = 3 if n <= 3 else 1
    pts = [tuple(Fraction(v) for v in p) for p in itertools.product(range(-radius, radius + 1), repeat=n)]
    pts = pts[:count]
    gen = rng(seed, "falsify")
    while len(pts) < count:
        pts.append(tuple(Fraction(gen.randint(-64, 64), gen.randint(1, 64)) for _ in range(n)))
    return pts


def _falsify(p: MPoly, seed: int | None, samples: int) -> tuple | None:
    """Search sample points for a zero or a sign change of ``p``."""
    zeros = []
    pos = neg = None
    for pt in _sample_points(p.nvars, seed, samples):
        v = p.evaluate(pt)
        if v == 0:
            zeros.append(pt)
        elif v > 0:
            if pos is None or simplicity_key(pt) < simplicity_key(pos):
                pos = pt
        elif neg is None or simplicity_key(pt) < simplicity_key(neg):
            neg = pt
    if zeros:
        return min(zeros, key=simplicity_key)
    if pos is not None and neg is not None:
        return _zero_on_segment(p, neg, pos) or ("sign change", neg, pos)
    return None


def _zero_on_segment(p: MPoly, a: tuple, b: tuple) -> tuple | None:
    """A rational zero of ``p`` on the segment from ``a`` to ``b`` if one exists."""
    s = MPoly.var(0, 1)
    line = [MPoly.const(ai, 1) + s.scale(bi - ai) for ai, bi in zip(a, b)]
    up = p.substitute(line).to_fraction_upoly(0)
    summary = isolate_roots(up)
    for r in summary.roots:
        if r.lo >= 0 and r.hi <= 1:
            cand = r.lo if r.is_exact else r.midpoint.limit_denominator(1 << 20)
            if up(cand) == 0:
                return tuple(ai + cand * (bi - ai) for ai, bi in zip(a, b))
    return None


def positivity(p: MPoly, certificate: SOSCertificate | None = None,
               seed: int | None = None, samples: int = FALSIFICATION_SAMPLES) -> Verdict:
    """Try to prove ``p > 0`` on all of R^n using the recognized patterns."""
    if _positive_constant(p):
        return Verdict(Answer.YES, "positive constant")
    if not p:
        return Verdict(Answer.NO, "zero polynomial", (Fraction(0),) * p.nvars)
    if p.is_constant():
        return Verdict(Answer.NO, "negative constant", (Fraction(0),) * p.nvars)
    if _even_pattern(p):
        return Verdict(Answer.YES, "even powers with positive constant")
    if certificate is not None:
        if certificate.expand(p.nvars) != p:
            raise DomainError("SOS certificate does not expand to the polynomial")
        if any(w <= 0 for w, _ in certificate.squares) or certificate.constant < 0:
            raise DomainError("SOS certificate has nonpositive weights")
        if certificate.constant > 0:
            return Verdict(Answer.YES, "SOS plus positive constant", certificate=certificate)
        free, wit = _common_zero_free([g for _, g in certificate.squares])
        if free:
            return Verdict(Answer.YES, "SOS with empty common zero set", certificate=certificate)
        if free is False and wit is not None:
            return Verdict(Answer.NO, "common zero of the squares", wit, certificate)
    v = _univariate_index(p)
    if v is not None:
        up = p.to_fraction_upoly(v)
        if sturm_count(up) == 0:
            if up.lc > 0:
                return Verdict(Answer.YES, "univariate without real roots")
            return Verdict(Answer.NO, "univariate negative everywhere", (Fraction(0),) * p.nvars)
        root = _exact_real_root(up)
        if root is not None:
            pt = [Fraction(0)] * p.nvars
            pt[v] = root
            return Verdict(Answer.NO, "real root", tuple(pt))
    wit = _falsify(p, seed, samples)
    if wit is not None:
        if wit[0] == "sign change":
            return Verdict(Answer.NO, "sign change between sample points", wit[1:])
        return Verdict(Answer.NO, "sampled zero", wit)
    return Verdict(Answer.UNKNOWN, "no pattern matched; sampling found no zero")


def nonvanishing(p: MPoly, certificate: SOSCertificate | None = None,
                 seed: int | None = None, samples: int = FALSIFICATION_SAMPLES) -> Verdict:
    """Try to prove that ``p`` has no real zero, accepting either sign."""
    if certificate is not None:
        target = p if certificate.expand(p.nvars) == p else -p
        return positivity(target, certificate, seed, samples)
    if p.is_constant():
        if p:
            return Verdict(Answer.YES, "nonzero constant")
        return Verdict(Answer.NO, "zero polynomial", (Fraction(0),) * p.nvars)
    v = positivity(p, None, seed, samples)
    if v.is_yes:
        return v
    w = positivity(-p, None, seed, samples)
    if w.is_yes:
        return Verdict(Answer.YES, w.reason + " (after sign flip)")
    # a one-signed polynomial never reaches here, so any No carries a zero
    return v if v.answer is Answer.NO else w


def is_everywhere_defined(F: RMap, seed: int | None = None,
                          samples: int = FALSIFICATION_SAMPLES) -> Verdict:
    """Check that no denominator of ``F`` has a real zero."""
    unknown = None
    for c in F.components:
        if c.den.is_constant():
            continue
        v = nonvanishing(c.den, None, seed, samples)
        if v.answer is Answer.NO:
            return v
        if v.answer is Answer.UNKNOWN:
            unknown = unknown or v
    if unknown is not None:
        return unknown
    return Verdict(Answer.YES, "all denominators recognized as nonvanishing")


def nowhere_vanishing_det(F: RMap, certificate: SOSCertificate | None = None,
                          seed: int | None = None, samples: int = FALSIFICATION_SAMPLES,
                          jac: JacobianData | None = None) -> Verdict:
    """Check that the Jacobian determinant numerator has no real zero."""
    jac = jac or jacobian(F)
    if jac.det.is_zero():
        raise DomainError("Jacobian determinant vanishes identically; the map is degenerate")
    return nonvanishing(jac.det.num, certificate, seed, samples)


def extend_plus(F: RMap, certificate: SOSCertificate | None = None,
                jac: JacobianData | None = None) -> RMap:
    """Append ``z / j(F)`` to get a map with Jacobian determinant identically 1."""
    jac = jac or jacobian(F)
    verdict = nowhere_vanishing_det(F, certificate, jac=jac)
    if not verdict.is_yes:
        raise DomainError(f"Jacobian determinant not certified nonvanishing: {verdict.describe()}")
    n = F.domain_arity
    m = n + 1
    emb = list(range(n))
    comps = [RatFunc._raw(c.num.embed(m, emb), c.den.embed(m, emb)) for c in F.components]
    z = MPoly.var(n, m)
    j = jac.det
    comps.append(RatFunc(z * j.den.embed(m, emb), j.num.embed(m, emb)))
    name = "z" if "z" not in F.names else "w"
    return RMap(m, tuple(comps), tuple(F.names) + (name,))
