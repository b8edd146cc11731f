"""Certified real-root counting and isolation for rational polynomials.

Everything here is exact: Sturm sequences over Fraction coefficients and
bisection with rational endpoints.  On top of the univariate kernel sit the
fiber tools that specialize an annihilating polynomial ``R(T)`` at a point
of the target space and inspect its real roots.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DomainError
from .exactpoly import MPoly, UPoly, format_rational, upoly_divexact, upoly_gcd
from .seeds import rng

INF = float("inf")
ISOLATION_WIDTH = Fraction(1, 2 ** 40)


def _as_fraction_upoly(p) -> UPoly:
    if isinstance(p, UPoly):
        return UPoly([Fraction(c) for c in p.coeffs])
    return UPoly([Fraction(c) for c in p])


def squarefree_decompose(p: UPoly) -> list[tuple[UPoly, int]]:
    """Yun's algorithm: monic, pairwise coprime, squarefree factors with multiplicities.

    Factors are listed by decreasing multiplicity.
    """
    p = _as_fraction_upoly(p)
    if not p:
        raise DomainError("squarefree decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    p = p.monic()
    dp = p.derivative()
    a = upoly_gcd(p, dp)
    b = upoly_divexact(p, a)
    c = upoly_divexact(dp, a)
    d = c - b.derivative()
    out = []
    i = 1
    while b.degree > 0:
        g = upoly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = upoly_divexact(b, g)
        c = upoly_divexact(d, g)
        d = c - b.derivative()
        i += 1
    out.reverse()
    return out


def squarefree_part(p: UPoly) -> UPoly:
    p = _as_fraction_upoly(p)
    if p.degree <= 0:
        return p
    return upoly_divexact(p, upoly_gcd(p, p.derivative())).monic()


@dataclass(frozen=True)
class SturmChain:
    """Signed remainder sequence starting at the squarefree part."""

    sequence: tuple[UPoly, ...]

    @classmethod
    def of(cls, p: UPoly) -> "SturmChain":
        p0 = squarefree_part(p)
        if p0.degree <= 0:
            return cls((p0,))
        seq = [p0, p0.derivative()]
        while True:
            _, r = seq[-2].divmod_field(seq[-1])
            if not r:
                break
            seq.append(-r)
        return cls(tuple(seq))

    def variations(self, x) -> int:
        """Sign changes at a rational point or at ``+inf``/``-inf``."""
        signs = []
        for q in self.sequence:
            if x == INF:
                s = _sgn(q.lc)
            elif x == -INF:
                s = _sgn(q.lc) * (-1 if q.degree % 2 else 1)
            else:
                s = _sgn(q(Fraction(x)))
            if s:
                signs.append(s)
        return sum(1 for u, v in zip(signs, signs[1:]) if u != v)

    def count(self, lo=-INF, hi=INF) -> int:
        """Distinct real roots in the half-open interval ``(lo, hi]``."""
        if self.sequence[0].degree <= 0:
            return 0
        return self.variations(lo) - self.variations(hi)


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


def sturm_count(p: UPoly, lo=-INF, hi=INF) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``; endpoints may be infinite."""
    p = _as_fraction_upoly(p)
    if not p:
        raise DomainError("root count of the zero polynomial")
    lo = -INF if lo is None else lo
    hi = INF if hi is None else hi
    return SturmChain.of(p).count(lo, hi)


def cauchy_bound(p: UPoly) -> Fraction:
    lc = abs(Fraction(p.lc))
    return 1 + max((abs(Fraction(c)) / lc for c in p.coeffs[:-1]), default=Fraction(0))


@dataclass(frozen=True)
class RootInterval:
    """Isolating interval ``[lo, hi]`` for one real root; ``lo == hi`` means exact."""

    lo: Fraction
    hi: Fraction
    multiplicity: int = 1

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint)

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def to_json(self) -> dict:
        return {"lo": format_rational(self.lo), "hi": format_rational(self.hi),
                "multiplicity": self.multiplicity}


@dataclass(frozen=True)
class RootSummary:
    degree: int
    roots: tuple[RootInterval, ...]
    total_with_multiplicity: int
    complex_pair_count: int

    @property
    def distinct_real_count(self) -> int:
        return len(self.roots)

    def check(self) -> None:
        """Raise unless the accounting identity holds and intervals are disjoint."""
        if self.total_with_multiplicity + 2 * self.complex_pair_count != self.degree:
            raise AssertionError("real plus complex root count differs from the degree")
        if sum(r.multiplicity for r in self.roots) != self.total_with_multiplicity:
            raise AssertionError("multiplicities do not sum to the real root total")
        for a, b in zip(self.roots, self.roots[1:]):
            if not a.hi < b.lo:
                raise AssertionError("isolating intervals overlap")

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "distinct_real_roots": [r.to_json() for r in self.roots],
            "total_with_multiplicity": self.total_with_multiplicity,
            "complex_pair_count": self.complex_pair_count,
        }


def _isolate_squarefree(chain: SturmChain, p: UPoly, width: Fraction) -> list[tuple[Fraction, Fraction]]:
    bound = cauchy_bound(p)
    pending = [(-bound, bound, chain.variations(-bound), chain.variations(bound))]
    found = []
    while pending:
        lo, hi, vlo, vhi = pending.pop()
        n = vlo - vhi
        if n == 0:
            continue
        if n == 1:
            found.append(_refine(p, lo, hi, width))
            continue
        mid = (lo + hi) / 2
        vmid = chain.variations(mid)
        pending.append((lo, mid, vlo, vmid))
        pending.append((mid, hi, vmid, vhi))
    found.sort()
    return found


def _refine(p: UPoly, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink ``(lo, hi]`` holding exactly one root of the squarefree ``p``."""
    if p(hi) == 0:
        return hi, hi
    s_hi = _sgn(p(hi))
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = _sgn(p(mid))
        if s == 0:
            return mid, mid
        if s == s_hi:
            hi = mid
        else:
            lo = mid
    return lo, hi


def isolate_roots(p: UPoly, width: Fraction = ISOLATION_WIDTH) -> RootSummary:
    """Isolate every real root to an interval of width at most ``width``."""
    p = _as_fraction_upoly(p)
    if not p:
        raise DomainError("root isolation of the zero polynomial")
    deg = p.degree
    if deg == 0:
        return RootSummary(0, (), 0, 0)
    factors = squarefree_decompose(p)
    sqf = squarefree_part(p)
    chain = SturmChain.of(sqf)
    raw = _isolate_squarefree(chain, sqf, width)
    factor_chains = [(SturmChain.of(f), f, m) for f, m in factors]
    roots = []
    for lo, hi in raw:
        mult = None
        for fchain, f, m in factor_chains:
            if lo == hi:
                hit = f(lo) == 0
            else:
                hit = fchain.count(lo, hi) == 1
            if hit:
                mult = m
                break
        assert mult is not None, "root not attributed to a squarefree factor"
        roots.append(RootInterval(lo, hi, mult))
    total = sum(r.multiplicity for r in roots)
    summary = RootSummary(deg, tuple(roots), total, (deg - total) // 2)
    summary.check()
    return summary


# ---------------------------------------------------------------------------
# fibers of an annihilating polynomial


class FiberStatus(enum.Enum):
    FULL_DEGREE = "FullDegree"
    DEGREE_DROP = "DegreeDrop"


def specialize_annihilator(R, point: Sequence) -> UPoly:
    """Substitute a rational point for the image variables of ``R``."""
    poly = R.poly if hasattr(R, "poly") else R
    pt = [Fraction(v) for v in point]
    coeffs = []
    for c in poly.coeffs:
        if isinstance(c, MPoly):
            if len(pt) != c.nvars:
                raise DomainError(f"point has {len(pt)} coordinates, expected {c.nvars}")
            coeffs.append(Fraction(c.evaluate(pt)))
        else:
            coeffs.append(Fraction(c))
    return UPoly(coeffs)


@dataclass(frozen=True)
class FiberReport:
    point: tuple[Fraction, ...]
    status: FiberStatus
    roots: RootSummary
    specialization: UPoly = field(compare=False)

    def to_json(self) -> dict:
        return {
            "point": [format_rational(v) for v in self.point],
            "status": self.status.value,
            "roots": self.roots.to_json(),
        }

    def render(self) -> str:
        lines = [
            "point: (" + ", ".join(format_rational(v) for v in self.point) + ")",
            f"status: {self.status.value}",
            f"specialized degree: {self.roots.degree}",
            f"distinct real roots: {self.roots.distinct_real_count}",
            f"complex pairs: {self.roots.complex_pair_count}",
        ]
        for r in self.roots.roots:
            kind = "simple" if r.multiplicity == 1 else f"repeated({r.multiplicity})"
            lines.append(f"  [{format_rational(r.lo)}, {format_rational(r.hi)}]  ~{float(r):.12g}  {kind}")
        return "\n".join(lines)


def fiber_count(R, point: Sequence) -> FiberReport:
    """Real roots of ``R`` specialized at ``point``, with a degree-drop flag."""
    spec = specialize_annihilator(R, point)
    if not spec:
        raise DomainError("annihilator vanishes identically at this point")
    full = (R.poly if hasattr(R, "poly") else R).degree
    status = FiberStatus.FULL_DEGREE if spec.degree == full else FiberStatus.DEGREE_DROP
    return FiberReport(tuple(Fraction(v) for v in point), status, isolate_roots(spec), spec)


@dataclass(frozen=True)
class RootClass:
    root: RootInterval
    multiplicity: int

    @property
    def kind(self) -> str:
        return "Simple" if self.multiplicity == 1 else f"Repeated({self.multiplicity})"


def classify_point_roots(R, point: Sequence) -> list[RootClass]:
    """Simple/repeated classification of the real roots at ``point``."""
    report = fiber_count(R, point)
    return [RootClass(r, r.multiplicity) for r in report.roots.roots]


# ---------------------------------------------------------------------------
# dense-image test


@dataclass(frozen=True)
class SampleSpec:
    lattice_radius: int = 8
    random_count: int = 256
    max_height: int = 64
    seed: int | None = None

    def points(self, n: int) -> list[tuple[Fraction, ...]]:
        r = self.lattice_radius
        pts = [tuple(Fraction(v) for v in p) for p in itertools.product(range(-r, r + 1), repeat=n)]
        gen = rng(self.seed, "dense-image")
        h = self.max_height
        for _ in range(self.random_count):
            pts.append(tuple(Fraction(gen.randint(-h, h), gen.randint(1, h)) for _ in range(n)))
        return pts


def simplicity_key(point: Sequence) -> tuple:
    """Order points by total height, then lexicographically."""
    pt = tuple(Fraction(v) for v in point)
    return (sum(abs(v.numerator) + v.denominator for v in pt), pt)


class DenseVerdict(enum.Enum):
    DENSE_BY_ODD_DEGREE = "DenseByOddDegree"
    NO_COUNTEREXAMPLE = "NoCounterexampleFound"
    COUNTEREXAMPLE = "CounterexampleFound"


@dataclass(frozen=True)
class DenseImageResult:
    verdict: DenseVerdict
    samples: int = 0
    point: tuple[Fraction, ...] | None = None
    skipped_degree_drop: int = 0

    def describe(self) -> str:
        if self.verdict is DenseVerdict.COUNTEREXAMPLE:
            pt = ", ".join(format_rational(v) for v in self.point)
            return f"{self.verdict.value} at ({pt})"
        if self.verdict is DenseVerdict.NO_COUNTEREXAMPLE:
            return f"{self.verdict.value} ({self.samples} samples, {self.skipped_degree_drop} degree drops skipped)"
        return self.verdict.value


def dense_image_test(R, spec: SampleSpec | None = None) -> DenseImageResult:
    """Odd degree proves density; otherwise search for a point with no real root.

    Points are scanned in simplicity order, so the first counterexample
    found is the simplest one on the grid.
    """
    poly = R.poly if hasattr(R, "poly") else R
    if poly.degree % 2 == 1:
        return DenseImageResult(DenseVerdict.DENSE_BY_ODD_DEGREE)
    spec = spec or SampleSpec()
    n = _image_arity(poly)
    skipped = 0
    pts = sorted(set(spec.points(n)), key=simplicity_key)
    for pt in pts:
        s = specialize_annihilator(poly, pt)
        if s.degree != poly.degree:
            skipped += 1
            continue
        if sturm_count(s) == 0:
            return DenseImageResult(DenseVerdict.COUNTEREXAMPLE, len(pts), pt, skipped)
    return DenseImageResult(DenseVerdict.NO_COUNTEREXAMPLE, len(pts), None, skipped)


def _image_arity(poly: UPoly) -> int:
    for c in poly.coeffs:
        if isinstance(c, MPoly):
            return c.nvars
    raise DomainError("annihilator carries no image variables")
