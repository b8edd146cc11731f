"""Normal-form reductions of polynomial maps.

The cubic-homogeneous pipeline has four steps: lower every component to
degree at most 3 by introducing auxiliary variables, normalize at a point
so that ``G(0) = 0`` and ``J(G)(0) = I``, replicate with an extra variable
``t``, and rearrange into ``X + H`` with ``H`` cubic homogeneous.  A
separate construction produces a map with symmetric Jacobian matrix.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, ResourceError, StructuralError
from .exactpoly import MPoly, format_rational
from .ratfield import UNDEFINED, RatFunc, RMap, determinant, jacobian
from .seeds import rng

MAX_DIMENSION = 256


@dataclass(frozen=True)
class PolyMap:
    components: tuple[MPoly, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise StructuralError("map has no components")
        if len({c.nvars for c in comps}) != 1:
            raise StructuralError("components must share arity")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i}" for i in range(comps[0].nvars)))

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    @property
    def dim(self) -> int:
        return len(self.components)

    @classmethod
    def from_rmap(cls, F: RMap) -> "PolyMap":
        if not F.is_polynomial():
            raise DomainError("map is not polynomial")
        return cls(tuple(F.polys()), tuple(F.names))

    def to_rmap(self) -> RMap:
        return RMap.from_polys(list(self.components), self.names)

    def evaluate(self, point: Sequence) -> tuple:
        return tuple(c.evaluate(list(point)) for c in self.components)

    def compose(self, inner: "PolyMap") -> "PolyMap":
        """``self`` after ``inner``."""
        if inner.dim != self.nvars:
            raise StructuralError("inner map dimension must match outer arity")
        return PolyMap(tuple(c.substitute(list(inner.components)) for c in self.components), inner.names)

    def degree(self) -> int:
        return max(c.total_degree() for c in self.components if c) if any(self.components) else 0

    def jacobian_matrix(self) -> list[list[MPoly]]:
        return [[c.diff(j) for j in range(self.nvars)] for c in self.components]

    def jacobian_det(self) -> MPoly:
        det = determinant([[RatFunc.poly(e) for e in row] for row in self.jacobian_matrix()])
        return det.num

    def linear_part_matrix(self) -> list[list[Fraction]]:
        n = self.nvars
        out = []
        for c in self.components:
            row = []
            for j in range(n):
                e = [0] * n
                e[j] = 1
                row.append(Fraction(c.coefficient(e)))
            out.append(row)
        return out

    def to_json(self) -> dict:
        return {"vars": list(self.names), "components": [{"num": c.to_literal()} for c in self.components]}


def _identity(n: int, names=()) -> PolyMap:
    return PolyMap(MPoly.gens(n), tuple(names))


# ---------------------------------------------------------------------------
# traces


@dataclass(frozen=True)
class LowerStep:
    """``f_k -> f_k - c*(y + a)*(z + b)`` with components ``y + a`` and ``z + b``."""

    component: int
    coefficient: Fraction
    a: MPoly
    b: MPoly
    y: int
    z: int
    new_vars: tuple[int, ...]


@dataclass
class ReductionTrace:
    input_dim: int
    steps: list = field(default_factory=list)

    def to_json(self) -> list[dict]:
        out = []
        for step in self.steps:
            if isinstance(step, LowerStep):
                out.append({
                    "kind": "lower_degree",
                    "component": step.component,
                    "coefficient": format_rational(step.coefficient),
                    "a": step.a.to_literal(),
                    "b": step.b.to_literal(),
                    "y": _wname(step.y, self.input_dim),
                    "z": _wname(step.z, self.input_dim),
                    "introduced": [_wname(v, self.input_dim) for v in step.new_vars],
                })
            else:
                out.append(step)
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def lower_steps(self) -> list[LowerStep]:
        return [s for s in self.steps if isinstance(s, LowerStep)]

    def section(self, point: Sequence) -> tuple:
        """Lift an input point so every auxiliary factor ``v + a`` vanishes."""
        pt = [Fraction(v) for v in point]
        for step in self.lower_steps():
            for v in step.new_vars:
                factor = step.a if v == step.y else step.b
                assert v == len(pt)
                pt.append(-factor.evaluate(pt + [Fraction(0)] * (factor.nvars - len(pt))))
        return tuple(pt)

    def pullback(self, target: Sequence) -> tuple:
        """Map a target of the lowered map to the corresponding target of the input map.

        Component ``k`` of the input equals its lowered value plus
        ``c * (y + a) * (z + b)`` for every step on ``k``, where each factor
        value is itself recovered recursively from the target.
        """
        w = [Fraction(v) for v in target]
        by_comp: dict[int, list[LowerStep]] = {}
        for step in self.lower_steps():
            by_comp.setdefault(step.component, []).append(step)
        memo: dict[int, Fraction] = {}

        def value(k: int) -> Fraction:
            if k not in memo:
                acc = w[k]
                for step in by_comp.get(k, ()):
                    acc += step.coefficient * value(step.y) * value(step.z)
                memo[k] = acc
            return memo[k]

        return tuple(value(k) for k in range(self.input_dim))


def _wname(index: int, n: int) -> str:
    return f"x{index}" if index < n else f"w{index - n}"


# ---------------------------------------------------------------------------
# step 1: lower the degree


def _split_monomial(e: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Give the first ceil(D/2) exponent units, in variable order, to ``a``."""
    D = sum(e)
    need = (D + 1) // 2
    a = []
    for k in e:
        take = min(k, need)
        a.append(take)
        need -= take
    b = tuple(k - ka for k, ka in zip(e, a))
    return tuple(a), b


def lower_degree(F: PolyMap, max_dimension: int = MAX_DIMENSION) -> tuple[PolyMap, ReductionTrace]:
    """Rewrite until every component has total degree at most 3.

    A monomial factor that already owns an auxiliary variable reuses it.
    Factors strictly drop in degree, so the reuse graph is acyclic and the
    trace pullback can recover every factor value recursively.  Within one
    step the two factors always get distinct variables.
    """
    if F.nvars != F.dim:
        raise StructuralError("lower_degree expects a square map")
    n = F.dim
    comps = list(F.components)
    trace = ReductionTrace(n)
    pool: dict[tuple, int] = {}
    while True:
        idx = next((i for i, c in enumerate(comps) if c and c.total_degree() > 3), None)
        if idx is None:
            break
        e, coef = comps[idx].leading_term()
        ea, eb = _split_monomial(e)
        m = len(comps)
        new_vars: list[int] = []

        def pick(ex, avoid):
            v = pool.get(ex)
            if v is None or v == avoid:
                v = m + len(new_vars)
                new_vars.append(v)
            return v

        y = pick(ea, None)
        z = pick(eb, y)
        total = m + len(new_vars)
        if total > max_dimension:
            raise ResourceError(f"degree lowering needs more than {max_dimension} dimensions")
        comps = [c.embed(total, list(range(m))) for c in comps]
        a = MPoly.monomial(ea + (0,) * (total - m))
        b = MPoly.monomial(eb + (0,) * (total - m))
        Y, Z = MPoly.var(y, total), MPoly.var(z, total)
        comps[idx] = comps[idx] - (Y + a) * (Z + b) * coef
        for v in new_vars:
            comps.append(Y + a if v == y else Z + b)
        pool = {k + (0,) * (total - m): v for k, v in pool.items()}
        for v, ex in ((y, ea), (z, eb)):
            key = ex + (0,) * (total - m)
            if v in new_vars and key not in pool:
                pool[key] = v
        trace.steps.append(LowerStep(idx, Fraction(coef), a, b, y, z, tuple(new_vars)))
    names = tuple(F.names) + tuple(f"w{i}" for i in range(len(comps) - n))
    return PolyMap(tuple(comps), names), trace


# ---------------------------------------------------------------------------
# step 2: normalize


def _mat_inverse(M: list[list[Fraction]]) -> list[list[Fraction]] | None:
    n = len(M)
    A = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [v * inv for v in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [vr - f * vc for vr, vc in zip(A[r], A[col])]
    return [row[n:] for row in A]


def normalize(F: PolyMap, x0: Sequence) -> PolyMap:
    """``G(x) = J(F)(x0)^-1 (F(x + x0) - F(x0))``, so ``G(0) = 0`` and ``J(G)(0) = I``."""
    n = F.nvars
    if F.dim != n:
        raise StructuralError("normalize expects a square map")
    x0 = [Fraction(v) for v in x0]
    if len(x0) != n:
        raise StructuralError("base point has the wrong dimension")
    J0 = [[Fraction(e.evaluate(x0)) for e in row] for row in F.jacobian_matrix()]
    inv = _mat_inverse(J0)
    if inv is None:
        raise DomainError(f"Jacobian matrix is singular at {tuple(format_rational(v) for v in x0)}")
    shift = [MPoly.var(i, n) + x0[i] for i in range(n)]
    F0 = F.evaluate(x0)
    shifted = [c.substitute(shift) - F0[i] for i, c in enumerate(F.components)]
    out = []
    for i in range(n):
        acc = MPoly.zero(n)
        for j in range(n):
            if inv[i][j]:
                acc = acc + shifted[j].scale(inv[i][j])
        out.append(acc)
    return PolyMap(tuple(out), F.names)


# ---------------------------------------------------------------------------
# step 3: replicate


def split_cubic(F: PolyMap) -> tuple[list[MPoly], list[MPoly]]:
    """Return ``(Q, C)`` with ``F = X + Q + C``; raise if ``F`` is not of that shape."""
    n = F.nvars
    if F.dim != n:
        raise DomainError("map is not square")
    Qs, Cs = [], []
    for i, c in enumerate(F.components):
        for e, _ in c.items():
            if sum(e) == 0 or sum(e) > 3:
                raise DomainError("map is not a normalized cubic map")
        lin = c.homogeneous_part(1)
        if lin != MPoly.var(i, n):
            raise DomainError("linear part is not the identity")
        Qs.append(c.homogeneous_part(2))
        Cs.append(c.homogeneous_part(3))
    return Qs, Cs


def replicate(F: PolyMap) -> PolyMap:
    """``G(x, t) = (x + t Q(x) + t^2 C(x), t)``."""
    Qs, Cs = split_cubic(F)
    n = F.nvars
    m = n + 1
    emb = list(range(n))
    t = MPoly.var(n, m)
    comps = [MPoly.var(i, m) + t * Qs[i].embed(m, emb) + t * t * Cs[i].embed(m, emb) for i in range(n)]
    comps.append(t)
    return PolyMap(tuple(comps), tuple(F.names) + ("t",))


def replicate_identity_holds(F: PolyMap, G: PolyMap) -> bool:
    """``j(G)(x, t) == j(F)(t x)`` as polynomials."""
    n = F.nvars
    m = n + 1
    t = MPoly.var(n, m)
    scaled = [MPoly.var(i, m) * t for i in range(n)]
    return G.jacobian_det() == F.jacobian_det().substitute(scaled)


# ---------------------------------------------------------------------------
# step 4: Yagzhev form


@dataclass(frozen=True)
class YagzhevForm:
    base: PolyMap

    @property
    def H(self) -> list[MPoly]:
        n = self.base.nvars
        return [c - MPoly.var(i, n) for i, c in enumerate(self.base.components)]

    def is_cubic_homogeneous(self) -> bool:
        return all(h.is_homogeneous(3) for h in self.H)


def _replicated_parts(G: PolyMap) -> tuple[list[MPoly], list[MPoly], int]:
    m = G.nvars
    n = m - 1
    if G.dim != m or G.components[-1] != MPoly.var(n, m):
        raise DomainError("expected a replicated map (X + tQ + t^2 C, t)")
    Qs, Cs = [], []
    for i, c in enumerate(G.components[:-1]):
        rest = c - MPoly.var(i, m)
        byt: dict[int, dict] = {}
        for e, v in rest.items():
            byt.setdefault(e[n], {})[e[:n] + (0,)] = v
        if set(byt) - {1, 2}:
            raise DomainError("components must be X + tQ + t^2 C")
        q = MPoly(m, byt.get(1, {}))
        cc = MPoly(m, byt.get(2, {}))
        if not q.is_homogeneous(2) or not cc.is_homogeneous(3):
            raise DomainError("Q must be quadratic and C cubic homogeneous")
        Qs.append(q.drop_variables(list(range(n))))
        Cs.append(cc.drop_variables(list(range(n))))
    return Qs, Cs, n


def yagzhev_finalize(G: PolyMap) -> YagzhevForm:
    """``(X - t^2 Y + tQ, Y + C, t)`` in ``2n + 1`` variables."""
    Qs, Cs, n = _replicated_parts(G)
    m = 2 * n + 1
    X = [MPoly.var(i, m) for i in range(n)]
    Y = [MPoly.var(n + i, m) for i in range(n)]
    t = MPoly.var(2 * n, m)
    emb = list(range(n))
    comps = [X[i] - t * t * Y[i] + t * Qs[i].embed(m, emb) for i in range(n)]
    comps += [Y[i] + Cs[i].embed(m, emb) for i in range(n)]
    comps.append(t)
    xn = list(G.names[:n])
    names = tuple(xn + [f"y{i}" for i in range(n)] + ["t"])
    form = YagzhevForm(PolyMap(tuple(comps), names))
    if not form.is_cubic_homogeneous():
        raise AssertionError("Yagzhev output is not cubic homogeneous")
    return form


def yagzhev_composition_holds(G: PolyMap, form: YagzhevForm) -> bool:
    """Check ``form = A1 o (X + tQ + t^2 C, Y, t) o A2``."""
    Qs, Cs, n = _replicated_parts(G)
    m = 2 * n + 1
    X = [MPoly.var(i, m) for i in range(n)]
    Y = [MPoly.var(n + i, m) for i in range(n)]
    t = MPoly.var(2 * n, m)
    emb = list(range(n))
    A1 = PolyMap(tuple([X[i] - t * t * Y[i] for i in range(n)] + Y + [t]))
    A2 = PolyMap(tuple(X + [Y[i] + Cs[i].embed(m, emb) for i in range(n)] + [t]))
    mid = PolyMap(tuple([X[i] + t * Qs[i].embed(m, emb) + t * t * Cs[i].embed(m, emb) for i in range(n)]
                        + Y + [t]))
    return A1.compose(mid.compose(A2)).components == form.base.components


# ---------------------------------------------------------------------------
# full pipeline


@dataclass(frozen=True)
class PipelineReport:
    form: YagzhevForm
    trace: ReductionTrace
    lowered: PolyMap
    normalized: PolyMap
    replicated: PolyMap
    checks: dict

    @property
    def dimension(self) -> int:
        return self.form.base.nvars


def to_yagzhev(F: PolyMap, x0: Sequence | None = None, seed: int | None = None,
               samples: int = 32, max_dimension: int = MAX_DIMENSION) -> PipelineReport:
    """Run all four steps and record preservation checks."""
    if not F.jacobian_det():
        raise DomainError("Jacobian determinant vanishes identically")
    x0 = _regular_point(F) if x0 is None else [Fraction(v) for v in x0]
    lowered, trace = lower_degree(F, max_dimension)
    if 2 * lowered.nvars + 1 > max_dimension:
        raise ResourceError(f"Yagzhev form would need {2 * lowered.nvars + 1} > {max_dimension} dimensions")
    base = trace.section(x0)
    normalized = normalize(lowered, base)
    replicated = replicate(normalized)
    form = yagzhev_finalize(replicated)
    checks = {
        "cubic_homogeneous": form.is_cubic_homogeneous(),
        "replicate_identity": replicate_identity_holds(normalized, replicated),
        "composition_identity": yagzhev_composition_holds(replicated, form),
    }
    jF = F.jacobian_det()
    jL = lowered.jacobian_det()
    checks["lowered_det_matches"] = jL == jF.embed(lowered.nvars, list(range(F.nvars)))
    jY = form.base.jacobian_det()
    checks["keller_preserved"] = jF.is_constant() == jY.is_constant()
    gen = rng(seed, "reductions")
    ok_fiber = ok_sing = True
    for _ in range(samples):
        x = [Fraction(gen.randint(-9, 9), gen.randint(1, 5)) for _ in range(F.nvars)]
        extra = [Fraction(gen.randint(-9, 9), gen.randint(1, 5)) for _ in range(lowered.nvars - F.nvars)]
        w = lowered.evaluate(x + extra)
        ok_fiber &= trace.pullback(w) == F.evaluate(x)
        sec = trace.section(x)
        ok_fiber &= lowered.evaluate(sec) == F.evaluate(x) + (0,) * (lowered.dim - F.dim)
        ok_sing &= (jF.evaluate(x) == 0) == (jL.evaluate(x + extra) == 0)
    checks["fiber_correspondence_sampled"] = ok_fiber
    checks["nonsingularity_sampled"] = ok_sing
    return PipelineReport(form, trace, lowered, normalized, replicated, checks)


def _regular_point(F: PolyMap) -> list[Fraction]:
    """First small lattice point (origin first) where the Jacobian is invertible."""
    j = F.jacobian_det()
    for radius in range(0, 4):
        for pt in itertools.product(range(-radius, radius + 1), repeat=F.nvars):
            if max(map(abs, pt), default=0) == radius and j.evaluate(list(pt)) != 0:
                return [Fraction(v) for v in pt]
    raise DomainError("no regular base point found near the origin")


# ---------------------------------------------------------------------------
# symmetric extension


def symmetric_extend(F: PolyMap | RMap) -> RMap:
    """``G(v, x) = (F(x), v . F'(x))``, the gradient of ``sum v_i f_i(x)``.

    Variables are ordered ``(v_1..v_n, x_1..x_n)``.
    """
    if isinstance(F, PolyMap):
        F = F.to_rmap()
    n = F.domain_arity
    if F.dim != n:
        raise StructuralError("symmetric extension needs a square map")
    m = 2 * n
    emb = list(range(n, m))
    comps = [RatFunc._raw(c.num.embed(m, emb), c.den.embed(m, emb)) for c in F.components]
    vs = [RatFunc.var(i, m) for i in range(n)]
    grads = []
    for j in range(n):
        acc = RatFunc.const(0, m)
        for i in range(n):
            d = comps[i].diff(n + j)
            if d:
                acc = acc + vs[i] * d
        grads.append(acc)
    names = tuple(f"v{i}" for i in range(n)) + tuple(F.names)
    return RMap(m, tuple(comps + grads), names)


def symmetric_checks(F: PolyMap | RMap, G: RMap) -> dict[str, bool]:
    if isinstance(F, PolyMap):
        F = F.to_rmap()
    n = F.domain_arity
    jG = jacobian(G)
    sym = all(jG.matrix[i][j] == jG.matrix[j][i] for i in range(2 * n) for j in range(i + 1, 2 * n))
    jF = jacobian(F).det
    emb = list(range(n, 2 * n))
    jF_emb = RatFunc._raw(jF.num.embed(2 * n, emb), jF.den.embed(2 * n, emb))
    expected = jF_emb * jF_emb * (-1) ** n
    return {"symmetric": sym, "det_identity": jG.det == expected}


def symmetric_fiber_check(F: PolyMap | RMap, G: RMap, seed: int | None = None, samples: int = 32) -> bool:
    """At sampled ``x``, solve ``v . F'(x) = w`` and confirm ``G(v, x)`` hits the target."""
    if isinstance(F, PolyMap):
        F = F.to_rmap()
    n = F.domain_arity
    jac = jacobian(F)
    gen = rng(seed, "symmetric")
    for _ in range(samples):
        x = [Fraction(gen.randint(-9, 9), gen.randint(1, 5)) for _ in range(n)]
        J = [[e.evaluate(x) for e in row] for row in jac.matrix]
        if any(v is UNDEFINED for row in J for v in row):
            continue
        w = [Fraction(gen.randint(-9, 9), gen.randint(1, 5)) for _ in range(n)]
        # v J = w  <=>  J^T v^T = w^T
        inv = _mat_inverse([[J[i][j] for i in range(n)] for j in range(n)])
        if inv is None:
            return False
        v = [sum(inv[i][k] * w[k] for k in range(n)) for i in range(n)]
        val = G.evaluate(v + x)
        if val is UNDEFINED:
            continue
        if list(val[n:]) != w or val[:n] != F.evaluate(x):
            return False
    return True


def gorni_zampieri_pairing(*_args, **_kwargs):
    """Placeholder for the Gorni-Zampieri pairing; raises NotImplementedError."""
    raise NotImplementedError("Gorni-Zampieri pairing is not specified precisely enough to implement")
