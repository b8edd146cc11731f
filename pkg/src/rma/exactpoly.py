"""Sparse multivariate polynomials over the rationals.

Coefficients are Python ints or :class:`fractions.Fraction` values; both are
exact and compare equal across types, so arithmetic freely mixes them.
Terms are stored in a dict keyed by exponent tuples.  The canonical term
order is graded lexicographic with ties broken by the exponent of the lower
variable index (``x`` before ``y``).

Besides ring arithmetic the module provides formal differentiation,
substitution, exact division, content/primitive parts, a recursive GCD and
resultants (Sylvester/Bareiss for small degrees, subresultant PRS above).
"""

from __future__ import annotations

import ast
import math
import operator
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import DomainError, InexactDivisionError, StructuralError

Exps = tuple[int, ...]
NEG_INF = float("-inf")

# Sylvester matrices are used up to this degree in the eliminated variable.
BAREISS_MAX_DEGREE = 8


def as_rational(value) -> int | Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to an exact scalar."""
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, str):
        q = Fraction(value.strip())
        return q.numerator if q.denominator == 1 else q
    raise TypeError(f"not an exact rational: {value!r}")


def format_rational(value) -> str:
    q = Fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _grlex_key(e: Exps):
    return (sum(e), e)


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def _default_names(n: int) -> tuple[str, ...]:
    if n <= 3:
        return ("x", "y", "z")[:n]
    return tuple(f"x{i}" for i in range(n))


class MPoly:
    """Immutable sparse polynomial in ``nvars`` variables over Q."""

    __slots__ = ("nvars", "_terms", "_sorted", "_hash")

    def __init__(self, nvars: int, terms=None):
        if nvars < 0:
            raise StructuralError("negative arity")
        clean: dict[Exps, int | Fraction] = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for exps, coef in items:
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise StructuralError(f"bad exponent vector {exps} for arity {nvars}")
                coef = as_rational(coef)
                if coef:
                    new = clean.get(exps, 0) + coef
                    if new:
                        clean[exps] = new
                    else:
                        clean.pop(exps, None)
        self.nvars = nvars
        self._terms = clean
        self._sorted = None
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "MPoly":
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._sorted = None
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MPoly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, value, nvars: int) -> "MPoly":
        value = as_rational(value)
        return cls._raw(nvars, {(0,) * nvars: value} if value else {})

    @classmethod
    def one(cls, nvars: int) -> "MPoly":
        return cls.const(1, nvars)

    @classmethod
    def var(cls, index: int, nvars: int) -> "MPoly":
        if not 0 <= index < nvars:
            raise StructuralError(f"variable index {index} out of range for arity {nvars}")
        e = [0] * nvars
        e[index] = 1
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def gens(cls, nvars: int) -> tuple["MPoly", ...]:
        return tuple(cls.var(i, nvars) for i in range(nvars))

    @classmethod
    def monomial(cls, exps: Sequence[int], coef=1) -> "MPoly":
        return cls(len(exps), {tuple(exps): coef})

    @classmethod
    def parse(cls, text: str, names: Sequence[str]) -> "MPoly":
        """Parse an arithmetic expression such as ``"x^2 - 3/4*x*y + 1"``."""
        return _parse_expr(text, list(names))

    # -- basic queries ----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.nvars in self._terms)

    def constant_value(self):
        """Value of a constant polynomial; raises if nonconstant."""
        if not self.is_constant():
            raise DomainError("polynomial is not constant")
        return self._terms.get((0,) * self.nvars, 0)

    def coefficient(self, exps: Sequence[int]):
        return self._terms.get(tuple(exps), 0)

    def terms(self) -> list[tuple[Exps, int | Fraction]]:
        """Terms in canonical order, leading term first."""
        if self._sorted is None:
            self._sorted = sorted(self._terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)
        return self._sorted

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def leading_term(self) -> tuple[Exps, int | Fraction]:
        if not self._terms:
            raise DomainError("zero polynomial has no leading term")
        return self.terms()[0]

    def leading_coefficient(self):
        return self.leading_term()[1] if self._terms else 0

    def total_degree(self):
        """Maximum exponent sum; ``-inf`` for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(sum(e) for e in self._terms)

    def degree(self, index: int) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        self._check_index(index)
        if not self._terms:
            return -1
        return max(e[index] for e in self._terms)

    def variables(self) -> set[int]:
        used: set[int] = set()
        for e in self._terms:
            used.update(i for i, k in enumerate(e) if k)
        return used

    def is_homogeneous(self, degree: int) -> bool:
        return all(sum(e) == degree for e in self._terms)

    def homogeneous_part(self, degree: int) -> "MPoly":
        return MPoly._raw(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == degree})

    def _check_index(self, index: int) -> None:
        if not 0 <= index < self.nvars:
            raise StructuralError(f"variable index {index} out of range for arity {self.nvars}")

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise StructuralError(f"arity mismatch: {self.nvars} vs {other.nvars}")
            return other
        if _is_scalar(other):
            return MPoly.const(other, self.nvars)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        if not self._terms:
            return other
        res = dict(self._terms)
        for e, c in other._terms.items():
            v = res.get(e)
            if v is None:
                res[e] = c
            else:
                v += c
                if v:
                    res[e] = v
                else:
                    del res[e]
        return MPoly._raw(self.nvars, res)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c) -> "MPoly":
        c = as_rational(c) if not isinstance(c, Fraction) else c
        if not c:
            return MPoly.zero(self.nvars)
        if c == 1:
            return self
        return MPoly._raw(self.nvars, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other):
        if _is_scalar(other):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return MPoly.zero(self.nvars)
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (eb, cb), = b.items()
            add = operator.add
            return MPoly._raw(self.nvars, {tuple(map(add, ea, eb)): ca * cb for ea, ca in a.items()})
        res: dict = {}
        get = res.get
        add = operator.add
        bitems = list(b.items())
        for ea, ca in a.items():
            for eb, cb in bitems:
                e = tuple(map(add, ea, eb))
                res[e] = get(e, 0) + ca * cb
        return MPoly._raw(self.nvars, {e: c for e, c in res.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise DomainError("exponent must be a nonnegative integer")
        result = MPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if _is_scalar(other):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / Fraction(other))
        if isinstance(other, MPoly):
            return self.divexact(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if _is_scalar(other):
            if not other:
                return not self._terms
            return self._terms == {(0,) * self.nvars: other}
        return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution ---------------------------------------

    def diff(self, index: int) -> "MPoly":
        """Formal partial derivative with respect to variable ``index``."""
        self._check_index(index)
        res = {}
        for e, c in self._terms.items():
            k = e[index]
            if k:
                ne = e[:index] + (k - 1,) + e[index + 1:]
                res[ne] = c * k
        return MPoly._raw(self.nvars, res)

    def evaluate(self, point: Sequence):
        """Evaluate at a point whose entries support ``+`` and ``*``.

        Works for rationals, :class:`MPoly` values and any other ring-like
        objects (quadratic-extension numbers, rational functions).
        """
        if len(point) != self.nvars:
            raise StructuralError(f"point has {len(point)} coordinates, expected {self.nvars}")
        powers: list[dict[int, object]] = [dict() for _ in range(self.nvars)]

        def pw(i, k):
            cache = powers[i]
            v = cache.get(k)
            if v is None:
                if k == 1:
                    v = point[i]
                else:
                    half = pw(i, k // 2)
                    v = half * half
                    if k % 2:
                        v = v * point[i]
                cache[k] = v
            return v

        total = None
        for e, c in self._terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    f = pw(i, k)
                    term = f if term is None else term * f
            term = c if term is None else term * c
            total = term if total is None else total + term
        if total is None:
            # zero polynomial: return a zero of the point's type where possible
            if point and not _is_scalar(point[0]) and hasattr(point[0], "__mul__"):
                return point[0] * 0
            return 0
        return total

    def substitute(self, assignments: Sequence["MPoly"]) -> "MPoly":
        """Compose with polynomials, one per variable of ``self``."""
        if len(assignments) != self.nvars:
            raise StructuralError(f"need {self.nvars} assignments, got {len(assignments)}")
        arities = {a.nvars for a in assignments if isinstance(a, MPoly)}
        if len(arities) > 1:
            raise StructuralError("assignments must share a common arity")
        if not arities:
            raise StructuralError("assignments must be polynomials")
        target = arities.pop()
        if not self._terms:
            return MPoly.zero(target)
        out = self.evaluate(list(assignments))
        if _is_scalar(out):
            return MPoly.const(out, target)
        return out

    def specialize(self, values: dict[int, object]) -> "MPoly":
        """Substitute scalars for a subset of variables, keeping the arity."""
        res: dict = {}
        for e, c in self._terms.items():
            coef = c
            ne = list(e)
            for i, v in values.items():
                if e[i]:
                    coef = coef * v ** e[i]
                    ne[i] = 0
            ne = tuple(ne)
            res[ne] = res.get(ne, 0) + coef
        return MPoly._raw(self.nvars, {e: c for e, c in res.items() if c})

    def embed(self, nvars: int, mapping: Sequence[int]) -> "MPoly":
        """Move variable ``i`` to position ``mapping[i]`` in an ``nvars`` ring."""
        if len(mapping) != self.nvars:
            raise StructuralError("mapping length must equal arity")
        res = {}
        for e, c in self._terms.items():
            ne = [0] * nvars
            for i, k in enumerate(e):
                if k:
                    ne[mapping[i]] += k
            res[tuple(ne)] = c
        return MPoly._raw(nvars, res)

    def drop_variables(self, keep: Sequence[int]) -> "MPoly":
        """Restrict to the listed variables; the others must not occur."""
        for e in self._terms:
            if any(e[i] for i in range(self.nvars) if i not in keep):
                raise StructuralError("polynomial involves a dropped variable")
        return MPoly._raw(len(keep), {tuple(e[i] for i in keep): c for e, c in self._terms.items()})

    # -- univariate views -------------------------------------------------

    def as_upoly(self, index: int) -> "UPoly":
        """View as a polynomial in one variable with MPoly coefficients.

        Coefficients keep the full arity and do not involve ``index``.
        """
        self._check_index(index)
        buckets: dict[int, dict] = {}
        for e, c in self._terms.items():
            k = e[index]
            ne = e[:index] + (0,) + e[index + 1:]
            buckets.setdefault(k, {})[ne] = c
        zero = MPoly.zero(self.nvars)
        if not buckets:
            return UPoly((), zero)
        top = max(buckets)
        coeffs = [MPoly._raw(self.nvars, buckets[k]) if k in buckets else zero for k in range(top + 1)]
        return UPoly(coeffs, zero)

    @classmethod
    def from_upoly(cls, u: "UPoly", index: int, nvars: int) -> "MPoly":
        x = cls.var(index, nvars)
        total = cls.zero(nvars)
        xp = cls.one(nvars)
        for c in u.coeffs:
            if isinstance(c, MPoly):
                total = total + c * xp
            else:
                total = total + xp.scale(c)
            xp = xp * x
        return total

    def to_fraction_upoly(self, index: int) -> "UPoly":
        """Univariate view with rational coefficients (other variables absent)."""
        others = self.variables() - {index}
        if others:
            raise StructuralError("polynomial is not univariate in the requested variable")
        if not self._terms:
            return UPoly((), Fraction(0))
        top = self.degree(index)
        coeffs = [Fraction(0)] * (top + 1)
        for e, c in self._terms.items():
            coeffs[e[index]] = Fraction(c)
        return UPoly(coeffs, Fraction(0))

    # -- content and division --------------------------------------------

    def integer_primitive(self) -> tuple[Fraction, "MPoly"]:
        """Split as ``content * prim`` with ``prim`` integral, primitive, lc > 0."""
        if not self._terms:
            return Fraction(0), self
        den = 1
        for c in self._terms.values():
            if isinstance(c, Fraction):
                den = den * c.denominator // math.gcd(den, c.denominator)
        nums = {e: int(c * den) for e, c in self._terms.items()}
        g = 0
        for v in nums.values():
            g = math.gcd(g, v)
            if g == 1:
                break
        if self.leading_coefficient() < 0:
            g = -g
        prim = MPoly._raw(self.nvars, {e: v // g for e, v in nums.items()})
        return Fraction(g, den), prim

    def monic(self) -> "MPoly":
        return self.scale(Fraction(1) / Fraction(self.leading_coefficient()))

    def divmod_term(self, other: "MPoly") -> tuple["MPoly", "MPoly"]:
        """Division by leading terms in grlex order: ``self = q*other + r``.

        ``r`` has no term divisible by the leading monomial of ``other``
        among the terms reached; for exact quotients ``r`` is zero.
        """
        other = self._coerce(other)
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = other.leading_term()
        lc = Fraction(lc)
        rem = dict(self._terms)
        quot: dict = {}
        remainder: dict = {}
        other_items = list(other._terms.items())
        while rem:
            e = max(rem, key=_grlex_key)
            c = rem[e]
            if all(a >= b for a, b in zip(e, lm)):
                qe = tuple(a - b for a, b in zip(e, lm))
                qc = c / lc
                if qc.denominator == 1:
                    qc = qc.numerator
                quot[qe] = quot.get(qe, 0) + qc
                for oe, oc in other_items:
                    te = tuple(map(operator.add, qe, oe))
                    v = rem.get(te, 0) - qc * oc
                    if v:
                        rem[te] = v
                    else:
                        rem.pop(te, None)
            else:
                remainder[e] = c
                del rem[e]
        return MPoly._raw(self.nvars, quot), MPoly._raw(self.nvars, remainder)

    def divexact(self, other) -> "MPoly":
        """Exact quotient; raises :class:`InexactDivisionError` otherwise."""
        if _is_scalar(other):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(Fraction(1) / Fraction(other))
        other = self._coerce(other)
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if other.is_constant():
            return self.scale(Fraction(1) / Fraction(other.constant_value()))
        q, r = self.divmod_term(other)
        if r:
            raise InexactDivisionError("nonzero remainder in exact division")
        return q

    def divides(self, other: "MPoly") -> bool:
        """True when ``self`` divides ``other`` exactly."""
        if not self._terms:
            return not other
        try:
            other.divexact(self)
        except InexactDivisionError:
            return False
        return True

    # -- serialization ----------------------------------------------------

    def to_literal(self) -> list:
        return [[format_rational(c), list(e)] for e, c in self.terms()]

    @classmethod
    def from_literal(cls, literal, nvars: int | None = None) -> "MPoly":
        terms = []
        for entry in literal:
            coef, exps = entry
            terms.append((tuple(exps), as_rational(coef) if isinstance(coef, str) else as_rational(coef)))
        if nvars is None:
            if not terms:
                raise StructuralError("cannot infer arity of an empty literal")
            nvars = len(terms[0][0])
        return cls(nvars, terms)

    def format(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names is not None else list(_default_names(self.nvars))
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.terms():
            mono = "*".join(
                names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
            )
            q = Fraction(c)
            sign = "-" if q < 0 else "+"
            a = abs(q)
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"MPoly({self.nvars}, {self.format()!r})"


# ---------------------------------------------------------------------------
# dense univariate polynomials over an arbitrary coefficient ring


class UPoly:
    """Dense univariate polynomial; ``coeffs[k]`` multiplies ``T**k``.

    The coefficient ring is anything with ``+``, ``-``, ``*`` and a falsy
    zero: rationals or :class:`MPoly`.  The zero polynomial has degree -1.
    """

    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs: Iterable, zero=Fraction(0)):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.zero = zero

    @classmethod
    def from_ints(cls, coeffs: Iterable) -> "UPoly":
        return cls([Fraction(c) if not isinstance(c, Fraction) else c for c in coeffs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.zero

    def coeff(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.zero

    def _wrap(self, coeffs) -> "UPoly":
        return UPoly(coeffs, self.zero)

    def __add__(self, other):
        if not isinstance(other, UPoly):
            other = self._wrap([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return self._wrap([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return self._wrap([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UPoly):
            other = self._wrap([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return self._wrap([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return self._wrap([])
        out = [None] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if not b:
                    continue
                v = a * b
                out[i + j] = v if out[i + j] is None else out[i + j] + v
        return self._wrap([self.zero if v is None else v for v in out])

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = self._wrap([self.zero + 1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if not other:
            return not self.coeffs
        return self.coeffs == (other,)

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        """Horner evaluation."""
        if not self.coeffs:
            return self.zero
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UPoly":
        return self._wrap([c * k for k, c in enumerate(self.coeffs)][1:])

    def map_coeffs(self, fn: Callable, zero=None) -> "UPoly":
        z = self.zero if zero is None else zero
        return UPoly([fn(c) for c in self.coeffs], z)

    def shift(self, k: int) -> "UPoly":
        """Multiply by ``T**k``."""
        return self._wrap([self.zero] * k + list(self.coeffs))

    def exquo_scalar(self, c) -> "UPoly":
        return self._wrap([exquo(a, c) for a in self.coeffs])

    def prem(self, other: "UPoly") -> "UPoly":
        """Pseudo-remainder: ``lc(other)**(deg self - deg other + 1) * self mod other``."""
        if not other.coeffs:
            raise ZeroDivisionError("pseudo-division by zero polynomial")
        m, n = self.degree, other.degree
        if m < n:
            return self
        lc = other.lc
        r = list(self.coeffs)
        steps = m - n + 1
        while len(r) - 1 >= n and r:
            top = r[-1]
            r = [c * lc for c in r]
            shift = len(r) - 1 - n
            for k, b in enumerate(other.coeffs):
                if b:
                    r[shift + k] = r[shift + k] - top * b
            r.pop()
            steps -= 1
            while r and not r[-1]:
                r.pop()
        if steps:
            f = lc ** steps
            r = [c * f for c in r]
        return self._wrap(r)

    def divmod_field(self, other: "UPoly") -> tuple["UPoly", "UPoly"]:
        """Euclidean division over a field of rational coefficients."""
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        r = [Fraction(c) for c in self.coeffs]
        n = other.degree
        inv = Fraction(1) / Fraction(other.lc)
        q = [Fraction(0)] * max(0, len(r) - n)
        bc = [Fraction(c) for c in other.coeffs]
        while len(r) - 1 >= n and r:
            f = r[-1] * inv
            shift = len(r) - 1 - n
            q[shift] = f
            if f:
                for k, b in enumerate(bc):
                    if b:
                        r[shift + k] -= f * b
            r.pop()
            while r and not r[-1]:
                r.pop()
        return UPoly(q, Fraction(0)), UPoly(r, Fraction(0))

    def monic(self) -> "UPoly":
        inv = Fraction(1) / Fraction(self.lc)
        return UPoly([Fraction(c) * inv for c in self.coeffs], Fraction(0))

    def format(self, var: str = "T", names: Sequence[str] | None = None) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            cs = c.format(names) if isinstance(c, MPoly) else format_rational(c)
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if not mono:
                parts.append(f"({cs})")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"UPoly({self.format()})"


def exquo(a, b):
    """Exact quotient for scalars and polynomials alike."""
    if isinstance(a, MPoly):
        if isinstance(b, MPoly) and not b.is_constant():
            return a.divexact(b)
        bv = b.constant_value() if isinstance(b, MPoly) else b
        return a.divexact(bv)
    if isinstance(b, MPoly):
        if not b.is_constant():
            raise InexactDivisionError("scalar divided by nonconstant polynomial")
        b = b.constant_value()
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            return Fraction(a, b)
        return q
    return Fraction(a) / Fraction(b)


# ---------------------------------------------------------------------------
# univariate GCD over Q


def upoly_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic GCD of rational univariate polynomials (zero if both are zero)."""
    a = UPoly([Fraction(c) for c in a.coeffs])
    b = UPoly([Fraction(c) for c in b.coeffs])
    while b.coeffs:
        _, r = a.divmod_field(b)
        a, b = b, (r.monic() if r.coeffs else r)
    return a.monic() if a.coeffs else a


def upoly_divexact(a: UPoly, b: UPoly) -> UPoly:
    q, r = a.divmod_field(b)
    if r.coeffs:
        raise InexactDivisionError("nonzero remainder in exact univariate division")
    return q


# ---------------------------------------------------------------------------
# multivariate GCD


def _check_same(a: MPoly, b: MPoly) -> None:
    if not isinstance(a, MPoly) or not isinstance(b, MPoly):
        raise StructuralError("gcd expects MPoly operands")
    if a.nvars != b.nvars:
        raise StructuralError(f"arity mismatch: {a.nvars} vs {b.nvars}")


def gcd(a: MPoly, b: MPoly) -> MPoly:
    """Primitive GCD with integer coefficients and positive leading coefficient.

    ``gcd(a, 0)`` is the normalized ``a``; ``gcd(0, 0)`` is zero.
    """
    _check_same(a, b)
    if not a:
        return b.integer_primitive()[1]
    if not b:
        return a.integer_primitive()[1]
    return _gcd_int(a.integer_primitive()[1], b.integer_primitive()[1]).integer_primitive()[1]


def gcd_list(polys: Iterable[MPoly], nvars: int) -> MPoly:
    g = MPoly.zero(nvars)
    for p in polys:
        g = gcd(g, p)
        if g.is_constant() and g:
            return MPoly.one(nvars)
    return g


def _content_wrt(a: MPoly, varset: set[int]) -> MPoly:
    """GCD of the coefficients of ``a`` viewed as a polynomial in ``varset``."""
    groups: dict[tuple, dict] = {}
    for e, c in a.items():
        key = tuple(e[i] for i in sorted(varset))
        ne = tuple(0 if i in varset else k for i, k in enumerate(e))
        groups.setdefault(key, {})[ne] = c
    polys = sorted((MPoly._raw(a.nvars, t) for t in groups.values()), key=len)
    g = None
    for p in polys:
        p = p.integer_primitive()[1]
        g = p if g is None else _gcd_int(g, p)
        if g.is_constant():
            return MPoly.one(a.nvars)
    return g


def _gcd_int(a: MPoly, b: MPoly) -> MPoly:
    """GCD of nonzero polynomials over Q; the result is integer-primitive."""
    a = a.integer_primitive()[1]
    b = b.integer_primitive()[1]
    n = a.nvars
    if a.is_constant() or b.is_constant():
        return MPoly.one(n)
    if a == b:
        return a
    va, vb = a.variables(), b.variables()
    if va - vb:
        return _gcd_int(_content_wrt(a, va - vb), b)
    if vb - va:
        return _gcd_int(a, _content_wrt(b, vb - va))
    common = va
    v = max(common, key=lambda i: (max(a.degree(i), b.degree(i)), -i))
    if len(common) == 1:
        ua, ub = a.to_fraction_upoly(v), b.to_fraction_upoly(v)
        g = upoly_gcd(ua, ub)
        return MPoly.from_upoly(g, v, n).integer_primitive()[1]
    ca = _content_wrt(a, {v})
    cb = _content_wrt(b, {v})
    pa = a.divexact(ca) if not ca.is_constant() else a
    pb = b.divexact(cb) if not cb.is_constant() else b
    c = _gcd_int(ca, cb)
    g = _gcd_primitive(pa, pb, v)
    return (c * g).integer_primitive()[1]


def _specialization_bound(a: MPoly, b: MPoly, v: int) -> tuple[int, bool]:
    """Upper bound on ``deg_v gcd(a, b)`` from a degree-preserving specialization.

    Returns ``(bound, found)``; ``found`` is False when no suitable point was
    located, in which case the bound is meaningless.
    """
    others = sorted((a.variables() | b.variables()) - {v})
    la = a.as_upoly(v).lc
    lb = b.as_upoly(v).lc
    for attempt in range(12):
        vals = {i: 3 + 7 * attempt + 5 * j + (attempt * j) % 11 for j, i in enumerate(others)}
        if not la.specialize(vals) or not lb.specialize(vals):
            continue
        sa = a.specialize(vals).to_fraction_upoly(v)
        sb = b.specialize(vals).to_fraction_upoly(v)
        return upoly_gcd(sa, sb).degree, True
    return 0, False


def _gcd_primitive(a: MPoly, b: MPoly, v: int) -> MPoly:
    """GCD of polynomials that are primitive with respect to variable ``v``."""
    n = a.nvars
    if b.degree(v) > a.degree(v):
        a, b = b, a
    bound, found = _specialization_bound(a, b, v)
    if found:
        if bound == 0:
            return MPoly.one(n)
        if bound == b.degree(v) and b.divides(a):
            return b
    ua, ub = a.as_upoly(v), b.as_upoly(v)
    prs, _ = subresultant_prs(ua, ub)
    last = prs[-1]
    if last.degree == 0:
        return MPoly.one(n)
    g = MPoly.from_upoly(last, v, n)
    cont = _content_wrt(g, {v})
    if not cont.is_constant():
        g = g.divexact(cont)
    return g.integer_primitive()[1]


# ---------------------------------------------------------------------------
# subresultants and resultants


def _ring_one(zero):
    return zero + 1


def subresultant_prs(f: UPoly, g: UPoly) -> tuple[list[UPoly], list]:
    """Subresultant polynomial remainder sequence of ``f`` and ``g``.

    Returns the remainder sequence and the principal subresultant
    coefficients.  Operands are reordered so that ``deg f >= deg g``.
    """
    n, m = f.degree, g.degree
    if n < m:
        f, g = g, f
        n, m = m, n
    one = _ring_one(f.zero)
    if not f:
        return [], []
    if not g:
        return [f], [one]
    R = [f, g]
    d = n - m
    b = (-1) ** (d + 1)
    h = f.prem(g) * b
    lc = g.lc
    c = lc ** d
    S = [one, c]
    c = -c
    while h:
        k = h.degree
        R.append(h)
        f, g, m, d = g, h, k, m - k
        b = -lc * c ** d
        h = f.prem(g).exquo_scalar(b)
        lc = g.lc
        if d > 1:
            p = (-lc) ** d
            q = c ** (d - 1)
            c = exquo(p, q)
        else:
            c = -lc
        S.append(-c)
    return R, S


def resultant_prs(a: UPoly, b: UPoly):
    """Resultant via the subresultant PRS."""
    if not a or not b:
        raise DomainError("resultant of a zero polynomial")
    swap = a.degree < b.degree
    R, S = subresultant_prs(a, b)
    if R[-1].degree > 0:
        return a.zero * 0 if isinstance(a.zero, MPoly) else Fraction(0)
    res = S[-1]
    if swap and (a.degree * b.degree) % 2:
        res = -res
    return res


def sylvester_matrix(a: UPoly, b: UPoly) -> list[list]:
    m, n = a.degree, b.degree
    size = m + n
    zero = a.zero
    rows = []
    ac = list(reversed(a.coeffs))
    bc = list(reversed(b.coeffs))
    for i in range(n):
        rows.append([zero] * i + ac + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + bc + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix: Sequence[Sequence]):
    """Fraction-free Gaussian elimination determinant (Bareiss)."""
    n = len(matrix)
    if n == 0:
        return 1
    if any(len(row) != n for row in matrix):
        raise StructuralError("matrix must be square")
    A = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not A[k][k]:
            for r in range(k + 1, n):
                if A[r][k]:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return A[0][0] * 0
        pivot = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                num = row_i[j] * pivot - aik * row_k[j]
                row_i[j] = exquo(num, prev) if not (isinstance(prev, int) and prev == 1) else num
            row_i[k] = pivot * 0
        prev = pivot
    det = A[n - 1][n - 1]
    return -det if sign < 0 else det


def polynomial_det(matrix: Sequence[Sequence[MPoly]]) -> MPoly:
    """Determinant of a polynomial matrix.

    Constant pivots are eliminated first, which is cheap and keeps entries
    polynomial; whatever remains goes through Bareiss.  Jacobian matrices of
    normal-form maps are mostly handled by the first phase.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise StructuralError("matrix must be square")
    if n == 0:
        raise StructuralError("empty matrix")
    nv = matrix[0][0].nvars
    A = [list(row) for row in matrix]
    factor = Fraction(1)
    while A:
        pick = None
        for r, row in enumerate(A):
            for c, e in enumerate(row):
                if e and e.is_constant():
                    key = (sum(1 for x in row if x), r, c)
                    if pick is None or key < pick[0]:
                        pick = (key, r, c)
            if pick is not None and pick[0][0] == 1:
                break
        if pick is None:
            break
        _, r, c = pick
        p = Fraction(A[r][c].constant_value())
        sign = -1 if (r + c) % 2 else 1
        factor *= sign * p
        prow = A[r]
        nz = [(j, e) for j, e in enumerate(prow) if e and j != c]
        rest = []
        for i, row in enumerate(A):
            if i == r:
                continue
            a = row[c]
            if a:
                m = a.scale(1 / p)
                row = list(row)
                for j, e in nz:
                    row[j] = row[j] - m * e
            rest.append(row[:c] + row[c + 1:])
        A = rest
    if not A:
        return MPoly.const(factor, nv)
    if any(all(not e for e in row) for row in A):
        return MPoly.zero(nv)
    return bareiss_det(A).scale(factor)


def resultant_sylvester(a: UPoly, b: UPoly):
    if not a or not b:
        raise DomainError("resultant of a zero polynomial")
    if a.degree == 0 and b.degree == 0:
        return a.zero + 1
    return bareiss_det(sylvester_matrix(a, b))


def resultant(a: UPoly, b: UPoly):
    """Resultant of two univariate polynomials with ring coefficients.

    Small degrees use the Sylvester determinant, larger ones the
    subresultant PRS; both give the same value.
    """
    if not a or not b:
        raise DomainError("resultant of a zero polynomial")
    if b.degree == 0:
        return b.lc ** a.degree
    if a.degree == 0:
        return a.lc ** b.degree
    if max(a.degree, b.degree) <= BAREISS_MAX_DEGREE:
        return resultant_sylvester(a, b)
    return resultant_prs(a, b)


def resultant_in(a: MPoly, b: MPoly, index: int) -> MPoly:
    """Resultant of two multivariate polynomials with respect to one variable."""
    _check_same(a, b)
    if not a or not b:
        raise DomainError("resultant of a zero polynomial")
    r = resultant(a.as_upoly(index), b.as_upoly(index))
    if isinstance(r, MPoly):
        return r
    return MPoly.const(r, a.nvars)


# ---------------------------------------------------------------------------
# expression parsing


def _parse_expr(text: str, names: list[str]) -> MPoly:
    n = len(names)
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise StructuralError(f"cannot parse polynomial {text!r}: {exc.msg}") from exc

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return MPoly.const(node.value, n)
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise StructuralError(f"unknown variable {node.id!r}")
            return MPoly.var(names.index(node.id), n)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            left = walk(node.left)
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise StructuralError("exponents must be integer literals")
                return left ** node.right.value
            right = walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant():
                    raise StructuralError("division only by constants in polynomial literals")
                return left.divexact(right.constant_value())
        raise StructuralError(f"unsupported syntax in polynomial expression: {text!r}")

    return walk(tree)
