"""Exact scalars, truncated power series, polynomials in ``t`` and J-fractions.

All arithmetic is over :class:`fractions.Fraction`; nothing here ever touches a
float.  A :class:`TruncatedSeries` of order ``N`` carries the coefficients of
``z**0 .. z**N`` and every operation on two series of order ``N`` returns a
series of order ``N``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    CompositionError,
    DomainError,
    InsufficientDepthError,
    NonInvertibleSeriesError,
    OrderMismatchError,
    SchemaError,
)

DEFAULT_ORDER = 16

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def Q(x) -> Fraction:
    """Coerce ``x`` to an exact rational.

    Accepts ints, Fractions and ``"p/q"`` strings.  Floats are rejected:
    they would silently smuggle rounding error into exact identities.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; pass a 'p/q' string or a Fraction")
    # numbers.Rational (e.g. gmpy2.mpq) without float round trip
    num = getattr(x, "numerator", None)
    den = getattr(x, "denominator", None)
    if num is not None and den is not None:
        return Fraction(int(num), int(den))
    raise TypeError(f"cannot interpret {x!r} as a rational")


def parse_rational(text: str, field: str | None = None) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise SchemaError(f"malformed rational {text!r}", field)
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise SchemaError(f"zero denominator in {text!r}", field)
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    x = Q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class TruncatedSeries:
    """A power series in ``z`` known exactly up to ``z**order``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        c = [Q(a) for a in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be non-negative")
            c = (c + [ZERO] * (order + 1 - len(c)))[: order + 1]
        if not c:
            raise ValueError("a series needs at least a constant term")
        self._c = tuple(c)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls([ONE], order)

    @classmethod
    def z(cls, order: int) -> "TruncatedSeries":
        return cls([ZERO, ONE], order)

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def __getitem__(self, k):
        return self._c[k]

    def __len__(self):
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self._c == other._c
        return NotImplemented

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"TruncatedSeries([{', '.join(format_rational(a) for a in self._c)}])"

    def _check(self, other: "TruncatedSeries"):
        if other.order != self.order:
            raise OrderMismatchError(f"series orders differ: {self.order} vs {other.order}")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries((self._c[0] + Q(other),) + self._c[1:])
        self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self._c, other._c)])

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries([-a for a in self._c])

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncatedSeries) else -Q(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            k = Q(other)
            return TruncatedSeries([k * a for a in self._c])
        self._check(other)
        a, b, n = self._c, other._c, self.order
        out = [ZERO] * (n + 1)
        for i, ai in enumerate(a):
            if ai:
                for j in range(n + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TruncatedSeries):
            return self * other.reciprocal()
        return self * (ONE / Q(other))

    def __pow__(self, k: int):
        if k < 0:
            return self.reciprocal() ** (-k)
        result = TruncatedSeries.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def reciprocal(self) -> "TruncatedSeries":
        a = self._c
        if a[0] == 0:
            raise NonInvertibleSeriesError("non-invertible series: zero constant term")
        inv0 = ONE / a[0]
        out = [inv0]
        for n in range(1, len(a)):
            acc = ZERO
            for k in range(1, n + 1):
                if a[k]:
                    acc += a[k] * out[n - k]
            out.append(-acc * inv0)
        return TruncatedSeries(out)

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """``self(inner(z))``; ``inner`` must vanish at ``z = 0``."""
        self._check(inner)
        if inner[0] != 0:
            raise CompositionError("composition requires zero constant term")
        result = TruncatedSeries.zero(self.order)
        for a in reversed(self._c):
            result = result * inner + a
        return result

    def revert(self) -> "TruncatedSeries":
        """Compositional inverse of a series ``c1 z + c2 z^2 + ...`` with ``c1 != 0``."""
        if self._c[0] != 0:
            raise CompositionError("reversion requires zero constant term")
        if self.order >= 1 and self._c[1] == 0:
            raise NonInvertibleSeriesError("reversion requires a nonzero linear term")
        n = self.order
        if n == 0:
            return TruncatedSeries.zero(0)
        # g(f(z)) = z solved coefficient by coefficient
        inv1 = ONE / self._c[1]
        g = [ZERO, inv1] + [ZERO] * (n - 1)
        powers = [None, self]
        for k in range(2, n + 1):
            powers.append(powers[-1] * self)
        for m in range(2, n + 1):
            acc = ZERO
            for k in range(1, m):
                if g[k]:
                    acc += g[k] * powers[k][m]
            g[m] = -acc / powers[m][m]
        return TruncatedSeries(g)

    def shift_down(self, k: int) -> "TruncatedSeries":
        """Divide by ``z**k``; the low ``k`` coefficients must vanish. Loses ``k`` orders."""
        if any(self._c[:k]):
            raise DomainError(f"series is not divisible by z^{k}")
        return TruncatedSeries(self._c[k:])

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self._c, order)


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_reciprocal(a: TruncatedSeries) -> TruncatedSeries:
    return a.reciprocal()


def series_compose(outer: TruncatedSeries, inner: TruncatedSeries) -> TruncatedSeries:
    return outer.compose(inner)


def eval_jfraction(jacobi, order: int) -> TruncatedSeries:
    """Expand the J-fraction of ``jacobi`` into ``1 + M(z)`` up to ``z**order``.

    Evaluated bottom-up from level ``ceil(order/2)``: level ``k`` only touches
    coefficients from ``z**(2k)`` on, so deeper levels are invisible.
    Parameters past a terminating ``gamma = 0`` are never read.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    beta, gamma = list(jacobi.beta), list(jacobi.gamma)
    terminated = getattr(jacobi, "terminated", False)
    top = (order + 1) // 2
    f = TruncatedSeries.one(order)
    z = TruncatedSeries.z(order)
    z2 = z * z
    for k in range(top - 1, -1, -1):
        if terminated and k >= len(gamma):
            continue
        if k >= len(beta):
            raise InsufficientDepthError(f"beta_{k} needed for order {order}")
        if k < len(gamma):
            g = gamma[k]
        elif 2 * k + 2 > order:
            g = ZERO
        else:
            raise InsufficientDepthError(f"gamma_{k} needed for order {order}")
        denom = TruncatedSeries.one(order) - z * beta[k] - z2 * f * g
        f = denom.reciprocal()
    return f


class PolynomialInT:
    """Polynomial with rational coefficients; ``coeffs[k]`` multiplies ``t**k``.

    Trailing zeros are trimmed, so the zero polynomial has no coefficients and
    degree ``-1``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Q(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def constant(cls, a) -> "PolynomialInT":
        return cls([a])

    @classmethod
    def linear(cls, slope, intercept) -> "PolynomialInT":
        """``slope * t + intercept``."""
        return cls([intercept, slope])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t) -> Fraction:
        t = Q(t)
        acc = ZERO
        for a in reversed(self.coeffs):
            acc = acc * t + a
        return acc

    def __eq__(self, other):
        if isinstance(other, PolynomialInT):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = other if isinstance(other, PolynomialInT) else PolynomialInT([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (ZERO,) * (n - len(self.coeffs))
        b = other.coeffs + (ZERO,) * (n - len(other.coeffs))
        return PolynomialInT([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return PolynomialInT([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-(other if isinstance(other, PolynomialInT) else PolynomialInT([other])))

    def __mul__(self, other):
        if not isinstance(other, PolynomialInT):
            return PolynomialInT([a * Q(other) for a in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return PolynomialInT()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolynomialInT(out)

    __rmul__ = __mul__

    def __repr__(self):
        if not self.coeffs:
            return "PolynomialInT(0)"
        terms = []
        for k, a in enumerate(self.coeffs):
            if a:
                terms.append(format_rational(a) + ("" if k == 0 else "*t" if k == 1 else f"*t^{k}"))
        return "PolynomialInT(" + " + ".join(terms) + ")"


class NotPolynomial:
    """Fit failure: no polynomial of degree <= ``max_degree`` matches the samples.

    ``witness_t`` is the first sample that the interpolant through all earlier
    samples misses.  This refutes low degree; it does not prove that the
    sampled quantity is not a polynomial.
    """

    __slots__ = ("witness_t", "max_degree")

    def __init__(self, witness_t: Fraction, max_degree: int):
        self.witness_t = witness_t
        self.max_degree = max_degree

    def __bool__(self):
        return False

    def __repr__(self):
        return f"NotPolynomial(witness_t={format_rational(self.witness_t)}, max_degree={self.max_degree})"


def lagrange_interpolate(points: Sequence[tuple]) -> PolynomialInT:
    """Exact interpolating polynomial through ``points`` (Newton divided differences)."""
    xs = [Q(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise DomainError("duplicate abscissae in interpolation data")
    coef = [Q(y) for _, y in points]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = PolynomialInT([coef[-1]]) if coef else PolynomialInT()
    for i in range(n - 2, -1, -1):
        poly = poly * PolynomialInT([-xs[i], ONE]) + coef[i]
    return poly


def poly_fit_and_degree(samples: Sequence[tuple]) -> PolynomialInT | NotPolynomial:
    """Find the lowest-degree polynomial certified by ``samples``.

    The interpolant through the first ``k`` samples is accepted as soon as it
    reproduces every remaining sample; at least one sample is always held out,
    so at most degree ``len(samples) - 2`` can be certified.
    """
    pts = [(Q(t), Q(v)) for t, v in samples]
    if len(pts) < 2:
        raise DomainError("need at least two samples")
    if len({t for t, _ in pts}) != len(pts):
        raise DomainError("duplicate t values in samples")
    first_miss = None
    for k in range(1, len(pts)):
        poly = lagrange_interpolate(pts[:k])
        miss = next((t for t, v in pts[k:] if poly(t) != v), None)
        if miss is None:
            return poly
        first_miss = miss
    return NotPolynomial(first_miss, len(pts) - 2)


def finite_difference(values: Sequence, k: int) -> list[Fraction]:
    """``k``-th forward differences of equally spaced samples."""
    vals = [Q(v) for v in values]
    for _ in range(k):
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return vals
