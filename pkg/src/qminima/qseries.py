"""Truncated Laurent series in q with exact coefficients.

A series stores its valuation, the coefficients from the valuation upward, and
a precision ``P``: every coefficient of ``q^n`` with ``n < P`` is known. All
arithmetic derives the precision of its result from its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Union

from .errors import LeadingCoefficientNotInvertible, ZeroSeries

Coeff = Union[int, Fraction]


def _normalize_coeff(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@dataclass(frozen=True)
class LaurentSeries:
    valuation: int
    coeffs: tuple
    precision: int

    def __post_init__(self):
        coeffs = tuple(_normalize_coeff(c) for c in self.coeffs)
        v = self.valuation
        # strip leading zeros, drop anything past the precision
        coeffs = coeffs[: max(self.precision - v, 0)]
        k = 0
        while k < len(coeffs) and coeffs[k] == 0:
            k += 1
        coeffs = coeffs[k:]
        v += k
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if not coeffs:
            v = self.precision
        object.__setattr__(self, "valuation", v)
        object.__setattr__(self, "coeffs", coeffs)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[Coeff], valuation: int = 0,
                    precision: int | None = None) -> "LaurentSeries":
        coeffs = tuple(coeffs)
        if precision is None:
            precision = valuation + len(coeffs)
        return cls(valuation, coeffs, precision)

    @classmethod
    def from_dict(cls, terms: dict[int, Coeff], precision: int) -> "LaurentSeries":
        if not terms:
            return cls.zero(precision)
        lo = min(terms)
        coeffs = [0] * max(precision - lo, 0)
        for n, c in terms.items():
            if n < precision:
                coeffs[n - lo] = c
        return cls(lo, tuple(coeffs), precision)

    @classmethod
    def zero(cls, precision: int) -> "LaurentSeries":
        return cls(precision, (), precision)

    @classmethod
    def one(cls, precision: int) -> "LaurentSeries":
        return cls(0, (1,), precision)

    @classmethod
    def monomial(cls, exponent: int, precision: int, coeff: Coeff = 1) -> "LaurentSeries":
        return cls(exponent, (coeff,), precision)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def relative_precision(self) -> int:
        """Number of known coefficients counted from the valuation."""
        return self.precision - self.valuation

    def leading_coefficient(self) -> Coeff:
        if not self.coeffs:
            raise ZeroSeries("zero series has no leading coefficient")
        return self.coeffs[0]

    def __getitem__(self, n: int) -> Coeff:
        if n >= self.precision:
            raise IndexError(f"coefficient of q^{n} is beyond precision {self.precision}")
        k = n - self.valuation
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def coefficients(self, start: int, stop: int) -> list:
        """Coefficients of q^start .. q^(stop-1)."""
        return [self[n] for n in range(start, stop)]

    def terms(self):
        """Yield ``(exponent, coefficient)`` for every exponent below the precision."""
        for n in range(min(self.valuation, self.precision), self.precision):
            yield n, self[n]

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def __repr__(self):
        shown = ", ".join(f"{c}q^{self.valuation + i}" for i, c in enumerate(self.coeffs[:6]))
        more = ", ..." if len(self.coeffs) > 6 else ""
        return f"LaurentSeries({shown}{more} + O(q^{self.precision}))"

    # -- precision handling -------------------------------------------------

    def truncate(self, precision: int) -> "LaurentSeries":
        if precision > self.precision:
            raise ValueError(f"cannot raise precision {self.precision} to {precision}")
        return LaurentSeries(self.valuation, self.coeffs, precision)

    def agrees_with(self, other: "LaurentSeries") -> bool:
        """Equality on the window both series know."""
        p = min(self.precision, other.precision)
        lo = min(self.valuation, other.valuation, p)
        return all(self[n] == other[n] for n in range(lo, p))

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.valuation, self.coeffs, self.precision) == (
            other.valuation, other.coeffs, other.precision)

    def __hash__(self):
        return hash((self.valuation, self.coeffs, self.precision))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentSeries):
            other = LaurentSeries.monomial(0, self.precision, other)
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.valuation, tuple(-c for c in self.coeffs), self.precision)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LaurentSeries):
            return mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return pow(self, e)

    def scale(self, c: Coeff) -> "LaurentSeries":
        return LaurentSeries(self.valuation, tuple(c * a for a in self.coeffs), self.precision)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by q^k (exact, so the precision moves too)."""
        return LaurentSeries(self.valuation + k, self.coeffs, self.precision + k)


def add(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    p = min(a.precision, b.precision)
    lo = min(a.valuation, b.valuation)
    if lo >= p:
        return LaurentSeries.zero(p)
    out = [0] * (p - lo)
    for s in (a, b):
        off = s.valuation - lo
        for i, c in enumerate(s.coeffs):
            if off + i >= len(out):
                break
            out[off + i] += c
    return LaurentSeries(lo, tuple(out), p)


def mul(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    # zero series carry valuation == precision, so this rule covers them too
    p = min(a.precision + b.valuation, b.precision + a.valuation)
    v = a.valuation + b.valuation
    if a.is_zero() or b.is_zero() or v >= p:
        return LaurentSeries.zero(p)
    n = p - v
    ac, bc = a.coeffs[:n], b.coeffs[:n]
    out = [0] * n
    for i, x in enumerate(ac):
        if not x:
            continue
        lim = n - i
        for j, y in enumerate(bc[:lim]):
            out[i + j] += x * y
    return LaurentSeries(v, tuple(out), p)


def _unit_inverse(c: Coeff) -> Coeff:
    if isinstance(c, int):
        if c in (1, -1):
            return c
        raise LeadingCoefficientNotInvertible(
            f"leading coefficient {c} is not a unit over the integers")
    return 1 / c


def invert(a: LaurentSeries, target_precision: int | None = None) -> LaurentSeries:
    """Multiplicative inverse, known to ``min(target_precision, P - 2v)``.

    Integer series need leading coefficient +-1; series holding a
    ``Fraction`` anywhere are inverted over the rationals.
    """
    if a.is_zero():
        raise ZeroSeries("cannot invert the zero series")
    c0 = a.coeffs[0]
    if a.is_integral():
        inv0 = _unit_inverse(c0)
    else:
        inv0 = 1 / Fraction(c0)
    v = a.valuation
    p = a.precision - 2 * v
    if target_precision is not None:
        p = min(p, target_precision)
    n = p + v  # number of coefficients of the result, from q^{-v}
    if n <= 0:
        return LaurentSeries.zero(p)
    ac = a.coeffs
    out = [0] * n
    out[0] = inv0
    for k in range(1, n):
        s = 0
        for i in range(1, min(k, len(ac) - 1) + 1):
            s += ac[i] * out[k - i]
        out[k] = -inv0 * s
    return LaurentSeries(-v, tuple(out), p)


def pow(a: LaurentSeries, e: int, target_precision: int | None = None) -> LaurentSeries:
    """``a**e`` by repeated squaring; negative ``e`` inverts first."""
    if e < 0:
        a = invert(a)
        e = -e
    if e == 0:
        p = a.precision - a.valuation  # relative precision survives
        result = LaurentSeries.one(p)
    else:
        result = None
        base = a
        while e:
            if e & 1:
                result = base if result is None else mul(result, base)
            e >>= 1
            if e:
                base = mul(base, base)
    if target_precision is not None and target_precision < result.precision:
        result = result.truncate(target_precision)
    return result


def q_derivative(a: LaurentSeries) -> LaurentSeries:
    """The derivation ``q d/dq``: multiplies the coefficient of q^n by n."""
    return LaurentSeries(
        a.valuation,
        tuple((a.valuation + i) * c for i, c in enumerate(a.coeffs)),
        a.precision,
    )


@dataclass(frozen=True)
class ProductSpec:
    """The product of ``(1 - q^n)^exponent(n)`` over n >= 1 with ``support(n)``."""

    exponent: Callable[[int], int]
    support: Callable[[int], bool] = field(default=lambda n: True)

    def e(self, n: int) -> int:
        return self.exponent(n) if self.support(n) else 0


def expand_product(spec: ProductSpec, target_precision: int) -> LaurentSeries:
    """Expand ``prod (1-q^n)^{e(n)}`` with Euler's recursion.

    ``n p(n) = sum_{k=1}^n g(k) p(n-k)`` with ``g(k) = -sum_{d|k} d e(d)``.
    """
    if target_precision < 1:
        raise ValueError("target precision must be at least 1")
    P = target_precision
    g = [0] * P
    for d in range(1, P):
        w = d * spec.e(d)
        if w:
            for k in range(d, P, d):
                g[k] -= w
    p = [0] * P
    p[0] = 1
    for n in range(1, P):
        s = 0
        for k in range(1, n + 1):
            if g[k]:
                s += g[k] * p[n - k]
        if isinstance(s, int) and s % n == 0:
            p[n] = s // n
        else:
            p[n] = Fraction(s, n)
    return LaurentSeries(0, tuple(p), P)

