"""q-expansions of the named level-two forms.

Every constructor takes an absolute precision ``P`` and returns a series whose
coefficients are known for all exponents below ``P``; inputs are expanded far
enough internally that the requested window is fully justified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .arith import sigma_alt, sigma_odd, sigma_star
from .errors import DomainError, NonIntegralRecursion, NotInSpan, OddWeight, WrongResidue
from .qseries import LaurentSeries, ProductSpec, expand_product, invert, mul, pow


@dataclass(frozen=True)
class WeightRecord:
    h: int

    def __post_init__(self):
        if self.h < 2 or self.h % 2:
            raise OddWeight(f"weight must be even and >= 2, got {self.h}")

    @property
    def r(self) -> int:
        """Dimension of M(2, h)."""
        return self.h // 4 + 1

    @property
    def residue(self) -> int:
        return self.h % 4


def _require(P: int, least: int):
    if P < least:
        raise DomainError(f"precision must be at least {least}, got {P}")


@lru_cache(maxsize=64)
def e_gamma2(P: int) -> LaurentSeries:
    """1 + 24 sum sigma_odd(n) q^n, the normalized form spanning M(2, 2)."""
    _require(P, 1)
    return LaurentSeries(0, (1,) + tuple(24 * sigma_odd(n) for n in range(1, P)), P)


@lru_cache(maxsize=64)
def e04(P: int) -> LaurentSeries:
    _require(P, 1)
    return LaurentSeries(0, (1,) + tuple(16 * sigma_alt(3, n) for n in range(1, P)), P)


@lru_cache(maxsize=64)
def e_inf4(P: int) -> LaurentSeries:
    _require(P, 2)
    return LaurentSeries(1, tuple(sigma_star(2, 3, n) for n in range(1, P)), P)


def _parity_product(even: int, odd: int, P: int) -> LaurentSeries:
    spec = ProductSpec(lambda n: even if n % 2 == 0 else odd)
    return expand_product(spec, P)


def e_inf4_product(P: int) -> LaurentSeries:
    """q prod_{n even} (1-q^n)^8 prod_{n odd} (1-q^n)^-8."""
    _require(P, 2)
    return _parity_product(8, -8, P - 1).shift(1)


def e04_product(P: int) -> LaurentSeries:
    """The product display for E_{0,4} taken literally, leading factor q included.

    Its valuation is 1, so it cannot agree with :func:`e04`; see
    :func:`e04_product_qfree` for the variant without the factor q.
    """
    _require(P, 2)
    return _parity_product(8, 16, P - 1).shift(1)


def e04_product_qfree(P: int) -> LaurentSeries:
    """prod_{n even} (1-q^n)^8 prod_{n odd} (1-q^n)^16."""
    _require(P, 1)
    return _parity_product(8, 16, P)


@lru_cache(maxsize=16)
def delta(P: int) -> LaurentSeries:
    _require(P, 2)
    return expand_product(ProductSpec(lambda n: 24), P - 1).shift(1)


def inf4_power(e: int, P: int) -> LaurentSeries:
    """E_{inf,4}^e known below q^P (valuation e)."""
    if e == 0:
        return LaurentSeries.one(P)
    base = e_inf4(max(P - e + 1, 2))
    return pow(base, e, P)


def gamma2_power(e: int, P: int) -> LaurentSeries:
    if e == 0:
        return LaurentSeries.one(P)
    return pow(e_gamma2(max(P, 1)), e, P)


@lru_cache(maxsize=64)
def j2(P: int) -> LaurentSeries:
    """E_{gamma,2}^2 / E_{inf,4}: valuation -1, leading coefficient 1."""
    _require(P, 1)
    return mul(gamma2_power(2, P + 1), inf4_power(-1, P)).truncate(P)


def j2_power(d: int, P: int) -> LaurentSeries:
    if d == 0:
        return LaurentSeries.one(P)
    return pow(j2(P + d - 1), d, P)


@dataclass(frozen=True)
class RSequence:
    """Coefficients R(n) of q^s E_{inf,4}^{-s}, produced by their recursion."""

    s: int
    values: tuple
    signs_alternate: bool

    def magnitudes(self) -> list[int]:
        return [abs(x) for x in self.values]


def r_sequence(s: int, P: int) -> RSequence:
    """R(0) = 1, R(n) = (8s/n) sum_{a=1}^n sigma_1^alt(a) R(n-a)."""
    if s < 1:
        raise DomainError("s must be positive")
    _require(P, 1)
    alt = [0] + [sigma_alt(1, a) for a in range(1, P)]
    R = [1]
    for n in range(1, P):
        num = 8 * s * sum(alt[a] * R[n - a] for a in range(1, n + 1))
        q, rem = divmod(num, n)
        if rem:
            raise NonIntegralRecursion(f"R({n}) = {Fraction(num, n)} for s = {s}")
        R.append(q)
    signs = all(x * (-1) ** n > 0 for n, x in enumerate(R))
    return RSequence(s, tuple(R), signs)


def _check_2mod4(h: WeightRecord):
    if h.residue != 2:
        raise WrongResidue(f"defined only for h = 2 mod 4, got h = {h.h}")


def t_h(h: WeightRecord, P: int) -> LaurentSeries:
    """E_{0,4} E_{inf,4}^{-r} for h = 2 mod 4; leading term q^{-r}."""
    _check_2mod4(h)
    r = h.r
    return mul(e04(max(P + r, 1)), inf4_power(-r, P)).truncate(P)


def t2h(h: WeightRecord, P: int) -> LaurentSeries:
    """E_{gamma,2}^2 E_{0,4} E_{inf,4}^{-1-r}, defined for every even h."""
    s = h.r + 1
    pre = max(P + s, 1)
    return mul(mul(gamma2_power(2, pre), e04(pre)), inf4_power(-s, P)).truncate(P)


def w2(f: LaurentSeries, h: WeightRecord, P: int) -> LaurentSeries:
    """E_{gamma,2}^{-1} E_{inf,4}^{1-r} f for h = 2 mod 4.

    The result is known below ``min(P, f.precision - (r-1))``.
    """
    _check_2mod4(h)
    if not f.is_zero() and f.valuation < 0:
        raise DomainError("w2 expects a holomorphic series (valuation >= 0)")
    m = h.r - 1
    target = min(P, f.precision - m)
    pre = max(target + m, 1)
    g = mul(f, invert(e_gamma2(pre)))
    out = mul(g, inf4_power(-m, target))
    return out.truncate(min(target, out.precision))


def j2_polynomial(g: LaurentSeries, degree_bound: int) -> list:
    """Coefficients c_0..c_{degree_bound-1} with g = sum c_d j2^d on g's window.

    Raises NotInSpan if ``g`` is not such a polynomial on the window.
    """
    if not g.is_zero() and g.valuation <= -degree_bound:
        raise NotInSpan(f"pole of order {-g.valuation} exceeds degree bound {degree_bound}")
    P = g.precision
    rem = g
    coords = [0] * degree_bound
    for d in range(degree_bound - 1, -1, -1):
        c = rem[-d] if -d < P else 0
        if c:
            coords[d] = c
            rem = rem - j2_power(d, P).scale(c)
    if not rem.is_zero():
        raise NotInSpan(f"remainder starts at q^{rem.valuation}")
    return coords
