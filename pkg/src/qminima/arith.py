"""Divisor sums used by the level-two Eisenstein series."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import isqrt

from .errors import DomainError


def divisors(n: int) -> list[int]:
    """Positive divisors of ``n`` in increasing order, by trial division."""
    if n < 1:
        raise DomainError(f"divisors of {n} are not defined here")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def sigma_odd(n: int) -> int:
    """Sum of the odd positive divisors of n."""
    return sum(d for d in divisors(n) if d & 1)


def sigma_alt(k: int, n: int) -> int:
    """Sum of (-1)^d d^k over the positive divisors d of n."""
    return sum(d**k if d % 2 == 0 else -(d**k) for d in divisors(n))


def sigma_star(N: int, k: int, n: int) -> int:
    """Sum of d^k over divisors d of n such that N does not divide n/d."""
    if N < 1:
        raise DomainError("N must be positive")
    return sum(d**k for d in divisors(n) if (n // d) % N)


class Kind(Enum):
    ODD = "odd"
    ALTERNATING = "alt"
    STAR = "star"


@dataclass(frozen=True)
class DivisorSumKind:
    tag: Kind
    k: int = 1
    N: int = 2

    def __call__(self, n: int) -> int:
        if self.tag is Kind.ODD:
            return sigma_odd(n)
        if self.tag is Kind.ALTERNATING:
            return sigma_alt(self.k, n)
        return sigma_star(self.N, self.k, n)


def tau(n: int) -> int:
    """Ramanujan's tau(n), read off the product expansion of Delta."""
    from .forms import delta

    if n < 1:
        raise DomainError("tau is defined for n >= 1")
    return delta(n + 1)[n]
