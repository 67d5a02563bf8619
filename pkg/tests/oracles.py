"""Independent reference computations used only by the tests.

Nothing here imports the package's series or enumeration code.
"""

from fractions import Fraction
from itertools import product
from math import isqrt

import numpy as np


def divisors_scan(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def sigma_odd_scan(n):
    return sum(d for d in divisors_scan(n) if d % 2 == 1)


def sigma_alt_scan(k, n):
    return sum((-1) ** d * d**k for d in divisors_scan(n))


def sigma_star_scan(N, k, n):
    return sum(d**k for d in divisors_scan(n) if (n // d) % N != 0)


def poly_mul(a, b, n):
    """Truncated product of coefficient lists (index = exponent)."""
    out = [0] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return out


def binomial_series(m, e, n):
    """(1 - q^m)^e truncated below q^n, for any integer e."""
    out = [0] * n
    coeff = Fraction(1)
    k = 0
    while k * m < n:
        out[k * m] = coeff * (-1) ** k
        coeff = coeff * (e - k) / (k + 1)
        k += 1
    return [int(c) for c in out]


def product_oracle(exponent, n):
    """prod_{m=1}^{n-1} (1 - q^m)^{exponent(m)} multiplied out factor by factor."""
    out = [1] + [0] * (n - 1)
    for m in range(1, n):
        e = exponent(m)
        if e:
            out = poly_mul(out, binomial_series(m, e, n), n)
    return out


def inverse_oracle(rows):
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(rows)]
    for c in range(n):
        p = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[p] = m[p], m[c]
        m[c] = [x / m[c][c] for x in m[c]]
        for i in range(n):
            if i != c:
                m[i] = [a - m[i][c] * b for a, b in zip(m[i], m[c])]
    return [r[n:] for r in m]


def level_scan(rows):
    """Least N >= 1 with N A^{-1} integral with even diagonal, by direct scan."""
    inv = inverse_oracle(rows)
    N = 1
    while True:
        if all((N * c).denominator == 1 for r in inv for c in r) and all(
                (N * inv[i][i]).numerator % 2 == 0 for i in range(len(rows))):
            return N
        N += 1


def box_bounds(rows, max_norm):
    """|x_i| <= sqrt(max_norm * (A^{-1})_ii) for every x with Q(x) <= max_norm."""
    inv = inverse_oracle(rows)
    return [isqrt(int(max_norm * inv[i][i])) for i in range(len(rows))]


def box_scan(rows, max_norm):
    """Count integer vectors by Q value with no pruning: every point of the box."""
    A = np.array(rows, dtype=np.int64)
    v = len(rows)
    bounds = box_bounds(rows, max_norm)
    if v == 1:
        counts = [0] * (max_norm + 1)
        for x in range(-bounds[0], bounds[0] + 1):
            q = rows[0][0] * x * x
            if q <= max_norm:
                counts[q] += 1
        return counts
    k = v // 2
    head = np.array(list(product(*[range(-b, b + 1) for b in bounds[:k]])), dtype=np.int64)
    tail = np.array(list(product(*[range(-b, b + 1) for b in bounds[k:]])), dtype=np.int64)
    Ahh, Aht, Att = A[:k, :k], A[:k, k:], A[k:, k:]
    qh = np.einsum("ij,jk,ik->i", head, Ahh, head)
    qt = np.einsum("ij,jk,ik->i", tail, Att, tail)
    cross = 2 * head @ Aht  # (nh, v-k)
    counts = np.zeros(max_norm + 1, dtype=np.int64)
    chunk = max(1, 4_000_000 // len(tail))
    for s in range(0, len(head), chunk):
        Q = qh[s:s + chunk, None] + qt[None, :] + cross[s:s + chunk] @ tail.T
        Q = Q[Q <= max_norm]
        counts += np.bincount(Q, minlength=max_norm + 1)
    return [int(c) for c in counts]


def naive_series_mul(a: dict, b: dict):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return out
