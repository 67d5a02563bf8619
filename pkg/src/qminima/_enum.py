"""Exact Fincke-Pohst enumeration on scaled integers.

With A = L D L^T (L unit lower triangular), Q(x) = sum_i D_i y_i^2 where
y_i = x_i + sum_{j>i} L_ji x_j. Multiplying L by M and D by K clears every
denominator, so the scaled norm K M^2 Q(x) is an integer sum of
Dk_i (M x_i + s_i)^2 and each coordinate range comes from an integer square
root. The kernel is compiled with numba when the scaled values fit in int64;
otherwise the same code runs in Python on object arrays.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import lcm

import numpy as np

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None

INT64_SAFE = 2**62


def _isqrt_py(n):
    if n <= 0:
        return 0
    r = math.isqrt(n)
    return r


def _make_kernel(isqrt):
    def kernel(Lm, Dk, M, B, scale, hist, x, hi, cen, part, budget):
        """Fill ``hist[Q]`` for every integer vector with Q <= B / scale.

        Returns the number of coordinate intervals computed, or -1 once that
        exceeds ``budget``.
        """
        v = Dk.shape[0]
        i = v - 1
        part[v] = 0
        w = isqrt((B - part[v]) // Dk[i])
        x[i] = -(w // M) - 1
        hi[i] = w // M
        cen[i] = 0
        nodes = 1
        while True:
            if i == 0:
                s = cen[0]
                base = part[1]
                for t in range(x[0] + 1, hi[0] + 1):
                    y = M * t + s
                    hist[(base + Dk[0] * y * y) // scale] += 1
                i = 1
                if i == v:
                    break
                continue
            x[i] += 1
            if x[i] > hi[i]:
                i += 1
                if i == v:
                    break
                continue
            y = M * x[i] + cen[i]
            part[i] = part[i + 1] + Dk[i] * y * y
            i -= 1
            s = 0
            for j in range(i + 1, v):
                s += Lm[j, i] * x[j]
            w = isqrt((B - part[i + 1]) // Dk[i])
            x[i] = -((w + s) // M) - 1
            hi[i] = (w - s) // M
            cen[i] = s
            nodes += 1
            if nodes > budget:
                return -1
        return nodes

    return kernel


_kernel_py = _make_kernel(_isqrt_py)

if njit is not None:

    @njit(cache=True)
    def _isqrt_nb(n):
        if n <= 0:
            return 0
        r = np.int64(math.sqrt(np.float64(n)))
        while r * r > n:
            r -= 1
        while (r + 1) * (r + 1) <= n:
            r += 1
        return r

    _kernel_nb = njit(cache=True)(_make_kernel(_isqrt_nb))
else:  # pragma: no cover
    _kernel_nb = None


def ldl(A) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Exact A = L D L^T with L unit lower triangular."""
    v = len(A)
    A = [[Fraction(a) for a in row] for row in A]
    L = [[Fraction(int(i == j)) for j in range(v)] for i in range(v)]
    D = [Fraction(0)] * v
    for j in range(v):
        D[j] = A[j][j] - sum(L[j][k] ** 2 * D[k] for k in range(j))
        if D[j] <= 0:
            raise ValueError("matrix is not positive definite")
        for i in range(j + 1, v):
            L[i][j] = (A[i][j] - sum(L[i][k] * L[j][k] * D[k] for k in range(j))) / D[j]
    return L, D


def count_by_norm(A, max_norm: int, budget: int,
                  jit: bool | None = None) -> tuple[list[int], int]:
    """Number of integer vectors x with Q_A(x) = m, for 0 <= m <= max_norm.

    Returns (counts, nodes); nodes is -1 when the budget was exhausted.
    """
    v = len(A)
    L, D = ldl(A)
    M = lcm(*(L[j][i].denominator for j in range(v) for i in range(j)), 1)
    K = lcm(*(d.denominator for d in D))
    Lm = [[int(L[j][i] * M) for i in range(v)] for j in range(v)]
    Dk = [int(d * K) for d in D]
    scale = K * M * M
    B = scale * max_norm

    # crude magnitude bound on every intermediate quantity
    xb = [_isqrt_py(B // (Dk[i] * M * M)) + 2 for i in range(v)]
    xbound = max(xb) * (1 + max(abs(c) for row in Lm for c in row)) * v + 1
    worst = max(B, max(Dk) * (M * xbound) ** 2) * 4
    use_jit = _kernel_nb is not None and worst < INT64_SAFE
    if jit is not None:
        use_jit = use_jit and jit

    dtype = np.int64 if use_jit else object
    args = (
        np.array(Lm, dtype=dtype),
        np.array(Dk, dtype=dtype),
        M, B, scale,
        np.zeros(max_norm + 1, dtype=dtype),
        np.zeros(v, dtype=dtype),
        np.zeros(v, dtype=dtype),
        np.zeros(v, dtype=dtype),
        np.zeros(v + 1, dtype=dtype),
        budget,
    )
    if not use_jit:
        nodes = _kernel_py(*args)
    else:
        nodes = int(_kernel_nb(*args))
    return [int(c) for c in args[5]], nodes
