"""Even positive-definite quadratic forms, their theta series and minima."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from ._enum import count_by_norm
from .arith import divisors
from .errors import NotEvenPositiveDefinite, NotInSpan, ResourceLimit, UnsupportedDimension
from .forms import WeightRecord
from .gaps import MEMBERSHIP_PROXY, monomial_basis
from .qseries import LaurentSeries

DEFAULT_NODE_BUDGET = 10**8


@dataclass(frozen=True)
class GramMatrix:
    entries: tuple
    name: str = field(default="", compare=False)

    @classmethod
    def of(cls, rows, name: str = "") -> "GramMatrix":
        return cls(tuple(tuple(row) for row in rows), name)

    @property
    def v(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def quadratic_form(self, x) -> int:
        A = self.entries
        return sum(A[i][j] * x[i] * x[j] for i in range(len(x)) for j in range(len(x)))

    def direct_sum(self, other: "GramMatrix") -> "GramMatrix":
        a, b = self.v, other.v
        rows = [list(r) + [0] * b for r in self.entries]
        rows += [[0] * a + list(r) for r in other.entries]
        name = f"{self.name}+{other.name}" if self.name and other.name else ""
        return GramMatrix.of(rows, name)


def d4() -> GramMatrix:
    return GramMatrix.of(
        [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]], "D4")


def e8() -> GramMatrix:
    """Cartan matrix of E8."""
    rows = [[0] * 8 for _ in range(8)]
    for i in range(8):
        rows[i][i] = 2
    for i, j in [(0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7)]:
        rows[i][j] = rows[j][i] = -1
    return GramMatrix.of(rows, "E8")


def e8_dual_basis() -> GramMatrix:
    """E8 in the dual of the root basis: the inverse of the Cartan matrix."""
    inv = inverse(e8())
    return GramMatrix.of([[int(c) for c in row] for row in inv], "E8*")


def direct_sum(*forms: GramMatrix) -> GramMatrix:
    out = forms[0]
    for f in forms[1:]:
        out = out.direct_sum(f)
    return out


# -- exact linear algebra ---------------------------------------------------

def leading_minors(A) -> list[int]:
    """Leading principal minors by fraction-free (Bareiss) elimination."""
    m = [list(map(int, row)) for row in A]
    n = len(m)
    minors = []
    prev = 1
    for k in range(n):
        if m[k][k] == 0:
            minors.append(0)
            # the remaining minors are irrelevant once one fails
            return minors + [0] * (n - k - 1)
        minors.append(m[k][k])
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return minors


def inverse(A: GramMatrix) -> list[list[Fraction]]:
    n = A.v
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A.entries)]
    for c in range(n):
        p = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[p] = m[p], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return [row[n:] for row in m]


def determinant(A: GramMatrix) -> int:
    return leading_minors(A.entries)[-1]


@dataclass(frozen=True)
class DefinitenessCertificate:
    ok: bool
    reason: str | None = None
    minors: tuple = ()

    def __bool__(self):
        return self.ok


def check_even_positive_definite(A: GramMatrix) -> DefinitenessCertificate:
    rows = A.entries
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        return DefinitenessCertificate(False, "not square")
    if any(not isinstance(a, int) for r in rows for a in r):
        return DefinitenessCertificate(False, "not integral")
    for i in range(n):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                return DefinitenessCertificate(False, "not symmetric")
    for i in range(n):
        if rows[i][i] % 2:
            return DefinitenessCertificate(False, f"odd diagonal entry at ({i},{i})")
    minors = leading_minors(rows)
    for k, m in enumerate(minors):
        if m <= 0:
            return DefinitenessCertificate(
                False, f"leading minor {k + 1} is {m}", tuple(minors))
    return DefinitenessCertificate(True, None, tuple(minors))


def _require_form(A: GramMatrix):
    cert = check_even_positive_definite(A)
    if not cert:
        raise NotEvenPositiveDefinite(cert.reason)


def level(A: GramMatrix) -> int:
    """Least N with N A^{-1} integral and even on the diagonal.

    2 det(A) always qualifies (it gives twice the adjugate) and the qualifying
    N are closed under gcd, so the level divides 2 det(A).
    """
    _require_form(A)
    inv = inverse(A)
    for N in divisors(2 * determinant(A)):
        scaled = [[N * c for c in row] for row in inv]
        if all(c.denominator == 1 for row in scaled for c in row) and all(
                scaled[i][i].numerator % 2 == 0 for i in range(A.v)):
            return N
    raise AssertionError("2 det(A) must qualify")  # unreachable


# -- theta series -----------------------------------------------------------

@dataclass(frozen=True)
class ThetaSeries:
    source: GramMatrix
    counts: tuple
    precision: int
    nodes: int = field(default=0, compare=False)

    def as_series(self) -> LaurentSeries:
        return LaurentSeries(0, self.counts, self.precision)


def representation_counts(A: GramMatrix, max_norm: int,
                          node_budget: int = DEFAULT_NODE_BUDGET) -> list[int]:
    """#{x : Q_A(x) = m} for m = 0..max_norm."""
    counts, nodes = count_by_norm(A.rows(), max_norm, node_budget)
    if nodes < 0:
        raise ResourceLimit(f"enumeration for norm <= {max_norm} exceeded {node_budget} nodes")
    return counts


def theta_series(A: GramMatrix, P: int, node_budget: int = DEFAULT_NODE_BUDGET) -> ThetaSeries:
    """Counts #{x : Q_A(x) = 2n} for 0 <= n < P."""
    _require_form(A)
    if P < 1:
        raise ValueError("precision must be at least 1")
    counts, nodes = count_by_norm(A.rows(), 2 * (P - 1), node_budget)
    if nodes < 0:
        raise ResourceLimit(f"theta series to precision {P} exceeded {node_budget} nodes")
    return ThetaSeries(A, tuple(counts[::2]), P, nodes)


def min_represented(A: GramMatrix, node_budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Least positive value of Q_A on integer vectors."""
    _require_form(A)
    # the smallest diagonal entry is represented, so the search terminates
    ceiling = min(A.entries[i][i] for i in range(A.v))
    radius = 2
    while True:
        radius = min(radius, ceiling)
        counts = representation_counts(A, radius, node_budget)
        for m in range(1, radius + 1):
            if counts[m]:
                return m
        radius *= 2


# -- modular-form side ------------------------------------------------------

def _weight_of(A: GramMatrix) -> WeightRecord:
    if A.v % 4:
        raise UnsupportedDimension(f"dimension {A.v} is not divisible by 4")
    return WeightRecord(A.v // 2)


def _level_hypothesis(N: int) -> str:
    if N == 2:
        return "level 2"
    if N == 1:
        return "level 1 (M(1,h) inside M(2,h))"
    raise ValueError(f"level {N} does not divide 2")


@dataclass(frozen=True)
class MembershipReport:
    source: GramMatrix
    level: int
    hypothesis: str
    coordinates: tuple
    residual: tuple
    precision: int
    membership: str = MEMBERSHIP_PROXY

    @property
    def ok(self) -> bool:
        return not any(self.residual)


def membership_report(A: GramMatrix, P: int,
                      node_budget: int = DEFAULT_NODE_BUDGET) -> MembershipReport:
    """Coordinates of Theta_A in the echelon basis of M(2, v/2) and the residual."""
    h = _weight_of(A)
    N = level(A)
    hyp = _level_hypothesis(N)
    if P <= h.r:
        raise ValueError(f"precision must exceed r = {h.r}")
    theta = theta_series(A, P, node_budget).as_series()
    basis = monomial_basis(h, P, check_j2_basis=False)
    coords, rem = basis.coordinates(theta)
    return MembershipReport(A, N, hyp, tuple(coords), tuple(rem.coefficients(h.r, P)), P)


def verify_membership(A: GramMatrix, P: int,
                      node_budget: int = DEFAULT_NODE_BUDGET) -> MembershipReport:
    rep = membership_report(A, P, node_budget)
    if not rep.ok:
        first = next(i for i, c in enumerate(rep.residual) if c)
        raise NotInSpan(f"theta residual nonzero at q^{first + rep.source.v // 8 + 1}")
    return rep


def minima_bound(v: int) -> int:
    if v % 8 == 0:
        return 2 + v // 4
    if v % 8 == 4:
        return 1 + v // 4
    raise UnsupportedDimension(f"dimension {v} is not divisible by 4")


@dataclass(frozen=True)
class MinimumCertificate:
    source: GramMatrix
    v: int
    level: int
    hypothesis: str
    minimum: int
    bound: int
    satisfied: bool


def verify_minima_theorem(A: GramMatrix,
                          node_budget: int = DEFAULT_NODE_BUDGET) -> MinimumCertificate:
    bound = minima_bound(A.v)
    N = level(A)
    hyp = _level_hypothesis(N)
    m = min_represented(A, node_budget)
    return MinimumCertificate(A, A.v, N, hyp, m, bound, m <= bound)


# -- file formats -----------------------------------------------------------

class GramParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_gram_text(text: str) -> list[GramMatrix]:
    """Matrices written as a line holding v followed by v rows of v integers.

    Several matrices may follow one another; blank lines and ``#`` comments
    are ignored.
    """
    lines = [(i + 1, ln.split("#", 1)[0].strip()) for i, ln in enumerate(text.splitlines())]
    lines = [(n, ln) for n, ln in lines if ln]
    out = []
    k = 0
    while k < len(lines):
        n, ln = lines[k]
        try:
            v = int(ln)
        except ValueError:
            raise GramParseError(n, f"expected a dimension, got {ln!r}") from None
        if v < 1:
            raise GramParseError(n, f"dimension must be positive, got {v}")
        rows = []
        for _ in range(v):
            k += 1
            if k >= len(lines):
                raise GramParseError(n, f"matrix truncated: expected {v} rows")
            rn, rl = lines[k]
            try:
                row = [int(t) for t in rl.split()]
            except ValueError:
                raise GramParseError(rn, f"non-integer entry in {rl!r}") from None
            if len(row) != v:
                raise GramParseError(rn, f"expected {v} entries, got {len(row)}")
            rows.append(row)
        out.append(GramMatrix.of(rows, f"line{n}"))
        k += 1
    return out


def parse_gram_jsonl(text: str) -> list[GramMatrix]:
    """One JSON object per line: ``{"name": ..., "gram": [[...], ...]}``."""
    out = []
    for n, ln in enumerate(text.splitlines(), start=1):
        if not ln.strip():
            continue
        try:
            rec = json.loads(ln)
            rows = rec["gram"]
            if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
                raise TypeError("gram must be a list of rows")
        except (ValueError, KeyError, TypeError) as exc:
            raise GramParseError(n, str(exc)) from None
        out.append(GramMatrix.of(rows, str(rec.get("name", f"line{n}"))))
    return out


def format_gram_text(A: GramMatrix) -> str:
    return "\n".join([str(A.v)] + [" ".join(map(str, r)) for r in A.entries]) + "\n"
