"""Echelon bases of M(2, h) and verification of the gap bound.

Membership in M(2, h) is tested as membership in the span of the echelon
basis on the window of exponents below the working precision. Certificates
carry that caveat in their ``membership`` field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import sigma_alt
from .errors import InsufficientPrecision, NotInSpan, VerificationError, WrongResidue
from .forms import (
    WeightRecord, e04, e_gamma2, gamma2_power, inf4_power, j2_power,
    r_sequence, t2h, t_h,
)
from .qseries import LaurentSeries, mul

MEMBERSHIP_PROXY = "span of echelon basis below q^P"


def default_precision(h: WeightRecord) -> int:
    return h.r + 33


@dataclass(frozen=True)
class FormBasis:
    h: WeightRecord
    elements: tuple
    precision: int
    j2_basis_checked: bool = False

    def __len__(self):
        return len(self.elements)

    def coordinates(self, f: LaurentSeries) -> tuple[list, LaurentSeries]:
        """Solve for the coordinates of ``f``; returns (coords, residual)."""
        rem = f.truncate(min(f.precision, self.precision))
        coords = []
        for i, e in enumerate(self.elements):
            c = rem[i]
            if c:
                lead = e[i]
                c = c if lead == 1 else Fraction(c) / lead
                rem = rem - e.scale(c)
            coords.append(c)
        return coords, rem

    def express(self, f: LaurentSeries) -> list:
        coords, rem = self.coordinates(f)
        if not rem.is_zero():
            raise NotInSpan(
                f"residual for weight {self.h.h} starts at q^{rem.valuation}: {rem[rem.valuation]}")
        return coords


def monomials(h: WeightRecord, P: int) -> list[LaurentSeries]:
    """E_{gamma,2}^a E_{inf,4}^b with 2a + 4b = h, ordered by b = 0..r-1."""
    out = []
    for b in range(h.r):
        a = (h.h - 4 * b) // 2
        out.append(mul(gamma2_power(a, P), inf4_power(b, P)))
    return out


def echelon(rows: list[LaurentSeries]) -> list[LaurentSeries]:
    """Reduce valuation-triangular rows (row i has valuation i, leading 1)."""
    rows = list(rows)
    n = len(rows)
    for i in range(n):
        for j in range(i + 1, n):
            c = rows[i][j]
            if c:
                rows[i] = rows[i] - rows[j].scale(c)
    for i, row in enumerate(rows):
        if row.is_zero() or row.valuation != i or row[i] != 1:
            raise VerificationError(f"row {i} lost its pivot during reduction")
    return rows


def j2_basis(h: WeightRecord, P: int) -> list[LaurentSeries]:
    """j2^d E_{gamma,2} E_{inf,4}^{r-1} for d = 0..r-1."""
    _need_2mod4(h)
    r = h.r
    out = []
    for d in range(r):
        head = mul(e_gamma2(P + d), inf4_power(r - 1, P + d))
        out.append(mul(head, j2_power(d, P - r + 1)).truncate(P))
    return out


def j2_basis_change(basis: FormBasis) -> list[list]:
    """Rows: coordinates of each j2^d E_{gamma,2} E_{inf,4}^{r-1} in ``basis``."""
    return [basis.express(f) for f in j2_basis(basis.h, basis.precision)]


def monomial_basis(h: WeightRecord, P: int, check_j2_basis: bool = True) -> FormBasis:
    if P <= h.r:
        raise InsufficientPrecision(f"need P > r = {h.r}, got {P}")
    rows = echelon(monomials(h, P))
    basis = FormBasis(h, tuple(rows), P)
    if check_j2_basis and h.residue == 2:
        change = j2_basis_change(basis)
        if determinant(change) == 0:
            raise VerificationError(f"j2-basis of weight {h.h} is degenerate")
        basis = FormBasis(h, tuple(rows), P, True)
    return basis


def determinant(matrix: list[list]) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    m = [[Fraction(x) for x in row] for row in matrix]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if m[i][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for i in range(col + 1, n):
            f = m[i][col] / m[col][col]
            if f:
                for k in range(col, n):
                    m[i][k] -= f * m[col][k]
    return det


def extremal_form(h: WeightRecord, P: int | None = None) -> LaurentSeries:
    """The form 1 + 0q + ... + 0q^{r-1} + A_r q^r + ... of weight h."""
    P = default_precision(h) if P is None else P
    if P <= h.r + 1:
        raise InsufficientPrecision(f"need P > r + 1 = {h.r + 1}, got {P}")
    return monomial_basis(h, P, check_j2_basis=False).elements[0]


def gap_index(f: LaurentSeries) -> int | None:
    """Least n >= 1 with a nonzero coefficient, or None inside the window."""
    for n in range(max(f.valuation, 1), f.precision):
        if f[n] != 0:
            return n
    return None


def principal_constant_term(h: WeightRecord) -> int:
    """C_{h,0} of t_h when h = 2 mod 4, else the constant term of T_{2,h}."""
    if h.residue == 2:
        return t_h(h, 1)[0]
    return t2h(h, 1)[0]


@dataclass(frozen=True)
class GapCertificate:
    h: WeightRecord
    form: LaurentSeries = field(repr=False)
    gap_index: int | None
    bound: int
    satisfied: bool
    constant_term: int
    precision: int
    membership: str = MEMBERSHIP_PROXY

    @property
    def conjectured_bound(self) -> int:
        """The older bound r + 1, reported for comparison."""
        return self.bound + 1

    @property
    def sharp(self) -> bool:
        return self.gap_index == self.bound

    @property
    def leading_gap_coefficient(self):
        return None if self.gap_index is None else self.form[self.gap_index]

    def to_record(self, fmt: str = "text") -> str:
        h, r = self.h.h, self.h.r
        if fmt == "text":
            return f"h={h} r={r} gap={self.gap_index} {'ok' if self.satisfied else 'FAIL'}"
        source = "t_h" if self.h.residue == 2 else "T_2h"
        return (
            f"h={h} r={r} gap={self.gap_index} bound={self.bound} "
            f"satisfied={str(self.satisfied).lower()} constant_term={self.constant_term} "
            f"constant_term_of={source} A_gap={self.leading_gap_coefficient} "
            f"conjectured_bound={self.conjectured_bound} precision={self.precision} "
            f"membership=\"{self.membership}\""
        )


def verify_gap_theorem(h: WeightRecord, P: int | None = None) -> GapCertificate:
    """Certificate that the extremal form of weight h has gap at most r.

    The extremal form is the worst case. Any other form with A_0 != 0 is
    A_0 times the extremal form plus echelon rows of valuation below r, so
    its gap is no larger.
    """
    P = default_precision(h) if P is None else P
    f = extremal_form(h, P)
    g = gap_index(f)
    return GapCertificate(
        h=h, form=f, gap_index=g, bound=h.r,
        satisfied=g is not None and g <= h.r,
        constant_term=principal_constant_term(h), precision=P,
    )


def _need_2mod4(h: WeightRecord):
    if h.residue != 2:
        raise WrongResidue(f"h = {h.h} is not 2 mod 4")


def verify_constant_term_linear_relation(h: WeightRecord, f: LaurentSeries,
                                         P: int | None = None) -> list:
    """Products C_{h,-k} A_k (k = 0..r) whose sum is the constant term of t_h f.

    Checks that the sum is zero and that solving the relation for A_0
    reproduces the constant term of ``f``.
    """
    _need_2mod4(h)
    r = h.r
    P = min(f.precision, default_precision(h) if P is None else P)
    if P <= r:
        raise InsufficientPrecision(f"need P > r = {r}")
    basis = monomial_basis(h, P, check_j2_basis=False)
    basis.express(f)
    C = t_h(h, 1)
    A = [f[k] for k in range(r + 1)]
    products = [Fraction(C[-k] * A[k]) for k in range(r + 1)]
    if sum(products) != 0:
        raise VerificationError(f"constant term of t_h f is {sum(products)}, not 0")
    direct = mul(t_h(h, 1), f.truncate(r + 1))
    if direct[0] != sum(products):
        raise VerificationError("relation disagrees with the product expansion")
    if C[0] == 0:
        raise VerificationError(f"C_(h,0) vanishes for h = {h.h}")
    solved = -Fraction(sum(C[-k] * A[k] for k in range(1, r + 1)), C[0])
    if solved != A[0]:
        raise VerificationError(f"solved A_0 = {solved} but f has A_0 = {A[0]}")
    return products


def vanishing_constant_terms(h: WeightRecord, P: int | None = None) -> list:
    """Constant terms of t_h e for each echelon basis element e (all must be 0)."""
    _need_2mod4(h)
    P = default_precision(h) if P is None else P
    basis = monomial_basis(h, P, check_j2_basis=False)
    th = t_h(h, 1)
    return [mul(th, e.truncate(h.r + 1))[0] for e in basis.elements]


@dataclass(frozen=True)
class ConstantTermReport:
    h: WeightRecord
    constant_term: int
    signed_sum: int
    u_alternates: bool
    w_alternates: bool

    @property
    def nonzero(self) -> bool:
        return self.constant_term != 0


def signed_constant_term_sum(h: WeightRecord) -> tuple[int, bool, bool]:
    """sum_m U_m W_{r-m} (-1)^{r-m} (-1)^m from unsigned magnitudes.

    U_n are the magnitudes of the recursion values R(n) for s = r, and W_n
    the magnitudes of the coefficients of E_{0,4}.
    """
    r = h.r
    R = r_sequence(r, r + 1).values
    e04_coeffs = [1] + [16 * sigma_alt(3, n) for n in range(1, r + 1)]
    U = [abs(x) for x in R]
    W = [abs(x) for x in e04_coeffs]
    u_alt = all(R[n] == U[n] * (-1) ** n and U[n] > 0 for n in range(r + 1))
    w_alt = all(e04_coeffs[n] == W[n] * (-1) ** n and W[n] > 0 for n in range(r + 1))
    total = sum(U[m] * W[r - m] * (-1) ** (r - m) * (-1) ** m for m in range(r + 1))
    return total, u_alt, w_alt


def constant_term_report(h: WeightRecord) -> ConstantTermReport:
    _need_2mod4(h)
    total, u_alt, w_alt = signed_constant_term_sum(h)
    return ConstantTermReport(h, t_h(h, 1)[0], total, u_alt, w_alt)


def check_e04_sign_pattern(P: int) -> bool:
    """Coefficient of q^n in E_{0,4} has sign (-1)^n for n < P."""
    f = e04(P)
    return all(f[n] * (-1) ** n > 0 for n in range(P))
