import json

import pytest
from hypothesis import given, settings, strategies as st

from oracles import box_scan, level_scan, sigma_odd_scan
from qminima._enum import count_by_norm, ldl
from qminima.errors import NotEvenPositiveDefinite, NotInSpan, ResourceLimit, UnsupportedDimension
from qminima.quadforms import (
    GramMatrix, GramParseError, check_even_positive_definite, d4, direct_sum, e8, e8_dual_basis,
    format_gram_text, level, membership_report, min_represented, minima_bound, parse_gram_jsonl,
    parse_gram_text, representation_counts, theta_series, verify_membership, verify_minima_theorem,
)
from qminima.forms import WeightRecord
from qminima.qseries import mul

A2 = GramMatrix.of([[2, -1], [-1, 2]], "A2")


def test_definiteness_examples():
    assert check_even_positive_definite(GramMatrix.of([[2]]))
    c = check_even_positive_definite(GramMatrix.of([[2, 1], [1, 2]]))
    assert c.ok and c.minors == (2, 3)
    c = check_even_positive_definite(GramMatrix.of([[2, 3], [3, 2]]))
    assert not c.ok and c.minors == (2, -5)


@pytest.mark.parametrize("rows,reason", [
    ([[2, 1], [0, 2]], "not symmetric"),
    ([[3, 0], [0, 2]], "odd diagonal"),
    ([[2, 0, 0], [0, 2]], "not square"),
    ([[-2]], "leading minor 1"),
])
def test_definiteness_failures(rows, reason):
    c = check_even_positive_definite(GramMatrix.of(rows))
    assert not c.ok and reason in c.reason


def test_level_examples():
    assert level(GramMatrix.of([[2]])) == 4
    assert level(d4()) == 2
    assert level(e8()) == 1
    assert level(e8_dual_basis()) == 1


def test_level_against_scan():
    for A in [A2, d4(), e8(), GramMatrix.of([[2, 0], [0, 6]]), GramMatrix.of([[4, 1], [1, 4]]),
              direct_sum(d4(), A2), GramMatrix.of([[2, 1, 0], [1, 4, 1], [0, 1, 6]])]:
        assert level(A) == level_scan(A.rows())


def test_level_rejects_invalid():
    with pytest.raises(NotEvenPositiveDefinite):
        level(GramMatrix.of([[2, 3], [3, 2]]))


def test_ldl_reconstructs():
    A = e8().rows()
    L, D = ldl(A)
    v = len(A)
    for i in range(v):
        for j in range(v):
            assert sum(L[i][k] * D[k] * L[j][k] for k in range(v)) == A[i][j]


def test_theta_one_dimensional():
    th = theta_series(GramMatrix.of([[2]]), 10)
    assert list(th.counts) == [1, 2, 0, 0, 2, 0, 0, 0, 0, 2]


def test_theta_d4_roots():
    assert theta_series(d4(), 3).counts[1] == 24


def test_theta_e8_roots():
    assert theta_series(e8(), 3).counts[1] == 240


def test_node_budget():
    with pytest.raises(ResourceLimit):
        theta_series(e8(), 10, node_budget=100)


def test_python_fallback_matches_jit():
    rows = direct_sum(d4(), A2).rows()
    jit, _ = count_by_norm(rows, 30, 10**8)
    py, _ = count_by_norm(rows, 30, 10**8, jit=False)
    assert jit == py


CORPUS = [GramMatrix.of([[2]], "A1x2"), A2, d4(), GramMatrix.of([[2, 0], [0, 6]]),
          GramMatrix.of([[4, 1, 0], [1, 2, 1], [0, 1, 4]]), direct_sum(d4(), A2),
          direct_sum(d4(), d4()), e8_dual_basis()]


@pytest.mark.parametrize("A", CORPUS, ids=lambda A: A.name or str(A.v))
def test_enumeration_against_box_scan(A):
    assert representation_counts(A, 20) == box_scan(A.rows(), 20)


def test_same_lattice_two_bases():
    assert theta_series(e8(), 12).counts == theta_series(e8_dual_basis(), 12).counts


@st.composite
def gram_matrices(draw, max_dim=4):
    """Random even positive definite matrices, made definite by a heavy diagonal."""
    v = draw(st.integers(1, max_dim))
    rows = [[0] * v for _ in range(v)]
    for i in range(v):
        for j in range(i):
            rows[i][j] = rows[j][i] = draw(st.integers(-2, 2))
    for i in range(v):
        off = sum(abs(rows[i][j]) for j in range(v) if j != i)
        rows[i][i] = 2 * draw(st.integers(off // 2 + 1, off // 2 + 3))
    return GramMatrix.of(rows)


@settings(max_examples=40)
@given(gram_matrices())
def test_enumeration_random_forms(A):
    assert check_even_positive_definite(A)
    assert representation_counts(A, 20) == box_scan(A.rows(), 20)


@settings(max_examples=25)
@given(gram_matrices(3), gram_matrices(3))
def test_theta_direct_sum_multiplicative(A, B):
    P = 8
    lhs = theta_series(direct_sum(A, B), P).as_series()
    rhs = mul(theta_series(A, P).as_series(), theta_series(B, P).as_series())
    assert lhs == rhs


@settings(max_examples=25)
@given(gram_matrices())
def test_theta_symmetry(A):
    counts = theta_series(A, 8).counts
    assert counts[0] == 1
    assert all(c % 2 == 0 for c in counts[1:])


def test_min_represented_examples():
    assert min_represented(d4()) == 2
    assert min_represented(e8()) == 2
    assert min_represented(GramMatrix.of([[2, 0], [0, 6]])) == 2
    assert min_represented(GramMatrix.of([[4, 1], [1, 4]])) == 4


def test_min_represented_needs_radius_growth():
    A = GramMatrix.of([[12, 6], [6, 12]])
    assert min_represented(A) == 12


def test_membership_d4():
    rep = verify_membership(d4(), 31)
    assert rep.coordinates == (1,)
    counts = theta_series(d4(), 31).counts
    assert all(counts[n] == 24 * sigma_odd_scan(n) for n in range(1, 31))
    assert rep.hypothesis == "level 2"


def test_membership_e8_and_d4d4():
    e = verify_membership(e8(), 30)
    dd = verify_membership(direct_sum(d4(), d4()), 30)
    assert e.ok and dd.ok
    assert e.coordinates != dd.coordinates
    assert e.coordinates == (1, 240) and dd.coordinates == (1, 48)
    assert e.level == 1 and "level 1" in e.hypothesis


def test_membership_rejects_level_four():
    A = GramMatrix.of([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]])
    assert level(A) == 4
    with pytest.raises(ValueError):
        verify_membership(A, 10)


def test_membership_residual_catches_miscount(monkeypatch):
    import qminima.quadforms as qf

    real = qf.theta_series

    def miscounted(A, P, node_budget=qf.DEFAULT_NODE_BUDGET):
        th = real(A, P, node_budget)
        counts = list(th.counts)
        counts[5] += 2
        return qf.ThetaSeries(th.source, tuple(counts), th.precision)

    monkeypatch.setattr(qf, "theta_series", miscounted)
    rep = membership_report(d4(), 10)
    assert not rep.ok and rep.residual[4] == 2
    with pytest.raises(NotInSpan):
        verify_membership(d4(), 10)


def test_membership_dimension():
    with pytest.raises(UnsupportedDimension):
        verify_membership(A2, 10)


def test_minima_bounds():
    assert minima_bound(4) == 2 and minima_bound(8) == 4 and minima_bound(12) == 4
    assert minima_bound(16) == 6 and minima_bound(20) == 6
    for v in range(4, 200, 4):
        assert minima_bound(v) == 2 * WeightRecord(v // 2).r
    with pytest.raises(UnsupportedDimension):
        minima_bound(6)


@pytest.mark.parametrize("A,minimum,bound", [
    (d4(), 2, 2), (e8(), 2, 4), (direct_sum(d4(), d4(), d4()), 2, 4)])
def test_minima_theorem(A, minimum, bound):
    c = verify_minima_theorem(A)
    assert (c.minimum, c.bound, c.satisfied) == (minimum, bound, True)


def test_parse_text_roundtrip():
    text = format_gram_text(d4()) + "\n# second\n" + format_gram_text(A2)
    mats = parse_gram_text(text)
    assert [m.entries for m in mats] == [d4().entries, A2.entries]


@pytest.mark.parametrize("text,line", [
    ("2\n2 1\n", 1), ("2\n2 1\n1 x\n", 3), ("2\n2 1 0\n1 2\n", 2), ("abc\n", 1)])
def test_parse_errors_name_lines(text, line):
    with pytest.raises(GramParseError) as exc:
        parse_gram_text(text)
    assert exc.value.line == line


def test_parse_jsonl():
    text = "\n".join(json.dumps({"name": n, "gram": m.rows()}) for n, m in [("d4", d4()), ("a2", A2)])
    mats = parse_gram_jsonl(text)
    assert [m.name for m in mats] == ["d4", "a2"]
    with pytest.raises(GramParseError):
        parse_gram_jsonl('{"gram": 3}')
