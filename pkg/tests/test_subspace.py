from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest

from oracles import perm_det
from schmidt_kit.errors import CertificationFailed, DimensionTooSmall, LengthMismatch, OutOfRange
from schmidt_kit.exact import ExactMatrix, GaussianRational as G, rank_exact
from schmidt_kit.oracle import combination
from schmidt_kit.states import exact_basis_vector, matricize_exact, schmidt_rank_exact
from schmidt_kit.subspace import (
    RankCertificate,
    antidiag_length,
    build_A,
    build_basis,
    certificate_problems,
    certify,
    label_orders,
    member_of_S,
    minor_report,
)

DIMS = [(m, n) for m in range(3, 8) for n in range(3, 8)]


def test_build_A_examples():
    assert build_A(1).to_rows() == [[1], [-2], [1]]
    assert build_A(2).to_rows() == [[1, 0], [-2, 1], [1, -2], [0, 1]]
    A3 = build_A(3)
    assert A3.shape == (5, 3)
    assert [A3[r, 1] for r in range(5)] == [0, 1, -2, 1, 0]


def test_antidiag_length_examples():
    assert antidiag_length(3, 4, 0) == 1
    assert antidiag_length(3, 4, 2) == 3
    assert antidiag_length(3, 4, 5) == 1


@pytest.mark.parametrize("m, n", DIMS)
def test_antidiag_length_counts_cells(m, n):
    for k in range(m + n - 1):
        cells = sum(1 for i in range(m) for j in range(n) if i + j == k)
        assert antidiag_length(m, n, k) == cells
        assert antidiag_length(n, m, k) == cells


def test_antidiag_length_errors():
    with pytest.raises(OutOfRange):
        antidiag_length(3, 4, 6)
    with pytest.raises(OutOfRange):
        antidiag_length(3, 4, -1)
    with pytest.raises(DimensionTooSmall):
        antidiag_length(2, 4, 1)


def test_basis_3x3():
    basis = build_basis(3, 3)
    assert basis.dimension == 1
    e = basis.elements[0]
    assert (e.k, e.i, e.j) == (2, 1, 1)
    assert [int(a.re) for a in e.vector.amplitudes] == [0, 0, 1, 0, -2, 0, 1, 0, 0]


def test_basis_3x5():
    basis = build_basis(3, 5)
    assert basis.dimension == 3
    assert [e.k for e in basis.elements] == [2, 3, 4]


def test_basis_4x4_labels_match_enumeration():
    # brute-force enumeration of the index constraints 1 <= i <= m-2, 1 <= j <= n-2
    pairs = sorted(((i + j, i, j) for i in range(1, 3) for j in range(1, 3)))
    assert pairs == [(2, 1, 1), (3, 1, 2), (3, 2, 1), (4, 2, 2)]
    basis = build_basis(4, 4)
    assert [(e.k, e.i, e.j) for e in basis.elements] == pairs


def test_dimension_too_small():
    for m, n in [(2, 5), (5, 2), (1, 1)]:
        with pytest.raises(DimensionTooSmall):
            build_basis(m, n)


@pytest.mark.parametrize("m, n", DIMS)
def test_basis_invariants(m, n):
    basis = build_basis(m, n)
    assert basis.N == m + n - 2
    assert basis.dimension == (m - 2) * (n - 2)
    keys = [(e.k, e.i) for e in basis.elements]
    assert keys == sorted(keys)
    for e in basis.elements:
        assert 1 <= e.i <= m - 2 and 1 <= e.j <= n - 2
        assert e.i + e.j == e.k and 2 <= e.k <= basis.N - 2
        M = matricize_exact(e.vector)
        nonzero = {(r, c): M[r, c] for r in range(m) for c in range(n) if M[r, c]}
        assert nonzero == {(e.i - 1, e.j + 1): 1, (e.i, e.j): -2, (e.i + 1, e.j - 1): 1}
    assert rank_exact(basis.stacked_matrix()) == basis.dimension


@pytest.mark.parametrize("m, n", DIMS)
def test_label_block_sizes(m, n):
    basis = build_basis(m, n)
    by_k = basis.by_label()
    N = m + n - 2
    total = 0
    for k in range(N + 1):
        want = max(antidiag_length(m, n, k) - 2, 0)
        assert len(by_k.get(k, [])) == want
        total += want
    assert total == (m - 2) * (n - 2)


@pytest.mark.parametrize("m, n", [(3, 3), (4, 6), (6, 4), (7, 7)])
def test_basis_elements_have_rank_three(m, n):
    for e in build_basis(m, n).elements:
        assert schmidt_rank_exact(e.vector) == 3


def _antidiag_nonzeros(state, k):
    M = matricize_exact(state)
    return sum(1 for i in range(M.rows) for j in range(M.cols) if i + j == k and M[i, j])


@pytest.mark.parametrize("m, n", [(5, 5), (4, 7), (6, 6)])
def test_label_block_combinations_keep_three_nonzeros(m, n, rng):
    basis = build_basis(m, n)
    grid = [-2, -1, 0, 1, 2]
    for k, elems in basis.by_label().items():
        idx = [basis.elements.index(e) for e in elems]
        # exhaustive small grid over this block
        for coeffs in product(grid, repeat=len(idx)):
            if not any(coeffs):
                continue
            full = [0] * basis.dimension
            for p, c in zip(idx, coeffs):
                full[p] = c
            assert _antidiag_nonzeros(combination(basis, full), k) >= 3
        # random Gaussian-rational coefficients
        for _ in range(30):
            full = [0] * basis.dimension
            for p in idx:
                a, b, q = rng.integers(-6, 7), rng.integers(-6, 7), rng.integers(1, 5)
                full[p] = G(Fraction(int(a), int(q)), Fraction(int(b), int(q)))
            if any(full):
                assert _antidiag_nonzeros(combination(basis, full), k) >= 3


def test_label_orders():
    assert label_orders(3, 3) == {1: [2]}
    assert label_orders(4, 4) == {1: [2, 4], 2: [3]}


# -- certificates ---------------------------------------------------------------

def test_certify_3x3():
    cert = certify(3, 3, oracle_mode="exhaustive")
    assert len(cert.minor_reports) == 1
    rep = cert.minor_reports[0]
    assert rep.t == 1
    assert [v for _, v in rep.minors] == [1, -2, 1]
    assert cert.oracle["min_rank_observed"] == 3
    assert cert.verdict == "rank_ge_3"


def test_certify_4x4_minors_against_leibniz():
    cert = certify(4, 4, oracle_mode="random", trials=50, seed=1)
    rep = {r.t: r for r in cert.minor_reports}[2]
    A2 = [[(Fraction(x.re), Fraction(0)) for x in row] for row in build_A(2).to_rows()]
    expected = [perm_det([A2[r] for r in rows])[0] for rows in combinations(range(4), 2)]
    assert expected == [1, -2, 1, 3, -2, 1]
    assert [r for r, _ in rep.minors] == list(combinations(range(4), 2))
    assert [v for _, v in rep.minors] == expected
    assert all(v for _, v in rep.minors)


def test_certify_records_seed_and_chain():
    cert = certify(6, 7, trials=20, seed=99)
    assert cert.oracle["seed"] == 99
    assert [s for s, _ in cert.det_chain] == [1, 2, 3, 4]
    assert [r.t for r in cert.minor_reports] == [1, 2, 3, 4]
    assert certificate_problems(cert, recompute=True) == []


def test_certificate_json_round_trip():
    cert = certify(5, 4, trials=10, seed=5)
    again = RankCertificate.from_json(cert.to_json())
    assert again.to_json() == cert.to_json()
    assert again.digest() == cert.digest()


def _tamper(cert, **changes):
    d = cert.to_json()
    d.update(changes)
    return RankCertificate.from_json(d)


def test_certificate_problems_detect_tampering():
    cert = certify(4, 4, trials=10, seed=2)
    d = cert.to_json()
    d["minor_reports"][1]["minors"][3]["value"] = "0/1"
    assert any("is zero" in p for p in certificate_problems(RankCertificate.from_json(d)))

    d = cert.to_json()
    d["det_chain"][1]["value"] = "-3/1"
    assert any("det C_2" in p for p in certificate_problems(RankCertificate.from_json(d)))

    d = cert.to_json()
    d["oracle"]["min_rank_observed"] = 2
    assert any("oracle" in p for p in certificate_problems(RankCertificate.from_json(d)))

    d = cert.to_json()
    d["minor_reports"] = d["minor_reports"][:1]
    assert any("missing minor report" in p for p in certificate_problems(RankCertificate.from_json(d)))

    assert certificate_problems(_tamper(cert, verdict="rank_ge_2"))
    assert certificate_problems(_tamper(cert, dimension=5))


def test_certify_fails_loudly_on_bad_minor(monkeypatch):
    from schmidt_kit import subspace

    real = subspace.minor_report

    def broken(t, labels=()):
        rep = real(t, labels)
        return subspace.MinorReport(rep.t, rep.labels, rep.minors[:-1] + ((rep.minors[-1][0], G(0)),))

    monkeypatch.setattr(subspace, "minor_report", broken)
    with pytest.raises(CertificationFailed, match="is zero"):
        certify(3, 3, trials=5, seed=0)


def test_certify_rejects_unknown_mode():
    with pytest.raises(ValueError):
        certify(3, 3, oracle_mode="psychic")


def test_minor_report_counts():
    for t in range(1, 7):
        assert len(minor_report(t).minors) == (t + 2) * (t + 1) // 2


# -- membership ------------------------------------------------------------------

def test_member_examples():
    basis = build_basis(4, 5)
    for e in basis.elements:
        assert member_of_S(e.vector, basis)
    assert member_of_S([0] * 20, basis)
    assert not member_of_S(exact_basis_vector(4, 5, 0, 0), basis)


def test_member_combinations(rng):
    basis = build_basis(5, 5)
    for _ in range(10):
        coeffs = [G(int(a), int(b)) for a, b in rng.integers(-3, 4, size=(basis.dimension, 2))]
        v = combination(basis, coeffs)
        assert member_of_S(v, basis)
        bumped = list(v.amplitudes)
        bumped[0] = bumped[0] + G(Fraction(1, 7))
        assert not member_of_S(bumped, basis)


def test_member_length_mismatch():
    basis = build_basis(3, 3)
    with pytest.raises(LengthMismatch):
        member_of_S([0] * 8, basis)
    with pytest.raises(LengthMismatch):
        member_of_S(build_basis(3, 4).elements[0].vector, build_basis(4, 3))


def test_tall_and_wide_orders_agree():
    a, b = build_basis(6, 4), build_basis(4, 6)
    assert a.dimension == b.dimension == 8
    # transposing every coefficient matrix maps one basis onto the other
    ta = {tuple(matricize_exact(e.vector).transpose().entries) for e in a.elements}
    tb = {tuple(matricize_exact(e.vector).entries) for e in b.elements}
    assert ta == tb
