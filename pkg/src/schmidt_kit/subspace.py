"""The (m-2)(n-2)-dimensional subspace of C^m (x) C^n with no vector of Schmidt rank <= 2.

Basis vectors are second differences along anti-diagonals of the coefficient
matrix::

    e_{i-1} (x) e_{j+1} - 2 e_i (x) e_j + e_{i+1} (x) e_{j-1},
    1 <= i <= m-2, 1 <= j <= n-2,

labelled by ``k = i + j``. On anti-diagonal ``k`` the vectors of that label are
the columns of ``A_t`` with ``t = |k| - 2``, and a certificate records every
order-t minor of each such ``A_t`` together with the ``det C_s`` chain and a
brute-force oracle sweep.
"""

from __future__ import annotations

import hashlib
import json
import secrets
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from schmidt_kit.errors import (
    CertificationFailed,
    DimensionTooSmall,
    LengthMismatch,
    OutOfRange,
)
from schmidt_kit.exact import (
    ExactMatrix,
    GaussianRational,
    all_minors,
    det_C,
    rank_exact,
)
from schmidt_kit.states import ExactState

VERDICT = "rank_ge_3"


def build_A(t: int) -> ExactMatrix:
    """(t+2) x t banded matrix whose column c holds 1, -2, 1 in rows c..c+2."""
    if t < 1:
        raise ValueError("t must be positive")
    entries = [0] * ((t + 2) * t)
    for c in range(t):
        entries[c * t + c] = 1
        entries[(c + 1) * t + c] = -2
        entries[(c + 2) * t + c] = 1
    return ExactMatrix(t + 2, t, tuple(entries))


def antidiag_length(m: int, n: int, k: int) -> int:
    """Number of cells ``(i, j)`` of an m x n matrix with ``i + j == k``."""
    lo, hi = min(m, n), max(m, n)
    if lo < 3:
        raise DimensionTooSmall(f"min(m, n) = {lo} < 3")
    N = m + n - 2
    if not 0 <= k <= N:
        raise OutOfRange(f"anti-diagonal {k} outside [0, {N}]")
    if k <= lo - 1:
        return k + 1
    if k <= hi - 1:
        return lo
    return m + n - (k + 1)


@dataclass(frozen=True)
class BasisElement:
    k: int
    i: int
    j: int
    vector: ExactState


@dataclass(frozen=True)
class SubspaceBasis:
    m: int
    n: int
    elements: tuple

    @property
    def N(self) -> int:
        return self.m + self.n - 2

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def vectors(self) -> list[ExactState]:
        return [e.vector for e in self.elements]

    def by_label(self) -> dict[int, list[BasisElement]]:
        out: dict[int, list[BasisElement]] = {}
        for e in self.elements:
            out.setdefault(e.k, []).append(e)
        return out

    def stacked_matrix(self) -> ExactMatrix:
        """One basis vector per row."""
        return ExactMatrix(
            self.dimension,
            self.m * self.n,
            tuple(a for e in self.elements for a in e.vector.amplitudes),
        )

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "N": self.N,
            "dimension": self.dimension,
            "elements": [
                {"k": e.k, "i": e.i, "j": e.j, "vector": [str(a) for a in e.vector.amplitudes]}
                for e in self.elements
            ],
        }


def second_difference_vector(m: int, n: int, i: int, j: int) -> ExactState:
    amps = [0] * (m * n)
    amps[(i - 1) * n + (j + 1)] = 1
    amps[i * n + j] = -2
    amps[(i + 1) * n + (j - 1)] = 1
    return ExactState(m, n, tuple(amps))


def build_basis(m: int, n: int) -> SubspaceBasis:
    """Basis of the subspace, ordered by label ``k`` then by ``i``.

    Raises:
        DimensionTooSmall: if ``min(m, n) < 3``.
    """
    if min(m, n) < 3:
        raise DimensionTooSmall(f"need min(m, n) >= 3, got m={m}, n={n}")
    elements = []
    for k in range(2, m + n - 3):
        for i in range(max(1, k - (n - 2)), min(m - 2, k - 1) + 1):
            j = k - i
            elements.append(BasisElement(k, i, j, second_difference_vector(m, n, i, j)))
    return SubspaceBasis(m, n, tuple(elements))


def label_orders(m: int, n: int) -> dict[int, list[int]]:
    """Map each minor order ``t = |k| - 2 >= 1`` to the labels ``k`` that need it."""
    out: dict[int, list[int]] = {}
    for k in range(2, m + n - 3):
        t = antidiag_length(m, n, k) - 2
        if t >= 1:
            out.setdefault(t, []).append(k)
    return dict(sorted(out.items()))


def member_of_S(v: ExactState | Sequence, basis: SubspaceBasis) -> bool:
    """Exact test that ``v`` lies in the span of ``basis``.

    Raises:
        LengthMismatch: if ``v`` does not have ``m*n`` amplitudes.
    """
    amps = v.amplitudes if isinstance(v, ExactState) else tuple(v)
    size = basis.m * basis.n
    if len(amps) != size:
        raise LengthMismatch(f"vector of length {len(amps)}, expected {size}")
    if isinstance(v, ExactState) and (v.m, v.n) != (basis.m, basis.n):
        raise LengthMismatch(f"state on C^{v.m} (x) C^{v.n}, basis on C^{basis.m} (x) C^{basis.n}")
    stacked = basis.stacked_matrix()
    extended = ExactMatrix(stacked.rows + 1, size, stacked.entries + tuple(amps))
    return rank_exact(extended) == rank_exact(stacked)


# -- certificates -------------------------------------------------------------

@dataclass(frozen=True)
class MinorReport:
    t: int
    labels: tuple
    minors: tuple  # ((row indices), GaussianRational), lexicographic in rows

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "labels": list(self.labels),
            "minors": [{"rows": list(r), "value": str(v)} for r, v in self.minors],
        }

    @classmethod
    def from_json(cls, d: dict) -> MinorReport:
        return cls(
            t=d["t"],
            labels=tuple(d.get("labels", ())),
            minors=tuple(
                (tuple(x["rows"]), GaussianRational.parse(x["value"])) for x in d["minors"]
            ),
        )


@dataclass(frozen=True)
class RankCertificate:
    m: int
    n: int
    minor_reports: tuple
    det_chain: tuple  # ((s, det C_s), ...)
    oracle: dict
    verdict: str = VERDICT
    dimension: int = field(default=0)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "dimension": self.dimension,
            "minor_reports": [r.to_json() for r in self.minor_reports],
            "det_chain": [{"s": s, "value": str(v)} for s, v in self.det_chain],
            "oracle": self.oracle,
            "verdict": self.verdict,
        }

    @classmethod
    def from_json(cls, d: dict) -> RankCertificate:
        return cls(
            m=d["m"],
            n=d["n"],
            minor_reports=tuple(MinorReport.from_json(r) for r in d["minor_reports"]),
            det_chain=tuple((x["s"], GaussianRational.parse(x["value"])) for x in d["det_chain"]),
            oracle=dict(d["oracle"]),
            verdict=d["verdict"],
            dimension=d.get("dimension", 0),
        )

    def digest(self) -> str:
        """sha256 of the canonical JSON form; identifies the certificate."""
        blob = json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def minor_report(t: int, labels: Sequence[int] = ()) -> MinorReport:
    A = build_A(t)
    cols = tuple(range(t))
    minors = tuple((rows, value) for rows, c, value in all_minors(A, t) if c == cols)
    return MinorReport(t, tuple(labels), minors)


def certificate_problems(cert: RankCertificate, recompute: bool = False) -> list[str]:
    """Every violated certificate invariant, in check order; empty when valid.

    With ``recompute`` the recorded minors and determinants are re-evaluated
    and compared as well.
    """
    problems = []
    if cert.verdict != VERDICT:
        problems.append(f"verdict is {cert.verdict!r}, expected {VERDICT!r}")
    if min(cert.m, cert.n) < 3:
        problems.append(f"dimensions m={cert.m}, n={cert.n} are below 3")
        return problems
    expected = (cert.m - 2) * (cert.n - 2)
    if cert.dimension != expected:
        problems.append(f"dimension {cert.dimension} != (m-2)(n-2) = {expected}")
    needed = label_orders(cert.m, cert.n)
    have = {r.t: r for r in cert.minor_reports}
    for t in needed:
        if t not in have:
            problems.append(f"missing minor report for t={t}")
    for r in cert.minor_reports:
        if len(r.minors) != comb(r.t + 2, 2):
            problems.append(f"t={r.t}: {len(r.minors)} minors recorded, expected {comb(r.t + 2, 2)}")
        if recompute:
            fresh = minor_report(r.t)
            if [v for _, v in fresh.minors] != [v for _, v in r.minors]:
                problems.append(f"t={r.t}: recorded minors differ from recomputation")
        for rows, value in r.minors:
            if not value:
                problems.append(f"t={r.t}: minor on rows {list(rows)} is zero")
    smax = max(needed, default=0)
    chain = dict(cert.det_chain)
    for s in range(1, smax + 1):
        if s not in chain:
            problems.append(f"det C_{s} missing from chain")
    for s, value in cert.det_chain:
        want = (-1) ** s * (s + 1)
        if value != want:
            problems.append(f"det C_{s} = {value}, expected {want}")
        elif recompute and det_C(s) != want:
            problems.append(f"det C_{s} recomputes to {det_C(s)}")
    min_rank = cert.oracle.get("min_rank_observed")
    if min_rank is None or min_rank < 3:
        problems.append(f"oracle min rank observed is {min_rank}, expected >= 3")
    return problems


def certify(
    m: int,
    n: int,
    oracle_mode: str = "random",
    trials: int = 1000,
    seed: int | None = None,
    grid: Sequence | None = None,
    budget: int | None = None,
) -> RankCertificate:
    """Build and self-check the rank certificate for the (m, n) subspace.

    Raises:
        DimensionTooSmall: if ``min(m, n) < 3``.
        CertificationFailed: on the first violated invariant.
    """
    from schmidt_kit import oracle

    basis = build_basis(m, n)
    if rank_exact(basis.stacked_matrix()) != basis.dimension:
        raise CertificationFailed("basis vectors are linearly dependent")
    orders = label_orders(m, n)
    reports = []
    for t, labels in orders.items():
        rep = minor_report(t, labels)
        for rows, value in rep.minors:
            if not value:
                raise CertificationFailed(f"order-{t} minor of A_{t} on rows {list(rows)} is zero")
        reports.append(rep)
    chain = []
    for s in range(1, max(orders, default=0) + 1):
        d = det_C(s)
        if d != (-1) ** s * (s + 1):
            raise CertificationFailed(f"det C_{s} = {d}, expected {(-1) ** s * (s + 1)}")
        chain.append((s, d))

    if oracle_mode == "exhaustive":
        report = oracle.exhaustive_sweep(basis, grid if grid is not None else range(-2, 3), budget=budget)
    elif oracle_mode == "random":
        if seed is None:
            seed = secrets.randbits(63)
        report = oracle.random_sweep(basis, trials, seed)
    else:
        raise ValueError(f"unknown oracle mode {oracle_mode!r}")
    if report.min_rank_observed < 3:
        raise CertificationFailed(
            f"oracle found rank {report.min_rank_observed} at {report.violating_combination}"
        )
    cert = RankCertificate(
        m=m,
        n=n,
        minor_reports=tuple(reports),
        det_chain=tuple(chain),
        oracle=report.to_json(),
        dimension=basis.dimension,
    )
    problems = certificate_problems(cert)
    if problems:
        raise CertificationFailed(problems[0])
    return cert
