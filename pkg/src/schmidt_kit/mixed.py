"""Density matrices and Schmidt-number bounds.

The lower bound is conditional: if the range of ``rho`` lies inside a subspace
certified to hold no vector of Schmidt rank <= 2, then every pure state in any
decomposition of ``rho`` lies in that range too, so ``SN(rho) >= 3``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from schmidt_kit.errors import DimensionMismatch, InvalidCertificate, NotAState, NotSupported
from schmidt_kit.exact import GaussianRational
from schmidt_kit.states import DEFAULT_TOL, PureState, schmidt_rank
from schmidt_kit.subspace import RankCertificate, SubspaceBasis, certificate_problems

RESIDUAL_TOL = 1e-8
LOWER_BOUND = 3


@dataclass(frozen=True)
class DensityMatrix:
    m: int
    n: int
    entries: np.ndarray

    def __post_init__(self):
        rho = np.array(self.entries, dtype=complex)
        d = self.m * self.n
        if rho.shape != (d, d):
            raise DimensionMismatch(f"matrix of shape {rho.shape} for C^{self.m} (x) C^{self.n}")
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)

    @property
    def dim(self) -> int:
        return self.m * self.n

    def problems(self, tol: float = DEFAULT_TOL) -> list[str]:
        rho = self.entries
        scale = max(1.0, float(np.abs(rho).max()))
        out = []
        herm_err = float(np.abs(rho - rho.conj().T).max())
        if herm_err > tol * scale:
            out.append(f"not Hermitian (max deviation {herm_err:.3g})")
            return out
        evals = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
        if evals[0] < -tol * scale:
            out.append(f"not positive semidefinite (eigenvalue {evals[0]:.3g})")
        tr = np.trace(rho).real
        if abs(tr - 1.0) > tol * self.dim:
            out.append(f"trace {tr:.12g} != 1")
        return out

    def validate(self, tol: float = DEFAULT_TOL) -> DensityMatrix:
        problems = self.problems(tol)
        if problems:
            raise NotAState("; ".join(problems))
        return self


@dataclass(frozen=True)
class SchmidtNumberWitness:
    lower_bound: int
    certificate_ref: str
    support_check: tuple  # residual norm of each support vector off the subspace
    m: int
    n: int
    support_dimension: int

    def to_json(self) -> dict:
        return {
            "lower_bound": self.lower_bound,
            "certificate_ref": self.certificate_ref,
            "support_check": list(self.support_check),
            "m": self.m,
            "n": self.n,
            "support_dimension": self.support_dimension,
        }


def pure_density(psi: PureState | np.ndarray, m: int | None = None, n: int | None = None) -> DensityMatrix:
    """``|psi><psi| / <psi|psi>``."""
    if isinstance(psi, PureState):
        m, n, v = psi.m, psi.n, psi.amplitudes
    else:
        v = np.asarray(psi, dtype=complex).reshape(-1)
    v = v / np.linalg.norm(v)
    return DensityMatrix(m, n, np.outer(v, v.conj()))


def mixture(vectors: Sequence[np.ndarray], weights: Sequence[float], m: int, n: int) -> DensityMatrix:
    """``sum_j p_j |v_j><v_j|`` with normalized ``v_j`` and weights rescaled to sum 1."""
    w = np.asarray(weights, dtype=float)
    if np.any(w < 0) or w.sum() <= 0:
        raise ValueError("weights must be nonnegative with a positive sum")
    w = w / w.sum()
    rho = np.zeros((m * n, m * n), dtype=complex)
    for p, v in zip(w, vectors):
        v = np.asarray(v, dtype=complex).reshape(-1)
        v = v / np.linalg.norm(v)
        rho += p * np.outer(v, v.conj())
    return DensityMatrix(m, n, rho)


def maximally_mixed(m: int, n: int) -> DensityMatrix:
    return DensityMatrix(m, n, np.eye(m * n) / (m * n))


def support_basis(rho: DensityMatrix, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis (columns) of the range of ``rho``.

    Keeps eigenvectors whose eigenvalue exceeds ``tol`` times the largest.

    Raises:
        NotAState: if ``rho`` is not a density matrix within ``tol``.
    """
    rho.validate(tol)
    evals, evecs = np.linalg.eigh((rho.entries + rho.entries.conj().T) / 2)
    keep = evals > tol * evals[-1]
    return evecs[:, keep]


def _orthonormal_span(basis: SubspaceBasis) -> np.ndarray:
    stacked = basis.stacked_matrix().to_complex()
    q, _ = np.linalg.qr(stacked.T)
    return q


def support_residuals(rho: DensityMatrix, basis: SubspaceBasis, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Norm of each support vector's component orthogonal to ``span(basis)``."""
    if (rho.m, rho.n) != (basis.m, basis.n):
        raise DimensionMismatch(
            f"state on C^{rho.m} (x) C^{rho.n}, subspace in C^{basis.m} (x) C^{basis.n}"
        )
    sup = support_basis(rho, tol)
    q = _orthonormal_span(basis)
    off = sup - q @ (q.conj().T @ sup)
    return np.linalg.norm(off, axis=0)


def supported_on(
    rho: DensityMatrix,
    basis: SubspaceBasis,
    tol: float = DEFAULT_TOL,
    residual_tol: float = RESIDUAL_TOL,
) -> bool:
    """True when the range of ``rho`` is contained in ``span(basis)``."""
    res = support_residuals(rho, basis, tol)
    return bool(np.all(res <= residual_tol))


def schmidt_number_lower_bound(
    rho: DensityMatrix,
    basis: SubspaceBasis,
    cert: RankCertificate,
    tol: float = DEFAULT_TOL,
    residual_tol: float = RESIDUAL_TOL,
) -> SchmidtNumberWitness:
    """Issue ``SN(rho) >= 3`` for a state supported on a certified subspace.

    Raises:
        InvalidCertificate: if ``cert`` is for other dimensions or fails its checks.
        NotSupported: if the range of ``rho`` leaves the subspace.
    """
    if (cert.m, cert.n) != (basis.m, basis.n):
        raise InvalidCertificate(
            f"certificate is for ({cert.m}, {cert.n}), subspace is ({basis.m}, {basis.n})"
        )
    problems = certificate_problems(cert)
    if problems:
        raise InvalidCertificate(problems[0])
    res = support_residuals(rho, basis, tol)
    worst = float(res.max()) if res.size else 0.0
    if worst > residual_tol:
        raise NotSupported(
            f"range of rho (dimension {res.size}) is not inside the {basis.dimension}-dimensional "
            f"subspace: largest residual {worst:.3g} > {residual_tol:g}"
        )
    return SchmidtNumberWitness(
        lower_bound=LOWER_BOUND,
        certificate_ref=cert.digest(),
        support_check=tuple(float(r) for r in res),
        m=basis.m,
        n=basis.n,
        support_dimension=int(res.size),
    )


def schmidt_number_upper_bound(rho: DensityMatrix, tol: float = DEFAULT_TOL) -> int:
    """Largest Schmidt rank among eigenvectors of ``rho``.

    The spectral decomposition is one admissible pure-state decomposition, so
    this bounds ``SN(rho)`` from above.
    """
    sup = support_basis(rho, tol)
    return max(schmidt_rank(PureState(rho.m, rho.n, v), tol) for v in sup.T)


def exact_gram_schmidt(vectors: Sequence[Sequence[GaussianRational]]) -> list[list[GaussianRational]]:
    """Orthogonalize exactly (no normalization); zero vectors are dropped."""
    out: list[list[GaussianRational]] = []
    norms: list[Fraction] = []
    for v in vectors:
        w = list(v)
        for u, nu in zip(out, norms):
            # <u, w> / <u, u> with the inner product conjugate-linear in u
            ip = sum((a.conjugate() * b for a, b in zip(u, w)), start=GaussianRational(0))
            if ip:
                coef = ip / nu
                w = [b - coef * a for a, b in zip(u, w)]
        nw = sum((a.norm2() for a in w), start=Fraction(0))
        if nw:
            out.append(w)
            norms.append(nw)
    return out


def make_uniform_state(basis: SubspaceBasis, weights: Sequence[float] | None = None) -> DensityMatrix:
    """Equal mixture over an orthonormalized copy of ``basis``.

    Orthogonalization is exact; only the final normalization is floating.
    ``weights`` replaces the equal mixture (same support, used by tests).
    """
    if basis.dimension == 0:
        raise ValueError("empty basis")
    ortho = exact_gram_schmidt([e.vector.amplitudes for e in basis.elements])
    vecs = [np.array([complex(a) for a in w]) for w in ortho]
    if weights is None:
        weights = [1.0] * len(vecs)
    return mixture(vecs, weights, basis.m, basis.n)
