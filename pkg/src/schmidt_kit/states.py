"""Bipartite pure states on C^m (x) C^n and their Schmidt decompositions.

Amplitude ``c[i, j]`` of ``e_i (x) e_j`` lives at flat index ``i*n + j``
everywhere in the package, so matricization is a plain reshape.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from schmidt_kit.errors import LengthMismatch, ZeroState
from schmidt_kit.exact import ExactMatrix, GaussianRational, as_exact, rank_exact

DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class PureState:
    """Floating-point amplitude vector with its bipartition ``(m, n)``."""

    m: int
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise ValueError("local dimensions must be positive")
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.m * self.n:
            raise LengthMismatch(f"{amps.size} amplitudes for C^{self.m} (x) C^{self.n}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def product(cls, u: Sequence[complex], w: Sequence[complex]) -> PureState:
        u, w = np.asarray(u, dtype=complex), np.asarray(w, dtype=complex)
        return cls(u.size, w.size, np.kron(u, w))

    @classmethod
    def basis(cls, m: int, n: int, i: int, j: int) -> PureState:
        amps = np.zeros(m * n, dtype=complex)
        amps[i * n + j] = 1.0
        return cls(m, n, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = 1e-10) -> bool:
        return abs(self.norm() ** 2 - 1.0) <= tol

    def normalize(self) -> PureState:
        return normalize(self)


@dataclass(frozen=True)
class ExactState:
    """Gaussian-rational amplitude vector; same index convention as :class:`PureState`."""

    m: int
    n: int
    amplitudes: tuple

    def __post_init__(self):
        amps = tuple(as_exact(a) for a in self.amplitudes)
        if len(amps) != self.m * self.n:
            raise LengthMismatch(f"{len(amps)} amplitudes for C^{self.m} (x) C^{self.n}")
        object.__setattr__(self, "amplitudes", amps)

    def to_pure(self) -> PureState:
        return PureState(self.m, self.n, np.array([complex(a) for a in self.amplitudes]))

    def norm2(self):
        """Exact squared norm."""
        return sum((a.norm2() for a in self.amplitudes), start=0)


@dataclass(frozen=True)
class SchmidtDecomposition:
    """``psi = sum_j coefficients[j] * left[:, j] (x) right[:, j]``."""

    coefficients: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray

    @property
    def rank(self) -> int:
        return int(self.coefficients.size)

    def reconstruct(self) -> np.ndarray:
        m, n = self.left_vectors.shape[0], self.right_vectors.shape[0]
        out = np.zeros(m * n, dtype=complex)
        for a, u, w in zip(self.coefficients, self.left_vectors.T, self.right_vectors.T):
            out += a * np.kron(u, w)
        return out


def normalize(v: PureState) -> PureState:
    nrm = v.norm()
    if nrm == 0.0:
        raise ZeroState("cannot normalize the zero vector")
    return PureState(v.m, v.n, v.amplitudes / nrm)


def matricize(v: PureState) -> np.ndarray:
    """m x n coefficient matrix ``[c_ij]``; an isometry onto Frobenius norm."""
    return v.amplitudes.reshape(v.m, v.n).copy()


def matricize_exact(v: ExactState) -> ExactMatrix:
    return ExactMatrix(v.m, v.n, v.amplitudes)


def unmatricize(M: np.ndarray) -> PureState:
    M = np.asarray(M, dtype=complex)
    return PureState(M.shape[0], M.shape[1], M.reshape(-1))


def schmidt_decompose(v: PureState, tol: float = DEFAULT_TOL) -> SchmidtDecomposition:
    """Schmidt decomposition from the SVD of the coefficient matrix.

    Singular values at or below ``tol`` times the largest are dropped. For
    degenerate coefficients the factor vectors are one valid choice among many.

    Raises:
        ZeroState: if the state norm is below ``tol``.
    """
    if v.norm() < tol:
        raise ZeroState(f"state norm {v.norm():.3g} is below tolerance {tol:g}")
    U, s, Vh = np.linalg.svd(matricize(v), full_matrices=False)
    keep = s > tol * s[0]
    # c_ij = sum_k s_k U[i,k] Vh[k,j], so the right factors are rows of Vh
    return SchmidtDecomposition(
        coefficients=s[keep],
        left_vectors=U[:, keep],
        right_vectors=Vh[keep, :].T,
    )


def schmidt_coefficients(v: PureState, tol: float = DEFAULT_TOL) -> np.ndarray:
    return schmidt_decompose(v, tol).coefficients


def schmidt_rank(v: PureState, tol: float = DEFAULT_TOL) -> int:
    if v.norm() < tol:
        raise ZeroState(f"state norm {v.norm():.3g} is below tolerance {tol:g}")
    s = np.linalg.svd(matricize(v), compute_uv=False)
    return int(np.count_nonzero(s > tol * s[0]))


def schmidt_rank_exact(v: ExactState | Sequence, m: int | None = None, n: int | None = None) -> int:
    """Tolerance-free Schmidt rank: exact rank of the coefficient matrix."""
    if not isinstance(v, ExactState):
        if m is None or n is None:
            raise TypeError("m and n are required for a bare amplitude sequence")
        v = ExactState(m, n, tuple(v))
    if not any(v.amplitudes):
        raise ZeroState("the zero vector has no Schmidt rank")
    return rank_exact(matricize_exact(v))


def exact_basis_vector(m: int, n: int, i: int, j: int) -> ExactState:
    amps = [GaussianRational(0)] * (m * n)
    amps[i * n + j] = GaussianRational(1)
    return ExactState(m, n, tuple(amps))
