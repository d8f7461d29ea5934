"""Brute-force checks that combinations of the subspace basis have Schmidt rank >= 3.

Combinations are formed directly as Gaussian-integer coefficient matrices and
ranked by the exact kernel; nothing here goes through floating point.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Callable, Iterable, Sequence

import numpy as np

from schmidt_kit._backend import rank_gaussian
from schmidt_kit.errors import AllZeroCoefficients, BudgetExceeded, DegenerateGrid
from schmidt_kit.exact import GaussianRational, as_exact
from schmidt_kit.states import ExactState
from schmidt_kit.subspace import SubspaceBasis, build_A

DEFAULT_BUDGET = 10 ** 7
DEFAULT_COEFF_BOUND = 5


def default_budget() -> int:
    raw = os.environ.get("SCHMIDT_KIT_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


@dataclass
class SweepReport:
    mode: str
    coefficient_domain: str
    trials: int
    min_rank_observed: int
    seed: int | None = None
    violating_combination: list | None = None
    max_rank_observed: int | None = None
    m: int | None = None
    n: int | None = None
    dimension: int | None = None

    @property
    def passed(self) -> bool:
        return self.min_rank_observed >= 3

    def to_json(self) -> dict:
        return {
            "mode": self.mode,
            "coefficient_domain": self.coefficient_domain,
            "trials": self.trials,
            "min_rank_observed": self.min_rank_observed,
            "max_rank_observed": self.max_rank_observed,
            "violating_combination": self.violating_combination,
            "seed": self.seed,
            "m": self.m,
            "n": self.n,
            "dimension": self.dimension,
        }


def _stencil_matrix(basis: SubspaceBasis) -> np.ndarray:
    """Integer matrix with one basis vector per row."""
    out = np.zeros((basis.dimension, basis.m * basis.n), dtype=np.int64)
    for r, e in enumerate(basis.elements):
        for c, a in enumerate(e.vector.amplitudes):
            if a:
                out[r, c] = int(a.re)
    return out


def _to_gaussian_ints(coeffs: Sequence[GaussianRational]) -> tuple[list[int], list[int]]:
    scale = 1
    for c in coeffs:
        scale = lcm(scale, c.re.denominator, c.im.denominator)
    return [int(c.re * scale) for c in coeffs], [int(c.im * scale) for c in coeffs]


def combination(basis: SubspaceBasis, coeffs: Sequence) -> ExactState:
    """``sum_i coeffs[i] * basis[i]`` as an exact state."""
    coeffs = [as_exact(c) for c in coeffs]
    if len(coeffs) != basis.dimension:
        raise ValueError(f"{len(coeffs)} coefficients for a {basis.dimension}-dimensional basis")
    amps = [GaussianRational(0)] * (basis.m * basis.n)
    for c, e in zip(coeffs, basis.elements):
        if not c:
            continue
        for idx, a in enumerate(e.vector.amplitudes):
            if a:
                amps[idx] = amps[idx] + c * a
    return ExactState(basis.m, basis.n, tuple(amps))


def combination_rank(basis: SubspaceBasis, coeffs: Sequence) -> int:
    """Exact rank of the coefficient matrix of a basis combination."""
    stencil = _stencil_matrix(basis)
    cr, ci = _to_gaussian_ints([as_exact(c) for c in coeffs])
    return _rank_of(stencil, np.array(cr, dtype=object), np.array(ci, dtype=object), basis.m, basis.n)


def _rank_of(stencil, cr, ci, m, n) -> int:
    re = (cr @ stencil).tolist()
    im = (ci @ stencil).tolist()
    return rank_gaussian(re, im, m, n)


def _describe_grid(values: Sequence[GaussianRational]) -> str:
    return "grid{" + ",".join(str(v) for v in values) + "}"


def exhaustive_sweep(
    basis: SubspaceBasis,
    grid: Iterable,
    budget: int | None = None,
) -> SweepReport:
    """Rank every not-all-zero coefficient tuple drawn from ``grid``.

    Raises:
        DegenerateGrid: if no nonzero combination exists (e.g. grid ``{0}``).
        BudgetExceeded: if the combination count is above ``budget``.
    """
    values: list[GaussianRational] = []
    for g in grid:
        g = as_exact(g)
        if g not in values:
            values.append(g)
    d = basis.dimension
    has_zero = any(not v for v in values)
    required = len(values) ** d - (1 if has_zero else 0)
    if required <= 0:
        raise DegenerateGrid("grid yields no nonzero coefficient combination")
    budget = default_budget() if budget is None else budget
    if required > budget:
        raise BudgetExceeded(required, budget)

    # one common scale turns every grid value into a Gaussian integer
    gr, gi = _to_gaussian_ints(values)
    stencil = _stencil_matrix(basis)
    use_int64 = max(abs(x) for x in gr + gi) * 4 * max(d, 1) < 2 ** 62
    dtype = np.int64 if use_int64 else object
    stencil = stencil.astype(dtype)
    zero_idx = next((i for i, v in enumerate(values) if not v), None)

    min_rank = max_rank = None
    violation = None
    trials = 0
    for combo in product(range(len(values)), repeat=d):
        if zero_idx is not None and all(c == zero_idx for c in combo):
            continue
        cr = np.array([gr[c] for c in combo], dtype=dtype)
        ci = np.array([gi[c] for c in combo], dtype=dtype)
        r = _rank_of(stencil, cr, ci, basis.m, basis.n)
        trials += 1
        if min_rank is None or r < min_rank:
            min_rank = r
        if max_rank is None or r > max_rank:
            max_rank = r
        if r < 3 and violation is None:
            violation = [str(values[c]) for c in combo]
    return SweepReport(
        mode="exhaustive",
        coefficient_domain=_describe_grid(values),
        trials=trials,
        min_rank_observed=min_rank,
        max_rank_observed=max_rank,
        violating_combination=violation,
        seed=None,
        m=basis.m,
        n=basis.n,
        dimension=d,
    )


Sampler = Callable[[np.random.Generator, int], Sequence]


def uniform_integer_sampler(bound: int = DEFAULT_COEFF_BOUND) -> Sampler:
    """Real and imaginary parts uniform on ``[-bound, bound]``."""

    def sample(rng: np.random.Generator, dim: int) -> np.ndarray:
        return rng.integers(-bound, bound + 1, size=(dim, 2))

    sample.description = f"gaussian_integers[-{bound},{bound}]"
    return sample


def random_sweep(
    basis: SubspaceBasis,
    trials: int,
    seed: int,
    coefficient_sampler: Sampler | None = None,
) -> SweepReport:
    """Rank ``trials`` random not-all-zero combinations; deterministic in ``seed``.

    ``coefficient_sampler(rng, dim)`` returns either a ``(dim, 2)`` integer
    array of (real, imag) parts or a sequence of exact scalars. All-zero draws
    are rejected and redrawn.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    sampler = coefficient_sampler or uniform_integer_sampler()
    rng = np.random.default_rng(seed)
    d = basis.dimension
    draws_re, draws_im, exact_draws = [], [], []
    for _ in range(trials):
        while True:
            draw = sampler(rng, d)
            if isinstance(draw, np.ndarray) and draw.ndim == 2:
                cr = [int(x) for x in draw[:, 0]]
                ci = [int(x) for x in draw[:, 1]]
                coeffs = None
            else:
                coeffs = [as_exact(x) for x in draw]
                cr, ci = _to_gaussian_ints(coeffs)
            if any(cr) or any(ci):
                break
        draws_re.append(cr)
        draws_im.append(ci)
        exact_draws.append(coeffs)

    # each matrix entry sums at most three stencil weights of magnitude <= 2
    biggest = max(max(map(abs, r), default=0) for r in draws_re + draws_im)
    dtype = np.int64 if biggest * 6 < 2 ** 62 else object
    stencil = _stencil_matrix(basis).astype(dtype)
    mats_re = (np.array(draws_re, dtype=dtype) @ stencil).tolist()
    mats_im = (np.array(draws_im, dtype=dtype) @ stencil).tolist()

    min_rank = max_rank = None
    violation = None
    for t in range(trials):
        r = rank_gaussian(mats_re[t], mats_im[t], basis.m, basis.n)
        if min_rank is None or r < min_rank:
            min_rank = r
        if max_rank is None or r > max_rank:
            max_rank = r
        if r < 3 and violation is None:
            coeffs = exact_draws[t]
            if coeffs is None:
                coeffs = [GaussianRational(a, b) for a, b in zip(draws_re[t], draws_im[t])]
            violation = [str(c) for c in coeffs]
    return SweepReport(
        mode="random",
        coefficient_domain=getattr(sampler, "description", "custom"),
        trials=trials,
        min_rank_observed=min_rank,
        max_rank_observed=max_rank,
        violating_combination=violation,
        seed=seed,
        m=basis.m,
        n=basis.n,
        dimension=d,
    )


def min_nonzeros_on_antidiagonal(coefficients: Sequence) -> int:
    """Count nonzero entries of ``A_t @ c`` for ``t = len(coefficients)``.

    This is the anti-diagonal of a combination of basis vectors sharing one
    label; the count is always at least 3.
    """
    c = [as_exact(x) for x in coefficients]
    if not c:
        raise ValueError("need at least one coefficient")
    if not any(c):
        raise AllZeroCoefficients("all coefficients are zero")
    A = build_A(len(c))
    total = 0
    for r in range(A.rows):
        acc = GaussianRational(0)
        for j in range(A.cols):
            a = A[r, j]
            if a:
                acc = acc + a * c[j]
        total += bool(acc)
    return total


def parse_grid(text: str) -> list[GaussianRational]:
    """``"-2..2"`` for an integer range, else a comma list of exact scalars."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return [GaussianRational(v) for v in range(int(lo), int(hi) + 1)]
    return [GaussianRational.parse(x) for x in text.split(",") if x.strip()]


def fraction_grid(values: Iterable[Fraction | int]) -> list[GaussianRational]:
    return [GaussianRational(Fraction(v)) for v in values]
