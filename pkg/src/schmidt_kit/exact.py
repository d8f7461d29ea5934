"""Exact Gaussian-rational scalars and matrices.

Rank and determinant reduce to the Gaussian-integer Bareiss kernel after
clearing denominators, which scales every minor by a nonzero constant and so
leaves rank untouched.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from numbers import Rational
from typing import Iterable, Iterator, Sequence

from schmidt_kit._backend import det_gaussian, rank_gaussian
from schmidt_kit.errors import BadIndexSet, NonSquare

__all__ = [
    "GaussianRational",
    "ExactScalar",
    "ExactMatrix",
    "as_exact",
    "rank_exact",
    "det_exact",
    "minor",
    "all_minors",
    "build_C",
    "det_C",
    "exact_vector",
]

_NUM = r"\d+(?:/\d+)?"
_IMAG_ONLY = _re.compile(rf"^([+-]?)\s*({_NUM})?\s*\*?\s*i$")
_FULL = _re.compile(rf"^([+-]?\s*{_NUM})(?:\s*([+-])\s*({_NUM})?\s*\*?\s*i)?$")


class GaussianRational:
    """Complex number ``re + im*i`` with exact rational parts.

    Instances are immutable and hashable. ``Fraction`` keeps both parts in
    lowest terms with a positive denominator.
    """

    __slots__ = ("_re", "_im")

    def __init__(self, re: int | Fraction | str = 0, im: int | Fraction | str = 0):
        self._re = Fraction(re)
        self._im = Fraction(im)

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @classmethod
    def parse(cls, text: str) -> GaussianRational:
        """Parse ``"p/q"``, ``"p/q+r/s i"`` and the obvious shorthands (``"3"``, ``"-i"``)."""
        s = text.strip()
        m = _IMAG_ONLY.match(s)
        if m:
            mag = Fraction(m.group(2)) if m.group(2) else Fraction(1)
            return cls(0, -mag if m.group(1) == "-" else mag)
        m = _FULL.match(s)
        if not m:
            raise ValueError(f"not a Gaussian rational: {text!r}")
        re_part = Fraction(m.group(1).replace(" ", ""))
        if m.group(2) is None:
            return cls(re_part)
        mag = Fraction(m.group(3)) if m.group(3) else Fraction(1)
        return cls(re_part, -mag if m.group(2) == "-" else mag)

    def __str__(self) -> str:
        out = f"{self._re.numerator}/{self._re.denominator}"
        if self._im:
            sign = "-" if self._im < 0 else "+"
            out += f"{sign}{abs(self._im.numerator)}/{self._im.denominator} i"
        return out

    def __repr__(self) -> str:
        return f"GaussianRational({str(self)!r})"

    def __bool__(self) -> bool:
        return bool(self._re) or bool(self._im)

    def is_zero(self) -> bool:
        return not self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self._re == other._re and self._im == other._im
        if isinstance(other, Rational):
            return self._im == 0 and self._re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self._im:
            return hash(self._re)
        return hash((self._re, self._im))

    def __complex__(self) -> complex:
        return complex(float(self._re), float(self._im))

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self._re, -self._im)

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self._re * o._re - self._im * o._im,
            self._re * o._im + self._im * o._re,
        )

    __rmul__ = __mul__

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self._re, -self._im)

    def norm2(self) -> Fraction:
        """Squared modulus, exact."""
        return self._re * self._re + self._im * self._im

    def inverse(self) -> GaussianRational:
        n = self.norm2()
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self._re / n, -self._im / n)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()


ExactScalar = GaussianRational


def _coerce(x) -> GaussianRational | None:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Rational)):
        return GaussianRational(Fraction(x))
    return None


def as_exact(x) -> GaussianRational:
    """Convert ints, Fractions and strings to :class:`GaussianRational`.

    Floats and complex values are rejected: they have no canonical exact value.
    """
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, str):
        return GaussianRational.parse(x)
    if isinstance(x, bool) or not isinstance(x, (int, Rational)):
        raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")
    return GaussianRational(Fraction(x))


@dataclass(frozen=True)
class ExactMatrix:
    """Dense row-major matrix of Gaussian rationals."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        entries = tuple(as_exact(x) for x in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(entries)} entries for a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> ExactMatrix:
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), width, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> ExactMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> ExactMatrix:
        return cls.from_rows([[GaussianRational.parse(x) for x in row] for row in data])

    def __getitem__(self, idx: tuple[int, int]) -> GaussianRational:
        i, j = idx
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(idx)
        return self.entries[i * self.cols + j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def to_rows(self) -> list[list[GaussianRational]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.to_rows()]

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> ExactMatrix:
        return ExactMatrix(
            len(row_idx),
            len(col_idx),
            tuple(self.entries[i * self.cols + j] for i in row_idx for j in col_idx),
        )

    def to_complex(self):
        import numpy as np

        return np.array([complex(x) for x in self.entries]).reshape(self.rows, self.cols)

    def gaussian_integer_form(self) -> tuple[list[int], list[int], int]:
        """Return ``(re, im, scale)`` with ``scale * M == re + i*im`` entrywise."""
        scale = 1
        for x in self.entries:
            scale = lcm(scale, x.re.denominator, x.im.denominator)
        re = [int(x.re * scale) for x in self.entries]
        im = [int(x.im * scale) for x in self.entries]
        return re, im, scale


def rank_exact(M: ExactMatrix) -> int:
    """Exact rank of ``M`` over the complex field (fraction-free elimination)."""
    re, im, _ = M.gaussian_integer_form()
    return rank_gaussian(re, im, M.rows, M.cols)


def det_exact(M: ExactMatrix) -> GaussianRational:
    if M.rows != M.cols:
        raise NonSquare(f"determinant of a {M.rows}x{M.cols} matrix")
    re, im, scale = M.gaussian_integer_form()
    dr, di = det_gaussian(re, im, M.rows)
    denom = scale ** M.rows
    return GaussianRational(Fraction(dr, denom), Fraction(di, denom))


def _check_index_set(idx: Sequence[int], bound: int, what: str) -> None:
    if not idx:
        raise BadIndexSet(f"empty {what} index set")
    for a, b in zip(idx, idx[1:]):
        if b <= a:
            raise BadIndexSet(f"{what} indices must be strictly increasing: {list(idx)}")
    if idx[0] < 0 or idx[-1] >= bound:
        raise BadIndexSet(f"{what} index out of range [0, {bound}): {list(idx)}")


def minor(M: ExactMatrix, row_idx: Sequence[int], col_idx: Sequence[int]) -> GaussianRational:
    """Determinant of the submatrix picked out by sorted ``row_idx`` x ``col_idx``."""
    row_idx, col_idx = list(row_idx), list(col_idx)
    if len(row_idx) != len(col_idx):
        raise BadIndexSet(f"{len(row_idx)} rows but {len(col_idx)} columns")
    _check_index_set(row_idx, M.rows, "row")
    _check_index_set(col_idx, M.cols, "column")
    return det_exact(M.submatrix(row_idx, col_idx))


def all_minors(M: ExactMatrix, order: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], GaussianRational]]:
    """Yield every order-``order`` minor as ``(rows, cols, value)``.

    Row subsets vary slowest, both in lexicographic order.
    """
    if not 1 <= order <= min(M.rows, M.cols):
        raise BadIndexSet(f"no minors of order {order} in a {M.rows}x{M.cols} matrix")
    col_sets = list(combinations(range(M.cols), order))
    for rows in combinations(range(M.rows), order):
        for cols in col_sets:
            yield rows, cols, det_exact(M.submatrix(rows, cols))


def build_C(s: int) -> ExactMatrix:
    """The s x s tridiagonal matrix with -2 on the diagonal and 1 beside it."""
    if s < 1:
        raise ValueError("s must be positive")
    entries = []
    for i in range(s):
        for j in range(s):
            entries.append(-2 if i == j else 1 if abs(i - j) == 1 else 0)
    return ExactMatrix(s, s, tuple(entries))


def det_C(s: int) -> GaussianRational:
    return det_exact(build_C(s))


def exact_vector(values: Iterable) -> tuple[GaussianRational, ...]:
    return tuple(as_exact(v) for v in values)
