"""Banded matrices, trivial-submatrix classification, and minor enumeration.

A banded matrix carries a *declared* band (p subdiagonals, q superdiagonals)
which may be wider than the zero pattern suggests; triviality of a submatrix
is judged against the declared band, not the entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    DenseMatrix,
    IndexSeq,
    RationalLike,
    _labels,
    minor,
    rat,
    seq_leq,
    translate,
)
from .errors import ContractViolationError


@dataclass(frozen=True)
class BandedMatrix:
    """Square matrix that is zero outside p subdiagonals and q superdiagonals."""

    n: int
    p: int
    q: int
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(rat(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if self.n < 1:
            raise ContractViolationError("size must be positive")
        if len(rows) != self.n or any(len(r) != self.n for r in rows):
            raise ContractViolationError(f"expected a {self.n}x{self.n} grid")
        if not (0 <= self.p <= self.n - 1 and 0 <= self.q <= self.n - 1):
            raise ContractViolationError(
                f"band ({self.p}, {self.q}) out of range for n={self.n}"
            )
        for i in range(self.n):
            for j in range(self.n):
                if rows[i][j] != 0 and not self.in_band(i, j):
                    raise ContractViolationError(
                        f"nonzero entry at ({i + 1}, {j + 1}) outside declared "
                        f"band ({self.p}, {self.q})"
                    )

    def in_band(self, i: int, j: int) -> bool:
        """0-based: entry (i, j) lies inside the declared band."""
        return -self.p <= j - i <= self.q

    def entry(self, i: int, j: int) -> Fraction:
        """0-based access; out-of-band reads are exact zeros."""
        return self.rows[i][j]

    def to_dense(self) -> DenseMatrix:
        return DenseMatrix(self.rows)

    @staticmethod
    def from_dense(m: DenseMatrix, p: int | None = None, q: int | None = None) -> "BandedMatrix":
        """Wrap a dense square matrix; the declared band defaults to the inferred one."""
        inferred_p, inferred_q = band_profile(m)
        p = inferred_p if p is None else p
        q = inferred_q if q is None else q
        if p < inferred_p or q < inferred_q:
            raise ContractViolationError(
                f"declared band ({p}, {q}) does not dominate inferred "
                f"({inferred_p}, {inferred_q})"
            )
        return BandedMatrix(m.n_rows, p, q, m.rows)

    @staticmethod
    def from_rows(
        rows: Sequence[Sequence[RationalLike]], p: int | None = None, q: int | None = None
    ) -> "BandedMatrix":
        return BandedMatrix.from_dense(DenseMatrix.from_rows(rows), p, q)


def band_profile(m: DenseMatrix) -> tuple[int, int]:
    """Minimal (p, q) such that every entry outside the band is zero."""
    if not m.is_square:
        raise ContractViolationError("band profile requires a square matrix")
    p = q = 0
    for i in range(m.n_rows):
        for j in range(m.n_cols):
            if m.rows[i][j] != 0:
                p = max(p, i - j)
                q = max(q, j - i)
    return p, q


def is_trivial_submatrix(
    t: BandedMatrix, rows: IndexSeq | Sequence[int], cols: IndexSeq | Sequence[int]
) -> bool:
    """True when some diagonal position of the selection leaves the band."""
    row_labels, col_labels = _labels(rows), _labels(cols)
    if len(row_labels) != len(col_labels):
        raise ContractViolationError("row/column selections differ in length")
    for i, j in zip(row_labels, col_labels):
        if not (1 <= i <= t.n and 1 <= j <= t.n):
            raise ContractViolationError(f"label pair ({i}, {j}) out of range")
        if not t.in_band(i - 1, j - 1):
            return True
    return False


def nontrivial_test_by_order(
    t: BandedMatrix, rows: IndexSeq | Sequence[int], cols: IndexSeq | Sequence[int]
) -> bool:
    """Order-theoretic nontriviality: cols <= shift_q(rows) and rows <= shift_p(cols)."""
    row_labels, col_labels = _labels(rows), _labels(cols)
    return seq_leq(col_labels, translate(row_labels, t.q, t.n)) and seq_leq(
        row_labels, translate(col_labels, t.p, t.n)
    )


def enumerate_nontrivial_contiguous(t: BandedMatrix) -> list[tuple[int, int, int]]:
    """All (i, j, r) with the r x r contiguous selection at (i, j) nontrivial.

    Ordered lexicographically in (r, i, j); the condition is i - p <= j <= i + q
    together with the size fitting inside the matrix.
    """
    triples = []
    for r in range(1, t.n + 1):
        for i in range(1, t.n - r + 2):
            j_lo = max(1, i - t.p)
            j_hi = min(t.n - r + 1, i + t.q)
            for j in range(j_lo, j_hi + 1):
                triples.append((i, j, r))
    return triples


def enumerate_nontrivial_initial(
    t: BandedMatrix,
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All nontrivial initial (row, column) selections as 1-based label pairs.

    Row-initial selections are (1..r; j..j+r-1) with j <= q + 1; column-initial
    are (i..i+r-1; 1..r) with i <= p + 1.  Ordered by (r, side, start), rows
    side first.
    """
    pairs = []
    for r in range(1, t.n + 1):
        head = tuple(range(1, r + 1))
        for j in range(1, min(t.q + 1, t.n - r + 1) + 1):
            pairs.append((head, tuple(range(j, j + r))))
        for i in range(1, min(t.p + 1, t.n - r + 1) + 1):
            pairs.append((tuple(range(i, i + r)), head))
    return pairs


@dataclass(frozen=True)
class DeltaMinor:
    index: int
    value: Fraction
    trivial: bool


@dataclass(frozen=True)
class DeltaMinorReport:
    """Corner minors: ``upper[i-1]`` is the top-right i x i corner determinant,
    ``lower[i-1]`` the bottom-left one, each tagged trivial by the band ranges."""

    upper: tuple[DeltaMinor, ...]
    lower: tuple[DeltaMinor, ...]

    @property
    def nontrivial_count(self) -> int:
        return sum(1 for d in self.upper + self.lower if not d.trivial)

    def nontrivial_zero_witness(self) -> tuple[str, int, Fraction] | None:
        """First nontrivial corner minor that vanishes, if any."""
        for side, minors in (("upper", self.upper), ("lower", self.lower)):
            for d in minors:
                if not d.trivial and d.value == 0:
                    return side, d.index, d.value
        return None


def delta_minors(t: BandedMatrix) -> DeltaMinorReport:
    """Evaluate every corner minor and tag it trivial/nontrivial.

    The top-right corner of size i is trivial for i <= n - q - 1 and the
    bottom-left one for i <= n - p - 1, leaving (q + 1) + (p + 1) nontrivial
    values.
    """
    n = t.n
    dense = t.to_dense()
    upper = []
    lower = []
    for i in range(1, n + 1):
        head = tuple(range(1, i + 1))
        tail = tuple(range(n - i + 1, n + 1))
        upper.append(
            DeltaMinor(i, minor(dense, head, tail), trivial=i <= n - t.q - 1)
        )
        lower.append(
            DeltaMinor(i, minor(dense, tail, head), trivial=i <= n - t.p - 1)
        )
    return DeltaMinorReport(tuple(upper), tuple(lower))


def right_shadow_contains(alpha: int, beta: int, r: int, row: int, col: int) -> bool:
    """Membership in the right shadow of the contiguous block at (alpha, beta)."""
    return row <= alpha + r - 1 and col >= beta


def left_shadow_contains(alpha: int, beta: int, r: int, row: int, col: int) -> bool:
    return row >= alpha and col <= beta + r - 1
