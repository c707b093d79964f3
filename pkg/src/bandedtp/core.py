"""Exact scalars, index sequences, dense matrices, and minor computation.

The scalar field everywhere is :class:`fractions.Fraction` (arbitrary
precision, canonical form maintained by the stdlib).  Row/column labels are
1-based at the API surface, matching how minors are usually written; entry
grids are 0-based internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

from .errors import ContractViolationError

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def rat(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions, or "num/den" strings to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise ContractViolationError(f"not an exact rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Canonical string form: "num" for integers, "num/den" otherwise."""
    return str(value)


# ---------------------------------------------------------------------------
# Index sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndexSeq:
    """Strictly increasing 1-based labels inside {1..n}."""

    labels: tuple[int, ...]
    n: int

    def __post_init__(self):
        labels = tuple(int(v) for v in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise ContractViolationError("index sequence must be nonempty")
        if self.n < 1:
            raise ContractViolationError("ambient size must be positive")
        prev = 0
        for v in labels:
            if v <= prev:
                raise ContractViolationError(
                    f"labels must be strictly increasing, got {labels}"
                )
            prev = v
        if labels[0] < 1 or labels[-1] > self.n:
            raise ContractViolationError(
                f"labels {labels} out of range 1..{self.n}"
            )

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)


def seq(labels: Iterable[int], n: int) -> IndexSeq:
    return IndexSeq(tuple(labels), n)


def _labels(s: IndexSeq | Sequence[int]) -> tuple[int, ...]:
    if isinstance(s, IndexSeq):
        return s.labels
    return tuple(int(v) for v in s)


def dispersion(s: IndexSeq | Sequence[int]) -> int:
    """i_r - i_1 - (r - 1); zero exactly for contiguous sequences."""
    labels = _labels(s)
    return labels[-1] - labels[0] - (len(labels) - 1)


def translate(s: IndexSeq | Sequence[int], shift: int, n: int | None = None) -> tuple[int, ...]:
    """Shift every label by ``shift``, clamping the overflowing tail to n.

    The result may contain repeated trailing n's, so it is returned as a
    plain tuple; only :func:`seq_leq` consumes it.
    """
    if shift < 0:
        raise ContractViolationError("shift must be nonnegative")
    if n is None:
        if not isinstance(s, IndexSeq):
            raise ContractViolationError("ambient size required for raw label sequences")
        n = s.n
    labels = _labels(s)
    return tuple(v + shift if v + shift <= n else n for v in labels)


def seq_leq(a: IndexSeq | Sequence[int], b: IndexSeq | Sequence[int]) -> bool:
    """Componentwise partial order on equal-length label sequences."""
    la, lb = _labels(a), _labels(b)
    if len(la) != len(lb):
        raise ContractViolationError(
            f"length mismatch in order comparison: {len(la)} vs {len(lb)}"
        )
    return all(x <= y for x, y in zip(la, lb))


# ---------------------------------------------------------------------------
# Dense matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DenseMatrix:
    """Immutable rectangular grid of exact rationals (0-based entries)."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(rat(v) for v in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        if not rows or not rows[0]:
            raise ContractViolationError("matrix must have positive dimensions")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise ContractViolationError("matrix rows must have equal length")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0])

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def entry(self, i: int, j: int) -> Fraction:
        """0-based entry access."""
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise ContractViolationError(f"entry ({i}, {j}) out of bounds")
        return self.rows[i][j]

    @staticmethod
    def identity(n: int) -> "DenseMatrix":
        return DenseMatrix(
            tuple(
                tuple(Fraction(1 if i == j else 0) for j in range(n))
                for i in range(n)
            )
        )

    @staticmethod
    def from_rows(rows: Sequence[Sequence[RationalLike]]) -> "DenseMatrix":
        return DenseMatrix(tuple(tuple(rat(v) for v in row) for row in rows))

    def transpose(self) -> "DenseMatrix":
        return DenseMatrix(tuple(zip(*self.rows)))

    def mul(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.n_cols != other.n_rows:
            raise ContractViolationError(
                f"cannot multiply {self.n_rows}x{self.n_cols} by "
                f"{other.n_rows}x{other.n_cols}"
            )
        cols = other.transpose().rows
        return DenseMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.rows
            )
        )

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        return self.mul(other)

    def power(self, m: int) -> "DenseMatrix":
        if not self.is_square or m < 0:
            raise ContractViolationError("power requires a square matrix and m >= 0")
        result = DenseMatrix.identity(self.n_rows)
        for _ in range(m):
            result = result.mul(self)
        return result

    def inverse(self) -> "DenseMatrix":
        """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
        if not self.is_square:
            raise ContractViolationError("inverse requires a square matrix")
        n = self.n_rows
        work = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(self.rows)]
        for k in range(n):
            pivot_row = next((r for r in range(k, n) if work[r][k] != 0), None)
            if pivot_row is None:
                raise ContractViolationError("matrix is singular")
            if pivot_row != k:
                work[k], work[pivot_row] = work[pivot_row], work[k]
            inv_pivot = 1 / work[k][k]
            work[k] = [v * inv_pivot for v in work[k]]
            for r in range(n):
                if r != k and work[r][k] != 0:
                    factor = work[r][k]
                    work[r] = [v - factor * w for v, w in zip(work[r], work[k])]
        return DenseMatrix(tuple(tuple(row[n:]) for row in work))


MatrixLike = DenseMatrix  # BandedMatrix coerces via .to_dense()


def _as_dense(m) -> DenseMatrix:
    if isinstance(m, DenseMatrix):
        return m
    to_dense = getattr(m, "to_dense", None)
    if to_dense is not None:
        return to_dense()
    raise ContractViolationError(f"not a matrix: {m!r}")


def submatrix(m, rows: IndexSeq | Sequence[int], cols: IndexSeq | Sequence[int]) -> DenseMatrix:
    """Entries at the row/column label intersections, order preserved."""
    dense = _as_dense(m)
    row_labels, col_labels = _labels(rows), _labels(cols)
    _check_labels(dense, row_labels, col_labels, require_equal_length=False)
    return DenseMatrix(
        tuple(tuple(dense.rows[i - 1][j - 1] for j in col_labels) for i in row_labels)
    )


def _check_labels(dense: DenseMatrix, row_labels, col_labels, require_equal_length=True):
    if require_equal_length and len(row_labels) != len(col_labels):
        raise ContractViolationError(
            f"row/column selections differ in length: {len(row_labels)} vs {len(col_labels)}"
        )
    for v in row_labels:
        if not 1 <= v <= dense.n_rows:
            raise ContractViolationError(f"row label {v} out of range 1..{dense.n_rows}")
    for v in col_labels:
        if not 1 <= v <= dense.n_cols:
            raise ContractViolationError(f"column label {v} out of range 1..{dense.n_cols}")


def _int_rows_with_scales(
    grid: Sequence[Sequence[Fraction]],
) -> tuple[list[list[int]], list[int]]:
    """Clear each row to integers by its positive denominator lcm."""
    int_rows: list[list[int]] = []
    scales: list[int] = []
    for row in grid:
        scale = lcm(*(v.denominator for v in row)) if row else 1
        int_rows.append([int(v * scale) for v in row])
        scales.append(scale)
    return int_rows, scales


def _bareiss_int_det(a: list[list[int]]) -> int:
    """Fraction-free Bareiss elimination with row pivoting; exact integer det."""
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            row_i, row_k = a[i], a[k]
            head = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - head * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _expansion_det(grid: list[list[Fraction]]) -> Fraction:
    """Laplace expansion along the first row; exponential, fallback/oracle only."""
    n = len(grid)
    if n == 1:
        return grid[0][0]
    total = Fraction(0)
    rest = grid[1:]
    for j, head in enumerate(grid[0]):
        if head == 0:
            continue
        sub = [row[:j] + row[j + 1:] for row in rest]
        term = head * _expansion_det(sub)
        total += term if j % 2 == 0 else -term
    return total


def minor(m, rows: IndexSeq | Sequence[int], cols: IndexSeq | Sequence[int]) -> Fraction:
    """Exact determinant of the submatrix selected by 1-based labels.

    Denominators are cleared per row and the determinant is computed by
    fraction-free Bareiss elimination over the integers; Laplace expansion
    remains available as :func:`minor_expansion` and is used as the fallback
    should pivoting ever be exhausted.
    """
    dense = _as_dense(m)
    row_labels, col_labels = _labels(rows), _labels(cols)
    _check_labels(dense, row_labels, col_labels)
    grid = [[dense.rows[i - 1][j - 1] for j in col_labels] for i in row_labels]
    try:
        int_rows, scales = _int_rows_with_scales(grid)
        det = _bareiss_int_det(int_rows)
    except (OverflowError, MemoryError):  # pragma: no cover - defensive fallback
        return _expansion_det(grid)
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(det, denom)


def minor_expansion(m, rows, cols) -> Fraction:
    """Cofactor-expansion determinant; independent slow oracle for tests."""
    dense = _as_dense(m)
    row_labels, col_labels = _labels(rows), _labels(cols)
    _check_labels(dense, row_labels, col_labels)
    grid = [[dense.rows[i - 1][j - 1] for j in col_labels] for i in row_labels]
    return _expansion_det(grid)


def det(m) -> Fraction:
    dense = _as_dense(m)
    if not dense.is_square:
        raise ContractViolationError("determinant requires a square matrix")
    full = tuple(range(1, dense.n_rows + 1))
    return minor(dense, full, full)


def adjugate(m) -> DenseMatrix:
    """Exact adjugate: adj(M) @ M = det(M) * I."""
    dense = _as_dense(m)
    if not dense.is_square:
        raise ContractViolationError("adjugate requires a square matrix")
    n = dense.n_rows
    if n == 1:
        return DenseMatrix.identity(1)
    labels = list(range(1, n + 1))
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            rows_sel = labels[:j] + labels[j + 1:]
            cols_sel = labels[:i] + labels[i + 1:]
            cof = minor(dense, rows_sel, cols_sel)
            row.append(cof if (i + j) % 2 == 0 else -cof)
        entries.append(tuple(row))
    return DenseMatrix(tuple(entries))
