"""Left/right recursion polynomial families of a banded matrix, degree
bookkeeping, step-line normality verification, and leading-block sign checks.

Polynomial and entry indices are 0-based throughout this module; the
families themselves are numbered 1..p (left) and 1..q (right).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Sequence

from .band import BandedMatrix
from .core import DenseMatrix, rat
from .errors import ContractViolationError, PreconditionError
from .pbf import _bidiagonal_matrix


# ---------------------------------------------------------------------------
# Exact polynomials over the rationals
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Polynomial:
    """Rational-coefficient polynomial, ascending order, no trailing zeros.

    The zero polynomial stores no coefficients and reports degree ``None``
    ("absent").
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        coeffs = tuple(rat(c) for c in self.coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient(self, k: int) -> Fraction:
        if k < 0:
            raise ContractViolationError("coefficient index must be nonnegative")
        return self.coeffs[k] if k < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        merged = list(a)
        for k, c in enumerate(b):
            merged[k] += c
        return Polynomial(tuple(merged))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    def scale(self, factor: Fraction | int) -> "Polynomial":
        factor = rat(factor)
        return Polynomial(tuple(c * factor for c in self.coeffs))

    def times_x(self) -> "Polynomial":
        if self.is_zero:
            return self
        return Polynomial((Fraction(0),) + self.coeffs)

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    def evaluate(self, x: Fraction | int) -> Fraction:
        x = rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    @staticmethod
    def constant(value) -> "Polynomial":
        return Polynomial((rat(value),))

    @staticmethod
    def x() -> "Polynomial":
        return Polynomial((Fraction(0), Fraction(1)))


def poly_divmod(num: Polynomial, den: Polynomial) -> tuple[Polynomial, Polynomial]:
    """Exact euclidean division over the rationals."""
    if den.is_zero:
        raise ContractViolationError("polynomial division by zero")
    quot: list[Fraction] = []
    rem = list(num.coeffs)
    dcoeffs = den.coeffs
    lead = dcoeffs[-1]
    while len(rem) >= len(dcoeffs):
        factor = rem[-1] / lead
        shift = len(rem) - len(dcoeffs)
        quot.append(factor)
        for k, c in enumerate(dcoeffs):
            rem[shift + k] -= factor * c
        rem.pop()
        while rem and rem[-1] == 0:
            if len(rem) >= len(dcoeffs):
                quot.append(Fraction(0))
            rem.pop()
    return Polynomial(tuple(reversed(quot))), Polynomial(tuple(rem))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over the rationals."""
    while not b.is_zero:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a.is_zero:
        return a
    return a.scale(1 / a.coeffs[-1])


# ---------------------------------------------------------------------------
# Initial conditions and the recursion tables
# ---------------------------------------------------------------------------


def _is_upper_triangular(m: DenseMatrix) -> bool:
    return all(
        m.rows[i][j] == 0 for i in range(m.n_rows) for j in range(m.n_cols) if j < i
    )


@dataclass(frozen=True)
class InitialConditions:
    """Seed blocks for the two families: ``a0`` is p x p upper triangular,
    ``b0`` is q x q lower triangular, both nonsingular.

    The standard seeds of the recursion are unitriangular (row a of ``a0``
    reads 0,..,0,1,free constants); general positive-diagonal triangular
    seeds are accepted as well because the spectral hypotheses construct
    them from companion-matrix corners.
    """

    a0: DenseMatrix
    b0: DenseMatrix

    def __post_init__(self):
        if not self.a0.is_square or not self.b0.is_square:
            raise ContractViolationError("initial-condition blocks must be square")
        if not _is_upper_triangular(self.a0):
            raise ContractViolationError("left initial block must be upper triangular")
        if not _is_upper_triangular(self.b0.transpose()):
            raise ContractViolationError("right initial block must be lower triangular")
        for block in (self.a0, self.b0):
            if any(block.rows[i][i] == 0 for i in range(block.n_rows)):
                raise ContractViolationError("initial blocks must be nonsingular")

    @property
    def p(self) -> int:
        return self.a0.n_rows

    @property
    def q(self) -> int:
        return self.b0.n_rows

    @property
    def is_unitriangular(self) -> bool:
        return all(self.a0.rows[i][i] == 1 for i in range(self.p)) and all(
            self.b0.rows[i][i] == 1 for i in range(self.q)
        )

    @staticmethod
    def identity(p: int, q: int) -> "InitialConditions":
        return InitialConditions(DenseMatrix.identity(p), DenseMatrix.identity(q))


@dataclass(frozen=True)
class RecursionTable:
    """Computed polynomial families: ``left[a-1][i]`` is the i-th polynomial
    of left family a, mirrored on the right."""

    t: BandedMatrix
    ic: InitialConditions
    left: tuple[tuple[Polynomial, ...], ...]
    right: tuple[tuple[Polynomial, ...], ...]

    @property
    def p(self) -> int:
        return self.ic.p

    @property
    def q(self) -> int:
        return self.ic.q

    @property
    def left_count(self) -> int:
        return len(self.left[0]) if self.left else 0

    @property
    def right_count(self) -> int:
        return len(self.right[0]) if self.right else 0

    @property
    def block_superdiagonals(self) -> int:
        """N = ceil(q/p), the block bandwidth of the left recursion."""
        return ceil(self.q / self.p) if self.p else 0


def left_recursion(
    t: BandedMatrix, ic: InitialConditions, count: int
) -> tuple[tuple[Polynomial, ...], ...]:
    """Left families a = 1..p: seed indices 0..p-1 from ``ic.a0`` row a, then
    column j of the matrix determines index j+p by the eigen relation,
    dividing by the extreme subdiagonal entry."""
    p = ic.p
    if count < 0 or count + p > t.n:
        raise ContractViolationError(
            f"count={count} with p={p} needs a matrix of size >= {count + p}"
        )
    families = []
    for a in range(1, p + 1):
        polys = [Polynomial.constant(ic.a0.rows[a - 1][i]) for i in range(p)]
        families.append(polys)
    for j in range(count):
        divisor = t.entry(j + p, j)
        if divisor == 0:
            raise PreconditionError(
                f"extreme subdiagonal entry at column {j + 1} is zero"
            )
        for polys in families:
            acc = polys[j].times_x()
            for i in range(max(0, j - t.q), j + p):
                coeff = t.entry(i, j)
                if coeff != 0:
                    acc = acc - polys[i].scale(coeff)
            polys.append(acc.scale(Fraction(1) / divisor))
    return tuple(tuple(polys) for polys in families)


def right_recursion(
    t: BandedMatrix, ic: InitialConditions, count: int
) -> tuple[tuple[Polynomial, ...], ...]:
    """Right families b = 1..q, mirrored over rows: ``ic.b0`` column b seeds
    indices 0..q-1 and row i determines index i+q via the extreme
    superdiagonal entry."""
    q = ic.q
    if count < 0 or count + q > t.n:
        raise ContractViolationError(
            f"count={count} with q={q} needs a matrix of size >= {count + q}"
        )
    families = []
    for b in range(1, q + 1):
        polys = [Polynomial.constant(ic.b0.rows[i][b - 1]) for i in range(q)]
        families.append(polys)
    for i in range(count):
        divisor = t.entry(i, i + q)
        if divisor == 0:
            raise PreconditionError(f"extreme superdiagonal entry at row {i + 1} is zero")
        for polys in families:
            acc = polys[i].times_x()
            for j in range(max(0, i - t.p), i + q):
                coeff = t.entry(i, j)
                if coeff != 0:
                    acc = acc - polys[j].scale(coeff)
            polys.append(acc.scale(Fraction(1) / divisor))
    return tuple(tuple(polys) for polys in families)


def build_recursion_table(
    t: BandedMatrix,
    ic: InitialConditions,
    left_count: int | None = None,
    right_count: int | None = None,
) -> RecursionTable:
    """Compute both families; defaults cover polynomial indices 0..n-1."""
    if left_count is None:
        left_count = t.n - ic.p
    if right_count is None:
        right_count = t.n - ic.q
    return RecursionTable(
        t,
        ic,
        left_recursion(t, ic, left_count),
        right_recursion(t, ic, right_count),
    )


# ---------------------------------------------------------------------------
# Degrees, normality, leading blocks
# ---------------------------------------------------------------------------


def degree_bound(n: int, a: int, p: int) -> int:
    """ceil((n + 2 - a) / p) - 1, the step-line degree ceiling."""
    if p < 1 or not 1 <= a <= p:
        raise ContractViolationError(f"family index {a} out of range 1..{p}")
    if n < 0:
        raise ContractViolationError("polynomial index must be nonnegative")
    return -((-(n + 2 - a)) // p) - 1


@dataclass(frozen=True)
class DegreeFailure:
    side: str
    family: int
    index: int
    expected: int
    actual: int | None


@dataclass(frozen=True)
class NormalityReport:
    normal: bool
    failures: tuple[DegreeFailure, ...]
    bound_violations: tuple[DegreeFailure, ...]

    def as_dict(self) -> dict:
        def row(f: DegreeFailure) -> dict:
            return {
                "side": f.side,
                "family": f.family,
                "index": f.index,
                "expected": f.expected,
                "actual": f.actual,
            }

        return {
            "normal": self.normal,
            "failures": [row(f) for f in self.failures],
            "bound_violations": [row(f) for f in self.bound_violations],
        }


def check_normality(table: RecursionTable) -> NormalityReport:
    """Verify every computed polynomial attains the ceiling-formula degree.

    A negative ceiling means the polynomial must vanish identically (the
    seeded indices below the family's unit entry); a bound *violation*
    (degree above the ceiling) is reported separately since the degree
    proposition excludes it outright.
    """
    failures: list[DegreeFailure] = []
    violations: list[DegreeFailure] = []
    for side, families, denom in (("left", table.left, table.p), ("right", table.right, table.q)):
        for fam_idx, polys in enumerate(families, start=1):
            for n_idx, poly in enumerate(polys):
                expected = degree_bound(n_idx, fam_idx, denom)
                actual = poly.degree
                if actual is not None and actual > expected:
                    violations.append(
                        DegreeFailure(side, fam_idx, n_idx, expected, actual)
                    )
                    continue
                if expected < 0:
                    if actual is not None:
                        failures.append(
                            DegreeFailure(side, fam_idx, n_idx, expected, actual)
                        )
                elif actual != expected:
                    failures.append(
                        DegreeFailure(side, fam_idx, n_idx, expected, actual)
                    )
    return NormalityReport(not failures and not violations, tuple(failures), tuple(violations))


def leading_block(table: RecursionTable, k: int, side: str = "left") -> DenseMatrix:
    """Coefficient of x^k across block k: entry (a, c) of the left block is
    that coefficient in polynomial index kp + c - 1 of family a; the right
    block mirrors with rows indexing the polynomial offset."""
    if k < 0:
        raise ContractViolationError("block index must be nonnegative")
    if side == "left":
        size, families = table.p, table.left
        if (k + 1) * size - 1 >= table.left_count:
            raise ContractViolationError(f"left table does not cover block {k}")
        rows = [
            [families[a][k * size + c].coefficient(k) for c in range(size)]
            for a in range(size)
        ]
    elif side == "right":
        size, families = table.q, table.right
        if (k + 1) * size - 1 >= table.right_count:
            raise ContractViolationError(f"right table does not cover block {k}")
        rows = [
            [families[b][k * size + r].coefficient(k) for b in range(size)]
            for r in range(size)
        ]
    else:
        raise ContractViolationError("side must be 'left' or 'right'")
    return DenseMatrix(tuple(tuple(row) for row in rows))


def _theta_block(t: BandedMatrix, k: int, p: int) -> DenseMatrix:
    """p x p block (k, k-1) of the matrix in the p-partition (0-based blocks)."""
    if (k + 1) * p > t.n:
        raise ContractViolationError(f"matrix too small for block {k}")
    return DenseMatrix(
        tuple(
            tuple(t.entry(k * p + r, (k - 1) * p + c) for c in range(p))
            for r in range(p)
        )
    )


def _xi_block(t: BandedMatrix, k: int, q: int) -> DenseMatrix:
    """q x q block (k-1, k) in the q-partition."""
    if (k + 1) * q > t.n:
        raise ContractViolationError(f"matrix too small for block {k}")
    return DenseMatrix(
        tuple(
            tuple(t.entry((k - 1) * q + r, k * q + c) for c in range(q))
            for r in range(q)
        )
    )


def leading_block_closed_form(table: RecursionTable, k: int, side: str = "left") -> DenseMatrix:
    """The block subdiagonal product form of the leading coefficient:
    inverse of (Theta_k .. Theta_1 A0^{-1}) on the left, mirrored on the right."""
    if side == "left":
        acc = table.ic.a0.inverse()
        for block_idx in range(1, k + 1):
            acc = _theta_block(table.t, block_idx, table.p).mul(acc)
    elif side == "right":
        acc = table.ic.b0.inverse()
        for block_idx in range(1, k + 1):
            acc = acc.mul(_xi_block(table.t, block_idx, table.q))
    else:
        raise ContractViolationError("side must be 'left' or 'right'")
    return acc.inverse()


@dataclass(frozen=True)
class BlockSignReport:
    side: str
    k: int
    triangular: bool
    checkerboard: bool
    closed_form_matches: bool
    violations: tuple[tuple[int, int, Fraction], ...]

    @property
    def ok(self) -> bool:
        return self.triangular and self.checkerboard and self.closed_form_matches


def leading_block_signs(table: RecursionTable, k: int, side: str = "left") -> BlockSignReport:
    """Verify block k is triangular with the alternating sign pattern
    sign(entry on offset-j diagonal) = (-1)^j, and matches the closed form."""
    block = leading_block(table, k, side)
    expected = leading_block_closed_form(table, k, side)
    size = block.n_rows
    triangular = True
    checkerboard = True
    violations: list[tuple[int, int, Fraction]] = []
    for i in range(size):
        for j in range(size):
            v = block.rows[i][j]
            offset = j - i if side == "left" else i - j
            if offset < 0:
                if v != 0:
                    triangular = False
                    violations.append((i + 1, j + 1, v))
                continue
            expected_sign = -1 if offset % 2 else 1
            if (v > 0) - (v < 0) != expected_sign:
                checkerboard = False
                violations.append((i + 1, j + 1, v))
    return BlockSignReport(
        side, k, triangular, checkerboard, block == expected, tuple(violations)
    )


# ---------------------------------------------------------------------------
# Seeded initial data
# ---------------------------------------------------------------------------


def random_triangular_tp_inverse(
    rng: random.Random, size: int, upper: bool
) -> DenseMatrix:
    """Product of size-1 positive unitriangular bidiagonal factors: a
    triangular totally positive matrix (to be inverted into initial data)."""
    acc = DenseMatrix.identity(size)
    for _ in range(max(size - 1, 0)):
        vec = [Fraction(rng.randint(1, 3), rng.randint(1, 2)) for _ in range(size - 1)]
        acc = acc.mul(_bidiagonal_matrix(size, vec, lower=not upper))
    return acc


def make_tp_initial_conditions(seed: int, p: int, q: int) -> InitialConditions:
    """Unitriangular seeds whose inverses are triangular totally positive,
    the hypothesis of the normality theorem."""
    rng = random.Random(seed)
    a0_inv = random_triangular_tp_inverse(rng, p, upper=True)
    b0_inv = random_triangular_tp_inverse(rng, q, upper=False)
    return InitialConditions(a0_inv.inverse(), b0_inv.inverse())
