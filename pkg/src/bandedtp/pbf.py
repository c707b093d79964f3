"""Positive bidiagonal factorizations, Darboux permutations, and the
triangular companion matrices built from factor corner entries.

A factorization stores p lower factors, a diagonal, and q upper factors,
multiplied as ``L_1 .. L_p  D  U_q .. U_1``.  Factor i is kept as its
(sub/super)diagonal vector of length n-1.  Two layouts occur: elimination
output pads factor i with p-i (resp. q-i) leading zeros, while the seeded
generator emits fully positive vectors; both multiply out to banded totally
positive matrices.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .band import BandedMatrix, band_profile
from .core import DenseMatrix, rat
from .errors import ContractViolationError, NotBTPError

ValueBounds = tuple[tuple[int, int], tuple[int, int]]
DEFAULT_VALUE_BOUNDS: ValueBounds = ((1, 5), (1, 3))


@dataclass(frozen=True)
class PBFactorization:
    n: int
    lower: tuple[tuple[Fraction, ...], ...]
    diag: tuple[Fraction, ...]
    upper: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        lower = tuple(tuple(rat(v) for v in vec) for vec in self.lower)
        upper = tuple(tuple(rat(v) for v in vec) for vec in self.upper)
        diag = tuple(rat(v) for v in self.diag)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "diag", diag)
        if self.n < 1:
            raise ContractViolationError("size must be positive")
        if len(diag) != self.n:
            raise ContractViolationError(f"diagonal must have {self.n} entries")
        if any(d <= 0 for d in diag):
            raise ContractViolationError("diagonal entries must be positive")
        for vec in lower + upper:
            if len(vec) != self.n - 1:
                raise ContractViolationError(
                    f"factor vectors must have {self.n - 1} entries"
                )
            if any(v < 0 for v in vec):
                raise ContractViolationError("factor entries must be nonnegative")

    @property
    def p(self) -> int:
        return len(self.lower)

    @property
    def q(self) -> int:
        return len(self.upper)

    @property
    def is_strictly_positive(self) -> bool:
        """Every factor entry positive (the generator layout)."""
        return all(v > 0 for vec in self.lower + self.upper for v in vec)

    @property
    def is_canonical(self) -> bool:
        """Elimination layout: factor i carries exactly p-i (q-i) leading zeros."""
        for idx, vec in enumerate(self.lower):
            pad = self.p - (idx + 1)
            if any(v != 0 for v in vec[:pad]) or any(v <= 0 for v in vec[pad:]):
                return False
        for idx, vec in enumerate(self.upper):
            pad = self.q - (idx + 1)
            if any(v != 0 for v in vec[:pad]) or any(v <= 0 for v in vec[pad:]):
                return False
        return True

    def lower_factor_matrix(self, i: int) -> DenseMatrix:
        """L_i as a dense n x n unitriangular lower bidiagonal matrix (1-based i)."""
        if not 1 <= i <= self.p:
            raise ContractViolationError(f"lower factor index {i} out of range")
        return _bidiagonal_matrix(self.n, self.lower[i - 1], lower=True)

    def upper_factor_matrix(self, i: int) -> DenseMatrix:
        if not 1 <= i <= self.q:
            raise ContractViolationError(f"upper factor index {i} out of range")
        return _bidiagonal_matrix(self.n, self.upper[i - 1], lower=False)

    def diag_matrix(self) -> DenseMatrix:
        return DenseMatrix(
            tuple(
                tuple(self.diag[i] if i == j else Fraction(0) for j in range(self.n))
                for i in range(self.n)
            )
        )


def _bidiagonal_matrix(n: int, vec: Sequence[Fraction], lower: bool) -> DenseMatrix:
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = Fraction(1)
    for t, v in enumerate(vec):
        if lower:
            rows[t + 1][t] = v
        else:
            rows[t][t + 1] = v
    return DenseMatrix(tuple(tuple(row) for row in rows))


def pbf_compose(f: PBFactorization) -> BandedMatrix:
    """Exact product L_1 .. L_p  D  U_q .. U_1 with its declared band."""
    acc = f.lower_factor_matrix(1) if f.p else DenseMatrix.identity(f.n)
    for i in range(2, f.p + 1):
        acc = acc.mul(f.lower_factor_matrix(i))
    acc = acc.mul(f.diag_matrix())
    for i in range(f.q, 0, -1):
        acc = acc.mul(f.upper_factor_matrix(i))
    return BandedMatrix(
        f.n, min(f.p, f.n - 1), min(f.q, f.n - 1), acc.rows
    )


def pbf_factorize(t: BandedMatrix) -> PBFactorization:
    """Peel bidiagonal factors off the declared band by adjacent-row (then
    adjacent-column) elimination, outermost diagonal first.

    Succeeds exactly when the matrix is banded totally positive: any
    nonpositive multiplier or pivot aborts with :class:`NotBTPError`
    carrying the offending 1-based position.
    """
    n, p, q = t.n, t.p, t.q
    rows = [list(r) for r in t.rows]
    lower_vecs: list[tuple[Fraction, ...]] = []
    for f_idx in range(p):
        depth = p - f_idx
        vec = [Fraction(0)] * (n - 1)
        reduced = [rows[0]]
        for i in range(1, n):
            col = i - depth
            if col < 0:
                reduced.append(rows[i])
                continue
            num = rows[i][col]
            den = reduced[i - 1][col]
            if den == 0:
                raise NotBTPError(
                    "elimination pivot vanished", position=(i + 1, col + 1), value=num
                )
            mult = num / den
            if mult <= 0:
                raise NotBTPError(
                    "nonpositive elimination multiplier",
                    position=(i + 1, col + 1),
                    value=mult,
                )
            vec[i - 1] = mult
            reduced.append([a - mult * b for a, b in zip(rows[i], reduced[i - 1])])
        rows = reduced
        lower_vecs.append(tuple(vec))

    cols = [[rows[i][j] for i in range(n)] for j in range(n)]
    upper_vecs: list[tuple[Fraction, ...]] = []
    for f_idx in range(q):
        depth = q - f_idx
        vec = [Fraction(0)] * (n - 1)
        reduced = [cols[0]]
        for j in range(1, n):
            row = j - depth
            if row < 0:
                reduced.append(cols[j])
                continue
            num = cols[j][row]
            den = reduced[j - 1][row]
            if den == 0:
                raise NotBTPError(
                    "elimination pivot vanished", position=(row + 1, j + 1), value=num
                )
            mult = num / den
            if mult <= 0:
                raise NotBTPError(
                    "nonpositive elimination multiplier",
                    position=(row + 1, j + 1),
                    value=mult,
                )
            vec[j - 1] = mult
            reduced.append([a - mult * b for a, b in zip(cols[j], reduced[j - 1])])
        cols = reduced
        upper_vecs.append(tuple(vec))

    diag = []
    for i in range(n):
        pivot = cols[i][i]
        if pivot <= 0:
            raise NotBTPError(
                "nonpositive diagonal pivot", position=(i + 1, i + 1), value=pivot
            )
        diag.append(pivot)
        for j in range(n):
            if j != i and cols[i][j] != 0:
                raise NotBTPError(
                    "elimination left a nonzero off-diagonal residue",
                    position=(j + 1, i + 1),
                    value=cols[i][j],
                )
    return PBFactorization(n, tuple(lower_vecs), tuple(diag), tuple(upper_vecs))


def darboux(f: PBFactorization, k: int) -> BandedMatrix:
    """Cyclic permutation of the factorization: positive k rotates the first k
    lower factors to the tail, negative k pulls the last -k upper factors to
    the head.  The band of the permuted product is recomputed, not assumed."""
    if k == 0:
        raise ContractViolationError("transformation index k must be nonzero")
    factors: list[DenseMatrix] = []
    if k > 0:
        if k > f.p:
            raise ContractViolationError(f"k={k} exceeds the {f.p} lower factors")
        factors += [f.lower_factor_matrix(i) for i in range(k + 1, f.p + 1)]
        factors.append(f.diag_matrix())
        factors += [f.upper_factor_matrix(i) for i in range(f.q, 0, -1)]
        factors += [f.lower_factor_matrix(i) for i in range(1, k + 1)]
    else:
        m = -k
        if m > f.q:
            raise ContractViolationError(f"k={k} exceeds the {f.q} upper factors")
        factors += [f.upper_factor_matrix(i) for i in range(m, 0, -1)]
        factors += [f.lower_factor_matrix(i) for i in range(1, f.p + 1)]
        factors.append(f.diag_matrix())
        factors += [f.upper_factor_matrix(i) for i in range(f.q, m, -1)]
    product = DenseMatrix.identity(f.n)
    for factor in factors:
        product = product.mul(factor)
    profile = band_profile(product)
    return BandedMatrix(f.n, profile[0], profile[1], product.rows)


def lambda_matrix(f: PBFactorization) -> DenseMatrix:
    """(p+1) x (p+1) upper triangular companion: first row all ones, then the
    first-column entries of the prefix products of the lower factors.

    Only the leading (p+1) x (p+1) corner of each factor contributes.
    """
    p = f.p
    if f.n < p + 1:
        raise ContractViolationError(f"need n >= {p + 1} for the companion matrix")
    s = p + 1
    rows = [[Fraction(0)] * s for _ in range(s)]
    rows[0] = [Fraction(1)] * s
    prefix = DenseMatrix.identity(s)
    for j in range(1, p + 1):
        corner = _bidiagonal_matrix(s, f.lower[j - 1][: s - 1], lower=True)
        prefix = prefix.mul(corner)
        for i in range(1, j + 1):
            rows[i][j] = prefix.rows[i][0]
    return DenseMatrix(tuple(tuple(r) for r in rows))


def upsilon_matrix(f: PBFactorization) -> DenseMatrix:
    """(q+1) x (q+1) lower triangular companion, the transposed analogue:
    first column all ones, then first-row entries of U_m .. U_1 products."""
    q = f.q
    if f.n < q + 1:
        raise ContractViolationError(f"need n >= {q + 1} for the companion matrix")
    s = q + 1
    rows = [[Fraction(0)] * s for _ in range(s)]
    for r in range(s):
        rows[r][0] = Fraction(1)
    prefix = DenseMatrix.identity(s)
    for m in range(1, q + 1):
        corner = _bidiagonal_matrix(s, f.upper[m - 1][: s - 1], lower=False)
        prefix = corner.mul(prefix)
        for c in range(1, m + 1):
            rows[m][c] = prefix.rows[0][c]
    return DenseMatrix(tuple(tuple(r) for r in rows))


def random_pbf(
    seed: int,
    n: int,
    p: int,
    q: int,
    value_bounds: ValueBounds = DEFAULT_VALUE_BOUNDS,
) -> PBFactorization:
    """Deterministic-per-seed factorization with every factor entry positive.

    Entries are numerator/denominator draws from ``value_bounds``; the
    composed matrix is banded totally positive by construction.
    """
    if p < 0 or q < 0 or n <= max(p, q, 0):
        raise ContractViolationError(f"need n > max(p, q), got n={n}, p={p}, q={q}")
    (num_lo, num_hi), (den_lo, den_hi) = value_bounds
    if not (1 <= num_lo <= num_hi and 1 <= den_lo <= den_hi):
        raise ContractViolationError(f"invalid value bounds {value_bounds}")
    rng = random.Random(seed)

    def draw() -> Fraction:
        return Fraction(rng.randint(num_lo, num_hi), rng.randint(den_lo, den_hi))

    lower = tuple(tuple(draw() for _ in range(n - 1)) for _ in range(p))
    diag = tuple(draw() for _ in range(n))
    upper = tuple(tuple(draw() for _ in range(n - 1)) for _ in range(q))
    return PBFactorization(n, lower, diag, upper)
