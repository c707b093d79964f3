"""Positivity classifications: TP, TN, InTN, oscillatory, and the four
equivalent banded-total-positivity routes, plus singular-submatrix detection.

Verdicts carry the lexicographically first failing minor as a witness so
that failures are reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import config
from .band import (
    BandedMatrix,
    delta_minors,
    enumerate_nontrivial_contiguous,
    enumerate_nontrivial_initial,
    is_trivial_submatrix,
)
from .core import DenseMatrix, _as_dense, _int_rows_with_scales, minor
from .errors import CapacityError, ContractViolationError, PreconditionError


@dataclass(frozen=True)
class MinorWitness:
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    value: Fraction

    def as_dict(self) -> dict:
        return {
            "rows": list(self.rows),
            "cols": list(self.cols),
            "value": str(self.value),
        }


@dataclass(frozen=True)
class CriterionVerdict:
    criterion_id: str
    verdict: bool
    witnesses: tuple[MinorWitness, ...] = ()

    def as_dict(self) -> dict:
        return {
            "criterion": self.criterion_id,
            "verdict": self.verdict,
            "witnesses": [w.as_dict() for w in self.witnesses],
        }


@dataclass(frozen=True)
class PinkusTriple:
    alpha: int
    beta: int
    r: int

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "r": self.r}


class _MinorTable:
    """Memoized exact minors of one matrix, for the exhaustive oracles.

    Rows are cleared to integers by positive scalings, which preserves every
    minor's sign; exact values divide the scale product back out.
    """

    def __init__(self, dense: DenseMatrix):
        self._int_rows, self._scales = _int_rows_with_scales(dense.rows)
        self._memo: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}

    def _int_minor(self, rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
        """0-based labels; expansion along the last row with memoization."""
        if len(rows) == 1:
            return self._int_rows[rows[0]][cols[0]]
        key = (rows, cols)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        head_rows = rows[:-1]
        last = self._int_rows[rows[-1]]
        total = 0
        sign = -1 if len(rows) % 2 == 0 else 1
        for t, c in enumerate(cols):
            entry = last[c]
            if entry:
                sub = self._int_minor(head_rows, cols[:t] + cols[t + 1:])
                if sub:
                    total += sign * entry * sub
            sign = -sign
        self._memo[key] = total
        return total

    def sign(self, rows1: tuple[int, ...], cols1: tuple[int, ...]) -> int:
        """Sign of the minor at 1-based labels."""
        v = self._int_minor(tuple(i - 1 for i in rows1), tuple(j - 1 for j in cols1))
        return (v > 0) - (v < 0)

    def value(self, rows1: tuple[int, ...], cols1: tuple[int, ...]) -> Fraction:
        v = self._int_minor(tuple(i - 1 for i in rows1), tuple(j - 1 for j in cols1))
        denom = 1
        for i in rows1:
            denom *= self._scales[i - 1]
        return Fraction(v, denom)


def _require_square(m) -> DenseMatrix:
    dense = _as_dense(m)
    if not dense.is_square:
        raise ContractViolationError("criterion requires a square matrix")
    return dense


def _check_cap(n: int, cap: int | None, what: str) -> None:
    limit = config.oracle_cap() if cap is None else cap
    if n > limit:
        raise CapacityError(
            f"{what} enumerates exponentially many minors; n={n} exceeds cap {limit}"
        )


def is_TP_fekete(m, criterion_id: str = "tp-fekete") -> CriterionVerdict:
    """Total positivity via contiguous minors only (Fekete reduction)."""
    dense = _require_square(m)
    n = dense.n_rows
    for r in range(1, n + 1):
        for i in range(1, n - r + 2):
            rows = tuple(range(i, i + r))
            for j in range(1, n - r + 2):
                cols = tuple(range(j, j + r))
                value = minor(dense, rows, cols)
                if value <= 0:
                    return CriterionVerdict(
                        criterion_id, False, (MinorWitness(rows, cols, value),)
                    )
    return CriterionVerdict(criterion_id, True)


def is_TN_bruteforce(m, cap: int | None = None) -> CriterionVerdict:
    """Total nonnegativity by enumerating every minor (the oracle)."""
    dense = _require_square(m)
    n = dense.n_rows
    _check_cap(n, cap, "TN brute force")
    table = _MinorTable(dense)
    labels = range(1, n + 1)
    for r in range(1, n + 1):
        for rows in combinations(labels, r):
            for cols in combinations(labels, r):
                if table.sign(rows, cols) < 0:
                    return CriterionVerdict(
                        "tn-bruteforce",
                        False,
                        (MinorWitness(rows, cols, table.value(rows, cols)),),
                    )
    return CriterionVerdict("tn-bruteforce", True)


def is_TN_cryer(m, cap: int | None = None) -> CriterionVerdict:
    """Cryer reduction: arbitrary rows, contiguous columns.

    Agrees with the brute-force check on nonsingular matrices.
    """
    dense = _require_square(m)
    n = dense.n_rows
    _check_cap(n, cap, "Cryer criterion")
    table = _MinorTable(dense)
    labels = range(1, n + 1)
    for r in range(1, n + 1):
        for rows in combinations(labels, r):
            for j in range(1, n - r + 2):
                cols = tuple(range(j, j + r))
                if table.sign(rows, cols) < 0:
                    return CriterionVerdict(
                        "tn-cryer",
                        False,
                        (MinorWitness(rows, cols, table.value(rows, cols)),),
                    )
    return CriterionVerdict("tn-cryer", True)


def is_InTN_gasca_pena(m) -> CriterionVerdict:
    """Nonsingular total nonnegativity via the initial-minor characterization:
    positive leading principal minors, nonnegative initial row/column minors."""
    dense = _require_square(m)
    n = dense.n_rows
    table = _MinorTable(dense)
    labels = range(1, n + 1)
    for r in range(1, n + 1):
        head = tuple(range(1, r + 1))
        if table.sign(head, head) <= 0:
            return CriterionVerdict(
                "intn-gasca-pena",
                False,
                (MinorWitness(head, head, table.value(head, head)),),
            )
        for rows in combinations(labels, r):
            if table.sign(rows, head) < 0:
                return CriterionVerdict(
                    "intn-gasca-pena",
                    False,
                    (MinorWitness(rows, head, table.value(rows, head)),),
                )
        for cols in combinations(labels, r):
            if table.sign(head, cols) < 0:
                return CriterionVerdict(
                    "intn-gasca-pena",
                    False,
                    (MinorWitness(head, cols, table.value(head, cols)),),
                )
    return CriterionVerdict("intn-gasca-pena", True)


def is_BTP_oracle(t: BandedMatrix, cap: int | None = None) -> CriterionVerdict:
    """Banded total positivity by exhausting every nontrivial minor."""
    _check_cap(t.n, cap, "BTP oracle")
    table = _MinorTable(t.to_dense())
    labels = range(1, t.n + 1)
    for r in range(1, t.n + 1):
        for rows in combinations(labels, r):
            for cols in combinations(labels, r):
                if is_trivial_submatrix(t, rows, cols):
                    continue
                if table.sign(rows, cols) <= 0:
                    return CriterionVerdict(
                        "btp-oracle",
                        False,
                        (MinorWitness(rows, cols, table.value(rows, cols)),),
                    )
    return CriterionVerdict("btp-oracle", True)


def is_BTP_contiguous(t: BandedMatrix) -> CriterionVerdict:
    """Banded total positivity via nontrivial contiguous minors only."""
    dense = t.to_dense()
    for i, j, r in enumerate_nontrivial_contiguous(t):
        rows = tuple(range(i, i + r))
        cols = tuple(range(j, j + r))
        value = minor(dense, rows, cols)
        if value <= 0:
            return CriterionVerdict(
                "btp-contiguous", False, (MinorWitness(rows, cols, value),)
            )
    return CriterionVerdict("btp-contiguous", True)


def is_BTP_initial(t: BandedMatrix) -> CriterionVerdict:
    """Banded total positivity via nontrivial initial minors only."""
    dense = t.to_dense()
    for rows, cols in enumerate_nontrivial_initial(t):
        value = minor(dense, rows, cols)
        if value <= 0:
            return CriterionVerdict(
                "btp-initial", False, (MinorWitness(rows, cols, value),)
            )
    return CriterionVerdict("btp-initial", True)


def is_BTP_delta(t: BandedMatrix) -> CriterionVerdict:
    """Banded total positivity via the corner-minor route: the matrix must be
    InTN and every nontrivial corner minor must be nonzero (positivity is then
    automatic)."""
    intn = is_InTN_gasca_pena(t.to_dense())
    if not intn.verdict:
        return CriterionVerdict("btp-delta", False, intn.witnesses)
    report = delta_minors(t)
    hit = report.nontrivial_zero_witness()
    if hit is not None:
        side, index, value = hit
        if side == "upper":
            rows = tuple(range(1, index + 1))
            cols = tuple(range(t.n - index + 1, t.n + 1))
        else:
            rows = tuple(range(t.n - index + 1, t.n + 1))
            cols = tuple(range(1, index + 1))
        return CriterionVerdict("btp-delta", False, (MinorWitness(rows, cols, value),))
    return CriterionVerdict("btp-delta", True)


def is_oscillatory_price(t: BandedMatrix) -> CriterionVerdict:
    """Sufficient oscillatority check for banded matrices.

    Requires positive nontrivial contiguous minors plus positive entries on
    the first sub- and superdiagonal (the irreducibility that degenerate
    bands such as p = 0 or q = 0 cannot supply: triangular matrices never
    have a totally positive power).
    """
    dense = t.to_dense()
    full = tuple(range(1, t.n + 1))
    if minor(dense, full, full) == 0:
        raise PreconditionError("oscillatority check requires a nonsingular matrix")
    if t.n > 1:
        for i in range(1, t.n):
            above = dense.rows[i - 1][i]
            if above <= 0:
                return CriterionVerdict(
                    "oscillatory-price",
                    False,
                    (MinorWitness((i,), (i + 1,), above),),
                )
            below = dense.rows[i][i - 1]
            if below <= 0:
                return CriterionVerdict(
                    "oscillatory-price",
                    False,
                    (MinorWitness((i + 1,), (i,), below),),
                )
    contiguous = is_BTP_contiguous(t)
    if not contiguous.verdict:
        return CriterionVerdict("oscillatory-price", False, contiguous.witnesses)
    return CriterionVerdict("oscillatory-price", True)


def oscillatory_power_exponent(t: BandedMatrix, power_cap: int | None = None) -> int | None:
    """Definitional check: smallest m <= cap with T^m totally positive, else None."""
    cap = config.DEFAULT_OSCILLATORY_POWER_CAP if power_cap is None else power_cap
    dense = t.to_dense()
    power = dense
    for m in range(1, cap + 1):
        if is_TP_fekete(power).verdict:
            return m
        power = power.mul(dense)
    return None


def find_pinkus_submatrices(m, cap: int | None = None) -> list[PinkusTriple]:
    """Contiguous singular submatrices of an InTN matrix that contain no
    singular proper principal submatrix; these localize all vanishing minors."""
    dense = _require_square(m)
    n = dense.n_rows
    _check_cap(n, cap, "singular-submatrix search")
    intn = is_InTN_gasca_pena(dense)
    if not intn.verdict:
        raise PreconditionError(
            "singular-submatrix search requires a nonsingular totally nonnegative "
            f"matrix; witness minor {intn.witnesses[0].as_dict()}"
        )
    table = _MinorTable(dense)
    triples = []
    for r in range(1, n + 1):
        for alpha in range(1, n - r + 2):
            rows = tuple(range(alpha, alpha + r))
            for beta in range(1, n - r + 2):
                cols = tuple(range(beta, beta + r))
                if table.sign(rows, cols) != 0:
                    continue
                if _has_singular_proper_principal(table, rows, cols):
                    continue
                triples.append(PinkusTriple(alpha, beta, r))
    return triples


def _has_singular_proper_principal(
    table: _MinorTable, rows: tuple[int, ...], cols: tuple[int, ...]
) -> bool:
    r = len(rows)
    positions = range(r)
    for k in range(1, r):
        for subset in combinations(positions, k):
            sub_rows = tuple(rows[s] for s in subset)
            sub_cols = tuple(cols[s] for s in subset)
            if table.sign(sub_rows, sub_cols) == 0:
                return True
    return False


def is_upper_triangular_tp(m, cap: int | None = None) -> CriterionVerdict:
    """Triangular total positivity: every nontrivial minor of the upper
    triangle is positive (band (0, n-1))."""
    dense = _require_square(m)
    t = BandedMatrix(dense.n_rows, 0, dense.n_rows - 1 if dense.n_rows > 1 else 0, dense.rows)
    return is_BTP_oracle(t, cap=cap)


def is_lower_triangular_tp(m, cap: int | None = None) -> CriterionVerdict:
    dense = _require_square(m)
    t = BandedMatrix(dense.n_rows, dense.n_rows - 1 if dense.n_rows > 1 else 0, 0, dense.rows)
    return is_BTP_oracle(t, cap=cap)
