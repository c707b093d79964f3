"""Desk-scale spectral verification: exact characteristic polynomials, real
root isolation by Sturm counts and dyadic bisection, eigenvector consistency,
and discrete mixed biorthogonality at truncation eigenvalues.

No floating-point eigensolver is involved anywhere: eigenvalues are dyadic
rationals certified by sign changes of the exact characteristic polynomial,
and all downstream residuals are computed in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from . import config
from .band import BandedMatrix
from .core import DenseMatrix, adjugate
from .criteria import is_upper_triangular_tp, is_lower_triangular_tp
from .errors import (
    CapacityError,
    ContractViolationError,
    MultipleEigenvalueError,
    SpectralInconsistencyError,
)
from .pbf import PBFactorization, lambda_matrix, upsilon_matrix
from .recpoly import (
    InitialConditions,
    Polynomial,
    RecursionTable,
    build_recursion_table,
    poly_divmod,
    poly_gcd,
)

REFINEMENT_GUARD_BITS = 64
RATIONAL_ROOT_LIMIT = 10**12


def _check_spectral_cap(n: int, cap: int | None) -> None:
    limit = config.spectral_cap() if cap is None else cap
    if n > limit:
        raise CapacityError(f"spectral routines are capped at n={limit}, got n={n}")


# ---------------------------------------------------------------------------
# Integer polynomial helpers (ascending coefficient lists)
# ---------------------------------------------------------------------------


def _ipoly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _ipoly_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _ipoly_trim(out)


def _ipoly_sub(a: list[int], b: list[int]) -> list[int]:
    out = list(a) + [0] * (len(b) - len(a))
    for i, y in enumerate(b):
        out[i] -= y
    return _ipoly_trim(out)


def _ipoly_divexact(a: list[int], b: list[int]) -> list[int]:
    """Exact division in Z[x]; the caller guarantees divisibility."""
    if not b:
        raise ZeroDivisionError("integer polynomial division by zero")
    rem = list(a)
    quot = [0] * (len(rem) - len(b) + 1) if len(rem) >= len(b) else []
    lead = b[-1]
    while len(rem) >= len(b):
        q, r = divmod(rem[-1], lead)
        if r:
            raise ArithmeticError("inexact integer polynomial division")
        shift = len(rem) - len(b)
        quot[shift] = q
        if q:
            for k, c in enumerate(b):
                rem[shift + k] -= q * c
        rem.pop()
        _ipoly_trim(rem)
    if rem:
        raise ArithmeticError("nonzero remainder in exact polynomial division")
    return _ipoly_trim(quot)


def _ipoly_sign_at(coeffs: list[int], num: int, den: int) -> int:
    """Sign of p(num/den) for den > 0, via the homogenized integer value."""
    if not coeffs:
        return 0
    acc = 0
    power = 1
    # value * den^deg = sum coeffs[i] * num^i * den^(deg - i), Horner from the top
    for c in reversed(coeffs):
        acc = acc * num + c * power
        power *= den
    # undo the extra den factor introduced on the leading term
    # (loop multiplies power after use, so acc is exact as written)
    return (acc > 0) - (acc < 0)


def _primitive_int_poly(p: Polynomial) -> list[int]:
    """Positive-content primitive integer polynomial with the same roots."""
    if p.is_zero:
        return []
    scale = lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * scale) for c in p.coeffs]
    content = 0
    for c in ints:
        content = gcd(content, c)
    return [c // content for c in ints]


# ---------------------------------------------------------------------------
# Characteristic polynomial
# ---------------------------------------------------------------------------


def char_poly(t: BandedMatrix, cap: int | None = None) -> Polynomial:
    """Monic det(xI - T), by fraction-free elimination over Z[y] after a
    global integer scaling of the matrix."""
    _check_spectral_cap(t.n, cap)
    n = t.n
    scale = lcm(*(t.rows[i][j].denominator for i in range(n) for j in range(n)))
    s_int = [[int(t.rows[i][j] * scale) for j in range(n)] for i in range(n)]
    # entries of yI - (scale*T) as integer polynomials in y
    m: list[list[list[int]]] = [
        [
            _ipoly_trim([-s_int[i][j], 1] if i == j else [-s_int[i][j]])
            for j in range(n)
        ]
        for i in range(n)
    ]
    prev: list[int] = [1]
    for k in range(n - 1):
        pivot = m[k][k]
        if not pivot:
            raise ArithmeticError("vanishing pivot in characteristic elimination")
        for i in range(k + 1, n):
            head = m[i][k]
            for j in range(k + 1, n):
                num = _ipoly_sub(_ipoly_mul(pivot, m[i][j]), _ipoly_mul(head, m[k][j]))
                m[i][j] = _ipoly_divexact(num, prev)
            m[i][k] = []
        prev = pivot
    q = m[n - 1][n - 1]
    # det(xI - T) = scale^(-n) * Q(scale * x)
    coeffs = tuple(Fraction(c, scale ** (n - k)) for k, c in enumerate(q))
    return Polynomial(coeffs)


# ---------------------------------------------------------------------------
# Real root isolation and refinement
# ---------------------------------------------------------------------------


def _sturm_chain(r: list[int]) -> list[list[int]]:
    """Sturm chain of a square-free integer polynomial, each element reduced
    to a primitive integer polynomial (positive scalings preserve signs)."""
    p0 = Polynomial(tuple(Fraction(c) for c in r))
    chain_q = [p0, p0.derivative()]
    while not chain_q[-1].is_zero:
        _, rem = poly_divmod(chain_q[-2], chain_q[-1])
        chain_q.append(-rem)
    chain_q.pop()
    return [_primitive_int_poly(p) for p in chain_q if not p.is_zero]


def _variations(chain: list[list[int]], point: Fraction) -> int:
    signs = [
        s
        for s in (
            _ipoly_sign_at(c, point.numerator, point.denominator) for c in chain
        )
        if s != 0
    ]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _root_bound(r: list[int]) -> int:
    lead = abs(r[-1])
    biggest = max(abs(c) for c in r)
    return 1 + (biggest + lead - 1) // lead


def _small_divisors(m: int, limit: int) -> list[int] | None:
    """All positive divisors of m, or None when m is too large to factor fast."""
    m = abs(m)
    if m == 0 or m > limit:
        return None
    divisors = []
    d = 1
    while d * d <= m:
        if m % d == 0:
            divisors.append(d)
            if d != m // d:
                divisors.append(m // d)
        d += 1
    return sorted(divisors)


def _rational_roots(r: list[int]) -> tuple[list[Fraction], list[int]]:
    """Peel off exact rational roots (rational root theorem) when the
    constant and leading coefficients are small enough to factor."""
    roots: list[Fraction] = []
    while r and r[0] == 0:
        roots.append(Fraction(0))
        r = r[1:]
    if len(r) <= 1:
        return roots, r
    nums = _small_divisors(r[0], RATIONAL_ROOT_LIMIT)
    dens = _small_divisors(r[-1], 10**6)
    if nums is None or dens is None:
        return roots, r
    candidates = sorted(
        {Fraction(sign * a, b) for a in nums for b in dens for sign in (1, -1)}
    )
    for cand in candidates:
        if len(r) <= 1:
            break
        if _ipoly_sign_at(r, cand.numerator, cand.denominator) == 0:
            roots.append(cand)
            quot, rem = poly_divmod(
                Polynomial(tuple(Fraction(c) for c in r)),
                Polynomial((-cand, Fraction(1))),
            )
            assert rem.is_zero
            r = _primitive_int_poly(quot)
    return roots, r


def _isolate_roots(r: list[int]) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open intervals with exactly one root each (square-free input)."""
    if len(r) <= 1:
        return []
    chain = _sturm_chain(r)
    bound = Fraction(_root_bound(r))
    degree = len(r) - 1

    def sign_at(x: Fraction) -> int:
        return _ipoly_sign_at(r, x.numerator, x.denominator)

    intervals: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound, _variations(chain, -bound), _variations(chain, bound))]
    while stack:
        lo, hi, v_lo, v_hi = stack.pop()
        count = v_lo - v_hi
        if count <= 0:
            continue
        if count == 1:
            intervals.append((lo, hi))
            continue
        split = None
        for k in range(1, degree + 2):
            candidate = lo + (hi - lo) * Fraction(k, degree + 2)
            if sign_at(candidate) != 0:
                split = candidate
                break
        assert split is not None  # deg+1 candidates cannot all be roots
        v_split = _variations(chain, split)
        stack.append((lo, split, v_lo, v_split))
        stack.append((split, hi, v_split, v_hi))
    intervals.sort()
    return intervals


def _refine_root(
    r: list[int], lo: Fraction, hi: Fraction, target_width: Fraction
) -> tuple[Fraction, Fraction]:
    """Bisect to the target width; an exact dyadic hit returns radius zero."""
    sign_lo = _ipoly_sign_at(r, lo.numerator, lo.denominator)
    while hi - lo > target_width:
        mid = (lo + hi) / 2
        sign_mid = _ipoly_sign_at(r, mid.numerator, mid.denominator)
        if sign_mid == 0:
            return mid, Fraction(0)
        if sign_mid == sign_lo:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2, (hi - lo) / 2


@dataclass(frozen=True)
class EigenvalueApprox:
    value: Fraction
    radius: Fraction

    @property
    def exact(self) -> bool:
        return self.radius == 0


def fraction_to_decimal_string(value: Fraction, digits: int) -> str:
    """Truncated decimal expansion with the requested digit count."""
    sign = "-" if value < 0 else ""
    scaled = abs(value) * 10**digits
    whole = scaled.numerator // scaled.denominator
    int_part, frac_part = divmod(whole, 10**digits)
    return f"{sign}{int_part}.{frac_part:0{digits}d}" if digits else f"{sign}{int_part}"


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple[EigenvalueApprox, ...]
    char_poly: Polynomial
    precision_bits: int
    complex_roots_present: bool

    @property
    def degree(self) -> int:
        return self.char_poly.degree or 0

    def certified_separation(self) -> Fraction | None:
        """Lower bound on the gap between consecutive eigenvalues."""
        if len(self.eigenvalues) < 2:
            return None
        gaps = []
        for a, b in zip(self.eigenvalues, self.eigenvalues[1:]):
            gaps.append((b.value - b.radius) - (a.value + a.radius))
        return min(gaps)

    def as_dict(self) -> dict:
        digits = max(self.precision_bits * 3 // 10, 6)
        return {
            "precision_bits": self.precision_bits,
            "decimal_digits": digits,
            "complex_roots_present": self.complex_roots_present,
            "char_poly": [str(c) for c in self.char_poly.coeffs],
            "eigenvalues": [
                {
                    "value": fraction_to_decimal_string(e.value, digits),
                    "radius": str(e.radius),
                    "exact": e.exact,
                }
                for e in self.eigenvalues
            ],
        }


def eigenvalues_hp(
    t: BandedMatrix,
    precision_bits: int = config.DEFAULT_PRECISION_BITS,
    cap: int | None = None,
) -> SpectrumReport:
    """Isolate and refine the real spectrum of the exact characteristic
    polynomial; raises on repeated roots, flags complex ones by counting."""
    if precision_bits < 8:
        raise ContractViolationError("precision must be at least 8 bits")
    _check_spectral_cap(t.n, cap)
    p = char_poly(t, cap=cap)
    square_free_gcd = poly_gcd(p, p.derivative())
    if square_free_gcd.degree not in (None, 0):
        raise MultipleEigenvalueError(
            f"characteristic polynomial has a repeated factor of degree "
            f"{square_free_gcd.degree}"
        )
    r = _primitive_int_poly(p)
    exact_roots, remaining = _rational_roots(r)
    target = Fraction(1, 2 ** (precision_bits + REFINEMENT_GUARD_BITS))
    approxs = [EigenvalueApprox(root, Fraction(0)) for root in exact_roots]
    for lo, hi in _isolate_roots(remaining):
        value, radius = _refine_root(remaining, lo, hi, target)
        approxs.append(EigenvalueApprox(value, radius))
    approxs.sort(key=lambda e: e.value)
    real_count = len(approxs)
    return SpectrumReport(
        tuple(approxs),
        p,
        precision_bits,
        complex_roots_present=real_count < (p.degree or 0),
    )


# ---------------------------------------------------------------------------
# Eigenvector consistency and discrete biorthogonality
# ---------------------------------------------------------------------------


def _kernel_from_adjugate(m: DenseMatrix) -> tuple[Fraction, ...]:
    """Best near-kernel column of the adjugate (exact rank-1 at a simple root)."""
    adj = adjugate(m)
    best: tuple[Fraction, ...] | None = None
    best_size = Fraction(0)
    for c in range(adj.n_cols):
        column = tuple(adj.rows[r][c] for r in range(adj.n_rows))
        size = max(abs(v) for v in column)
        if size > best_size:
            best = column
            best_size = size
    if best is None:
        raise SpectralInconsistencyError(
            "boundary system has a vanishing adjugate; retry at higher precision"
        )
    return best


def _evaluate_families(
    families: tuple[tuple[Polynomial, ...], ...], x: Fraction
) -> list[list[Fraction]]:
    return [[poly.evaluate(x) for poly in fam] for fam in families]


def _int_vector(vec: list[Fraction]) -> tuple[list[int], int]:
    """Clear a rational vector to integers over its common denominator."""
    den = 1
    for v in vec:
        den = den // gcd(den, v.denominator) * v.denominator
    return [v.numerator * (den // v.denominator) for v in vec], den


def _left_boundary_matrix(
    t: BandedMatrix, left_evals: list[list[Fraction]], lam: Fraction
) -> DenseMatrix:
    n, p = t.n, len(left_evals)
    rows = []
    for j in range(n - p, n):
        row = []
        for fam in left_evals:
            acc = -lam * fam[j]
            for i in range(max(0, j - t.q), n):
                coeff = t.entry(i, j)
                if coeff != 0:
                    acc += fam[i] * coeff
            row.append(acc)
        rows.append(tuple(row))
    return DenseMatrix(tuple(rows))


def _right_boundary_matrix(
    t: BandedMatrix, right_evals: list[list[Fraction]], lam: Fraction
) -> DenseMatrix:
    n, q = t.n, len(right_evals)
    rows = []
    for i in range(n - q, n):
        row = []
        for fam in right_evals:
            acc = -lam * fam[i]
            for j in range(max(0, i - t.p), n):
                coeff = t.entry(i, j)
                if coeff != 0:
                    acc += coeff * fam[j]
            row.append(acc)
        rows.append(tuple(row))
    return DenseMatrix(tuple(rows))


@dataclass(frozen=True)
class EigenConsistencyReport:
    """Residuals of the eigen relation for the boundary-combined eigenvectors.

    Interior columns satisfy the recurrence identically (checked exactly);
    the informative residual lives on the truncated boundary columns and
    scales with the eigenvalue approximation error.
    """

    residuals: tuple[Fraction, ...]
    max_residual: Fraction
    interior_exact: bool
    tolerance: Fraction
    passed: bool


def eigen_consistency(
    t: BandedMatrix,
    table: RecursionTable,
    report: SpectrumReport,
    tolerance: Fraction | None = None,
) -> EigenConsistencyReport:
    """Combine each eigenvalue's left families into the boundary-kernel
    eigenvector and measure max |v T - lambda v| (normalized), exactly."""
    n, p = t.n, table.p
    if table.left_count < n:
        raise ContractViolationError("table must cover polynomial indices 0..n-1")
    if tolerance is None:
        tolerance = Fraction(1, 10 ** max(report.precision_bits * 3 // 10 - 2, 1))
    residuals = []
    interior_exact = True
    for eig in report.eigenvalues:
        lam = eig.value
        left_evals = _evaluate_families(table.left, lam)
        for j in range(0, n - p):
            for fam in left_evals:
                acc = -lam * fam[j]
                for i in range(max(0, j - t.q), min(n, j + p + 1)):
                    coeff = t.entry(i, j)
                    if coeff != 0:
                        acc += fam[i] * coeff
                if acc != 0:
                    interior_exact = False
        kernel = _kernel_from_adjugate(_left_boundary_matrix(t, left_evals, lam))
        vector = [
            sum(kernel[a] * left_evals[a][m] for a in range(p)) for m in range(n)
        ]
        scale = max(abs(v) for v in vector)
        if scale == 0:
            raise SpectralInconsistencyError(
                "boundary kernel produced a zero eigenvector"
            )
        worst = Fraction(0)
        for j in range(n):
            acc = -lam * vector[j]
            for i in range(max(0, j - t.q), min(n, j + p + 1)):
                coeff = t.entry(i, j)
                if coeff != 0:
                    acc += vector[i] * coeff
            worst = max(worst, abs(acc))
        residuals.append(worst / scale)
    max_residual = max(residuals) if residuals else Fraction(0)
    return EigenConsistencyReport(
        tuple(residuals),
        max_residual,
        interior_exact,
        tolerance,
        passed=max_residual <= tolerance and interior_exact,
    )


@dataclass(frozen=True)
class DiscreteWeights:
    """Per-eigenvalue boundary kernels and the factored weight blocks
    mu[k][b][a] realizing discrete mixed biorthogonality."""

    eigenvalues: tuple[Fraction, ...]
    left_kernels: tuple[tuple[Fraction, ...], ...]
    right_kernels: tuple[tuple[Fraction, ...], ...]
    mu: tuple[tuple[tuple[Fraction, ...], ...], ...]
    window: int

    def all_positive(self) -> bool:
        return all(v > 0 for block in self.mu for row in block for v in row)


@dataclass(frozen=True)
class BiorthResidual:
    matrix: tuple[tuple[Fraction, ...], ...]
    max_abs: Fraction
    tolerance: Fraction
    passed: bool

    def as_dict(self, digits: int = 40) -> dict:
        return {
            "max_abs": fraction_to_decimal_string(self.max_abs, digits),
            "tolerance": str(self.tolerance),
            "passed": self.passed,
        }


def discrete_biorthogonality(
    t: BandedMatrix,
    ic: InitialConditions | None,
    report: SpectrumReport,
    tolerance: Fraction = Fraction(1, 10**20),
) -> tuple[DiscreteWeights, BiorthResidual]:
    """Solve the truncated boundary systems at every eigenvalue, normalize the
    left/right eigenvector pairing, and verify the weighted polynomial sums
    reproduce the identity on the window below the truncation boundary."""
    n, p, q = t.n, t.p, t.q
    if report.complex_roots_present or len(report.eigenvalues) != n:
        raise SpectralInconsistencyError(
            "spectrum is incomplete; biorthogonality needs n simple real eigenvalues"
        )
    if p == 0 and q == 0:
        eigen = tuple(e.value for e in report.eigenvalues)
        window = n
        identity_rows = tuple(
            tuple(Fraction(int(i == j)) for j in range(window)) for i in range(window)
        )
        weights = DiscreteWeights(
            eigen,
            tuple((Fraction(1),) for _ in range(n)),
            tuple((Fraction(1),) for _ in range(n)),
            tuple(((),) * 0 for _ in range(n)),
            window,
        )
        zero = Fraction(0)
        residual_rows = tuple(
            tuple(identity_rows[i][j] - identity_rows[i][j] for j in range(window))
            for i in range(window)
        )
        return weights, BiorthResidual(residual_rows, zero, tolerance, True)
    if p == 0 or q == 0:
        raise ContractViolationError(
            "discrete biorthogonality needs both polynomial families (p, q >= 1)"
        )
    if ic is None:
        raise ContractViolationError("initial conditions are required when p, q >= 1")
    if ic.p != p or ic.q != q:
        raise ContractViolationError("initial-condition blocks must match the band")
    window = n - max(p, q)
    if window < 1:
        raise ContractViolationError("truncation too small for a verification window")
    table = build_recursion_table(t, ic)
    eigen = tuple(e.value for e in report.eigenvalues)
    left_kernels = []
    right_kernels = []
    mu_blocks = []
    # the gram matrix is accumulated over one shared integer denominator;
    # per-step Fraction normalization on these huge operands dominates the
    # runtime otherwise
    gram_num = [[0] * window for _ in range(window)]
    gram_den = 1
    for lam in eigen:
        left_evals = _evaluate_families(table.left, lam)
        right_evals = _evaluate_families(table.right, lam)
        d = _kernel_from_adjugate(_left_boundary_matrix(t, left_evals, lam))
        c = _kernel_from_adjugate(_right_boundary_matrix(t, right_evals, lam))
        w = [sum(d[a] * left_evals[a][m] for a in range(p)) for m in range(n)]
        u = [sum(c[b] * right_evals[b][m] for b in range(q)) for m in range(n)]
        pairing = sum(x * y for x, y in zip(w, u))
        if pairing == 0:
            raise SpectralInconsistencyError(
                "left/right eigenvectors pair to zero; retry at higher precision"
            )
        d_normalized = tuple(v / pairing for v in d)
        left_kernels.append(d_normalized)
        right_kernels.append(tuple(c))
        mu_blocks.append(
            tuple(tuple(c[b] * da for da in d_normalized) for b in range(q))
        )
        w_ints, w_den = _int_vector(w)
        u_ints, u_den = _int_vector(u)
        scale_num = pairing.denominator
        scale_den = w_den * u_den * pairing.numerator
        if scale_den < 0:
            scale_num, scale_den = -scale_num, -scale_den
        for l_idx in range(window):
            u_l = u_ints[l_idx] * scale_num * gram_den
            row = gram_num[l_idx]
            for m_idx in range(window):
                row[m_idx] = row[m_idx] * scale_den + u_l * w_ints[m_idx]
        gram_den *= scale_den
    residual_rows = tuple(
        tuple(
            Fraction(gram_num[i][j] - (gram_den if i == j else 0), gram_den)
            for j in range(window)
        )
        for i in range(window)
    )
    max_abs_int = max(
        (abs(gram_num[i][j] - (gram_den if i == j else 0)) for i in range(window) for j in range(window)),
        default=0,
    )
    max_abs = Fraction(max_abs_int, gram_den)
    weights = DiscreteWeights(
        eigen, tuple(left_kernels), tuple(right_kernels), tuple(mu_blocks), window
    )
    return weights, BiorthResidual(residual_rows, max_abs, tolerance, max_abs <= tolerance)


# ---------------------------------------------------------------------------
# Favard-style initial data and the weight positivity audit
# ---------------------------------------------------------------------------


def _corner(m: DenseMatrix, size: int, which: str) -> DenseMatrix:
    if which == "leading":
        rows = tuple(tuple(m.rows[i][:size]) for i in range(size))
    elif which == "trailing":
        rows = tuple(tuple(m.rows[i][-size:]) for i in range(m.n_rows - size, m.n_rows))
    else:
        raise ContractViolationError("corner must be 'leading' or 'trailing'")
    return DenseMatrix(rows)


def favard_initial_conditions(
    f: PBFactorization,
    corner: str = "leading",
    cal_a: DenseMatrix | None = None,
    cal_b: DenseMatrix | None = None,
) -> InitialConditions:
    """Initial data from the companion matrices: inverse of (corner of the
    lower companion) @ calA on the left, mirrored on the right.

    The companion matrices are one size larger than the blocks they seed, so
    both square readings (leading/trailing corner) are offered.
    """
    p, q = f.p, f.q
    if p < 1 or q < 1:
        raise ContractViolationError("companion-seeded initial data needs p, q >= 1")
    lam_corner = _corner(lambda_matrix(f), p, corner)
    ups_corner = _corner(upsilon_matrix(f), q, corner)
    cal_a = DenseMatrix.identity(p) if cal_a is None else cal_a
    cal_b = DenseMatrix.identity(q) if cal_b is None else cal_b
    a0 = lam_corner.mul(cal_a).inverse()
    b0 = cal_b.mul(ups_corner).inverse()
    return InitialConditions(a0, b0)


@dataclass(frozen=True)
class PositivityAudit:
    corner_findings: tuple[tuple[str, str], ...]
    weights_positive: bool
    violations: tuple[tuple[int, int, int, str], ...]

    def as_dict(self) -> dict:
        return {
            "corner_findings": {k: v for k, v in self.corner_findings},
            "weights_positive": self.weights_positive,
            "violations": [
                {"eigenvalue": k, "b": b, "a": a, "value": v}
                for k, b, a, v in self.violations
            ],
        }


def positivity_audit(
    weights: DiscreteWeights,
    ic: InitialConditions,
    f: PBFactorization,
    oracle_cap: int | None = None,
) -> PositivityAudit:
    """Classify which corner reading (if either) the supplied initial data
    satisfies, then report the sign structure of the discrete weights.

    Findings are recorded, not asserted: "tp" means the residual factor is
    unitriangular totally positive, "nonnegative" only entrywise so, "no"
    that the hypothesis fails for that reading.
    """
    findings = []
    for corner in ("leading", "trailing"):
        lam_corner = _corner(lambda_matrix(f), f.p, corner)
        ups_corner = _corner(upsilon_matrix(f), f.q, corner)
        try:
            cal_a = lam_corner.inverse().mul(ic.a0.inverse())
            cal_b = ic.b0.inverse().mul(ups_corner.inverse())
        except ContractViolationError:
            findings.append((corner, "no"))
            continue
        findings.append((corner, _classify_residual_factor(cal_a, cal_b, oracle_cap)))
    violations = []
    for k, block in enumerate(weights.mu):
        for b, row in enumerate(block):
            for a, value in enumerate(row):
                if value <= 0:
                    violations.append((k, b + 1, a + 1, str(value)))
    return PositivityAudit(
        tuple(findings), weights_positive=not violations, violations=tuple(violations)
    )


def _unitriangular(m: DenseMatrix, upper: bool) -> bool:
    n = m.n_rows
    for i in range(n):
        if m.rows[i][i] != 1:
            return False
        for j in range(n):
            below = j < i if upper else j > i
            if below and m.rows[i][j] != 0:
                return False
    return True


def _classify_residual_factor(
    cal_a: DenseMatrix, cal_b: DenseMatrix, oracle_cap: int | None
) -> str:
    if not (_unitriangular(cal_a, upper=True) and _unitriangular(cal_b, upper=False)):
        return "no"
    if (
        is_upper_triangular_tp(cal_a, cap=oracle_cap).verdict
        and is_lower_triangular_tp(cal_b, cap=oracle_cap).verdict
    ):
        return "tp"
    nonneg = all(v >= 0 for row in cal_a.rows for v in row) and all(
        v >= 0 for row in cal_b.rows for v in row
    )
    return "nonnegative" if nonneg else "no"
