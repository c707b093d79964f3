"""Shared generators and slow-but-independent oracles for the suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from bandedtp import BandedMatrix, DenseMatrix, PBFactorization, pbf_compose, random_pbf


def tridiagonal_121(n: int) -> BandedMatrix:
    """The running example pattern: 1 on the off-diagonals, 2 on the
    diagonal except the (1,1) entry which is 1."""
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 1 if i == 0 else 2
        if i + 1 < n:
            rows[i][i + 1] = 1
        if i > 0:
            rows[i][i - 1] = 1
    return BandedMatrix.from_rows(rows)


def example_3x3() -> BandedMatrix:
    return BandedMatrix.from_rows([[1, 1, 0], [1, 2, 1], [0, 1, 2]])


def random_tn_factorization(seed: int, n: int, p: int, q: int) -> PBFactorization:
    """Nonnegative bidiagonal factors (zeros allowed): composes to a totally
    nonnegative banded matrix."""
    rng = random.Random(seed)

    def entry() -> Fraction:
        return Fraction(rng.randint(0, 3), rng.randint(1, 2))

    lower = tuple(tuple(entry() for _ in range(n - 1)) for _ in range(p))
    diag = tuple(Fraction(rng.randint(1, 3), rng.randint(1, 2)) for _ in range(n))
    upper = tuple(tuple(entry() for _ in range(n - 1)) for _ in range(q))
    return PBFactorization(n, lower, diag, upper)


def random_tn_matrix(seed: int, n: int, p: int, q: int) -> BandedMatrix:
    return pbf_compose(random_tn_factorization(seed, n, p, q))


def random_btp_matrix(seed: int, n: int, p: int, q: int) -> BandedMatrix:
    return pbf_compose(random_pbf(seed, n, p, q))


def random_dense(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> DenseMatrix:
    return DenseMatrix.from_rows(
        [
            [Fraction(rng.randint(lo, hi), rng.randint(1, 3)) for _ in range(n)]
            for _ in range(n)
        ]
    )


@pytest.fixture
def rng():
    return random.Random(20240801)
