"""Factorization round trips, Darboux permutations, and companion matrices."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from bandedtp import (
    BandedMatrix,
    ContractViolationError,
    DenseMatrix,
    NotBTPError,
    PBFactorization,
    char_poly,
    darboux,
    is_BTP_oracle,
    is_lower_triangular_tp,
    is_upper_triangular_tp,
    lambda_matrix,
    pbf_compose,
    pbf_factorize,
    random_pbf,
    upsilon_matrix,
)

from conftest import example_3x3, random_tn_matrix


def ones_factorization(n=3, p=1, q=1) -> PBFactorization:
    one = Fraction(1)
    return PBFactorization(
        n,
        tuple(tuple(one for _ in range(n - 1)) for _ in range(p)),
        tuple(one for _ in range(n)),
        tuple(tuple(one for _ in range(n - 1)) for _ in range(q)),
    )


class TestCompose:
    def test_tridiagonal_example(self):
        t = pbf_compose(ones_factorization())
        assert t.rows == example_3x3().rows
        assert (t.p, t.q) == (1, 1)

    def test_padded_lower_band_two(self):
        f = PBFactorization(
            3,
            ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(1))),
            (Fraction(1),) * 3,
            (),
        )
        t = pbf_compose(f)
        assert t.rows == BandedMatrix.from_rows(
            [[1, 0, 0], [1, 1, 0], [1, 2, 1]]
        ).rows
        assert (t.p, t.q) == (2, 0)

    def test_empty_factors_give_identity(self):
        f = PBFactorization(3, (), (Fraction(1),) * 3, ())
        assert pbf_compose(f).rows == DenseMatrix.identity(3).rows

    def test_validation(self):
        with pytest.raises(ContractViolationError):
            PBFactorization(3, ((Fraction(1),),), (Fraction(1),) * 3, ())
        with pytest.raises(ContractViolationError):
            PBFactorization(2, (), (Fraction(0), Fraction(1)), ())
        with pytest.raises(ContractViolationError):
            PBFactorization(2, ((Fraction(-1),),), (Fraction(1), Fraction(1)), ())


class TestFactorize:
    def test_running_example_factors(self):
        f = pbf_factorize(example_3x3())
        assert f.lower == ((Fraction(1), Fraction(1)),)
        assert f.diag == (Fraction(1),) * 3
        assert f.upper == ((Fraction(1), Fraction(1)),)

    def test_identity_with_declared_band_is_rejected(self):
        t = BandedMatrix(2, 1, 1, ((1, 0), (0, 1)))
        with pytest.raises(NotBTPError) as err:
            pbf_factorize(t)
        assert err.value.position == (2, 1)

    def test_round_trip_is_exact(self, rng):
        for _ in range(30):
            n = rng.randint(2, 8)
            p = rng.randint(0, min(2, n - 1))
            q = rng.randint(0, min(2, n - 1))
            t = pbf_compose(random_pbf(rng.randrange(2**30), n, p, q))
            f = pbf_factorize(t)
            assert pbf_compose(f).rows == t.rows
            assert f.is_canonical

    def test_raises_exactly_when_oracle_rejects(self, rng):
        for _ in range(25):
            n = rng.randint(2, 6)
            p = rng.randint(0, min(2, n - 1))
            q = rng.randint(0, min(2, n - 1))
            t = random_tn_matrix(rng.randrange(2**30), n, p, q)
            expected = is_BTP_oracle(t).verdict
            try:
                pbf_factorize(t)
                succeeded = True
            except NotBTPError:
                succeeded = False
            assert succeeded == expected


class TestDarboux:
    def test_positive_rotation(self):
        t = darboux(ones_factorization(), 1)
        assert t.rows == BandedMatrix.from_rows([[2, 1, 0], [1, 2, 1], [0, 1, 1]]).rows

    def test_negative_rotation(self):
        t = darboux(ones_factorization(), -1)
        assert t.rows == BandedMatrix.from_rows([[2, 1, 0], [1, 2, 1], [0, 1, 1]]).rows

    def test_full_cycle_is_similar(self, rng):
        for _ in range(6):
            n = rng.randint(3, 6)
            p = rng.randint(1, 2)
            q = rng.randint(1, 2)
            f = random_pbf(rng.randrange(2**30), n, p, q)
            base = char_poly(pbf_compose(f))
            assert char_poly(darboux(f, p)) == base
            assert char_poly(darboux(f, -q)) == base

    def test_range_errors(self):
        f = ones_factorization()
        for bad in (0, 2, -2):
            with pytest.raises(ContractViolationError):
                darboux(f, bad)

    def test_preserves_positivity(self, rng):
        for _ in range(10):
            n = rng.randint(3, 6)
            p = rng.randint(1, 2)
            q = rng.randint(1, 2)
            f = random_pbf(rng.randrange(2**30), n, p, q)
            for k in list(range(1, p + 1)) + [-m for m in range(1, q + 1)]:
                assert is_BTP_oracle(darboux(f, k)).verdict


class TestCompanions:
    def test_single_lower_factor(self):
        f = ones_factorization(n=3, p=1, q=1)
        assert lambda_matrix(f) == DenseMatrix.from_rows([[1, 1], [0, 1]])

    def test_two_allones_factors(self):
        f = ones_factorization(n=4, p=2, q=2)
        assert lambda_matrix(f) == DenseMatrix.from_rows(
            [[1, 1, 1], [0, 1, 2], [0, 0, 1]]
        )

    def test_prefix_product_entries(self):
        a, a2, b = Fraction(2), Fraction(5), Fraction(3)
        f = PBFactorization(
            4,
            ((a, a2, Fraction(1)), (b, Fraction(1), Fraction(1))),
            (Fraction(1),) * 4,
            (),
        )
        lam = lambda_matrix(f)
        assert lam.rows[1][2] == a + b
        assert lam.rows[2][2] == a2 * b

    def test_upsilon_transposes_lambda_under_all_ones(self):
        f = ones_factorization(n=4, p=2, q=2)
        assert upsilon_matrix(f) == lambda_matrix(f).transpose()

    def test_size_precondition(self):
        f = ones_factorization(n=3, p=2, q=2)
        lambda_matrix(f)
        small = PBFactorization(
            2,
            ((Fraction(1),), (Fraction(1),)),
            (Fraction(1), Fraction(1)),
            (),
        )
        with pytest.raises(ContractViolationError):
            lambda_matrix(small)

    def test_companions_are_triangular_totally_positive(self, rng):
        for _ in range(10):
            p = rng.randint(1, 4)
            q = rng.randint(1, 4)
            n = max(p, q) + rng.randint(1, 3)
            f = random_pbf(rng.randrange(2**30), n, p, q)
            assert is_upper_triangular_tp(lambda_matrix(f)).verdict
            assert is_lower_triangular_tp(upsilon_matrix(f)).verdict


class TestRandomPBF:
    def test_deterministic(self):
        assert random_pbf(1, 4, 1, 1) == random_pbf(1, 4, 1, 1)

    def test_diagonal_only(self):
        f = random_pbf(1, 3, 0, 0)
        assert f.lower == () and f.upper == ()
        assert all(d > 0 for d in f.diag)

    def test_invalid_bounds(self):
        with pytest.raises(ContractViolationError):
            random_pbf(1, 4, 1, 1, value_bounds=((0, 5), (1, 3)))
        with pytest.raises(ContractViolationError):
            random_pbf(1, 2, 2, 0)

    def test_composes_to_certified_positive(self, rng):
        for _ in range(12):
            n = rng.randint(2, 6)
            p = rng.randint(0, min(2, n - 1))
            q = rng.randint(0, min(2, n - 1))
            t = pbf_compose(random_pbf(rng.randrange(2**30), n, p, q))
            assert is_BTP_oracle(t).verdict


class TestFactorLemma:
    def test_positive_bidiagonal_factors_are_banded_tp(self, rng):
        for _ in range(10):
            n = rng.randint(2, 6)
            vec = tuple(
                Fraction(rng.randint(1, 4), rng.randint(1, 3)) for _ in range(n - 1)
            )
            lower = PBFactorization(n, (vec,), (Fraction(1),) * n, ())
            upper = PBFactorization(n, (), (Fraction(1),) * n, (vec,))
            assert is_BTP_oracle(pbf_compose(lower)).verdict
            assert is_BTP_oracle(pbf_compose(upper)).verdict
