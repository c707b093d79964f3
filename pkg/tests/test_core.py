"""Substrate checks: index combinatorics and exact minors."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from bandedtp import (
    ContractViolationError,
    DenseMatrix,
    IndexSeq,
    dispersion,
    minor,
    seq,
    seq_leq,
    submatrix,
    translate,
)
from bandedtp.core import minor_expansion

from conftest import example_3x3, random_dense


class TestIndexSeq:
    def test_validation(self):
        with pytest.raises(ContractViolationError):
            seq([1, 1], 3)
        with pytest.raises(ContractViolationError):
            seq([0, 2], 3)
        with pytest.raises(ContractViolationError):
            seq([2, 4], 3)
        assert seq([1, 3], 3).labels == (1, 3)

    def test_dispersion_contiguous(self):
        assert dispersion(seq([2, 3, 4], 5)) == 0

    def test_dispersion_gaps(self):
        assert dispersion(seq([1, 3, 4], 5)) == 1
        assert dispersion(seq([1, 5], 5)) == 3

    def test_translate_unclamped(self):
        assert translate(seq([1, 2], 5), 2) == (3, 4)

    def test_translate_clamps_tail(self):
        assert translate(seq([3, 4, 5], 5), 2) == (5, 5, 5)

    def test_translate_identity_shift(self):
        assert translate(seq([1], 3), 0) == (1,)

    def test_translate_preserves_dispersion_when_unclamped(self):
        rng = random.Random(7)
        for _ in range(100):
            n = rng.randint(2, 9)
            r = rng.randint(1, n)
            labels = sorted(rng.sample(range(1, n + 1), r))
            s = rng.randint(0, n - labels[-1])
            shifted = translate(seq(labels, n), s)
            assert dispersion(shifted) == dispersion(labels)

    def test_seq_leq(self):
        assert seq_leq(seq([1, 2, 3], 4), seq([1, 2, 3], 4))
        assert seq_leq(seq([1, 3], 4), seq([2, 4], 4))
        assert not seq_leq(seq([1, 4], 4), seq([2, 3], 4))

    def test_seq_leq_length_mismatch(self):
        with pytest.raises(ContractViolationError):
            seq_leq((1, 2), (1, 2, 3))


class TestMinor:
    def test_identity_principal(self):
        m = DenseMatrix.identity(3)
        assert minor(m, [1, 2], [1, 2]) == 1

    def test_full_determinant(self):
        assert minor(example_3x3(), [1, 2, 3], [1, 2, 3]) == 1

    def test_bidiagonal_offdiagonal_minor(self):
        lower = DenseMatrix.from_rows([[1, 0, 0], [2, 1, 0], [0, 3, 1]])
        assert minor(lower, [2, 3], [1, 2]) == 6

    def test_matches_cofactor_expansion(self):
        rng = random.Random(11)
        for _ in range(60):
            n = rng.randint(1, 5)
            m = random_dense(rng, n)
            r = rng.randint(1, min(n, 4))
            rows = sorted(rng.sample(range(1, n + 1), r))
            cols = sorted(rng.sample(range(1, n + 1), r))
            assert minor(m, rows, cols) == minor_expansion(m, rows, cols)

    def test_errors(self):
        m = DenseMatrix.identity(3)
        with pytest.raises(ContractViolationError):
            minor(m, [1, 2], [1])
        with pytest.raises(ContractViolationError):
            minor(m, [1, 4], [1, 2])


class TestSubmatrix:
    def test_improper_is_identity(self):
        m = example_3x3()
        assert submatrix(m, [1, 2, 3], [1, 2, 3]) == m.to_dense()

    def test_single_entry(self):
        assert submatrix(example_3x3(), [1], [3]).rows == ((Fraction(0),),)

    def test_intersection(self):
        got = submatrix(example_3x3(), [1, 3], [2, 3])
        assert got == DenseMatrix.from_rows([[1, 0], [1, 2]])


class TestExactArithmetic:
    def test_canonical_closure(self):
        rng = random.Random(3)
        for _ in range(200):
            a = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
            b = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
            assert (a + b) - b == a
            if b != 0:
                assert (a * b) / b == a

    def test_determinant_multiplicative(self):
        rng = random.Random(5)
        for _ in range(25):
            n = rng.randint(1, 5)
            m1, m2 = random_dense(rng, n), random_dense(rng, n)
            full = list(range(1, n + 1))
            assert minor(m1.mul(m2), full, full) == minor(m1, full, full) * minor(
                m2, full, full
            )

    def test_cauchy_binet(self):
        rng = random.Random(9)
        for _ in range(10):
            m1, m2 = random_dense(rng, 4), random_dense(rng, 4)
            prod = m1.mul(m2)
            for rows in combinations(range(1, 5), 2):
                for cols in combinations(range(1, 5), 2):
                    expected = sum(
                        minor(m1, rows, gamma) * minor(m2, gamma, cols)
                        for gamma in combinations(range(1, 5), 2)
                    )
                    assert minor(prod, rows, cols) == expected


class TestDenseMatrix:
    def test_inverse_round_trip(self, rng):
        for _ in range(20):
            n = rng.randint(1, 5)
            m = random_dense(rng, n)
            full = list(range(1, n + 1))
            if minor(m, full, full) == 0:
                with pytest.raises(ContractViolationError):
                    m.inverse()
                continue
            assert m.mul(m.inverse()) == DenseMatrix.identity(n)

    def test_shape_errors(self):
        with pytest.raises(ContractViolationError):
            DenseMatrix.from_rows([[1, 2], [3]])
        with pytest.raises(ContractViolationError):
            DenseMatrix.from_rows([[1, 2]]).inverse()
