"""Band structure: triviality classification and minor enumeration."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import pytest

from bandedtp import (
    BandedMatrix,
    ContractViolationError,
    DenseMatrix,
    band_profile,
    delta_minors,
    enumerate_nontrivial_contiguous,
    enumerate_nontrivial_initial,
    is_trivial_submatrix,
    minor,
    nontrivial_test_by_order,
)

from conftest import example_3x3, random_tn_matrix


class TestBandProfile:
    def test_identity(self):
        assert band_profile(DenseMatrix.identity(4)) == (0, 0)

    def test_tridiagonal(self):
        assert band_profile(example_3x3().to_dense()) == (1, 1)

    def test_dense(self):
        m = DenseMatrix.from_rows([[1, 1, 1], [1, 1, 1], [1, 1, 1]])
        assert band_profile(m) == (2, 2)

    def test_requires_square(self):
        with pytest.raises(ContractViolationError):
            band_profile(DenseMatrix.from_rows([[1, 2]]))


class TestBandedMatrix:
    def test_rejects_out_of_band_entry(self):
        with pytest.raises(ContractViolationError):
            BandedMatrix(3, 0, 1, ((1, 1, 0), (1, 1, 1), (0, 1, 1)))

    def test_declared_band_must_dominate(self):
        dense = example_3x3().to_dense()
        with pytest.raises(ContractViolationError):
            BandedMatrix.from_dense(dense, p=0, q=1)
        wide = BandedMatrix.from_dense(dense, p=2, q=2)
        assert (wide.p, wide.q) == (2, 2)

    def test_out_of_band_reads_are_zero(self):
        t = example_3x3()
        assert t.entry(0, 2) == 0


class TestTriviality:
    def test_upper_triangular_paper_case(self):
        rows = [[1 if j >= i else 0 for j in range(4)] for i in range(4)]
        t = BandedMatrix(4, 0, 3, tuple(tuple(r) for r in rows))
        assert is_trivial_submatrix(t, (1, 3, 4), (1, 2, 4))

    def test_tridiagonal_inband(self):
        assert not is_trivial_submatrix(example_3x3(), (1, 2), (2, 3))

    def test_tridiagonal_above_band(self):
        assert is_trivial_submatrix(example_3x3(), (1,), (3,))

    def test_order_characterization_examples(self):
        t = example_3x3()
        assert nontrivial_test_by_order(t, (1, 2), (2, 3))
        assert not nontrivial_test_by_order(t, (1,), (3,))
        assert nontrivial_test_by_order(t, (1, 2, 3), (1, 2, 3))

    def test_order_agrees_with_diagonal_rule_exhaustively(self):
        for n, p, q in [(4, 1, 1), (5, 2, 1), (6, 1, 2), (6, 0, 2), (5, 3, 0)]:
            rows = [
                [1 if -p <= j - i <= q else 0 for j in range(n)] for i in range(n)
            ]
            t = BandedMatrix(n, p, q, tuple(tuple(r) for r in rows))
            labels = range(1, n + 1)
            for r in range(1, n + 1):
                for sel_rows in combinations(labels, r):
                    for sel_cols in combinations(labels, r):
                        assert is_trivial_submatrix(
                            t, sel_rows, sel_cols
                        ) == (not nontrivial_test_by_order(t, sel_rows, sel_cols))


class TestEnumerations:
    def test_contiguous_size_one_counts_inband_positions(self):
        triples = enumerate_nontrivial_contiguous(example_3x3())
        assert sum(1 for (_, _, r) in triples if r == 1) == 7

    def test_contiguous_full_size(self):
        triples = enumerate_nontrivial_contiguous(example_3x3())
        assert [t for t in triples if t[2] == 3] == [(1, 1, 3)]

    def test_contiguous_lower_band(self):
        rows = ((1, 0, 0), (1, 1, 0), (1, 1, 1))
        t = BandedMatrix(3, 2, 0, rows)
        size_two = [(i, j) for (i, j, r) in enumerate_nontrivial_contiguous(t) if r == 2]
        assert size_two == [(1, 1), (2, 1), (2, 2)]

    def test_initial_tridiagonal(self):
        pairs = set(enumerate_nontrivial_initial(example_3x3()))
        for r in (1, 2):
            head = tuple(range(1, r + 1))
            expected = {(head, tuple(range(j, j + r))) for j in (1, 2)}
            expected |= {(tuple(range(i, i + r)), head) for i in (1, 2)}
            assert {pair for pair in pairs if len(pair[0]) == r} == expected

    def test_initial_upper_triangular(self):
        rows = [[1 if j >= i else 0 for j in range(3)] for i in range(3)]
        t = BandedMatrix(3, 0, 2, tuple(tuple(r) for r in rows))
        pairs = set(enumerate_nontrivial_initial(t))
        # p = 0: the only column-initial selections are the leading principal ones
        for rows_sel, cols_sel in pairs:
            if cols_sel == tuple(range(1, len(cols_sel) + 1)):
                assert rows_sel == cols_sel

    def test_initial_full_size_is_determinant(self):
        pairs = enumerate_nontrivial_initial(example_3x3())
        full = [(rows, cols) for rows, cols in pairs if len(rows) == 3]
        assert set(full) == {((1, 2, 3), (1, 2, 3))}


class TestDeltaMinors:
    def test_running_example(self):
        report = delta_minors(example_3x3())
        upper = {d.index: (d.value, d.trivial) for d in report.upper}
        lower = {d.index: (d.value, d.trivial) for d in report.lower}
        assert upper == {1: (0, True), 2: (1, False), 3: (1, False)}
        assert lower == {1: (0, True), 2: (1, False), 3: (1, False)}

    def test_lower_bidiagonal_product_form(self):
        t = BandedMatrix(3, 1, 0, ((1, 0, 0), (2, 1, 0), (0, 3, 1)))
        report = delta_minors(t)
        lower = {d.index: d.value for d in report.lower if not d.trivial}
        upper = {d.index: d.value for d in report.upper if not d.trivial}
        assert lower == {2: 6, 3: 1}
        assert upper == {3: 1}
        assert all(d.value == 0 for d in report.upper if d.trivial)

    def test_identity_two(self):
        t = BandedMatrix(2, 0, 0, ((1, 0), (0, 1)))
        report = delta_minors(t)
        assert [(d.index, d.value) for d in report.upper if not d.trivial] == [(2, 1)]
        assert [(d.index, d.value) for d in report.lower if not d.trivial] == [(2, 1)]

    def test_nontrivial_count_is_band_plus_two(self):
        rng = random.Random(13)
        for _ in range(20):
            n = rng.randint(2, 6)
            p = rng.randint(0, n - 1)
            q = rng.randint(0, n - 1)
            t = random_tn_matrix(rng.randrange(2**20), n, p, q)
            assert delta_minors(t).nontrivial_count == t.p + t.q + 2

    def test_trivial_entries_vanish_on_tn_inputs(self):
        rng = random.Random(17)
        for _ in range(20):
            n = rng.randint(2, 6)
            p = rng.randint(0, n - 1)
            q = rng.randint(0, n - 1)
            t = random_tn_matrix(rng.randrange(2**20), n, p, q)
            report = delta_minors(t)
            assert all(d.value == 0 for d in report.upper + report.lower if d.trivial)


class TestStructuralZeroProperties:
    def test_trivial_submatrices_of_tn_are_singular(self):
        rng = random.Random(23)
        for _ in range(12):
            n = rng.randint(3, 5)
            p = rng.randint(0, 2)
            q = rng.randint(0, 2)
            t = random_tn_matrix(rng.randrange(2**20), n, min(p, n - 1), min(q, n - 1))
            labels = range(1, n + 1)
            for r in range(1, n + 1):
                for rows in combinations(labels, r):
                    for cols in combinations(labels, r):
                        if is_trivial_submatrix(t, rows, cols):
                            assert minor(t, rows, cols) == 0

    def test_shadow_of_above_band_zero(self):
        rng = random.Random(29)
        for _ in range(12):
            n = rng.randint(3, 6)
            t = random_tn_matrix(rng.randrange(2**20), n, 1, 1)
            for i in range(n):
                for j in range(n):
                    if j - i > t.q:
                        # right shadow: everything weakly above and weakly right
                        assert all(
                            t.entry(i2, j2) == 0
                            for i2 in range(i + 1)
                            for j2 in range(j, n)
                        )
                    if i - j > t.p:
                        assert all(
                            t.entry(i2, j2) == 0
                            for i2 in range(i, n)
                            for j2 in range(j + 1)
                        )
