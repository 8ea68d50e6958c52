import itertools
from fractions import Fraction
from math import comb, factorial

import pytest

from wblocks.blockan import (
    BlockDataError,
    FormulaBlockData,
    MatrixBlockData,
    cartan_entry,
    cartan_matrix,
    cartan_oracle,
    compositions_in_window,
    d_invariant,
    end_dim,
    graded_cartan,
    h_count,
    h_separation,
    h_upper_bound_report,
    neighbor_test,
    normalize_gamma,
    recover_invariants,
    stable_end_dim,
    verma_mult,
)
from wblocks.combinat import BlockKey, Composition
from wblocks.laurent import LaurentQ, qfact


def comp(parts, offset=0):
    return Composition(parts, offset)


def key(mu_parts, mu_off, nu_parts, nu_off, t, m, n):
    return BlockKey(comp(mu_parts, mu_off), comp(nu_parts, nu_off), t, m, n)


XI_11 = BlockKey(Composition(), Composition(), 1, 1, 1)
XI_22 = BlockKey(Composition(), Composition(), 2, 2, 2)


class TestVermaMult:
    def test_diagonal(self):
        assert verma_mult(XI_11, Composition.eps(3), Composition.eps(3)) == 1

    def test_single_step(self):
        assert verma_mult(XI_11, Composition.eps(3), Composition.eps(2)) == 1

    def test_binomial_two(self):
        lam = comp([2], 3)
        kap = comp([1, 1], 2)
        assert verma_mult(XI_22, lam, kap) == 2

    def test_unreachable(self):
        assert verma_mult(XI_11, Composition.eps(3), Composition.eps(5)) == 0

    def test_size_check(self):
        with pytest.raises(ValueError):
            verma_mult(XI_11, comp([1, 1]), Composition.eps(0))

    def test_total_is_2_to_t(self):
        for xi, lam in [
            (XI_22, comp([2])),
            (XI_22, comp([1, 1])),
            (key([1], 0, [2], 1, 2, 3, 4), comp([1, 0, 1], 3)),
        ]:
            lo, hi = lam.support_bounds()
            total = sum(
                verma_mult(xi, lam, kap)
                for kap in compositions_in_window(xi.t, lo - xi.t, hi + 1)
            )
            assert total == 2**xi.t


class TestCartan:
    def test_typical_block_is_multinomial(self):
        xi = key([2, 1], 0, [1], 2, 0, 3, 1)
        z = Composition()
        expect = factorial(3) * factorial(1) // (
            factorial(2) * factorial(1) * factorial(1)
        )
        assert cartan_entry(xi, z, z) == expect == cartan_oracle(xi, z, z)

    def test_m1n1_typical_is_one(self):
        xi = key([1], 0, [1], 4, 0, 1, 1)
        z = Composition()
        assert cartan_entry(xi, z, z) == 1

    def test_m1n1_atypical_diagonal_two(self):
        e = Composition.eps(7)
        assert cartan_entry(XI_11, e, e) == 2 == cartan_oracle(XI_11, e, e)

    @pytest.mark.parametrize("i,j,expect", [(0, 0, 2), (0, 1, 1), (1, 0, 1), (0, 2, 0), (3, 0, 0)])
    def test_m1n1_neighbor_pattern(self, i, j, expect):
        assert cartan_entry(XI_11, Composition.eps(i), Composition.eps(j)) == expect

    def test_closed_equals_oracle_with_core(self):
        xi = key([1], 0, [1, 1], 1, 2, 3, 4)
        lams = compositions_in_window(2, -1, 2)
        for lam in lams:
            for kap in lams:
                assert cartan_entry(xi, lam, kap) == cartan_oracle(xi, lam, kap)

    def test_symmetry(self):
        xi = key([1], 2, [1], 0, 2, 3, 3)
        lams = compositions_in_window(2, 0, 2)
        for lam in lams:
            for kap in lams:
                assert cartan_entry(xi, lam, kap) == cartan_entry(xi, kap, lam)

    def test_matrix_jobs_deterministic(self):
        lams = compositions_in_window(1, -1, 1)
        a = cartan_matrix(XI_11, lams, jobs=1)
        b = cartan_matrix(XI_11, lams, jobs=4)
        assert a == b


class TestGradedCartan:
    def test_m1n1_diagonal(self):
        e = Composition.eps(3)
        assert graded_cartan(XI_11, e, e) == LaurentQ({0: 1, 2: 1})

    def test_eval_at_one(self):
        xi = key([2], 0, [1], 1, 1, 3, 2)
        lams = compositions_in_window(1, -1, 2)
        for lam in lams:
            for kap in lams:
                g = graded_cartan(xi, lam, kap)
                assert g.eval1() == cartan_entry(xi, lam, kap)

    def test_poly_in_q_nonneg(self):
        xi = key([1], 0, [1], 1, 2, 3, 3)
        lams = compositions_in_window(2, 0, 2)
        for lam in lams:
            for kap in lams:
                g = graded_cartan(xi, lam, kap)
                assert g.is_poly_in_q() and g.has_nonneg_coeffs()

    def test_top_degree_diagonal(self):
        for xi in [XI_11, XI_22, key([1], 0, [2], 1, 1, 2, 3)]:
            d = xi.m**2 + xi.n**2 - sum(g * g for g in xi.gamma.parts)
            for lam in compositions_in_window(xi.t, 3, 4):
                assert graded_cartan(xi, lam, lam).max_exp() == d

    def test_generic_diagonal_product_form(self):
        # an isolated 1 far from the core: (1+q^2)^t [m]![n]!/prod [gamma]!
        xi = key([1], 0, [2], 1, 1, 2, 3)
        lam = Composition.eps(5)
        expect = (qfact(2) * qfact(3)).divexact(qfact(1) * qfact(2))
        expect = expect.shift(comb(2, 2) + comb(3, 2) - comb(2, 2)) * LaurentQ({0: 1, 2: 1})
        assert graded_cartan(xi, lam, lam) == expect


class TestHCount:
    def test_h_of_single_one(self):
        assert h_count(Composition.eps(0)) == 3

    @pytest.mark.parametrize("t", range(1, 7))
    def test_h_of_concentrated(self, t):
        assert h_count(Composition.eps(2, t)) == comb(t + 2, 2)

    def test_h_two_is_six(self):
        assert h_count(Composition.eps(0, 2)) == 6

    def test_strict_minimality(self):
        for t in range(1, 5):
            for parts in itertools.product(range(t + 1), repeat=3):
                if sum(parts) != t or len([p for p in parts if p]) < 2:
                    continue
                assert h_count(comp(parts)) > comb(t + 2, 2)

    def test_separation_at_zero_gap(self):
        lam = comp([2, 0, 1, 1], 0)
        left, right = h_separation(lam, 1)
        assert h_count(lam) == h_count(left) * h_count(right)

    def test_translation_invariant(self):
        lam = comp([1, 2])
        assert h_count(lam) == h_count(lam.shifted(40))

    def test_matches_cartan_row_support(self):
        xi = key([1], 0, [1], 1, 2, 3, 3)
        for lam in compositions_in_window(2, 0, 1):
            lo, hi = lam.support_bounds()
            kaps = compositions_in_window(2, lo - 1, hi + 1)
            nz = sum(1 for k in kaps if cartan_entry(xi, lam, k))
            assert nz == h_count(lam)

    def test_upper_bound_scan_runs(self):
        assert h_upper_bound_report(2, 3) == []


class TestEndDims:
    def test_gamma_zero_value(self):
        assert end_dim(XI_11, 0) == 2
        assert end_dim(XI_22, 5) == factorial(2) ** 2 * comb(4, 2) // factorial(2) ** 2

    def test_requires_atypical(self):
        xi = key([1], 0, [1], 1, 0, 1, 1)
        with pytest.raises(ValueError):
            end_dim(xi, 0)

    def test_equals_cartan_diagonal(self):
        for xi in [XI_11, XI_22, key([1], 0, [2], 1, 1, 2, 3), key([2], 2, [1], 0, 2, 4, 3)]:
            for i in range(-1, 4):
                lam = Composition.eps(i, xi.t)
                assert end_dim(xi, i) == cartan_entry(xi, lam, lam)

    def test_d_invariant_normalization(self):
        xi = key([2], 1, [1], 0, 2, 4, 3)
        # far from the core the rescaled invariant equals binom(2t, t)
        assert d_invariant(xi, 8) == Fraction(comb(4, 2))
        assert end_dim(xi, 8) == stable_end_dim(xi)

    @pytest.mark.parametrize("i,j", [(0, 0), (0, 1), (1, 0), (0, 2), (5, 0)])
    def test_neighbor_test(self, i, j):
        assert neighbor_test(XI_22, i, j) == (abs(i - j) <= 1)


class TestRecovery:
    @pytest.mark.parametrize(
        "xi",
        [
            XI_11,
            XI_22,
            key([1], 0, [2], 1, 1, 2, 3),
            key([1, 1], 0, [1], 3, 1, 3, 2),
            key([2], 1, [1], 0, 2, 4, 3),
        ],
    )
    def test_round_trip(self, xi):
        for reverse in (False, True):
            data = FormulaBlockData(xi, -3, 4, reverse=reverse)
            t, gamma = recover_invariants(data)
            assert t == xi.t
            assert gamma == normalize_gamma(xi.gamma)

    def test_window_too_narrow(self):
        xi = key([2], 0, [1], 1, 2, 4, 3)
        # gamma support inside the window but end dims never stabilize
        data = FormulaBlockData(xi, 0, 2)
        with pytest.raises(BlockDataError):
            recover_invariants(data)

    def test_matrix_backed_data(self):
        lams = compositions_in_window(1, -3, 3)
        matrix = cartan_matrix(XI_11, lams)
        data = MatrixBlockData([str(c.to_json()) for c in lams], matrix)
        t, gamma = recover_invariants(data)
        assert t == 1 and gamma.is_zero()

    def test_inconsistent_data(self):
        lams = compositions_in_window(1, -3, 3)
        matrix = cartan_matrix(XI_11, lams)
        k = len(lams) // 2
        matrix[k][k] += 100
        data = MatrixBlockData([str(i) for i in range(len(lams))], matrix)
        with pytest.raises(BlockDataError):
            recover_invariants(data)
