import math
from fractions import Fraction

import pytest

from alphacf.brjuno import (ConditionViolation, b0_even, b0_qseries,
                            brjuno_sum, diff_report, functional_residual,
                            log_denominator_sum, make_u, q_series,
                            semi_brjuno)
from alphacf.corpus import rational_corpus, surd_panel
from alphacf.exact import DomainError, Surd

G = Surd(-1, 1, 2, 5)
G_SQ = Surd(3, -1, 2, 5)
GAMMA = Surd(-1, 1, 1, 2)

LOG_G = math.log((math.sqrt(5) - 1) / 2)
G_F = (math.sqrt(5) - 1) / 2


class TestWeights:
    def test_log_suprema(self):
        u = make_u("log")
        # x * log(1/x) is increasing on (0, 0.1]
        assert u.M2 == pytest.approx(0.1 * math.log(10), rel=1e-3)
        assert u.M3 == pytest.approx(0.1, rel=1e-3)

    def test_inv_sqrt_suprema(self):
        u = make_u("inv_sqrt")
        assert u.M2 == pytest.approx(math.sqrt(0.1), rel=1e-3)

    def test_power_needs_sigma_above_one(self):
        with pytest.raises(ConditionViolation):
            make_u("power", sigma=1.0)
        make_u("power", sigma=2.0)  # fine

    def test_custom_violating_weight_rejected(self):
        # u = 1/x^2 fails lim x*u(x) < infinity
        with pytest.raises(ConditionViolation):
            make_u("custom", eval_fn=lambda t: t ** -2.0,
                   deriv_fn=lambda t: -2.0 * t ** -3.0)


class TestClosedForms:
    def test_gauss_log_at_golden(self):
        want = -LOG_G / G_F ** 2
        got = brjuno_sum(G, 1, make_u("log"), 200, keep_terms=False)
        assert got.value == pytest.approx(want, abs=1e-9)
        assert got.converged

    def test_gauss_log_at_gamma(self):
        # sqrt(2)-1 has digits [2,2,2,...]: B = sum gamma^n log(1/gamma)
        gam = math.sqrt(2) - 1
        want = -math.log(gam) / (1 - gam)
        got = brjuno_sum(GAMMA, 1, make_u("log"), 200, keep_terms=False)
        assert got.value == pytest.approx(want, abs=1e-9)

    def test_nearest_integer_at_golden(self):
        # orbit fixed at g^2: B = -2 log g / g
        want = -2 * LOG_G / G_F
        got = brjuno_sum(G, Fraction(1, 2), make_u("log"), 200,
                         keep_terms=False)
        assert got.value == pytest.approx(want, abs=1e-9)

    def test_semi_brjuno_at_golden(self):
        assert semi_brjuno(G, 500, keep_terms=False).value == \
            pytest.approx(-3 * LOG_G, abs=1e-9)

    def test_semi_brjuno_at_golden_square(self):
        assert semi_brjuno(G_SQ, 500, keep_terms=False).value == \
            pytest.approx(-2 * LOG_G / G_F, abs=1e-9)

    def test_semi_brjuno_rational_exact(self):
        # orbit of 5/7: 5/7 -> 3/5 -> 1/3 -> 1
        want = (math.log(Fraction(7, 5)) + 5 / 7 * math.log(Fraction(5, 3))
                + 5 / 7 * 3 / 5 * math.log(3))
        res = semi_brjuno(Fraction(5, 7), 100)
        assert res.value == pytest.approx(want, abs=1e-12)
        assert res.converged and res.tail_estimate == 0.0

    def test_b0_even_at_half(self):
        assert b0_even(Fraction(1, 2), 50) == \
            pytest.approx(2 * math.log(2), abs=1e-12)

    def test_even_part_gap_at_golden(self):
        b1 = brjuno_sum(G, 1, make_u("log"), 300, keep_terms=False).value
        want = -3 * LOG_G - 2 * LOG_G / G_F + LOG_G / G_F ** 2
        assert b0_even(G, 500) - b1 == pytest.approx(want, abs=1e-8)

    def test_alpha_zero_rejected(self):
        with pytest.raises(DomainError):
            brjuno_sum(G, 0, make_u("log"), 10)


class TestCompanionSeries:
    def test_q_series_vanishes_on_unit_digits(self):
        # all digits 1 under the log weight: every term is log(1) = 0
        assert q_series(G, 1, make_u("log"), 100) == 0.0

    def test_q_series_close_to_sum_at_gamma(self):
        u = make_u("log")
        b = brjuno_sum(GAMMA, 1, u, 200, keep_terms=False).value
        qs = q_series(GAMMA, 1, u, 200)
        assert abs(b - qs) < 2.0

    def test_b0_qseries_skips_digit_two(self):
        # 1/2 has by-excess digits [3, tail of 2's]: single term log 2
        assert b0_qseries(Fraction(1, 2), 50) == \
            pytest.approx(math.log(2), abs=1e-12)

    def test_istar_block_sum(self):
        for x in (Fraction(5, 7), Fraction(355, 113) - 3, G, GAMMA):
            res = semi_brjuno(x, 5000, keep_terms=False)
            assert 0.0 <= res.istar_sum <= 2.0


class TestFunctionalEquations:
    def test_alpha_equation(self):
        u = make_u("log")
        for x in (G_SQ, GAMMA, Fraction(13, 29)):
            for alpha in (Fraction(1, 2), Fraction(3, 4), 1):
                assert functional_residual("alpha_eq", x, alpha, u) < 1e-8

    def test_alpha_below_half_rejected(self):
        with pytest.raises(DomainError):
            functional_residual("alpha_eq", G_SQ, Fraction(1, 4),
                                make_u("log"))

    def test_b0_equation(self):
        for x in (G_SQ, GAMMA, Fraction(5, 7), Fraction(13, 29)):
            assert functional_residual("b0_eq", x) < 1e-8


class TestReports:
    def test_lemma3_bound_at_golden(self):
        bound = 2 / math.e * (3 + math.sqrt(2) * G_F / (1 - math.sqrt(G_F)))
        s = log_denominator_sum(G, 400)
        assert 0 < s <= bound

    def test_diff_report_b0_vs_qseries(self):
        corpus = rational_corpus(20, qmax=10 ** 4, seed=3) + surd_panel()
        rep = diff_report("b0_vs_qseries", corpus, n_max=3000)
        assert rep.stable
        assert rep.observed_sup <= 25.0
        assert rep.corpus_size == len(corpus)
        assert rep.worst_input is not None

    def test_diff_report_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            diff_report("nope", [G])
