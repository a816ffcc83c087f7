import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from alphacf.alpha import (alpha_expand, alpha_reduce, alpha_step, beta_check,
                           decay_check, legendre_filter, reconstruction_check,
                           rho_alpha)
from alphacf.exact import DomainError, Surd, compare

G = Surd(-1, 1, 2, 5)
G_SQ = Surd(3, -1, 2, 5)
GAMMA = Surd(-1, 1, 1, 2)


def euclid_cf(x: Fraction) -> list[int]:
    """Reference regular continued fraction of a rational in (0, 1)."""
    out = []
    num, den = x.numerator, x.denominator
    # digits of 1/x via the Euclidean algorithm
    while num:
        out.append(den // num)
        den, num = num, den % num
    return out


class TestGaussMap:
    def test_golden_all_ones(self):
        exp = alpha_expand(G, 1, 10)
        assert [d.a for d in exp.digits] == [1] * 10
        assert all(d.eps == 1 for d in exp.digits)
        assert exp.q_seq == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]

    def test_five_sevenths(self):
        exp = alpha_expand(Fraction(5, 7), 1, 20)
        assert [d.a for d in exp.digits] == [1, 2, 2]
        assert exp.terminated
        assert exp.p_seq[-1] == 5 and exp.q_seq[-1] == 7

    @given(p=st.integers(1, 400), q=st.integers(2, 400))
    def test_matches_euclid(self, p, q):
        if p >= q:
            return
        x = Fraction(p, q)
        exp = alpha_expand(x, 1, 100)
        assert [d.a for d in exp.digits] == euclid_cf(x)


class TestNearestInteger:
    def test_golden_square_fixed_point(self):
        exp = alpha_expand(G_SQ, Fraction(1, 2), 6)
        assert [(d.a, d.eps) for d in exp.digits] == [(3, -1)] * 6
        for r in exp.remainders:
            assert compare(r, G_SQ) == 0

    def test_integer_input_empty(self):
        exp = alpha_expand(Fraction(4), Fraction(1, 2), 5)
        assert exp.digits == [] and exp.terminated
        assert exp.integer_part == 4


class TestReduce:
    def test_rounding(self):
        assert alpha_reduce(Fraction(7, 10), 1) == (0, Fraction(7, 10))
        assert alpha_reduce(Fraction(7, 10), Fraction(1, 2)) == \
            (1, Fraction(3, 10))

    def test_boundary_remainder_is_accepted(self):
        # x = n + alpha with alpha < 1/2 reduces to exactly 1 - alpha
        n, x0 = alpha_reduce(Fraction(31, 10), Fraction(1, 10))
        assert (n, x0) == (4, Fraction(9, 10))
        alpha_step(x0, Fraction(1, 10))  # must not raise

    def test_out_of_domain_step(self):
        with pytest.raises(DomainError):
            alpha_step(Fraction(0), 1)
        with pytest.raises(DomainError):
            alpha_step(Fraction(3, 5), Fraction(1, 2))


class TestRho:
    def test_regimes(self):
        assert rho_alpha(1) == G
        assert rho_alpha(Fraction(7, 10)) == G
        assert rho_alpha(Fraction(1, 2)) == GAMMA
        assert rho_alpha(Fraction(9, 20)) == GAMMA
        got = rho_alpha(Fraction(1, 5))
        assert got * got == Fraction(3, 5)

    def test_alpha_zero_rejected(self):
        with pytest.raises(DomainError):
            rho_alpha(0)


class TestIdentities:
    @given(p=st.integers(1, 999), q=st.integers(2, 1000),
           k=st.integers(1, 20))
    @settings(max_examples=60, deadline=None)
    def test_lemma_identities_random(self, p, q, k):
        if p >= q:
            return
        x = Fraction(p, q)
        alpha = Fraction(k, 20)
        exp = alpha_expand(x, alpha, 300)
        rep = beta_check(exp)
        assert all(rep.lemma1_ok)
        assert all(s is not False for s in rep.sandwich_ok)
        assert reconstruction_check(exp)
        assert decay_check(exp)

    def test_surd_identities(self):
        for x in (G, GAMMA, Surd(-1, 1, 1, 3)):
            for alpha in (1, Fraction(1, 2), Fraction(3, 10)):
                exp = alpha_expand(x, alpha, 25)
                assert beta_check(exp).all_ok
                assert reconstruction_check(exp)
                assert decay_check(exp)

    def test_determinants(self):
        exp = alpha_expand(Fraction(13, 29), Fraction(1, 3), 20)
        for c in exp.convergents:
            assert c.p_prev * c.q - c.q_prev * c.p == c.det
            assert c.det in (-1, 1)


class TestLegendre:
    def test_passing_indices_are_regular_convergents(self):
        x = Fraction(355, 113) - 3
        regular = alpha_expand(x, 1, 50)
        regular_pq = set(zip(regular.p_seq, regular.q_seq))
        for alpha in (Fraction(1, 2), Fraction(2, 5), Fraction(7, 10)):
            exp = alpha_expand(x, alpha, 50)
            for n in legendre_filter(x, exp):
                if exp.q_seq[n] == 0:
                    continue
                g = math.gcd(exp.p_seq[n], exp.q_seq[n])
                assert (exp.p_seq[n] // g, exp.q_seq[n] // g) in regular_pq
