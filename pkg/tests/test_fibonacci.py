import math
import random

import mpmath
import pytest
from mpmath import mp

from xbifix.fibonacci import (
    beta_bracket,
    f_poly,
    fib,
    fib_closed_form,
    find_alpha,
    g_poly,
    kq_threshold,
    other_roots_inside_unit_disk,
)


class TestRecurrence:
    def test_usual_fibonacci(self):
        assert [fib(2, 2, n) for n in range(8)] == [1, 2, 3, 5, 8, 13, 21, 34]

    def test_three_step(self):
        assert [fib(3, 2, n) for n in range(6)] == [1, 2, 4, 7, 13, 24]

    def test_initialization_is_power(self):
        assert fib(3, 3, 2) == 9
        assert fib(5, 4, 3) == 64

    def test_weighted_ternary(self):
        # F(n) = 2*(F(n-1) + F(n-2)), init 1, 3
        assert [fib(2, 3, n) for n in range(4)] == [1, 3, 8, 22]

    def test_validation(self):
        with pytest.raises(ValueError):
            fib(1, 2, 0)
        with pytest.raises(ValueError):
            fib(2, 1, 0)
        with pytest.raises(ValueError):
            fib(2, 2, -1)


class TestPolynomials:
    def test_f_quadratic(self):
        # f(x) = x^2 - x - 1 for k=2, q=2
        assert f_poly(2, 2, 2) == 1
        assert f_poly(2, 2, 0) == -1

    def test_g_at_q(self):
        for k in (2, 3, 7):
            for q in (2, 3, 5):
                assert g_poly(k, q, q) == q - 1

    def test_f_at_one_negative(self):
        for k in range(2, 10):
            for q in (2, 3, 5):
                assert f_poly(k, q, 1) == 1 - k * (q - 1) < 0

    def test_g_is_shifted_f(self):
        rng = random.Random(12)
        for _ in range(1000):
            k = rng.randint(2, 9)
            q = rng.randint(2, 5)
            x = rng.uniform(-2.0, q + 1.0)
            g = g_poly(k, q, x)
            f_shift = (x - 1) * f_poly(k, q, x)
            assert math.isclose(g, f_shift, rel_tol=1e-12, abs_tol=1e-9)


class TestFindAlpha:
    def test_golden_ratio(self):
        est = find_alpha(2, 2, 128)
        with mp.workprec(160):
            golden = (1 + mp.sqrt(5)) / 2
            assert abs(est.alpha - golden) < mp.mpf(2) ** (-120)

    def test_pentanacci(self):
        est = find_alpha(5, 2)
        assert abs(float(est.alpha) - 1.9659482) < 1e-6

    def test_bracket_signs(self):
        for k in (2, 5, 17, 40):
            for q in (2, 3, 5):
                est = find_alpha(k, q)
                # evaluate at the working precision of the estimate, else
                # the polynomial values round to zero near the root
                with mp.workprec(est.precision_bits + 16):
                    assert f_poly(k, q, est.lo) < 0 < f_poly(k, q, est.hi)
                    assert 1 < est.lo < est.alpha < est.hi < q
                    assert est.hi - est.lo <= mp.mpf(2) ** (-est.precision_bits + 4) * q

    def test_interval_sweep(self):
        for q in (2, 3, 5, 16):
            for k in range(2, 65, 7):
                # q - alpha shrinks like q**(-k), so the bracket needs
                # precision beyond k*log2(q) to separate hi from q
                bits = max(128, 4 * k * q.bit_length() + 64)
                est = find_alpha(k, q, bits)
                assert 1 < est.lo and est.hi < q

    def test_sign_pattern_of_g(self):
        for k, q in [(2, 2), (4, 3), (7, 2)]:
            alpha = float(find_alpha(k, q).alpha)
            for t in (0.1, 0.4, 0.7, 0.95):
                below = 1 + t * (alpha - 1)
                above = alpha + t * (q - alpha)
                assert g_poly(k, q, below) < 0
                assert g_poly(k, q, above) > 0

    def test_monotone_in_k(self):
        for q in (2, 3):
            # compare the mpf midpoints directly; float() would collapse
            # the large-k values onto q
            alphas = [find_alpha(k, q).alpha for k in range(2, 41)]
            assert all(a < b for a, b in zip(alphas, alphas[1:]))
            assert alphas[-1] < q


class TestThreshold:
    def test_known_values(self):
        assert kq_threshold(2) == 2
        assert kq_threshold(3) == 2

    @pytest.mark.parametrize("q", [2, 3, 5, 7, 11])
    def test_minimality(self, q):
        from fractions import Fraction

        k = kq_threshold(q)
        rhs = 1 - Fraction(1, q)
        assert (1 - Fraction(1, q**k)) ** k > rhs
        if k > 1:
            assert (1 - Fraction(1, q ** (k - 1))) ** (k - 1) <= rhs


class TestBetaBracket:
    @pytest.mark.parametrize("k,q", [(2, 2), (10, 2), (3, 3), (7, 5)])
    def test_bound_holds(self, k, q):
        beta, lower = beta_bracket(k, q)
        alpha = find_alpha(k, q).alpha
        assert q - mp.mpf(q) ** (-(k - 1)) < beta < q
        assert g_poly(k, q, beta) < 0
        assert lower < alpha < q

    def test_below_threshold_rejected(self):
        with pytest.raises(ValueError):
            beta_bracket(1, 2)


class TestClosedForm:
    def test_spot_values(self):
        assert fib_closed_form(2, 2, 10) == 144
        assert fib_closed_form(3, 2, 5) == 24
        assert fib_closed_form(2, 3, 3) == 22

    def test_matches_recurrence_sample(self):
        rng = random.Random(5)
        for _ in range(60):
            k = rng.randint(2, 8)
            q = rng.randint(2, 5)
            n = rng.randint(0, 200)
            assert fib_closed_form(k, q, n) == fib(k, q, n), (k, q, n)

    def test_low_precision_escalates_not_wrong(self):
        # 53 bits cannot settle large n directly; escalation must still
        # land on the exact value
        assert fib_closed_form(2, 2, 180, precision_bits=53) == fib(2, 2, 180)


class TestRoots:
    @pytest.mark.parametrize("k,q", [(2, 2), (4, 2), (3, 5)])
    def test_examples(self, k, q):
        assert other_roots_inside_unit_disk(k, q)

    def test_sweep(self):
        for q in (2, 3, 5):
            for k in range(2, 41):
                assert other_roots_inside_unit_disk(k, q), (k, q)

    def test_k_cap(self):
        with pytest.raises(ValueError):
            other_roots_inside_unit_disk(65, 2)
