import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from relfd.errors import DomainError
from relfd.special import (EULER_GAMMA, digamma_int_halfint, gamma_real, pochhammer,
                           rgamma, tau, tau_table)

BERNOULLI = {
    2: Fraction(1, 6), 4: Fraction(-1, 30), 6: Fraction(1, 42), 8: Fraction(-1, 30),
    10: Fraction(5, 66), 12: Fraction(-691, 2730), 14: Fraction(7, 6),
    16: Fraction(-3617, 510), 18: Fraction(43867, 798), 20: Fraction(-174611, 330),
    22: Fraction(854513, 138), 24: Fraction(-236364091, 2730), 26: Fraction(8553103, 6),
    28: Fraction(-23749461029, 870), 30: Fraction(8615841276005, 14322),
    32: Fraction(-7709321041217, 510), 34: Fraction(2577687858367, 6),
    36: Fraction(-26315271553053477373, 1919190), 38: Fraction(2929993913841559, 6),
    40: Fraction(-261082718496449122051, 13530),
}


def test_gamma_values():
    assert gamma_real(1.0) == 1.0
    assert gamma_real(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-15)
    assert gamma_real(-2.5) == pytest.approx(-8 * math.sqrt(math.pi) / 15, rel=1e-14)


@pytest.mark.parametrize("x", [0.0, -1.0, -7.0])
def test_gamma_poles_raise(x):
    with pytest.raises(DomainError):
        gamma_real(x)


def test_rgamma_zero_at_poles_and_large_argument():
    assert rgamma(0.0) == 0.0 and rgamma(-3.0) == 0.0
    assert rgamma(200.5) == pytest.approx(float(1 / mp.gamma(200.5)), rel=1e-12)


def test_gamma_recurrence_grid():
    x = -9.75
    while x <= 49.75:
        assert gamma_real(x + 1) == pytest.approx(x * gamma_real(x), rel=1e-13)
        x += 0.5


def test_digamma_closed_forms():
    assert digamma_int_halfint(2) == pytest.approx(-EULER_GAMMA, rel=1e-15)
    assert digamma_int_halfint(1) == pytest.approx(-EULER_GAMMA - 2 * math.log(2), rel=1e-15)
    assert digamma_int_halfint(4) == pytest.approx(1 - EULER_GAMMA, rel=1e-15)


@pytest.mark.parametrize("two_x", range(1, 80))
def test_digamma_recurrence(two_x):
    x = two_x / 2
    assert digamma_int_halfint(two_x + 2) == pytest.approx(digamma_int_halfint(two_x) + 1 / x, rel=1e-14, abs=1e-15)
    assert digamma_int_halfint(two_x) == pytest.approx(float(mp.digamma(x)), rel=1e-14, abs=1e-15)


def test_tau_values():
    assert tau(0) == 1.0
    assert tau(2) == pytest.approx(math.pi**2 / 6, rel=1e-15)
    assert tau(4) == pytest.approx(7 * math.pi**4 / 360, rel=1e-15)
    assert tau(3) == 0.0


@pytest.mark.parametrize("n", range(1, 21))
def test_tau_matches_bernoulli_form(n):
    b = float(BERNOULLI[2 * n])
    expected = (-1) ** (n - 1) * (1 - 2.0 ** (1 - 2 * n)) * (2 * math.pi) ** (2 * n) * b / math.factorial(2 * n)
    assert tau(2 * n) == pytest.approx(expected, rel=1e-13)


def test_tau_positive_and_tends_to_two():
    t = tau_table(80)
    assert all(t[2 * n] > 0 for n in range(41))
    assert t[80] == pytest.approx(2.0, rel=1e-15)


def test_tau_generating_function():
    s = 0.5
    partial = sum(tau(2 * n) * s ** (2 * n) for n in range(40))
    assert partial == pytest.approx(math.pi * s / math.sin(math.pi * s), rel=1e-12)


def test_pochhammer_values():
    assert pochhammer(3.5, 0) == 1.0
    assert pochhammer(2.0, 3) == 24.0
    assert pochhammer(-0.5, 2) == -0.25


@given(st.floats(0.1, 20), st.integers(0, 12))
def test_pochhammer_gamma_ratio(x, k):
    assert pochhammer(x, k) == pytest.approx(gamma_real(x + k) / gamma_real(x), rel=1e-12)
