"""Gamma function at rational arguments via the Spouge approximation."""

from fractions import Fraction

import pytest

from hyperpi.bigfloat import (
    BigFloat,
    agrees_to_bits,
    pi_reference,
    pow_fraction,
    sin_pi,
    sqrt,
)
from hyperpi.errors import DomainError
from hyperpi.factorials import pochhammer
from hyperpi.gammafn import gamma_quotient, gamma_rational


def test_integer_values_are_factorials():
    prec = 200
    for n, expected in ((1, 1), (2, 1), (3, 2), (5, 24), (8, 5040)):
        value = gamma_rational(Fraction(n), prec)
        assert agrees_to_bits(value, BigFloat.from_int(expected, prec)) > 190


def test_half_integer_square_is_pi():
    prec = 300
    root_pi = gamma_rational(Fraction(1, 2), prec)
    assert agrees_to_bits(root_pi.mul(root_pi, prec), pi_reference(prec)) > 290


def test_recurrence():
    prec = 300
    for x in (Fraction(1, 3), Fraction(5, 6), Fraction(7, 12)):
        lhs = gamma_rational(x + 1, prec)
        rhs = gamma_rational(x, prec).mul(BigFloat.from_fraction(x, prec), prec)
        assert agrees_to_bits(lhs, rhs) > 285


def test_reflection():
    # gamma(x) * gamma(1-x) * sin(pi x) == pi
    prec = 300
    for x in (Fraction(1, 3), Fraction(1, 4), Fraction(5, 12)):
        product = (
            gamma_rational(x, prec)
            .mul(gamma_rational(1 - x, prec), prec)
            .mul(sin_pi(x, prec), prec)
        )
        assert agrees_to_bits(product, pi_reference(prec)) > 288


def test_quotient_known_value():
    # gamma(1)gamma(2)gamma(1)gamma(2) / gamma(1/2)^4 == 1/pi^2
    prec = 300
    half = Fraction(1, 2)
    value = gamma_quotient(
        (Fraction(1), Fraction(2), Fraction(1), Fraction(2)),
        (half, half, half, half),
        prec,
    )
    pi_val = pi_reference(prec)
    expected = BigFloat.from_int(1, prec).div(pi_val.mul(pi_val, prec), prec)
    assert agrees_to_bits(value, expected) > 288


def test_duplication():
    # gamma(2x) == gamma(x) gamma(x+1/2) 2^(2x-1) / sqrt(pi)
    prec = 300
    x = Fraction(5, 12)
    lhs = gamma_rational(2 * x, prec)
    two_pow = pow_fraction(BigFloat.from_int(2, prec), 2 * x - 1, prec)
    rhs = (
        gamma_rational(x, prec)
        .mul(gamma_rational(x + Fraction(1, 2), prec), prec)
        .mul(two_pow, prec)
        .div(sqrt(pi_reference(prec), prec), prec)
    )
    assert agrees_to_bits(lhs, rhs) > 285


def test_rejects_nonpositive_arguments():
    for bad in (Fraction(0), Fraction(-1, 6), Fraction(-3)):
        with pytest.raises(DomainError):
            gamma_rational(bad, 100)


def test_rising_factorial_consistency():
    # gamma(x + n) == pochhammer(x, n) * gamma(x)
    prec = 260
    x = Fraction(2, 3)
    for n in (1, 4, 9):
        lhs = gamma_rational(x + n, prec)
        rhs = gamma_rational(x, prec).mul(
            BigFloat.from_fraction(pochhammer(x, n), prec), prec
        )
        assert agrees_to_bits(lhs, rhs) > 250


def test_asymptotic_normalization_improves_with_n():
    # gamma(x + n) / (n^x * (n-1)!) -> 1
    prec = 200
    x = Fraction(1, 2)
    deviations = []
    for n in (10, 40, 160):
        factorial = Fraction(1)
        for j in range(2, n):
            factorial *= j
        ratio = (
            BigFloat.from_fraction(pochhammer(x, n), prec)
            .mul(gamma_rational(x, prec), prec)
            .div(pow_fraction(BigFloat.from_int(n, prec), x, prec), prec)
            .div(BigFloat.from_fraction(factorial, prec), prec)
        )
        deviations.append(abs(ratio.to_float() - 1.0))
    assert deviations[0] > deviations[1] > deviations[2]
    assert deviations[2] < 1e-3
