"""Inverse pairs of finite series transforms."""

from fractions import Fraction

from hyperpi.factorials import binomial, phi_eval
from hyperpi.inversion import (
    InversionScheme,
    forward_extended,
    forward_plain,
    inverse_extended,
    inverse_plain,
    random_scheme,
    random_sequence,
    roundtrip_check,
)
from hyperpi.prng import SplitMix64


def tabulated(values):
    return lambda n: values[n]


def test_constant_scheme_reduces_to_binomial_transform():
    # a_j = 1, b_j = 0 collapses the triangular products to 1, leaving the
    # classic alternating binomial transform, which is its own inverse.
    scheme = InversionScheme(
        a_values=(Fraction(1),) * 9, b_values=(Fraction(0),) * 9, lam=Fraction(0)
    )
    g_values = tuple(Fraction(v) for v in (3, -1, 4, 1, 5, -9, 2, 6))
    g = tabulated(g_values)
    n_max = 7
    for n in range(n_max + 1):
        f_n = forward_plain(scheme, g, n)
        expected = sum(
            Fraction((-1) ** k * binomial(n, k)) * g(k) for k in range(n + 1)
        )
        assert f_n == expected
    f = tabulated([forward_plain(scheme, g, n) for n in range(n_max + 1)])
    for n in range(n_max + 1):
        assert inverse_plain(scheme, f, n) == g(n)
    assert roundtrip_check(scheme, g_values, n_max, "plain") == []


def test_phi_products_match_scheme():
    scheme = InversionScheme(
        a_values=tuple(Fraction(j + 1) for j in range(6)),
        b_values=tuple(Fraction(1, j + 2) for j in range(6)),
        lam=Fraction(0),
    )
    for n in range(5):
        x = Fraction(n)
        assert scheme.phi(x, n) == phi_eval(scheme.a_of, scheme.b_of, x, n)


def test_random_round_trips_both_pairs():
    rng = SplitMix64(7)
    n_max = 9
    for pair in ("plain", "extended"):
        for _ in range(12):
            scheme = random_scheme(rng, n_max, extended=(pair == "extended"))
            sequence = random_sequence(rng, n_max)
            assert roundtrip_check(scheme, sequence, n_max, pair) == []


def test_degenerate_b_coefficients_allowed():
    rng = SplitMix64(11)
    hit_zero = False
    for _ in range(40):
        scheme = random_scheme(rng, 8, extended=False, allow_zero_b=True)
        hit_zero = hit_zero or any(b == 0 for b in scheme.b_values)
        sequence = random_sequence(rng, 8)
        assert roundtrip_check(scheme, sequence, 8, "plain") == []
    assert hit_zero  # the sampler actually exercises the degenerate case


def test_extended_pair_explicit_round_trip():
    # non-integer a_j keeps phi(-n; k+1) and phi(lam+n; k+1) clear of zero
    scheme = InversionScheme(
        a_values=tuple(Fraction(4 * j + 3, 2) for j in range(8)),
        b_values=(Fraction(1),) * 8,
        lam=Fraction(3, 2),
    )
    g = tabulated([Fraction(v, 3) for v in (1, 4, 1, 5, 9, 2, 6)])
    f = tabulated([forward_extended(scheme, g, n) for n in range(7)])
    for n in range(7):
        assert inverse_extended(scheme, f, n) == g(n)
