"""Series summation, pi computation, hex-digit spigot, template equivalence."""

from fractions import Fraction

import pytest

from hyperpi.bigfloat import BigFloat, pi_reference
from hyperpi.constexpr import parse_const_expr
from hyperpi.engine import (
    SLOTS_PI,
    SLOTS_TWO_PI,
    bbp_hex_digits,
    compute_pi_via,
    convergence_rate,
    precision_for_digits,
    series_rational_summand,
    series_tail_bound,
    sum_series,
    sum_series_fraction,
    sum_series_naive,
    terms_for_digits,
    verify_bbp_equivalence,
)
from hyperpi.errors import DomainError, NoMatch, RangeError, UnsupportedLhs, ZeroTerm
from hyperpi.factorials import SeriesSpec, term_eval
from hyperpi.prng import SplitMix64

F = Fraction

GEOMETRIC = SeriesSpec(upper=(F(1),), lower=(F(1),), poly=(F(1),), base=16)

# expected proportionality constants of the ten digit-extraction entries
# against the classic 4-term and 8-term templates
BBP_SIGMA = {
    "s3.7-ex1": ("pi", F(15)),
    "s3.7-ex2": ("pi", F(63, 2)),
    "s3.7-ex3": ("pi", F(21, 8)),
    "s3.7-ex4": ("pi", F(21, 10)),
    "s3.7-ex5": ("pi", F(77, 8)),
    "s3.7-ex6": ("two-pi", F(5, 18)),
    "s3.7-ex7": ("two-pi", F(15, 28)),
    "s3.7-ex8": ("two-pi", F(15, 16)),
    "s3.7-ex9": ("two-pi", F(45, 16)),
    "s3.7-ex10": ("two-pi", F(21, 2)),
}


def test_geometric_series_oracle():
    # sum 16^-k = 16/15, exactly, through both summation paths
    assert sum_series_naive(GEOMETRIC, 200) == sum_series_fraction(GEOMETRIC, 200)
    total = sum_series_fraction(GEOMETRIC, 2000)
    assert abs(total - F(16, 15)) < F(1, 16**1990)


def test_splitting_equals_naive_on_catalog_entries(catalog_entries):
    rng = SplitMix64(41)
    picks = [catalog_entries[rng.randint(0, len(catalog_entries) - 1)] for _ in range(10)]
    for entry in picks:
        terms = rng.randint(5, 200)
        assert sum_series_fraction(entry.spec, terms) == sum_series_naive(
            entry.spec, terms
        )


def test_term_budget_helpers():
    assert terms_for_digits(100, 16) >= 100 / 1.3 + 20
    assert precision_for_digits(100) >= 100 * 3.32 + 64
    assert terms_for_digits(100, 16) < terms_for_digits(200, 16)
    with pytest.raises(DomainError):
        terms_for_digits(0, 16)


def test_tail_bound_dominates_actual_tail(catalog_by_id):
    for eid in ("s3.1-ex1", "s3.6-ex1", "s3.7-ex1"):
        spec = catalog_by_id[eid].spec
        k_from = max(spec.start, 10)
        bound = series_tail_bound(spec, k_from)
        actual = sum(term_eval(spec, k) for k in range(k_from, k_from + 120))
        assert abs(actual) < bound


def test_convergence_rate_matches_terms(catalog_by_id):
    spec = catalog_by_id["s3.1-ex1"].spec
    for k in (3, 50):
        assert convergence_rate(spec, k) == term_eval(spec, k + 1) / term_eval(spec, k)
    assert abs(convergence_rate(spec, 500) - F(1, 16)) < F(1, 16) * F(2, 100)


def test_convergence_rate_zero_term():
    spec = SeriesSpec(upper=(F(1),), lower=(F(1),), poly=(F(0), F(1)), base=16)
    with pytest.raises(ZeroTerm):
        convergence_rate(spec, 0)  # poly(0) = 0 kills the first term


def test_compute_pi_across_classes(catalog_by_id):
    digits = 40
    reference = pi_reference(precision_for_digits(digits)).to_decimal_string(digits)
    sample = [
        "s3.1-ex1", "s3.1-ex5", "s3.2-ex1", "s3.2-ex3", "s3.5-ex1",
        "s3.5-ex12", "s3.6-ex1", "s3.6-ex9", "s3.7-ex1", "s3.7-ex9",
    ]
    for eid in sample:
        entry = catalog_by_id[eid]
        got = compute_pi_via(entry.spec, entry.lhs, digits).to_decimal_string(digits)
        # final digits may round differently; the shared prefix must agree
        assert got[: digits - 2] == reference[: digits - 2], eid


def test_compute_pi_rejects_gamma_classes(catalog_by_id):
    for eid in ("s3.3-ex1", "s3.4-ex1"):
        entry = catalog_by_id[eid]
        with pytest.raises(UnsupportedLhs):
            compute_pi_via(entry.spec, entry.lhs, 30)


def test_compute_pi_rejects_negative_square():
    # lhs = -pi^2 would need the square root of a negative power quotient
    lhs = parse_const_expr(
        {"op": "mul", "args": [{"rat": "-1"}, {"pi": 2}]}
    )
    with pytest.raises(DomainError):
        compute_pi_via(GEOMETRIC, lhs, 30)


def test_spigot_known_digits():
    assert bbp_hex_digits(0, 16) == "243F6A8885A308D3"
    assert bbp_hex_digits(100, 12) == "29B7C97C50DD"
    assert bbp_hex_digits(104, 12) == "C97C50DD3F84"


def test_spigot_overlap_self_consistency():
    rng = SplitMix64(43)
    for _ in range(20):
        pos = rng.randint(0, 10**4)
        a = bbp_hex_digits(pos, 12)
        b = bbp_hex_digits(pos + 4, 12)
        assert a[4:] == b[:8], f"overlap mismatch at {pos}"


def test_spigot_matches_reference_window():
    ref = pi_reference(4 * 600 + 256)
    for pos in (0, 250, 500):
        assert bbp_hex_digits(pos, 16) == ref.hex_fraction_digits(pos, 16)


def test_spigot_range_errors():
    for bad in ((0, 0), (0, 17), (-1, 4), (2**48, 1)):
        with pytest.raises(RangeError):
            bbp_hex_digits(*bad)


def test_rational_summand_reconstructs_terms(catalog_by_id):
    spec = catalog_by_id["s3.7-ex1"].spec
    rf = series_rational_summand(spec)
    for k in range(21):
        assert rf.eval_at(F(k)) == term_eval(spec, k) * 16**k


def test_bbp_equivalences(catalog_by_id):
    for eid, (family, sigma) in BBP_SIGMA.items():
        entry = catalog_by_id[eid]
        cert = verify_bbp_equivalence(entry.spec, entry.lhs)
        assert cert.family == family, eid
        assert cert.sigma == sigma, eid
        template = SLOTS_PI if family == "pi" else SLOTS_TWO_PI
        assert tuple(cert.slot_coefficients) == tuple(
            sigma * F(t) for t in template
        ), eid


def test_bbp_equivalence_rejects_non_bbp_entries(catalog_by_id):
    entry = catalog_by_id["s3.1-ex1"]  # closed form carries pi^-2
    with pytest.raises(NoMatch):
        verify_bbp_equivalence(entry.spec, entry.lhs)


def test_bbp_equivalence_rejects_corrupted_weight(catalog_by_id):
    entry = catalog_by_id["s3.7-ex1"]
    corrupted = SeriesSpec(
        upper=entry.spec.upper,
        lower=entry.spec.lower,
        poly=(entry.spec.poly[0] + 1,) + entry.spec.poly[1:],
        base=entry.spec.base,
        start=entry.spec.start,
        additive=entry.spec.additive,
        sign=entry.spec.sign,
    )
    with pytest.raises(NoMatch):
        verify_bbp_equivalence(corrupted, entry.lhs)


def test_sum_series_matches_fraction_path(catalog_by_id):
    spec = catalog_by_id["s3.5-ex1"].spec
    prec = 400
    via_float = sum_series(spec, 90, prec)
    via_fraction = BigFloat.from_fraction(sum_series_fraction(spec, 90), prec)
    assert via_float.sub(via_fraction, prec).abs() < BigFloat.from_fraction(
        F(1, 2**380), 64
    )
