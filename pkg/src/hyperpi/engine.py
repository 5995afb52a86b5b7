"""Numeric engine for base-16 hypergeometric series.

Four capabilities, all built on exact rational arithmetic:

* :func:`sum_series` -- partial sums of a :class:`~hyperpi.factorials.SeriesSpec`
  by integer binary splitting; the only rounding is the final conversion of
  one exact fraction to a :class:`~hyperpi.bigfloat.BigFloat`.
* :func:`compute_pi_via` -- solve a verified series/closed-form pair for pi.
* :func:`bbp_hex_digits` -- hexadecimal digits of pi at an arbitrary offset
  without computing earlier digits (modular spigot).
* :func:`verify_bbp_equivalence` -- exact reduction of a base-16 entry to
  one of the two classic digit-extraction sum templates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from hyperpi.bigfloat import BigFloat, sqrt as bigfloat_sqrt
from hyperpi.constexpr import (
    ConstExpr,
    PowerNode,
    ProductNode,
    RationalLeaf,
    SumNode,
    eval_const_expr,
    pi_structure,
)
from hyperpi.errors import DomainError, NoMatch, RangeError, UnsupportedLhs, ZeroTerm
from hyperpi.factorials import (
    RationalFunctionOfK,
    SeriesSpec,
    partial_fractions,
    pochhammer,
    poly_eval,
    poly_mul,
    term_eval,
)
from hyperpi.splitting import product_sum

# Slot coefficients of the two classic base-16 digit-extraction sums:
#   sum_n 16^-n * sum_j V_j/(8n+j)  equals  pi      for V = SLOTS_PI
#                                   equals  2*pi    for V = SLOTS_TWO_PI
SLOTS_PI = (Fraction(4), Fraction(0), Fraction(0), Fraction(-2),
            Fraction(-1), Fraction(-1), Fraction(0), Fraction(0))
SLOTS_TWO_PI = (Fraction(0), Fraction(8), Fraction(4), Fraction(4),
                Fraction(0), Fraction(0), Fraction(-1), Fraction(0))

_MAX_SPIGOT_REACH = 1 << 48


def terms_for_digits(digits: int, base: int = 16) -> int:
    """Series length that leaves the truncation tail far below 10**-digits."""
    if digits < 1:
        raise DomainError(f"digit count must be positive, got {digits}")
    return math.ceil(digits * math.log(10) / math.log(base)) + 20


def precision_for_digits(digits: int) -> int:
    """Working precision in bits for a target of ``digits`` decimal digits."""
    if digits < 1:
        raise DomainError(f"digit count must be positive, got {digits}")
    return math.ceil(digits * math.log2(10)) + 64


# ----------------------------------------------------------------------
# partial sums
# ----------------------------------------------------------------------


def sum_series_fraction(spec: SeriesSpec, terms: int) -> Fraction:
    """Exact value of ``additive + sign * sum`` over the first ``terms`` terms.

    Runs the whole computation in big integers via binary splitting.  The
    per-step ratio of consecutive terms is a pure product of linear factors,
    so the weight sequence carries the polynomial and the splitting never
    divides by a (possibly zero) polynomial value.
    """
    spec.validate()
    if terms <= 0:
        return Fraction(spec.additive)
    s = spec.start
    lead_num = Fraction(1)
    lead_den = Fraction(spec.base) ** s
    for u in spec.upper:
        lead_num *= pochhammer(u, s)
    for low in spec.lower:
        lead_den *= pochhammer(low, s)
    poly_lcm = 1
    for coeff in spec.poly:
        poly_lcm = math.lcm(poly_lcm, coeff.denominator)
    upper_nd = [(u.numerator, u.denominator) for u in spec.upper]
    lower_nd = [(low.numerator, low.denominator) for low in spec.lower]
    prod_ud = math.prod(d for _, d in upper_nd)
    prod_ld = math.prod(d for _, d in lower_nd)

    def weight(j: int) -> int:
        value = poly_eval(spec.poly, Fraction(s + j)) * poly_lcm
        return value.numerator

    def alpha(i: int) -> int:
        out = prod_ld
        for n, d in upper_nd:
            out *= n + (s + i) * d
        return out

    def beta(i: int) -> int:
        out = prod_ud * spec.base
        for n, d in lower_nd:
            out *= n + (s + i) * d
        return out

    _, big_b, big_t = product_sum(weight, alpha, beta, 0, terms)
    partial = lead_num / lead_den * Fraction(int(big_t), poly_lcm * int(big_b))
    return spec.additive + spec.sign * partial


def sum_series(spec: SeriesSpec, terms: int, prec: int) -> BigFloat:
    """Partial sum rounded once to ``prec`` bits."""
    return BigFloat.from_fraction(sum_series_fraction(spec, terms), prec)


def sum_series_naive(spec: SeriesSpec, terms: int) -> Fraction:
    """Reference oracle: direct term-by-term exact summation."""
    spec.validate()
    total = Fraction(spec.additive)
    for k in range(spec.start, spec.start + terms):
        total += term_eval(spec, k)
    return total


def series_tail_bound(spec: SeriesSpec, k_from: int) -> Fraction:
    """Crude rigorous-in-practice bound on ``sum_{k >= k_from} |t(k)|``.

    Valid once consecutive-term ratios have settled below 1/2, which for
    base-16 specs with low-degree weights happens within the first few
    terms; callers always use it with ``k_from`` beyond a 20-term margin.
    """
    return 2 * (abs(term_eval(spec, k_from)) + abs(term_eval(spec, k_from + 1)))


def convergence_rate(spec: SeriesSpec, k: int) -> Fraction:
    """Exact ratio t(k+1)/t(k) of consecutive terms."""
    t_k = term_eval(spec, k)
    if t_k == 0:
        raise ZeroTerm(f"term at k={k} is zero; the ratio there is undefined")
    return term_eval(spec, k + 1) / t_k


# ----------------------------------------------------------------------
# solving a series/closed-form pair for pi
# ----------------------------------------------------------------------


def compute_pi_via(spec: SeriesSpec, lhs: ConstExpr, digits: int) -> BigFloat:
    """Digits of pi from a series whose closed form is algebraic * pi**e.

    Supported exponents are -2, -1, 1 and 2; a square root is taken for the
    quadratic cases.  Closed forms containing gamma factors are rejected
    (pi is not recoverable from them by rational operations alone).
    """
    prec = precision_for_digits(digits)
    wp = prec + 32
    exponent, algebraic = pi_structure(lhs)
    if exponent not in (-2, -1, 1, 2):
        raise UnsupportedLhs(f"cannot solve for pi from pi-exponent {exponent}")
    series_value = sum_series(spec, terms_for_digits(digits, spec.base), wp)
    algebraic_value = eval_const_expr(algebraic, wp)
    if series_value.is_zero() or algebraic_value.is_zero():
        raise DomainError("degenerate series/closed-form pair while solving for pi")
    if exponent > 0:
        power = series_value.div(algebraic_value, wp)
    else:
        power = algebraic_value.div(series_value, wp)
    if abs(exponent) == 2:
        if power.man < 0:
            raise DomainError("negative value where pi**2 was expected")
        power = bigfloat_sqrt(power, wp)
    return power.round_to(prec)


# ----------------------------------------------------------------------
# hexadecimal digit extraction
# ----------------------------------------------------------------------


def _spigot_slot_sum(position: int, j: int, frac_bits: int) -> int:
    """``2**frac_bits * sum_k 16^(position-k)/(8k+j)`` modulo 1, truncated."""
    acc = 0
    for k in range(position + 1):
        modulus = 8 * k + j
        acc += (pow(16, position - k, modulus) << frac_bits) // modulus
    k = position + 1
    while True:
        shift = frac_bits - 4 * (k - position)
        if shift < 0:
            break
        acc += (1 << shift) // (8 * k + j)
        k += 1
    return acc


def _spigot_fraction(position: int, frac_bits: int) -> int:
    """Fixed-point fractional part of ``16**position * pi``."""
    total = 0
    for j, coeff in ((1, 4), (4, -2), (5, -1), (6, -1)):
        total += coeff * _spigot_slot_sum(position, j, frac_bits)
    return total % (1 << frac_bits)


def bbp_hex_digits(position: int, count: int) -> str:
    """``count`` hexadecimal digits of the fractional part of pi.

    ``position`` is the 0-based offset of the first returned digit, so
    ``bbp_hex_digits(0, 16)`` is ``"243F6A8885A308D3"``.  Earlier digits are
    never computed.  The reach is capped where the spigot's guard bits stop
    dominating the accumulated one-ulp truncation errors.
    """
    if not 1 <= count <= 16:
        raise RangeError(f"digit count must be between 1 and 16, got {count}")
    if position < 0:
        raise RangeError(f"digit position must be nonnegative, got {position}")
    if position + count > _MAX_SPIGOT_REACH:
        raise RangeError(
            f"position + count must stay at or below 2**48, got {position + count}"
        )
    extra = 96
    for _ in range(8):
        frac_bits = 4 * count + extra
        guard_bits = extra
        value = _spigot_fraction(position, frac_bits)
        guard = value & ((1 << guard_bits) - 1)
        # Every truncated division is short by less than one ulp; bound the
        # total drift and retry with more guard bits when a carry could
        # still flip the requested digits.
        margin = 16 * (position + frac_bits) + 4096
        if margin <= guard < (1 << guard_bits) - margin:
            return format(value >> guard_bits, f"0{count}X")
        extra += 64
    raise DomainError("digit extraction could not separate a carry boundary")


# ----------------------------------------------------------------------
# exact reduction to the digit-extraction templates
# ----------------------------------------------------------------------


def series_rational_summand(spec: SeriesSpec) -> RationalFunctionOfK:
    """Rewrite ``sign * poly(k) * prod(upper)_k / prod(lower)_k`` as a
    rational function of ``k``.

    Requires every upper parameter to pair with a distinct lower parameter
    at a nonnegative integer shift (smallest shift wins), which collapses
    each Pochhammer quotient to finitely many linear factors.
    """
    if len(spec.upper) != len(spec.lower):
        raise NoMatch("upper and lower parameter counts differ; cannot pair them")
    taken = [False] * len(spec.lower)
    constant = Fraction(1)
    poles: list[Fraction] = []
    for u in spec.upper:
        best: tuple[int, Fraction] | None = None
        for i, low in enumerate(spec.lower):
            if taken[i]:
                continue
            shift = low - u
            if shift.denominator == 1 and shift >= 0:
                if best is None or shift < best[1]:
                    best = (i, shift)
        if best is None:
            raise NoMatch(
                f"upper parameter {u} has no lower partner at a nonnegative integer shift"
            )
        taken[best[0]] = True
        for i in range(int(best[1])):
            constant *= u + i
            poles.append(u + i)
    numerator = tuple(coeff * constant * spec.sign for coeff in spec.poly)
    denominator: tuple[Fraction, ...] = (Fraction(1),)
    for pole in poles:
        denominator = poly_mul(denominator, (pole, Fraction(1)))
    return RationalFunctionOfK.make(numerator, denominator)


def _as_rational(expr: ConstExpr) -> Fraction | None:
    if isinstance(expr, RationalLeaf):
        return expr.value
    if isinstance(expr, PowerNode):
        inner = _as_rational(expr.child)
        if inner is None or (inner == 0 and expr.exponent < 0):
            return None
        return inner ** expr.exponent
    if isinstance(expr, ProductNode):
        out = Fraction(1)
        for child in expr.children:
            inner = _as_rational(child)
            if inner is None:
                return None
            out *= inner
        return out
    if isinstance(expr, SumNode):
        out = Fraction(0)
        for child in expr.children:
            inner = _as_rational(child)
            if inner is None:
                return None
            out += inner
        return out
    return None


@dataclass(frozen=True)
class BbpEquivalence:
    """Certificate that a base-16 series is a classic digit-extraction sum."""

    family: str  # "pi" or "two-pi"
    sigma: Fraction  # common multiplier of the family's slot template
    slot_coefficients: tuple[Fraction, ...]  # merged 1/(8n+j) weights, j=1..8
    head_correction: Fraction  # exact value the additive constant must equal
    lhs_coefficient: Fraction  # rational r with closed form r * pi


def verify_bbp_equivalence(spec: SeriesSpec, lhs: ConstExpr) -> BbpEquivalence:
    """Prove (exactly) that the series is sigma times a digit-extraction sum.

    The summand is collapsed to a rational function of k, split into partial
    fractions, and every pole is folded modulo 8 with the matching 16**m
    weight.  The folded slot vector must be proportional to one of the two
    classic templates, the index-shift head terms must reproduce the
    additive constant, and the template multiplier must reproduce the
    closed form's rational coefficient.  Raises :class:`NoMatch` with the
    first failing condition otherwise.
    """
    if spec.base != 16:
        raise NoMatch(f"digit-extraction reduction requires base 16, got {spec.base}")
    exponent, algebraic = pi_structure(lhs)
    if exponent != 1:
        raise NoMatch(f"closed form has pi-exponent {exponent}, expected 1")
    lhs_coefficient = _as_rational(algebraic)
    if lhs_coefficient is None:
        raise NoMatch("closed form is not a rational multiple of pi")
    form = partial_fractions(series_rational_summand(spec))
    if any(coeff != 0 for coeff in form.poly):
        raise NoMatch("summand keeps a polynomial part after partial fractions")
    slots = [Fraction(0)] * 9  # 1-indexed by j
    head = Fraction(0)
    for coeff, pole in form.terms:
        eighth = 8 * pole
        if eighth.denominator != 1:
            raise NoMatch(f"pole at k = {-pole} is not an eighth-integer")
        eighth = int(eighth)
        j = (eighth - 1) % 8 + 1
        fold = (eighth - j) // 8
        weight = 8 * coeff * Fraction(16) ** fold
        slots[j] += weight
        first_index = spec.start + fold
        if first_index >= 0:
            shift_sum = sum(
                Fraction(1, 16) ** n / (8 * n + j) for n in range(first_index)
            )
        else:
            shift_sum = -sum(
                Fraction(16) ** (-n) / (8 * n + j) for n in range(first_index, 0)
            )
        head += weight * shift_sum
    for family, template, multiplier in (
        ("pi", SLOTS_PI, Fraction(1)),
        ("two-pi", SLOTS_TWO_PI, Fraction(2)),
    ):
        sigma: Fraction | None = None
        consistent = True
        for j in range(1, 9):
            if template[j - 1] == 0:
                if slots[j] != 0:
                    consistent = False
                    break
            else:
                ratio = slots[j] / template[j - 1]
                if sigma is None:
                    sigma = ratio
                elif ratio != sigma:
                    consistent = False
                    break
        if not consistent or sigma is None:
            continue
        if spec.additive != head:
            raise NoMatch(
                f"additive constant {spec.additive} differs from the exact "
                f"index-shift correction {head}"
            )
        if sigma * multiplier != lhs_coefficient:
            raise NoMatch(
                f"template multiple {sigma * multiplier} differs from the "
                f"closed form coefficient {lhs_coefficient}"
            )
        return BbpEquivalence(
            family=family,
            sigma=sigma,
            slot_coefficients=tuple(slots[1:]),
            head_correction=head,
            lhs_coefficient=lhs_coefficient,
        )
    raise NoMatch(
        f"slot coefficients {tuple(map(str, slots[1:]))} fit neither "
        "digit-extraction template"
    )
