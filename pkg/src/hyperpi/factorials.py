"""Exact rational building blocks: Pochhammer symbols, factorial quotients,
series term descriptions, polynomial utilities and partial fractions.

Everything in this module is exact; values are :class:`fractions.Fraction`
and polynomial coefficients are ascending tuples of fractions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from hyperpi.errors import (
    DomainError,
    InvariantViolation,
    RepeatedPole,
    ZeroDenominator,
)

Rat = Fraction
Poly = tuple[Fraction, ...]  # ascending coefficients


# ----------------------------------------------------------------------
# Pochhammer symbols and factorial quotients
# ----------------------------------------------------------------------


def pochhammer(x: Fraction, n: int) -> Fraction:
    """Rising factorial (x)_n = x (x+1) ... (x+n-1), with (x)_0 = 1."""
    if n < 0:
        raise DomainError("pochhammer requires a nonnegative index")
    out = Fraction(1)
    for i in range(n):
        out *= x + i
    return out


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k); zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def poch_quotient(upper: Sequence[Fraction], lower: Sequence[Fraction], n: int) -> Fraction:
    """Product of rising factorials (u)_n over the product of (l)_n.

    Raises :class:`ZeroDenominator` when a lower rising factorial vanishes.
    """
    num = Fraction(1)
    for u in upper:
        num *= pochhammer(u, n)
    den = Fraction(1)
    for low in lower:
        den *= pochhammer(low, n)
    if den == 0:
        raise ZeroDenominator(f"lower rising factorial vanished at n={n}")
    return num / den


def phi_eval(
    a_of: Callable[[int], Fraction],
    b_of: Callable[[int], Fraction],
    x: Fraction,
    n: int,
) -> Fraction:
    """The triangular product phi(x; n) = prod_{j=0}^{n-1} (a_j + x * b_j).

    phi(x; 0) = 1 by convention.
    """
    if n < 0:
        raise DomainError("phi requires a nonnegative length")
    out = Fraction(1)
    for j in range(n):
        out *= a_of(j) + x * b_of(j)
    return out


@dataclass(frozen=True)
class FactorialQuotient:
    """A quotient of rising-factorial products evaluated at a shared index."""

    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]

    def validate(self) -> None:
        for low in self.lower:
            if low.denominator == 1 and low <= 0:
                raise InvariantViolation(
                    f"lower entry {low} is a non-positive integer; the quotient "
                    "would divide by zero for large indices"
                )

    def eval_at(self, n: int) -> Fraction:
        return poch_quotient(self.upper, self.lower, n)


@dataclass(frozen=True)
class DuplicatedIndex:
    """Result of rewriting (x)_{2k} or (x)_{2k+1} in terms of index-k symbols.

    Meaning: original = prefactor * 4**k * (halves[0])_k * (halves[1])_k.
    """

    halves: tuple[Fraction, Fraction]
    prefactor: Fraction


def duplicate_index(x: Fraction, parity: str) -> DuplicatedIndex:
    """Index-duplication rewrite of a rising factorial.

    * ``parity="even"``: (x)_{2k}   = 4**k (x/2)_k ((x+1)/2)_k
    * ``parity="odd"``:  (x)_{2k+1} = x * 4**k ((x+1)/2)_k ((x+2)/2)_k
    """
    if parity == "even":
        return DuplicatedIndex((x / 2, (x + 1) / 2), Fraction(1))
    if parity == "odd":
        return DuplicatedIndex(((x + 1) / 2, (x + 2) / 2), x)
    raise DomainError(f"unknown parity {parity!r}")


# ----------------------------------------------------------------------
# polynomial helpers (ascending coefficient tuples of Fractions)
# ----------------------------------------------------------------------


def poly_trim(coeffs: Iterable[Fraction]) -> Poly:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_eval(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(tuple(coeffs)):
        acc = acc * x + c
    return acc


def poly_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Poly:
    n = max(len(a), len(b))
    return poly_trim(
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    )


def poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> Poly:
    if not a or not b:
        return ()
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return poly_trim(out)


def poly_scale(a: Sequence[Fraction], s: Fraction) -> Poly:
    return poly_trim(c * s for c in a)


def poly_shift(coeffs: Sequence[Fraction], h: Fraction) -> Poly:
    """Coefficients of p(x + h)."""
    out: Poly = ()
    for c in reversed(tuple(coeffs)):
        out = poly_add(poly_mul(out, (Fraction(h), Fraction(1))), (Fraction(c),))
    return out


def poly_divmod(num: Sequence[Fraction], den: Sequence[Fraction]) -> tuple[Poly, Poly]:
    den_t = poly_trim(den)
    if not den_t:
        raise ZeroDenominator("polynomial division by zero")
    rem = list(poly_trim(num))
    q = [Fraction(0)] * max(0, len(rem) - len(den_t) + 1)
    lead = den_t[-1]
    while len(rem) >= len(den_t):
        factor = rem[-1] / lead
        pos = len(rem) - len(den_t)
        q[pos] = factor
        for i, c in enumerate(den_t):
            rem[pos + i] -= factor * c
        while rem and rem[-1] == 0:
            rem.pop()
        if not rem:
            break
    return poly_trim(q), poly_trim(rem)


def poly_derivative(coeffs: Sequence[Fraction]) -> Poly:
    return poly_trim(c * i for i, c in enumerate(coeffs) if i >= 1)


def poly_interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> Poly:
    """Exact interpolating polynomial through distinct points (Newton form)."""
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise DomainError("interpolation nodes must be distinct")
    # Divided differences.
    table = [Fraction(y) for _, y in points]
    coeffs = [table[0]]
    for level in range(1, len(points)):
        for i in range(len(points) - level):
            table[i] = (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
        coeffs.append(table[0])
    # Expand the Newton form into the monomial basis.
    out: Poly = ()
    basis: Poly = (Fraction(1),)
    for i, c in enumerate(coeffs):
        out = poly_add(out, poly_scale(basis, c))
        basis = poly_mul(basis, (-xs[i], Fraction(1)))
    return out


def poly_rational_roots(coeffs: Sequence[Fraction]) -> tuple[list[Fraction], Poly]:
    """Peel off rational linear factors of a polynomial.

    Returns (roots-with-multiplicity, remaining-factor).  The remaining
    factor has no rational roots.
    """
    p = poly_trim(coeffs)
    if not p:
        raise DomainError("zero polynomial has every root")
    roots: list[Fraction] = []
    while len(p) >= 2:
        # Root zero: constant coefficient vanishes.
        if p[0] == 0:
            roots.append(Fraction(0))
            p = poly_trim(p[1:])
            continue
        # Primitive integer form for the rational root theorem.
        denlcm = math.lcm(*(c.denominator for c in p))
        ints = [int(c * denlcm) for c in p]
        g = math.gcd(*ints)
        ints = [c // g for c in ints]
        found = None
        for pnum in _divisors(abs(ints[0])):
            for pden in _divisors(abs(ints[-1])):
                for cand in (Fraction(pnum, pden), Fraction(-pnum, pden)):
                    if poly_eval(p, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots.append(found)
        q, r = poly_divmod(p, (-found, Fraction(1)))
        assert not r, "exact root division left a remainder"
        p = q
    return roots, p


def _divisors(n: int) -> list[int]:
    if n == 0:
        return []
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


# ----------------------------------------------------------------------
# rational functions of the summation index
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class RationalFunctionOfK:
    """A quotient of polynomials in the summation index k.

    The denominator is stored monic (leading coefficient one); the
    numerator absorbs the scaling.
    """

    num: tuple[Fraction, ...]
    den: tuple[Fraction, ...]

    @staticmethod
    def make(num: Sequence[Fraction], den: Sequence[Fraction]) -> "RationalFunctionOfK":
        num_t, den_t = poly_trim(num), poly_trim(den)
        if not den_t:
            raise ZeroDenominator("rational function with zero denominator")
        lead = den_t[-1]
        return RationalFunctionOfK(poly_scale(num_t, 1 / lead), poly_scale(den_t, 1 / lead))

    def eval_at(self, k: Fraction) -> Fraction:
        den = poly_eval(self.den, Fraction(k))
        if den == 0:
            raise ZeroDenominator(f"rational function has a pole at k={k}")
        return poly_eval(self.num, Fraction(k)) / den

    def equals(self, other: "RationalFunctionOfK") -> bool:
        """Equality as rational functions (cross-multiplied polynomials)."""
        return poly_mul(self.num, other.den) == poly_mul(other.num, self.den)


@dataclass(frozen=True)
class PartialFractionForm:
    """``poly(k) + sum coeffs[i] / (k + poles[i])`` with distinct poles."""

    poly: tuple[Fraction, ...]
    terms: tuple[tuple[Fraction, Fraction], ...]  # (coefficient, pole)

    def recombine(self) -> RationalFunctionOfK:
        den: Poly = (Fraction(1),)
        for _, pole in self.terms:
            den = poly_mul(den, (pole, Fraction(1)))
        num = poly_mul(self.poly, den)
        for i, (coeff, _) in enumerate(self.terms):
            factor: Poly = (coeff,)
            for j, (_, pole) in enumerate(self.terms):
                if j != i:
                    factor = poly_mul(factor, (pole, Fraction(1)))
            num = poly_add(num, factor)
        return RationalFunctionOfK.make(num, den)

    def eval_at(self, k: Fraction) -> Fraction:
        acc = poly_eval(self.poly, Fraction(k))
        for coeff, pole in self.terms:
            d = Fraction(k) + pole
            if d == 0:
                raise ZeroDenominator(f"partial fraction pole at k={k}")
            acc += coeff / d
        return acc


def partial_fractions(rf: RationalFunctionOfK) -> PartialFractionForm:
    """Exact partial-fraction expansion over the rationals.

    Requires the denominator to split into distinct rational linear factors;
    raises :class:`RepeatedPole` for repeated roots and
    :class:`DomainError` when an irreducible factor of degree two or more
    remains.
    """
    if len(rf.den) == 1:  # constant (monic) denominator
        return PartialFractionForm(poly_trim(rf.num), ())
    roots, rest = poly_rational_roots(rf.den)
    if len(rest) > 1:
        raise DomainError("denominator does not split into rational linear factors")
    if len(set(roots)) != len(roots):
        raise RepeatedPole("denominator has a repeated rational root")
    quotient, remainder = poly_divmod(rf.num, rf.den)
    dprime = poly_derivative(rf.den)
    terms = []
    for root in roots:
        coeff = poly_eval(remainder, root) / poly_eval(dprime, root)
        terms.append((coeff, -root))
    return PartialFractionForm(quotient, tuple(terms))


# ----------------------------------------------------------------------
# series term descriptions
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesSpec:
    """Closed description of one hypergeometric-style series.

    The represented value is

        additive + sign * sum_{k >= start} poly(k)
            * prod (upper_i)_k / prod (lower_j)_k / base**k
    """

    upper: tuple[Fraction, ...]
    lower: tuple[Fraction, ...]
    poly: tuple[Fraction, ...]
    base: int
    start: int = 0
    additive: Fraction = Fraction(0)
    sign: int = 1

    def validate(self) -> None:
        if self.base < 2:
            raise InvariantViolation(f"base must be at least 2, got {self.base}")
        if self.sign not in (1, -1):
            raise InvariantViolation(f"sign must be +1 or -1, got {self.sign}")
        if self.start < 0:
            raise InvariantViolation(f"start index must be nonnegative, got {self.start}")
        if not poly_trim(self.poly):
            raise InvariantViolation("weight polynomial must be nonzero")
        FactorialQuotient(self.upper, self.lower).validate()


def term_eval(spec: SeriesSpec, k: int) -> Fraction:
    """Exact k-th term of the series (excluding the additive constant)."""
    if k < spec.start:
        raise DomainError(f"term index {k} below start index {spec.start}")
    quotient = poch_quotient(spec.upper, spec.lower, k)
    return (
        Fraction(spec.sign)
        * poly_eval(spec.poly, Fraction(k))
        * quotient
        / Fraction(spec.base) ** k
    )


def term_values(spec: SeriesSpec, k_first: int, k_last: int) -> list[Fraction]:
    """Terms for k in [k_first, k_last], maintained incrementally."""
    if k_first < spec.start:
        raise DomainError("first index below start index")
    out = []
    num = Fraction(1)
    den = Fraction(1)
    for u in spec.upper:
        num *= pochhammer(u, k_first)
    for low in spec.lower:
        den *= pochhammer(low, k_first)
    if den == 0:
        raise ZeroDenominator("lower rising factorial vanished")
    scale = Fraction(spec.base) ** k_first
    for k in range(k_first, k_last + 1):
        out.append(Fraction(spec.sign) * poly_eval(spec.poly, Fraction(k)) * num / den / scale)
        for u in spec.upper:
            num *= u + k
        for low in spec.lower:
            den *= low + k
        if den == 0:
            raise ZeroDenominator(f"lower rising factorial vanished at k={k + 1}")
        scale *= spec.base
    return out


def term_ratio(spec: SeriesSpec) -> RationalFunctionOfK:
    """The ratio term(k+1)/term(k) as an exact rational function of k."""
    num = poly_shift(spec.poly, Fraction(1))
    for u in spec.upper:
        num = poly_mul(num, (u, Fraction(1)))
    den: Poly = poly_scale(spec.poly, Fraction(spec.base))
    for low in spec.lower:
        den = poly_mul(den, (low, Fraction(1)))
    return RationalFunctionOfK.make(num, den)
