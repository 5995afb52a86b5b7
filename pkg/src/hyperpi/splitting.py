"""Integer binary splitting for hypergeometric-style partial sums.

Evaluates sums of the form

    S = sum_{j=lo}^{hi-1} w(j) * prod_{i=lo}^{j-1} alpha(i) / beta(i)

entirely in (big) integers.  The recursion keeps three accumulators per
range: the alpha-product A, the beta-product B and a numerator T with
S = T / B.  Balanced splitting keeps intermediate operands near-minimal in
size so the dominant cost is a handful of large multiplications instead of
quadratically many small ones.

When gmpy2 is importable its mpz type is used for the multiplications
(asymptotically fast); otherwise plain Python integers are used and results
are identical, just slower.
"""

from __future__ import annotations

from typing import Callable

try:  # pragma: no cover - exercised implicitly on hosts with gmpy2
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = int

Intish = int  # both int and gmpy2.mpz flow through these helpers


def product_sum(
    weight: Callable[[int], int],
    alpha: Callable[[int], int],
    beta: Callable[[int], int],
    lo: int,
    hi: int,
) -> tuple[Intish, Intish, Intish]:
    """Binary-split the weighted product sum over the index range [lo, hi).

    Returns integers (A, B, T) with

        A = prod_{i in [lo, hi)} alpha(i)
        B = prod_{i in [lo, hi)} beta(i)
        T = sum_{j in [lo, hi)} weight(j)
              * prod_{i in [lo, j)} alpha(i) * prod_{i in [j, hi)} beta(i)

    so that the desired sum equals T / B.  An empty range yields (1, 1, 0).
    """
    if hi <= lo:
        return _mpz(1), _mpz(1), _mpz(0)
    if hi - lo == 1:
        b = _mpz(beta(lo))
        return _mpz(alpha(lo)), b, _mpz(weight(lo)) * b
    mid = (lo + hi) // 2
    a_left, b_left, t_left = product_sum(weight, alpha, beta, lo, mid)
    a_right, b_right, t_right = product_sum(weight, alpha, beta, mid, hi)
    return (
        a_left * a_right,
        b_left * b_right,
        t_left * b_right + a_left * t_right,
    )


def alternating_arctan_sum(inv_arg: int, terms: int) -> tuple[Intish, Intish]:
    """Exact rational arctangent series tail as a (numerator, denominator) pair.

    Returns integers (T, B) with T/B = sum_{k=0}^{terms-1} (-1)^k / ((2k+1) * inv_arg^(2k)),
    so that atan(1/inv_arg) = T / (B * inv_arg) up to the truncation error of
    the series.
    """
    q2 = inv_arg * inv_arg
    _, b, t = product_sum(
        lambda j: 1,
        lambda i: -(2 * i + 1),
        lambda i: (2 * i + 3) * q2,
        0,
        terms,
    )
    return t, b
