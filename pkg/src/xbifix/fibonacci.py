"""The (q-1)-weighted k-step Fibonacci sequence and its characteristic
polynomial machinery.

F(n) = (q-1) * (F(n-1) + ... + F(n-k)), initialized F(i) = q**i for
0 <= i <= k-1.  The growth rate is the unique real root alpha of

    f(x) = x**k - (q-1) * (x**(k-1) + ... + x + 1)

in the interval (1, q); all other roots lie inside the unit disk.  The
auxiliary polynomial g(x) = (x-1)*f(x) = x**k * (x - q) + (q-1) is
negative on (1, alpha) and positive on (alpha, infinity), which makes it
the bisection target of choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mp

DEFAULT_PRECISION_BITS = 128

_fib_cache: dict[tuple[int, int], list[int]] = {}


class PrecisionError(Exception):
    """Working precision could not certify the rounding step."""


def _check_kq(k: int, q: int) -> None:
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")


def fib(k: int, q: int, n: int) -> int:
    """Exact F_{k,q}(n) by the memoized recurrence."""
    _check_kq(k, q)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    values = _fib_cache.setdefault((k, q), [q**i for i in range(k)])
    while len(values) <= n:
        values.append((q - 1) * sum(values[-k:]))
    return values[n]


def f_poly(k: int, q: int, x):
    """x**k - (q-1) * sum(x**i for i in range(k)), by Horner."""
    acc = x - (q - 1)
    for _ in range(k - 1):
        acc = acc * x - (q - 1)
    return acc


def g_poly(k: int, q: int, x):
    """(x-1)*f(x) in the compact form x**k * (x-q) + (q-1)."""
    return x**k * (x - q) + (q - 1)


@dataclass(frozen=True)
class RootEstimate:
    """Bracketed estimate of the dominant root alpha(k, q) in (1, q)."""

    alpha: mpmath.mpf
    lo: mpmath.mpf
    hi: mpmath.mpf
    precision_bits: int


from functools import lru_cache


@lru_cache(maxsize=4096)
def find_alpha(k: int, q: int, precision_bits: int = DEFAULT_PRECISION_BITS) -> RootEstimate:
    """Bisection for the unique root of g in (1, q).

    The starting bracket is sound because g < 0 just above 1 (g(1) = 0
    with negative slope there, equivalently f(1) = 1 - k(q-1) < 0) and
    g(q) = q - 1 > 0.
    """
    _check_kq(k, q)
    if precision_bits < 53:
        raise ValueError("precision_bits must be >= 53")
    with mp.workprec(precision_bits + 16):
        lo = mp.mpf(1) + mp.mpf(2) ** (-precision_bits)
        hi = mp.mpf(q)
        assert g_poly(k, q, lo) < 0 and g_poly(k, q, hi) > 0
        target = mp.mpf(2) ** (-precision_bits) * q
        while hi - lo > target:
            mid = (lo + hi) / 2
            if g_poly(k, q, mid) < 0:
                lo = mid
            else:
                hi = mid
        alpha = (lo + hi) / 2
    return RootEstimate(alpha=alpha, lo=lo, hi=hi, precision_bits=precision_bits)


def kq_threshold(q: int) -> int:
    """Smallest k >= 1 with (1 - 1/q**k)**k > 1 - 1/q, in exact rational
    arithmetic.  At and above this k the beta bracket of beta_bracket()
    is guaranteed to contain a sign change of g."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    rhs = 1 - Fraction(1, q)
    k = 1
    while (1 - Fraction(1, q**k)) ** k <= rhs:
        k += 1
    return k


def beta_bracket(k: int, q: int, precision_bits: int = DEFAULT_PRECISION_BITS):
    """A beta in (q - 1/q**(k-1), q) with g(beta) < 0, and the certified
    lower bound q - (q-1)/beta**k < alpha.

    Requires k >= kq_threshold(q) so that g is negative at the left end
    of the bracket.  Returns (beta, lower_bound).
    """
    _check_kq(k, q)
    threshold = kq_threshold(q)
    if k < threshold:
        raise ValueError(
            f"k={k} below kq_threshold({q})={threshold}; no beta bracket is guaranteed"
        )
    # alpha sits within (q-1)/q**k of q, and the certified gap between
    # alpha and the lower bound can shrink like q**(-2k), so the working
    # precision must grow with k*log2(q)
    bits = max(precision_bits, 4 * k * q.bit_length() + 64)
    while bits <= 1 << 20:
        with mp.workprec(bits + 16):
            low = mp.mpf(q) - mp.mpf(q) ** (-(k - 1))
            assert g_poly(k, q, low) < 0
            beta = (low + mp.mpf(q)) / 2
            while g_poly(k, q, beta) >= 0:
                beta = (low + beta) / 2
            lower = mp.mpf(q) - (q - 1) / beta**k
            est = find_alpha(k, q, bits)
            # compare against the rigorous bracket, not the midpoint
            if lower < est.lo and est.hi < q:
                return beta, lower
        bits *= 2
    raise PrecisionError(f"beta bracket for k={k}, q={q} did not certify")


def _alpha_interval(k: int, q: int, precision_bits: int):
    """alpha(k, q) as an mpmath interval enclosing the true root."""
    est = find_alpha(k, q, precision_bits)
    return mpmath.iv.mpf([est.lo, est.hi])


def fib_closed_form(
    k: int, q: int, n: int, precision_bits: int = DEFAULT_PRECISION_BITS
) -> int:
    """F_{k,q}(n) as the nearest integer to

        (alpha - 1) * alpha**(n+1) / ((q + (k+1)*(alpha - q)) * (q - 1))

    evaluated in interval arithmetic.  The rounding is certified: the
    enclosing interval must lie strictly within (m - 1/2, m + 1/2) for a
    single integer m, otherwise precision is escalated.  Raises
    PrecisionError if certification still fails at 64x the requested
    precision.
    """
    _check_kq(k, q)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    bits = precision_bits
    while bits <= precision_bits * 64:
        old_prec = mpmath.iv.prec
        try:
            mpmath.iv.prec = bits + 16
            a = _alpha_interval(k, q, bits)
            numer = (a - 1) * a ** (n + 1)
            denom = (q + (k + 1) * (a - q)) * (q - 1)
            value = numer / denom
            with mp.workprec(bits + 16):
                lo_end = mp.mpf(value.a)
                hi_end = mp.mpf(value.b)
                lo_n = mpmath.floor(lo_end + mp.mpf("0.5"))
                hi_n = mpmath.floor(hi_end + mp.mpf("0.5"))
                if lo_n == hi_n:
                    m = int(lo_n)
                    # 0.5 is exact in binary; strict containment certifies [x]
                    if lo_end > m - mp.mpf("0.5") and hi_end < m + mp.mpf("0.5"):
                        return m
        finally:
            mpmath.iv.prec = old_prec
        bits *= 2
    raise PrecisionError(
        f"could not certify rounding for k={k}, q={q}, n={n} up to {bits // 2} bits"
    )


def other_roots_inside_unit_disk(k: int, q: int, tol: float = 1e-8) -> bool:
    """Numeric validation (not a proof) that f has exactly one root of
    modulus > 1 and all k roots are pairwise distinct beyond `tol`."""
    import numpy as np

    _check_kq(k, q)
    if k > 64:
        raise ValueError(f"k={k} beyond the numeric root-finder range (64)")
    coeffs = [1.0] + [-(q - 1.0)] * k
    roots = np.roots(coeffs)
    if len(roots) != k:
        return False
    outside = int(np.sum(np.abs(roots) > 1.0))
    if outside != 1:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            if abs(roots[i] - roots[j]) <= tol:
                return False
    return True
