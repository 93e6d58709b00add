"""Upper bound on the maximum code size, comparison sizes from earlier
constructions, and asymptotic-ratio diagnostics.

The variance of the first-match time of an M-word code in a uniform
q-ary stream is

    sigma**2 = (1 - 2n) * q**n / M + q**(2n) / M**2

and nonnegativity of the variance forces M <= q**n / (2n - 1), the upper
bound used throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .fibonacci import find_alpha
from .construction import best_size, size_formula
from .words import CapacityError

PROBE_N_CAP = 200_000


def upper_bound(n: int, q: int) -> Fraction:
    """q**n / (2n - 1) as an exact rational; never pre-floored."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    return Fraction(q**n, 2 * n - 1)


def variance_formula(n: int, q: int, M: int) -> float:
    """First-match-time variance for an M-word length-n code; negative
    only when M exceeds the upper bound."""
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    return float((1 - 2 * n) * Fraction(q**n, M) + Fraction(q ** (2 * n), M * M))


def catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


def bilotta_size(n: int) -> int:
    """Size of the binary lattice-path codes for comparison.

    For even n = 2m+2 the two summation cases are keyed on the parity of
    m; the printed case labels in the source do not reproduce the known
    size table (23 at n=10, 72 at n=12, 227 at n=14), so the labels here
    are swapped and the half-integer summation limits floored, which
    matches every tabulated entry.
    """
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if n % 2 == 1:
        return catalan((n - 1) // 2)
    m = (n - 2) // 2
    if m % 2 == 0:
        return sum(catalan(i) * catalan(m - i) for i in range(m // 2 + 1))
    total = sum(catalan(i) * catalan(m - i) for i in range((m + 1) // 2 + 1))
    return total - catalan((m - 1) // 2) ** 2


def dist_seq_bound(n: int) -> tuple[float, int]:
    """(size bound 2**(n - 2*sqrt(n-1)), minimal h with h**2//4 + 1 >= n)
    for binary distributed sequences.  A bound, not a construction."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    bound = 2.0 ** (n - 2.0 * math.sqrt(n - 1))
    h = 1
    while h * h // 4 + 1 < n:
        h += 1
    return bound, h


def target_ratio(q: int) -> float:
    """The asymptotic lower-bound constant (q-1)/(q*e)."""
    return (q - 1) / (q * math.e)


@dataclass(frozen=True)
class ProbeRow:
    k: int
    n: int
    size: int
    ratio: float


def asymptotic_probe(
    q: int,
    k_range,
    c: float | None = None,
    n_cap: int = PROBE_N_CAP,
) -> list[ProbeRow]:
    """Size-to-bound ratios along the scaling n(k) = ceil(c * alpha**k).

    For each k the exact construction size at that k and length n(k) is
    computed and the ratio size * n / q**n reported; as k grows the ratio
    approaches (q-1)/(q*e) from below when c = q/(q-1), the maximizing
    choice.
    """
    if c is None:
        c = q / (q - 1)
    if c <= 0:
        raise ValueError(f"c must be positive, got {c}")
    rows = []
    for k in k_range:
        alpha = find_alpha(k, q).alpha
        n = int(math.ceil(c * alpha**k))
        if n > n_cap:
            raise CapacityError(f"n(k={k}) = {n} exceeds cap {n_cap}")
        size = size_formula(n, k, q)
        # ratio via logs: q**n is far beyond float range
        log_ratio = math.log(size) + math.log(n) - n * math.log(q)
        rows.append(ProbeRow(k=k, n=n, size=size, ratio=math.exp(log_ratio)))
    return rows


@dataclass(frozen=True)
class BoundsReport:
    """Per-length summary: construction size against the variance bound
    and the earlier binary constructions."""

    n: int
    q: int
    construction_size: int
    best_k: int | None
    upper_bound: Fraction
    bilotta: int | None
    dist_seq: float | None
    ratio_lower: float
    ratio_upper: float


def bounds_report(n: int, q: int) -> BoundsReport:
    record = best_size(n, q)
    bound = upper_bound(n, q)
    log_qn = n * math.log(q)
    ratio_lower = math.exp(math.log(record.size) + math.log(n) - log_qn)
    ratio_upper = math.exp(
        math.log(bound.numerator) - math.log(bound.denominator) + math.log(n) - log_qn
    )
    return BoundsReport(
        n=n,
        q=q,
        construction_size=record.size,
        best_k=record.best_k,
        upper_bound=bound,
        bilotta=bilotta_size(n) if q == 2 else None,
        dist_seq=dist_seq_bound(n)[0] if q == 2 and n >= 2 else None,
        ratio_lower=ratio_lower,
        ratio_upper=ratio_upper,
    )
