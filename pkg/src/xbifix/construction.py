"""The zero-run construction of cross-bifix-free codes.

For 2 <= k <= n-2, the code S_{k,q}(n) is the set of all length-n words
that start with exactly k zeros followed by a nonzero symbol, end with a
nonzero symbol, and contain no run of k zeros in the interior window
(positions k+2 .. n-1).  Its cardinality is (q-1)**2 * F_{k,q}(n-k-2),
and maximizing over k gives the best size S(n, q) for each length.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .fibonacci import fib
from .words import CapacityError, Code, Word

DEFAULT_ENUM_CAP = 2**20


def validate_params(n: int, k: int, q: int) -> None:
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if not 2 <= k <= n - 2:
        raise ValueError(f"k={k} outside [2, n-2] = [2, {n - 2}] for n={n}")


def _has_zero_run(symbols: tuple[int, ...], k: int) -> bool:
    run = 0
    for s in symbols:
        run = run + 1 if s == 0 else 0
        if run >= k:
            return True
    return False


def generate_direct(n: int, k: int, q: int, cap: int = DEFAULT_ENUM_CAP) -> Code:
    """Enumerate the code by filtering all q**(n-k-2) interior windows.

    Words come out as 0^k, alpha, middle, beta with alpha and beta nonzero
    and no k-run of zeros in the middle; middles are generated in
    lexicographic order so output is deterministic.
    """
    validate_params(n, k, q)
    middles = q ** (n - k - 2)
    if middles > cap:
        raise CapacityError(f"q**(n-k-2) = {middles} exceeds cap {cap}")
    zeros = (0,) * k
    nonzero = range(1, q)
    words = []
    for alpha in nonzero:
        for middle in itertools.product(range(q), repeat=n - k - 2):
            if _has_zero_run(middle, k):
                continue
            for beta in nonzero:
                words.append(Word(zeros + (alpha,) + middle + (beta,), q))
    return Code.from_words(words)


def generate_recursive(n: int, k: int, q: int, cap: int = DEFAULT_ENUM_CAP) -> Code:
    """The same code via its recursive decomposition.

    Base case (k+2 <= n <= 2k+1): the interior window is shorter than k,
    so every window is admissible.  For n >= 2k+2 the code is the disjoint
    union over l = 1..k of {(s, 0^(l-1), alpha)} with s drawn from the
    length n-l code.
    """
    validate_params(n, k, q)
    if q ** (n - k - 2) > cap:
        raise CapacityError(f"q**(n-k-2) = {q ** (n - k - 2)} exceeds cap {cap}")
    memo: dict[int, list[tuple[int, ...]]] = {}

    def build(m: int) -> list[tuple[int, ...]]:
        if m in memo:
            return memo[m]
        zeros = (0,) * k
        nonzero = range(1, q)
        if m <= 2 * k + 1:
            out = [
                zeros + (a,) + mid + (b,)
                for a in nonzero
                for mid in itertools.product(range(q), repeat=m - k - 2)
                for b in nonzero
            ]
        else:
            out = []
            seen: set[tuple[int, ...]] = set()
            for l in range(1, k + 1):
                part = [
                    s + (0,) * (l - 1) + (a,)
                    for s in build(m - l)
                    for a in nonzero
                ]
                # the T_l parts must be pairwise disjoint
                assert seen.isdisjoint(part)
                seen.update(part)
                out.extend(part)
        memo[m] = out
        return out

    return Code.from_words(Word(t, q) for t in build(n))


def size_formula(n: int, k: int, q: int) -> int:
    """Exact |S_{k,q}(n)| = (q-1)**2 * F_{k,q}(n-k-2)."""
    validate_params(n, k, q)
    return (q - 1) ** 2 * fib(k, q, n - k - 2)


@dataclass(frozen=True)
class SizeRecord:
    """Best construction size S(n, q) and the per-k breakdown."""

    n: int
    q: int
    best_k: int | None
    size: int
    per_k: dict[int, int] = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        # big integers as decimal strings to survive any JSON consumer
        return {
            "n": self.n,
            "q": self.q,
            "best_k": self.best_k,
            "size": str(self.size),
            "per_k": {str(k): str(v) for k, v in sorted(self.per_k.items())},
        }


def best_size(n: int, q: int) -> SizeRecord:
    """Maximize the construction size over k, smallest maximizing k on
    ties.  n = 3 has no valid k; the known value 1 (the singleton {001})
    is returned for the binary alphabet only."""
    if n < 3:
        raise ValueError(f"n must be >= 3, got {n}")
    if n == 3:
        if q != 2:
            raise ValueError("n=3 is only tabulated for the binary alphabet")
        return SizeRecord(n=3, q=2, best_k=None, size=1, per_k={})
    per_k = {k: size_formula(n, k, q) for k in range(2, n - 1)}
    best_k = min(k for k, v in per_k.items() if v == max(per_k.values()))
    return SizeRecord(n=n, q=q, best_k=best_k, size=per_k[best_k], per_k=per_k)
