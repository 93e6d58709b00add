"""Words over Z_q, codes of equal-length words, and the prefix/suffix
predicates everything else is built on.

A word is a fixed-length sequence of symbols from {0, ..., q-1}.  Only
*proper* prefixes and suffixes (length 1 .. n-1) are ever considered.
A code is cross-bifix-free when no proper prefix of any member equals a
proper suffix of any member, the member itself included.

All types are immutable after construction; every operation here is a pure
function.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"
MAX_Q = len(DIGITS)  # words serialize as single base-36 digits

# brute-force ceiling for nonexpandability scans (q**n candidates)
NONEXPANDABLE_CAP = 2**24


class CapacityError(Exception):
    """An enumeration would exceed its configured guard."""


class CodeFormatError(ValueError):
    """Malformed code file; carries the offending line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True, order=True)
class Word:
    """An n-symbol word over the alphabet {0, ..., q-1}."""

    symbols: tuple[int, ...]
    q: int

    def __post_init__(self):
        if self.q < 2 or self.q > MAX_Q:
            raise ValueError(f"alphabet size must be in [2, {MAX_Q}], got {self.q}")
        if len(self.symbols) < 1:
            raise ValueError("word must have length >= 1")
        for s in self.symbols:
            if not 0 <= s <= self.q - 1:
                raise ValueError(f"symbol {s} outside [0, {self.q - 1}]")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[int]:
        return iter(self.symbols)

    @classmethod
    def run(cls, symbol: int, count: int, q: int) -> "Word":
        """The constant word symbol^count."""
        return cls((symbol,) * count, q)

    @classmethod
    def from_digits(cls, text: str, q: int) -> "Word":
        symbols = []
        for ch in text:
            value = DIGITS.find(ch.lower())
            if value < 0:
                raise ValueError(f"invalid digit {ch!r}")
            symbols.append(value)
        return cls(tuple(symbols), q)

    def to_digits(self) -> str:
        return "".join(DIGITS[s] for s in self.symbols)

    def __repr__(self) -> str:
        return f"Word({self.to_digits()!r}, q={self.q})"


def prefix(w: Word, length: int) -> Word:
    """The first `length` symbols of w; proper prefixes only."""
    if not 1 <= length <= len(w) - 1:
        raise ValueError(f"prefix length {length} not in [1, {len(w) - 1}]")
    return Word(w.symbols[:length], w.q)


def suffix(w: Word, length: int) -> Word:
    """The last `length` symbols of w; proper suffixes only."""
    if not 1 <= length <= len(w) - 1:
        raise ValueError(f"suffix length {length} not in [1, {len(w) - 1}]")
    return Word(w.symbols[-length:], w.q)


def _failure_function(symbols: tuple[int, ...]) -> list[int]:
    """KMP failure function; fail[i] = length of the longest proper border
    of symbols[:i+1]."""
    fail = [0] * len(symbols)
    length = 0
    for i in range(1, len(symbols)):
        while length > 0 and symbols[i] != symbols[length]:
            length = fail[length - 1]
        if symbols[i] == symbols[length]:
            length += 1
        fail[i] = length
    return fail


def is_bifix_free(w: Word) -> bool:
    """True iff no proper prefix of w equals a suffix of w of the same
    length.  Length-1 words are bifix-free vacuously (no proper affixes).

    Any border implies a longest border, so it suffices that the failure
    function ends at zero.
    """
    if len(w) == 1:
        return True
    return _failure_function(w.symbols)[-1] == 0


@lru_cache(maxsize=1 << 18)
def _affix_sets(symbols: tuple[int, ...]) -> tuple[frozenset, frozenset]:
    """(proper prefixes, proper suffixes) of a symbol tuple, as tuples."""
    n = len(symbols)
    prefixes = frozenset(symbols[:i] for i in range(1, n))
    suffixes = frozenset(symbols[n - i:] for i in range(1, n))
    return prefixes, suffixes


def cross_pair_ok(u: Word, v: Word) -> bool:
    """True iff no proper prefix of either word is a proper suffix of the
    other.  cross_pair_ok(w, w) coincides with is_bifix_free(w)."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    if u.q != v.q:
        raise ValueError(f"alphabet mismatch: q={u.q} vs q={v.q}")
    u_pre, u_suf = _affix_sets(u.symbols)
    v_pre, v_suf = _affix_sets(v.symbols)
    return u_pre.isdisjoint(v_suf) and v_pre.isdisjoint(u_suf)


@dataclass(frozen=True)
class Code:
    """A set of equal-length words over a common alphabet."""

    words: frozenset[Word]
    n: int
    q: int

    @classmethod
    def from_words(cls, words: Iterable[Word]) -> "Code":
        wordset = frozenset(words)
        if not wordset:
            raise ValueError("code must be nonempty")
        lengths = {len(w) for w in wordset}
        alphabets = {w.q for w in wordset}
        if len(lengths) > 1:
            raise ValueError(f"mixed word lengths: {sorted(lengths)}")
        if len(alphabets) > 1:
            raise ValueError(f"mixed alphabets: {sorted(alphabets)}")
        return cls(wordset, lengths.pop(), alphabets.pop())

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, w: Word) -> bool:
        return w in self.words

    def sorted_words(self) -> list[Word]:
        return sorted(self.words)


def _affix_pools(code: Code) -> tuple[set, set]:
    """All proper prefixes and all proper suffixes across the code, as
    symbol tuples."""
    prefixes: set = set()
    suffixes: set = set()
    for w in code.words:
        pre, suf = _affix_sets(w.symbols)
        prefixes |= pre
        suffixes |= suf
    return prefixes, suffixes


def verify_code(code: Code) -> bool:
    """True iff the code is cross-bifix-free: no proper prefix of any
    member is a proper suffix of any member, itself included.

    Pooling the affixes over the whole code is exactly the definitional
    all-pairs check (each word is compared against the pool, which covers
    the word itself).
    """
    if code.n == 1:
        # no proper affixes exist; vacuously cross-bifix-free
        return True
    prefixes, suffixes = _affix_pools(code)
    return prefixes.isdisjoint(suffixes)


def find_violation(code: Code) -> Optional[tuple[Word, Word, tuple[int, ...]]]:
    """A witness (prefix owner, suffix owner, shared segment) that breaks
    the cross-bifix-free property, or None when the code is valid."""
    if code.n == 1:
        return None
    suffix_owner: dict[tuple, Word] = {}
    for w in code.sorted_words():
        _, suf = _affix_sets(w.symbols)
        for s in suf:
            suffix_owner.setdefault(s, w)
    for w in code.sorted_words():
        pre, _ = _affix_sets(w.symbols)
        for p in sorted(pre, key=len):
            if p in suffix_owner:
                return w, suffix_owner[p], p
    return None


def find_expansion(code: Code, cap: int = NONEXPANDABLE_CAP) -> Optional[Word]:
    """Brute force over all q**n words: the first word (lexicographically)
    whose addition keeps the code cross-bifix-free, or None."""
    n, q = code.n, code.q
    if q**n > cap:
        raise CapacityError(f"q**n = {q**n} exceeds cap {cap}")
    if not verify_code(code):
        raise ValueError("code is not cross-bifix-free")
    prefixes, suffixes = _affix_pools(code)
    member_tuples = {w.symbols for w in code.words}
    for cand in itertools.product(range(q), repeat=n):
        if cand in member_tuples:
            continue
        cand_pre, cand_suf = _affix_sets(cand)
        if not cand_pre.isdisjoint(cand_suf):
            continue  # not bifix-free
        if cand_pre.isdisjoint(suffixes) and cand_suf.isdisjoint(prefixes):
            return Word(cand, q)
    return None


def is_nonexpandable(code: Code, cap: int = NONEXPANDABLE_CAP) -> bool:
    """True iff no word of Z_q^n outside the code can be added while
    keeping the code cross-bifix-free."""
    return find_expansion(code, cap=cap) is None


# ---------------------------------------------------------------------------
# file format: '# xbifix code n=<n> q=<q>' header, one base-36 word per
# line, lexicographically sorted, LF line endings.

def format_code(code: Code) -> str:
    lines = [f"# xbifix code n={code.n} q={code.q}"]
    lines.extend(w.to_digits() for w in code.sorted_words())
    return "\n".join(lines) + "\n"


def parse_code(text: str) -> Code:
    lines = text.split("\n")
    if not lines or not lines[0].startswith("# xbifix code "):
        raise CodeFormatError("missing '# xbifix code n=<n> q=<q>' header", line=1)
    fields = lines[0][len("# xbifix code "):].split()
    try:
        header = dict(item.split("=", 1) for item in fields)
        n = int(header["n"])
        q = int(header["q"])
    except (ValueError, KeyError) as exc:
        raise CodeFormatError(f"bad header: {exc}", line=1) from None
    words = []
    for i, line in enumerate(lines[1:], start=2):
        if not line:
            continue
        try:
            w = Word.from_digits(line, q)
        except ValueError as exc:
            raise CodeFormatError(str(exc), line=i) from None
        if len(w) != n:
            raise CodeFormatError(f"word length {len(w)} != n={n}", line=i)
        words.append(w)
    if not words:
        raise CodeFormatError("no words in file")
    code = Code.from_words(words)
    if len(code.words) != len(words):
        raise CodeFormatError("duplicate words in file")
    return code


def write_code(code: Code, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_code(code))


def read_code(path) -> Code:
    with open(path) as fh:
        return parse_code(fh.read())
