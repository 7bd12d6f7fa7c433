"""Generating sets of length-m words and their reverse-complement structure.

A generating set S is RC-free: no two members (possibly the same one) are
reverse complements of each other.  The window-constrained code C_n(S) is
the set of length-n sequences all of whose m-windows lie in S.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Tuple

import numpy as np

from .sequences import (
    BudgetExceededError,
    code_to_word,
    enumeration_budget,
    rc_code,
    window_multiset,
    word_to_code,
)


class InvalidGeneratingSetError(ValueError):
    """The generating set violates RC-freeness (or is otherwise malformed)."""


def all_codes(m: int) -> np.ndarray:
    return np.arange(4 ** m, dtype=np.int64)


def rc_codes(codes: np.ndarray, m: int) -> np.ndarray:
    """Vectorized reverse complement on integer-coded words."""
    c = np.asarray(codes, dtype=np.int64).copy()
    out = np.zeros_like(c)
    for _ in range(m):
        out = out * 4 + (3 - c % 4)
        c //= 4
    return out


def tc_weights(codes: np.ndarray, m: int) -> np.ndarray:
    """Number of T/C symbols per word.  T and C have odd codes."""
    c = np.asarray(codes, dtype=np.int64).copy()
    w = np.zeros_like(c)
    for _ in range(m):
        w += c % 4 & 1
        c //= 4
    return w


def codes_with_tc_mask(m: int, mask: str) -> np.ndarray:
    """All words whose TC pattern (T,C -> 1; A,G -> 0) equals the given mask."""
    if len(mask) != m or any(ch not in "01" for ch in mask):
        raise ValueError(f"mask {mask!r} is not a length-{m} binary string")
    c = all_codes(m).copy()
    ok = np.ones(len(c), dtype=bool)
    for pos in range(m - 1, -1, -1):  # least-significant digit is the last position
        ok &= (c % 4 & 1) == int(mask[pos])
        c //= 4
    return all_codes(m)[ok]


@dataclass(frozen=True, eq=False)
class GeneratingSet:
    """A set of length-m words, stored as a sorted array of integer codes."""

    m: int
    codes: np.ndarray

    @classmethod
    def from_codes(cls, m: int, codes: Iterable[int]) -> "GeneratingSet":
        arr = np.unique(np.asarray(list(codes) if not isinstance(codes, np.ndarray) else codes,
                                   dtype=np.int64))
        if len(arr) and (arr[0] < 0 or arr[-1] >= 4 ** m):
            raise ValueError(f"word code out of range for m={m}")
        arr.setflags(write=False)
        return cls(m=m, codes=arr)

    @classmethod
    def from_words(cls, words: Iterable[str]) -> "GeneratingSet":
        words = list(words)
        if not words:
            raise ValueError("generating set needs at least one word")
        m = len(words[0])
        for w in words:
            if len(w) != m:
                raise ValueError(f"mixed word lengths: {words[0]!r} vs {w!r}")
        return cls.from_codes(m, [word_to_code(w) for w in words])

    def words(self) -> List[str]:
        return [code_to_word(int(c), self.m) for c in self.codes]

    def __len__(self) -> int:
        return len(self.codes)

    def __contains__(self, word: str) -> bool:
        if len(word) != self.m:
            return False
        c = word_to_code(word)
        i = int(np.searchsorted(self.codes, c))
        return i < len(self.codes) and self.codes[i] == c

    def __eq__(self, other) -> bool:
        return (isinstance(other, GeneratingSet) and self.m == other.m
                and np.array_equal(self.codes, other.codes))

    def __hash__(self) -> int:
        return hash((self.m, self.codes.tobytes()))

    def __repr__(self) -> str:
        if len(self) <= 8:
            return f"GeneratingSet(m={self.m}, words={self.words()})"
        return f"GeneratingSet(m={self.m}, size={len(self)})"

    def require_valid(self) -> "GeneratingSet":
        result = validate(self)
        if not result.valid:
            raise InvalidGeneratingSetError(
                f"generating set contains reverse-complement violations: "
                f"{result.violations[:5]}")
        return self


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    maximal: bool
    violations: List[Tuple[str, str]]


def num_rc_pairs(m: int) -> int:
    """Number of unordered reverse-complement pairs {w, RC(w)} with w != RC(w)."""
    return (4 ** m - num_self_rc(m)) // 2


def num_self_rc(m: int) -> int:
    """Number of self-reverse-complement words: 0 for odd m, 4^(m/2) for even."""
    return 0 if m % 2 else 4 ** (m // 2)


def validate(s: GeneratingSet) -> ValidationResult:
    """Check RC-freeness; maximal means one word from every RC pair."""
    rcs = rc_codes(s.codes, s.m)
    bad = np.isin(rcs, s.codes)
    violations = [
        (code_to_word(int(c), s.m), code_to_word(int(r), s.m))
        for c, r in zip(s.codes[bad], rcs[bad])
        if c <= r  # report each unordered pair once; self-RC words have c == r
    ]
    valid = not bad.any()
    maximal = valid and len(s) == num_rc_pairs(s.m)
    return ValidationResult(valid=valid, maximal=maximal, violations=violations)


@dataclass(frozen=True)
class RcClasses:
    """Partition of D^m into RC pairs (lex-smaller member first) and self-RC words."""

    m: int
    pairs: List[Tuple[str, str]]
    self_rc: List[str]


def rc_classes(m: int, budget: Optional[int] = None) -> RcClasses:
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if 4 ** m > enumeration_budget(budget):
        raise BudgetExceededError(f"4^{m} words exceed the enumeration budget")
    codes = all_codes(m)
    rcs = rc_codes(codes, m)
    self_rc = [code_to_word(int(c), m) for c in codes[codes == rcs]]
    lower = codes[codes < rcs]
    pairs = [(code_to_word(int(c), m), code_to_word(int(r), m))
             for c, r in zip(lower, rcs[codes < rcs])]
    return RcClasses(m=m, pairs=pairs, self_rc=self_rc)


def tc_dominant_set(m: int) -> GeneratingSet:
    """All length-m words with strictly more than m/2 symbols from {T, C}."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    codes = all_codes(m)
    return GeneratingSet.from_codes(m, codes[2 * tc_weights(codes, m) > m])


# The 12 mask-1010/0101 words selected by brute force over the 12 remaining
# RC pairs; they maximize the number of induced arcs among themselves.
_M4_LISTED = ("CACA", "TACA", "CGCA", "CATA", "TACG", "CACG",
              "ACAC", "GCAC", "ATAC", "ACGC", "GCAT", "ACAT")


def heuristic_set_m4() -> GeneratingSet:
    """The 108-word m=4 set: TC-weight >= 3, mask 0110, plus 12 listed words."""
    codes = all_codes(4)
    parts = [
        codes[tc_weights(codes, 4) >= 3],
        codes_with_tc_mask(4, "0110"),
        np.array([word_to_code(w) for w in _M4_LISTED], dtype=np.int64),
    ]
    return GeneratingSet.from_codes(4, np.concatenate(parts))


_M6_KEPT_MASKS = ("001110", "010110", "011010", "011100", "001101", "101100")


def heuristic_set_m6_stage() -> GeneratingSet:
    """The 1792-word staged m=6 set: TC-weight >= 4 plus six kept mask classes.

    Stops before the unresolved 010101/101010 and 011001/100110 classes;
    its digraph already has spectral radius 3.2443 (rate 1.6979 bits/nt).
    """
    codes = all_codes(6)
    parts = [codes[tc_weights(codes, 6) >= 4]]
    parts += [codes_with_tc_mask(6, mask) for mask in _M6_KEPT_MASKS]
    return GeneratingSet.from_codes(6, np.concatenate(parts))


def in_c_tilde(x: str, s: GeneratingSet) -> bool:
    """Membership in the relaxed code: every window of x outside S occurs
    at most 2m-1 times in the window multiset of x."""
    s.require_valid()
    counts = window_multiset(x, s.m)
    limit = 2 * s.m - 1
    return all(c <= limit for w, c in counts.items() if w not in s)


def read_set_file(path) -> GeneratingSet:
    """Read a generating set: one word per line, '#' comments, blanks ignored."""
    words = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            words.append(line)
    if not words:
        raise ValueError(f"no words found in set file {path}")
    for w in words:
        for ch in w:
            if ch not in "ACGT":
                raise ValueError(f"invalid word {w!r} in set file {path}")
    return GeneratingSet.from_words(words)


def write_set_file(s: GeneratingSet, path, comment: Optional[str] = None) -> None:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.extend(s.words())
    Path(path).write_text("\n".join(lines) + "\n")
