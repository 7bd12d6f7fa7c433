"""DNA alphabet, reverse-complement algebra, and secondary-structure checks.

Sequences are plain uppercase ACGT strings.  Words are optionally handled as
integer codes (base 4, A=0 C=1 G=2 T=3, big-endian) where speed matters.
All indices reported to callers (e.g. in :class:`Witness`) are 1-based.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from typing import Optional

ALPHABET = "ACGT"
COMPLEMENT = {"A": "T", "T": "A", "C": "G", "G": "C"}

_CODE = {s: i for i, s in enumerate(ALPHABET)}

DEFAULT_ENUMERATION_BUDGET = 4 ** 13


class BudgetExceededError(ValueError):
    """An exhaustive enumeration would exceed the configured budget."""


def enumeration_budget(budget: Optional[int] = None) -> int:
    """Resolve the enumeration budget: explicit arg, SSA_BUDGET env, default."""
    if budget is not None:
        return budget
    env = os.environ.get("SSA_BUDGET")
    if env:
        return int(env)
    return DEFAULT_ENUMERATION_BUDGET


def parse_sequence(text: str) -> str:
    """Validate a sequence string; only uppercase A, C, G, T are accepted."""
    for ch in text:
        if ch not in COMPLEMENT:
            raise ValueError(f"invalid symbol {ch!r} in sequence (expected A/C/G/T)")
    return text


def complement(symbol: str) -> str:
    return COMPLEMENT[symbol]


def reverse_complement(x: str) -> str:
    """Reverse the sequence and complement every symbol."""
    return "".join(COMPLEMENT[ch] for ch in reversed(x))


def word_to_code(word: str) -> int:
    c = 0
    for ch in word:
        c = c * 4 + _CODE[ch]
    return c


def code_to_word(code: int, m: int) -> str:
    out = []
    for _ in range(m):
        out.append(ALPHABET[code % 4])
        code //= 4
    return "".join(reversed(out))


def rc_code(code: int, m: int) -> int:
    """Reverse complement of a length-m word in integer-code form."""
    out = 0
    for _ in range(m):
        out = out * 4 + (3 - code % 4)
        code //= 4
    return out


@dataclass(frozen=True)
class Witness:
    """Locates a secondary structure: windows x[i;m] and x[j;m] are
    reverse complements, 1-based, non-overlapping (i + m - 1 < j)."""

    i: int
    j: int
    m: int


def find_secondary_structure(x: str, m: int) -> Optional[Witness]:
    """Return the smallest (i, j) witness of a secondary structure, or None.

    None means x is an m-SSA sequence.  Witnesses are ordered by i, then j.
    """
    if m < 2:
        raise ValueError(f"stem length m must be >= 2, got {m}")
    n = len(x)
    for i in range(n - 2 * m + 1):
        target = reverse_complement(x[i:i + m])
        for j in range(i + m, n - m + 1):
            if x[j:j + m] == target:
                return Witness(i=i + 1, j=j + 1, m=m)
    return None


def window_multiset(x: str, m: int) -> Counter:
    """Multiset of all length-m windows of x, with multiplicities."""
    if m < 1:
        raise ValueError(f"window length m must be >= 1, got {m}")
    if len(x) < m:
        raise ValueError(f"sequence of length {len(x)} has no length-{m} windows")
    return Counter(x[i:i + m] for i in range(len(x) - m + 1))


def is_tc_dominant(x: str, m: int) -> bool:
    """True iff every length-m window has strictly more than m/2 T/C symbols."""
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    n = len(x)
    if n < m:
        raise ValueError(f"sequence of length {n} is shorter than m={m}")
    weight = sum(1 for ch in x[:m] if ch in "TC")
    if 2 * weight <= m:
        return False
    for i in range(m, n):
        weight += (x[i] in "TC") - (x[i - m] in "TC")
        if 2 * weight <= m:
            return False
    return True


def count_all_ssa(n: int, m: int, budget: Optional[int] = None) -> int:
    """Exact number of m-SSA sequences of length n (the quantity A(n;m)).

    Exhaustive: walks the prefix tree of D^n and prunes a subtree as soon as
    its prefix already contains a secondary structure (every extension then
    contains it too).  Desk-scale oracle; enumeration is budget-capped.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    cap = enumeration_budget(budget)
    if 4 ** n > cap:
        raise BudgetExceededError(
            f"4^{n} sequences exceed the enumeration budget {cap}")
    if n < 2 * m:
        return 4 ** n
    mod = 4 ** m
    rc_table = [rc_code(c, m) for c in range(mod)] if mod <= 4 ** 8 else None

    earliest: dict = {}  # window code -> first (smallest) start position

    def dfs(pos: int, window: int) -> int:
        count = 0
        for d in range(4):
            w = (window * 4 + d) % mod
            if pos + 1 >= m:
                start = pos + 1 - m
                r = rc_table[w] if rc_table is not None else rc_code(w, m)
                if earliest.get(r, n) <= start - m:
                    continue  # structure completed; whole subtree is non-SSA
                added = w not in earliest
                if added:
                    earliest[w] = start
                if pos + 1 == n:
                    count += 1
                else:
                    count += dfs(pos + 1, w)
                if added:
                    del earliest[w]
            else:
                count += dfs(pos + 1, w)
        return count

    return dfs(0, 0)
