"""Shared reference oracles: deliberately naive, independent of the library's
counting and spectral paths."""

import itertools
import random

import numpy as np
import pytest

from ssacode import GeneratingSet, rc_classes

COMP = {"A": "T", "T": "A", "C": "G", "G": "C"}


def ref_rc(word):
    return "".join(COMP[ch] for ch in reversed(word))


def ref_has_structure(x, m):
    """Naive scan for two non-overlapping reverse-complement m-windows."""
    n = len(x)
    for i in range(n - m + 1):
        for j in range(i + m, n - m + 1):
            if all(x[i + t] == COMP[x[j + m - 1 - t]] for t in range(m)):
                return True
    return False


def ref_count_all_ssa_python(n, m):
    """Flat enumeration of D^n with a per-sequence naive check (n <= 8)."""
    count = 0
    for tup in itertools.product("ACGT", repeat=n):
        count += not ref_has_structure(tup, m)
    return count


def ref_count_all_ssa_numpy(n, m):
    """Vectorized flat enumeration for larger n."""
    total = 4 ** n
    digits = (np.arange(total, dtype=np.int64)[:, None]
              // 4 ** np.arange(n - 1, -1, -1)) % 4
    digits = digits.astype(np.int8)
    bad = np.zeros(total, dtype=bool)
    for i in range(n - m + 1):
        for j in range(i + m, n - m + 1):
            match = np.ones(total, dtype=bool)
            for t in range(m):
                match &= digits[:, i + t] == 3 - digits[:, j + m - 1 - t]
            bad |= match
    return int(total - bad.sum())


def ref_constrained_members(words, m, n):
    """All sequences of length n whose every m-window lies in the word set,
    by prefix-tree enumeration (membership pruning only)."""
    wordset = set(words)
    out = []

    def extend(prefix):
        if len(prefix) >= m and prefix[-m:] not in wordset:
            return
        if len(prefix) == n:
            out.append(prefix)
            return
        for ch in "ACGT":
            extend(prefix + ch)

    extend("")
    return out


def ref_count_constrained(words, m, n):
    return len(ref_constrained_members(words, m, n))


def ref_good_binary_count(n, m, minw):
    """Binary sequences of length n whose every m-window has weight >= minw,
    counted by flat enumeration (vectorized)."""
    v = np.arange(2 ** n, dtype=np.int64)
    popcount = np.array([bin(k).count("1") for k in range(2 ** m)])
    ok = np.ones(len(v), dtype=bool)
    for i in range(max(n - m + 1, 0)):
        ok &= popcount[(v >> i) & (2 ** m - 1)] >= minw
    return int(ok.sum())


def random_valid_set(rng: random.Random, m: int, drop_rate: float = 0.0):
    """A random RC-free set: one random word per RC pair, optionally thinned."""
    classes = rc_classes(m)
    words = [pair[rng.randrange(2)] for pair in classes.pairs]
    if drop_rate:
        words = [w for w in words if rng.random() > drop_rate] or words[:1]
    return GeneratingSet.from_words(words)


@pytest.fixture
def rng():
    return random.Random(0xDA7A)
