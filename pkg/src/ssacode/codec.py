"""Enumerative (rank/unrank) coding onto the fixed-length code C_n(S).

Message index k maps to the k-th element of C_n(S) in lexicographic order
(A < C < G < T over whole sequences); decoding is the exact inverse.  The
table holds big-integer counts of walk completions per vertex, so both
directions run in O(n) digraph steps.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import List

import numpy as np

from .capacity import TransitionDigraph, build_digraph
from .gensets import GeneratingSet
from .sequences import code_to_word, word_to_code


class CodecError(ValueError):
    """Input sequence is not a member of C_n(S)."""


@dataclass
class CodecTable:
    """Per-vertex counts of walk completions for each remaining length.

    path_counts[r][vi] is the number of length-r walks starting at vertex vi;
    total is |C_n(S)|, the sum over vertices at remaining length n - m.
    """

    gen_set: GeneratingSet
    n: int
    digraph: TransitionDigraph
    path_counts: List[List[int]]
    total: int


def build_codec(s: GeneratingSet, n: int) -> CodecTable:
    g = build_digraph(s)
    if n < s.m:
        raise ValueError(f"block length n={n} is smaller than m={s.m}")
    counts = [[1] * g.vertex_count]
    for _ in range(n - s.m):
        prev = counts[-1]
        sums = defaultdict(int)
        for p, c in zip(g._pre, prev):
            sums[int(p)] += c
        counts.append([sums.get(int(sfx), 0) for sfx in g._suf])
    return CodecTable(gen_set=s, n=n, digraph=g, path_counts=counts,
                      total=sum(counts[-1]))


def _successor_slice(g: TransitionDigraph, code: int) -> range:
    """Successors of a vertex are contiguous in the sorted code array."""
    suffix = code % (4 ** (g.m - 1))
    lo = int(np.searchsorted(g.codes, suffix * 4))
    hi = int(np.searchsorted(g.codes, suffix * 4 + 4))
    return range(lo, hi)


def encode(t: CodecTable, index: int) -> str:
    """The index-th sequence of C_n(S) in lexicographic order."""
    if not 0 <= index < t.total:
        raise ValueError(f"index {index} out of range [0, {t.total})")
    g = t.digraph
    remaining = t.n - g.m
    vi = None
    for k in range(g.vertex_count):
        c = t.path_counts[remaining][k]
        if index < c:
            vi = k
            break
        index -= c
    symbols = [code_to_word(int(g.codes[vi]), g.m)]
    while remaining > 0:
        remaining -= 1
        for k in _successor_slice(g, int(g.codes[vi])):
            c = t.path_counts[remaining][k]
            if index < c:
                vi = k
                break
            index -= c
        symbols.append("ACGT"[int(g.codes[vi]) % 4])
    return "".join(symbols)


def decode(t: CodecTable, x: str) -> int:
    """Rank of x within C_n(S); exact inverse of :func:`encode`."""
    g = t.digraph
    if len(x) != t.n:
        raise CodecError(f"expected length {t.n}, got {len(x)}")
    window_codes = []
    for i in range(t.n - g.m + 1):
        w = x[i:i + g.m]
        c = word_to_code(w)
        k = int(np.searchsorted(g.codes, c))
        if k >= g.vertex_count or g.codes[k] != c:
            raise CodecError(f"window {w!r} at position {i + 1} not in S")
        window_codes.append(k)
    remaining = t.n - g.m
    rank = sum(t.path_counts[remaining][k] for k in range(window_codes[0]))
    vi = window_codes[0]
    for nxt in window_codes[1:]:
        remaining -= 1
        for k in _successor_slice(g, int(g.codes[vi])):
            if k == nxt:
                break
            rank += t.path_counts[remaining][k]
        vi = nxt
    return rank


def bits_per_block(t: CodecTable) -> int:
    """Payload bits carried by one block: floor(log2 |C_n(S)|)."""
    k = t.total.bit_length() - 1
    if k < 1:
        raise ValueError(f"code of size {t.total} cannot carry payload bits")
    return k


def payload_to_indices(payload_hex: str, k: int) -> List[int]:
    """Split a big-endian hex payload into k-bit block indices.

    The bit string is zero-padded on the right to a whole number of blocks.
    """
    if payload_hex == "":
        raise ValueError("empty payload")
    value = int(payload_hex, 16)
    nbits = 4 * len(payload_hex)
    nblocks = max(1, math.ceil(nbits / k))
    value <<= nblocks * k - nbits
    return [(value >> (k * (nblocks - 1 - b))) & ((1 << k) - 1)
            for b in range(nblocks)]


def indices_to_payload(indices: List[int], k: int) -> str:
    """Reassemble block indices into a hex payload (right-padded bits kept)."""
    value = 0
    for idx in indices:
        if not 0 <= idx < (1 << k):
            raise ValueError(f"block index {idx} does not fit in {k} bits")
        value = (value << k) | idx
    nbits = len(indices) * k
    ndigits = math.ceil(nbits / 4)
    value <<= 4 * ndigits - nbits
    return format(value, f"0{ndigits}X")
