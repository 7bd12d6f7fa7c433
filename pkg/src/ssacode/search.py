"""Search for good generating sets: exhaustive for tiny m, local search beyond.

Both searches range over maximal sets only (one word per RC pair): the rate
of C_n(S) is monotone in S, so a non-maximal optimum can always be extended
to a maximal one without losing rate.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .capacity import rate_of_set
from .gensets import GeneratingSet, rc_classes, tc_weights
from .sequences import BudgetExceededError, word_to_code

DEFAULT_CANDIDATE_BUDGET = 1 << 16
_RATE_EPS = 1e-9


@dataclass(frozen=True)
class SearchResult:
    best_set: GeneratingSet
    best_rate: float
    candidates_examined: int
    method: str
    seed: Optional[int] = None


def _pair_code_arrays(m: int) -> Tuple[np.ndarray, np.ndarray]:
    classes = rc_classes(m)
    a = np.array([word_to_code(p[0]) for p in classes.pairs], dtype=np.int64)
    b = np.array([word_to_code(p[1]) for p in classes.pairs], dtype=np.int64)
    return a, b


def _set_from_choice(m: int, a: np.ndarray, b: np.ndarray,
                     pick_a: np.ndarray) -> GeneratingSet:
    return GeneratingSet.from_codes(m, np.where(pick_a, a, b))


def _rate(s: GeneratingSet, tol: float) -> float:
    return rate_of_set(s, tol=tol).rate_bits_per_nt


def _word_key(s: GeneratingSet) -> Tuple[str, ...]:
    return tuple(s.words())


def exhaustive_search(m: int, budget: Optional[int] = None,
                      tol: float = 1e-10) -> SearchResult:
    """Evaluate every maximal RC-free set; practical only for m=2 (64 sets).

    Ties on rate are broken by the lexicographically smallest word set.
    """
    a, b = _pair_code_arrays(m)
    n_pairs = len(a)
    cap = DEFAULT_CANDIDATE_BUDGET if budget is None else budget
    if n_pairs >= 64 or 2 ** n_pairs > cap:
        raise BudgetExceededError(
            f"2^{n_pairs} candidate sets exceed the search budget {cap}")
    best_rate = -1.0
    best_set = None
    for mask in range(2 ** n_pairs):
        pick_a = np.array([(mask >> i) & 1 for i in range(n_pairs)], dtype=bool)
        cand = _set_from_choice(m, a, b, pick_a)
        rate = _rate(cand, tol)
        if rate > best_rate + _RATE_EPS or (
                abs(rate - best_rate) <= _RATE_EPS
                and _word_key(cand) < _word_key(best_set)):
            best_rate, best_set = rate, cand
    return SearchResult(best_set=best_set, best_rate=best_rate,
                        candidates_examined=2 ** n_pairs, method="exhaustive")


def greedy_tc_choice(m: int) -> GeneratingSet:
    """Warm-start maximal set: from each RC pair keep the word with the larger
    TC weight, breaking ties toward centrally-placed T/C symbols (those words
    connect better to the TC-dominant core), then toward the smaller word."""
    a, b = _pair_code_arrays(m)
    return _set_from_choice(m, a, b, _greedy_bits(m, a, b))


def _centrality(codes: np.ndarray, m: int) -> np.ndarray:
    c = codes.copy()
    score = np.zeros_like(c)
    for pos in range(m - 1, -1, -1):  # least-significant digit is the last position
        score += (c % 4 & 1) * min(pos + 1, m - pos)
        c //= 4
    return score


def _greedy_bits(m: int, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    wa, wb = tc_weights(a, m), tc_weights(b, m)
    ca, cb = _centrality(a, m), _centrality(b, m)
    keep_a = (wa > wb) | ((wa == wb) & (ca > cb)) | ((wa == wb) & (ca == cb) & (a < b))
    return keep_a


def local_search(m: int, restarts: int = 20, iterations: int = 200,
                 seed: int = 0, tol: float = 1e-8,
                 plateau_limit: int = 25, on_restart=None) -> SearchResult:
    """Seeded hill climbing over maximal sets; moves flip one RC pair's choice.

    The first restart starts from the greedy TC choice, the rest from random
    states.  Moves that do not decrease the rate are accepted; sideways moves
    are allowed for up to plateau_limit consecutive steps.  Deterministic for
    fixed (m, restarts, iterations, seed).  A KeyboardInterrupt stops the
    search early and reports the best result found so far.
    """
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    rng = random.Random(seed)
    a, b = _pair_code_arrays(m)
    n_pairs = len(a)
    best_rate = -1.0
    best_set = None
    examined = 0
    try:
        for restart in range(restarts):
            if restart == 0:
                pick_a = _greedy_bits(m, a, b)
            else:
                pick_a = np.array([rng.random() < 0.5 for _ in range(n_pairs)],
                                  dtype=bool)
            state = _set_from_choice(m, a, b, pick_a)
            cur = _rate(state, tol)
            examined += 1
            plateau = 0
            for _ in range(iterations):
                idx = rng.randrange(n_pairs)
                pick_a[idx] = not pick_a[idx]
                cand = _set_from_choice(m, a, b, pick_a)
                rate = _rate(cand, tol)
                examined += 1
                if rate >= cur - 1e-12:
                    plateau = 0 if rate > cur + _RATE_EPS else plateau + 1
                    state, cur = cand, rate
                    if plateau > plateau_limit:
                        break
                else:
                    pick_a[idx] = not pick_a[idx]  # revert
            if cur > best_rate + _RATE_EPS or (
                    abs(cur - best_rate) <= _RATE_EPS
                    and _word_key(state) < _word_key(best_set)):
                best_rate, best_set = cur, state
            if on_restart is not None:
                on_restart(restart, cur, best_rate)
    except KeyboardInterrupt:
        if best_set is None:
            raise
    # re-evaluate the winner at full precision
    best_rate = rate_of_set(best_set).rate_bits_per_nt
    return SearchResult(best_set=best_set, best_rate=best_rate,
                        candidates_examined=examined, method="local", seed=seed)
