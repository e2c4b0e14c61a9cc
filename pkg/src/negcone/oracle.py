"""Independent brute-force path through the Lambda algebra.

Words are reduced by naive rewriting with a selectable strategy, the
differential is applied letter by letter, and homology ranks come from
dense numpy matrices over GF(2).  Nothing here uses the memoized kernel in
:mod:`negcone.lambda_algebra` except its basis enumeration, so agreement
between the two is a check on both.
"""

import logging
from functools import lru_cache
from itertools import product
from math import comb
from typing import FrozenSet, Iterator, List, Sequence, Tuple

import numpy as np

from negcone.errors import ConventionError, DomainError
from negcone.lambda_algebra import (
    LAMBDA,
    adem_reduce,
    admissible_basis,
    convention_checksum,
    monomial_differential,
)

_logger = logging.getLogger(__name__)

Word = Tuple[int, ...]

STRATEGIES = ("leftmost", "rightmost", "middle")


def _odd(n: int, k: int) -> bool:
    return n >= 0 and 0 <= k <= n and comb(n, k) % 2 == 1


def _relation(i: int, j: int) -> List[Tuple[int, int]]:
    n = j - 2 * i - 1
    return [(i + n - t, 2 * i + 1 + t) for t in range(n + 1) if _odd(n - t - 1, t)]


def _generator_d(n: int) -> List[Tuple[int, int]]:
    return [(n - j, j - 1) for j in range(1, n + 1) if _odd(n - j, j)]


def _choose(positions: List[int], strategy: str) -> int:
    if strategy == "leftmost":
        return positions[0]
    if strategy == "rightmost":
        return positions[-1]
    if strategy == "middle":
        return positions[len(positions) // 2]
    raise DomainError(f"unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")


def rewrite_normal_form(word: Sequence[int], strategy: str = "leftmost") -> FrozenSet[Word]:
    """Reduce ``word`` by repeatedly rewriting one inadmissible pair.

    Args:
        word: Generator indices.
        strategy: Which inadmissible pair to rewrite first.

    Returns:
        The admissible monomials of the normal form.
    """
    pending = {tuple(word)}
    done: set = set()
    while pending:
        w = pending.pop()
        positions = [p for p in range(len(w) - 1) if 2 * w[p] < w[p + 1]]
        if not positions:
            done ^= {w}
            continue
        p = _choose(positions, strategy)
        for a, b in _relation(w[p], w[p + 1]):
            pending ^= {w[:p] + (a, b) + w[p + 2:]}
    return frozenset(done)


def naive_differential(word: Sequence[int], strategy: str = "leftmost") -> FrozenSet[Word]:
    """``d(word)`` by the Leibniz rule on letters, then naive rewriting."""
    word = tuple(word)
    out: set = set()
    for p, letter in enumerate(word):
        for a, b in _generator_d(letter):
            out ^= rewrite_normal_form(word[:p] + (a, b) + word[p + 1:], strategy)
    return frozenset(out)


def dense_rank(matrix: np.ndarray) -> int:
    """Rank over GF(2) of a 0/1 matrix by Gaussian elimination."""
    R = (np.asarray(matrix, dtype=np.uint8) % 2).copy()
    m, n = R.shape
    rank = 0
    for col in range(n):
        if rank == m:
            break
        rows = np.nonzero(R[rank:, col])[0]
        if rows.size == 0:
            continue
        pivot = rank + rows[0]
        if pivot != rank:
            R[[rank, pivot]] = R[[pivot, rank]]
        below = rank + 1 + np.nonzero(R[rank + 1:, col])[0]
        R[below] ^= R[rank]
        rank += 1
    return rank


def differential_matrix(stem: int, fil: int) -> np.ndarray:
    """Matrix of ``d`` from ``(stem, fil)`` to ``(stem - 1, fil + 1)``, one
    row per source monomial."""
    sources = admissible_basis(stem, fil)
    targets = {m: i for i, m in enumerate(admissible_basis(stem - 1, fil + 1))}
    M = np.zeros((len(sources), len(targets)), dtype=np.uint8)
    for r, mono in enumerate(sources):
        for term in naive_differential(mono):
            M[r, targets[term]] ^= 1
    return M


def dense_homology_dimension(stem: int, fil: int) -> int:
    """``dim ker d - dim im d`` in ``(stem, fil)`` from dense ranks."""
    size = len(admissible_basis(stem, fil))
    if size == 0:
        return 0
    outgoing = dense_rank(differential_matrix(stem, fil)) if stem >= 1 else 0
    incoming = dense_rank(differential_matrix(stem + 1, fil - 1)) if fil >= 1 else 0
    return size - outgoing - incoming


def words(max_stem: int, max_length: int) -> Iterator[Word]:
    """Every word of length ``1..max_length`` with index sum ``<= max_stem``."""
    for length in range(1, max_length + 1):
        for word in product(range(max_stem + 1), repeat=length):
            if sum(word) <= max_stem:
                yield word


def check_d_squared(max_stem: int, max_fil: int) -> List[Word]:
    """Admissible monomials in the window with ``d(d(x)) != 0``."""
    failures = []
    for fil in range(1, max_fil + 1):
        for stem in range(max_stem + 1):
            for mono in admissible_basis(stem, fil):
                twice: set = set()
                for term in monomial_differential(mono):
                    twice ^= monomial_differential(term)
                if twice:
                    failures.append(mono)
    return failures


def check_confluence(max_stem: int, max_length: int) -> List[Word]:
    """Words whose normal form depends on the rewriting order or differs
    from the kernel's reduction."""
    failures = []
    for word in words(max_stem, max_length):
        expected = adem_reduce(word).terms
        if any(rewrite_normal_form(word, s) != expected for s in STRATEGIES):
            failures.append(word)
    return failures


def check_homology(max_stem: int, max_fil: int) -> List[Tuple[int, int, int, int]]:
    """Bidegrees where kernel and dense dimensions disagree, as
    ``(stem, fil, kernel, dense)``."""
    failures = []
    for fil in range(max_fil + 1):
        for stem in range(max_stem + 1):
            fast = LAMBDA.homology(stem, fil).dimension
            slow = dense_homology_dimension(stem, fil)
            if fast != slow:
                failures.append((stem, fil, fast, slow))
    return failures


@lru_cache(maxsize=None)
def validate_conventions(max_stem: int = 10, max_fil: int = 5) -> str:
    """Run the three convention checks on a small window, once per process.

    Returns:
        The convention checksum.

    Raises:
        ConventionError: if any check fails.
    """
    bad_d = check_d_squared(max_stem, max_fil)
    if bad_d:
        raise ConventionError(f"d(d(x)) != 0 for {bad_d[:5]}")
    bad_rewrite = check_confluence(max_stem, 3)
    if bad_rewrite:
        raise ConventionError(f"rewriting is not confluent on {bad_rewrite[:5]}")
    bad_homology = check_homology(min(max_stem, 8), min(max_fil, 4))
    if bad_homology:
        raise ConventionError(f"kernel and oracle homology disagree at {bad_homology[:5]}")
    checksum = convention_checksum()
    _logger.debug(f"Lambda conventions validated, checksum {checksum[:12]}")
    return checksum
