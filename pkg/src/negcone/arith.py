"""Integer combinatorics: 2-adic valuation, Radon-Hurwitz numbers and
binomial coefficients mod 2."""

import logging
from dataclasses import dataclass

from negcone.errors import DomainError

_logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RadonHurwitzDecomposition:
    """The factorization ``n = (2a+1) * 2**(c + 4d)`` with ``0 <= c <= 3``."""

    a: int
    c: int
    d: int

    @property
    def n(self) -> int:
        return (2 * self.a + 1) << (self.c + 4 * self.d)


def v2(n: int) -> int:
    """2-adic valuation of a nonzero integer.

    Args:
        n: Nonzero integer, possibly negative.

    Returns:
        The largest ``e`` with ``2**e`` dividing ``n``.
    """
    if n == 0:
        raise DomainError("v2(0) is undefined")
    return (n & -n).bit_length() - 1


def decompose(n: int) -> RadonHurwitzDecomposition:
    """Split a positive integer as ``(2a+1) * 2**(c + 4d)``."""
    if n <= 0:
        raise DomainError(f"decompose expects a positive integer, got {n}")
    e = v2(n)
    d, c = divmod(e, 4)
    return RadonHurwitzDecomposition(a=(n >> e) // 2, c=c, d=d)


def psi(n: int) -> int:
    """The n-th Radon-Hurwitz number ``2**c + 8d``.

    ``psi(n) - 1`` is the maximal number of linearly independent vector
    fields on the sphere ``S^(n-1)``.

    Args:
        n: Positive integer.

    Returns:
        ``psi(n)``.
    """
    if n <= 0:
        raise DomainError(f"psi is only defined for positive integers, got {n}")
    rh = decompose(n)
    return (1 << rh.c) + 8 * rh.d


def binom_mod2(m: int, j: int) -> int:
    """``C(m, j) mod 2`` by Lucas' theorem.

    A negative ``m`` is read through its infinite two's-complement expansion,
    which is the value compatible with adding large powers of two.
    """
    if j < 0:
        return 0
    return int(m & j == j)


def lambda_binom(n: int, j: int) -> int:
    """``C(n, j) mod 2`` with the convention ``C(n, j) = 0`` for ``n < 0``.

    This is the coefficient appearing in the Lambda algebra relations and
    differential.
    """
    if n < 0 or j < 0 or j > n:
        return 0
    return binom_mod2(n, j)
