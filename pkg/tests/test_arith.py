"""Tests for integer combinatorics."""

import pytest
from math import comb

from negcone.arith import binom_mod2, decompose, lambda_binom, psi, v2
from negcone.errors import DomainError


@pytest.mark.parametrize("n, expected", [(1, 0), (8, 3), (48, 4), (-12, 2), (1 << 70, 70)])
def test_v2(n, expected):
    """v2 is the exponent of the largest power of two dividing n."""
    assert v2(n) == expected


def test_v2_zero():
    """v2(0) is undefined."""
    with pytest.raises(DomainError):
        v2(0)


@pytest.mark.parametrize("n, a, c, d", [(16, 0, 0, 1), (24, 1, 3, 0), (7, 3, 0, 0), (96, 1, 1, 1)])
def test_decompose(n, a, c, d):
    """decompose writes n = (2a+1) * 2^(c+4d)."""
    rh = decompose(n)
    assert (rh.a, rh.c, rh.d) == (a, c, d)
    assert rh.n == n


@pytest.mark.parametrize("n", [0, -3])
def test_decompose_rejects_nonpositive(n):
    """Only positive integers decompose."""
    with pytest.raises(DomainError):
        decompose(n)


def test_psi_table():
    """psi on the even numbers up to 32."""
    assert [psi(n) for n in range(2, 33, 2)] == [2, 4, 2, 8, 2, 4, 2, 9, 2, 4, 2, 8, 2, 4, 2, 10]


@pytest.mark.parametrize("n, expected", [(16, 9), (32, 10), (3, 1), (64, 12), (128, 16), (256, 17)])
def test_psi_values(n, expected):
    """Spot values of psi."""
    assert psi(n) == expected


@pytest.mark.parametrize("n", [0, -1])
def test_psi_rejects_nonpositive(n):
    """psi is only defined on positive integers."""
    with pytest.raises(DomainError):
        psi(n)


def test_psi_stabilizes():
    """Adding a larger power of two does not change psi."""
    for n in range(1, 200):
        big = 1 << n.bit_length()
        for t in range(1, 4):
            assert psi(n + big * t) == psi(n)


def test_psi_against_valuation():
    """psi(n) = 2^v2(n) for small valuations and psi(n) - 1 < 2^v2(n) otherwise."""
    for n in range(1, 2049):
        e = v2(n)
        if e <= 3:
            assert psi(n) == 1 << e
        else:
            assert psi(n) - 1 < 1 << e


@pytest.mark.parametrize("m, j, expected", [(4, 2, 0), (14, 4, 1), (-1, 5, 1), (5, -1, 0), (0, 0, 1)])
def test_binom_mod2(m, j, expected):
    """Lucas evaluation including negative upper index."""
    assert binom_mod2(m, j) == expected


def test_binom_mod2_matches_factorials():
    """binom_mod2 agrees with exact binomials and is stable under adding 2^N."""
    for m in range(64):
        for j in range(64):
            assert binom_mod2(m, j) == comb(m, j) % 2
            assert binom_mod2(m, j) == binom_mod2(m + 128, j)


def test_binom_mod2_pascal():
    """Pascal's rule holds mod 2, negative m included."""
    for m in range(-40, 40):
        for j in range(1, 20):
            assert binom_mod2(m, j) == binom_mod2(m - 1, j) ^ binom_mod2(m - 1, j - 1)


def test_lambda_binom_negative_top():
    """Binomials with negative top vanish in the Lambda conventions."""
    assert lambda_binom(-1, 0) == 0
    assert lambda_binom(-3, 2) == 0
    assert lambda_binom(6, 2) == comb(6, 2) % 2
