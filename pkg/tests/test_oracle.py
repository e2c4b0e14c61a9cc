"""Tests for the brute-force Lambda oracle."""

import numpy as np
import pytest

from negcone.errors import DomainError
from negcone.lambda_algebra import adem_reduce, convention_checksum
from negcone.oracle import (
    STRATEGIES,
    check_confluence,
    check_d_squared,
    check_homology,
    dense_homology_dimension,
    dense_rank,
    differential_matrix,
    naive_differential,
    rewrite_normal_form,
    validate_conventions,
    words,
)


@pytest.mark.parametrize("strategy", STRATEGIES)
@pytest.mark.parametrize("word", [(1, 7), (0, 1), (0, 3), (0, 0, 3), (1, 2, 5), (0, 2, 4, 8)])
def test_rewriting_strategies_agree(word, strategy):
    """Every strategy reaches the kernel's normal form."""
    assert rewrite_normal_form(word, strategy) == adem_reduce(word).terms


def test_unknown_strategy():
    """Strategies are validated."""
    with pytest.raises(DomainError):
        rewrite_normal_form((0, 1), "random")


def test_naive_differential():
    """Letter-by-letter differential."""
    assert naive_differential((2,)) == frozenset({(1, 0)})
    assert naive_differential((3,)) == frozenset()


def test_dense_rank():
    """Gaussian elimination over GF(2)."""
    assert dense_rank(np.eye(3, dtype=np.uint8)) == 3
    assert dense_rank(np.array([[1, 1], [1, 1]])) == 1
    assert dense_rank(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 2
    assert dense_rank(np.zeros((2, 4), dtype=np.uint8)) == 0


def test_differential_matrix():
    """d(lambda_2) = lambda_1 lambda_0 as a 1x1 matrix."""
    assert differential_matrix(2, 1).tolist() == [[1]]
    assert dense_homology_dimension(2, 1) == 0
    assert dense_homology_dimension(3, 1) == 1


def test_words():
    """Words are bounded by total index."""
    assert len(list(words(2, 2))) == 9


def test_small_window_checks():
    """The three checks pass on a small window."""
    assert check_d_squared(12, 5) == []
    assert check_confluence(8, 3) == []
    assert check_homology(8, 4) == []


def test_validate_conventions():
    """Validation returns the convention checksum."""
    assert validate_conventions() == convention_checksum()


@pytest.mark.slow
def test_d_squared_acceptance():
    """d(d(x)) = 0 through stem 24, filtration 12."""
    assert check_d_squared(24, 12) == []


@pytest.mark.slow
def test_confluence_acceptance():
    """Rewriting is confluent on words of length 4 up to stem 20."""
    assert check_confluence(20, 4) == []


@pytest.mark.slow
def test_homology_acceptance():
    """Kernel and dense homology agree through stem 14, filtration 14."""
    assert check_homology(14, 14) == []
