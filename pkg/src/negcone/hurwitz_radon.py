"""Hurwitz-Radon matrices, tangent frames and the equivariant quadratic map.

A Hurwitz-Radon family on ``R^m`` is a list of orthogonal matrices ``A_i``
with ``A_i^2 = -I`` and ``A_i A_j = -A_j A_i``.  Families built here are
signed permutation matrices, assembled from Kronecker products of

    J = [[0, -1], [1, 0]],  P = diag(1, -1),  Q = [[0, 1], [1, 0]]

on ``R^(2^e)`` for ``e <= 3``, extended by the period-16 step
``A_i -> A_i (x) Gamma`` plus eight new matrices ``I (x) C_a``, and copied
block-diagonally onto ``R^((2a+1) 2^e)``.  All checks use exact integers
or fractions.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import sqrt
from pathlib import Path
from typing import List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np

from negcone.arith import psi, v2
from negcone.errors import DomainError, PoleSingularityError
from negcone.utils import atomic_write

_logger = logging.getLogger(__name__)

Number = Union[int, Fraction, float]

POLE_TOLERANCE = 1e-12
SPHERE_TOLERANCE = 1e-9

_I2 = np.eye(2, dtype=np.int64)
_J = np.array([[0, -1], [1, 0]], dtype=np.int64)
_P = np.array([[1, 0], [0, -1]], dtype=np.int64)
_Q = np.array([[0, 1], [1, 0]], dtype=np.int64)
_LETTERS = {"I": _I2, "J": _J, "P": _P, "Q": _Q}

# Tensor words for the maximal families on R^2, R^4 and R^8.
_BASE_WORDS = {
    1: ("J",),
    2: ("JI", "PJ", "QJ"),
    3: ("JII", "QJQ", "QJP", "QIJ", "PJI", "PQJ", "PPJ"),
}


def _word(word: str) -> np.ndarray:
    return reduce(np.kron, (_LETTERS[c] for c in word))


@dataclass(frozen=True, eq=False)
class SignedMatrix:
    """A square matrix with exactly one entry ``+-1`` in each row and column."""

    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        e = np.asarray(self.entries)
        if e.ndim != 2 or e.shape[0] != e.shape[1]:
            raise DomainError(f"expected a square matrix, got shape {e.shape}")
        if not np.isin(e, (-1, 0, 1)).all():
            raise DomainError("entries must lie in {-1, 0, 1}")
        nonzero = e != 0
        if not (nonzero.sum(axis=0) == 1).all() or not (nonzero.sum(axis=1) == 1).all():
            raise DomainError("not a signed permutation matrix")
        object.__setattr__(self, "entries", e.astype(np.int64))

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    @property
    def T(self) -> "SignedMatrix":
        return SignedMatrix(self.entries.T)

    def apply(self, v: Sequence[Number]) -> Tuple[Number, ...]:
        """``A v`` computed exactly for int or Fraction entries."""
        rows, cols = np.nonzero(self.entries)
        out: List[Number] = [0] * self.size
        for r, c in zip(rows, cols):
            out[r] = v[c] if self.entries[r, c] > 0 else -v[c]
        return tuple(out)

    def __matmul__(self, other: "SignedMatrix") -> np.ndarray:
        return self.entries @ other.entries

    def __eq__(self, other) -> bool:
        return isinstance(other, SignedMatrix) and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash(self.entries.tobytes())

    def __repr__(self) -> str:
        return f"SignedMatrix(size={self.size})"


@lru_cache(maxsize=None)
def _power_of_two_family(e: int) -> Tuple[np.ndarray, ...]:
    if e == 0:
        return ()
    if e in _BASE_WORDS:
        return tuple(_word(w) for w in _BASE_WORDS[e])
    # R^16 carries eight complex structures C_a and an involution Gamma
    # anticommuting with all of them.
    eight = _power_of_two_family(3)
    c16 = [np.kron(b, _P) for b in eight] + [np.kron(np.eye(8, dtype=np.int64), _J)]
    gamma = np.kron(np.eye(8, dtype=np.int64), _Q)
    lower = _power_of_two_family(e - 4)
    n = 1 << (e - 4)
    identity = np.eye(n, dtype=np.int64)
    return tuple(np.kron(a, gamma) for a in lower) + tuple(np.kron(identity, c) for c in c16)


@lru_cache(maxsize=None)
def hurwitz_radon_family(m: int) -> Tuple[SignedMatrix, ...]:
    """The ``psi(m) - 1`` Hurwitz-Radon matrices of size ``m``.

    Args:
        m: Positive dimension.

    Returns:
        Tuple of :class:`SignedMatrix`; empty for odd ``m``.
    """
    if m <= 0:
        raise DomainError(f"family size must be positive, got {m}")
    e = v2(m)
    odd = m >> e
    blocks = _power_of_two_family(e)
    family = tuple(SignedMatrix(np.kron(np.eye(odd, dtype=np.int64), a)) for a in blocks)
    _logger.debug(f"Hurwitz-Radon family of size {m}: {len(family)} matrices")
    return family


@dataclass(frozen=True)
class Violation:
    relation: str
    indices: Tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.relation} fails for {self.indices}"


@dataclass(frozen=True)
class FamilyReport:
    """Result of :func:`verify_family`; ``ok`` when nothing failed."""

    size: int
    count: int
    violations: Tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_family(family: Sequence[SignedMatrix]) -> FamilyReport:
    """Check squares, anticommutation, orthogonality and skewness exactly.

    Failed relations are collected, not raised.
    """
    if not family:
        return FamilyReport(size=0, count=0)
    size = family[0].size
    if any(a.size != size for a in family):
        raise DomainError("family matrices have different sizes")
    identity = np.eye(size, dtype=np.int64)
    violations = []
    for i, a in enumerate(family):
        if not np.array_equal(a @ a, -identity):
            violations.append(Violation("A^2 = -I", (i,)))
        if not np.array_equal(a.entries.T @ a.entries, identity):
            violations.append(Violation("A^T A = I", (i,)))
        if not np.array_equal(a.entries.T, -a.entries):
            violations.append(Violation("A^T = -A", (i,)))
        for j in range(i + 1, len(family)):
            b = family[j]
            if np.any(a @ b + b @ a):
                violations.append(Violation("AB = -BA", (i, j)))
    report = FamilyReport(size=size, count=len(family), violations=tuple(violations))
    if not report.ok:
        _logger.warning(f"family of size {size}: {len(violations)} violated relations")
    return report


def _dot(u: Sequence[Number], v: Sequence[Number]) -> Number:
    return sum((a * b for a, b in zip(u, v)), 0)


def tangent_frame(n: int, v: Sequence[Number]) -> List[Tuple[Number, ...]]:
    """The vectors ``A_i v`` tangent to ``S^n`` at ``v``.

    Args:
        n: Sphere dimension.
        v: Nonzero point of ``R^(n+1)`` with int or Fraction coordinates.

    Returns:
        ``psi(n+1) - 1`` pairwise orthogonal vectors, each orthogonal to
        ``v`` and of squared length ``|v|^2``.
    """
    if len(v) != n + 1:
        raise DomainError(f"expected {n + 1} coordinates, got {len(v)}")
    if not any(v):
        raise DomainError("tangent frame at the zero vector")
    return [a.apply(v) for a in hurwitz_radon_family(n + 1)]


@dataclass(frozen=True)
class QuadraticMapSpec:
    """``f(v, x_0..x_k) = (2 sum x_i A_i v, sum x_i^2 - |v|^2)`` on
    ``R^(n+1) x R^(k+1)``, with ``A_0 = I``."""

    n: int
    k: int
    matrices: Tuple[SignedMatrix, ...] = field(repr=False)

    def __post_init__(self):
        if self.n < 0 or self.k < 0:
            raise DomainError(f"negative n or k: ({self.n}, {self.k})")
        bound = psi(self.n + 1) - 1
        if self.k > bound:
            raise DomainError(f"S^{self.n} has only {bound} independent vector fields, asked for {self.k}")
        if len(self.matrices) != self.k:
            raise DomainError(f"expected {self.k} matrices, got {len(self.matrices)}")
        report = verify_family(self.matrices)
        if not report.ok or (self.k and report.size != self.n + 1):
            raise DomainError(f"not a Hurwitz-Radon family on R^{self.n + 1}: {report.violations[:3]}")

    @classmethod
    def build(cls, n: int, k: Optional[int] = None) -> "QuadraticMapSpec":
        """Spec using the first ``k`` matrices of the standard family; the
        maximal ``k`` by default."""
        family = hurwitz_radon_family(n + 1)
        k = len(family) if k is None else k
        if k > len(family):
            raise DomainError(f"S^{n} has only {len(family)} independent vector fields, asked for {k}")
        return cls(n=n, k=k, matrices=family[:k])

    @property
    def source_dimension(self) -> int:
        return self.n + self.k + 2


def quadratic_map_eval(spec: QuadraticMapSpec, v: Sequence[Number], xs: Sequence[Number]) -> Tuple[Number, ...]:
    """Evaluate ``f(v, xs)``; exact for int or Fraction input.

    Returns:
        A point of ``R^(n+2)``.
    """
    if len(v) != spec.n + 1 or len(xs) != spec.k + 1:
        raise DomainError(
            f"expected v in R^{spec.n + 1} and xs in R^{spec.k + 1}, got {len(v)} and {len(xs)}"
        )
    head = [2 * xs[0] * c for c in v]
    for x, a in zip(xs[1:], spec.matrices):
        for r, c in enumerate(a.apply(v)):
            head[r] += 2 * x * c
    return tuple(head) + (_dot(xs, xs) - _dot(v, v),)


def compactified_map_eval(spec: QuadraticMapSpec, p: Sequence[Number]) -> Tuple[Number, ...]:
    """``f(p) / |p|^2`` for nonzero ``p = (v, xs)``; maps the unit sphere
    to the unit sphere."""
    if len(p) != spec.source_dimension:
        raise DomainError(f"expected a point of R^{spec.source_dimension}, got {len(p)}")
    norm = _dot(p, p)
    if not norm:
        raise DomainError("compactified map at the origin")
    out = quadratic_map_eval(spec, p[: spec.n + 1], p[spec.n + 1:])
    return tuple(c / norm for c in out)


def top_cell_inverse(spec: QuadraticMapSpec, u: Sequence[float], y: float) -> Tuple[np.ndarray, np.ndarray]:
    """Preimage ``(u / sqrt(2 + 2y), (sqrt((1 + y) / 2), 0, ..., 0))`` of a
    point ``(u, y)`` of the unit sphere away from ``(0, -1)``.

    Returns:
        ``(v, xs)`` as float arrays.
    """
    u = np.asarray(u, dtype=float)
    if u.shape != (spec.n + 1,):
        raise DomainError(f"expected u in R^{spec.n + 1}, got shape {u.shape}")
    if abs(float(u @ u) + y * y - 1.0) > SPHERE_TOLERANCE:
        raise DomainError(f"({u}, {y}) is not on the unit sphere")
    if abs(y + 1.0) < POLE_TOLERANCE:
        raise PoleSingularityError("top-cell inverse is singular at (0, -1)")
    v = u / sqrt(2.0 + 2.0 * y)
    xs = np.zeros(spec.k + 1)
    xs[0] = sqrt((1.0 + y) / 2.0)
    return v, xs


def export_family(family: Sequence[SignedMatrix], out: Union[str, Path, TextIO]) -> None:
    """Write matrices as integer grids, one row per line, blank line between
    matrices, after a ``# m=<size> k=<count>`` header."""
    size = family[0].size if family else 0
    lines = [f"# m={size} k={len(family)}"]
    for i, a in enumerate(family):
        if i:
            lines.append("")
        lines.extend(" ".join(str(int(x)) for x in row) for row in a.entries)
    text = "\n".join(lines) + "\n"
    if hasattr(out, "write"):
        out.write(text)
    else:
        atomic_write(Path(out), text.encode("utf-8"))


def sample_rational_points(
    dimension: int,
    count: int,
    seed: int = 0,
    bound: int = 9,
    unit: bool = False,
) -> List[Tuple[Fraction, ...]]:
    """Random points of ``Q^dimension`` from a seeded numpy generator.

    Args:
        dimension: Number of coordinates.
        count: Number of points.
        seed: Generator seed.
        bound: Numerators and denominators are drawn from ``1..bound``.
        unit: Return points of the unit sphere, obtained by inverse
            stereographic projection of random rational points.

    Returns:
        List of tuples of :class:`~fractions.Fraction`; never the origin.
    """
    if dimension < 1 or count < 0:
        raise DomainError(f"bad sample shape ({dimension}, {count})")
    rng = np.random.default_rng(seed)
    points = []
    while len(points) < count:
        width = dimension - 1 if unit else dimension
        nums = rng.integers(-bound, bound + 1, size=width)
        dens = rng.integers(1, bound + 1, size=width)
        t = [Fraction(int(a), int(b)) for a, b in zip(nums, dens)]
        if unit:
            norm = Fraction(_dot(t, t))
            point = tuple(2 * c / (1 + norm) for c in t) + ((1 - norm) / (1 + norm),)
        else:
            point = tuple(t)
        if any(point):
            points.append(point)
    return points
