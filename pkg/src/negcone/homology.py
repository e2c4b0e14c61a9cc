"""Bigraded chain complexes over F2 and their homology.

A complex is described by its basis in each bidegree ``(stem, fil)`` and the
boundary of each basis element, which lands in ``(stem - 1, fil + 1)``.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

from negcone.errors import RangeError
from negcone.gf2 import EchelonBasis, bits

_logger = logging.getLogger(__name__)

Chain = FrozenSet[Hashable]


@dataclass(frozen=True)
class HomologyResult:
    """Homology of a complex in one bidegree.

    ``representatives`` are cycles whose classes form a basis.  The echelon
    basis spans boundaries (tag 0) and representatives (tag ``1 << j``), so any
    cycle decomposes into representative coordinates.
    """

    stem: int
    fil: int
    basis: Tuple[Hashable, ...]
    representatives: Tuple[Chain, ...]
    _echelon: EchelonBasis = field(repr=False, compare=False)
    _index: Dict[Hashable, int] = field(repr=False, compare=False)

    @property
    def dimension(self) -> int:
        return len(self.representatives)

    def _vector(self, chain: Iterable[Hashable]) -> int:
        vec = 0
        for key in chain:
            try:
                vec ^= 1 << self._index[key]
            except KeyError as e:
                raise RangeError(f"{key!r} is not a basis element in ({self.stem}, {self.fil})") from e
        return vec

    def coordinates(self, chain: Iterable[Hashable]) -> Optional[int]:
        """Bitset of representative coordinates of a cycle's class, or
        ``None`` when ``chain`` is not a cycle."""
        residual, tag = self._echelon.reduce(self._vector(chain))
        if residual:
            return None
        return tag

    def is_boundary(self, chain: Iterable[Hashable]) -> bool:
        return self.coordinates(chain) == 0

    def is_nonzero_class(self, chain: Iterable[Hashable]) -> bool:
        return bool(self.coordinates(chain))

    def span_rank(self, chains: Sequence[Iterable[Hashable]]) -> int:
        """Dimension of the span of the classes of ``chains``."""
        span = EchelonBasis()
        for chain in chains:
            coords = self.coordinates(chain)
            if coords:
                span.add(coords)
        return span.rank


class BaseComplex(ABC):
    """Abstract bigraded complex with memoized homology."""

    name = "complex"

    @abstractmethod
    def basis(self, stem: int, fil: int) -> Tuple[Hashable, ...]:
        """Ordered basis in ``(stem, fil)``."""

    @abstractmethod
    def boundary(self, key: Hashable) -> Chain:
        """Boundary of a basis element, as a set of basis elements."""

    def index(self, stem: int, fil: int) -> Dict[Hashable, int]:
        cache = self.__dict__.setdefault("_index_cache", {})
        idx = cache.get((stem, fil))
        if idx is None:
            idx = _index_of(self.basis(stem, fil))
            cache[(stem, fil)] = idx
        return idx

    def boundary_rows(self, stem: int, fil: int) -> List[int]:
        """Boundaries of the basis in ``(stem, fil)`` as bitsets over the
        basis in ``(stem - 1, fil + 1)``."""
        cache = self.__dict__.setdefault("_rows_cache", {})
        rows = cache.get((stem, fil))
        if rows is not None:
            return rows
        target = self.index(stem - 1, fil + 1)
        rows = []
        for key in self.basis(stem, fil):
            vec = 0
            for term in self.boundary(key):
                vec ^= 1 << target[term]
            rows.append(vec)
        cache[(stem, fil)] = rows
        return rows

    def chain_vector(self, stem: int, fil: int, chain: Iterable[Hashable]) -> int:
        idx = self.index(stem, fil)
        vec = 0
        for key in chain:
            vec ^= 1 << idx[key]
        return vec

    def chain_from_vector(self, stem: int, fil: int, vec: int) -> Chain:
        basis = self.basis(stem, fil)
        return frozenset(basis[i] for i in bits(vec))

    def boundary_of_chain(self, chain: Iterable[Hashable]) -> Chain:
        out = set()
        for key in chain:
            out ^= self.boundary(key)
        return frozenset(out)

    def homology(self, stem: int, fil: int) -> HomologyResult:
        """Homology in ``(stem, fil)``; computed once per bidegree."""
        cache = self.__dict__.setdefault("_homology_cache", {})
        result = cache.get((stem, fil))
        if result is None:
            result = self._compute_homology(stem, fil)
            cache[(stem, fil)] = result
        return result

    def boundary_echelon(self, stem: int, fil: int) -> EchelonBasis:
        """Echelon basis of the boundaries landing in ``(stem, fil)``."""
        echelon = EchelonBasis()
        if fil >= 1:
            for row in self.boundary_rows(stem + 1, fil - 1):
                echelon.add(row)
        return echelon

    def _compute_homology(self, stem: int, fil: int) -> HomologyResult:
        basis = self.basis(stem, fil)
        cycles = EchelonBasis()
        kernel = []
        for i, row in enumerate(self.boundary_rows(stem, fil)):
            residual, tag = cycles.add(row, 1 << i)
            if not residual:
                kernel.append(tag)
        echelon = self.boundary_echelon(stem, fil)
        boundaries = echelon.rank
        reps = []
        for z in kernel:
            residual, _ = echelon.reduce(z)
            if residual:
                echelon.add(residual, 1 << len(reps))
                reps.append(frozenset(basis[i] for i in bits(residual)))
        _logger.debug(
            f"{self.name} ({stem}, {fil}): {len(basis)} chains, "
            f"{len(kernel)} cycles, {boundaries} boundaries"
        )
        return HomologyResult(
            stem=stem,
            fil=fil,
            basis=basis,
            representatives=tuple(reps),
            _echelon=echelon,
            _index=self.index(stem, fil),
        )

    def solve_boundary(self, stem: int, fil: int, chain: Iterable[Hashable]) -> Optional[Chain]:
        """A chain in ``(stem, fil)`` whose boundary is ``chain``, or ``None``.

        The solution is the one produced by lowest-index pivoting.
        """
        rows = self.boundary_rows(stem, fil)
        echelon = EchelonBasis()
        for i, row in enumerate(rows):
            echelon.add(row, 1 << i)
        target = self.chain_vector(stem - 1, fil + 1, chain)
        residual, tag = echelon.reduce(target)
        if residual:
            return None
        return self.chain_from_vector(stem, fil, tag)


def _index_of(basis: Tuple[Hashable, ...]) -> Dict[Hashable, int]:
    return {key: i for i, key in enumerate(basis)}
