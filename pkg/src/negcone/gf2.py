"""GF(2) linear algebra on Python integers used as bitsets.

Bit ``i`` of a row is the coefficient of the ``i``-th basis vector.  Pivots
are always taken at the lowest set bit, so elimination is deterministic in
the basis order.
"""

from typing import Dict, Iterable, List, Optional, Tuple


def lowest_bit(vec: int) -> int:
    """Index of the lowest set bit of a nonzero ``vec``."""
    return (vec & -vec).bit_length() - 1


def bits(vec: int) -> List[int]:
    """Indices of the set bits, ascending."""
    out = []
    while vec:
        low = vec & -vec
        out.append(low.bit_length() - 1)
        vec ^= low
    return out


def from_indices(indices: Iterable[int]) -> int:
    vec = 0
    for i in indices:
        vec ^= 1 << i
    return vec


class EchelonBasis:
    """Incrementally built echelon basis of a subspace of ``GF(2)^n``.

    Every stored row has a distinct pivot (its lowest bit) and carries a tag,
    an arbitrary bitset XOR-ed along with it, which records how the row was
    produced from the inserted vectors.
    """

    def __init__(self):
        self._rows: Dict[int, Tuple[int, int]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def copy(self) -> "EchelonBasis":
        other = EchelonBasis()
        other._rows = dict(self._rows)
        return other

    def pivots(self) -> List[int]:
        return sorted(self._rows)

    def rows(self) -> List[int]:
        return [self._rows[p][0] for p in sorted(self._rows)]

    def reduce(self, vec: int, tag: int = 0) -> Tuple[int, int]:
        """Fully reduce ``vec`` against the stored rows.

        Returns:
            ``(residual, tag)``; the residual has no bit on a pivot.
        """
        out = 0
        rest = vec
        while rest:
            low = rest & -rest
            row = self._rows.get(low.bit_length() - 1)
            if row is None:
                out |= low
                rest ^= low
            else:
                rest ^= row[0]
                tag ^= row[1]
        return out, tag

    def _head_reduce(self, vec: int, tag: int) -> Tuple[int, int]:
        while vec:
            row = self._rows.get(lowest_bit(vec))
            if row is None:
                break
            vec ^= row[0]
            tag ^= row[1]
        return vec, tag

    def add(self, vec: int, tag: int = 0) -> Tuple[int, int]:
        """Insert ``vec``.

        Returns:
            ``(residual, tag)`` after reduction; a zero residual means ``vec``
            was already in the span and ``tag`` is the dependency found.
        """
        vec, tag = self._head_reduce(vec, tag)
        if vec:
            self._rows[lowest_bit(vec)] = (vec, tag)
        return vec, tag

    def contains(self, vec: int) -> bool:
        return self._head_reduce(vec, 0)[0] == 0


def rank(rows: Iterable[int]) -> int:
    """Rank of the span of ``rows``."""
    basis = EchelonBasis()
    for row in rows:
        basis.add(row)
    return basis.rank


def kernel(rows: List[int]) -> List[int]:
    """Basis of ``{x : sum_i x_i rows[i] = 0}`` as bitsets over row indices."""
    basis = EchelonBasis()
    out = []
    for i, row in enumerate(rows):
        residual, tag = basis.add(row, 1 << i)
        if not residual:
            out.append(tag)
    return out


def solve(rows: List[int], target: int) -> Optional[int]:
    """A bitset ``x`` over row indices with ``sum_i x_i rows[i] = target``,
    or ``None`` when ``target`` is outside the span."""
    basis = EchelonBasis()
    for i, row in enumerate(rows):
        basis.add(row, 1 << i)
    residual, tag = basis.reduce(target)
    return tag if residual == 0 else None
