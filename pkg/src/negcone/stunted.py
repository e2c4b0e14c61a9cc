"""Stunted real projective spectra as cell complexes over the Lambda algebra.

``RP^b_a`` has one cell ``e_m`` for each ``a <= m <= b``; ``a`` may be
negative.  The dual Steenrod squares act by

    Sq^j_* e_m = C(m - j, j) e_{m - j}

with 2-adic binomials, and Ext is the homology of ``H_*(RP^b_a) (x) Lambda``
with

    d(e_m (x) mu) = sum_{j >= 1} C(m - j, j) e_{m - j} (x) lambda_{j-1} mu
                    + e_m (x) d(mu).

Terms on cells below the bottom are dropped.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from negcone.arith import binom_mod2, psi
from negcone.chart import BigradedChart, ExtEntry
from negcone.config import Settings
from negcone.errors import ConventionError, DomainError, RangeError
from negcone.gf2 import EchelonBasis, bits
from negcone.homology import BaseComplex
from negcone.lambda_algebra import (
    LAMBDA,
    LambdaElement,
    Monomial,
    adem_reduce,
    admissible_basis,
    as_element,
    concat_product,
    format_monomial,
    left_multiply,
    monomial_differential,
    power,
    resolve_named_classes,
)

_logger = logging.getLogger(__name__)

CellTerm = Tuple[int, Monomial]

_DESCRIPTOR = re.compile(r"^RP\[(-?\d+)\.\.(-?\d+|inf)\]$")


@dataclass(frozen=True)
class StuntedSpectrum:
    """``RP^top_bottom``; ``top is None`` means ``RP^inf_bottom``."""

    bottom: int
    top: Optional[int] = None

    def __post_init__(self):
        if self.top is not None and self.top < self.bottom:
            raise DomainError(f"top cell {self.top} below bottom cell {self.bottom}")

    @classmethod
    def parse(cls, text: str) -> "StuntedSpectrum":
        """Parse ``RP[a..b]`` or ``RP[a..inf]``."""
        match = _DESCRIPTOR.match(text.strip())
        if match is None:
            raise DomainError(f"bad spectrum descriptor {text!r}; expected RP[a..b] or RP[a..inf]")
        bottom, top = match.groups()
        return cls(int(bottom), None if top == "inf" else int(top))

    @property
    def descriptor(self) -> str:
        return f"RP[{self.bottom}..{'inf' if self.top is None else self.top}]"

    @property
    def finite(self) -> bool:
        return self.top is not None

    @property
    def width(self) -> int:
        if self.top is None:
            raise RangeError(f"{self.descriptor} has no finite width")
        return self.top - self.bottom

    def truncated(self, max_stem: int) -> "StuntedSpectrum":
        """Cells that can reach total stems up to ``max_stem + 1``."""
        cap = max_stem + 1
        top = cap if self.top is None else min(self.top, cap)
        return StuntedSpectrum(self.bottom, max(top, self.bottom))

    def cells(self) -> range:
        if self.top is None:
            raise RangeError(f"{self.descriptor} must be truncated before listing cells")
        return range(self.bottom, self.top + 1)

    def contains(self, m: int) -> bool:
        return m >= self.bottom and (self.top is None or m <= self.top)

    def __str__(self) -> str:
        return self.descriptor


def sq_coeff(m: int, j: int) -> int:
    """Coefficient of ``e_{m-j}`` in ``Sq^j_* e_m``."""
    if j < 0:
        return 0
    return binom_mod2(m - j, j)


@dataclass(frozen=True)
class SqDualTable:
    """Dual Steenrod operations on a window of cells.

    ``bits[j-1, i]`` is 1 when ``Sq^j_*`` sends ``cells[i]`` to the cell
    ``cells[i] - j``, which must lie in the spectrum.  Cells are listed from
    the top down.
    """

    cells: Tuple[int, ...]
    bits: np.ndarray = field(compare=False)

    def target(self, j: int, m: int) -> Optional[int]:
        i = self.cells.index(m)
        return m - j if self.bits[j - 1, i] else None

    def nonzero(self) -> Dict[int, List[Tuple[int, int]]]:
        """``{j: [(source, target), ...]}`` for every nonzero entry."""
        out: Dict[int, List[Tuple[int, int]]] = {}
        for j in range(1, self.bits.shape[0] + 1):
            out[j] = [(m, m - j) for i, m in enumerate(self.cells) if self.bits[j - 1, i]]
        return out


def sq_dual_table(spec: StuntedSpectrum, window: Tuple[int, int], max_j: int) -> SqDualTable:
    """Table of ``sq_coeff`` restricted to targets inside ``spec``.

    Args:
        spec: The host spectrum.
        window: Inclusive range of source cells.
        max_j: Largest operation ``Sq^j_*``.

    Returns:
        A :class:`SqDualTable`.
    """
    lo, hi = window
    if lo > hi or not spec.contains(lo) or not spec.contains(hi):
        raise DomainError(f"window {window} is not inside {spec}")
    cells = tuple(range(hi, lo - 1, -1))
    table = np.zeros((max_j, len(cells)), dtype=np.uint8)
    for j in range(1, max_j + 1):
        for i, m in enumerate(cells):
            if m - j >= spec.bottom and sq_coeff(m, j):
                table[j - 1, i] = 1
    return SqDualTable(cells=cells, bits=table)


# -- splittings and periodicity ----------------------------------------------


def top_cell_splits(n: int, bottom: int) -> bool:
    """Whether the top cell of ``RP^{n-1}_bottom`` splits off."""
    if n == 0:
        raise DomainError("top_cell_splits needs n != 0")
    if bottom > n - 1:
        raise DomainError(f"bottom {bottom} exceeds the top cell {n - 1}")
    return bottom >= n - psi(abs(n))


def bottom_cell_splits(bottom: int, top: int) -> bool:
    """Whether the bottom cell of ``RP^top_bottom`` splits off."""
    if top < bottom:
        raise DomainError(f"top {top} below bottom {bottom}")
    if bottom < 1:
        raise DomainError(f"bottom cell must be positive, got {bottom}")
    return top - bottom <= psi(bottom) - 1


def james_shift(spec: StuntedSpectrum) -> Tuple[StuntedSpectrum, int]:
    """Shift a finite spectrum by the least period ``2^N`` that preserves
    every dual Steenrod operation between its cells.

    Returns:
        ``(shifted spectrum, 2^N)``.
    """
    if not spec.finite:
        raise DomainError(f"{spec} is not finite")
    width = spec.width
    bound = max(abs(spec.bottom), abs(spec.top), width)
    n = 0
    while True:
        period = 1 << n
        if period > bound and all(
            sq_coeff(m, j) == sq_coeff(m + period, j)
            for m in spec.cells()
            for j in range(1, width + 1)
        ):
            break
        n += 1
    return StuntedSpectrum(spec.bottom + period, spec.top + period), period


def ahss_d1(spec: StuntedSpectrum, m: int, x_label: str) -> Optional[str]:
    """Target ``h0 x[m-1]`` of the first Atiyah-Hirzebruch differential on
    ``x[m]``, or ``None`` when there is none."""
    if not spec.contains(m):
        raise DomainError(f"cell {m} is not in {spec}")
    if m - 1 < spec.bottom or not sq_coeff(m, 1):
        return None
    body = "h0" if x_label == "1" else f"h0{x_label}"
    return f"{body}[{m - 1}]"


# -- the cell complex --------------------------------------------------------


@dataclass(frozen=True)
class CellChain:
    """An F2-sum of terms ``e_m (x) mu``."""

    terms: FrozenSet[CellTerm] = frozenset()

    def __post_init__(self):
        degrees = {(m + sum(mu), len(mu)) for m, mu in self.terms}
        if len(degrees) > 1:
            raise DomainError(f"inhomogeneous cell chain with bidegrees {sorted(degrees)}")

    @classmethod
    def term(cls, m: int, element: LambdaElement) -> "CellChain":
        return cls(frozenset((m, mu) for mu in element.terms))

    @property
    def bidegree(self) -> Optional[Tuple[int, int]]:
        for m, mu in self.terms:
            return m + sum(mu), len(mu)
        return None

    @property
    def leading_cell(self) -> Optional[int]:
        return max((m for m, _ in self.terms), default=None)

    def component(self, m: int) -> LambdaElement:
        return LambdaElement(frozenset(mu for cell, mu in self.terms if cell == m))

    def __add__(self, other: "CellChain") -> "CellChain":
        return CellChain(self.terms ^ other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ordered = sorted(self.terms, key=lambda t: (-t[0], t[1]))
        return " + ".join(f"e{m}⊗{format_monomial(mu)}" for m, mu in ordered)


def _term_differential(m: int, mu: Monomial, bottom: int) -> set:
    out = set()
    for j in range(1, m - bottom + 1):
        if sq_coeff(m, j):
            for nu in left_multiply(j - 1, mu):
                out ^= {(m - j, nu)}
    for nu in monomial_differential(mu):
        out ^= {(m, nu)}
    return out


def cell_lambda_differential(x: CellChain, spec: StuntedSpectrum) -> CellChain:
    """``d(x)`` in the cell complex of ``spec``."""
    out = set()
    for m, mu in x.terms:
        if not spec.contains(m):
            raise DomainError(f"cell {m} is not in {spec}")
        out ^= _term_differential(m, mu, spec.bottom)
    return CellChain(frozenset(out))


class StuntedComplex(BaseComplex):
    """``H_*(RP^b_a) (x) Lambda`` on a finite spectrum.

    The basis in ``(stem, fil)`` lists cells from the bottom up and, within a
    cell, admissible monomials in lexicographic order.
    """

    def __init__(self, spec: StuntedSpectrum):
        if not spec.finite:
            raise RangeError(f"{spec} must be truncated first")
        self.spec = spec
        self.name = spec.descriptor

    def basis(self, stem: int, fil: int) -> Tuple[CellTerm, ...]:
        out = []
        for m in range(self.spec.bottom, min(self.spec.top, stem) + 1):
            out.extend((m, mu) for mu in admissible_basis(stem - m, fil))
        return tuple(out)

    def boundary(self, key: CellTerm) -> FrozenSet[CellTerm]:
        m, mu = key
        return frozenset(_term_differential(m, mu, self.spec.bottom))


def _check_stunted_window(spec: StuntedSpectrum, max_stem: int, max_fil: int, settings: Settings) -> None:
    reach = max_stem + 1 - spec.bottom
    if reach > settings.max_stem + 1 or max_fil > settings.max_fil:
        raise RangeError(
            f"{spec} through stem {max_stem} needs Lambda stems up to {reach}, "
            f"beyond the ceiling ({settings.max_stem}, {settings.max_fil})"
        )


def _descending_cells(basis: Iterable[CellTerm]) -> Tuple[Tuple[CellTerm, ...], Dict[CellTerm, int]]:
    # Higher cells get lower bits, so lowest-bit pivots sit on the top cell.
    keys = tuple(sorted(basis, key=lambda t: (-t[0], t[1])))
    return keys, {k: i for i, k in enumerate(keys)}


def _bitset(chain: Iterable[CellTerm], index: Dict[CellTerm, int]) -> int:
    vec = 0
    for key in chain:
        vec ^= 1 << index[key]
    return vec


def lowest_cell_representatives(
    complex_: "StuntedComplex", stem: int, fil: int, reps: Iterable[FrozenSet[CellTerm]]
) -> Tuple[FrozenSet[CellTerm], ...]:
    """Homologous cycles whose highest cell is as low as possible.

    Each cycle is reduced against the boundaries in ``(stem, fil)`` ordered
    from the top cell down.  The result's leading component is then a
    nonzero sphere class, so its cell is where the Atiyah-Hirzebruch
    spectral sequence detects the class.
    """
    keys, index = _descending_cells(complex_.basis(stem, fil))
    boundaries = EchelonBasis()
    if fil >= 1:
        for key in complex_.basis(stem + 1, fil - 1):
            boundaries.add(_bitset(complex_.boundary(key), index))
    out = []
    for rep in reps:
        residual, _ = boundaries.reduce(_bitset(rep, index))
        out.append(frozenset(keys[i] for i in bits(residual)))
    return tuple(out)


def _leading_label(rep: FrozenSet[CellTerm], stem: int, fil: int, named) -> str:
    chain = CellChain(rep)
    m = chain.leading_cell
    sphere = LAMBDA.homology(stem - m, fil)
    coords = sphere.coordinates(chain.component(m).terms)
    if not coords:
        raise ConventionError(f"leading component of {chain} on cell {m} is not a nonzero class")
    for name, element in named.get((stem - m, fil), []):
        if sphere.coordinates(element.terms) == coords:
            return f"{name}[{m}]"
    return f"x_{stem - m}_{fil}[{m}]"


def ext_stunted_chart(
    spec: StuntedSpectrum,
    max_stem: int,
    max_fil: int,
    min_stem: Optional[int] = None,
    settings: Optional[Settings] = None,
    progress: bool = False,
    min_fil: int = 0,
) -> BigradedChart:
    """Ext of a stunted projective spectrum.

    Infinite spectra are truncated to the cells that can reach the window.
    Classes are labelled ``x[m]``, where ``m`` is the lowest top cell of any
    cycle in the class and ``x`` the sphere class of that cycle's component
    there.

    Args:
        spec: The spectrum.
        max_stem: Largest total stem.
        max_fil: Largest filtration.
        min_stem: Smallest total stem, the bottom cell by default.
        settings: Ceilings; defaults apply when omitted.
        progress: Show a progress bar on stderr.
        min_fil: Smallest filtration.

    Returns:
        The chart.
    """
    settings = settings or Settings()
    min_stem = spec.bottom if min_stem is None else min_stem
    if min_stem > max_stem or min_fil > max_fil or min_fil < 0:
        raise RangeError(f"empty window stems {min_stem}..{max_stem}, fil {min_fil}..{max_fil}")
    _check_stunted_window(spec, max_stem, max_fil, settings)
    from negcone.oracle import validate_conventions

    validate_conventions()
    complex_ = StuntedComplex(spec.truncated(max_stem))
    named: Dict[Tuple[int, int], List[Tuple[str, LambdaElement]]] = {}
    for name, (deg, element) in resolve_named_classes(max_stem - spec.bottom, max_fil).items():
        named.setdefault(deg, []).append((name, element))

    degrees = [(s, f) for f in range(min_fil, max_fil + 1) for s in range(min_stem, max_stem + 1)]
    entries = {}
    for stem, fil in tqdm(degrees, desc=str(spec), disable=not progress):
        result = complex_.homology(stem, fil)
        if result.dimension == 0:
            continue
        reps = lowest_cell_representatives(complex_, stem, fil, result.representatives)
        entries[(stem, fil)] = ExtEntry(
            dimension=result.dimension,
            labels=tuple(_leading_label(rep, stem, fil, named) for rep in reps),
            representatives=tuple(tuple(sorted(rep)) for rep in reps),
        )
    _logger.info(f"Ext({spec}) stems {min_stem}..{max_stem}: {len(entries)} nonzero bidegrees")
    return BigradedChart(
        spectrum=spec.descriptor,
        stem_range=(min_stem, max_stem),
        fil_range=(min_fil, max_fil),
        entries=entries,
    )


def cell_chain_homology(spec: StuntedSpectrum, chain: CellChain):
    """Homology data for the bidegree of ``chain`` and its class coordinates.

    Returns:
        ``(HomologyResult, coordinates)``; coordinates are ``None`` when
        ``chain`` is not a cycle.
    """
    stem, fil = chain.bidegree
    complex_ = StuntedComplex(spec.truncated(stem))
    result = complex_.homology(stem, fil)
    return result, result.coordinates(chain.terms)


def leading_term_survives(spec: StuntedSpectrum, cell: int, element: LambdaElement) -> bool:
    """Whether the Atiyah-Hirzebruch class ``x[cell]`` of a Lambda cycle
    survives to a nonzero class of Ext.

    The cell filtration ``C_{<=m}`` is used directly: ``x[m]`` survives iff
    its sphere class lies in the image of cycles supported on cells ``<= m``
    and not in the image of boundaries supported there.
    """
    if not spec.contains(cell):
        raise DomainError(f"cell {cell} is not in {spec}")
    mu_stem, fil = element.bidegree
    sphere = LAMBDA.homology(mu_stem, fil)
    target = sphere.coordinates(element.terms)
    if target is None:
        raise DomainError(f"{element} is not a cycle")
    if not target:
        return False
    stem = cell + mu_stem
    complex_ = StuntedComplex(spec.truncated(stem))

    keys, index = _descending_cells(complex_.basis(stem, fil))
    _, target_index = _descending_cells(complex_.basis(stem - 1, fil + 1))

    cycles = EchelonBasis()
    kernel = EchelonBasis()
    for i, key in enumerate(keys):
        residual, tag = cycles.add(_bitset(complex_.boundary(key), target_index), 1 << i)
        if not residual:
            kernel.add(tag)
    sources = complex_.basis(stem + 1, fil - 1) if fil >= 1 else ()
    boundaries = EchelonBasis()
    for key in sources:
        boundaries.add(_bitset(complex_.boundary(key), index))

    first = min((i for i, k in enumerate(keys) if k[0] <= cell), default=len(keys))
    block_set = {i for i, k in enumerate(keys) if k[0] == cell}

    def images(echelon: EchelonBasis) -> EchelonBasis:
        span = EchelonBasis()
        for row in echelon.rows():
            if (row & -row).bit_length() - 1 < first:
                continue
            component = [keys[i][1] for i in bits(row) if i in block_set]
            coords = sphere.coordinates(component)
            if coords is None:
                raise ConventionError(f"cell-{cell} component of a cycle is not a Lambda cycle")
            if coords:
                span.add(coords)
        return span

    survivors = images(kernel)
    killed = images(boundaries)
    return survivors.contains(target) and not killed.contains(target)


# -- chain identities --------------------------------------------------------


@dataclass(frozen=True)
class ChainIdentity:
    """A cell chain, its computed differential and the expected value.

    ``auxiliaries`` records the Lambda elements the chain was built from.
    """

    k: int
    b: int
    c: int
    spec: StuntedSpectrum
    chain: CellChain
    differential: CellChain
    expected: CellChain
    auxiliaries: Dict[str, LambdaElement] = field(compare=False)

    @property
    def holds(self) -> bool:
        return self.differential == self.expected


def _lam(*indices: int) -> LambdaElement:
    return adem_reduce(indices)


def _solve(stem: int, fil: int, boundary: LambdaElement, what: str) -> LambdaElement:
    solution = LAMBDA.solve_boundary(stem, fil, boundary.terms)
    if solution is None:
        raise ConventionError(f"{what} = {boundary} is not a boundary")
    return as_element(solution)


def _sum(*elements: LambdaElement) -> LambdaElement:
    out = LambdaElement()
    for e in elements:
        out = out + e
    return out


def _cycle_rep(stem: int, fil: int) -> LambdaElement:
    result = LAMBDA.homology(stem, fil)
    if result.dimension != 1:
        raise DomainError(f"Ext at ({stem}, {fil}) has dimension {result.dimension}, not 1")
    return as_element(result.representatives[0])


def hidden_extension_chain(k: int, alpha: Optional[LambdaElement] = None) -> ChainIdentity:
    """The six-term chain on ``RP^inf_{b-c}`` with ``c = 8k+2`` and
    ``b = 2^(4k+1) - 1`` whose leading term is ``lambda_0^2 alpha`` on cell
    ``b-c+7`` and whose boundary is concentrated on cell ``b-c+2``.

    Args:
        k: Family index, ``k >= 1``.
        alpha: Cycle representing ``P^(k-1) h2``; ``lambda_3`` for ``k = 1``
            and the chosen Ext representative otherwise.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    c = 8 * k + 2
    b = (1 << (4 * k + 1)) - 1
    base = b - c
    if alpha is None:
        alpha = _lam(3) if k == 1 else _cycle_rep(8 * k - 5, 4 * k - 3)
    l00 = power(_lam(0), 2)
    beta = _solve(8 * k - 4, 4 * k - 1, concat_product(power(_lam(0), 3), alpha), "lambda_0^3 alpha")
    gamma = _sum(
        concat_product(_lam(4, 0, 0), alpha),
        concat_product(_lam(3), beta),
        concat_product(_lam(2, 2, 0), alpha),
        concat_product(_lam(1, 1, 2), alpha),
    )
    chain = (
        CellChain.term(base + 7, concat_product(l00, alpha))
        + CellChain.term(base + 6, beta)
        + CellChain.term(base + 5, concat_product(_lam(2, 0), alpha))
        + CellChain.term(base + 4, concat_product(_lam(1, 2), alpha))
        + CellChain.term(base + 1, concat_product(_lam(6, 0), alpha))
        + CellChain.term(
            base, concat_product(_sum(_lam(6, 1), _lam(5, 2), _lam(3, 4)), alpha)
        )
    )
    spec = StuntedSpectrum(base)
    identity = ChainIdentity(
        k=k,
        b=b,
        c=c,
        spec=spec,
        chain=chain,
        differential=cell_lambda_differential(chain, spec),
        expected=CellChain.term(base + 2, gamma),
        auxiliaries={"alpha": alpha, "beta": beta, "gamma": gamma},
    )
    _logger.debug(f"hidden extension chain k={k}: holds={identity.holds}")
    return identity


def _default_alpha_bar(k: int) -> LambdaElement:
    if k == 1:
        return _lam(7)
    if k == 2:
        return _lam(0, 0, 0, 0, 15)
    raise DomainError(f"no default representative for k = {k}; pass alpha_bar")


def order_two_chain(k: int, alpha_bar: Optional[LambdaElement] = None) -> ChainIdentity:
    """The six-term cycle on ``RP^inf_{b-c}`` with ``c = 8k+4`` and
    ``b = 2^(4k+2) - 1`` led by ``lambda_0^3 alpha_bar`` on cell ``b-c+5``.

    Args:
        k: Family index, ``k >= 1``.
        alpha_bar: Cycle in ``(8k-1, 4k-3)``; ``lambda_7`` for ``k = 1`` and
            ``lambda_0^4 lambda_15`` for ``k = 2`` by default.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    c = 8 * k + 4
    b = (1 << (4 * k + 2)) - 1
    base = b - c
    if alpha_bar is None:
        alpha_bar = _default_alpha_bar(k)
    beta = _solve(8 * k, 4 * k, concat_product(power(_lam(0), 4), alpha_bar), "lambda_0^4 alpha_bar")
    chain = (
        CellChain.term(base + 5, concat_product(power(_lam(0), 3), alpha_bar))
        + CellChain.term(base + 4, beta)
        + CellChain.term(base + 3, concat_product(_lam(2, 0, 0), alpha_bar))
        + CellChain.term(base + 2, concat_product(_lam(1, 2, 0), alpha_bar))
        + CellChain.term(
            base + 1,
            concat_product(_sum(_lam(4, 0, 0), _lam(2, 2, 0), _lam(1, 1, 2)), alpha_bar),
        )
        + CellChain.term(base, concat_product(_lam(3, 2, 0), alpha_bar))
    )
    spec = StuntedSpectrum(base)
    identity = ChainIdentity(
        k=k,
        b=b,
        c=c,
        spec=spec,
        chain=chain,
        differential=cell_lambda_differential(chain, spec),
        expected=CellChain(),
        auxiliaries={"alpha_bar": alpha_bar, "beta_tilde": beta},
    )
    _logger.debug(f"order two chain k={k}: holds={identity.holds}")
    return identity
