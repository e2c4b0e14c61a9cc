"""Closed-form classification of filtration-0 classes.

Bidegrees are ``(s, w)`` with stem ``s`` and weight ``w``; the coweight is
``s - w``.  The negative cone of the coefficients of the C2-equivariant mod 2
Eilenberg-MacLane spectrum is spanned by ``theta/(rho^a tau^b)`` in bidegree
``(a, a + b + 2)``; the positive cone by ``rho^i tau^j`` in ``(-i, -i - j)``.

This module answers, without any spectral sequence machinery:

* which of those classes survive to the zero-line of the genuine Adams
  E2-page (:func:`zero_line`, :func:`bockstein_survivors`);
* which of them are in the Hurewicz image for the F2, Z and Burnside ring
  Mackey functors (:func:`hurewicz_hf2`, :func:`hurewicz_hz`,
  :func:`hurewicz_ha`);
* what happens to the rest (:func:`classify_fil0`), including the proved
  lengths and stunted-side targets (:func:`longest_diff_data`,
  :func:`imj_data`).
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Set, Tuple, Union

from negcone.arith import psi, v2
from negcone.errors import DomainError, NoCorrespondenceError, NoPredictionError
from negcone.labels import BURNSIDE, ETA, THETA, Term, format_label, parse_label

_logger = logging.getLogger(__name__)

CURATED_PATH = Path(__file__).parent / "data" / "curated_differentials.tsv"


@dataclass(frozen=True, order=True)
class BiDegree:
    """Stem ``s`` and weight ``w``."""

    s: int
    w: int

    @property
    def coweight(self) -> int:
        return self.s - self.w


DegreeLike = Union[BiDegree, Tuple[int, int]]


def _deg(deg: DegreeLike) -> BiDegree:
    return deg if isinstance(deg, BiDegree) else BiDegree(*deg)


@dataclass(frozen=True, order=True)
class NegConeGenerator:
    """The class ``theta/(rho^a tau^b)``."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise DomainError(f"negative exponent in theta/(rho^{self.a} tau^{self.b})")

    @property
    def bidegree(self) -> BiDegree:
        return BiDegree(self.a, self.a + self.b + 2)

    @property
    def label(self) -> str:
        return format_label((Term(THETA, self.a, self.b),))

    @classmethod
    def from_bidegree(cls, deg: DegreeLike) -> Optional["NegConeGenerator"]:
        """The generator living in ``deg``, or ``None`` outside the cone."""
        deg = _deg(deg)
        a, b = deg.s, deg.w - deg.s - 2
        if a < 0 or b < 0:
            return None
        return cls(a, b)


class GroupKind(Enum):
    ZERO = "Zero"
    F2 = "F2"
    Z = "Z"
    BURNSIDE = "BurnsideRing"


@dataclass(frozen=True)
class HurewiczValue:
    """A cyclic group (or the Burnside ring) together with a generator label.

    Also used for the coefficient groups themselves, where the label names
    the additive generator.
    """

    kind: GroupKind
    generator_label: str = ""

    @property
    def is_zero(self) -> bool:
        return self.kind is GroupKind.ZERO

    @property
    def terms(self) -> Tuple[Term, ...]:
        return parse_label(self.generator_label)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        return f"{self.kind.value}{{{self.generator_label}}}"


ZERO = HurewiczValue(GroupKind.ZERO)


def _f2(*terms: Term) -> HurewiczValue:
    return HurewiczValue(GroupKind.F2, format_label(terms))


def _z(*terms: Term) -> HurewiczValue:
    return HurewiczValue(GroupKind.Z, format_label(terms))


def _theta(a: int, b: int, coefficient: int = 1) -> Term:
    return Term(THETA, a, b, coefficient)


def _rho_tau(i: int, j: int = 0, coefficient: int = 1) -> Term:
    return Term(rho=i, tau=j, coefficient=coefficient)


class FateStatus(Enum):
    NOT_PRESENT = "NotPresent"
    PERMANENT_CYCLE = "PermanentCycle"
    SUPPORTS_DIFFERENTIAL = "SupportsDifferential"


class Provenance(Enum):
    EDGE_RULE = "EdgeRule"
    LONGEST_DIFF_THEOREM = "LongestDiffTheorem"
    CURATED_EXAMPLE = "CuratedExample"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Fil0Fate:
    """Fate of the filtration-0 class in a bidegree.

    ``known_target_label`` is the target on the stunted projective side, where
    it is exact; the genuine target is only defined up to indeterminacy.
    """

    status: FateStatus
    known_length: Optional[int] = None
    known_target_label: Optional[str] = None
    provenance: Provenance = Provenance.UNKNOWN

    def __post_init__(self):
        if self.known_length is not None:
            if self.status is not FateStatus.SUPPORTS_DIFFERENTIAL:
                raise DomainError("a differential length needs a supporting class")
            if self.known_length < 2:
                raise DomainError(f"Adams differentials have length >= 2, got {self.known_length}")

    @property
    def genuine_target_exact(self) -> bool:
        return False

    def describe(self) -> str:
        """Short text used in the ``fate`` column of charts."""
        if self.status is not FateStatus.SUPPORTS_DIFFERENTIAL:
            return self.status.value
        length = f"d{self.known_length}" if self.known_length else "d?"
        return f"{length}:{self.provenance.value}"


# -- coefficient groups ------------------------------------------------------


def coefficients_hf2(deg: DegreeLike) -> HurewiczValue:
    """Additive generator of the F2 coefficients in ``deg``."""
    deg = _deg(deg)
    s, w = deg.s, deg.w
    if s <= 0 and w <= s:
        return _f2(_rho_tau(-s, s - w))
    gen = NegConeGenerator.from_bidegree(deg)
    if gen is not None:
        return _f2(_theta(gen.a, gen.b))
    return ZERO


def _s_zero_integral(w: int) -> HurewiczValue:
    if w == 0:
        return _z(Term())
    if w > 0:
        return _z(_theta(0, w - 2))
    return _z(_rho_tau(0, -w))


def _odd_negative_cone(s: int, w: int) -> bool:
    return s >= 0 and (s - w) % 2 == 1 and s - w <= -3


def coefficients_hz(deg: DegreeLike) -> HurewiczValue:
    """Additive generator of the integral coefficients in ``deg``."""
    deg = _deg(deg)
    s, w = deg.s, deg.w
    if s == 0 and w % 2 == 0:
        return _s_zero_integral(w)
    if s < 0 and (s - w) % 2 == 0 and s - w >= 0:
        return _f2(_rho_tau(-s, s - w))
    if _odd_negative_cone(s, w):
        return _f2(_theta(s, w - s - 2))
    return ZERO


def coefficients_ha(deg: DegreeLike) -> HurewiczValue:
    """Additive generator of the Burnside-ring coefficients in ``deg``."""
    deg = _deg(deg)
    s, w = deg.s, deg.w
    if (s, w) == (0, 0):
        return HurewiczValue(GroupKind.BURNSIDE, format_label((Term(), Term(BURNSIDE))))
    if s == 0 and w % 2 == 0:
        return _s_zero_integral(w)
    if s == w:
        if s < 0:
            return _z(_rho_tau(-s))
        return _z(Term(ETA, rho=s - 1))
    if s < 0 and (s - w) % 2 == 0 and s - w >= 2:
        return _f2(_rho_tau(-s, s - w))
    if _odd_negative_cone(s, w):
        return _f2(_theta(s, w - s - 2))
    return ZERO


# -- zero-line and Hurewicz images -------------------------------------------


def _negative_cone_bound(deg: BiDegree, bound) -> Optional[HurewiczValue]:
    """``theta/(rho^s tau^(w-s-2))`` when ``0 <= s < bound(w-s-1)``."""
    s, w = deg.s, deg.w
    if s - w > -2 or s < 0:
        return None
    if s < bound(w - s - 1):
        return _f2(_theta(s, w - s - 2))
    return None


def zero_line(deg: DegreeLike) -> HurewiczValue:
    """Filtration-0 line of the genuine C2-equivariant Adams E2-page.

    Args:
        deg: The bidegree ``(s, w)``.

    Returns:
        ``F2{rho^-s}`` on the diagonal ``s = w <= 0``,
        ``F2{theta/(rho^s tau^(w-s-2))}`` when ``0 <= s < 2^v2(w-s-1)``,
        and zero otherwise.
    """
    deg = _deg(deg)
    if deg.s == deg.w and deg.s <= 0:
        return _f2(_rho_tau(-deg.s))
    value = _negative_cone_bound(deg, lambda n: 1 << v2(n))
    return value if value is not None else ZERO


def hurewicz_hf2(deg: DegreeLike) -> HurewiczValue:
    """Hurewicz image of the F2 Eilenberg-MacLane spectrum in ``deg``."""
    deg = _deg(deg)
    if deg.s == deg.w and deg.s <= 0:
        return _f2(_rho_tau(-deg.s))
    value = _negative_cone_bound(deg, psi)
    return value if value is not None else ZERO


def theta_in_image(k: int, n: int) -> bool:
    """Whether ``theta/(rho^k tau^n)`` is in the Hurewicz image.

    Equivalent to ``S^n`` admitting ``k`` linearly independent vector fields.
    """
    return not hurewicz_hf2(NegConeGenerator(k, n).bidegree).is_zero


def n_of_s(s: int) -> int:
    """Exponent correction in the Hurewicz image along ``s = w > 0``."""
    if s <= 0:
        raise DomainError(f"n(s) is defined for s >= 1, got {s}")
    t, j = divmod(s, 8)
    if j == 0:
        return 4 * t - 1
    if j <= 4:
        return 4 * t
    return 4 * t + j - 4


def _integral_hurewicz(deg: BiDegree) -> Optional[HurewiczValue]:
    s, w = deg.s, deg.w
    if s == 0 and w % 2 == 0:
        if w < 0:
            return _z(_rho_tau(0, -w, coefficient=2))
        return _s_zero_integral(w)
    if _odd_negative_cone(s, w) and s < psi(w - s - 1):
        return _f2(_theta(s, w - s - 2))
    return None


def hurewicz_hz(deg: DegreeLike) -> HurewiczValue:
    """Hurewicz image of the integral Eilenberg-MacLane spectrum in ``deg``."""
    deg = _deg(deg)
    value = _integral_hurewicz(deg)
    if value is not None:
        return value
    if deg.s == deg.w and deg.s < 0:
        return _f2(_rho_tau(-deg.s))
    return ZERO


def hurewicz_ha(deg: DegreeLike) -> HurewiczValue:
    """Hurewicz image of the Burnside-ring Eilenberg-MacLane spectrum."""
    deg = _deg(deg)
    s, w = deg.s, deg.w
    if (s, w) == (0, 0):
        return coefficients_ha(deg)
    value = _integral_hurewicz(deg)
    if value is not None:
        return value
    if s == w and s < 0:
        return _z(_rho_tau(-s))
    if s == w and s > 0:
        return _z(Term(ETA, rho=s - 1, coefficient=1 << (s - n_of_s(s) - 1)))
    return ZERO


# -- rho-Bockstein propagation -----------------------------------------------


@dataclass(frozen=True)
class BocksteinDifferential:
    """``d_page(source) = target * h_n`` with ``page = 2**n``."""

    n: int
    source: NegConeGenerator
    target: NegConeGenerator

    @property
    def page(self) -> int:
        return 1 << self.n


def bockstein_differentials(max_a: int, max_b: int) -> Iterator[BocksteinDifferential]:
    """All rho-Bockstein differentials with source exponents in range.

    The family is ``d_(2^n)(theta/(rho^(2^n+i) tau^(k 2^(n+1) + 2^n - 1)))
    = theta/(rho^i tau^(k 2^(n+1) + 2^n + ceil(2^(n-1)) - 1)) h_n``.
    """
    if max_a < 0 or max_b < 0:
        raise DomainError("bounds must be nonnegative")
    n = 0
    while (1 << n) <= max_a:
        step = 1 << (n + 1)
        lift = (1 << n) - 1
        shift = (1 << (n - 1)) if n >= 1 else 1
        for i in range(max_a - (1 << n) + 1):
            b = lift
            while b <= max_b:
                yield BocksteinDifferential(
                    n=n,
                    source=NegConeGenerator((1 << n) + i, b),
                    target=NegConeGenerator(i, b + shift),
                )
                b += step
        n += 1


def bockstein_survivors(max_a: int, max_b: int) -> Set[NegConeGenerator]:
    """Generators ``theta/(rho^a tau^b)`` with ``a <= max_a``, ``b <= max_b``
    that support no rho-Bockstein differential."""
    sources = {d.source for d in bockstein_differentials(max_a, max_b)}
    survivors = {
        NegConeGenerator(a, b)
        for a in range(max_a + 1)
        for b in range(max_b + 1)
        if NegConeGenerator(a, b) not in sources
    }
    _logger.debug(f"{len(survivors)} survivors out of {(max_a + 1) * (max_b + 1)}")
    return survivors


# -- curated differentials ---------------------------------------------------


@dataclass(frozen=True)
class CuratedDifferential:
    coweight: int
    s: int
    length: int
    target_label: str
    citation_tag: str


@dataclass(frozen=True)
class CuratedTable:
    version: str
    entries: Dict[Tuple[int, int], CuratedDifferential]

    def lookup(self, coweight: int, s: int) -> Optional[CuratedDifferential]:
        return self.entries.get((coweight, s))


def parse_curated_table(text: str) -> CuratedTable:
    """Parse the tab-separated curated differential records."""
    version = None
    entries: Dict[Tuple[int, int], CuratedDifferential] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            if key.strip() == "version":
                version = value.strip()
            continue
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 5:
            raise DomainError(f"curated table line {lineno}: expected 5 fields, got {len(fields)}")
        try:
            record = CuratedDifferential(
                coweight=int(fields[0]),
                s=int(fields[1]),
                length=int(fields[2]),
                target_label=fields[3],
                citation_tag=fields[4],
            )
        except ValueError as e:
            raise DomainError(f"curated table line {lineno}: {e}") from e
        entries[(record.coweight, record.s)] = record
    if version is None:
        raise DomainError("curated table has no version header")
    return CuratedTable(version=version, entries=entries)


@lru_cache(maxsize=None)
def load_curated_table(path: Optional[Path] = None) -> CuratedTable:
    """Load and memoize a curated table; the packaged one by default."""
    path = Path(path) if path is not None else CURATED_PATH
    table = parse_curated_table(path.read_text(encoding="utf-8"))
    _logger.info(f"Loaded {len(table.entries)} curated differentials (version {table.version})")
    return table


# -- differential lengths ----------------------------------------------------


def _p_power(k: int) -> str:
    if k == 0:
        return ""
    return "P" if k == 1 else f"P^{k}"


@dataclass(frozen=True)
class LongestDifferential:
    """Indices attached to the first non-permanent class at a coweight.

    ``r`` is ``None`` when the length is not determined by the general
    theorem (``v2 = 4``).
    """

    coweight: int
    v2: int
    c: int
    m: int
    r: Optional[int]
    j_label: str
    a_label: str
    stunted_target_label: Optional[str]

    @property
    def source_label(self) -> str:
        return f"1[{self.coweight}]"

    @property
    def source_generator(self) -> NegConeGenerator:
        return NegConeGenerator(self.c, -self.coweight - 2)


def longest_diff_data(coweight: int) -> LongestDifferential:
    """Indices and targets for the class ``theta/(rho^c tau^(w-s-2))`` with
    ``c = psi(w-s-1)`` at the given coweight.

    Args:
        coweight: ``s - w``; must satisfy ``v2(-coweight - 1) >= 4``.

    Returns:
        The :class:`LongestDifferential` record.
    """
    if coweight > -2:
        raise DomainError(f"coweight must be <= -2, got {coweight}")
    e = v2(-coweight - 1)
    if e < 4:
        raise NoPredictionError(f"no longest-differential prediction for v2 = {e}")
    b = coweight
    c = psi(-coweight - 1)
    k, rest = divmod(e, 4)
    if e == 5:
        return LongestDifferential(
            coweight, e, c, 3, 4, "eta^2 sigma", "h1^2h3", f"h1c0[{b - 10}]"
        )
    if rest == 0:
        a = f"{_p_power(k - 1)}c0"
        return LongestDifferential(
            coweight, e, c, 4 * k - 1,
            4 * k - 1 if k >= 2 else None,
            f"{{{a}}}", a, f"{a}[{b - c}]" if k >= 2 else None,
        )
    if rest == 1:
        a = f"h1{_p_power(k - 1)}c0"
        return LongestDifferential(
            coweight, e, c, 4 * k, 4 * k,
            f"eta{{{_p_power(k - 1)}c0}}", a, f"{a}[{b - c}]",
        )
    if rest == 2:
        a = f"{_p_power(k)}h2"
        return LongestDifferential(
            coweight, e, c, 4 * k + 1, 4 * k + 1, f"{{{a}}}", a, f"{a}[{b - c}]"
        )
    stem = 8 * k + 7
    return LongestDifferential(
        coweight, e, c, 4 * k + 1 - v2(k + 1), 4 * k + 2,
        f"j_{stem}", f"a_{stem}", f"h2{_p_power(k)}h2[{b - c + 1}]",
    )


def classify_fil0(deg: DegreeLike, curated: Optional[CuratedTable] = None) -> Fil0Fate:
    """Fate of the filtration-0 class in ``deg``.

    Lengths come, in order of precedence, from the curated table, from the
    longest-differential theorem (``s = psi`` and ``v2 >= 5``) and from the
    edge rule (``s = 2^v2 - 1`` supports a ``d2``).

    Args:
        deg: The bidegree ``(s, w)``.
        curated: Curated table; the packaged one by default.

    Returns:
        The :class:`Fil0Fate`.
    """
    deg = _deg(deg)
    if zero_line(deg).is_zero:
        return Fil0Fate(FateStatus.NOT_PRESENT)
    if not hurewicz_hf2(deg).is_zero:
        return Fil0Fate(FateStatus.PERMANENT_CYCLE)
    if curated is None:
        curated = load_curated_table()
    s, coweight = deg.s, deg.coweight
    e = v2(-coweight - 1)
    record = curated.lookup(coweight, s)
    if record is not None:
        return Fil0Fate(
            FateStatus.SUPPORTS_DIFFERENTIAL,
            record.length,
            record.target_label,
            Provenance.CURATED_EXAMPLE,
        )
    if s == psi(-coweight - 1) and e >= 5:
        data = longest_diff_data(coweight)
        return Fil0Fate(
            FateStatus.SUPPORTS_DIFFERENTIAL,
            data.r,
            data.stunted_target_label,
            Provenance.LONGEST_DIFF_THEOREM,
        )
    if s == (1 << e) - 1:
        return Fil0Fate(FateStatus.SUPPORTS_DIFFERENTIAL, 2, None, Provenance.EDGE_RULE)
    return Fil0Fate(FateStatus.SUPPORTS_DIFFERENTIAL)


def coweight_fates(coweight: int, curated: Optional[CuratedTable] = None) -> List[Tuple[BiDegree, Fil0Fate]]:
    """Fates of every zero-line class ``0 <= s < 2^v2(-coweight-1)``."""
    if coweight > -2:
        raise DomainError(f"coweight must be <= -2, got {coweight}")
    top = 1 << v2(-coweight - 1)
    return [
        (BiDegree(s, s - coweight), classify_fil0(BiDegree(s, s - coweight), curated))
        for s in range(top)
    ]


# -- image of J --------------------------------------------------------------

_IMJ_SEEDS = {1: "h0^2h4", 2: "h0i", 3: "h0^9h5"}


@dataclass(frozen=True)
class ImageOfJRecord:
    """Data attached to the image-of-J generator in stem ``8k+7``."""

    k: int
    stem: int
    r_k: int
    two_order: int
    a_filtration: int
    a_prime_label: Optional[str]
    target_label: str

    @property
    def a_prime_bidegree(self) -> Tuple[int, int]:
        return (self.stem, self.a_filtration - 1)

    @property
    def target_bidegree(self) -> Tuple[int, int]:
        return (8 * self.k + 6, 4 * self.k + 2)

    @property
    def seed_differential(self) -> Optional[str]:
        if self.a_prime_label is None:
            return None
        return f"d{self.r_k}({self.a_prime_label}) = {self.target_label}"


def imj_data(k: int) -> ImageOfJRecord:
    """Image-of-J indices for stem ``8k+7``: ``r_k = v2(k+1) + 2``, order
    ``2^(v2(k+1)+4)`` and the ``h2 P^k h2`` target of ``d_(r_k)(a')``."""
    if k <= 0:
        raise DomainError(f"imj_data expects k >= 1, got {k}")
    r = v2(k + 1) + 2
    return ImageOfJRecord(
        k=k,
        stem=8 * k + 7,
        r_k=r,
        two_order=1 << (v2(k + 1) + 4),
        a_filtration=4 * k + 3 - r,
        a_prime_label=_IMJ_SEEDS.get(k),
        target_label=f"h2{_p_power(k)}h2",
    )


# -- translation to stunted projective spectra -------------------------------


@dataclass(frozen=True)
class StuntedCorrespondence:
    """The class ``1[cell]`` on the bottom-``bottom`` stunted spectrum."""

    bottom: int
    cell: int

    @property
    def label(self) -> str:
        return f"1[{self.cell}]"

    @property
    def descriptor(self) -> str:
        return f"RP[{self.bottom}..inf]"

    @property
    def bidegree(self) -> BiDegree:
        return BiDegree(self.cell - self.bottom, -self.bottom)


def translate_to_stunted(deg: DegreeLike) -> StuntedCorrespondence:
    """Send a negative-cone zero-line class to ``1[s-w]`` on ``RP^inf_(-w)``."""
    deg = _deg(deg)
    if deg.s < 0 or deg.coweight > -2 or zero_line(deg).is_zero:
        raise NoCorrespondenceError(f"{deg} carries no negative-cone zero-line class")
    return StuntedCorrespondence(bottom=-deg.w, cell=deg.coweight)
