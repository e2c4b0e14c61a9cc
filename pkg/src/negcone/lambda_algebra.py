"""The mod 2 Lambda algebra as a differential graded algebra.

A monomial ``lambda_{i_1} ... lambda_{i_f}`` is stored as the tuple
``(i_1, ..., i_f)``; it has stem ``sum(i)`` and filtration ``f``, and is
admissible when ``2 i_j >= i_{j+1}`` for every ``j``.  Inadmissible pairs are
rewritten with

    lambda_i lambda_{2i+1+n} = sum_{j >= 0} C(n-j-1, j) lambda_{i+n-j} lambda_{2i+1+j}

and the differential is determined on generators by

    d(lambda_n) = sum_{j >= 1} C(n-j, j) lambda_{n-j} lambda_{j-1}

together with the Leibniz rule.  Binomials with a negative top are zero.
The homology of the resulting complex is Ext over the Steenrod algebra for
the sphere.
"""

import hashlib
import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from tqdm import tqdm

from negcone.arith import lambda_binom
from negcone.chart import BigradedChart, ExtEntry
from negcone.config import Settings
from negcone.errors import DomainError, RangeError
from negcone.homology import BaseComplex, HomologyResult

_logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]

NAMED_CLASSES_PATH = Path(__file__).parent / "data" / "named_classes.tsv"


def is_admissible(mono: Sequence[int]) -> bool:
    return all(2 * a >= b for a, b in zip(mono, mono[1:]))


@lru_cache(maxsize=None)
def _admissible(stem: int, length: int, cap: int) -> Tuple[Monomial, ...]:
    """Admissible monomials of the given stem and length whose first index
    is at most ``cap``, in lexicographic order."""
    if length == 0:
        return ((),) if stem == 0 else ()
    if stem > cap * ((1 << length) - 1):
        return ()
    out = []
    for first in range(min(cap, stem) + 1):
        for rest in _admissible(stem - first, length - 1, 2 * first):
            out.append((first,) + rest)
    return tuple(out)


def admissible_basis(stem: int, fil: int) -> Tuple[Monomial, ...]:
    """All admissible monomials in ``(stem, fil)``, lexicographically sorted.

    Args:
        stem: Total stem.
        fil: Number of letters.

    Returns:
        Tuple of monomials; empty for negative arguments.
    """
    if stem < 0 or fil < 0:
        return ()
    return _admissible(stem, fil, stem)


def relation_terms(i: int, j: int) -> Tuple[Tuple[int, int], ...]:
    """Admissible pairs summing to ``lambda_i lambda_j`` when ``j > 2i``."""
    n = j - 2 * i - 1
    return tuple(
        (i + n - t, 2 * i + 1 + t) for t in range(n + 1) if lambda_binom(n - t - 1, t)
    )


@lru_cache(maxsize=None)
def left_multiply(i: int, mono: Monomial) -> FrozenSet[Monomial]:
    """Normal form of ``lambda_i * mono`` for admissible ``mono``."""
    if not mono or 2 * i >= mono[0]:
        return frozenset(((i,) + mono,))
    rest = mono[1:]
    out = set()
    for a, b in relation_terms(i, mono[0]):
        for tail in left_multiply(b, rest):
            out ^= left_multiply(a, tail)
    return frozenset(out)


def _multiply_word(word: Sequence[int], terms: Iterable[Monomial]) -> FrozenSet[Monomial]:
    current = set(terms)
    for letter in reversed(word):
        nxt = set()
        for mono in current:
            nxt ^= left_multiply(letter, mono)
        current = nxt
    return frozenset(current)


@lru_cache(maxsize=None)
def generator_differential(n: int) -> FrozenSet[Monomial]:
    """``d(lambda_n)`` as a set of admissible pairs."""
    return frozenset((n - j, j - 1) for j in range(1, n + 1) if lambda_binom(n - j, j))


@lru_cache(maxsize=None)
def monomial_differential(mono: Monomial) -> FrozenSet[Monomial]:
    """``d`` of an admissible monomial, in normal form."""
    if not mono:
        return frozenset()
    head, rest = mono[0], mono[1:]
    out = set()
    for pair in generator_differential(head):
        out ^= _multiply_word(pair, (rest,))
    for term in monomial_differential(rest):
        out ^= left_multiply(head, term)
    return frozenset(out)


@dataclass(frozen=True)
class LambdaElement:
    """A homogeneous F2-sum of admissible monomials."""

    terms: FrozenSet[Monomial] = field(default_factory=frozenset)

    def __post_init__(self):
        degrees = {(sum(m), len(m)) for m in self.terms}
        if len(degrees) > 1:
            raise DomainError(f"inhomogeneous Lambda element with bidegrees {sorted(degrees)}")
        bad = [m for m in self.terms if not is_admissible(m)]
        if bad:
            raise DomainError(f"inadmissible terms {bad}; use adem_reduce")

    @classmethod
    def monomial(cls, *indices: int) -> "LambdaElement":
        """Normal form of the word ``lambda_{indices[0]} ...``."""
        return adem_reduce(indices)

    @classmethod
    def unit(cls) -> "LambdaElement":
        return cls(frozenset(((),)))

    @property
    def bidegree(self) -> Optional[Tuple[int, int]]:
        for m in self.terms:
            return sum(m), len(m)
        return None

    def sorted_terms(self) -> List[Monomial]:
        return sorted(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "LambdaElement") -> "LambdaElement":
        return LambdaElement(self.terms ^ other.terms)

    def __mul__(self, other: "LambdaElement") -> "LambdaElement":
        return concat_product(self, other)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(format_monomial(m) for m in self.sorted_terms())


def format_monomial(mono: Monomial) -> str:
    if not mono:
        return "1"
    return "".join(f"λ{i}" for i in mono)


def adem_reduce(word: Sequence[int]) -> LambdaElement:
    """Admissible normal form of an arbitrary word.

    Args:
        word: Sequence of nonnegative generator indices.

    Returns:
        The reduced :class:`LambdaElement`; the unit for the empty word.
    """
    if any(i < 0 for i in word):
        raise DomainError(f"negative generator index in {tuple(word)}")
    return LambdaElement(_multiply_word(tuple(word), ((),)))


def differential(x: LambdaElement) -> LambdaElement:
    """``d(x)``; maps ``(stem, fil)`` to ``(stem - 1, fil + 1)``."""
    out = set()
    for mono in x.terms:
        out ^= monomial_differential(mono)
    return LambdaElement(frozenset(out))


def concat_product(x: LambdaElement, y: LambdaElement) -> LambdaElement:
    """Product ``x * y`` reduced to normal form."""
    out = set()
    for left in x.terms:
        for right in y.terms:
            out ^= _multiply_word(left, (right,))
    return LambdaElement(frozenset(out))


def power(x: LambdaElement, n: int) -> LambdaElement:
    out = LambdaElement.unit()
    for _ in range(n):
        out = concat_product(x, out)
    return out


class LambdaComplex(BaseComplex):
    """The Lambda algebra as a bigraded complex of admissible monomials."""

    name = "Lambda"

    def basis(self, stem: int, fil: int) -> Tuple[Monomial, ...]:
        return admissible_basis(stem, fil)

    def boundary(self, key: Monomial) -> FrozenSet[Monomial]:
        return monomial_differential(key)


LAMBDA = LambdaComplex()


def _check_window(stem: int, fil: int, settings: Optional[Settings]) -> Settings:
    settings = settings or Settings()
    if stem > settings.max_stem or fil > settings.max_fil:
        raise RangeError(
            f"({stem}, {fil}) exceeds the ceiling ({settings.max_stem}, {settings.max_fil})"
        )
    return settings


def homology_bidegree(stem: int, fil: int, settings: Optional[Settings] = None) -> HomologyResult:
    """Ext of the sphere in ``(stem, fil)`` with cycle representatives.

    Args:
        stem: Stem, at most the configured ceiling.
        fil: Filtration, at most the configured ceiling.
        settings: Ceilings; defaults apply when omitted.

    Returns:
        A :class:`~negcone.homology.HomologyResult` over admissible monomials.
    """
    _check_window(stem, fil, settings)
    return LAMBDA.homology(stem, fil)


def as_element(chain: Iterable[Monomial]) -> LambdaElement:
    return LambdaElement(frozenset(chain))


# -- conventions -------------------------------------------------------------


def convention_checksum(max_index: int = 24) -> str:
    """Digest of the relation and differential formulas in a finite range.

    Cached charts record it; a change in conventions invalidates them.
    """
    payload = {
        "d": [sorted(generator_differential(n)) for n in range(max_index + 1)],
        "rel": [
            [i, j, sorted(relation_terms(i, j))]
            for i in range(max_index // 2)
            for j in range(2 * i + 1, max_index + 1)
        ],
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


# -- named classes -----------------------------------------------------------


@dataclass(frozen=True)
class NamedClass:
    """A classical name for an Ext class.

    ``definition`` is ``lambda:i,j,...`` (an explicit cycle),
    ``product:a*b*...`` (a product of earlier names) or ``gen`` (the
    generator of a one-dimensional bidegree).
    """

    stem: int
    fil: int
    name: str
    definition: str


def parse_named_classes(text: str) -> Tuple[NamedClass, ...]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise DomainError(f"named classes line {lineno}: expected 4 fields")
        stem, fil, name, definition = fields
        out.append(NamedClass(int(stem), int(fil), name, definition.strip()))
    return tuple(out)


@lru_cache(maxsize=None)
def named_classes(path: Optional[Path] = None) -> Tuple[NamedClass, ...]:
    path = Path(path) if path is not None else NAMED_CLASSES_PATH
    return parse_named_classes(path.read_text(encoding="utf-8"))


def resolve_named_classes(
    max_stem: int, max_fil: int, complex_: LambdaComplex = LAMBDA
) -> Dict[str, Tuple[Tuple[int, int], LambdaElement]]:
    """Representatives of every named class inside the window.

    Entries that do not resolve to a nonzero class are skipped with a
    warning.
    """
    resolved: Dict[str, Tuple[Tuple[int, int], LambdaElement]] = {}
    for entry in named_classes():
        if entry.stem > max_stem or entry.fil > max_fil:
            continue
        kind, _, arg = entry.definition.partition(":")
        if kind == "lambda":
            indices = [int(i) for i in arg.split(",") if i != ""]
            element = adem_reduce(indices)
        elif kind == "product":
            factors = arg.split("*")
            missing = [f for f in factors if f not in resolved]
            if missing:
                _logger.warning(f"{entry.name}: unresolved factors {missing}")
                continue
            element = LambdaElement.unit()
            for factor in factors:
                element = concat_product(element, resolved[factor][1])
        elif kind == "gen":
            result = complex_.homology(entry.stem, entry.fil)
            if result.dimension != 1:
                _logger.warning(
                    f"{entry.name}: ({entry.stem}, {entry.fil}) has dimension "
                    f"{result.dimension}, not 1"
                )
                continue
            element = as_element(result.representatives[0])
        else:
            raise DomainError(f"unknown definition {entry.definition!r} for {entry.name}")
        if element.bidegree != (entry.stem, entry.fil):
            raise DomainError(f"{entry.name} resolved to bidegree {element.bidegree}")
        if not complex_.homology(entry.stem, entry.fil).is_nonzero_class(element.terms):
            _logger.warning(f"{entry.name} is zero in Ext; skipped")
            continue
        resolved[entry.name] = ((entry.stem, entry.fil), element)
    return resolved


def label_classes(
    result: HomologyResult, named: Sequence[Tuple[str, LambdaElement]]
) -> Tuple[str, ...]:
    """Names for a basis of ``result``: independent named classes first,
    then ``x_<stem>_<fil>_<i>`` for the rest."""
    labels = []
    chosen: List[Iterable[Monomial]] = []
    for name, element in named:
        trial = chosen + [element.terms]
        if result.span_rank(trial) == len(trial):
            chosen = trial
            labels.append(name)
    for i in range(result.dimension - len(labels)):
        labels.append(f"x_{result.stem}_{result.fil}_{i}")
    return tuple(labels)


def ext_sphere_chart(
    max_stem: int,
    max_fil: int,
    settings: Optional[Settings] = None,
    progress: bool = False,
    min_stem: int = 0,
    min_fil: int = 0,
) -> BigradedChart:
    """Ext of the sphere for ``min_stem <= stem <= max_stem`` and
    ``min_fil <= fil <= max_fil``.

    Args:
        max_stem: Largest stem, at most the configured ceiling.
        max_fil: Largest filtration, at most the configured ceiling.
        settings: Ceilings; defaults apply when omitted.
        progress: Show a progress bar on stderr.
        min_stem: Smallest stem.
        min_fil: Smallest filtration.

    Returns:
        The chart, with classical names attached where the named-class
        dictionary matches.
    """
    _check_window(max_stem, max_fil, settings)
    if min_stem > max_stem or min_fil > max_fil or min_stem < 0 or min_fil < 0:
        raise RangeError(f"empty window stems {min_stem}..{max_stem}, fil {min_fil}..{max_fil}")
    from negcone.oracle import validate_conventions

    validate_conventions()
    named = resolve_named_classes(max_stem, max_fil)
    by_degree: Dict[Tuple[int, int], List[Tuple[str, LambdaElement]]] = {}
    for name, (deg, element) in named.items():
        by_degree.setdefault(deg, []).append((name, element))

    degrees = [(s, f) for f in range(min_fil, max_fil + 1) for s in range(min_stem, max_stem + 1)]
    entries = {}
    for stem, fil in tqdm(degrees, desc="Ext(S0)", disable=not progress):
        result = LAMBDA.homology(stem, fil)
        if result.dimension == 0:
            continue
        entries[(stem, fil)] = ExtEntry(
            dimension=result.dimension,
            labels=label_classes(result, by_degree.get((stem, fil), [])),
            representatives=tuple(tuple(sorted(rep)) for rep in result.representatives),
        )
    _logger.info(f"Ext(S0) through ({max_stem}, {max_fil}): {len(entries)} nonzero bidegrees")
    return BigradedChart(
        spectrum="S0",
        stem_range=(min_stem, max_stem),
        fil_range=(min_fil, max_fil),
        entries=entries,
    )
