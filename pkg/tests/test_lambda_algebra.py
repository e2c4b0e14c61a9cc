"""Tests for the Lambda algebra and Ext of the sphere."""

import pytest

from negcone.config import Settings
from negcone.errors import DomainError, RangeError
from negcone.lambda_algebra import (
    LAMBDA,
    LambdaElement,
    adem_reduce,
    admissible_basis,
    concat_product,
    convention_checksum,
    differential,
    ext_sphere_chart,
    generator_differential,
    homology_bidegree,
    is_admissible,
    label_classes,
    parse_named_classes,
    power,
    relation_terms,
    resolve_named_classes,
)

# Ext of the sphere through stem 9, filtration 5, as (stem, fil) -> dimension.
KNOWN_EXT = {
    (0, 0): 1, (0, 1): 1, (0, 5): 1,
    (1, 1): 1, (2, 2): 1, (3, 1): 1, (3, 2): 1, (3, 3): 1, (3, 4): 0,
    (4, 1): 0, (4, 2): 0, (5, 2): 0, (5, 3): 0,
    (6, 2): 1, (7, 1): 1, (7, 2): 1, (7, 3): 1, (7, 4): 1, (7, 5): 0,
    (8, 2): 1, (8, 3): 1, (9, 3): 1, (9, 4): 1, (9, 5): 1,
}


def lam(*indices):
    return LambdaElement.monomial(*indices)


def test_admissible_basis():
    """Admissible monomials of a bidegree, in lexicographic order."""
    assert admissible_basis(3, 2) == ((1, 2), (2, 1), (3, 0))
    assert admissible_basis(0, 3) == ((0, 0, 0),)
    assert admissible_basis(-1, 2) == ()
    assert all(is_admissible(m) for m in admissible_basis(12, 4))
    assert not is_admissible((0, 1))


def test_relations():
    """Sample relations in normal form."""
    assert relation_terms(0, 1) == ()
    assert relation_terms(1, 7) == ((5, 3),)
    assert lam(0, 3) == lam(2, 1)
    assert not lam(0, 1)
    assert lam(1, 7) == lam(5, 3)


def test_generator_differentials():
    """d(lambda_n) on small generators."""
    assert generator_differential(0) == frozenset()
    assert generator_differential(1) == frozenset()
    assert generator_differential(2) == frozenset({(1, 0)})
    assert generator_differential(3) == frozenset()
    assert generator_differential(7) == frozenset()
    assert differential(lam(2)) == lam(1, 0)


def test_differential_squares_to_zero():
    """d(d(x)) = 0 on every admissible monomial in a small window."""
    for fil in range(1, 6):
        for stem in range(16):
            for mono in admissible_basis(stem, fil):
                x = LambdaElement(frozenset({mono}))
                assert not differential(differential(x))


def test_element_validation():
    """Elements are homogeneous sums of admissible monomials."""
    with pytest.raises(DomainError):
        LambdaElement(frozenset({(0, 1)}))
    with pytest.raises(DomainError):
        LambdaElement(frozenset({(1,), (1, 1)}))
    with pytest.raises(DomainError):
        adem_reduce([1, -1])


def test_element_arithmetic():
    """Sums, products and printing."""
    h1 = lam(1)
    assert h1 * h1 == lam(1, 1)
    assert not (h1 + h1)
    assert power(lam(0), 3) == lam(0, 0, 0)
    assert concat_product(lam(0), lam(1)) == LambdaElement()
    assert str(lam(1, 1)) == "λ1λ1"
    assert str(LambdaElement()) == "0"
    assert LambdaElement.unit().bidegree == (0, 0)
    assert LambdaElement().bidegree is None


@pytest.mark.parametrize("deg, dim", sorted(KNOWN_EXT.items()))
def test_known_ext(deg, dim):
    """Ext dimensions in low stems."""
    assert LAMBDA.homology(*deg).dimension == dim


def test_hopf_classes_present():
    """h_i in (2^i - 1, 1)."""
    for stem in (0, 1, 3, 7, 15):
        result = LAMBDA.homology(stem, 1)
        assert result.dimension == 1
        assert result.is_nonzero_class({(stem,)})


def test_tower_truncations():
    """h0^3 h2 = 0 and h0^4 h3 = 0."""
    h0 = lam(0)
    assert LAMBDA.homology(3, 4).is_boundary((power(h0, 3) * lam(3)).terms)
    assert LAMBDA.homology(7, 5).is_boundary((power(h0, 4) * lam(7)).terms)
    assert LAMBDA.homology(7, 4).is_nonzero_class((power(h0, 3) * lam(7)).terms)


def test_homology_bidegree_ceiling():
    """Windows beyond the ceiling raise RangeError."""
    with pytest.raises(RangeError):
        homology_bidegree(40, 1)
    with pytest.raises(RangeError):
        homology_bidegree(3, 3, Settings(max_fil=2))
    assert homology_bidegree(3, 1).dimension == 1


def test_convention_checksum_is_stable():
    """The convention digest is a deterministic sha256."""
    checksum = convention_checksum()
    assert len(checksum) == 64
    assert checksum == convention_checksum()
    assert checksum != convention_checksum(12)


def test_named_classes_resolve():
    """The packaged names resolve to nonzero classes."""
    named = resolve_named_classes(16, 6)
    for name in ("h0", "h1", "h2", "h3", "h4", "c0", "Ph1", "Ph2", "d0", "h2Ph2", "h0^3h4", "h1h4"):
        assert name in named
    assert named["c0"][0] == (8, 3)
    assert "h4^2" not in named


def test_parse_named_classes():
    """Rows need four tab-separated fields."""
    rows = parse_named_classes("# comment\n1\t1\th1\tlambda:1\n")
    assert rows[0].name == "h1"
    with pytest.raises(DomainError):
        parse_named_classes("1\t1\th1\n")


def test_label_classes_fallback():
    """Unnamed classes get positional labels."""
    result = LAMBDA.homology(3, 1)
    assert label_classes(result, [("h2", lam(3))]) == ("h2",)
    assert label_classes(result, []) == ("x_3_1_0",)


def test_ext_sphere_chart():
    """A small chart with classical names."""
    chart = ext_sphere_chart(9, 5)
    assert chart.spectrum == "S0"
    assert chart.labels(7, 1) == ("h3",)
    assert chart.labels(8, 3) == ("c0",)
    assert chart.labels(3, 3) == ("h1^3",)
    assert chart.dimension(4, 1) == 0
    assert chart.dimension(0, 5) == 1


def test_ext_sphere_chart_ceiling():
    """Charts respect the configured ceiling."""
    with pytest.raises(RangeError):
        ext_sphere_chart(10, 3, settings=Settings(max_stem=8))


@pytest.mark.slow
def test_ext_sphere_acceptance_classes():
    """Classes and products up to stem 22."""
    for deg in [(1, 1), (3, 1), (7, 1), (15, 1), (8, 3), (11, 5), (19, 9)]:
        assert LAMBDA.homology(*deg).dimension >= 1
    named = resolve_named_classes(22, 10)
    assert LAMBDA.homology(14, 6).is_nonzero_class(named["h2Ph2"][1].terms)
    assert LAMBDA.homology(22, 10).is_nonzero_class(named["h2P^2h2"][1].terms)
    h0 = lam(0)
    h0_2h4 = power(h0, 2) * lam(15)
    assert LAMBDA.homology(15, 3).is_nonzero_class(h0_2h4.terms)
    assert LAMBDA.homology(15, 4).is_nonzero_class((h0 * h0_2h4).terms)


def test_ext_sphere_names_towers_and_products():
    """h0 towers and low products carry their standard names."""
    chart = ext_sphere_chart(8, 4)
    assert [chart.labels(0, f) for f in range(5)] == [("1",), ("h0",), ("h0^2",), ("h0^3",), ("h0^4",)]
    assert chart.labels(7, 2) == ("h0h3",)
    assert chart.labels(7, 3) == ("h0^2h3",)
    assert chart.labels(7, 4) == ("h0^3h3",)
    assert not any(label.startswith("x_") for e in chart.entries.values() for label in e.labels)


def test_ext_sphere_chart_lower_bounds():
    """Lower window ends drop the bidegrees below them."""
    chart = ext_sphere_chart(16, 2, min_stem=15, min_fil=2)
    assert (chart.stem_range, chart.fil_range) == ((15, 16), (2, 2))
    assert set(chart.entries) == {(15, 2), (16, 2)}
    assert chart.labels(15, 2) == ("h0h4",)
    assert chart.labels(16, 2) == ("h1h4",)
    with pytest.raises(RangeError):
        ext_sphere_chart(8, 3, min_stem=9)
    with pytest.raises(RangeError):
        ext_sphere_chart(8, 3, min_fil=-1)
