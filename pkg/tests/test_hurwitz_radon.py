"""Tests for Hurwitz-Radon families and the quadratic map."""

import io
from fractions import Fraction

import numpy as np
import pytest

from negcone.arith import psi
from negcone.errors import DomainError, PoleSingularityError
from negcone.hurwitz_radon import (
    QuadraticMapSpec,
    SignedMatrix,
    compactified_map_eval,
    export_family,
    hurwitz_radon_family,
    quadratic_map_eval,
    sample_rational_points,
    tangent_frame,
    top_cell_inverse,
    verify_family,
)


def sq(v):
    return sum(c * c for c in v)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def test_families_up_to_128():
    """psi(m) - 1 matrices on R^m, all relations exact."""
    for m in range(1, 129):
        family = hurwitz_radon_family(m)
        assert len(family) == psi(m) - 1
        report = verify_family(family)
        assert report.ok, [str(v) for v in report.violations]
        if family:
            assert report.size == m


def test_larger_powers_of_two():
    """The period-16 step keeps the relations."""
    for m in (256, 512):
        family = hurwitz_radon_family(m)
        assert len(family) == psi(m) - 1
        assert verify_family(family).ok


def test_family_domain():
    """Sizes must be positive."""
    with pytest.raises(DomainError):
        hurwitz_radon_family(0)
    assert hurwitz_radon_family(7) == ()


def test_signed_matrix_validation():
    """Only signed permutation matrices are accepted."""
    with pytest.raises(DomainError):
        SignedMatrix(np.array([[1, 1], [0, 0]]))
    with pytest.raises(DomainError):
        SignedMatrix(np.array([[2, 0], [0, 1]]))
    with pytest.raises(DomainError):
        SignedMatrix(np.array([1, 0]))
    j = SignedMatrix(np.array([[0, -1], [1, 0]]))
    assert j.T == SignedMatrix(np.array([[0, 1], [-1, 0]]))
    assert j.apply((Fraction(1, 2), 3)) == (-3, Fraction(1, 2))
    assert len({j, SignedMatrix(np.array([[0, -1], [1, 0]]))}) == 1


def test_verify_family_reports_violations():
    """Broken relations are collected, not raised."""
    identity = SignedMatrix(np.eye(2, dtype=int))
    report = verify_family([identity])
    assert not report.ok
    assert {v.relation for v in report.violations} == {"A^2 = -I", "A^T = -A"}
    j = SignedMatrix(np.array([[0, -1], [1, 0]]))
    assert any(v.indices == (0, 1) for v in verify_family([j, j]).violations)
    assert verify_family([]).ok
    with pytest.raises(DomainError):
        verify_family([j, hurwitz_radon_family(4)[0]])


def test_tangent_frame():
    """A_i v are orthogonal to v and to each other, with |A_i v| = |v|."""
    v = (1, 2, 3, 4)
    frame = tangent_frame(3, v)
    assert len(frame) == 3
    for i, a in enumerate(frame):
        assert dot(a, v) == 0
        assert sq(a) == sq(v)
        for b in frame[i + 1:]:
            assert dot(a, b) == 0
    with pytest.raises(DomainError):
        tangent_frame(3, (0, 0, 0, 0))
    with pytest.raises(DomainError):
        tangent_frame(3, (1, 2))


def test_quadratic_map_spec():
    """k is bounded by the vector field number."""
    spec = QuadraticMapSpec.build(7)
    assert (spec.k, spec.source_dimension) == (7, 16)
    assert QuadraticMapSpec.build(7, 2).k == 2
    with pytest.raises(DomainError):
        QuadraticMapSpec.build(3, 4)
    with pytest.raises(DomainError):
        QuadraticMapSpec(n=3, k=1, matrices=())


@pytest.mark.parametrize("n", [1, 3, 7, 15])
def test_quadratic_map_norm_identity(n):
    """|f(p)|^2 = |p|^4 exactly over the rationals."""
    spec = QuadraticMapSpec.build(n)
    for p in sample_rational_points(spec.source_dimension, 100, seed=n):
        image = quadratic_map_eval(spec, p[: n + 1], p[n + 1:])
        assert sq(image) == sq(p) ** 2


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 3, 7, 15])
def test_quadratic_map_norm_identity_many(n):
    """The norm identity on a thousand points."""
    spec = QuadraticMapSpec.build(n)
    for p in sample_rational_points(spec.source_dimension, 1000, seed=100 + n):
        image = quadratic_map_eval(spec, p[: n + 1], p[n + 1:])
        assert sq(image) == sq(p) ** 2


def test_quadratic_map_shapes():
    """Argument lengths are checked."""
    spec = QuadraticMapSpec.build(3)
    with pytest.raises(DomainError):
        quadratic_map_eval(spec, (1, 0), (1, 0, 0, 0))


def test_compactified_map():
    """Unit points go to unit points."""
    spec = QuadraticMapSpec.build(3)
    for p in sample_rational_points(spec.source_dimension, 20, unit=True):
        assert sq(compactified_map_eval(spec, p)) == 1
    with pytest.raises(DomainError):
        compactified_map_eval(spec, (0,) * spec.source_dimension)
    with pytest.raises(DomainError):
        compactified_map_eval(spec, (1, 0))


def test_top_cell_inverse_round_trip():
    """The inverse is a right inverse away from the pole."""
    spec = QuadraticMapSpec.build(7)
    rng = np.random.default_rng(3)
    for _ in range(50):
        q = rng.normal(size=spec.n + 2)
        q /= np.linalg.norm(q)
        u, y = q[:-1], float(q[-1])
        if y < -0.99:
            continue
        v, xs = top_cell_inverse(spec, u, y)
        back = np.array(quadratic_map_eval(spec, list(v), list(xs)), dtype=float)
        assert np.max(np.abs(back - q)) < 1e-9


def test_top_cell_inverse_errors():
    """The pole and off-sphere points are rejected."""
    spec = QuadraticMapSpec.build(1)
    with pytest.raises(PoleSingularityError):
        top_cell_inverse(spec, np.zeros(2), -1.0)
    with pytest.raises(DomainError):
        top_cell_inverse(spec, np.ones(2), 0.0)
    with pytest.raises(DomainError):
        top_cell_inverse(spec, np.zeros(3), 1.0)


def test_export_family(tmp_path):
    """Families are written as integer grids."""
    buf = io.StringIO()
    export_family(hurwitz_radon_family(2), buf)
    assert buf.getvalue() == "# m=2 k=1\n0 -1\n1 0\n"
    path = tmp_path / "f4.txt"
    export_family(hurwitz_radon_family(4), path)
    text = path.read_text()
    assert text.startswith("# m=4 k=3\n")
    assert text.count("\n\n") == 2


def test_sample_rational_points():
    """Samples are seeded, nonzero and optionally on the unit sphere."""
    a = sample_rational_points(5, 10, seed=1)
    assert a == sample_rational_points(5, 10, seed=1)
    assert all(any(p) for p in a)
    assert all(sq(p) == 1 for p in sample_rational_points(4, 10, unit=True))
    with pytest.raises(DomainError):
        sample_rational_points(0, 3)
