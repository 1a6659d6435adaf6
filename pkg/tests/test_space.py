import itertools

import pytest

from regra.errors import BadDimension, BadFlag, DimensionMismatch, ZeroVector
from regra.gf import field
from regra.linalg import SubspaceBasis, gaussian_binomial, rref
from regra.space import (
    PencilSpec,
    normalize_point,
    pencil_elements,
    points_of_subspace,
    span_horizon,
    standard_geometry,
)

GF4 = field(2)
GF8 = field(3)


def test_normalize_point():
    assert normalize_point(GF4, (2, 2, 0)) == (1, 1, 0)
    assert normalize_point(GF4, (0, 0, 3)) == (0, 0, 1)
    assert normalize_point(GF4, (1, 0, 2)) == (1, 0, 2)
    with pytest.raises(ZeroVector):
        normalize_point(GF4, (0, 0, 0))


def test_scalar_multiples_normalize_identically():
    gf = GF8
    v = (0, 3, 5, 1)
    for c in gf.units():
        w = tuple(gf.mul(c, x) for x in v)
        assert normalize_point(gf, w) == normalize_point(gf, v)


@pytest.mark.parametrize("k,n,t,dims", [
    (2, 3, 1, (1, 2, 3)),
    (2, 4, 2, (1, 2, 3, 4)),
    (3, 3, 1, (1, 2, 3)),
    (3, 4, 2, (1, 2)),
])
def test_enumeration_counts(k, n, t, dims):
    geom = standard_geometry(k, n, t)
    for d in dims:
        subs = geom.subspaces(d)
        assert len(subs) == gaussian_binomial(n, d, geom.q)
        assert list(subs) == sorted(subs)
        assert len(set(subs)) == len(subs)


def test_known_counts():
    assert len(standard_geometry(2, 3, 1).subspaces(1)) == 21
    assert len(standard_geometry(2, 3, 1).subspaces(2)) == 21
    assert len(standard_geometry(2, 4, 2).subspaces(2)) == 357


def test_bad_dimension():
    geom = standard_geometry(2, 3, 1)
    with pytest.raises(BadDimension):
        geom.subspaces(0)
    with pytest.raises(BadDimension):
        geom.subspaces(4)


def test_points_of_subspace_count_and_normalization():
    geom = standard_geometry(2, 4, 2)
    for S in geom.subspaces(2)[::23]:
        pts = points_of_subspace(GF4, S)
        assert len(pts) == geom.q + 1
        for p in pts:
            assert normalize_point(GF4, p) == p


def test_every_line_meets_horizon_in_one_point_or_lies_inside():
    for geom in (standard_geometry(2, 3, 1), standard_geometry(2, 4, 2)):
        for L in geom.subspaces(2):
            h = geom.horizon_of(L)
            assert h.dim in (1, 2)
            assert (h.dim == 2) == geom.in_horizon(L)


def test_span_horizon():
    geom = standard_geometry(2, 3, 1)
    b = geom.b
    span, horizon = span_horizon(geom, [rref(GF4, [b]), rref(GF4, [(0, 1, 0)])])
    assert span.dim == 2
    assert horizon.rows == ((0, 1, 0),)
    full, h2 = span_horizon(geom, [geom.H, rref(GF4, [b])])
    assert full.dim == 3 and h2 == geom.H
    pt = rref(GF4, [(1, 1, 1)])
    same, hh = span_horizon(geom, [pt, pt])
    assert same == pt and hh.dim == 0
    with pytest.raises(DimensionMismatch):
        span_horizon(geom, [])


def test_pencils_have_q_plus_one_elements():
    for k, n, t in ((2, 3, 1), (3, 3, 1)):
        geom = standard_geometry(k, n, t)
        hub = SubspaceBasis(n, ())
        bound = geom.subspaces(2)[5]
        els = pencil_elements(geom, PencilSpec(hub, bound))
        assert len(els) == geom.q + 1
        assert all(e.dim == 1 for e in els)


def test_pencil_flag_validation():
    geom = standard_geometry(2, 4, 2)
    hub = rref(GF4, [(1, 0, 0, 0)])
    bad_bound = rref(GF4, [(0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    with pytest.raises(BadFlag):
        pencil_elements(geom, PencilSpec(hub, bad_bound))  # hub not inside
    small = rref(GF4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    with pytest.raises(BadFlag):
        pencil_elements(geom, PencilSpec(hub, small))  # gap 1


def test_pencil_is_fiber_of_enumeration():
    geom = standard_geometry(2, 4, 2)
    from regra.linalg import contains_sub

    hub = rref(GF4, [(1, 0, 0, 0)])
    bound = rref(GF4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])
    els = set(pencil_elements(geom, PencilSpec(hub, bound)))
    direct = {L for L in geom.subspaces(2)
              if contains_sub(GF4, L, hub) and contains_sub(GF4, bound, L)}
    assert els == direct


def test_affine_and_horizon_split():
    geom = standard_geometry(3, 3, 1)
    pts = geom.points()
    aff = geom.affine_points()
    hor = geom.horizon_points()
    assert len(pts) == 73 and len(hor) == 9 and len(aff) == 64
    assert set(aff) | set(hor) == set(pts)


def test_lines_through_consistency():
    geom = standard_geometry(2, 3, 1)
    p = geom.points()[4]
    through = geom.lines_through(p)
    assert len(through) == geom.q + 1
    for L in through:
        assert p in geom.points_of(L)
