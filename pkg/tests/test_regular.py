import pytest

from regra.errors import BadDimension, SymplecticGeometry
from regra.gf import field
from regra.linalg import rref
from regra.regular import (
    classify,
    criterion,
    families,
    nonregular_lines_on,
    plane_profile,
    rad_oracle,
    subspaces_within,
)
from regra.space import standard_geometry

GF4 = field(2)


def geom431():
    return standard_geometry(2, 3, 1)


def geom442():
    return standard_geometry(2, 4, 2)


def test_rad_oracle_examples():
    g = geom431()
    assert rad_oracle(g, g.H)  # pole off H, so H has trivial radical
    full = rref(GF4, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert rad_oracle(g, full)
    g2 = geom442()
    assert not rad_oracle(g2, g2.H)


def test_symplectic_geometry_raises():
    g3 = standard_geometry(2, 4, 3)
    with pytest.raises(SymplecticGeometry):
        rad_oracle(g3, g3.subspaces(1)[0])
    with pytest.raises(SymplecticGeometry):
        families(g3, 1)


@pytest.mark.parametrize("k,n,t", [(2, 3, 1), (2, 4, 2), (3, 3, 1)])
def test_criterion_equals_oracle(k, n, t):
    geom = standard_geometry(k, n, t)
    for d in range(1, min(geom.n, 3) + 1):
        for S in geom.subspaces(d):
            assert criterion(geom, S) == rad_oracle(geom, S), S


def test_criterion_general_route_full_space():
    geom = geom442()
    full = rref(GF4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)])
    assert criterion(geom, full) == rad_oracle(geom, full) is True
    for S in geom.subspaces(4):
        assert criterion(geom, S) == rad_oracle(geom, S)


def test_lines_through_pole_type1_not_regular():
    g = geom431()
    b = g.b
    for L in g.lines_through(b):
        if g.in_horizon(L):
            continue
        assert not criterion(g, L)


def test_direction_pole_lines_type2_regular():
    g = geom442()
    b = g.b
    for L in g.lines_through(b):
        if g.in_horizon(L):
            assert not criterion(g, L)  # no line on H through b is regular
        else:
            assert criterion(g, L)  # affine lines with direction b


def test_family_cardinalities_type1_n3():
    g = geom431()
    f1 = families(g, 1)
    assert len(f1.R) == 16
    assert len(f1.A_circ) == 15
    f2 = families(g, 2)
    assert len(f2.R) == 16
    assert len(f2.A) == 15
    assert len(f2.A_circ) == 16
    assert len(f2.L_r) == 15
    # oracle cross-check of every membership decision
    reg = {L for L in g.subspaces(2) if rad_oracle(g, L)}
    assert set(f2.R) == reg


def test_family_cardinalities_type2_n4():
    g = geom442()
    assert len(families(g, 1).R) == 64
    f2 = families(g, 2)
    assert len(f2.R) == 272
    assert len(f2.A) == 256
    assert len(f2.A_circ) == 256
    assert len(f2.L_r) == 240
    f3 = families(g, 3)
    assert len(f3.R) == 64  # dual to the 64 regular points


def test_l_star_members_are_isotropic_lines_in_h():
    g = geom442()
    f2 = families(g, 2)
    for L in f2.L_star:
        assert g.in_horizon(L)
        assert not rad_oracle(g, L)
    # inside H, nonregular = totally isotropic
    in_h_nonreg = {L for L in g.subspaces(2)
                   if g.in_horizon(L) and not rad_oracle(g, L)}
    assert set(f2.L_star) == in_h_nonreg


def test_plane_profile_affine_regular():
    g = geom442()
    f3 = families(g, 3)
    A = f3.R[0]
    prof = plane_profile(g, A)
    assert prof.kind == "affine_regular"
    assert g.is_affine_point(prof.vertex)
    # nonregular lines on A are exactly the pencil through the vertex
    nonreg = set(nonregular_lines_on(g, A))
    from regra.linalg import contains_vec

    pencil = {L for L in subspaces_within(g, A, 2)
              if contains_vec(GF4, L, prof.vertex)}
    assert nonreg == pencil
    assert len(pencil) == g.q + 1


def test_plane_profile_in_h_cases():
    g = standard_geometry(2, 4, 2)
    from regra.linalg import contains_vec

    seen = set()
    for A in g.subspaces(3):
        if not g.in_horizon(A):
            continue
        prof = plane_profile(g, A)
        seen.add(prof.kind)
        nonreg = set(nonregular_lines_on(g, A))
        lines = set(subspaces_within(g, A, 2))
        if prof.kind == "in_h_rad_point":
            pencil = {L for L in lines if contains_vec(GF4, L, prof.vertex)}
            assert nonreg == pencil
        elif prof.kind == "in_h_rad_line":
            assert nonreg == lines
        elif prof.kind == "in_h_totally_isotropic":
            assert nonreg == lines
    assert "in_h_rad_point" in seen


def test_plane_profile_rdim1_vertex_improper():
    g = geom442()
    from regra.linalg import contains_vec

    found = False
    for A in families(g, 3).P1:
        prof = plane_profile(g, A)
        assert prof.kind == "affine_rad_point"
        assert not g.is_affine_point(prof.vertex)
        nonreg = set(nonregular_lines_on(g, A))
        pencil = {L for L in subspaces_within(g, A, 2)
                  if contains_vec(GF4, L, prof.vertex)}
        assert nonreg == pencil
        found = True
    assert found


def test_plane_profile_requires_dim3():
    g = geom431()
    with pytest.raises(BadDimension):
        plane_profile(g, g.subspaces(2)[0])


def test_classify_tags():
    g = geom442()
    assert classify(g, g.H).tag == "rad_point"
    f2 = families(g, 2)
    assert classify(g, f2.R[0]).tag == "regular"
    assert classify(g, f2.L_star[0]).tag == "totally_isotropic"


def test_parity_note_for_regular_affine_subspaces():
    # even-dimensional regular affine subspaces have hrd on the horizon,
    # odd-dimensional ones off it
    for geom in (geom431(), geom442()):
        for d in range(1, geom.n + 1):
            for S in geom.subspaces(d)[::7]:
                if geom.in_horizon(S) or not rad_oracle(geom, S):
                    continue
                rep = geom.report(S)
                assert rep.hrd.dim == 1
                p = rep.hrd.rows[0]
                if d % 2 == 0:
                    assert not geom.is_affine_point(p)
                else:
                    assert geom.is_affine_point(p)
