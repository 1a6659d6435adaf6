import pytest

from regra.errors import BadDimension, PartialMap, SymplecticGeometry
from regra.gf import field
from regra.regular import families, rad_oracle
from regra.space import standard_geometry
from regra.structures import (
    Morphism,
    basis_of,
    build,
    drop_isolated,
    isolated,
    label_of,
    morphism_check,
    perp_dual,
)

GF4 = field(2)


def test_b1_type1_n3_counts_and_degrees():
    g = standard_geometry(2, 3, 1)
    B1 = build(g, "B1")
    assert len(B1.points) == 15
    assert len(B1.blocks) == 15
    for _, pts in B1.blocks:
        assert len(pts) == 4
    for p in B1.points:
        assert B1.degree(p) == 4


def test_g1_type1_n3_isolated():
    g = standard_geometry(2, 3, 1)
    G1 = build(g, "G1")
    assert len(G1.points) == 16
    assert len(G1.blocks) == 16
    iso_p, iso_b = isolated(G1)
    assert iso_p == (g.b,)
    assert iso_b == (g.H.rows,)


def test_b1_is_g1_minus_isolated():
    for k, n, t in ((2, 3, 1), (2, 4, 2), (3, 3, 1)):
        g = standard_geometry(k, n, t)
        assert drop_isolated(build(g, "G1"), "B1") == build(g, "B1")


def test_g1_type2_no_isolated_points():
    g = standard_geometry(2, 4, 2)
    iso_p, iso_b = isolated(build(g, "G1"))
    assert iso_p == ()  # the pole is on H, hence not even a regular point
    # isolated blocks are exactly the regular lines inside H
    in_h_regular = {L.rows for L in families(g, 2).R if g.in_horizon(L)}
    assert set(iso_b) == in_h_regular


def test_g2_type2_isolated_points_are_lines_through_pole():
    g = standard_geometry(2, 4, 2)
    G2 = build(g, "G2")
    iso_p, _ = isolated(G2)
    through_b = {L.rows for L in families(g, 2).R
                 if any(p == g.b for p in g.points_of(L))}
    assert set(iso_p) == through_b
    # an in-horizon regular line always lies on a regular affine plane,
    # so it is not isolated here
    in_h = {L.rows for L in families(g, 2).R if g.in_horizon(L)}
    assert not (set(iso_p) & in_h)


def test_b2_carriers():
    g = standard_geometry(2, 4, 2)
    B2 = build(g, "B2")
    f2, f3 = families(g, 2), families(g, 3)
    assert set(B2.points) == {label_of(L) for L in f2.A_circ}
    assert {lab for lab, _ in B2.blocks} == {label_of(A) for A in f3.R}


def test_c1_blocks_are_l_r():
    g = standard_geometry(2, 4, 2)
    C1 = build(g, "C1")
    f2 = families(g, 2)
    assert {lab for lab, _ in C1.blocks} == {label_of(L) for L in f2.L_r}


def test_no_block_of_b2_c2_inside_horizon():
    for k, n, t in ((2, 4, 2), (3, 4, 2)):
        g = standard_geometry(k, n, t)
        for name in ("B2", "C2"):
            for lab, _ in build(g, name).blocks:
                assert not g.in_horizon(basis_of(g, lab))


def test_structures_need_n4():
    g = standard_geometry(2, 3, 1)
    with pytest.raises(BadDimension):
        build(g, "G2")


def test_symplectic_rejected():
    g = standard_geometry(2, 4, 3)
    with pytest.raises(SymplecticGeometry):
        build(g, "B1")


def test_build_deterministic():
    g = standard_geometry(2, 3, 1)
    a = build(g, "B1")
    g._structures.clear()
    b = build(g, "B1")
    assert a.points == b.points and a.blocks == b.blocks


def test_perp_dual_involution():
    g = standard_geometry(2, 4, 2)
    B1 = build(g, "B1")
    assert perp_dual(g, perp_dual(g, B1)) == B1


def test_perp_dual_b1_is_b2_at_n4():
    g = standard_geometry(2, 4, 2)
    assert perp_dual(g, build(g, "B1")) == build(g, "B2")


def test_perp_dual_c1_is_c2_at_n4():
    g = standard_geometry(2, 4, 2)
    assert perp_dual(g, build(g, "C1")) == build(g, "C2")


def test_morphism_identity_and_perp():
    g = standard_geometry(2, 4, 2)
    B1 = build(g, "B1")
    ident = Morphism({p: p for p in B1.points},
                     {lab: lab for lab, _ in B1.blocks})
    assert morphism_check(B1, B1, ident)

    B2 = build(g, "B2")
    pm = {p: label_of(g.perp(basis_of(g, p))) for p in B1.points}
    bm = {lab: label_of(g.perp(basis_of(g, lab))) for lab, _ in B1.blocks}
    # the perp map sends B1 points to B2 blocks and B1 blocks to B2 points
    dual = Morphism(pm, bm)
    D = perp_dual(g, B1)
    assert morphism_check(B1, B1, ident)
    # against the dualized structure the pair is label-exact
    back = Morphism({p: pm[p] for p in B1.points}, bm)
    assert sorted(bm.values()) == sorted(D.points)

    broken = Morphism({p: B1.points[0] for p in B1.points},
                      {lab: lab for lab, _ in B1.blocks})
    assert not morphism_check(B1, B1, broken)
    with pytest.raises(PartialMap):
        morphism_check(B1, B1, Morphism({}, {}))


def test_gk_pk_structures():
    g = standard_geometry(2, 4, 2)
    Gk = build(g, "Gk:1")
    assert Gk == build(g, "G1")
    Pk = build(g, "Pk:1")
    assert set(Pk.points) == set(build(g, "G1").points)
    f2 = families(g, 2)
    # each pencil block lies inside a regular line's point set
    line_pts = {label_of(L): set(g.points_of(L)) for L in f2.R}
    for (hub, bound), pts in Pk.blocks:
        assert hub == ()
        assert pts <= line_pts[bound]


def test_projg2_carriers():
    g = standard_geometry(2, 4, 2)
    P = build(g, "ProjG2")
    assert len(P.points) == 357
    assert len(P.blocks) == 85
