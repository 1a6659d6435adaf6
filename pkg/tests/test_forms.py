import itertools

import pytest

from regra.errors import DegenerateBase, ParityMismatch, ZeroParameter
from regra.forms import (
    FamilyEps,
    FamilyMuLambda,
    Type1,
    Type2,
    Type3,
    eval_form,
    gram,
    locus_pole,
    make_form,
    metric_report,
    make_form as _mk,
    perp,
    radical_dim,
    symplectic_base,
)
from regra.gf import field
from regra.linalg import SubspaceBasis, mat_rank, rref
from regra.space import Geometry, standard_geometry

GF4 = field(2)
GF8 = field(3)


def test_type1_matrix_n3():
    f = make_form(GF4, 3, Type1())
    assert f.matrix == ((1, 0, 0), (0, 0, 1), (0, 1, 0))


def test_type2_matrix_n4():
    f = make_form(GF4, 4, Type2())
    assert f.matrix == ((1, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))


def test_type3_matrix_n4():
    f = make_form(GF4, 4, Type3())
    assert f.matrix == ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))


def test_parity_errors():
    with pytest.raises(ParityMismatch):
        make_form(GF4, 4, Type1())
    with pytest.raises(ParityMismatch):
        make_form(GF4, 3, Type2())
    with pytest.raises(ParityMismatch):
        make_form(GF4, 5, Type3())


def test_family_eps_reduces_to_type1():
    f = make_form(GF4, 3, FamilyEps(1, symplectic_base(GF4, 2)))
    assert f.matrix == make_form(GF4, 3, Type1()).matrix


def test_family_mulambda_reduces_to_type2():
    f = make_form(GF4, 4, FamilyMuLambda(1, 1, symplectic_base(GF4, 2)))
    assert f.matrix == make_form(GF4, 4, Type2()).matrix


def test_family_parameter_validation():
    base = symplectic_base(GF4, 2)
    with pytest.raises(ZeroParameter):
        make_form(GF4, 3, FamilyEps(0, base))
    with pytest.raises(ZeroParameter):
        make_form(GF4, 4, FamilyMuLambda(0, 1, base))
    with pytest.raises(ZeroParameter):
        make_form(GF4, 4, FamilyMuLambda(1, 0, base))
    singular = ((0, 0), (0, 0))
    with pytest.raises(DegenerateBase):
        make_form(GF4, 3, FamilyEps(1, singular))


def test_family_forms_nonsingular_all_parameters():
    base = symplectic_base(GF4, 2)
    for eps in GF4.units():
        assert mat_rank(GF4, make_form(GF4, 3, FamilyEps(eps, base)).matrix) == 3
    for mu in GF4.units():
        for lam in GF4.units():
            M = make_form(GF4, 4, FamilyMuLambda(mu, lam, base)).matrix
            assert mat_rank(GF4, M) == 4


def test_eval_type1():
    f = make_form(GF4, 3, Type1())
    e0, e1, e2 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    assert eval_form(GF4, f, e0, e0) == 1
    assert eval_form(GF4, f, e1, e2) == 1
    assert eval_form(GF4, f, e1, e1) == 0


def test_eval_type2_pole_row():
    f = make_form(GF4, 4, Type2())
    e1 = (0, 1, 0, 0)
    for y in itertools.product(range(4), repeat=4):
        assert eval_form(GF4, f, e1, y) == y[0]


def test_eval_bilinear_and_symmetric():
    f = make_form(GF8, 3, Type1())
    vecs = [(1, 2, 3), (0, 1, 5), (4, 4, 1)]
    for x in vecs:
        for y in vecs:
            assert eval_form(GF8, f, x, y) == eval_form(GF8, f, y, x)
    # additivity in the first slot
    x1, x2, y = vecs
    s = tuple(a ^ b for a, b in zip(x1, x2))
    assert eval_form(GF8, f, s, y) == eval_form(GF8, f, x1, y) ^ eval_form(GF8, f, x2, y)


def test_perp_basics():
    f = make_form(GF4, 3, Type1())
    full = rref(GF4, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert perp(GF4, f, full).dim == 0
    b = rref(GF4, [(1, 0, 0)])
    H = perp(GF4, f, b)
    assert H.rows == ((0, 1, 0), (0, 0, 1))
    e1 = rref(GF4, [(0, 1, 0)])
    assert perp(GF4, f, e1).rows == ((1, 0, 0), (0, 1, 0))


def test_perp_dimension_and_involution():
    geom = standard_geometry(2, 4, 2)
    for k in (1, 2, 3):
        for S in geom.subspaces(k)[::17]:
            P = geom.perp(S)
            assert P.dim == geom.n - S.dim
            assert geom.perp(P) == S


def test_locus_pole_types():
    f1 = make_form(GF4, 3, Type1())
    H, b, sympl = locus_pole(GF4, f1)
    assert not sympl and b == (1, 0, 0)
    assert H.rows == ((0, 1, 0), (0, 0, 1))
    f2 = make_form(GF4, 4, Type2())
    H, b, sympl = locus_pole(GF4, f2)
    assert not sympl and b == (0, 1, 0, 0)
    assert all(r[0] == 0 for r in H.rows)
    f3 = make_form(GF4, 4, Type3())
    H, b, sympl = locus_pole(GF4, f3)
    assert sympl and H is None and b is None


def test_diagonal_value_is_square_of_first_coordinate():
    for geom in (standard_geometry(2, 3, 1), standard_geometry(2, 4, 2)):
        for v in itertools.product(range(4), repeat=geom.n):
            if not any(v):
                continue
            val = eval_form(geom.gf, geom.form, v, v)
            assert val == geom.gf.mul(v[0], v[0])


def test_metric_report_full_space_type1():
    geom = standard_geometry(2, 3, 1)
    full = rref(GF4, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    rep = metric_report(geom, full)
    assert rep.horizon == geom.H
    assert rep.rdim == 0
    assert rep.hrd.rows == ((1, 0, 0),)


def test_metric_report_line_through_pole_type1():
    geom = standard_geometry(2, 3, 1)
    A = rref(GF4, [(1, 0, 0), (0, 1, 0)])
    rep = metric_report(geom, A)
    assert rep.rad.rows == ((0, 1, 0),)
    assert rep.rdim == 1
    assert rep.hrd == A


def test_metric_report_horizon_type2():
    geom = standard_geometry(2, 4, 2)
    rep = metric_report(geom, geom.H)
    assert rep.rad.rows == ((0, 1, 0, 0),)
    assert rep.hrd is None  # inside H


def test_rad_inside_horizon_invariant():
    # the radical always consists of selfconjugate points
    geom = standard_geometry(2, 4, 2)
    for k in (1, 2, 3):
        for S in geom.subspaces(k)[::13]:
            rep = metric_report(geom, S)
            assert all(not geom.is_affine_point(r) for r in rep.rad.rows)
            for r in rep.horizon.rows:
                assert not geom.is_affine_point(r)


def test_hrd_at_least_a_point_for_affine_subspaces():
    geom = standard_geometry(2, 3, 1)
    for k in (1, 2, 3):
        for S in geom.subspaces(k):
            if geom.in_horizon(S):
                continue
            rep = metric_report(geom, S)
            assert rep.hrd is not None and rep.hrd.dim >= 1


def _agree_on(geom1, geom2, pairs):
    for x, y in pairs:
        v1 = eval_form(geom1.gf, geom1.form, x, y) == 0
        v2 = eval_form(geom2.gf, geom2.form, x, y) == 0
        if v1 != v2:
            return False
    return True


def test_eps_family_conjugacy_agreement_on_horizon():
    # with the border scalar varying, perpendicularity is unchanged on
    # H x H and on (off-H) x H; it changes on (off-H) x (off-H)
    base = symplectic_base(GF4, 2)
    geoms = [Geometry(GF4, 3, FamilyEps(e, base)) for e in GF4.units()]
    pts = list(itertools.product(range(4), repeat=3))[1:]
    on_h = [p for p in pts if p[0] == 0]
    off_h = [p for p in pts if p[0] != 0]
    for g1, g2 in itertools.combinations(geoms, 2):
        assert _agree_on(g1, g2, itertools.product(on_h, on_h))
        assert _agree_on(g1, g2, itertools.product(off_h, on_h))


def test_mulambda_family_conjugacy_agreement_fixed_lambda():
    base = symplectic_base(GF4, 2)
    lam = 1
    geoms = [Geometry(GF4, 4, FamilyMuLambda(m, lam, base)) for m in GF4.units()]
    pts = list(itertools.product(range(4), repeat=4))[1:]
    on_h = [p for p in pts if p[0] == 0]
    off_h = [p for p in pts if p[0] != 0]
    for g1, g2 in itertools.combinations(geoms, 2):
        assert _agree_on(g1, g2, itertools.product(on_h, on_h))
        assert _agree_on(g1, g2, itertools.product(on_h, off_h))
    # on H x H the relation is even independent of lambda
    g_other_lam = [Geometry(GF4, 4, FamilyMuLambda(1, lam2, base))
                   for lam2 in (2, 3)]
    for g2 in g_other_lam:
        assert _agree_on(geoms[0], g2, itertools.product(on_h, on_h))


def test_gram_radical_dim_matches_report():
    geom = standard_geometry(2, 4, 2)
    for k in (1, 2, 3):
        for S in geom.subspaces(k)[::11]:
            assert radical_dim(GF4, geom.form, S) == metric_report(geom, S).rdim
