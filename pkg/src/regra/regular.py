"""Regularity of subspaces and the derived families.

A subspace is regular when its radical (the intersection with its own
perpendicular) is trivial.  `rad_oracle` decides this from the metric
report and is the ground truth; `criterion` decides it through the
cheaper case-split routes (point / affine line / affine plane / general),
and for general affine subspaces runs two redundant routes and insists
they agree, so drift shows up as an error rather than a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadDimension, CriterionMismatch, SymplecticGeometry
from .forms import gram, metric_report, radical_dim
from .linalg import SubspaceBasis, contains_sub, contains_vec
from .space import Geometry, point_basis


def _require_pseudo(geom: Geometry) -> None:
    if geom.symplectic:
        raise SymplecticGeometry("no point of this geometry is regular")


def rad_oracle(geom: Geometry, A: SubspaceBasis) -> bool:
    """Ground truth: the radical of A is trivial."""
    _require_pseudo(geom)
    return metric_report(geom, A).rdim == 0


def form_value(geom: Geometry, x, y) -> int:
    from .forms import eval_form

    return eval_form(geom.gf, geom.form, x, y)


def criterion(geom: Geometry, A: SubspaceBasis) -> bool:
    """Case-split regularity test; must agree with `rad_oracle` everywhere.

    Points: off the selfconjugate hyperplane.  Affine lines: not inside
    the perpendicular of their improper point.  Affine planes: horizon
    line regular in the induced symplectic structure.  Subspaces inside
    H: nonsingular Gram matrix.  Other affine subspaces: the one-point
    test on hrd, cross-checked against the parity route through the
    horizon radical.
    """
    _require_pseudo(geom)
    gf = geom.gf
    k = A.dim
    if k == 0:
        return True
    if k == 1:
        return geom.is_affine_point(A.rows[0])
    inside = geom.in_horizon(A)
    if inside:
        return radical_dim(gf, geom.form, A) == 0
    if k == 2:
        # affine line: regular iff not inside the perpendicular of its
        # improper point
        q = geom.horizon_of(A)
        return any(form_value(geom, r, q.rows[0]) for r in A.rows)
    if k == 3:
        # affine plane: regular iff its horizon line has nonzero Gram
        horizon = geom.horizon_of(A)
        m1, m2 = horizon.rows
        return form_value(geom, m1, m2) != 0
    # general affine subspace: hrd-point route
    rep = metric_report(geom, A)
    route_hrd = rep.hrd is not None and rep.hrd.dim == 1
    # parity route through the radical of the horizon
    horizon = rep.horizon
    hrad = radical_dim(gf, geom.form, horizon)
    if k % 2:
        route_parity = hrad == 0
    else:
        if hrad != 1:
            route_parity = False
        else:
            p = _horizon_radical_point(geom, horizon)
            route_parity = not contains_sub(gf, geom.perp_point(p), A)
    if route_hrd != route_parity:
        raise CriterionMismatch(
            f"hrd route {route_hrd} vs parity route {route_parity} on {A}")
    return route_hrd


def _horizon_radical_point(geom: Geometry, horizon: SubspaceBasis):
    from .forms import perp_constraints
    from .linalg import meet_with_constraints

    rad = meet_with_constraints(
        geom.gf, horizon, perp_constraints(geom.gf, geom.form, horizon))
    assert rad.dim == 1
    return rad.rows[0]


@dataclass(frozen=True)
class RegularityClass:
    """Classification of a subspace by the shape of its radical."""

    tag: str  # regular | rad_point | rad_line | totally_isotropic
    rad: SubspaceBasis


def classify(geom: Geometry, A: SubspaceBasis) -> RegularityClass:
    rep = metric_report(geom, A)
    if rep.rdim == 0:
        tag = "regular"
    elif rep.rdim == A.dim:
        tag = "totally_isotropic"
    elif rep.rdim == 1:
        tag = "rad_point"
    elif rep.rdim == 2:
        tag = "rad_line"
    else:
        tag = f"rad_{rep.rdim}"
    return RegularityClass(tag, rep.rad)


PLANE_KINDS = (
    "affine_regular",
    "affine_rad_point",
    "affine_rad_line",
    "in_h_rad_point",
    "in_h_rad_line",
    "in_h_totally_isotropic",
)


@dataclass(frozen=True)
class PlaneProfile:
    """Shape of a plane: where its radical sits and, when the nonregular
    lines on it form a pencil, the vertex of that pencil."""

    kind: str
    vertex: tuple | None
    hrd: SubspaceBasis | None
    rdim: int


def plane_profile(geom: Geometry, A: SubspaceBasis) -> PlaneProfile:
    _require_pseudo(geom)
    if A.dim != 3:
        raise BadDimension("plane profile needs a 3-dimensional subspace")
    rep = metric_report(geom, A)
    if rep.hrd is not None:
        # affine plane
        if rep.rdim == 0:
            # vertex is the hrd point, an affine point of A
            vertex = rep.hrd.rows[0]
            return PlaneProfile("affine_regular", vertex, rep.hrd, 0)
        if rep.rdim == 1:
            return PlaneProfile("affine_rad_point", rep.rad.rows[0], rep.hrd, 1)
        return PlaneProfile("affine_rad_line", None, rep.hrd, rep.rdim)
    if rep.rdim == 1:
        return PlaneProfile("in_h_rad_point", rep.rad.rows[0], None, 1)
    if rep.rdim == 2:
        return PlaneProfile("in_h_rad_line", None, None, 2)
    return PlaneProfile("in_h_totally_isotropic", None, None, rep.rdim)


def nonregular_lines_on(geom: Geometry, A: SubspaceBasis) -> tuple:
    """All nonregular lines contained in the plane A (oracle-backed)."""
    from .linalg import all_rref_matrices, combine, rref

    gf = geom.gf
    out = []
    seen = set()
    for coeffs in all_rref_matrices(gf, 2, A.dim):
        rows = [combine(gf, c, A.rows) for c in coeffs]
        L = rref(gf, rows, geom.n)
        if L in seen:
            continue
        seen.add(L)
        if not rad_oracle(geom, L):
            out.append(L)
    return tuple(sorted(out))


def subspaces_within(geom: Geometry, S: SubspaceBasis, j: int) -> tuple:
    """All j-dimensional subspaces of S, canonical order."""
    from .linalg import all_rref_matrices, combine, rref

    if not 0 <= j <= S.dim:
        raise BadDimension(f"need 0 <= j <= dim, got {j}")
    gf = geom.gf
    out = {rref(gf, [combine(gf, c, S.rows) for c in coeffs], geom.n)
           for coeffs in all_rref_matrices(gf, j, S.dim)}
    return tuple(sorted(out))


@dataclass(frozen=True)
class Families:
    """The regularity families at one dimension k: all regular subspaces
    R, the affine ones A (not inside H), the ones avoiding the pole
    A_circ, and at k=2 and k=3 the derived line/plane families."""

    k: int
    R: tuple
    A: tuple
    A_circ: tuple
    L_r: tuple | None = None       # k=2: affine regular lines avoiding b
    L_star: tuple | None = None    # k=2: totally isotropic lines inside H
    P0: tuple | None = None        # k=3: affine planes with trivial radical
    P1: tuple | None = None        # k=3: affine planes with a point radical
    P01: tuple | None = None


def families(geom: Geometry, k: int) -> Families:
    _require_pseudo(geom)
    if not 1 <= k <= geom.n:
        raise BadDimension(f"need 1 <= k <= {geom.n}, got {k}")
    if k in geom._families:
        return geom._families[k]
    gf = geom.gf
    R, Aff, Circ = [], [], []
    b = geom.b
    for S in geom.subspaces(k):
        if not criterion(geom, S):
            continue
        R.append(S)
        affine = not geom.in_horizon(S)
        if affine:
            Aff.append(S)
        if not contains_vec(gf, S, b):
            Circ.append(S)
    fam = Families(k, tuple(R), tuple(Aff), tuple(Circ))
    if k == 2:
        aset = set(fam.A)
        cset = set(fam.A_circ)
        L_r = tuple(sorted(aset & cset))
        L_star = tuple(sorted(
            L for L in geom.subspaces(2)
            if geom.in_horizon(L) and radical_dim(gf, geom.form, L) == L.dim))
        fam = Families(k, fam.R, fam.A, fam.A_circ, L_r=L_r, L_star=L_star)
    elif k == 3:
        P0, P1 = [], []
        for A in geom.subspaces(3):
            if geom.in_horizon(A):
                continue
            rd = metric_report(geom, A).rdim
            if rd == 0:
                P0.append(A)
            elif rd == 1:
                P1.append(A)
        P0, P1 = tuple(P0), tuple(P1)
        fam = Families(k, fam.R, fam.A, fam.A_circ,
                       P0=P0, P1=P1, P01=tuple(sorted(set(P0) | set(P1))))
    geom._families[k] = fam
    return fam
