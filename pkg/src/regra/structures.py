"""Labeled incidence structures over the regularity families.

Carriers are kept in canonical sorted order.  A label is the canonical
algebraic encoding of the carrier object: a coordinate tuple for a point,
a tuple of reduced-echelon rows for a higher-dimensional subspace.  Two
structures are equal when they have the same point carrier and the same
family of block point-sets; block labels are metadata (they survive
dualization but are not part of equality, since a block is determined by
its point set in every structure built here).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadDimension,
    PartialMap,
    SymplecticGeometry,
    UnknownLabel,
)
from .linalg import SubspaceBasis, contains_sub, contains_vec, rref
from .regular import families
from .space import Geometry, point_basis


def label_of(S: SubspaceBasis):
    """Point label for dim 1, rows label otherwise."""
    return S.rows[0] if S.dim == 1 else S.rows


def basis_of(geom: Geometry, label) -> SubspaceBasis:
    if label and isinstance(label[0], int):
        return SubspaceBasis(geom.n, (tuple(label),))
    return SubspaceBasis(geom.n, tuple(tuple(r) for r in label))


@dataclass(frozen=True)
class IncidenceStructure:
    name: str
    points: tuple          # sorted labels
    blocks: tuple          # tuple of (label, frozenset of point labels)

    def point_set(self) -> frozenset:
        return frozenset(self.points)

    def block_sets(self) -> tuple:
        return tuple(pts for _, pts in self.blocks)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IncidenceStructure):
            return NotImplemented
        return (self.points == other.points
                and sorted(map(sorted, self.block_sets()))
                == sorted(map(sorted, other.block_sets())))

    def __hash__(self):
        return hash((self.points, frozenset(self.block_sets())))

    def degree(self, point) -> int:
        return sum(1 for _, pts in self.blocks if point in pts)


def _canonical_blocks(blocks) -> tuple:
    return tuple(sorted(blocks, key=lambda b: (sorted(b[1]), b[0])))


def make_structure(name: str, points, blocks) -> IncidenceStructure:
    return IncidenceStructure(name, tuple(sorted(points)),
                              _canonical_blocks(blocks))


STRUCTURE_NAMES = ("G1", "B1", "C1", "G2", "B2", "C2", "ProjG2")


def build(geom: Geometry, name: str) -> IncidenceStructure:
    """Materialize one of the named structures.

    G1: regular points vs regular lines.      B1: G1 minus isolated.
    C1: B1 with blocks cut to the lines avoiding the pole.
    G2: regular lines vs regular planes.      B2: G2 minus isolated.
    C2: B2 with points cut to the affine lines avoiding the pole.
    ProjG2: all lines vs all planes.  Gk:<k> / Pk:<k>: the generic
    Grassmannian / pencil space over the regular subspaces at level k.
    """
    if geom.symplectic:
        raise SymplecticGeometry("structures are built over a pseudo-polarity")
    cached = geom._structures.get(name)
    if cached is not None:
        return cached
    got = _build(geom, name)
    geom._structures[name] = got
    return got


def _point_blocks(geom, name, point_subs, block_subs) -> IncidenceStructure:
    """Structure with 1-dimensional points: use the cached point lists of
    each block instead of generic containment."""
    labels = [label_of(S) for S in point_subs]
    carrier = set(labels)
    blocks = []
    for B in block_subs:
        pts = frozenset(p for p in geom.points_of(B) if p in carrier)
        blocks.append((label_of(B), pts))
    return make_structure(name, labels, blocks)


def _line_blocks(geom, name, line_subs, plane_subs) -> IncidenceStructure:
    from .regular import subspaces_within

    labels = [label_of(L) for L in line_subs]
    carrier = set(line_subs)
    blocks = []
    for A in plane_subs:
        pts = frozenset(label_of(L) for L in subspaces_within(geom, A, 2)
                        if L in carrier)
        blocks.append((label_of(A), pts))
    return make_structure(name, labels, blocks)


def _build(geom: Geometry, name: str) -> IncidenceStructure:
    if name == "G1":
        f1, f2 = families(geom, 1), families(geom, 2)
        return _point_blocks(geom, name, f1.R, f2.R)
    if name == "B1":
        f1, f2 = families(geom, 1), families(geom, 2)
        return _point_blocks(geom, name, f1.A_circ, f2.A)
    if name == "C1":
        f1, f2 = families(geom, 1), families(geom, 2)
        return _point_blocks(geom, name, f1.A_circ, f2.L_r)
    if name in ("G2", "B2", "C2"):
        if geom.n < 4:
            raise BadDimension("need n >= 4 for line/plane structures")
        f2, f3 = families(geom, 2), families(geom, 3)
        points = {"G2": f2.R, "B2": f2.A_circ, "C2": f2.L_r}[name]
        return _line_blocks(geom, name, points, f3.R)
    if name == "ProjG2":
        if geom.n < 4:
            raise BadDimension("need n >= 4 for line/plane structures")
        return _line_blocks(geom, name, geom.subspaces(2), geom.subspaces(3))
    if name.startswith("Gk:"):
        k = int(name.split(":")[1])
        if not 1 <= k < geom.n:
            raise BadDimension(f"need 1 <= k < n for Gk, got {k}")
        fk, fk1 = families(geom, k), families(geom, k + 1)
        if k == 1:
            return _point_blocks(geom, name, fk.R, fk1.R)
        labels = [label_of(S) for S in fk.R]
        carrier = set(fk.R)
        blocks = []
        for B in fk1.R:
            from .regular import subspaces_within

            pts = frozenset(label_of(S) for S in subspaces_within(geom, B, k)
                            if S in carrier)
            blocks.append((label_of(B), pts))
        return make_structure(name, labels, blocks)
    if name.startswith("Pk:"):
        return _build_pencil_space(geom, name)
    raise UnknownLabel(f"unknown structure name {name!r}")


def _build_pencil_space(geom: Geometry, name: str) -> IncidenceStructure:
    """Points: regular k-subspaces.  Blocks: nonempty regular pencils,
    one per flag of regular subspaces at dimensions (k-1, k+1)."""
    from .regular import subspaces_within

    k = int(name.split(":")[1])
    if not 1 <= k < geom.n:
        raise BadDimension(f"need 1 <= k < n for Pk, got {k}")
    fk = families(geom, k)
    carrier = set(fk.R)
    regular_hubs = set(families(geom, k - 1).R) if k > 1 else None
    blocks = []
    for B in families(geom, k + 1).R:
        subs_k = [S for S in subspaces_within(geom, B, k) if S in carrier]
        if k == 1:
            hub_list = [SubspaceBasis(geom.n, ())]
        else:
            hub_list = [H for H in subspaces_within(geom, B, k - 1)
                        if H in regular_hubs]
        for H in hub_list:
            pts = frozenset(label_of(S) for S in subs_k
                            if contains_sub(geom.gf, S, H))
            if pts:
                blocks.append(((H.rows, label_of(B)), pts))
    return make_structure(name, [label_of(S) for S in fk.R], blocks)


def isolated(S: IncidenceStructure):
    """(points on no block, blocks holding no point)."""
    covered = set()
    for _, pts in S.blocks:
        covered.update(pts)
    iso_points = tuple(p for p in S.points if p not in covered)
    iso_blocks = tuple(lab for lab, pts in S.blocks if not pts)
    return iso_points, iso_blocks


def drop_isolated(S: IncidenceStructure, name: str) -> IncidenceStructure:
    iso_p, iso_b = isolated(S)
    iso_p, iso_b = set(iso_p), set(iso_b)
    points = [p for p in S.points if p not in iso_p]
    blocks = [(lab, pts) for lab, pts in S.blocks if lab not in iso_b]
    return make_structure(name, points, blocks)


def perp_dual(geom: Geometry, S: IncidenceStructure) -> IncidenceStructure:
    """Apply the correlation U -> perp(U) to both carriers and reverse
    incidence; an involution on the structures built here."""
    point_perp = {p: label_of(geom.perp(basis_of(geom, p))) for p in S.points}
    block_perp = {lab: label_of(geom.perp(basis_of(geom, lab)))
                  for lab, _ in S.blocks}
    new_points = [block_perp[lab] for lab, _ in S.blocks]
    new_blocks = []
    for p in S.points:
        pts = frozenset(block_perp[lab] for lab, bpts in S.blocks if p in bpts)
        new_blocks.append((point_perp[p], pts))
    return make_structure(S.name + "^perp", new_points, new_blocks)


@dataclass(frozen=True)
class Morphism:
    """Explicit label-to-label tables for points and blocks."""

    point_map: dict
    block_map: dict


def morphism_check(S: IncidenceStructure, T: IncidenceStructure,
                   m: Morphism) -> bool:
    """True iff m is a bijective pair preserving and reflecting incidence."""
    for p in S.points:
        if p not in m.point_map:
            raise PartialMap(f"point {p!r} unmapped")
    block_labels = [lab for lab, _ in S.blocks]
    for lab in block_labels:
        if lab not in m.block_map:
            raise PartialMap(f"block {lab!r} unmapped")
    imgs_p = [m.point_map[p] for p in S.points]
    imgs_b = [m.block_map[lab] for lab in block_labels]
    if sorted(imgs_p) != sorted(T.points):
        return False
    t_blocks = {lab: pts for lab, pts in T.blocks}
    if sorted(imgs_b) != sorted(t_blocks):
        return False
    for lab, pts in S.blocks:
        img = t_blocks[m.block_map[lab]]
        for p in S.points:
            if (p in pts) != (m.point_map[p] in img):
                return False
    return True
