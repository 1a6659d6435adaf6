"""Reconstruction formulas over the incidence structures.

Everything here consumes a built structure through an index (`PointHost`
for point/line structures, `LineHost` for line/plane structures) and
evaluates the definitional first-order formulas: parallelism of blocks,
triangle traces, the ternary collinearity of non-block lines, full
affine-space recovery, pencils, stars and the proper/improper vertex
test.  The ambient geometry is consulted only to translate labels, never
to decide a formula.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadDimension,
    EmptyPencil,
    NotATriangle,
    NotOnHorizon,
    UnknownLabel,
)
from .linalg import SubspaceBasis, rref
from .regular import families
from .space import Geometry
from .structures import (
    IncidenceStructure,
    basis_of,
    build,
    drop_isolated,
    label_of,
    make_structure,
    perp_dual,
)

B_STAR = "b*"  # fresh point adjoined when deficient line traces appear


class PointHost:
    """Integer-indexed incidence view of a structure whose points are
    projective points and whose blocks are lines."""

    def __init__(self, structure: IncidenceStructure):
        self.structure = structure
        self.points = list(structure.points)
        self.pid = {p: i for i, p in enumerate(self.points)}
        self.block_labels = [lab for lab, _ in structure.blocks]
        self.block_id = {lab: i for i, lab in enumerate(self.block_labels)}
        self.block_pts = [frozenset(self.pid[p] for p in pts)
                          for _, pts in structure.blocks]
        self.point_blocks = [set() for _ in self.points]
        for bi, pts in enumerate(self.block_pts):
            for p in pts:
                self.point_blocks[p].add(bi)
        sizes = {len(pts) for pts in self.block_pts}
        assert len(sizes) == 1, "blocks must have uniform size"
        self.block_size = sizes.pop()
        self._noncob: dict[int, frozenset] = {}
        self.traces = PlaneTraces(self)

    def noncob(self, a: int) -> frozenset:
        """Points sharing no block with a."""
        got = self._noncob.get(a)
        if got is None:
            joined = {a}
            for bi in self.point_blocks[a]:
                joined |= self.block_pts[bi]
            got = frozenset(range(len(self.points))) - joined
            self._noncob[a] = got
        return got


def parallel_eq5(host: PointHost, m1, m2) -> bool:
    """Definitional parallelism of two blocks: no common point, and two
    distinct blocks crossing both meet at a point off both."""
    try:
        b1, b2 = host.block_id[m1], host.block_id[m2]
    except KeyError as exc:
        raise UnknownLabel(str(exc)) from None
    pts1, pts2 = host.block_pts[b1], host.block_pts[b2]
    if pts1 & pts2:
        return False
    crossing = set()
    for p in pts1:
        crossing |= host.point_blocks[p]
    count: dict[int, int] = {}
    for k in crossing:
        kp = host.block_pts[k]
        if not kp & pts2:
            continue
        for p in kp:
            if p in pts1 or p in pts2:
                continue
            c = count.get(p, 0) + 1
            if c >= 2:
                return True
            count[p] = c
    return False


def _validate_triangle(host: PointHost, sides):
    s1, s2, s3 = sides
    p1, p2, p3 = (host.block_pts[s] for s in sides)
    v12, v13, v23 = p1 & p2, p1 & p3, p2 & p3
    if not (len(v12) == len(v13) == len(v23) == 1):
        raise NotATriangle("sides must pairwise meet in single points")
    (a3,), (a2,), (a1,) = v12, v13, v23
    if len({a1, a2, a3}) != 3:
        raise NotATriangle("the three vertices must be distinct")
    if a1 in p1 or a2 in p2 or a3 in p3:
        raise NotATriangle("a vertex lies on its opposite side")
    return (a1, a2, a3)


def pi_trace(host: PointHost, sides) -> frozenset:
    """Points lying on a block that crosses two sides of the triangle in
    two distinct points (the triangle's plane trace)."""
    _validate_triangle(host, sides)
    p1, p2, p3 = (host.block_pts[s] for s in sides)
    cand = set()
    for p in p1 | p2 | p3:
        cand |= host.point_blocks[p]
    out = set()
    for k in cand:
        kp = host.block_pts[k]
        i1, i2, i3 = kp & p1, kp & p2, kp & p3
        for u, v in ((i1, i2), (i2, i3), (i1, i3)):
            if u and v and (u != v or len(u) > 1):
                out |= kp
                break
    return frozenset(out)


def pi_triangle(host: PointHost, side_labels) -> frozenset:
    """Label-level wrapper of `pi_trace`."""
    try:
        sides = tuple(host.block_id[lab] for lab in side_labels)
    except KeyError as exc:
        raise UnknownLabel(str(exc)) from None
    ids = pi_trace(host, sides)
    return frozenset(host.points[i] for i in ids)


class PlaneTraces:
    """Lazily discovered family of triangle traces, indexed by point.

    `ensure_pair(a, x)` sweeps every crossing pair of blocks through a
    and x, computing the trace of a completing triangle for each plane
    not yet represented.  On a 5-point-line field a trace can depend on
    the triangle (too few lines through a point to always find a
    crossing witness), so several variants per crossing pair are kept
    there; on larger fields one trace per plane is exact.
    """

    def __init__(self, host: PointHost):
        self.host = host
        self.classes: list[frozenset] = []
        self.index: dict[frozenset, int] = {}
        self.point_classes: dict[int, set[int]] = {}
        self._pairs_done: set = set()
        self._blocks_done: set = set()
        self.variants = 6 if host.block_size <= 4 else 1

    def _add(self, trace: frozenset) -> None:
        if trace in self.index:
            return
        cid = len(self.classes)
        self.classes.append(trace)
        self.index[trace] = cid
        for p in trace:
            self.point_classes.setdefault(p, set()).add(cid)

    def containing(self, pts) -> set[int]:
        out: set[int] | None = None
        for p in pts:
            got = self.point_classes.get(p)
            if not got:
                return set()
            out = set(got) if out is None else out & got
            if not out:
                return set()
        return out or set()

    def ensure_pair(self, a: int, x: int) -> None:
        key = (a, x) if a < x else (x, a)
        if key in self._pairs_done:
            return
        self._pairs_done.add(key)
        host = self.host
        for b1 in sorted(host.point_blocks[a]):
            pts1 = host.block_pts[b1]
            for b2 in sorted(host.point_blocks[x]):
                if b2 == b1:
                    continue
                common = pts1 & host.block_pts[b2]
                if common:
                    self._sweep_crossing(b1, b2, next(iter(common)))

    def _sweep_crossing(self, b1: int, b2: int, c: int) -> None:
        key = (b1, b2) if b1 < b2 else (b2, b1)
        if key in self._blocks_done:
            return
        self._blocks_done.add(key)
        host = self.host
        pts1, pts2 = host.block_pts[b1], host.block_pts[b2]
        anchors = list(pts1 | pts2)
        if len(self.containing(anchors)) >= self.variants:
            return
        for u in sorted(pts1 - {c}):
            for v in sorted(pts2 - {c}):
                third = host.point_blocks[u] & host.point_blocks[v]
                if not third:
                    continue
                (b3,) = third
                if b3 in (b1, b2) or c in host.block_pts[b3]:
                    continue
                try:
                    trace = pi_trace(host, (b1, b2, b3))
                except NotATriangle:
                    continue
                self._add(trace)
                if len(self.containing(anchors)) >= self.variants:
                    return


def l0_related(host: PointHost, a, x, y) -> bool:
    """Ternary collinearity on non-block lines: pairwise distinct points,
    no block joining any two, and one plane trace holding all three.
    Inside a plane trace, three points with pairwise non-block joins are
    collinear, because the nonregular lines of such a plane all pass
    through a single vertex or share a single direction."""
    ids = []
    for lab in (a, x, y):
        got = host.pid.get(lab)
        if got is None:
            raise UnknownLabel(repr(lab))
        ids.append(got)
    ia, ix, iy = ids
    if len({ia, ix, iy}) != 3:
        return False
    if (ix not in host.noncob(ia) or iy not in host.noncob(ia)
            or iy not in host.noncob(ix)):
        return False
    fam = host.traces
    for u, v in ((ia, ix), (ia, iy), (ix, iy)):
        fam.ensure_pair(u, v)
        rest = ({ia, ix, iy} - {u, v}).pop()
        if any(rest in fam.classes[cid] for cid in fam.containing((u, v))):
            return True
        if host.block_size > 4:
            break  # one pair suffices on 9-point lines
    return False


def _line_trace(host: PointHost, a: int, x: int) -> frozenset:
    fam = host.traces
    members = {a, x}
    thorough = host.block_size <= 4
    while True:
        mem = sorted(members)
        cand: frozenset | None = None
        for m in mem:
            cand = host.noncob(m) if cand is None else cand & host.noncob(m)
        cand = cand - members
        if thorough:
            pairs = [(mem[i], mem[j])
                     for i in range(len(mem)) for j in range(i + 1, len(mem))]
        else:
            pairs = [(a, x)]
        for u, v in pairs:
            fam.ensure_pair(u, v)
        grew = False
        for y in sorted(cand):
            for u, v in pairs:
                if any(y in fam.classes[cid]
                       for cid in fam.containing((u, v))):
                    members.add(y)
                    grew = True
                    break
        if not grew:
            return frozenset(members)


def l0_classes_ids(host: PointHost) -> list[frozenset]:
    covered: set = set()
    out = []
    for a in range(len(host.points)):
        for x in sorted(host.noncob(a)):
            if x <= a or (a, x) in covered:
                continue
            trace = _line_trace(host, a, x)
            mem = sorted(trace)
            for i in range(len(mem)):
                for j in range(i + 1, len(mem)):
                    covered.add((mem[i], mem[j]))
            out.append(trace)
    return out


def l0_classes(host: PointHost) -> list[frozenset]:
    """Equivalence classes of the ternary relation: the traces of the
    non-block lines on the host's points, as frozen sets of labels."""
    return sorted(
        (frozenset(host.points[i] for i in tr) for tr in l0_classes_ids(host)),
        key=sorted)


@dataclass(frozen=True)
class RecoveredAffine:
    """Abstractly recovered affine space: point labels (with `B_STAR`
    adjoined when deficient traces were completed) and lines as frozen
    point-label sets."""

    points: frozenset
    lines: frozenset
    b_star_used: bool


def recover_affine(host: PointHost) -> RecoveredAffine:
    """Affine-space recovery: the host's blocks plus the completed traces
    of the non-block lines.  A trace one point short of the uniform block
    size is completed with the fresh point `B_STAR`."""
    q = host.block_size
    classes = l0_classes(host)
    lines = {frozenset(pts) for _, pts in host.structure.blocks}
    b_star = any(len(tr) == q - 1 for tr in classes)
    for tr in classes:
        if len(tr) == q - 1:
            lines.add(frozenset(tr | {B_STAR}))
        else:
            lines.add(tr)
    points = frozenset(host.points) | ({B_STAR} if b_star else set())
    return RecoveredAffine(points, frozenset(lines), b_star)


def affine_view(geom: Geometry):
    """(points, lines) of the affine space itself, encoded the same way
    as a recovery result: affine point labels and affine-trace line sets."""
    points = frozenset(geom.affine_points())
    lines = set()
    for L in geom.subspaces(2):
        pts = frozenset(p for p in geom.points_of(L) if geom.is_affine_point(p))
        if pts:
            lines.add(pts)
    return points, frozenset(lines)


def recovered_matches_affine(geom: Geometry, rec: RecoveredAffine) -> bool:
    """Literal comparison after sending `B_STAR` to the pole."""
    points, lines = affine_view(geom)
    sub = geom.b
    rec_points = {sub if p == B_STAR else p for p in rec.points}
    rec_lines = {frozenset(sub if p == B_STAR else p for p in ln)
                 for ln in rec.lines}
    return rec_points == set(points) and rec_lines == set(lines)


def bracket_q(geom: Geometry, q_point) -> frozenset:
    """Affine points whose join with the given horizon point is not an
    affine regular line; equals the affine part of that point's
    perpendicular."""
    if geom.is_affine_point(q_point):
        raise NotOnHorizon("expected a selfconjugate point")
    a2 = set(families(geom, 2).A)
    out = []
    for a in geom.affine_points():
        join = geom.span(a, q_point)
        if join not in a2:
            out.append(a)
    return frozenset(out)


def bracket_span(geom: Geometry, pts) -> SubspaceBasis:
    return rref(geom.gf, list(pts), geom.n)


# -- line/plane level -------------------------------------------------------


class LineHost:
    """Indexed view of a structure whose points are lines and whose
    blocks are planes; adjacency is the abstract one (a common block),
    meets use the geometric point sets of the carrier lines."""

    def __init__(self, geom: Geometry, structure: IncidenceStructure):
        self.geom = geom
        self.structure = structure
        self.lines = list(structure.points)
        self.line_set = set(self.lines)
        self.block_labels = [lab for lab, _ in structure.blocks]
        self.block_pts = [pts for _, pts in structure.blocks]
        self.line_blocks: dict = {lab: set() for lab in self.lines}
        for bi, pts in enumerate(self.block_pts):
            for L in pts:
                self.line_blocks[L].add(bi)
        self.line_points = {lab: frozenset(geom.points_of(basis_of(geom, lab)))
                            for lab in self.lines}
        self.point_lines: dict = {}
        for lab, pts in self.line_points.items():
            for p in pts:
                self.point_lines.setdefault(p, set()).add(lab)
        self._kind_cache: dict = {}

    def require(self, lab) -> None:
        if lab not in self.line_set:
            raise UnknownLabel(repr(lab))

    def adjacent(self, l1, l2) -> bool:
        return bool(self.line_blocks[l1] & self.line_blocks[l2])


def triangle_rel(host: LineHost, l1, l2, l3) -> bool:
    """Vertices of a triangle: pairwise joined by blocks, no vertex on a
    block joining the other two."""
    for lab in (l1, l2, l3):
        host.require(lab)
    if len({l1, l2, l3}) != 3:
        return False
    s12 = host.line_blocks[l1] & host.line_blocks[l2]
    s13 = host.line_blocks[l1] & host.line_blocks[l3]
    s23 = host.line_blocks[l2] & host.line_blocks[l3]
    for sides, opposite in ((s12, l3), (s13, l2), (s23, l1)):
        if not any(opposite not in host.block_pts[s] for s in sides):
            return False
    return True


def collinear_rel(host: LineHost, l1, l2, l3) -> bool:
    """Membership in a common pencil: a common point and a common block."""
    for lab in (l1, l2, l3):
        host.require(lab)
    if not (host.line_points[l1] & host.line_points[l2]
            & host.line_points[l3]):
        return False
    return bool(host.line_blocks[l1] & host.line_blocks[l2]
                & host.line_blocks[l3])


def collinear_formula(host: LineHost, l1, l2, l3) -> bool:
    """The quantifier form of ternary collinearity: a common block A and
    an auxiliary carrier line off A joined to each of the three by blocks."""
    for lab in (l1, l2, l3):
        host.require(lab)
    common = (host.line_blocks[l1] & host.line_blocks[l2]
              & host.line_blocks[l3])
    if not common:
        return False
    neigh = None
    for li in (l1, l2, l3):
        reach = set()
        for b in host.line_blocks[li]:
            reach |= host.block_pts[b]
        neigh = reach if neigh is None else neigh & reach
    for A in sorted(common):
        apts = host.block_pts[A]
        for l0 in neigh:
            if l0 not in apts:
                return True
    return False


@dataclass(frozen=True)
class AdjacencyResult:
    adjacent: bool
    case: str  # regular-span | nonregular-span | skew


def adjacency(host: LineHost, l1, l2) -> AdjacencyResult:
    """Binary collinearity: a common block exists.  Skew pairs are
    vacuously nonadjacent and flagged, not an error."""
    host.require(l1)
    host.require(l2)
    if l1 == l2:
        raise UnknownLabel("adjacency is about distinct lines")
    if not (host.line_points[l1] & host.line_points[l2]):
        return AdjacencyResult(False, "skew")
    if host.adjacent(l1, l2):
        return AdjacencyResult(True, "regular-span")
    return AdjacencyResult(False, "nonregular-span")


@dataclass(frozen=True)
class StarSets:
    host: str
    pencil: frozenset
    s_delta: frozenset
    s_l: frozenset

    @property
    def s(self) -> frozenset:
        return self.pencil | self.s_delta | self.s_l


def _pencil_trace(host: LineHost, l1, l2) -> frozenset:
    """Carrier lines in the pencil spanned by two distinct concurrent
    coplanar carrier lines; empty when they are skew or span no block."""
    common_pts = host.line_points[l1] & host.line_points[l2]
    if not common_pts:
        return frozenset()
    (c,) = common_pts
    out = set()
    for A in host.line_blocks[l1] & host.line_blocks[l2]:
        for L in host.block_pts[A]:
            if c in host.line_points[L]:
                out.add(L)
    return frozenset(out)


def star_closure(host: LineHost, pencil) -> StarSets:
    """The triangle span of a pencil plus its collinearity span."""
    Q = frozenset(pencil)
    if not Q:
        raise EmptyPencil("star of an empty pencil")
    for lab in Q:
        host.require(lab)
    q_list = sorted(Q)
    pairs = [(q_list[i], q_list[j])
             for i in range(len(q_list)) for j in range(i + 1, len(q_list))]
    pool = set()
    for L in Q:
        for b in host.line_blocks[L]:
            pool |= host.block_pts[b]
    s_delta = set()
    for cand in sorted(pool):
        for u, v in pairs:
            if cand in (u, v):
                continue
            if triangle_rel(host, cand, u, v):
                s_delta.add(cand)
                break
    sd_list = sorted(s_delta)
    s_l = set()
    for i in range(len(sd_list)):
        for j in range(i + 1, len(sd_list)):
            s_l |= _pencil_trace(host, sd_list[i], sd_list[j])
    return StarSets(host.structure.name, Q, frozenset(s_delta), frozenset(s_l))


def improper_condition(host: LineHost, star) -> bool:
    """True iff for every line of the star, its non-neighbours within the
    star are pairwise nonadjacent."""
    star_list = sorted(star)
    for L in star_list:
        nn = [M for M in star_list if M != L and not host.adjacent(L, M)]
        for i in range(len(nn)):
            for j in range(i + 1, len(nn)):
                if host.adjacent(nn[i], nn[j]):
                    return False
    return True


def point_kind(host: LineHost, pencil) -> str:
    """'improper' when the non-neighbour condition holds over the closed
    star (for ambient dimension 4 it always does); 'proper' otherwise."""
    Q = frozenset(pencil)
    if not Q:
        raise EmptyPencil("kind of an empty pencil")
    star = star_closure(host, Q).s
    got = host._kind_cache.get(star)
    if got is None:
        got = "improper" if improper_condition(host, star) else "proper"
        host._kind_cache[star] = got
    return got


def pencils_of(host: LineHost) -> dict:
    """All nonempty pencil traces as {trace: (vertex, plane label)}."""
    out: dict = {}
    for bi, lines in enumerate(host.block_pts):
        if not lines:
            continue
        by_point: dict = {}
        for L in lines:
            for p in host.line_points[L]:
                by_point.setdefault(p, set()).add(L)
        for p, trace in sorted(by_point.items()):
            out.setdefault(frozenset(trace), (p, host.block_labels[bi]))
    return out


def _direction_traces(host: PointHost, traces_ids) -> list[bool]:
    """For each line trace, decide whether some plane trace sharing two
    of its points holds a block disjoint from it; direction traces
    (regular non-block lines) admit none, since every block coplanar
    with them crosses them, while a trace of a nonregular line always
    has a coplanar parallel block (two shared points already force the
    plane of the trace to contain the line)."""
    fam = host.traces
    out = []
    for tr in traces_ids:
        ids = sorted(tr)
        cls = set()
        for i in range(len(ids)):
            for j in range(i + 1, len(ids)):
                fam.ensure_pair(ids[i], ids[j])
                cls |= fam.containing((ids[i], ids[j]))
        parallel_block = False
        for cid in sorted(cls):
            T = fam.classes[cid]
            cand_blocks = set()
            for p in T - tr:
                cand_blocks |= host.point_blocks[p]
            for b in cand_blocks:
                bp = host.block_pts[b]
                if bp <= T and not (bp & tr):
                    parallel_block = True
                    break
            if parallel_block:
                break
        out.append(not parallel_block)
    return out


def b1_from_c1(geom: Geometry, c1: IncidenceStructure) -> IncidenceStructure:
    """Recover the full point/line structure from its restriction to the
    lines avoiding the pole.  Off the hyperplane case the two coincide;
    otherwise the missing blocks are the line traces admitting no
    parallel block inside any of their plane traces, adjoined with their
    spanned labels."""
    if not geom.b_in_horizon:
        return make_structure("B1", c1.points, list(c1.blocks))
    host = PointHost(c1)
    traces_ids = l0_classes_ids(host)
    flags = _direction_traces(host, traces_ids)
    new_blocks = []
    for tr, is_direction in zip(traces_ids, flags):
        if not is_direction:
            continue
        labels = frozenset(host.points[i] for i in tr)
        span = rref(geom.gf, list(labels), geom.n)
        new_blocks.append((label_of(span), labels))
    return make_structure("B1", c1.points, list(c1.blocks) + new_blocks)


def rebuild_B1(geom: Geometry, source: str) -> IncidenceStructure:
    """Rebuild the point/line structure from a line-level structure.

    source 'Gn2': dualize the Grassmannian at level n-2 and drop isolated
    objects.  source 'B2'/'C2' at n=4: dualize, then (for C2) recover the
    missing blocks.  source 'B2'/'C2' at n>4: the star route -- pencils,
    closed stars, and the vertex-kind test."""
    if geom.n < 4:
        raise BadDimension("rebuilding needs ambient dimension at least 4")
    if source == "Gn2":
        X = build(geom, f"Gk:{geom.n - 2}")
        return drop_isolated(perp_dual(geom, X), "B1")
    if source not in ("B2", "C2"):
        raise UnknownLabel(f"unknown rebuild source {source!r}")
    X = build(geom, source)
    if geom.n == 4:
        D = perp_dual(geom, X)
        if source == "B2":
            return make_structure("B1", D.points, list(D.blocks))
        c1 = make_structure("C1", D.points, list(D.blocks))
        return b1_from_c1(geom, c1)
    return _rebuild_star_route(geom, X)


def _rebuild_star_route(geom: Geometry, X: IncidenceStructure):
    host = LineHost(geom, X)
    proper_points = []
    for p, star in sorted(host.point_lines.items()):
        usable = {L for L in star if host.line_blocks[L]}
        if not usable:
            continue
        if not improper_condition(host, usable):
            proper_points.append(p)
    proper = set(proper_points)
    blocks = []
    for L in host.lines:
        pts = frozenset(p for p in host.line_points[L] if p in proper)
        if pts:
            blocks.append((L, pts))
    return make_structure("B1", proper_points, blocks)
