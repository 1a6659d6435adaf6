"""The projective space over GF(q)^n carrying a fixed bilinear form, and
its affine part (the complement of the selfconjugate hyperplane H).

Points are coordinate tuples normalized so the first nonzero entry is 1;
a point's label equals the single row of its canonical basis, so points
and one-dimensional subspaces interconvert freely.  Subspace enumerations
are cached per dimension in a deterministic canonical order.
"""

from __future__ import annotations

import itertools

from .errors import BadDimension, BadFlag, DimensionMismatch, ZeroVector
from .forms import (
    BilinearForm,
    FormKind,
    Type1,
    Type2,
    Type3,
    horizon_of,
    isotropy_functional,
    locus_pole,
    make_form,
    metric_report,
    perp,
    perp_constraints,
)
from .gf import GF, field
from .linalg import (
    SubspaceBasis,
    all_rref_matrices,
    combine,
    contains_vec,
    gaussian_binomial,
    meet,
    meet_with_constraints,
    rref,
    subspace_sum,
)


def normalize_point(gf: GF, v) -> tuple:
    """Scale v so its first nonzero coordinate is 1."""
    v = tuple(v)
    for c in v:
        if c:
            if c == 1:
                return v
            s = gf.inv(c)
            return tuple(gf.mul(s, x) for x in v)
    raise ZeroVector("the zero vector is not a projective point")


def point_basis(p, n: int) -> SubspaceBasis:
    return SubspaceBasis(n, (tuple(p),))


def points_of_subspace(gf: GF, S: SubspaceBasis) -> list[tuple]:
    """All (q^d - 1)/(q - 1) normalized points of S, sorted."""
    d = S.dim
    q = gf.q
    pts = []
    for lead in range(d):
        for tail in itertools.product(range(q), repeat=d - lead - 1):
            coeffs = (0,) * lead + (1,) + tail
            pts.append(combine(gf, coeffs, S.rows))
    pts.sort()
    return pts


class Geometry:
    """Ambient space: field, dimension, form, and the cached selfconjugate
    hyperplane H with its pole b.  All enumeration caches hang off this
    object; it is immutable after construction and safe to share."""

    def __init__(self, gf: GF, n: int, kind: FormKind):
        if n < 2:
            raise BadDimension("need ambient dimension at least 2")
        self.gf = gf
        self.n = n
        self.form = make_form(gf, n, kind)
        H, b, symplectic = locus_pole(gf, self.form)
        self.H = H
        self.b = b
        self.symplectic = symplectic
        self.h_functional = isotropy_functional(gf, self.form)
        self._subspaces: dict[int, tuple] = {}
        self._points_of: dict = {}
        self._lines_through: dict | None = None
        self._families: dict[int, object] = {}
        self._structures: dict = {}

    # -- basic predicates ---------------------------------------------------

    @property
    def q(self) -> int:
        return self.gf.q

    @property
    def b_in_horizon(self) -> bool:
        if self.b is None:
            raise BadDimension("fully isotropic geometry has no pole")
        return contains_vec(self.gf, self.H, self.b)

    def kind_tag(self) -> str:
        return self.form.kind.tag

    def is_affine_point(self, p) -> bool:
        """True iff p lies off H, i.e. the cutting functional is nonzero."""
        mul = self.gf.mul
        acc = 0
        for a, b in zip(self.h_functional, p):
            if a and b:
                acc ^= mul(a, b)
        return acc != 0

    def in_horizon(self, S: SubspaceBasis) -> bool:
        return all(not self.is_affine_point(r) for r in S.rows)

    # -- enumeration --------------------------------------------------------

    def subspaces(self, k: int) -> tuple:
        """All k-dimensional subspaces, canonical order, cached."""
        if not 1 <= k <= self.n:
            raise BadDimension(f"need 1 <= k <= {self.n}, got {k}")
        if k not in self._subspaces:
            subs = [SubspaceBasis(self.n, rows)
                    for rows in all_rref_matrices(self.gf, k, self.n)]
            subs.sort()
            self._subspaces[k] = tuple(subs)
        return self._subspaces[k]

    def points(self) -> tuple:
        return tuple(s.rows[0] for s in self.subspaces(1))

    def affine_points(self) -> tuple:
        return tuple(p for p in self.points() if self.is_affine_point(p))

    def horizon_points(self) -> tuple:
        return tuple(p for p in self.points() if not self.is_affine_point(p))

    def points_of(self, S: SubspaceBasis) -> tuple:
        got = self._points_of.get(S)
        if got is None:
            got = tuple(points_of_subspace(self.gf, S))
            self._points_of[S] = got
        return got

    def lines_through(self, p) -> tuple:
        if self._lines_through is None:
            table: dict = {pt: [] for pt in self.points()}
            for L in self.subspaces(2):
                for pt in self.points_of(L):
                    table[pt].append(L)
            self._lines_through = {pt: tuple(v) for pt, v in table.items()}
        return self._lines_through[p]

    # -- metric conveniences -------------------------------------------------

    def perp(self, S: SubspaceBasis) -> SubspaceBasis:
        return perp(self.gf, self.form, S)

    def perp_point(self, p) -> SubspaceBasis:
        return perp(self.gf, self.form, point_basis(p, self.n))

    def report(self, S: SubspaceBasis):
        return metric_report(self, S)

    def horizon_of(self, S: SubspaceBasis) -> SubspaceBasis:
        return horizon_of(self, S)

    def span(self, *parts) -> SubspaceBasis:
        rows = []
        for part in parts:
            if isinstance(part, SubspaceBasis):
                rows.extend(part.rows)
            else:
                rows.append(tuple(part))
        return rref(self.gf, rows, self.n)

    def __repr__(self) -> str:
        return f"Geometry(q={self.q}, n={self.n}, form={self.kind_tag()})"


_GEOMETRIES: dict = {}


def standard_geometry(k: int, n: int, form_type: int) -> Geometry:
    """Shared geometry over GF(2^k) with the canonical form of the given
    type; instances are cached so enumeration work is reused."""
    key = (k, n, form_type)
    if key not in _GEOMETRIES:
        kind = {1: Type1(), 2: Type2(), 3: Type3()}[form_type]
        _GEOMETRIES[key] = Geometry(field(k), n, kind)
    return _GEOMETRIES[key]


def enumerate_subspaces(geom: Geometry, k: int) -> tuple:
    return geom.subspaces(k)


def expected_count(geom: Geometry, k: int) -> int:
    return gaussian_binomial(geom.n, k, geom.q)


def span_horizon(geom: Geometry, parts):
    """(span, span meet H) of a nonempty collection of points/subspaces."""
    parts = list(parts)
    if not parts:
        raise DimensionMismatch("span of an empty collection")
    span = geom.span(*parts)
    return span, meet_with_constraints(geom.gf, span, [geom.h_functional])


class PencilSpec:
    """A flag (hub, bound) with dim(bound) = dim(hub) + 2; the pencil it
    spans is the set of intermediate subspaces."""

    def __init__(self, hub: SubspaceBasis, bound: SubspaceBasis):
        self.hub = hub
        self.bound = bound

    def validate(self, gf: GF) -> None:
        if self.hub.n != self.bound.n:
            raise DimensionMismatch("hub and bound in different spaces")
        if self.bound.dim != self.hub.dim + 2:
            raise BadFlag("dimension gap must be exactly 2")
        if subspace_sum(gf, self.hub, self.bound).dim != self.bound.dim:
            raise BadFlag("hub must be contained in bound")


def pencil_elements(geom: Geometry, spec: PencilSpec) -> tuple:
    """The q+1 subspaces strictly between hub and bound."""
    spec.validate(geom.gf)
    out = set()
    for p in geom.points_of(spec.bound):
        if contains_vec(geom.gf, spec.hub, p):
            continue
        out.add(geom.span(spec.hub, p))
    return tuple(sorted(out))
