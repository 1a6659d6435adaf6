"""Symmetric bilinear forms of the canonical shapes and the conjugacy
they induce: perpendicularity, radicals, the selfconjugate hyperplane and
its pole.

Three canonical kinds exist over a perfect field of characteristic 2,
built from the 2x2 blocks

    O = [[0,0],[0,0]],  HYP = [[0,1],[1,0]],  HYP1 = [[1,1],[1,0]]:

  * type 1 (odd ambient dimension):  diag(1) then HYP blocks,
  * type 2 (even):                   HYP1 then HYP blocks,
  * type 3 (even, fully isotropic):  HYP blocks only.

Two bordered families generalize types 1 and 2 around a chosen symplectic
base: `eps` puts a nonzero scalar in the corner ahead of the base, and
`mu_lambda` puts the 2x2 corner [[mu,lambda],[lambda,0]] ahead of it.
For every kind except type 3 the selfconjugate points form a hyperplane
whose pole is a single point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DegenerateBase,
    DimensionMismatch,
    ParityMismatch,
    ZeroParameter,
)
from .gf import GF
from .linalg import (
    SubspaceBasis,
    meet_with_constraints,
    mat_rank,
    nullspace,
    vec_mul_mat,
)

HYP = ((0, 1), (1, 0))


@dataclass(frozen=True)
class Type1:
    tag: str = "type1"


@dataclass(frozen=True)
class Type2:
    tag: str = "type2"


@dataclass(frozen=True)
class Type3:
    tag: str = "type3"


@dataclass(frozen=True)
class FamilyEps:
    """Corner scalar eps != 0 bordering a symplectic base on the last
    n-1 coordinates; coordinate 0 is the border."""

    eps: int
    base: tuple  # (n-1) x (n-1) symplectic matrix

    @property
    def tag(self) -> str:
        return f"eps:{self.eps}"


@dataclass(frozen=True)
class FamilyMuLambda:
    """Corner block [[mu, lam], [lam, 0]] on coordinates 0 and 1 bordering
    a symplectic base on the last n-2 coordinates."""

    mu: int
    lam: int
    base: tuple  # (n-2) x (n-2) symplectic matrix

    @property
    def tag(self) -> str:
        return f"mulambda:{self.mu}:{self.lam}"


FormKind = Type1 | Type2 | Type3 | FamilyEps | FamilyMuLambda


@dataclass(frozen=True)
class BilinearForm:
    n: int
    matrix: tuple  # n x n, symmetric, nonsingular
    kind: FormKind


def symplectic_base(gf: GF, m: int) -> tuple:
    """Standard nondegenerate symplectic matrix of even dimension m."""
    if m % 2:
        raise ParityMismatch("symplectic base needs even dimension")
    M = [[0] * m for _ in range(m)]
    for i in range(0, m, 2):
        M[i][i + 1] = M[i + 1][i] = 1
    return tuple(tuple(r) for r in M)


def _check_symplectic(gf: GF, M, m: int) -> None:
    if len(M) != m or any(len(r) != m for r in M):
        raise DimensionMismatch("base matrix has the wrong shape")
    for i in range(m):
        if M[i][i] != 0:
            raise DegenerateBase("symplectic base must be alternating")
        for j in range(m):
            if M[i][j] != M[j][i]:
                raise DegenerateBase("symplectic base must be symmetric")
    if mat_rank(gf, M) != m:
        raise DegenerateBase("symplectic base is singular")


def make_form(gf: GF, n: int, kind: FormKind) -> BilinearForm:
    """The n x n matrix of the requested kind, laid out block by block."""
    if isinstance(kind, Type1):
        if n % 2 == 0:
            raise ParityMismatch("type 1 needs odd ambient dimension")
        M = [[0] * n for _ in range(n)]
        M[0][0] = 1
        for i in range(1, n, 2):
            M[i][i + 1] = M[i + 1][i] = 1
    elif isinstance(kind, Type2):
        if n % 2:
            raise ParityMismatch("type 2 needs even ambient dimension")
        M = [[0] * n for _ in range(n)]
        M[0][0] = 1
        M[0][1] = M[1][0] = 1
        for i in range(2, n, 2):
            M[i][i + 1] = M[i + 1][i] = 1
    elif isinstance(kind, Type3):
        if n % 2:
            raise ParityMismatch("type 3 needs even ambient dimension")
        M = [list(r) for r in symplectic_base(gf, n)]
    elif isinstance(kind, FamilyEps):
        if kind.eps == 0:
            raise ZeroParameter("eps must be nonzero")
        _check_symplectic(gf, kind.base, n - 1)
        M = [[0] * n for _ in range(n)]
        M[0][0] = kind.eps
        for i in range(n - 1):
            for j in range(n - 1):
                M[i + 1][j + 1] = kind.base[i][j]
    elif isinstance(kind, FamilyMuLambda):
        if kind.mu == 0 or kind.lam == 0:
            raise ZeroParameter("mu and lambda must be nonzero")
        _check_symplectic(gf, kind.base, n - 2)
        M = [[0] * n for _ in range(n)]
        M[0][0] = kind.mu
        M[0][1] = M[1][0] = kind.lam
        for i in range(n - 2):
            for j in range(n - 2):
                M[i + 2][j + 2] = kind.base[i][j]
    else:
        raise TypeError(f"unknown form kind {kind!r}")
    matrix = tuple(tuple(r) for r in M)
    if mat_rank(gf, matrix) != n:
        raise DegenerateBase("form matrix is singular")
    return BilinearForm(n, matrix, kind)


def eval_form(gf: GF, form: BilinearForm, x, y) -> int:
    if len(x) != form.n or len(y) != form.n:
        raise DimensionMismatch("vector length differs from the form size")
    mul = gf.mul
    M = form.matrix
    acc = 0
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = M[i]
        s = 0
        for j, yj in enumerate(y):
            if yj and row[j]:
                s ^= mul(row[j], yj)
        if s:
            acc ^= mul(xi, s)
    return acc


def perp_constraints(gf: GF, form: BilinearForm, S: SubspaceBasis):
    """One dual constraint row per basis vector of S."""
    return [vec_mul_mat(gf, s, form.matrix) for s in S.rows]


def perp(gf: GF, form: BilinearForm, S: SubspaceBasis) -> SubspaceBasis:
    if S.n != form.n:
        raise DimensionMismatch("subspace lives in a different dimension")
    return nullspace(gf, perp_constraints(gf, form, S), form.n)


def isotropy_functional(gf: GF, form: BilinearForm) -> tuple:
    """Row l with form(v, v) = (l . v)^2; in characteristic 2 the value of
    the form on the diagonal is the square of a linear functional."""
    return tuple(gf.sqrt(form.matrix[i][i]) for i in range(form.n))


def locus_pole(gf: GF, form: BilinearForm):
    """(H, b, symplectic): the selfconjugate locus and its pole.

    For a fully isotropic form every point is selfconjugate; that case is
    reported as (None, None, True) rather than an error.  Otherwise the
    locus is verified to be a hyperplane and the pole a single point.
    """
    fun = isotropy_functional(gf, form)
    if not any(fun):
        return None, None, True
    H = nullspace(gf, [fun], form.n)
    assert H.dim == form.n - 1
    pole = perp(gf, form, H)
    assert pole.dim == 1
    return H, pole.rows[0], False


@dataclass(frozen=True)
class MetricReport:
    """Per-subspace metric invariants: horizon = A meet H, radical
    rad = A meet perp(A), and -- when A is not inside H -- the auxiliary
    hrd = A meet perp(horizon)."""

    horizon: SubspaceBasis
    rad: SubspaceBasis
    rdim: int
    hrd: SubspaceBasis | None

    @property
    def regular(self) -> bool:
        return self.rdim == 0


def horizon_of(geom, A: SubspaceBasis) -> SubspaceBasis:
    """A meet H, via the single linear functional cutting out H."""
    return meet_with_constraints(geom.gf, A, [geom.h_functional])


def metric_report(geom, A: SubspaceBasis) -> MetricReport:
    gf = geom.gf
    form = geom.form
    horizon = horizon_of(geom, A)
    rad = meet_with_constraints(gf, A, perp_constraints(gf, form, A))
    inside = horizon.dim == A.dim
    hrd = None
    if not inside:
        hrd = meet_with_constraints(gf, A, perp_constraints(gf, form, horizon))
    return MetricReport(horizon, rad, rad.dim, hrd)


def gram(gf: GF, form: BilinearForm, S: SubspaceBasis) -> tuple:
    rows = S.rows
    vals = [vec_mul_mat(gf, s, form.matrix) for s in rows]
    return tuple(tuple(_dot(gf, v, r) for r in rows) for v in vals)


def _dot(gf: GF, u, v) -> int:
    mul = gf.mul
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc ^= mul(a, b)
    return acc


def radical_dim(gf: GF, form: BilinearForm, S: SubspaceBasis) -> int:
    """Dimension of {v in S : v perp S}; corank of the Gram matrix."""
    d = S.dim
    if d == 0:
        return 0
    return d - mat_rank(gf, gram(gf, form, S))
