"""Exact linear algebra over GF(2^k): reduced-echelon bases and the
subspace lattice.

A subspace is always held in reduced row-echelon form, which makes the
representation canonical: two subspaces are equal iff their bases compare
equal.  All lattice operations (sum, meet, containment) return canonical
bases, and meet goes through the dual route -- the kernel of the stacked
annihilator constraints of both operands.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from .errors import BadDimension, DimensionMismatch
from .gf import GF


@dataclass(frozen=True, order=True)
class SubspaceBasis:
    """Canonical (reduced row-echelon) basis of a vector subspace.

    `rows` is a tuple of coordinate tuples; pivots strictly increase, each
    pivot entry is 1 and its column is zero elsewhere.  The empty tuple
    represents the zero subspace of ambient dimension `n`.
    """

    n: int
    rows: tuple = dc_field(default=())

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


def _pivot(row) -> int:
    for j, c in enumerate(row):
        if c:
            return j
    return -1


def rref(gf: GF, vectors, n: int | None = None) -> SubspaceBasis:
    """Canonical basis of the span of `vectors` (idempotent)."""
    vecs = [tuple(v) for v in vectors]
    if vecs:
        m = len(vecs[0])
        if any(len(v) != m for v in vecs):
            raise DimensionMismatch("mixed vector lengths")
        if n is not None and n != m:
            raise DimensionMismatch(f"expected length {n}, got {m}")
        n = m
    elif n is None:
        raise DimensionMismatch("ambient dimension required for empty input")
    mul = gf.mul
    inv = gf.inv
    basis: list[list[int]] = []
    pivots: list[int] = []
    for vec in vecs:
        v = list(vec)
        for p, row in zip(pivots, basis):
            c = v[p]
            if c:
                for j in range(p, n):
                    v[j] ^= mul(c, row[j])
        p = _pivot(v)
        if p < 0:
            continue
        s = inv(v[p])
        if s != 1:
            v = [mul(s, c) for c in v]
        for row in basis:
            c = row[p]
            if c:
                for j in range(p, n):
                    row[j] ^= mul(c, v[j])
        idx = 0
        while idx < len(pivots) and pivots[idx] < p:
            idx += 1
        pivots.insert(idx, p)
        basis.insert(idx, v)
    return SubspaceBasis(n, tuple(tuple(r) for r in basis))


def reduce_vec(gf: GF, S: SubspaceBasis, v) -> tuple:
    """Residue of v after elimination against the rows of S."""
    if len(v) != S.n:
        raise DimensionMismatch("vector length differs from ambient dimension")
    mul = gf.mul
    v = list(v)
    for row in S.rows:
        p = _pivot(row)
        c = v[p]
        if c:
            for j in range(p, S.n):
                v[j] ^= mul(c, row[j])
    return tuple(v)


def contains_vec(gf: GF, S: SubspaceBasis, v) -> bool:
    return not any(reduce_vec(gf, S, v))


def contains_sub(gf: GF, S: SubspaceBasis, T: SubspaceBasis) -> bool:
    """True iff T is a subspace of S."""
    if S.n != T.n:
        raise DimensionMismatch("ambient dimensions differ")
    return all(contains_vec(gf, S, r) for r in T.rows)


def subspace_sum(gf: GF, S: SubspaceBasis, T: SubspaceBasis) -> SubspaceBasis:
    if S.n != T.n:
        raise DimensionMismatch("ambient dimensions differ")
    return rref(gf, S.rows + T.rows, S.n)


def nullspace(gf: GF, rows, n: int) -> SubspaceBasis:
    """Canonical basis of {x : r . x = 0 for every constraint row r}."""
    constraints = rref(gf, rows, n)
    pivots = [_pivot(r) for r in constraints.rows]
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for p, row in zip(pivots, constraints.rows):
            v[p] = row[f]
        basis.append(tuple(v))
    return rref(gf, basis, n)


def annihilator(gf: GF, S: SubspaceBasis) -> SubspaceBasis:
    """Dual constraints of S under the standard dot product."""
    return nullspace(gf, S.rows, S.n)


def meet(gf: GF, S: SubspaceBasis, T: SubspaceBasis) -> SubspaceBasis:
    """Intersection via duality: kernel of the stacked annihilators."""
    if S.n != T.n:
        raise DimensionMismatch("ambient dimensions differ")
    cons = annihilator(gf, S).rows + annihilator(gf, T).rows
    return nullspace(gf, cons, S.n)


def lattice(gf: GF, S: SubspaceBasis, T: SubspaceBasis, op: str):
    """Dispatch form of the lattice operations."""
    if op == "sum":
        return subspace_sum(gf, S, T)
    if op == "meet":
        return meet(gf, S, T)
    if op == "contains_vec":
        # T carries the vector as its single row
        if T.dim != 1:
            raise DimensionMismatch("contains_vec expects a single vector")
        return contains_vec(gf, S, T.rows[0])
    if op == "dim":
        return S.dim
    raise ValueError(f"unknown lattice op {op!r}")


def dot(gf: GF, u, v) -> int:
    mul = gf.mul
    acc = 0
    for a, b in zip(u, v):
        if a and b:
            acc ^= mul(a, b)
    return acc


def scale_vec(gf: GF, c: int, v) -> tuple:
    mul = gf.mul
    return tuple(mul(c, x) for x in v)


def add_vec(u, v) -> tuple:
    return tuple(a ^ b for a, b in zip(u, v))


def combine(gf: GF, coeffs, rows) -> tuple:
    """Linear combination sum(c_i * rows_i)."""
    mul = gf.mul
    n = len(rows[0])
    out = [0] * n
    for c, row in zip(coeffs, rows):
        if c:
            for j in range(n):
                if row[j]:
                    out[j] ^= mul(c, row[j])
    return tuple(out)


def meet_with_constraints(gf: GF, S: SubspaceBasis, cons) -> SubspaceBasis:
    """S intersected with {x : c . x = 0 for c in cons}, solved in the
    coefficient space of S (cheap for low-dimensional S)."""
    d = S.dim
    cons = list(cons)
    if d == 0 or not cons:
        return S
    # coefficient-space constraint matrix: one row per constraint
    coeff_cons = [tuple(dot(gf, s, c) for s in S.rows) for c in cons]
    ker = nullspace(gf, coeff_cons, d).rows
    vecs = [combine(gf, co, S.rows) for co in ker]
    return rref(gf, vecs, S.n)


def mat_mul_vec(gf: GF, M, v) -> tuple:
    mul = gf.mul
    out = []
    for row in M:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc ^= mul(a, b)
        out.append(acc)
    return tuple(out)


def vec_mul_mat(gf: GF, v, M) -> tuple:
    mul = gf.mul
    n = len(M[0])
    out = [0] * n
    for i, c in enumerate(v):
        if c:
            row = M[i]
            for j in range(n):
                if row[j]:
                    out[j] ^= mul(c, row[j])
    return tuple(out)


def mat_rank(gf: GF, M) -> int:
    if not M:
        return 0
    return rref(gf, M, len(M[0])).dim


def mat_is_invertible(gf: GF, M) -> bool:
    return len(M) == len(M[0]) and mat_rank(gf, M) == len(M)


def all_rref_matrices(gf: GF, k: int, n: int):
    """All reduced-echelon k x n matrices of rank k, i.e. all k-dimensional
    subspaces of GF(q)^n in canonical coordinates.  Deterministic order:
    pivot sets lexicographic, then free entries in integer-product order."""
    if not 0 <= k <= n:
        raise BadDimension(f"need 0 <= k <= n, got k={k}, n={n}")
    if k == 0:
        yield ()
        return
    q = gf.q
    for pivots in itertools.combinations(range(n), k):
        free = []
        for i in range(k):
            for j in range(pivots[i] + 1, n):
                if j not in pivots:
                    free.append((i, j))
        for values in itertools.product(range(q), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i in range(k):
                rows[i][pivots[i]] = 1
            for (i, j), v in zip(free, values):
                rows[i][j] = v
            yield tuple(tuple(r) for r in rows)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over
    GF(q); the standard product formula."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den
