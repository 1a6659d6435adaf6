import itertools
import random

import pytest

from regra.errors import DimensionMismatch
from regra.gf import field
from regra.linalg import (
    SubspaceBasis,
    all_rref_matrices,
    annihilator,
    contains_sub,
    contains_vec,
    gaussian_binomial,
    lattice,
    meet,
    meet_with_constraints,
    nullspace,
    rref,
    subspace_sum,
)

GF4 = field(2)

E0 = (1, 0, 0)
E1 = (0, 1, 0)
E2 = (0, 0, 1)


def test_rref_scaling():
    assert rref(GF4, [(2, 2, 0)]).rows == ((1, 1, 0),)


def test_rref_elimination():
    assert rref(GF4, [(1, 0, 0), (1, 1, 0)]).rows == ((1, 0, 0), (0, 1, 0))


def test_rref_empty():
    S = rref(GF4, [], n=3)
    assert S.dim == 0 and S.n == 3


def test_rref_mixed_lengths():
    with pytest.raises(DimensionMismatch):
        rref(GF4, [(1, 0), (1, 0, 0)])


def test_rref_idempotent_exhaustive_gf4_n3():
    for rows in all_rref_matrices(GF4, 2, 3):
        S = SubspaceBasis(3, rows)
        assert rref(GF4, S.rows, 3) == S


def test_rref_canonical_under_row_operations():
    # determinism: random invertible recombinations of a generating set
    # always reduce to the same basis
    rng = random.Random(7)
    gf = field(3)
    for _ in range(60):
        n = rng.choice([3, 4, 5])
        vecs = [tuple(rng.randrange(gf.q) for _ in range(n)) for _ in range(3)]
        S = rref(gf, vecs, n)
        shuffled = list(vecs)
        rng.shuffle(shuffled)
        # add a random multiple of another generator to each generator
        mixed = []
        for i, v in enumerate(shuffled):
            w = shuffled[(i + 1) % len(shuffled)]
            c = rng.randrange(gf.q)
            mixed.append(tuple(a ^ gf.mul(c, b) for a, b in zip(v, w)))
        assert rref(gf, mixed + shuffled, n) == S


def test_meet_and_sum_basics():
    S = rref(GF4, [E0, E1])
    T = rref(GF4, [E1, E2])
    assert meet(GF4, S, T).rows == ((0, 1, 0),)
    assert subspace_sum(GF4, rref(GF4, [E0]), rref(GF4, [E1])).dim == 2
    assert contains_vec(GF4, S, (1, 1, 0))
    assert not contains_vec(GF4, S, (0, 0, 1))


def test_lattice_dispatch():
    S = rref(GF4, [E0, E1])
    T = rref(GF4, [E1, E2])
    assert lattice(GF4, S, T, "sum").dim == 3
    assert lattice(GF4, S, T, "meet").rows == ((0, 1, 0),)
    assert lattice(GF4, S, rref(GF4, [(1, 1, 0)]), "contains_vec") is True
    assert lattice(GF4, S, T, "dim") == 2
    with pytest.raises(ValueError):
        lattice(GF4, S, T, "join")


def _random_subspace(gf, rng, n):
    k = rng.randrange(0, n + 1)
    vecs = [tuple(rng.randrange(gf.q) for _ in range(n)) for _ in range(k)]
    return rref(gf, vecs, n)


@pytest.mark.parametrize("n", [2, 3])
def test_modular_law_exhaustive_gf4(n):
    subs = [SubspaceBasis(n, rows)
            for k in range(n + 1)
            for rows in all_rref_matrices(GF4, k, n)]
    for S, T in itertools.product(subs, repeat=2):
        total = subspace_sum(GF4, S, T).dim
        common = meet(GF4, S, T).dim
        assert total + common == S.dim + T.dim


@pytest.mark.parametrize("n", [4, 5])
def test_modular_law_sampled_gf4(n):
    rng = random.Random(n)
    for _ in range(4000):
        S = _random_subspace(GF4, rng, n)
        T = _random_subspace(GF4, rng, n)
        total = subspace_sum(GF4, S, T).dim
        common = meet(GF4, S, T).dim
        assert total + common == S.dim + T.dim


def test_meet_against_membership_oracle_gf4():
    # brute-force oracle: intersect point sets by span membership
    n = 3
    subs = [SubspaceBasis(n, rows)
            for k in range(1, n + 1)
            for rows in all_rref_matrices(GF4, k, n)]
    vectors = list(itertools.product(range(GF4.q), repeat=n))
    for S, T in itertools.islice(itertools.product(subs, repeat=2), 0, None, 7):
        got = meet(GF4, S, T)
        expect = [v for v in vectors
                  if contains_vec(GF4, S, v) and contains_vec(GF4, T, v)]
        assert all(contains_vec(GF4, got, v) for v in expect)
        assert len(expect) == GF4.q ** got.dim


def test_annihilator_dimension():
    S = rref(GF4, [E0, E1])
    A = annihilator(GF4, S)
    assert A.dim == 1
    assert A.rows == ((0, 0, 1),)


def test_nullspace_canonical():
    K = nullspace(GF4, [(1, 0, 1)], 3)
    assert K.dim == 2
    assert rref(GF4, K.rows, 3) == K


def test_meet_with_constraints_matches_meet():
    rng = random.Random(11)
    gf = field(3)
    for _ in range(40):
        n = 4
        S = _random_subspace(gf, rng, n)
        T = _random_subspace(gf, rng, n)
        cons = annihilator(gf, T)
        assert meet_with_constraints(gf, S, cons.rows) == meet(gf, S, T)


def test_subspace_counts_match_gaussian_binomial():
    for k in range(0, 4):
        got = sum(1 for _ in all_rref_matrices(GF4, k, 3))
        assert got == gaussian_binomial(3, k, 4)
    assert gaussian_binomial(3, 1, 4) == 21
    assert gaussian_binomial(4, 2, 4) == 357
    assert gaussian_binomial(3, 1, 8) == 73
