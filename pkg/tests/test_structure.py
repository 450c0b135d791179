import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxgrow.catalog import get_entry
from coxgrow.classify import is_hyperbolic
from coxgrow.coxcore import INF, CoxeterMatrix, GeneratorMap, canonical_key, coxeter_isomorphic
from coxgrow.growth import poincare
from coxgrow.structure import (
    InvalidTupleError,
    enumerate_mutable,
    inverse,
    is_twist,
    leq_order,
    make_mutable,
    minimal_elements,
    mutate,
    mutation_class,
    opposition_by_bfs,
    opposition_involution,
    sharp,
    verify_thm_a,
    verify_thm_c,
)
from oracles import brute_leq, matrix_bfs, reflections
from strategies import coxeter_matrices

A1 = CoxeterMatrix.from_rows([[1]])
A2 = CoxeterMatrix.from_rows([[1, 3], [3, 1]])
I24 = CoxeterMatrix.from_rows([[1, 4], [4, 1]])
MUT7 = get_entry("mutation-rank7").matrix
MUT7_ARGS = ([0, 1, 2, 3], [4], {0: 1, 1: 2, 2: 0})


def triangle(a, b, c):
    return CoxeterMatrix.from_edges(3, {(0, 1): a, (1, 2): b, (0, 2): c})


def twist_fixture():
    # X = {0,1} of type A2, Y = {2} hanging off 0, Z = {3} joined to Y only
    M = CoxeterMatrix.from_edges(4, {(0, 1): 3, (0, 2): 3, (2, 3): 3})
    return make_mutable(M, [0, 1], [2], {0: 1, 1: 0})


# -- the order ------------------------------------------------------------


def test_leq_examples():
    phi = leq_order(A2, I24)
    assert phi is not None and phi.dominated()
    assert leq_order(A1, A2) is not None
    assert leq_order(I24, A2) is None


def test_minimal_examples():
    assert minimal_elements([A2, I24]) == [A2]
    labels = [2, 3, 4, 5, 6, 7, 8, INF]
    tri = {}
    for a, b, c in itertools.combinations_with_replacement(labels, 3):
        M = triangle(a, b, c)
        if is_hyperbolic(M):
            tri.setdefault(canonical_key(M), M)
    mins = minimal_elements(list(tri.values()))
    assert {canonical_key(M) for M in mins} == {canonical_key(triangle(*t)) for t in [(2, 3, 7), (3, 3, 4), (2, 4, 5)]}


@given(coxeter_matrices(max_rank=4, labels=(2, 3, 4, INF)), coxeter_matrices(max_rank=4, labels=(2, 3, 4, INF)))
@settings(max_examples=200)
def test_leq_matches_brute_force(M, N):
    phi = leq_order(M, N)
    assert (phi is not None) == brute_leq(M, N)
    if phi is not None:
        assert phi.dominated()


@given(coxeter_matrices(max_rank=4), coxeter_matrices(max_rank=4), coxeter_matrices(max_rank=4))
@settings(max_examples=100)
def test_leq_reflexive_transitive(A, B, C):
    assert leq_order(A, A) is not None
    f, g = leq_order(A, B), leq_order(B, C)
    if f is not None and g is not None:
        assert g.compose(f).dominated()
        assert leq_order(A, C) is not None


# -- monotonicity harness ----------------------------------------------------


def test_thm_a_examples():
    rep = verify_thm_a(A2, I24, GeneratorMap(A2, I24, (0, 1)), 4)
    assert rep.a_source == [1, 2, 2, 1, 0] and rep.a_target == [1, 2, 2, 2, 1]
    assert rep.ok and rep.elements == 6
    T = get_entry("triangle-2-3-7").matrix
    assert verify_thm_a(T, T, GeneratorMap(T, T, (0, 1, 2)), 5).ok
    N = CoxeterMatrix.from_rows([[1, 3, 7], [3, 1, 3], [7, 3, 1]])
    phi = leq_order(T, N)
    assert verify_thm_a(T, N, phi, 6).ok


def test_thm_a_rejects_bad_map():
    with pytest.raises(ValueError):
        verify_thm_a(I24, A2, GeneratorMap(I24, A2, (0, 1)), 3)


@given(coxeter_matrices(max_rank=3), st.data())
@settings(max_examples=40)
def test_thm_a_random(M, data):
    # raise a random set of labels to build N >= M
    rows = [list(r) for r in M.entries]
    for i, j in itertools.combinations(range(M.rank), 2):
        if data.draw(st.booleans()):
            up = data.draw(st.sampled_from([x for x in (2, 3, 4, 5, 6, 7, INF) if x >= rows[i][j]]))
            rows[i][j] = rows[j][i] = up
    N = CoxeterMatrix.from_rows(rows)
    rep = verify_thm_a(M, N, GeneratorMap(M, N, tuple(range(M.rank))), 5)
    assert rep.ok, rep.counterexample
    assert rep.a_source == matrix_bfs(M, 5)[0]


# -- mutations --------------------------------------------------------------


def test_rank7_tuple():
    tup = make_mutable(MUT7, *MUT7_ARGS)
    assert tup.T == (6,) and tup.Z == (5,)
    N = mutate(tup)
    assert [N[4, x] for x in range(4)] == [3, 2, 3, 3]
    assert [MUT7[4, x] for x in range(4)] == [3, 3, 2, 3]
    for i, j in itertools.product(range(7), repeat=2):
        if not ({i, j} & {0, 1, 2, 3} and {i, j} & {4}):
            assert N[i, j] == MUT7[i, j]
    assert mutate(inverse(tup)) == MUT7
    assert not is_twist(tup)
    rep = verify_thm_c(tup, check_isomorphism=True)
    assert rep.ok
    assert rep.coxeter_isomorphic is False
    assert tup.to_dict()["sigma"] == "(1 2 3)"


def test_rank7_other_y():
    # with Y = {s7}: s5 is joined to s7 by inf while s6 has label 3, so T = {s5}, Z = {s6};
    # s6 sees s1, s2, s3 with the same label 4, so condition (iii) holds
    tup = make_mutable(MUT7, [0, 1, 2, 3], [6], {0: 1, 1: 2, 2: 0})
    assert tup.T == (4,) and tup.Z == (5,)
    N = mutate(tup)
    assert [N[6, x] for x in range(4)] == [2, 3, 2, 2]
    assert verify_thm_c(tup).ok


def test_identity_sigma():
    tup = make_mutable(MUT7, [0, 1, 2, 3], [4], {})
    assert tup.trivial and mutate(tup) == MUT7
    assert not is_twist(tup)
    assert verify_thm_c(tup).ok
    assert sharp(tup, (0, 4)) == (0, 4)


@pytest.mark.parametrize(
    "X, Y, sigma, condition",
    [
        ([], [4], {}, "nonempty"),
        ([0, 1], [], {}, "nonempty"),
        ([0, 1], [1], {}, "disjoint"),
        ([0, 9], [4], {}, "range"),
        ([0, 1, 2, 3], [4], {0: 3, 3: 0}, "automorphism"),
        ([0, 1, 2, 3], [4, 5], {0: 1, 1: 2, 2: 0}, "(i)/(ii)"),
        ([0, 1, 2, 3], [6], {0: 3, 3: 0, 1: 1}, "automorphism"),
    ],
)
def test_invalid_tuples(X, Y, sigma, condition):
    with pytest.raises(InvalidTupleError) as ei:
        make_mutable(MUT7, X, Y, sigma)
    assert ei.value.condition == condition


def test_enumeration_examples():
    assert enumerate_mutable(A2) == []
    tups = enumerate_mutable(MUT7)
    want = make_mutable(MUT7, *MUT7_ARGS)
    assert want in tups
    assert all(not t.trivial for t in tups)
    keys = [(t.X, t.Y, tuple(v for _, v in t.sigma)) for t in tups]
    assert keys == sorted(keys)
    D4 = CoxeterMatrix.from_edges(4, {(0, 1): 3, (0, 2): 3, (0, 3): 3})
    assert enumerate_mutable(D4, effective_only=True) == []


def test_twist_fixture():
    tup = twist_fixture()
    assert is_twist(tup)
    rep = verify_thm_c(tup, check_isomorphism=True)
    assert rep.ok
    assert rep.coxeter_isomorphic is True


def test_mutation_class_contains_start():
    cls = mutation_class(MUT7, depth=1)
    keys = {canonical_key(M) for M in cls}
    assert canonical_key(MUT7) in keys
    assert canonical_key(mutate(make_mutable(MUT7, *MUT7_ARGS))) in keys
    assert len({poincare(M) for M in cls}) == 1


# -- opposition involution ------------------------------------------------


def _opposition_by_matrices(M):
    """Conjugate each simple reflection by the longest element, using matrices only."""
    sizes, table = matrix_bfs(M, 10**3)
    top = max(table.values(), key=len)
    gens = reflections(M)
    W0 = np.eye(M.rank)
    for s in top:
        W0 = W0 @ gens[s]
    out = {}
    for s, R in enumerate(gens):
        C = W0 @ R @ W0
        out[s] = next(t for t, Q in enumerate(gens) if np.allclose(C, Q))
    return out


def _small_spherical():
    chain = lambda *l: CoxeterMatrix.from_edges(len(l) + 1, {(i, i + 1): m for i, m in enumerate(l)})  # noqa: E731
    yield chain(3)
    yield chain(3, 3)
    yield chain(3, 3, 3)
    yield chain(3, 3, 3, 3)  # 720 > 240, still cheap with matrices
    yield chain(4, 3)
    yield chain(5, 3)
    yield chain(3, 5)
    yield CoxeterMatrix.from_edges(4, {(0, 1): 3, (0, 2): 3, (0, 3): 3})
    yield CoxeterMatrix.from_edges(5, {(0, 1): 3, (0, 2): 3, (0, 3): 3, (3, 4): 3})
    for m in range(2, 10):
        yield chain(m)
    yield CoxeterMatrix.from_edges(3, {(0, 2): 3})


@pytest.mark.parametrize("M", list(_small_spherical()), ids=repr)
def test_opposition_table(M):
    want = _opposition_by_matrices(M)
    assert opposition_involution(M) == want
    assert opposition_by_bfs(M) == want


# -- series invariance on random matrices -----------------------------------------


@given(coxeter_matrices(min_rank=2, max_rank=5, labels=(2, 3, 4, INF)))
@settings(max_examples=60)
def test_thm_c_random(M):
    for tup in enumerate_mutable(M):
        N = mutate(tup)
        assert mutate(inverse(tup)) == M
        rep = verify_thm_c(tup)
        assert rep.ok, rep.failures
        assert poincare(N) == poincare(M)
