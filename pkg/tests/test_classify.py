import itertools

import pytest
from hypothesis import given, settings

from coxgrow.catalog import get_entry
from coxgrow.classify import (
    IrreducibleType,
    Kind,
    classify,
    enumerate_hyperbolic,
    gram_signature_float,
    is_hyperbolic,
    recognize_irreducible,
    spherical_residues,
)
from coxgrow.coxcore import INF, CoxeterMatrix, canonical_key
from oracles import finite_order, matrix_bfs, oracle_kind, signature, spherical_subsets
from strategies import coxeter_matrices


def chain(*labels):
    n = len(labels) + 1
    return CoxeterMatrix.from_edges(n, {(i, i + 1): m for i, m in enumerate(labels)})


E10 = get_entry("E10").matrix
T237 = get_entry("triangle-2-3-7").matrix


def test_recognize_examples():
    B3 = chain(3, 4)
    assert recognize_irreducible(B3) == IrreducibleType("B", 3)
    assert finite_order(B3) == 48
    cyc = CoxeterMatrix.from_edges(3, {(0, 1): 3, (1, 2): 3, (0, 2): 3})
    t = recognize_irreducible(cyc)
    assert t.affine and t.name == "~A2"
    a, _ = matrix_bfs(cyc, 8)
    assert a[-1] > a[-2] > 0  # unbounded, no finite group
    D = chain(INF)
    assert recognize_irreducible(D).name == "~A1"
    assert matrix_bfs(D, 5)[0] == [1, 2, 2, 2, 2, 2]


def test_recognize_disconnected_raises():
    with pytest.raises(ValueError):
        recognize_irreducible(CoxeterMatrix.from_rows([[1, 2], [2, 1]]))


@pytest.mark.parametrize(
    "M, name",
    [
        (chain(3, 3, 3), "A4"),
        (chain(4, 3, 3), "B4"),
        (chain(3, 4, 3), "F4"),
        (chain(5, 3), "H3"),
        (chain(5, 3, 3), "H4"),
        (chain(6), "I2(6)"),
        (chain(3), "A2"),
        (chain(4), "B2"),
        (CoxeterMatrix.from_edges(4, {(0, 1): 3, (1, 2): 3, (1, 3): 3}), "D4"),
        (chain(4, 4), "~B2"),
        (chain(6, 3), "~G2"),
        (chain(3, 4, 3, 3), "~F4"),
    ],
)
def test_named_types(M, name):
    assert recognize_irreducible(M).name.replace("~C2", "~B2") == name


def test_classify_examples():
    assert classify(chain(3, 3)).kind == Kind.SPHERICAL
    assert classify(T237).kind == Kind.HYPERBOLIC
    assert classify(E10).kind == Kind.HYPERBOLIC
    assert is_hyperbolic(T237) and is_hyperbolic(E10)
    allinf = CoxeterMatrix.from_rows([[1 if i == j else INF for j in range(4)] for i in range(4)])
    assert not is_hyperbolic(allinf)
    assert classify(allinf).kind == Kind.OTHER


def test_reducible_kinds():
    M = CoxeterMatrix.from_edges(4, {(0, 1): INF, (2, 3): 3})
    c = classify(M)
    assert c.kind == Kind.AFFINE and not c.irreducible
    N = CoxeterMatrix.from_edges(5, {(0, 1): 3, (1, 2): 7, (3, 4): 3})
    assert classify(N).kind == Kind.OTHER


def test_residue_examples():
    assert set(spherical_residues(chain(INF))) == {(), (0,), (1,)}
    assert len(spherical_residues(chain(3))) == 4
    F = spherical_residues(T237)
    assert len(F) == 7 and (0, 1, 2) not in F


def test_gram_signature_examples():
    assert gram_signature_float(chain(3)) == (2, 0, 0)
    assert gram_signature_float(chain(INF)) == (1, 1, 0)
    assert gram_signature_float(E10) == (9, 0, 1)


@given(coxeter_matrices(max_rank=6))
@settings(max_examples=300)
def test_kind_matches_gram_oracle(M):
    assert classify(M).kind.value == oracle_kind(M)


@given(coxeter_matrices(max_rank=6, labels=(2, 3, 4, 5, INF)))
def test_residues_match_gram_oracle(M):
    F = spherical_residues(M)
    assert set(F) == spherical_subsets(M)
    for I in F:
        assert all(t.spherical for t in F.types(I))


def test_enumeration_is_hyperbolic_and_distinct():
    found = enumerate_hyperbolic(4, 6)
    assert len({canonical_key(M) for M in found}) == len(found)
    for M in found:
        assert oracle_kind(M) == "Hyperbolic"
    assert [M.rank for M in found] == sorted(M.rank for M in found)


def test_enumeration_rank10_contains_e10():
    found = enumerate_hyperbolic(10, 10)
    assert canonical_key(E10) in {canonical_key(M) for M in found}


def _brute_min_upper(rows):
    n = len(rows)
    return min(tuple(rows[p[i]][p[j]] for i in range(n) for j in range(i + 1, n)) for p in itertools.permutations(range(n)))


def test_rank4_census_matches_brute_force():
    # ∞ cannot occur at rank >= 4: the rank-3 parabolic through it would be neither spherical nor affine
    labels = (2, 3, 4, 5, 6)
    pairs = [(i, j) for i in range(4) for j in range(i + 1, 4)]
    classes = set()
    for vals in itertools.product(labels, repeat=6):
        M = CoxeterMatrix.from_edges(4, dict(zip(pairs, vals)))
        if oracle_kind(M) == "Hyperbolic":
            classes.add(_brute_min_upper(M.entries))
    ours = {_brute_min_upper(M.entries) for M in enumerate_hyperbolic(4, 4)}
    assert ours == classes
