"""Seeded random Coxeter matrices for the property suites."""

from __future__ import annotations

import random

from coxgrow.coxcore import INF, CoxeterMatrix, GeneratorMap

MONOTONE_LABELS = (2, 3, 4, 5, 6, 7, INF)
MUTATION_LABELS = (2, 3, 4, INF)


def random_matrix(rng: random.Random, rank: int, labels=MONOTONE_LABELS) -> CoxeterMatrix:
    rows = [[1] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(i + 1, rank):
            rows[i][j] = rows[j][i] = rng.choice(labels)
    return CoxeterMatrix.from_rows(rows)


def _up(rng: random.Random, m, labels):
    return rng.choice([x for x in labels if x >= m])


def random_leq_pair(rng: random.Random, max_rank: int = 4, labels=MONOTONE_LABELS):
    """``(M, N, phi)`` with ``phi`` an injection realising ``M <= N``.

    N is built by raising labels of M and optionally adding generators, then
    shuffling its generators so that ``phi`` is not the identity.
    """
    r = rng.randint(1, max_rank)
    R = rng.randint(r, max_rank)
    M = random_matrix(rng, r, labels)
    big = [[1] * R for _ in range(R)]
    for i in range(R):
        for j in range(i + 1, R):
            if j < r:
                m = M.entries[i][j] if rng.random() < 0.5 else _up(rng, M.entries[i][j], labels)
            else:
                m = rng.choice(labels)
            big[i][j] = big[j][i] = m
    perm = list(range(R))
    rng.shuffle(perm)
    rows = [[1] * R for _ in range(R)]
    for i in range(R):
        for j in range(R):
            rows[perm[i]][perm[j]] = big[i][j]
    N = CoxeterMatrix.from_rows(rows)
    return M, N, GeneratorMap(M, N, tuple(perm[i] for i in range(r)))
