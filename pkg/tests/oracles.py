"""Independent reference implementations used only by the tests.

Nothing here imports the library's algorithms: groups are realised by
floating-point reflection matrices, isomorphism and the order by brute force
over permutations, and the type of a system by its Gram signature.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from coxgrow.coxcore import INF, CoxeterMatrix


def _gram(M: CoxeterMatrix) -> np.ndarray:
    n = M.rank
    B = np.eye(n)
    for i in range(n):
        for j in range(n):
            if i != j:
                m = M.entries[i][j]
                B[i, j] = -1.0 if m == INF else -math.cos(math.pi / m)
    return B


def reflections(M: CoxeterMatrix) -> list[np.ndarray]:
    """Matrices of the simple reflections in the geometric representation."""
    B = _gram(M)
    n = M.rank
    out = []
    for s in range(n):
        R = np.eye(n)
        R[s, :] -= 2 * B[s, :]
        out.append(R)
    return out


def _key(A: np.ndarray) -> bytes:
    # "+ 0.0" folds -0.0 into 0.0 so equal matrices hash alike
    return (np.round(A, 6) + 0.0).tobytes()


def matrix_bfs(M: CoxeterMatrix, n: int, limit: int = 200_000):
    """``(spheres, words)`` by BFS on matrices; ``words`` maps element keys to
    ShortLex-least words (levels expanded in ShortLex order)."""
    gens = reflections(M)
    I = np.eye(M.rank)
    seen = {_key(I): ()}
    level = [((), I)]
    sizes = [1]
    for _ in range(n):
        nxt = []
        for w, A in level:
            for s, R in enumerate(gens):
                B = A @ R
                k = _key(B)
                if k not in seen:
                    seen[k] = w + (s,)
                    nxt.append((w + (s,), B))
        if not nxt:
            break
        nxt.sort(key=lambda x: x[0])
        sizes.append(len(nxt))
        level = nxt
        if len(seen) > limit:
            raise RuntimeError("oracle limit")
    sizes += [0] * (n + 1 - len(sizes))
    return sizes, seen


def element_key(M: CoxeterMatrix, word) -> bytes:
    A = np.eye(M.rank)
    gens = reflections(M)
    for s in word:
        A = A @ gens[s]
    return _key(A)


def finite_order(M: CoxeterMatrix, limit: int = 200_000) -> int:
    sizes, seen = matrix_bfs(M, 10**6, limit)
    return len(seen)


def signature(M: CoxeterMatrix, tol: float = 1e-9) -> tuple[int, int, int]:
    ev = np.linalg.eigvalsh(_gram(M)) if M.rank else np.array([])
    return int((ev > tol).sum()), int((abs(ev) <= tol).sum()), int((ev < -tol).sum())


def _restrict(M: CoxeterMatrix, I) -> CoxeterMatrix:
    return CoxeterMatrix.from_rows([[M.entries[i][j] for j in I] for i in I])


def connected(M: CoxeterMatrix, I) -> bool:
    I = list(I)
    if not I:
        return False
    reach, stack = {I[0]}, [I[0]]
    while stack:
        v = stack.pop()
        for u in I:
            if u not in reach and M.entries[u][v] != 2:
                reach.add(u)
                stack.append(u)
    return len(reach) == len(I)


def _blocks(M: CoxeterMatrix, I):
    left = list(I)
    while left:
        comp = [left[0]]
        for v in comp:
            for u in left:
                if u not in comp and M.entries[u][v] != 2:
                    comp.append(u)
        yield sorted(comp)
        left = [v for v in left if v not in comp]


def block_kind(M: CoxeterMatrix, I) -> str:
    """Gram-signature type of a connected subset: S, A or other."""
    p, z, m = signature(_restrict(M, I))
    if z == 0 and m == 0:
        return "S"
    if z == 1 and m == 0:
        return "A"
    return "X"


def oracle_kind(M: CoxeterMatrix) -> str:
    """Spherical / Affine / Hyperbolic / Other straight from definitions."""
    kinds = [block_kind(M, b) for b in _blocks(M, range(M.rank))]
    if all(k == "S" for k in kinds):
        return "Spherical"
    if len(kinds) > 1:
        return "Affine" if all(k in "SA" for k in kinds) else "Other"
    if kinds[0] == "A":
        return "Affine"
    for x in range(M.rank):
        rest = [v for v in range(M.rank) if v != x]
        if any(block_kind(M, b) == "X" for b in _blocks(M, rest)):
            return "Other"
    return "Hyperbolic"


def spherical_subsets(M: CoxeterMatrix) -> set:
    out = set()
    for k in range(M.rank + 1):
        for I in itertools.combinations(range(M.rank), k):
            if all(block_kind(M, b) == "S" for b in _blocks(M, I)):
                out.add(I)
    return out


def brute_isomorphic(M: CoxeterMatrix, N: CoxeterMatrix) -> bool:
    if M.rank != N.rank:
        return False
    n = M.rank
    return any(
        all(M.entries[i][j] == N.entries[p[i]][p[j]] for i in range(n) for j in range(n))
        for p in itertools.permutations(range(n))
    )


def brute_automorphism_count(M: CoxeterMatrix) -> int:
    n = M.rank
    return sum(
        all(M.entries[i][j] == M.entries[p[i]][p[j]] for i in range(n) for j in range(n))
        for p in itertools.permutations(range(n))
    )


def brute_leq(M: CoxeterMatrix, N: CoxeterMatrix) -> bool:
    n = M.rank
    return any(
        all(M.entries[i][j] <= N.entries[p[i]][p[j]] for i in range(n) for j in range(n) if i != j)
        for p in itertools.permutations(range(N.rank), n)
    )


def dfs_reduced_word_count(M: CoxeterMatrix, word) -> int:
    """Count reduced words by peeling right descents (matrix arithmetic)."""
    sizes, table = matrix_bfs(M, len(word))
    length = {k: len(w) for k, w in table.items()}
    gens = reflections(M)
    memo = {}

    def count(A):
        k = _key(A)
        if length[k] == 0:
            return 1
        if k in memo:
            return memo[k]
        tot = 0
        for R in gens:
            B = A @ R
            kb = _key(B)
            if kb in length and length[kb] == length[k] - 1:
                tot += count(B)
        memo[k] = tot
        return tot

    A = np.eye(M.rank)
    for s in word:
        A = A @ gens[s]
    return count(A)
