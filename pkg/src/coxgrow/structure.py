"""The order relation on Coxeter systems, the length-monotonicity harness,
mutations, twist recognition and the series-invariance harness.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Mapping, Optional, Sequence, Union

from .classify import IrreducibleType, _arm, _nbrs, _path_order, component_types, spherical_residues
from .coxcore import (
    INF,
    CoxeterMatrix,
    GeneratorMap,
    automorphisms,
    canonical_key,
    components,
    coxeter_isomorphic,
    restrict,
)
from .growth import poincare
from .words import build_ball


# -- the order relation ---------------------------------------------------------


def leq_order(M: CoxeterMatrix, N: CoxeterMatrix) -> Optional[GeneratorMap]:
    """An injection ``phi`` with ``m[i,j] <= n[phi(i), phi(j)]`` for all ``i, j``."""
    n, r = M.rank, N.rank
    if n > r:
        return None
    rows_m = [sorted((M.entries[i][j] for j in range(n) if j != i), reverse=True) for i in range(n)]
    rows_n = [sorted((N.entries[c][j] for j in range(r) if j != c), reverse=True) for c in range(r)]

    def row_ok(i: int, c: int) -> bool:
        return all(a <= b for a, b in zip(rows_m[i], rows_n[c]))

    cand = [[c for c in range(r) if row_ok(i, c)] for i in range(n)]
    order = sorted(range(n), key=lambda i: (len(cand[i]), -sum(min(x, 100) for x in rows_m[i]), i))
    image = [-1] * n
    used = [False] * r

    def extend(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for c in cand[i]:
            if used[c]:
                continue
            if all(M.entries[i][order[p]] <= N.entries[c][image[order[p]]] for p in range(k)):
                image[i] = c
                used[c] = True
                if extend(k + 1):
                    return True
                used[c] = False
        image[i] = -1
        return False

    if not extend(0):
        return None
    phi = GeneratorMap(M, N, tuple(image))
    assert phi.dominated()
    return phi


def minimal_elements(items: Sequence[CoxeterMatrix]) -> list[CoxeterMatrix]:
    """Members with no other member strictly below them (inputs pairwise non-isomorphic)."""
    out = []
    for i, m in enumerate(items):
        below = False
        for j, other in enumerate(items):
            if i != j and other.rank <= m.rank and leq_order(other, m) is not None:
                below = True
                break
        if not below:
            out.append(m)
    return out


@dataclass
class ThmAReport:
    a_source: list[int]
    a_target: list[int]
    monotone: bool
    injective: bool
    length_preserving: bool
    elements: int
    counterexample: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.monotone and self.injective and self.length_preserving

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "a_source": self.a_source,
            "a_target": self.a_target,
            "monotone": self.monotone,
            "eta_injective": self.injective,
            "theta_length_preserving": self.length_preserving,
            "elements_checked": self.elements,
            "counterexample": self.counterexample,
        }


def verify_thm_a(
    M: CoxeterMatrix, N: CoxeterMatrix, phi: GeneratorMap, k_max: int, method: str = "tits"
) -> ThmAReport:
    """Compare sphere sizes and materialise the map from the ball of ``M`` into ``W(N)``.

    Each element of ``B_k(M)`` is sent to the element of ``W(N)`` spelled by
    its normal form with letters transported through ``phi``.
    """
    if phi.source.entries != M.entries or phi.target.entries != N.entries or not phi.dominated():
        raise ValueError("phi does not realise M <= N")
    bm = build_ball(M, k_max, method)
    bn = build_ball(N, k_max, method)
    a = (bm.sizes() + [0] * (k_max + 1))[: k_max + 1]
    a2 = (bn.sizes() + [0] * (k_max + 1))[: k_max + 1]
    monotone = all(x <= y for x, y in zip(a, a2))
    seen: dict[int, int] = {}
    injective = True
    length_ok = True
    bad = None
    for x, word in enumerate(bm.words):
        y = bn.evaluate(tuple(phi.image[s] for s in word))
        if bn.length(y) != len(word):
            length_ok = False
            bad = bad or f"length of {word} drops to {bn.length(y)}"
        if y in seen:
            injective = False
            bad = bad or f"{bm.words[seen[y]]} and {word} collide"
        seen[y] = x
    if not monotone:
        k = next(i for i in range(k_max + 1) if a[i] > a2[i])
        bad = bad or f"a_{k} = {a[k]} > {a2[k]}"
    return ThmAReport(a, a2, monotone, injective, length_ok, len(bm.words), bad)


# -- mutations ---------------------------------------------------------------------


class InvalidTupleError(ValueError):
    """A 4-tuple failing one of the mutability conditions; ``condition`` names it."""

    def __init__(self, condition: str, msg: str):
        super().__init__(f"[{condition}] {msg}")
        self.condition = condition


SigmaLike = Union[Mapping[int, int], Sequence[int], GeneratorMap]


@dataclass(frozen=True)
class MutableTuple:
    M: CoxeterMatrix
    X: tuple[int, ...]
    Y: tuple[int, ...]
    sigma: tuple[tuple[int, int], ...]  # sorted pairs (x, sigma(x)) over X
    T: tuple[int, ...]
    Z: tuple[int, ...]

    @property
    def smap(self) -> dict[int, int]:
        return dict(self.sigma)

    @property
    def sinv(self) -> dict[int, int]:
        return {v: k for k, v in self.sigma}

    @property
    def trivial(self) -> bool:
        return all(a == b for a, b in self.sigma)

    def sigma_cycles(self) -> str:
        m = self.smap
        seen, parts = set(), []
        for x in self.X:
            if x in seen or m[x] == x:
                continue
            cyc, k = [], x
            while k not in seen:
                seen.add(k)
                cyc.append(str(k + 1))
                k = m[k]
            parts.append("(" + " ".join(cyc) + ")")
        return "".join(parts) or "()"

    def to_dict(self) -> dict:
        one = lambda s: [i + 1 for i in s]  # noqa: E731
        return {
            "X": one(self.X),
            "Y": one(self.Y),
            "T": one(self.T),
            "Z": one(self.Z),
            "sigma": self.sigma_cycles(),
        }


def _sigma_dict(M: CoxeterMatrix, X: tuple[int, ...], sigma: SigmaLike) -> dict[int, int]:
    if isinstance(sigma, GeneratorMap):
        return {X[i]: X[j] for i, j in enumerate(sigma.image)}
    if isinstance(sigma, Mapping):
        m = {x: x for x in X}
        m.update({int(k): int(v) for k, v in sigma.items()})
        return m
    seq = list(sigma)
    if len(seq) == len(X) and sorted(seq) == list(range(len(X))):
        return {X[i]: X[j] for i, j in enumerate(seq)}
    if len(seq) == M.rank:
        return {x: seq[x] for x in X}
    raise ValueError("sigma must be a mapping, a permutation of range(|X|), or a full image list")


def make_mutable(M: CoxeterMatrix, X: Iterable[int], Y: Iterable[int], sigma: SigmaLike) -> MutableTuple:
    X = tuple(sorted(set(X)))
    Y = tuple(sorted(set(Y)))
    if not X or not Y:
        raise InvalidTupleError("nonempty", "X and Y must both be nonempty")
    if set(X) & set(Y):
        raise InvalidTupleError("disjoint", "X and Y must be disjoint")
    if any(not 0 <= v < M.rank for v in X + Y):
        raise InvalidTupleError("range", "generator index out of range")
    s = _sigma_dict(M, X, sigma)
    if set(s) != set(X) or sorted(s.values()) != list(X):
        raise InvalidTupleError("automorphism", "sigma must permute X")
    for a in X:
        for b in X:
            if M.entries[s[a]][s[b]] != M.entries[a][b]:
                raise InvalidTupleError(
                    "automorphism", f"sigma does not preserve m({a + 1},{b + 1}) in M_X"
                )
    T, Z = [], []
    for r in range(M.rank):
        if r in X or r in Y:
            continue
        inf = [M.entries[r][y] == INF for y in Y]
        if all(inf):
            T.append(r)
        elif not any(inf):
            Z.append(r)
        else:
            raise InvalidTupleError(
                "(i)/(ii)",
                f"generator {r + 1} has both finite and infinite labels to Y, so it lies in neither T nor Z",
            )
    for z in Z:
        for x in X:
            if M.entries[z][s[x]] != M.entries[z][x]:
                raise InvalidTupleError(
                    "(iii)", f"m({z + 1},{s[x] + 1}) != m({z + 1},{x + 1}) for z = {z + 1} in Z"
                )
    return MutableTuple(M, X, Y, tuple(sorted(s.items())), tuple(T), tuple(Z))


def mutate(tup: MutableTuple) -> CoxeterMatrix:
    M, s = tup.M, tup.smap
    X, Y = set(tup.X), set(tup.Y)
    n = M.rank
    e = [list(r) for r in M.entries]
    for r in X:
        for y in Y:
            e[r][y] = e[y][r] = M.entries[s[r]][y]
        for q in X:
            e[r][q] = M.entries[s[r]][s[q]]
    return CoxeterMatrix(tuple(tuple(row) for row in e), M.names)


def inverse(tup: MutableTuple) -> MutableTuple:
    """The inverse tuple ``(N, X, Y, sigma^-1)`` on the mutated matrix."""
    return make_mutable(mutate(tup), tup.X, tup.Y, tup.sinv)


def enumerate_mutable(M: CoxeterMatrix, effective_only: bool = False) -> list[MutableTuple]:
    """All valid tuples with nonempty disjoint X, Y and nontrivial sigma.

    Ordered by (X, Y, sigma as an image sequence).
    """
    n = M.rank
    out = []
    auts: dict[tuple, list] = {}
    for assign in product((0, 1, 2), repeat=n):
        X = tuple(i for i in range(n) if assign[i] == 1)
        Y = tuple(i for i in range(n) if assign[i] == 2)
        if not X or not Y:
            continue
        if X not in auts:
            auts[X] = [g for g in automorphisms(restrict(M, X)) if list(g.image) != list(range(len(X)))]
        for g in auts[X]:
            try:
                tup = make_mutable(M, X, Y, g)
            except InvalidTupleError:
                continue
            if effective_only and coxeter_isomorphic(M, mutate(tup)) is not None:
                continue
            out.append(tup)
    out.sort(key=lambda t: (t.X, t.Y, tuple(v for _, v in t.sigma)))
    return out


# -- twists ------------------------------------------------------------------------


def opposition_involution(M: CoxeterMatrix, within: Optional[Sequence[int]] = None) -> dict[int, int]:
    """Generator permutation induced by conjugation with the longest element.

    Table: reversal for A(n) and I2(odd m), swap of the two short arms for
    D(odd n), the diagram symmetry for E6, identity otherwise.
    """
    verts = tuple(range(M.rank)) if within is None else tuple(within)
    out = {v: v for v in verts}
    for comp in components(M, verts):
        types = component_types(M, comp)
        T: IrreducibleType = types[0]
        if not T.spherical:
            raise ValueError(f"component {comp} is not spherical")
        if T.family == "A" or (T.family == "I" and int(T.param) % 2 == 1):
            order = _path_order(M, comp) if len(comp) > 1 else list(comp)
            for a, b in zip(order, reversed(order)):
                out[a] = b
        elif T.family == "D" and T.n % 2 == 1:
            c = next(v for v in comp if len(_nbrs(M, v, comp)) == 3)
            arms = sorted((_arm(M, u, c, comp) for u in _nbrs(M, c, comp)), key=len)
            a, b = arms[0][0], arms[1][0]
            out[a], out[b] = b, a
        elif T.family == "E" and T.n == 6:
            c = next(v for v in comp if len(_nbrs(M, v, comp)) == 3)
            arms = sorted((_arm(M, u, c, comp) for u in _nbrs(M, c, comp)), key=len)
            for a, b in zip(arms[1], arms[2]):
                out[a], out[b] = b, a
    return out


def opposition_by_bfs(M: CoxeterMatrix) -> dict[int, int]:
    """Same permutation computed from the longest element of a finite group."""
    ball = build_ball(M, 10**6, "roots")
    if not ball.complete:
        raise ValueError("group is infinite")
    w0 = ball.words[ball.levels[-2][0]]
    out = {}
    for s in range(M.rank):
        x = ball.evaluate(w0 + (s,) + w0)
        w = ball.words[x]
        if len(w) != 1:
            raise AssertionError("conjugate of a generator by w0 is not a generator")
        out[s] = w[0]
    return out


def is_twist(tup: MutableTuple) -> bool:
    M = tup.M
    MX = restrict(M, tup.X)
    if not all(T.spherical for T in component_types(MX)):
        return False
    opp = opposition_involution(MX)
    s = tup.smap
    if any(tup.X[opp[i]] != s[x] for i, x in enumerate(tup.X)):
        return False
    return all(M.entries[z][x] == 2 for z in tup.Z for x in tup.X)


# -- series invariance -------------------------------------------------------------


@dataclass
class ThmCReport:
    sharp_bijective: bool
    types_preserved: bool
    series_equal: bool
    residues: int
    coxeter_isomorphic: Optional[bool] = None
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.sharp_bijective and self.types_preserved and self.series_equal

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "sharp_bijective": self.sharp_bijective,
            "types_preserved": self.types_preserved,
            "series_equal": self.series_equal,
            "spherical_residues": self.residues,
            "coxeter_isomorphic": self.coxeter_isomorphic,
            "failures": self.failures[:10],
        }


def sharp(tup: MutableTuple, I: Sequence[int]) -> tuple[int, ...]:
    """Image of a spherical subset; ``sigma^-1`` acts on X when I meets Y."""
    if not set(I) & set(tup.Y):
        return tuple(I)
    si = tup.sinv
    return tuple(sorted(si[r] if r in si else r for r in I))


def verify_thm_c(tup: MutableTuple, check_isomorphism: bool = False) -> ThmCReport:
    M = tup.M
    N = mutate(tup)
    FM = spherical_residues(M)
    FN = spherical_residues(N)
    images = {}
    failures = []
    types_ok = True
    for I in FM:
        J = sharp(tup, I)
        images[I] = J
        if J not in FN:
            failures.append(f"{I} maps to non-spherical {J}")
            types_ok = False
            continue
        # the explicit correspondence must preserve every label
        psi = dict(zip(I, J)) if not set(I) & set(tup.Y) else {r: tup.sinv.get(r, r) for r in I}
        if any(M.entries[a][b] != N.entries[psi[a]][psi[b]] for a in I for b in I):
            failures.append(f"labels differ between M_{I} and N_{J}")
            types_ok = False
    bij = len(set(images.values())) == len(images) == len(FN)
    if not bij:
        failures.append("sharp map is not a bijection onto the spherical residues of N")
    series = poincare(M) == poincare(N)
    iso = None
    if check_isomorphism:
        iso = coxeter_isomorphic(M, N) is not None
    return ThmCReport(bij, types_ok, series, len(FM), iso, failures)


def mutation_class(M: CoxeterMatrix, depth: int = 3, limit: int = 10_000) -> list[CoxeterMatrix]:
    """Matrices reachable by at most ``depth`` effective mutations, one per isomorphism class."""
    seen = {canonical_key(M): M}
    queue = deque([(M, 0)])
    while queue:
        A, d = queue.popleft()
        if d == depth:
            continue
        for tup in enumerate_mutable(A):
            B = mutate(tup)
            k = canonical_key(B)
            if k not in seen:
                seen[k] = B
                if len(seen) >= limit:
                    return list(seen.values())
                queue.append((B, d + 1))
    return list(seen.values())
