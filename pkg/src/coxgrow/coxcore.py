"""Coxeter matrices, parabolic restriction, Coxeter graphs, and label-preserving
isomorphisms.  Generators are 0-indexed; ``INF`` stands for an infinite label.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence, Union

INF = math.inf
Label = Union[int, float]


class CoxFormatError(ValueError):
    """Malformed ``.cox`` text; carries the offending line/column."""

    def __init__(self, msg: str, line: int = 0, col: int = 0):
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(where + msg)
        self.line = line
        self.col = col


class CoxValidationError(ValueError):
    pass


def label_str(m: Label) -> str:
    return "inf" if m == INF else str(m)


def _check_label(m) -> Label:
    if m == INF:
        return INF
    if isinstance(m, bool) or not isinstance(m, int):
        raise CoxValidationError(f"label must be an integer or inf, got {m!r}")
    return m


@dataclass(frozen=True)
class CoxeterMatrix:
    entries: tuple[tuple[Label, ...], ...]
    names: Optional[tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(_check_label(x) for x in row) for row in self.entries)
        object.__setattr__(self, "entries", rows)
        n = len(rows)
        for i, row in enumerate(rows):
            if len(row) != n:
                raise CoxValidationError(f"row {i} has {len(row)} entries, expected {n}")
            if row[i] != 1:
                raise CoxValidationError(f"diagonal entry ({i},{i}) must be 1")
            for j in range(i + 1, n):
                if row[j] != rows[j][i]:
                    raise CoxValidationError(f"asymmetric entries at ({i},{j}) and ({j},{i})")
                if row[j] < 2:
                    raise CoxValidationError(f"off-diagonal entry ({i},{j}) must be >= 2 or inf")
        if self.names is not None:
            names = tuple(self.names)
            if len(names) != n or len(set(names)) != n:
                raise CoxValidationError("names must be distinct, one per generator")
            object.__setattr__(self, "names", names)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], names=None) -> "CoxeterMatrix":
        def conv(x):
            if isinstance(x, str):
                return INF if x in ("inf", "oo", "∞") else int(x)
            return INF if x == INF else x

        return cls(tuple(tuple(conv(x) for x in r) for r in rows), names)

    @classmethod
    def from_edges(cls, rank: int, edges: dict, names=None) -> "CoxeterMatrix":
        """Build from ``{(i, j): m}``; unspecified pairs get label 2."""
        e = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
        for (i, j), m in edges.items():
            e[i][j] = e[j][i] = m
        return cls.from_rows(e, names)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Label:
        i, j = ij
        return self.entries[i][j]

    def name(self, i: int) -> str:
        return self.names[i] if self.names else f"s{i + 1}"

    def edges(self) -> Iterator[tuple[int, int, Label]]:
        """Coxeter graph edges ``(i, j, m)`` with ``i < j`` and ``m >= 3``."""
        n = self.rank
        for i in range(n):
            row = self.entries[i]
            for j in range(i + 1, n):
                if row[j] >= 3:
                    yield i, j, row[j]

    def neighbors(self, i: int) -> list[int]:
        return [j for j, m in enumerate(self.entries[i]) if j != i and m >= 3]

    def upper(self) -> tuple:
        n = self.rank
        return tuple(self.entries[i][j] for j in range(n) for i in range(j))

    def __repr__(self) -> str:
        rows = "; ".join(" ".join(label_str(x) for x in r) for r in self.entries)
        return f"CoxeterMatrix[{rows}]"

    def restrict(self, indices: Sequence[int]) -> "CoxeterMatrix":
        return restrict(self, indices)

    def permuted(self, order: Sequence[int]) -> "CoxeterMatrix":
        """Matrix whose generator ``k`` is this matrix's generator ``order[k]``."""
        e = tuple(tuple(self.entries[a][b] for b in order) for a in order)
        names = tuple(self.name(a) for a in order) if self.names else None
        return CoxeterMatrix(e, names)


EMPTY = CoxeterMatrix(())


@dataclass(frozen=True)
class GeneratorMap:
    """Injective map of generators ``source -> target`` (``image[i]`` is the target index)."""

    source: CoxeterMatrix
    target: CoxeterMatrix
    image: tuple[int, ...]

    def __post_init__(self):
        if len(self.image) != self.source.rank:
            raise ValueError("image must list one target per source generator")
        if len(set(self.image)) != len(self.image):
            raise ValueError("generator map must be injective")
        if any(not 0 <= k < self.target.rank for k in self.image):
            raise ValueError("image index out of range")

    def __call__(self, i: int) -> int:
        return self.image[i]

    def preserves_labels(self) -> bool:
        s, t, im = self.source, self.target, self.image
        return all(s[i, j] == t[im[i], im[j]] for i in range(s.rank) for j in range(s.rank))

    def dominated(self) -> bool:
        """Entrywise ``m[i,j] <= m'[phi(i), phi(j)]`` (the order relation)."""
        s, t, im = self.source, self.target, self.image
        return all(s[i, j] <= t[im[i], im[j]] for i in range(s.rank) for j in range(s.rank))

    def inverse(self) -> "GeneratorMap":
        if self.source.rank != self.target.rank:
            raise ValueError("only bijections can be inverted")
        inv = [0] * len(self.image)
        for i, k in enumerate(self.image):
            inv[k] = i
        return GeneratorMap(self.target, self.source, tuple(inv))

    def compose(self, other: "GeneratorMap") -> "GeneratorMap":
        """``self ∘ other`` (apply ``other`` first)."""
        return GeneratorMap(other.source, self.target, tuple(self.image[k] for k in other.image))

    def cycle_notation(self) -> str:
        seen, parts = set(), []
        for i in range(len(self.image)):
            if i in seen or self.image[i] == i:
                continue
            cyc, k = [], i
            while k not in seen:
                seen.add(k)
                cyc.append(str(k + 1))
                k = self.image[k]
            parts.append("(" + " ".join(cyc) + ")")
        return "".join(parts) or "()"


# -- parsing / serialization --------------------------------------------


def parse_matrix(text: str) -> CoxeterMatrix:
    """Parse the ``.cox`` text format."""
    rank = None
    names = None
    rows: list[list[Label]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = line.split()
        col = raw.index(tokens[0]) + 1
        if rank is None:
            if tokens[0] != "coxrank" or len(tokens) != 2:
                raise CoxFormatError("expected 'coxrank N'", lineno, col)
            try:
                rank = int(tokens[1])
            except ValueError:
                raise CoxFormatError(f"bad rank {tokens[1]!r}", lineno, raw.index(tokens[1]) + 1)
            if rank < 1:
                raise CoxFormatError("rank must be >= 1", lineno, col)
            continue
        if tokens[0] == "names":
            if names is not None or rows:
                raise CoxFormatError("names line must come once, before the matrix", lineno, col)
            names = tuple(tokens[1:])
            if len(names) != rank:
                raise CoxFormatError(f"expected {rank} names, got {len(names)}", lineno, col)
            continue
        if len(rows) == rank:
            raise CoxFormatError("too many matrix rows", lineno, col)
        if len(tokens) != rank:
            raise CoxFormatError(f"expected {rank} entries, got {len(tokens)}", lineno, col)
        row: list[Label] = []
        pos = 0
        for tok in tokens:
            c = raw.index(tok, pos) + 1
            pos = c - 1 + len(tok)
            if tok == "inf":
                row.append(INF)
            elif tok.isdigit():
                v = int(tok)
                if v < 1:
                    raise CoxFormatError(f"entry must be >= 1, got {tok}", lineno, c)
                row.append(v)
            else:
                raise CoxFormatError(f"bad entry {tok!r}", lineno, c)
        rows.append(row)
    if rank is None:
        raise CoxFormatError("missing 'coxrank' header")
    if len(rows) != rank:
        raise CoxFormatError(f"expected {rank} matrix rows, got {len(rows)}")
    try:
        return CoxeterMatrix(tuple(tuple(r) for r in rows), names)
    except CoxValidationError as e:
        raise CoxValidationError(f"invalid Coxeter matrix: {e}") from None


def serialize_matrix(M: CoxeterMatrix) -> str:
    lines = [f"coxrank {M.rank}"]
    if M.names:
        lines.append("names " + " ".join(M.names))
    for row in M.entries:
        lines.append(" ".join(label_str(x) for x in row))
    return "\n".join(lines) + "\n"


def load_matrix(path) -> CoxeterMatrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


# -- subsystems and graph structure ------------------------------------


def restrict(M: CoxeterMatrix, indices: Sequence[int]) -> CoxeterMatrix:
    idx = tuple(indices)
    if list(idx) != sorted(set(idx)):
        raise ValueError("generator subset must be strictly increasing")
    if idx and not (0 <= idx[0] and idx[-1] < M.rank):
        raise IndexError(f"generator subset {idx} out of range for rank {M.rank}")
    e = tuple(tuple(M.entries[a][b] for b in idx) for a in idx)
    names = tuple(M.names[a] for a in idx) if M.names else None
    return CoxeterMatrix(e, names)


def components(M: CoxeterMatrix, within: Optional[Sequence[int]] = None) -> list[tuple[int, ...]]:
    """Connected components of the Coxeter graph (optionally of the subgraph on ``within``)."""
    verts = list(range(M.rank)) if within is None else list(within)
    vs = set(verts)
    seen: set[int] = set()
    out = []
    for v in verts:
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        stack = [v]
        while stack:
            x = stack.pop()
            row = M.entries[x]
            for y in vs:
                if y not in seen and row[y] >= 3:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        out.append(tuple(sorted(comp)))
    out.sort()
    return out


def is_connected(M: CoxeterMatrix, within: Optional[Sequence[int]] = None) -> bool:
    return len(components(M, within)) <= 1


# -- isomorphism --------------------------------------------------------


def _invariant(M: CoxeterMatrix, i: int) -> tuple:
    row = [m for j, m in enumerate(M.entries[i]) if j != i]
    return (sum(1 for m in row if m >= 3), tuple(sorted(row)))


def _iso_search(M: CoxeterMatrix, N: CoxeterMatrix, first_only: bool) -> list[tuple[int, ...]]:
    n = M.rank
    if N.rank != n:
        return []
    inv_m = [_invariant(M, i) for i in range(n)]
    inv_n = [_invariant(N, i) for i in range(n)]
    if sorted(inv_m) != sorted(inv_n):
        return []
    # assign most constrained (rarest invariant) vertices first
    freq: dict = {}
    for x in inv_m:
        freq[x] = freq.get(x, 0) + 1
    order = sorted(range(n), key=lambda i: (freq[inv_m[i]], i))
    image = [-1] * n
    used = [False] * n
    found: list[tuple[int, ...]] = []

    def extend(k: int) -> bool:
        if k == n:
            found.append(tuple(image))
            return first_only
        i = order[k]
        for c in range(n):
            if used[c] or inv_n[c] != inv_m[i]:
                continue
            if all(M.entries[i][order[p]] == N.entries[c][image[order[p]]] for p in range(k)):
                image[i] = c
                used[c] = True
                if extend(k + 1):
                    return True
                used[c] = False
                image[i] = -1
        return False

    extend(0)
    return found


def coxeter_isomorphic(M: CoxeterMatrix, N: CoxeterMatrix) -> Optional[GeneratorMap]:
    """A label-preserving bijection ``M -> N`` if one exists."""
    found = _iso_search(M, N, first_only=True)
    if not found:
        return None
    phi = GeneratorMap(M, N, found[0])
    assert phi.preserves_labels()
    return phi


def automorphisms(M: CoxeterMatrix) -> list[GeneratorMap]:
    """All label-preserving permutations of the generators, identity first."""
    perms = sorted(_iso_search(M, M, first_only=False))
    return [GeneratorMap(M, M, p) for p in perms]


# -- canonical form ---------------------------------------------------


def _refined_colors(M: CoxeterMatrix, verts: Sequence[int]) -> dict[int, int]:
    color = {v: _invariant(M, v) for v in verts}
    ncolors = len(set(color.values()))
    while True:
        sig = {
            v: (color[v], tuple(sorted((M.entries[v][u], color[u]) for u in verts if u != v)))
            for v in verts
        }
        keys = sorted(set(sig.values()))
        rank = {k: i for i, k in enumerate(keys)}
        new = {v: rank[sig[v]] for v in verts}
        if len(keys) == ncolors:
            return new
        color, ncolors = new, len(keys)


def _sortable(m: Label) -> int:
    return 10**9 if m == INF else int(m)


def _canonical_connected(M: CoxeterMatrix, verts: Sequence[int]) -> tuple[tuple, list[int]]:
    color = _refined_colors(M, verts)
    n = len(verts)
    best: list = [None, None]

    def rec(order: list[int], seq: list[int], rest: list[int]):
        if not rest:
            if best[0] is None or seq < best[0]:
                best[0], best[1] = list(seq), list(order)
            return
        cmin = min(color[v] for v in rest)
        for v in rest:
            if color[v] != cmin:
                continue
            col = [_sortable(M.entries[u][v]) for u in order]
            new = seq + col
            if best[0] is not None and new > best[0][: len(new)]:
                continue
            rec(order + [v], new, [u for u in rest if u != v])

    rec([], [], sorted(verts))
    assert best[1] is not None and len(best[1]) == n
    return tuple(best[0]), best[1]


def canonical_order(M: CoxeterMatrix) -> list[int]:
    """A vertex ordering that depends only on the isomorphism class of ``M``.

    Components are canonicalised separately (colour refinement, then a
    branch-and-bound search for the lexicographically least upper-triangular
    label sequence) and concatenated in sorted order.
    """
    parts = []
    for comp in components(M):
        key, order = _canonical_connected(M, comp)
        parts.append((len(comp), key, order))
    parts.sort(key=lambda p: (p[0], p[1]))
    return [v for _, _, order in parts for v in order]


def canonical_form(M: CoxeterMatrix) -> CoxeterMatrix:
    return M.permuted(canonical_order(M))


def canonical_key(M: CoxeterMatrix) -> tuple:
    """Hashable isomorphism-class key: rank plus the canonical upper-triangular sequence."""
    C = canonical_form(M)
    return (C.rank, tuple(_sortable(x) for x in C.upper()))


def subsets(n: int, sizes: Optional[Iterable[int]] = None) -> Iterator[tuple[int, ...]]:
    for k in (range(n + 1) if sizes is None else sizes):
        yield from combinations(range(n), k)
