"""Words over the generators, braid moves, Tits' reduction test, ShortLex
normal forms, and the breadth-first sphere oracle.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Sequence

from .coxcore import INF, CoxeterMatrix

Word = tuple[int, ...]

DEFAULT_CLOSURE_CAP = 10**6
DEFAULT_BFS_CAP = 10**7


class ResourceError(RuntimeError):
    """A closure or BFS cap was exceeded."""


def alternating_word(s: int, t: int, m) -> Word:
    if m == INF:
        raise ValueError("no alternating word of infinite length")
    if s == t:
        raise ValueError("alternating word needs two distinct generators")
    return tuple(s if i % 2 == 0 else t for i in range(int(m)))


@lru_cache(maxsize=256)
def _braids(M: CoxeterMatrix) -> dict[int, list[tuple[int, Word, Word]]]:
    """For each first letter s: list of (m, lhs, rhs) finite braid moves."""
    table: dict[int, list] = {s: [] for s in range(M.rank)}
    for s in range(M.rank):
        for r in range(M.rank):
            m = M.entries[s][r]
            if r != s and m != INF:
                table[s].append((m, alternating_word(s, r, m), alternating_word(r, s, m)))
    return table


def m2_neighbors(M: CoxeterMatrix, w: Sequence[int]) -> list[Word]:
    """All words one braid move away from ``w``."""
    w = tuple(w)
    table = _braids(M)
    out = set()
    n = len(w)
    for i in range(n):
        for m, lhs, rhs in table[w[i]]:
            if i + m <= n and w[i : i + m] == lhs:
                out.add(w[:i] + rhs + w[i + m :])
    return sorted(out)


def _closure_iter(M: CoxeterMatrix, w: Word, cap: int) -> Iterator[Word]:
    seen = {w}
    queue = deque([w])
    while queue:
        x = queue.popleft()
        yield x
        for y in m2_neighbors(M, x):
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise ResourceError(f"braid closure exceeded {cap} words")
                queue.append(y)


def _square_at(w: Word) -> int:
    for i in range(len(w) - 1):
        if w[i] == w[i + 1]:
            return i
    return -1


def braid_closure(M: CoxeterMatrix, w: Sequence[int], cap: int = DEFAULT_CLOSURE_CAP) -> list[Word]:
    return sorted(_closure_iter(M, tuple(w), cap))


def is_reduced(M: CoxeterMatrix, w: Sequence[int], cap: int = DEFAULT_CLOSURE_CAP) -> bool:
    return all(_square_at(x) < 0 for x in _closure_iter(M, tuple(w), cap))


def _check_letters(M: CoxeterMatrix, w: Sequence[int]) -> Word:
    w = tuple(w)
    for x in w:
        if not 0 <= x < M.rank:
            raise ValueError(f"letter {x} out of range for rank {M.rank}")
    return w


def normal_form(M: CoxeterMatrix, w: Sequence[int], cap: int = DEFAULT_CLOSURE_CAP) -> Word:
    """ShortLex-least reduced word of the element represented by ``w``."""
    w = _check_letters(M, w)
    while True:
        best = None
        for x in _closure_iter(M, w, cap):
            i = _square_at(x)
            if i >= 0:
                w = x[:i] + x[i + 2 :]
                break
            if best is None or x < best:
                best = x
        else:
            return best if best is not None else ()


def multiply(M: CoxeterMatrix, a: Sequence[int], b: Sequence[int], cap: int = DEFAULT_CLOSURE_CAP) -> Word:
    return normal_form(M, tuple(a) + tuple(b), cap)


def inverse_word(w: Sequence[int]) -> Word:
    return tuple(reversed(tuple(w)))


def reduced_words(M: CoxeterMatrix, w: Sequence[int], cap: int = DEFAULT_CLOSURE_CAP) -> list[Word]:
    """Every reduced word of the element of ``w`` (which must itself be reduced)."""
    words = braid_closure(M, _check_letters(M, w), cap)
    if any(_square_at(x) >= 0 for x in words):
        raise ValueError("word is not reduced")
    return words


def format_word(w: Sequence[int], M: Optional[CoxeterMatrix] = None) -> str:
    if not w:
        return "e"
    return " ".join(M.name(x) if M is not None else str(x) for x in w)


# -- breadth-first ball --------------------------------------------------


@dataclass
class Ball:
    """Elements of length <= radius, keyed by ShortLex normal form.

    ``right[x][s]`` is the id of ``x*s`` whenever that element lies in the
    ball; ``descents[x]`` is the right descent set.
    """

    M: CoxeterMatrix
    radius: int
    words: list[Word] = field(default_factory=list)
    index: dict = field(default_factory=dict)
    levels: list[list[int]] = field(default_factory=list)
    right: list[dict] = field(default_factory=list)
    descents: list[frozenset] = field(default_factory=list)

    def _add(self, word: Word, desc: frozenset) -> int:
        i = len(self.words)
        self.words.append(word)
        self.index[word] = i
        self.right.append({})
        self.descents.append(desc)
        return i

    def sizes(self) -> list[int]:
        return [len(lv) for lv in self.levels]

    def length(self, x: int) -> int:
        return len(self.words[x])

    def evaluate(self, w: Sequence[int]) -> int:
        """Element id of a word of length <= radius."""
        x = 0
        for s in w:
            x = self.right[x][s]
        return x

    @property
    def complete(self) -> bool:
        """True if the group is finite and fully enumerated."""
        return bool(self.levels) and not self.levels[-1]


def _ball_tits(M: CoxeterMatrix, n: int, bfs_cap: int, closure_cap: int) -> Ball:
    ball = Ball(M, n)
    ball._add((), frozenset())
    ball.levels.append([0])
    total = 1
    for _k in range(n):
        seen: dict[Word, int] = {}
        layer = []
        for x in ball.levels[-1]:
            base = ball.words[x]
            for s in range(M.rank):
                if s in ball.descents[x]:
                    continue
                cand = base + (s,)
                u = seen.get(cand)
                if u is None:
                    closure = list(_closure_iter(M, cand, closure_cap))
                    u = ball._add(min(closure), frozenset(c[-1] for c in closure))
                    for c in closure:
                        seen[c] = u
                    layer.append(u)
                    total += 1
                    if total > bfs_cap:
                        raise ResourceError(f"BFS exceeded {bfs_cap} elements")
                ball.right[x][s] = u
                ball.right[u][s] = x
        ball.levels.append(layer)
        if not layer:
            break
    return ball


def _bilinear(M: CoxeterMatrix) -> list[list[float]]:
    n = M.rank
    return [[-1.0 if M.entries[i][j] == INF else -math.cos(math.pi / M.entries[i][j]) for j in range(n)] for i in range(n)]


def _negative(v: list[float]) -> bool:
    tot = sum(v)
    lo, hi = min(v), max(v)
    if lo < -1e-6 and hi > 1e-6:
        raise ArithmeticError("root vector with mixed signs; floating-point breakdown")
    return tot < 0


def _ball_roots(M: CoxeterMatrix, n: int, bfs_cap: int) -> Ball:
    """BFS using the geometric representation to read off descent sets.

    For every element ``x`` we carry ``x^{-1}(a_t)`` and ``x(a_t)`` for all
    simple roots ``a_t``.  A generator ``t`` is a left (right) descent iff
    the first (second) vector is a negative root.  The ShortLex normal form
    of ``u`` is ``t0`` followed by the normal form of ``t0 u`` with ``t0`` the
    least left descent, and ``t0 u`` is one level down, so no braid closure
    is ever expanded.
    """
    r = M.rank
    B = _bilinear(M)
    ball = Ball(M, n)
    unit = [[1.0 if i == j else 0.0 for i in range(r)] for j in range(r)]
    inv: list = []
    img: list = []
    ldesc: list[dict] = []  # ldesc[x][t] = id of t*x for left descents t

    ball._add((), frozenset())
    inv.append(unit)
    img.append(unit)
    ldesc.append({})
    ball.levels.append([0])
    total = 1

    def reflect(s: int, v: list[float]) -> list[float]:
        c = 2.0 * sum(v[j] * B[s][j] for j in range(r))
        out = list(v)
        out[s] -= c
        return out

    for _k in range(n):
        layer = []
        for w in ball.levels[-1]:
            for s in range(r):
                if s in ball.descents[w] or s in ball.right[w]:
                    continue
                inv_u = [reflect(s, v) for v in inv[w]]
                left = [t for t in range(r) if _negative(inv_u[t])]
                down = {}
                for t in left:
                    if t in ldesc[w]:
                        down[t] = ball.right[ldesc[w][t]][s]
                    else:
                        down[t] = w  # t w = w s
                t0 = left[0]
                word = (t0,) + ball.words[down[t0]]
                u = ball.index.get(word)
                if u is None:
                    img_w = img[w]
                    img_u = [[img_w[q][j] - 2.0 * B[s][q] * img_w[s][j] for j in range(r)] for q in range(r)]
                    desc = frozenset(q for q in range(r) if _negative(img_u[q]))
                    u = ball._add(word, desc)
                    inv.append(inv_u)
                    img.append(img_u)
                    ldesc.append(down)
                    layer.append(u)
                    total += 1
                    if total > bfs_cap:
                        raise ResourceError(f"BFS exceeded {bfs_cap} elements")
                ball.right[w][s] = u
                ball.right[u][s] = w
        ball.levels.append(layer)
        if not layer:
            break
    return ball


def build_ball(
    M: CoxeterMatrix,
    n: int,
    method: str = "tits",
    bfs_cap: int = DEFAULT_BFS_CAP,
    closure_cap: int = DEFAULT_CLOSURE_CAP,
) -> Ball:
    """Ball of radius ``n``.

    ``method="tits"`` identifies elements through full braid closures;
    ``method="roots"`` reads descents off floating-point root vectors (fast
    for large finite groups, whose longest elements have millions of reduced
    words).  Both key elements by the same ShortLex normal forms.
    """
    if n < 0:
        raise ValueError("radius must be >= 0")
    if method == "tits":
        return _ball_tits(M, n, bfs_cap, closure_cap)
    if method == "roots":
        return _ball_roots(M, n, bfs_cap)
    raise ValueError(f"unknown BFS method {method!r}")


def spheres(M: CoxeterMatrix, n: int, method: str = "tits", **caps) -> tuple[list[int], list[int]]:
    """Sphere sizes ``a_0..a_n`` and ball sizes ``b_0..b_n``."""
    ball = build_ball(M, n, method, **caps)
    a = ball.sizes() + [0] * (n + 1 - len(ball.levels))
    a = a[: n + 1]
    b, run = [], 0
    for x in a:
        run += x
        b.append(run)
    return a, b


def group_order(M: CoxeterMatrix, method: str = "roots", limit: int = 10**6) -> Optional[int]:
    """Order of a finite group by exhaustive BFS; ``None`` if the radius limit is hit."""
    try:
        ball = build_ball(M, limit, method, bfs_cap=limit)
    except ResourceError:
        return None
    return len(ball.words) if ball.complete else None


def longest_element(M: CoxeterMatrix) -> Word:
    ball = build_ball(M, 10**6, "roots")
    if not ball.complete:
        raise ValueError("group is infinite")
    return ball.words[ball.levels[-2][0]]


def all_words(rank: int, length: int) -> Iterable[Word]:
    from itertools import product

    return product(range(rank), repeat=length)
