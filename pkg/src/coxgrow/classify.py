"""Recognition of irreducible spherical/affine diagrams, the four-way
classification, spherical residues, and enumeration of hyperbolic systems.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from .coxcore import (
    INF,
    CoxeterMatrix,
    canonical_key,
    components,
    is_connected,
    restrict,
)

log = logging.getLogger(__name__)


class Kind(str, Enum):
    SPHERICAL = "Spherical"
    AFFINE = "Affine"
    HYPERBOLIC = "Hyperbolic"
    OTHER = "Other"


@dataclass(frozen=True)
class IrreducibleType:
    """Irreducible diagram type.

    ``family`` is one of ``A B D E F H I`` (spherical), the same letters
    prefixed by ``~`` (affine; ``n`` is then the affine index, so the rank is
    ``n + 1``), or ``X`` for anything else.  ``param`` carries ``m`` for I2(m).
    """

    family: str
    n: int
    param: Optional[float] = None

    @property
    def spherical(self) -> bool:
        return self.family in "ABDEFHI" and len(self.family) == 1

    @property
    def affine(self) -> bool:
        return self.family.startswith("~")

    @property
    def rank(self) -> int:
        if self.affine:
            return self.n + 1
        if self.family == "I":
            return 2
        return self.n

    @property
    def name(self) -> str:
        if self.family == "X":
            return f"NonSphericalNonAffine({self.n})"
        if self.family == "I":
            return f"I2({int(self.param)})"
        if self.affine:
            return f"~{self.family[1]}{self.n}"
        return f"{self.family}{self.n}"

    def __str__(self) -> str:
        return self.name


def _other(rank: int) -> IrreducibleType:
    return IrreducibleType("X", rank)


def _path_order(M: CoxeterMatrix, verts: Sequence[int]) -> list[int]:
    ends = [v for v in verts if len(_nbrs(M, v, verts)) <= 1]
    start = min(ends)
    order, prev = [start], None
    while len(order) < len(verts):
        nxt = [u for u in _nbrs(M, order[-1], verts) if u != prev]
        prev = order[-1]
        order.append(nxt[0])
    return order


def _nbrs(M: CoxeterMatrix, v: int, verts: Sequence[int]) -> list[int]:
    return [u for u in verts if u != v and M.entries[v][u] >= 3]


def _arm(M, start: int, prev: int, verts) -> list[int]:
    arm = [start]
    while True:
        nxt = [u for u in _nbrs(M, arm[-1], verts) if u != prev]
        if not nxt:
            return arm
        prev = arm[-1]
        arm.append(nxt[0])


def _match_path(labels: list) -> Optional[IrreducibleType]:
    r = len(labels) + 1
    for seq in (labels, labels[::-1]):
        if all(m == 3 for m in seq):
            return IrreducibleType("A", r)
        if r >= 3 and seq[0] == 4 and all(m == 3 for m in seq[1:]):
            return IrreducibleType("B", r)
        if r >= 3 and seq[0] == 4 and seq[-1] == 4 and all(m == 3 for m in seq[1:-1]):
            return IrreducibleType("~C", r - 1)
        if seq == [3, 4, 3]:
            return IrreducibleType("F", 4)
        if seq == [3, 3, 4, 3]:
            return IrreducibleType("~F", 4)
        if seq == [5, 3]:
            return IrreducibleType("H", 3)
        if seq == [5, 3, 3]:
            return IrreducibleType("H", 4)
        if seq == [6, 3]:
            return IrreducibleType("~G", 2)
    return None


_BRANCH_E = {
    (1, 2, 2): IrreducibleType("E", 6),
    (1, 2, 3): IrreducibleType("E", 7),
    (1, 2, 4): IrreducibleType("E", 8),
    (2, 2, 2): IrreducibleType("~E", 6),
    (1, 3, 3): IrreducibleType("~E", 7),
    (1, 2, 5): IrreducibleType("~E", 8),
}


def _recognize(M: CoxeterMatrix, verts: Sequence[int]) -> IrreducibleType:
    r = len(verts)
    if r == 1:
        return IrreducibleType("A", 1)
    edges = [(a, b, M.entries[a][b]) for i, a in enumerate(verts) for b in verts[i + 1 :] if M.entries[a][b] >= 3]
    if r == 2:
        m = edges[0][2]
        if m == INF:
            return IrreducibleType("~A", 1)
        if m == 3:
            return IrreducibleType("A", 2)
        if m == 4:
            return IrreducibleType("B", 2)
        return IrreducibleType("I", 2, m)
    labels = [m for _, _, m in edges]
    if any(m == INF for m in labels):
        return _other(r)
    deg = {v: len(_nbrs(M, v, verts)) for v in verts}
    if len(edges) == r:
        if all(d == 2 for d in deg.values()) and all(m == 3 for m in labels):
            return IrreducibleType("~A", r - 1)
        return _other(r)
    if len(edges) != r - 1:
        return _other(r)
    # the diagram is a tree
    maxdeg = max(deg.values())
    if maxdeg <= 2:
        order = _path_order(M, verts)
        seq = [M.entries[order[i]][order[i + 1]] for i in range(r - 1)]
        return _match_path(seq) or _other(r)
    branch = [v for v in verts if deg[v] >= 3]
    if maxdeg == 4:
        if r == 5 and all(m == 3 for m in labels):
            return IrreducibleType("~D", 4)
        return _other(r)
    if maxdeg > 4:
        return _other(r)
    if len(branch) == 1:
        c = branch[0]
        arms = sorted((_arm(M, u, c, verts) for u in _nbrs(M, c, verts)), key=len)
        lengths = tuple(len(a) for a in arms)
        arm_labels = [[M.entries[c][a[0]]] + [M.entries[a[i]][a[i + 1]] for i in range(len(a) - 1)] for a in arms]
        if all(m == 3 for m in labels):
            if lengths[0] == 1 and lengths[1] == 1:
                return IrreducibleType("D", r)
            t = _BRANCH_E.get(lengths)
            return t if t else _other(r)
        if lengths[0] == 1 and lengths[1] == 1:
            # ~B: the long arm ends in a 4, everything else is 3
            long_arm = arm_labels[2]
            short_ok = arm_labels[0] == [3] and arm_labels[1] == [3]
            if short_ok and long_arm[-1] == 4 and all(m == 3 for m in long_arm[:-1]):
                return IrreducibleType("~B", r - 1)
            # rank 4: all arms have length 1, the 4 may sit on any of them
            if lengths == (1, 1, 1) and sorted(x[0] for x in arm_labels) == [3, 3, 4]:
                return IrreducibleType("~B", 3)
        return _other(r)
    if len(branch) == 2 and all(m == 3 for m in labels):
        leaves = [v for v in verts if deg[v] == 1]
        if len(leaves) == 4 and all(
            sum(1 for u in _nbrs(M, b, verts) if deg[u] == 1) == 2 for b in branch
        ):
            return IrreducibleType("~D", r - 1)
    return _other(r)


def recognize_irreducible(M: CoxeterMatrix, within: Optional[Sequence[int]] = None) -> IrreducibleType:
    """Match a connected diagram against the spherical and affine templates."""
    verts = tuple(range(M.rank)) if within is None else tuple(within)
    if not verts:
        raise ValueError("empty diagram")
    if not is_connected(M, verts):
        raise ValueError("recognize_irreducible needs a connected Coxeter graph")
    return _recognize(M, verts)


def component_types(M: CoxeterMatrix, within: Optional[Sequence[int]] = None) -> list[IrreducibleType]:
    return [_recognize(M, c) for c in components(M, within)]


def is_spherical(M: CoxeterMatrix, within: Optional[Sequence[int]] = None) -> bool:
    return all(t.spherical for t in component_types(M, within))


def _sph_or_aff(M: CoxeterMatrix, verts: Sequence[int]) -> bool:
    return all(t.spherical or t.affine for t in component_types(M, verts))


def hyperbolic_check(M: CoxeterMatrix) -> tuple[bool, str]:
    """``(verdict, reason)``; the reason code explains a negative answer."""
    n = M.rank
    if n == 0 or not is_connected(M):
        return False, "disconnected"
    t = _recognize(M, tuple(range(n)))
    if t.spherical:
        return False, "spherical"
    if t.affine:
        return False, "affine"
    # every connected proper subset lies in some S \ {x}; its components are
    # connected subsets, and components of subsets of a spherical/affine
    # diagram are again spherical/affine
    for x in range(n):
        rest = [v for v in range(n) if v != x]
        if not _sph_or_aff(M, rest):
            return False, f"parabolic without generator {x} is neither spherical nor affine"
    return True, "ok"


def is_hyperbolic(M: CoxeterMatrix) -> bool:
    return hyperbolic_check(M)[0]


@dataclass(frozen=True)
class Classification:
    kind: Kind
    component_types: tuple[IrreducibleType, ...]
    components: tuple[tuple[int, ...], ...]
    component_kinds: tuple[Kind, ...] = field(default=())

    @property
    def irreducible(self) -> bool:
        return len(self.components) == 1

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "components": [list(c) for c in self.components],
            "component_types": [t.name for t in self.component_types],
            "component_kinds": [k.value for k in self.component_kinds],
        }


def _irreducible_kind(M: CoxeterMatrix, comp: Sequence[int], t: IrreducibleType) -> Kind:
    if t.spherical:
        return Kind.SPHERICAL
    if t.affine:
        return Kind.AFFINE
    return Kind.HYPERBOLIC if is_hyperbolic(restrict(M, comp)) else Kind.OTHER


def classify(M: CoxeterMatrix) -> Classification:
    """Four-way classification.

    A reducible system is Spherical iff all components are; it is reported
    Affine when every component is spherical or affine with at least one
    affine; otherwise Other.  Hyperbolic applies to irreducible systems only.
    """
    comps = components(M)
    types = [_recognize(M, c) for c in comps]
    kinds = [_irreducible_kind(M, c, t) for c, t in zip(comps, types)]
    if all(k == Kind.SPHERICAL for k in kinds):
        kind = Kind.SPHERICAL
    elif len(comps) == 1:
        kind = kinds[0]
    elif all(k in (Kind.SPHERICAL, Kind.AFFINE) for k in kinds):
        kind = Kind.AFFINE
    else:
        kind = Kind.OTHER
    return Classification(kind, tuple(types), tuple(comps), tuple(kinds))


# -- spherical residues -----------------------------------------------------


@dataclass(frozen=True)
class SphericalFamily:
    """Spherical subsets with their component types, in (size, lex) order."""

    rank: int
    members: dict

    def __contains__(self, subset) -> bool:
        return tuple(subset) in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def types(self, subset) -> tuple[IrreducibleType, ...]:
        return self.members[tuple(subset)]


def spherical_residues(M: CoxeterMatrix) -> SphericalFamily:
    n = M.rank
    members: dict[tuple[int, ...], tuple[IrreducibleType, ...]] = {(): ()}
    layer = [()]
    while layer:
        nxt = []
        for I in layer:
            start = I[-1] + 1 if I else 0
            for v in range(start, n):
                J = I + (v,)
                # every subset of J must already be spherical (downward closure)
                if any(J[:k] + J[k + 1 :] not in members for k in range(len(J) - 1)):
                    continue
                types = component_types(M, J)
                if all(t.spherical for t in types):
                    members[J] = tuple(types)
                    nxt.append(J)
        layer = nxt
    ordered = dict(sorted(members.items(), key=lambda kv: (len(kv[0]), kv[0])))
    return SphericalFamily(n, ordered)


# -- Gram signature (floating point cross-check) ---------------------------


def gram_matrix(M: CoxeterMatrix):
    import numpy as np

    n = M.rank
    B = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            m = M.entries[i][j]
            B[i, j] = -1.0 if m == INF else -math.cos(math.pi / m)
    return B


def gram_signature_float(M: CoxeterMatrix, tol: float = 1e-9) -> tuple[int, int, int]:
    """``(n_plus, n_zero, n_minus)`` of the Gram matrix; a numerical cross-check."""
    import numpy as np

    if M.rank == 0:
        return (0, 0, 0)
    ev = np.linalg.eigvalsh(gram_matrix(M))
    near = [x for x in ev if tol <= abs(x) < 1e3 * tol]
    if near:
        log.warning("ill-conditioned Gram eigenvalues near tolerance: %s", near)
    return (int(sum(ev >= tol)), int(sum(abs(ev) < tol)), int(sum(ev <= -tol)))


# -- enumeration of hyperbolic systems ---------------------------------------

ENUM_LABELS = (2, 3, 4, 5, 6, INF)


def _extensions(M: CoxeterMatrix, whole_ok: bool):
    """Matrices obtained by appending one vertex joined to ``M``.

    The new label row is built one entry at a time.  A partial row is
    abandoned as soon as the diagram on the vertices decided so far, plus the
    new vertex, has a component that is neither spherical nor affine.  When
    ``whole_ok`` is false the complete diagram is exempt from that test (it
    is the candidate itself), so only proper prefixes are pruned.
    """
    n = M.rank
    base = [list(r) for r in M.entries]

    def build(row: list) -> CoxeterMatrix:
        k = len(row)
        e = [base[i][:k] + [row[i]] for i in range(k)]
        e.append(row + [1])
        return CoxeterMatrix.from_rows(e)

    def rec(row: list):
        i = len(row)
        if i == n:
            if any(m >= 3 for m in row):
                yield build(row)
            return
        for m in ENUM_LABELS:
            cand = row + [m]
            if m >= 3 and (whole_ok or i + 1 < n):
                P = build(cand)
                if not _sph_or_aff(P, tuple(range(i + 2))):
                    continue
            yield from rec(cand)

    yield from rec([])


def _new_vertex_ok(M: CoxeterMatrix) -> bool:
    """Check the component of the newest vertex after deleting each other vertex.

    Assumes every connected subset avoiding the newest vertex was checked
    already; connected subsets through it lie in such a component.
    """
    n = M.rank
    v = n - 1
    for x in range(n - 1):
        rest = [u for u in range(n) if u != x]
        for comp in components(M, rest):
            if v in comp:
                t = _recognize(M, comp)
                if not (t.spherical or t.affine):
                    return False
    return True


def _connected_sph_aff(max_rank: int) -> list[list[CoxeterMatrix]]:
    """conn[k]: connected spherical or affine diagrams of rank k, one per class."""
    conn: list[list[CoxeterMatrix]] = [[], [CoxeterMatrix(((1,),))]]
    for k in range(2, max_rank + 1):
        seen: dict = {}
        for D in conn[k - 1]:
            for E in _extensions(D, True):
                t = _recognize(E, tuple(range(k)))
                if t.spherical or t.affine:
                    key = canonical_key(E)
                    seen.setdefault(key, E)
        conn.append([seen[key] for key in sorted(seen, key=_keysort)])
        log.info("rank %d: %d connected spherical/affine classes", k, len(conn[k]))
    return conn


def _keysort(key):
    return key


def enumerate_hyperbolic(min_rank: int = 4, max_rank: int = 10) -> list[CoxeterMatrix]:
    """All hyperbolic Coxeter matrices of rank ``min_rank..max_rank``, one per class.

    Every connected diagram has a vertex whose removal leaves it connected,
    and that remainder is a proper connected parabolic, hence spherical or
    affine.  So each candidate is an extension of a connected
    spherical/affine diagram by one vertex.
    """
    if not 4 <= min_rank <= max_rank <= 10:
        raise ValueError("rank range must satisfy 4 <= min_rank <= max_rank <= 10")
    conn = _connected_sph_aff(max_rank - 1)
    found: dict = {}
    for n in range(min_rank, max_rank + 1):
        for D in conn[n - 1]:
            for E in _extensions(D, False):
                if not _new_vertex_ok(E):
                    continue
                if not is_hyperbolic(E):
                    continue
                key = canonical_key(E)
                if key not in found:
                    found[key] = E
    return [_canonical(found[k]) for k in sorted(found, key=_keysort)]


def _canonical(M: CoxeterMatrix) -> CoxeterMatrix:
    from .coxcore import canonical_form

    return canonical_form(M)
