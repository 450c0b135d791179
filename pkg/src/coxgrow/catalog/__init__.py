"""Bundled Coxeter matrices with expected values, and the verification
pipelines behind ``coxgrow verify``.
"""

from __future__ import annotations

import hashlib
import json
import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from ..classify import Kind, classify, enumerate_hyperbolic
from ..coxcore import CoxeterMatrix, coxeter_isomorphic, load_matrix
from ..growth import (
    DEFAULT_EPS,
    GrowthRate,
    growth_rate,
    minimal_polynomial_check,
    perron_certificate,
    poincare,
)
from ..poly import IntPoly
from ..structure import (
    is_twist,
    leq_order,
    make_mutable,
    minimal_elements,
    verify_thm_c,
)

log = logging.getLogger(__name__)

CATALOG_DIR = Path(__file__).resolve().parent
MANIFEST = CATALOG_DIR / "manifest.json"
MTAU_FILE = CATALOG_DIR / "m_tau.json"

TAU_DIGITS = Fraction("1.138078743")
TAU_TOL = Fraction(1, 10**9)
EXAMPLE_TOL = Fraction(1, 10**4)
LEHMER_TOL = Fraction(1, 10**3)


class CatalogError(RuntimeError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    matrix: CoxeterMatrix
    provenance: str
    expected: dict = field(default_factory=dict)
    file: str = ""

    @property
    def path(self) -> Path:
        return CATALOG_DIR / self.file


def _read_manifest() -> dict:
    try:
        return json.loads(MANIFEST.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise CatalogError(f"cannot read catalog manifest: {e}") from None


def load_catalog() -> list[CatalogEntry]:
    out = []
    for rec in _read_manifest()["entries"]:
        path = CATALOG_DIR / rec["file"]
        try:
            M = load_matrix(path)
        except (OSError, ValueError) as e:
            raise CatalogError(f"corrupt fixture {rec['file']}: {e}") from None
        out.append(CatalogEntry(rec["id"], M, rec["provenance"], rec.get("expected", {}), rec["file"]))
    ids = [e.id for e in out]
    if len(set(ids)) != len(ids):
        raise CatalogError("duplicate catalog ids")
    return out


def get_entry(entry_id: str) -> CatalogEntry:
    for e in load_catalog():
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)


def mtau_checksum(coeffs: list[int]) -> str:
    return hashlib.sha256(json.dumps(coeffs, separators=(",", ":")).encode()).hexdigest()


def load_mtau(verify_checksum: bool = True) -> IntPoly:
    data = json.loads(MTAU_FILE.read_text(encoding="utf-8"))
    coeffs = [int(c) for c in data["coefficients"]]
    if verify_checksum and mtau_checksum(coeffs) != data["sha256"]:
        raise CatalogError("m_tau fixture checksum mismatch")
    p = IntPoly(coeffs)
    if p.degree != data["degree"]:
        raise CatalogError("m_tau fixture degree mismatch")
    return p


# -- reports -----------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    name: str
    checks: list[Check] = field(default_factory=list)
    data: dict = field(default_factory=dict)
    partial: bool = False

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        log.info("%s: %s %s", name, "pass" if passed else "FAIL", detail)
        return bool(passed)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "ok": self.ok,
            "partial": self.partial,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
            "data": self.data,
        }

    def lines(self) -> list[str]:
        out = [f"[{self.name}] {'PASS' if self.ok else 'FAIL'}{' (partial)' if self.partial else ''}"]
        for c in self.checks:
            out.append(f"  {'ok ' if c.passed else 'BAD'} {c.name}" + (f": {c.detail}" if c.detail else ""))
        return out


def _dec(x: Fraction, digits: int = 12) -> str:
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = x.numerator * 10**digits // x.denominator
    s = str(scaled).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


def _first_difference(a: IntPoly, b: IntPoly) -> str:
    n = max(len(a), len(b))
    for k in range(n):
        if a[k] != b[k]:
            return f"coefficient of t^{k}: {a[k]} vs {b[k]}"
    return "none"


# -- pipelines ---------------------------------------------------------------


def verify_tau(
    eps=DEFAULT_EPS,
    m_tau: Optional[IntPoly] = None,
    irreducibility: bool = True,
    primes: Optional[list[int]] = None,
) -> Report:
    """E10 denominator against the transcribed minimal polynomial, rate digits,
    Perron certificate and the three-part minimal polynomial check."""
    rep = Report("tau")
    t0 = time.perf_counter()
    if m_tau is None:
        try:
            m_tau = load_mtau()
            rep.add("m_tau fixture checksum", True)
        except CatalogError as e:
            rep.add("m_tau fixture checksum", False, str(e))
            m_tau = load_mtau(verify_checksum=False)
    E10 = get_entry("E10").matrix
    p = poincare(E10)
    target = IntPoly([-1, 1]) * m_tau.reciprocal()
    same = p.den == target or p.den == -target
    rep.add(
        "denominator = (t-1) * reciprocal(m_tau) up to sign",
        same,
        f"degree {p.den.degree}" if same else _first_difference(p.den, -target if p.den.lc * target.lc < 0 else target),
    )
    rate = growth_rate(E10, eps)
    rep.add(
        "rate bracket contains 1.138078743 within 1e-9",
        rate.lo - TAU_TOL <= TAU_DIGITS <= rate.hi + TAU_TOL and rate.width <= TAU_TOL,
        f"[{_dec(rate.lo, 15)}, {_dec(rate.hi, 15)}]",
    )
    t1 = time.perf_counter()
    cert = perron_certificate(m_tau, rate.lo)
    rep.add(
        "Perron certificate",
        cert.ok and cert.inside == m_tau.degree - 1,
        f"{cert.inside} of {cert.degree} roots in |z| < {cert.radius}",
    )
    t2 = time.perf_counter()
    mp = minimal_polynomial_check(E10, m_tau, rate=rate, primes=primes, irreducibility=irreducibility)
    rep.add("reciprocal(m_tau) divides the denominator", mp.divides)
    rep.add("m_tau changes sign across the rate bracket", mp.root_in_bracket)
    if irreducibility:
        irr = mp.irreducibility
        rep.add(
            "irreducibility evidence mod p",
            irr.verdict == "certified",
            f"{irr.verdict}" + (f" by p = {irr.single_prime}" if irr.single_prime else ""),
        )
    t3 = time.perf_counter()
    rep.data = {
        "rate": rate.to_dict(),
        "denominator_degree": p.den.degree,
        "perron": cert.to_dict(),
        "min_poly": {k: v for k, v in mp.to_dict().items() if k != "quotient"},
        "timings": {"series_and_rate": round(t1 - t0, 3), "perron": round(t2 - t1, 3), "min_poly": round(t3 - t2, 3)},
    }
    return rep


def triangle_fixtures() -> list[CatalogEntry]:
    return [e for e in load_catalog() if e.id in ("triangle-2-3-7", "triangle-3-3-4", "triangle-2-4-5")]


def check_counts(
    hyperbolic: list[CoxeterMatrix],
    minimal: list[CoxeterMatrix],
    triangles: list[CoxeterMatrix],
    rep: Report,
    expected=(72, 35, 38),
) -> None:
    rep.add("hyperbolic classes of rank 4..10", len(hyperbolic) == expected[0], f"{len(hyperbolic)} (expected {expected[0]})")
    rep.add("minimal classes of rank >= 4", len(minimal) == expected[1], f"{len(minimal)} (expected {expected[1]})")
    total = len(minimal) + len(triangles)
    rep.add("minimal set including triangles", total == expected[2], f"{total} (expected {expected[2]})")


def _rates(mats: list[CoxeterMatrix], eps, workers: int) -> list[GrowthRate]:
    """Growth rates in input order; ``workers > 1`` fans out over processes."""
    if workers <= 1 or len(mats) < 2:
        return [growth_rate(M, eps) for M in mats]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(workers) as ex:
        return list(ex.map(growth_rate, mats, [eps] * len(mats)))


def verify_gap(min_rank: int = 4, max_rank: int = 10, eps=DEFAULT_EPS, workers: int = 1) -> Report:
    rep = Report("gap")
    t0 = time.perf_counter()
    hyp = enumerate_hyperbolic(min_rank, max_rank)
    mins = minimal_elements(hyp)
    tris = [e.matrix for e in triangle_fixtures()]
    t1 = time.perf_counter()
    full = (min_rank, max_rank) == (4, 10)
    if full:
        check_counts(hyp, mins, tris, rep)
    else:
        rep.partial = True
        rep.add("partial enumeration", True, f"ranks {min_rank}..{max_rank}: {len(hyp)} hyperbolic, {len(mins)} minimal")
    pool = tris + mins
    rep.add(
        "minimal systems pairwise incomparable",
        all(leq_order(a, b) is None for i, a in enumerate(pool) for j, b in enumerate(pool) if i != j),
    )
    E10 = get_entry("E10").matrix
    tau = growth_rate(E10, eps)
    rates = list(zip(_rates(pool, eps, workers), pool))
    t2 = time.perf_counter()
    rep.add(
        "every minimal rate >= tau bracket lower end",
        all(r.lo >= tau.lo - eps for r, _ in rates),
        f"tau in [{_dec(tau.lo)}, {_dec(tau.hi)}]",
    )
    if full or max_rank == 10:
        best_rate, best = min(rates, key=lambda x: x[0].lo)
        rep.add(
            "minimum attained by the E10 class",
            coxeter_isomorphic(best, E10) is not None,
            f"min rate {_dec(best_rate.lo)} at rank {best.rank}",
        )
    t237 = growth_rate(get_entry("triangle-2-3-7").matrix, eps)
    lehmer = Fraction("1.17628")
    rep.add(
        "<2,3,7> rate within 1e-3 of 1.17628",
        abs((t237.lo + t237.hi) / 2 - lehmer) <= LEHMER_TOL,
        f"{_dec(t237.lo)}",
    )
    rep.data = {
        "counts": {"hyperbolic": len(hyp), "minimal": len(mins), "with_triangles": len(pool)},
        "rates": sorted(
            ({"rank": M.rank, "rate": _dec(r.lo, 10), "upper": [[str(x) for x in row] for row in M.entries]} for r, M in rates),
            key=lambda d: d["rate"],
        ),
        "timings": {"enumerate": round(t1 - t0, 3), "rates": round(t2 - t1, 3)},
    }
    return rep


def verify_examples(eps=DEFAULT_EPS) -> Report:
    rep = Report("examples")
    for eid in ("reduction-M", "reduction-Mprime"):
        e = get_entry(eid)
        target = Fraction(e.expected["rate"])
        r = growth_rate(e.matrix, eps)
        rep.add(
            f"{eid} rate = {e.expected['rate']} +- 1e-4",
            abs(r.lo - target) <= EXAMPLE_TOL and abs(r.hi - target) <= EXAMPLE_TOL,
            _dec(r.lo, 8),
        )
    e = get_entry("triangle-2-3-inf")
    plastic = IntPoly([-1, -1, 0, 1])
    mp = minimal_polynomial_check(e.matrix, plastic, irreducibility=False)
    rep.add("<2,3,inf> denominator has reciprocal factor of t^3 - t - 1", mp.divides and mp.root_in_bracket)
    f = get_entry("mutation-rank7")
    spec = f.expected["mutation"]
    tup = make_mutable(
        f.matrix,
        [x - 1 for x in spec["X"]],
        [y - 1 for y in spec["Y"]],
        {int(k) - 1: v - 1 for k, v in spec["sigma"].items()},
    )
    rc = verify_thm_c(tup, check_isomorphism=True)
    rep.add("rank-7 mutation: residue bijection and equal series", rc.ok)
    rep.add("rank-7 mutation is not a twist", not is_twist(tup))
    rep.data = {"rank7_mutation": {"tuple": tup.to_dict(), "invariance": rc.to_dict()}}
    return rep


def verify_entries(eps=DEFAULT_EPS) -> Report:
    """Every catalog entry against its own expected kind and rate."""
    rep = Report("entries")
    for e in load_catalog():
        exp = e.expected
        if "kind" in exp:
            k = classify(e.matrix).kind.value
            rep.add(f"{e.id} kind", k == exp["kind"], k)
        if "rate" in exp and "rate_tol" in exp:
            r = growth_rate(e.matrix, eps)
            tgt, tol = Fraction(exp["rate"]), Fraction(exp["rate_tol"])
            rep.add(f"{e.id} rate", abs((r.lo + r.hi) / 2 - tgt) <= tol, _dec(r.lo, 10))
    return rep


def verify_all(eps=DEFAULT_EPS, workers: int = 1) -> list[Report]:
    return [verify_tau(eps), verify_gap(eps=eps, workers=workers), verify_examples(eps), verify_entries(eps)]
