"""Regenerate the .cox fixtures and manifest under src/coxgrow/catalog.

Hand-entered matrices live below; the minimal hyperbolic systems of rank >= 4
are produced by the enumerator.  The m_tau coefficient file is left alone
except for refreshing its checksum with ``--rehash``.
"""

import argparse
import json

from coxgrow.catalog import CATALOG_DIR, MANIFEST, MTAU_FILE, mtau_checksum
from coxgrow.classify import classify, enumerate_hyperbolic
from coxgrow.coxcore import INF, CoxeterMatrix, serialize_matrix
from coxgrow.structure import minimal_elements

I = INF


def tri(a, b, c):
    return CoxeterMatrix.from_edges(3, {(0, 1): a, (1, 2): b, (0, 2): c})


E10 = CoxeterMatrix.from_edges(10, {**{(i, i + 1): 3 for i in range(8)}, (2, 9): 3})

HAND = [
    ("E10", "e10.cox", E10, "Standard", {"kind": "Hyperbolic", "rate": "1.138078743", "rate_tol": "1e-9"}),
    ("triangle-2-3-7", "triangle-2-3-7.cox", tri(2, 3, 7), "Literature", {"kind": "Hyperbolic", "rate": "1.17628", "rate_tol": "1e-3"}),
    ("triangle-3-3-4", "triangle-3-3-4.cox", tri(3, 3, 4), "Literature", {"kind": "Hyperbolic"}),
    ("triangle-2-4-5", "triangle-2-4-5.cox", tri(2, 4, 5), "Literature", {"kind": "Hyperbolic"}),
    (
        "triangle-2-3-inf",
        "triangle-2-3-inf.cox",
        tri(2, 3, INF),
        "Literature",
        {"kind": "Hyperbolic", "denominator_factor": [-1, -1, 0, 1], "notes": "plastic number"},
    ),
    (
        "reduction-M",
        "reduction-M.cox",
        CoxeterMatrix.from_rows([[1, 3, 2, 3, I], [3, 1, 2, 2, 2], [2, 2, 1, 3, 2], [3, 2, 3, 1, 4], [I, 2, 2, 4, 1]]),
        "Literature",
        {"kind": "Other", "rate": "2.24167", "rate_tol": "1e-4"},
    ),
    (
        "reduction-Mprime",
        "reduction-Mprime.cox",
        CoxeterMatrix.from_rows(
            [
                [1, 3, 2, 3, I, I],
                [3, 1, 2, 2, 2, 2],
                [2, 2, 1, 3, 3, 2],
                [3, 2, 3, 1, 2, 2],
                [I, 2, 3, 2, 1, 2],
                [I, 2, 2, 2, 2, 1],
            ]
        ),
        "Literature",
        {"kind": "Other", "rate": "2.61578", "rate_tol": "1e-4"},
    ),
    (
        "mutation-rank7",
        "mutation-rank7.cox",
        CoxeterMatrix.from_rows(
            [
                [1, 3, 3, 2, 3, 4, 2],
                [3, 1, 3, 2, 3, 4, 2],
                [3, 3, 1, 2, 2, 4, 3],
                [2, 2, 2, 1, 3, 3, 2],
                [3, 3, 2, 3, 1, 2, I],
                [4, 4, 4, 3, 2, 1, 3],
                [2, 2, 3, 2, I, 3, 1],
            ]
        ),
        "Literature",
        {"mutation": {"X": [1, 2, 3, 4], "Y": [5], "T": [7], "Z": [6], "sigma": {"1": 2, "2": 3, "3": 1}}},
    ),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rehash", action="store_true", help="recompute the m_tau checksum")
    args = ap.parse_args()
    entries = []
    for eid, fname, M, prov, exp in HAND:
        (CATALOG_DIR / fname).write_text(serialize_matrix(M), encoding="utf-8")
        entries.append({"id": eid, "file": fname, "provenance": prov, "expected": exp})
    mins = minimal_elements(enumerate_hyperbolic(4, 10))
    counter = {}
    for M in mins:
        counter[M.rank] = counter.get(M.rank, 0) + 1
        eid = f"minimal-r{M.rank}-{counter[M.rank]:02d}"
        (CATALOG_DIR / f"{eid}.cox").write_text(serialize_matrix(M), encoding="utf-8")
        entries.append({"id": eid, "file": f"{eid}.cox", "provenance": "Derived", "expected": {"kind": classify(M).kind.value}})
    manifest = {"version": 1, "m_tau": MTAU_FILE.name, "entries": entries}
    MANIFEST.write_text(json.dumps(manifest, indent=1) + "\n", encoding="utf-8")
    if args.rehash:
        data = json.loads(MTAU_FILE.read_text())
        data["sha256"] = mtau_checksum(data["coefficients"])
        MTAU_FILE.write_text(json.dumps(data))
    print(f"wrote {len(entries)} catalog entries to {CATALOG_DIR}")


if __name__ == "__main__":
    main()
