import json
import shutil
from fractions import Fraction

import pytest

import coxgrow.catalog as cat
from coxgrow.catalog import (
    CATALOG_DIR,
    CatalogError,
    Report,
    check_counts,
    get_entry,
    load_catalog,
    load_mtau,
    mtau_checksum,
    verify_entries,
    verify_examples,
    verify_gap,
)
from coxgrow.classify import Kind, classify
from coxgrow.coxcore import INF, serialize_matrix
from coxgrow.growth import growth_rate


def test_entries_load():
    ids = [e.id for e in load_catalog()]
    assert len(ids) == len(set(ids))
    for need in ("E10", "triangle-2-3-7", "triangle-3-3-4", "triangle-2-4-5", "triangle-2-3-inf",
                 "reduction-M", "reduction-Mprime", "mutation-rank7"):
        assert need in ids
    assert sum(i.startswith("minimal-") for i in ids) == 35
    assert all(e.provenance in ("Literature", "Derived", "Standard") for e in load_catalog())


def test_e10_is_simply_laced_tree():
    M = get_entry("E10").matrix
    assert M.rank == 10
    labels = [m for _, _, m in M.edges()]
    assert set(labels) == {3} and len(labels) == 9
    degs = sorted(len(M.neighbors(i)) for i in range(10))
    assert degs == [1, 1, 1] + [2] * 6 + [3]


def test_reduction_m():
    M = get_entry("reduction-M").matrix
    flat = [M[i, j] for i in range(5) for j in range(5)]
    assert M.rank == 5 and INF in flat and 4 in flat


def test_triangle_inf_expectation():
    e = get_entry("triangle-2-3-inf")
    assert e.expected["denominator_factor"] == [-1, -1, 0, 1]


def test_byte_identical_roundtrip():
    for e in load_catalog():
        assert serialize_matrix(e.matrix) == e.path.read_text(encoding="utf-8")


def test_mtau_fixture():
    p = load_mtau()
    assert p.degree == 127
    assert p.lc == 1 and p[0] == -1
    # leading terms t^127 - t^125 - t^120 + ...
    assert [p[127 - k] for k in range(8)] == [1, 0, -1, 0, 0, 0, 0, -1]


def test_mtau_checksum_detects_edits(tmp_path, monkeypatch):
    data = json.loads(cat.MTAU_FILE.read_text())
    data["coefficients"][5] += 1
    f = tmp_path / "m_tau.json"
    f.write_text(json.dumps(data))
    monkeypatch.setattr(cat, "MTAU_FILE", f)
    with pytest.raises(CatalogError, match="checksum"):
        load_mtau()
    assert load_mtau(verify_checksum=False)[5] == data["coefficients"][5]
    assert mtau_checksum(data["coefficients"]) != data["sha256"]


def test_corrupt_fixture(tmp_path, monkeypatch):
    d = tmp_path / "catalog"
    shutil.copytree(CATALOG_DIR, d, ignore=shutil.ignore_patterns("__init__.py", "__pycache__"))
    (d / "e10.cox").write_text("coxrank 2\n1 3\n4 1\n")
    monkeypatch.setattr(cat, "CATALOG_DIR", d)
    monkeypatch.setattr(cat, "MANIFEST", d / "manifest.json")
    with pytest.raises(CatalogError, match="e10.cox"):
        load_catalog()
    (d / "manifest.json").write_text("{")
    with pytest.raises(CatalogError, match="manifest"):
        load_catalog()


def test_kinds_and_rate_gap_over_catalog():
    tau_lo = Fraction("1.138078743")
    for e in load_catalog():
        r = growth_rate(e.matrix, Fraction(1, 10**8))
        assert r.kind in ("Zero", "One") or r.lo >= tau_lo - Fraction(1, 10**8)
        if classify(e.matrix).kind in (Kind.HYPERBOLIC, Kind.OTHER):
            assert r.lo > 1


def test_verify_entries():
    rep = verify_entries()
    assert rep.ok, rep.lines()


def test_verify_examples():
    rep = verify_examples()
    assert rep.ok, rep.lines()
    # the isomorphism verdict is reported, not asserted
    assert isinstance(rep.data["rank7_mutation"]["invariance"]["coxeter_isomorphic"], bool)


def test_partial_gap_run():
    rep = verify_gap(4, 5)
    assert rep.partial
    assert rep.ok, rep.lines()
    assert rep.lines()[0].endswith("(partial)")


def test_check_counts_controls():
    rep = Report("x")
    check_counts([0] * 72, [0] * 35, [0] * 3, rep)
    assert rep.ok
    rep = Report("x")
    check_counts([0] * 71, [0] * 35, [0] * 3, rep)
    assert not rep.ok
    assert "71" in rep.checks[0].detail


def test_report_serialises():
    rep = Report("demo")
    rep.add("a", True, "fine")
    rep.add("b", False)
    d = rep.to_dict()
    assert d["ok"] is False and [c["name"] for c in d["checks"]] == ["a", "b"]
    json.dumps(d)
