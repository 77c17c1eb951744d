"""Classification reports, serialization, caching, table verification."""

import json

import pytest

import p2qbrace.report as report_mod
from p2qbrace.report import (
    CacheError,
    cache_path,
    classify,
    conjecture,
    export,
    import_cache,
    verify_tables,
    write_cache,
)
from helpers import report_of


def test_classify_order28_totals_and_consistency():
    rep = report_of(2, 7)
    assert (rep.s_total, rep.a_total, rep.b_total) == (29, 9, 20)
    assert rep.complete and not rep.skipped
    assert rep.n == 28
    assert set(rep.rows) == {"CyclicP2Q", "PxPQ", "QbyP2_ordP", "PxQbyP"}
    assert rep.rows["CyclicP2Q"]["abelian"]
    assert not rep.rows["QbyP2_ordP"]["abelian"]
    rep.check_consistency()


def test_classify_rejects_bad_arguments():
    with pytest.raises(ValueError):
        classify(4, 7)
    with pytest.raises(ValueError):
        classify(2, 7, strategy="nonsense")
    with pytest.raises(ValueError):
        classify(2, 7, additive="NoSuchType")
    with pytest.raises(ValueError):
        classify(2, 7, budget="huge")


def test_classify_single_family():
    rep = classify(2, 7, additive="QbyP2_ordP")
    assert list(rep.rows) == ["QbyP2_ordP"]
    assert rep.rows["QbyP2_ordP"]["total"] == 10
    # partial reports are marked incomplete about the other families
    full = report_of(2, 7)
    assert full.rows["QbyP2_ordP"] == rep.rows["QbyP2_ordP"]


def test_both_strategies_cross_validate():
    rep = report_of(2, 5, strategy="both")
    assert rep.s_total == 43
    assert rep.complete


def test_parallel_jobs_give_the_same_report():
    seq = report_of(2, 5)
    par = classify(2, 5, jobs=2)
    assert par.rows == seq.rows
    assert (par.a_total, par.b_total) == (seq.a_total, seq.b_total)


def test_budget_skips_oversized_holomorphs(monkeypatch):
    monkeypatch.setattr(report_mod, "NORMAL_HOL_LIMIT", 100)
    rep = classify(2, 5)
    assert not rep.complete
    assert rep.skipped
    with pytest.raises(ValueError):
        conjecture(2, 5)
    monkeypatch.setattr(report_mod, "NORMAL_HOL_LIMIT", 150_000)


def test_export_json_round_trips():
    rep = report_of(2, 7)
    data = json.loads(export(rep, "json"))
    assert data["totals"] == {"A": 9, "B": 20, "s": 29}
    assert data["p"] == 2 and data["q"] == 7 and data["n"] == 28
    assert data["complete"] is True
    cells = {r["mul"]: r["count"] for r in data["rows"]["QbyP2_ordP"]["cells"]}


def test_export_csv_shape():
    rep = report_of(2, 7)
    lines = export(rep, "csv").strip().splitlines()
    assert lines[0] == "additive,multiplicative,kernel_size,count"
    assert len(lines) - 1 == sum(len(r["cells"]) for r in rep.rows.values())
    total = sum(int(ln.rsplit(",", 1)[1]) for ln in lines[1:])
    assert total == 29


def test_export_md_contains_the_tables():
    rep = report_of(2, 7)
    text = export(rep, "md")
    assert "s(28) = 29" in text or "29" in text
    assert "QbyP2_ordP" in text or "Z7:Z4" in text
    with pytest.raises(ValueError):
        export(rep, "xml")


def test_export_writes_file(tmp_path):
    rep = report_of(2, 7)
    out = tmp_path / "r.json"
    text = export(rep, "json", path=str(out))
    assert out.read_text() == text


def test_cache_round_trip(tmp_path):
    path = write_cache(str(tmp_path), 2, 7, "QbyP2_ordP", "first")
    assert path == cache_path(str(tmp_path), 2, 7, "QbyP2_ordP", "first")
    data = import_cache(path)
    assert data["additive"] == "QbyP2_ordP"
    assert len(data["classes"]) == 10
    labels = sorted(c.mul_label.key() for c in data["classes"])
    assert labels.count("PxQbyP") == 4


def test_cache_rejects_tampered_reps(tmp_path):
    path = write_cache(str(tmp_path), 2, 7, "QbyP2_ordP", "first")
    data = json.loads(open(path).read())
    # swap a stored multiplicative label: revalidation must notice
    data["orbits"][0]["mul_label"] = (
        "PxPQ" if data["orbits"][0]["mul_label"] != "PxPQ" else "CyclicP2Q"
    )
    open(path, "w").write(json.dumps(data))
    with pytest.raises(CacheError):
        import_cache(path)


def test_cache_rejects_edited_elements(tmp_path):
    path = write_cache(str(tmp_path), 2, 7, "CyclicP2Q", "first")
    data = json.loads(open(path).read())
    data["orbits"][0]["rep"][3][0] = (data["orbits"][0]["rep"][3][0] + 1) % 28
    open(path, "w").write(json.dumps(data))
    with pytest.raises(CacheError):
        import_cache(path)


def test_cache_rejects_wrong_version(tmp_path):
    path = write_cache(str(tmp_path), 2, 7, "CyclicP2Q", "first")
    data = json.loads(open(path).read())
    data["version"] = 999
    open(path, "w").write(json.dumps(data))
    with pytest.raises(CacheError):
        import_cache(path)


def test_cache_rejects_garbage(tmp_path):
    path = tmp_path / "x.json"
    path.write_text("{not json")
    with pytest.raises(CacheError):
        import_cache(str(path))


def test_classify_uses_the_cache(tmp_path):
    first = classify(2, 5, cache_dir=str(tmp_path))
    second = classify(2, 5, cache_dir=str(tmp_path))
    assert first.rows == second.rows
    assert (second.a_total, second.b_total) == (11, 32)


def test_verify_tables_order28():
    ok, diffs = verify_tables(2, 7)
    assert ok, diffs
    assert diffs == []


def test_verify_tables_rejects_order12():
    with pytest.raises(ValueError):
        verify_tables(2, 3)


def test_conjecture_order28():
    out = conjecture(2, 7)
    assert out["match"] is True
    assert out["s_computed"] == out["s_formula"] == 29


def test_conjecture_without_closed_form():
    out = conjecture(5, 3)
    assert out["match"] is None
    assert out["s_formula"] is None
    assert out["B_computed"] == 9
