import json

from g2check.modules.report import Report, ReportTree


def sample_report() -> Report:
    report = Report("verify-paper")
    report.add("nII nilpotency class", True, 2, "example nII", "catalog")
    report.add("m is nilpotent", True, "class 5", "subalgebra m", "m")
    report.facts["conclusion"] = "flat torus"
    return report


def test_report_status() -> None:
    report = sample_report()
    assert report.passed and report.exit_code() == 0
    report.add("conclusion", False, "inconclusive", "case analysis", "theorem", witness="nI(+1)")
    assert not report.passed and report.exit_code() == 1


def test_machine_lines() -> None:
    lines = sample_report().machine_lines()
    assert len(lines) == 3
    first = json.loads(lines[0])
    assert first == {
        "anchor": "example nII",
        "detail": "2",
        "name": "nII nilpotency class",
        "passed": True,
        "section": "catalog",
        "witness": None,
    }
    summary = json.loads(lines[-1])
    assert summary["status"] == "pass"
    assert summary["checks"] == 2 and summary["failed"] == 0
    assert summary["facts"] == {"conclusion": "flat torus"}


def test_table() -> None:
    table = sample_report().to_table()
    assert "nII nilpotency class" in table
    assert "PASS" in table
    assert "conclusion: flat torus" in table


def test_extend_sets_section() -> None:
    report = Report("verify-paper")
    other = Report("g2 check")
    other.add("invariant three-forms", True)
    report.extend(other, "g2")
    assert report.records[0].section == "g2"


def test_save(tmp_path) -> None:
    path = sample_report().save(str(tmp_path))
    assert path.endswith("verify-paper.jsonl")
    with open(path) as f:
        assert len(f.read().splitlines()) == 3


def test_tree() -> None:
    tree = ReportTree(sample_report())
    tree.load()
    assert tree.contains("verify-paper/catalog")
    assert tree.contains("catalog/nII nilpotency class")
    rendered = tree.render()
    assert "verify-paper [pass]" in rendered
    assert "m is nilpotent [pass]" in rendered


def test_tree_keeps_repeated_names() -> None:
    report = sample_report()
    report.add("nII nilpotency class", False, 3, "example nII", "catalog")
    tree = ReportTree(report)
    tree.load()
    assert len(tree.leaves()) == len(report.records)
    assert tree.contains("catalog/nII nilpotency class#2")
    assert "nII nilpotency class [FAIL]" in tree.render()
