import json

import pytest

from padicisog.cli import default_corpus_path, main
from padicisog.verify import (
    CorpusEntry,
    CorpusError,
    analyze_entry,
    load_corpus,
    run_verification,
    select_kernel,
)
from padicisog.weierstrass import WeierstrassModel


def test_load_corpus_reports_line_numbers(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"label": "a", "coefficients": ["0","0","1","0","0"], "p": 3}\nnot json\n')
    with pytest.raises(CorpusError, match="line 2"):
        load_corpus(str(path))


def test_load_corpus_skips_comments_and_blanks(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text(
        '# a comment\n\n'
        '{"label": "a", "coefficients": ["0","0","1","0","0"], "p": 3}\n'
    )
    entries = load_corpus(str(path))
    assert len(entries) == 1
    assert entries[0].f == 1 and entries[0].kernel is None


def test_builtin_corpus_loads():
    entries = load_corpus(default_corpus_path())
    assert len(entries) >= 16
    assert len({e.label for e in entries}) == len(entries)


def test_select_kernel_requires_choice_when_ambiguous():
    m = WeierstrassModel.from_list([0, 0, 1, 0, 0])
    with pytest.raises(CorpusError, match="explicit kernel"):
        select_kernel(m, 3)
    h = select_kernel(m, 3, ["0", "1"])
    assert h.coeffs == (0, 1)


def test_select_kernel_no_isogeny():
    with pytest.raises(CorpusError, match="no rational"):
        select_kernel(WeierstrassModel.from_list([0, 0, 0, 1, 0]), 3)


def test_analyze_entry_record_shape():
    entry = CorpusEntry(
        label="t", coefficients=["0", "0", "0", "0", "1"], p=3
    )
    an = analyze_entry(entry)
    rec = an.to_record()
    assert set(rec) == {"label", "p", "f", "E", "E_prime", "alpha_exponent",
                        "alpha", "checks"}
    assert set(rec["E"]) == {"v_min", "kodaira", "m", "conductor", "reduction"}
    assert all(c["status"] in ("pass", "fail", "skip") for c in rec["checks"])
    assert not any(c["status"] == "fail" for c in rec["checks"])


def test_expected_block_mismatch_fails():
    entry = CorpusEntry(
        label="t", coefficients=["0", "0", "0", "0", "1"], p=3,
        expected={"v_min": 99},
    )
    an = analyze_entry(entry)
    exp = [c for c in an.checks if c.name == "expected_block"][0]
    assert exp.status == "fail"
    assert "expected 99" in exp.detail


def test_residue_degree_changes_alpha_label():
    entry = CorpusEntry(
        label="t", coefficients=["0", "0", "0", "0", "-27"], p=3, f=2,
        kernel=["0", "1"],
    )
    an = analyze_entry(entry)
    assert an.alpha_exponent == 1
    assert an.to_record()["alpha"] == "3^2"


def test_report_isolates_entry_errors(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text(
        '{"label": "bad", "coefficients": ["0","0","0","1","0"], "p": 3}\n'
        '{"label": "good", "coefficients": ["0","0","0","0","1"], "p": 3}\n'
    )
    report = run_verification(str(path))
    assert not report.all_passed()
    doc = report.to_document()
    assert doc["summary"]["entry_errors"] == 1
    labels = [r["label"] for r in doc["entries"]]
    assert labels == ["bad", "good"]  # deterministic label order
    assert "error" in doc["entries"][0]


def test_report_renders_json():
    report = run_verification([CorpusEntry(
        label="t", coefficients=["0", "0", "0", "0", "1"], p=3
    )])
    doc = json.loads(report.render())
    assert "unramified" in doc["header"]["note"]
    assert doc["summary"]["failed"] == 0


def test_cli_analyze(capsys):
    code = main(["analyze", "--curve", "0,0,1,0,0", "--p", "3",
                 "--kernel", "0,1"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["E"]["kodaira"] == "II"
    assert doc["E_prime"]["kodaira"] == "IVs"
    assert doc["alpha_exponent"] == 0


def test_cli_verify_small_corpus(tmp_path, capsys):
    path = tmp_path / "c.jsonl"
    path.write_text('{"label": "a", "coefficients": ["0","0","0","0","1"], "p": 3}\n')
    out = tmp_path / "report.json"
    code = main(["verify", "--corpus", str(path), "--out", str(out)])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["summary"]["failed"] == 0


def test_cli_verify_nonzero_exit_on_failure(tmp_path, capsys):
    path = tmp_path / "c.jsonl"
    path.write_text('{"label": "a", "coefficients": ["0","0","0","1","0"], "p": 3}\n')
    assert main(["verify", "--corpus", str(path)]) == 1


def test_cli_series_phi(capsys):
    code = main(["series", "--curve", "0,0,0,0,1", "--p", "3", "--op", "phi",
                 "--precision", "8"])
    assert code == 0
    out = capsys.readouterr().out
    assert "Phi(T) = T" in out
    assert "val_p(a1) = 0" in out


def test_cli_bad_input_exits_2(capsys):
    assert main(["analyze", "--curve", "0,0,0,0,0", "--p", "3"]) == 2
