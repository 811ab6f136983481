import json

import pytest
from click.testing import CliRunner

from conceal_scan.cli import main
from conceal_scan.service import read_jsonl
from conceal_scan.synthetic import generate_corpus


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli_corpus")
    generate_corpus(root, per_subtype=3, clean=3, seed=5)
    return root


@pytest.fixture(scope="module")
def artifacts(corpus, tmp_path_factory):
    """filter -> scan -> sample -> classify chained through the CLI."""
    out = tmp_path_factory.mktemp("cli_out")
    runner = CliRunner()

    r = runner.invoke(main, [
        "filter", "--corpus", str(corpus),
        "--out", str(out / "verdicts.jsonl"),
        "--counts", str(out / "counts.json"),
    ])
    assert r.exit_code == 0, r.output

    r = runner.invoke(main, [
        "scan", "--corpus", str(corpus), "--out", str(out / "views.jsonl"),
    ])
    assert r.exit_code == 0, r.output

    r = runner.invoke(main, [
        "sample", "--verdicts", str(out / "verdicts.jsonl"),
        "--views", str(out / "views.jsonl"),
        "--target", "7", "--cap", "13", "--seed", "1",
        "--out", str(out / "sample.jsonl"),
    ])
    assert r.exit_code == 0, r.output

    r = runner.invoke(main, [
        "classify", "--sample", str(out / "sample.jsonl"),
        "--views", str(out / "views.jsonl"),
        "--out", str(out / "records.jsonl"),
    ])
    assert r.exit_code == 0, r.output
    return out


def test_filter_counts(artifacts):
    counts = json.loads((artifacts / "counts.json").read_text())
    assert counts["eligible"] == 12
    assert counts["total"] == 12


def test_scan_views(artifacts):
    rows = read_jsonl(artifacts / "views.jsonl")
    assert len(rows) == 12
    for row in rows:
        assert set(row) >= {
            "id", "date", "html_length", "mail_filter_tokens",
            "recipient_tokens", "concealed_spans", "jaccard", "normalized_html",
        }


def test_sample_covers_eligible(artifacts):
    rows = read_jsonl(artifacts / "sample.jsonl")
    assert 0 < len(rows) <= 12
    assert all("," in row["stratum"] for row in rows)


def test_classified_records(artifacts):
    records = {r["id"]: r for r in read_jsonl(artifacts / "records.jsonl")}
    concealed = [r for r in records.values() if r["has_concealment"]]
    clean = [r for r in records.values() if not r["has_concealment"]]
    assert all("clean" in r["id"] for r in clean)
    assert all(r["subtypes"] and r["tricks"] for r in concealed)


def test_report_command(artifacts, tmp_path):
    runner = CliRunner()
    r = runner.invoke(main, [
        "report", "--records", str(artifacts / "records.jsonl"),
        "--verdicts", str(artifacts / "verdicts.jsonl"),
        "--views", str(artifacts / "views.jsonl"),
        "--out", str(tmp_path),
    ])
    assert r.exit_code == 0, r.output
    assert (tmp_path / "counts.json").exists()
    assert (tmp_path / "subtype_venn.csv").exists()


def test_views_command(corpus):
    runner = CliRunner()
    r = runner.invoke(main, ["views", "2007-07/disrupt_000.txt", "--corpus", str(corpus)])
    assert r.exit_code == 0, r.output
    payload = json.loads(r.output)
    assert payload["mail_filter_tokens"] != payload["recipient_tokens"]


def test_views_command_unknown_id(corpus):
    runner = CliRunner()
    r = runner.invoke(main, ["views", "nope.txt", "--corpus", str(corpus)])
    assert r.exit_code != 0


def test_inspect_dump_styles(corpus):
    runner = CliRunner()
    r = runner.invoke(main, [
        "inspect", "2007-07/addpara_000.txt", "--corpus", str(corpus),
        "--dump-styles",
    ])
    assert r.exit_code == 0, r.output
    nodes = json.loads(r.output)
    assert any(not n["visible"] for n in nodes)
    assert any(n["visible"] for n in nodes)
