"""conceal-scan command line interface."""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from conceal_scan import __version__
from conceal_scan.classify import classify as classify_views
from conceal_scan.ingest import iter_corpus, parse_rfc5322, select_renderable_html
from conceal_scan.preprocess import normalize_css_availability, run_pipeline
from conceal_scan.report import aggregate, emit_reports
from conceal_scan.sampler import (
    LengthBins,
    SamplePlan,
    assign_stratum,
    stratified_sample,
)
from conceal_scan.service import ReviewStore, create_app, read_jsonl, write_jsonl
from conceal_scan.styles import VisibilityConfig, judge_visibility, resolve_styles
from conceal_scan.dom import parse_html
from conceal_scan.views import compute_views


@click.group()
@click.version_option(version=__version__)
def main():
    """Detect and classify concealed content in HTML emails."""


@main.command()
@click.option("--corpus", required=True, type=click.Path(exists=True, file_okay=False))
def ingest(corpus):
    """Parse a corpus and report what each email contains."""
    for raw in iter_corpus(Path(corpus)):
        try:
            parsed = parse_rfc5322(raw)
        except Exception as exc:
            click.echo(json.dumps({"id": raw.id, "error": str(exc)}))
            continue
        doc = select_renderable_html(parsed)
        click.echo(
            json.dumps(
                {
                    "id": raw.id,
                    "date": list(raw.received_date),
                    "parts": [p.summary() for p in parsed.parts],
                    "has_renderable_html": doc is not None,
                }
            )
        )


def _verdict_row(v) -> dict:
    return {
        "id": v.email_id,
        "date": list(v.received_date),
        "stage_outcome": v.stage_outcome,
        "detail": v.detail,
        "html_length": v.html_length,
    }


@main.command("filter")
@click.option("--corpus", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--counts", "counts_path", required=True, type=click.Path())
def filter_cmd(corpus, out_path, counts_path):
    """Run the eligibility pipeline; write verdicts.jsonl and counts.json."""
    result = run_pipeline(iter_corpus(Path(corpus)))
    write_jsonl(Path(out_path), (_verdict_row(v) for v in result.verdicts))
    Path(counts_path).write_text(json.dumps(result.counts.to_dict(), indent=2))
    click.echo(json.dumps(result.counts.to_dict()))


@main.command()
@click.option("--corpus", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--include-html/--no-include-html", default=True,
              help="Store normalized HTML in the output (needed by serve).")
def scan(corpus, out_path, include_html):
    """Compute both views for every eligible email; write views.jsonl."""
    result = run_pipeline(iter_corpus(Path(corpus)))
    rows = []
    for doc in result.eligible_docs:
        normalized = normalize_css_availability(doc.html)
        pair = compute_views(normalized)
        row = {
            "id": doc.id,
            "date": list(doc.received_date),
            "html_length": doc.html_length,
            **pair.to_dict(),
        }
        if include_html:
            row["normalized_html"] = normalized
        rows.append(row)
    write_jsonl(Path(out_path), rows)
    click.echo(f"wrote {len(rows)} view rows to {out_path}")


def _load_email(corpus: Path, email_id: str):
    for raw in iter_corpus(corpus):
        if raw.id == email_id:
            return raw
    raise click.ClickException(f"email {email_id!r} not found in corpus")


@main.command()
@click.argument("email_id")
@click.option("--corpus", required=True, type=click.Path(exists=True, file_okay=False))
def views(email_id, corpus):
    """Emit both token views and concealed spans for one email."""
    raw = _load_email(Path(corpus), email_id)
    doc = select_renderable_html(parse_rfc5322(raw))
    if doc is None:
        raise click.ClickException("email has no renderable text/html part")
    pair = compute_views(normalize_css_availability(doc.html))
    click.echo(json.dumps(pair.to_dict(), indent=2))


@main.command()
@click.argument("email_id")
@click.option("--corpus", required=True, type=click.Path(exists=True, file_okay=False))
@click.option("--dump-styles", is_flag=True, default=False)
def inspect(email_id, corpus, dump_styles):
    """Dump per-node resolved style and visibility judgment for one email."""
    raw = _load_email(Path(corpus), email_id)
    doc = select_renderable_html(parse_rfc5322(raw))
    if doc is None:
        raise click.ClickException("email has no renderable text/html part")
    tree = parse_html(normalize_css_availability(doc.html))
    resolve_styles(tree)
    if not dump_styles:
        click.echo(json.dumps({"id": doc.id, "html_length": doc.html_length}))
        return
    cfg = VisibilityConfig()
    nodes = []
    for node in tree.iter():
        if node.kind == "text" and node.text.strip():
            judgment, fl = judge_visibility(node, cfg)
            style = node.parent.style if node.parent is not None else None
            nodes.append(
                {
                    "path": node.path(),
                    "text": node.text[:120],
                    "visible": judgment.visible,
                    "reasons": sorted(r.value for r in judgment.reasons),
                    "first_letter_visible": fl.visible if fl else None,
                    "style": {
                        "color": [style.color.r, style.color.g, style.color.b, style.color.a],
                        "effective_background": [
                            style.effective_background.r,
                            style.effective_background.g,
                            style.effective_background.b,
                        ],
                        "font_size": style.font_size,
                        "display": style.display,
                        "visibility": style.visibility,
                    }
                    if style is not None
                    else None,
                }
            )
    click.echo(json.dumps(nodes, indent=2))


@main.command()
@click.option("--verdicts", "verdicts_path", required=True, type=click.Path(exists=True))
@click.option("--views", "views_path", required=True, type=click.Path(exists=True))
@click.option("--target", default=7, show_default=True)
@click.option("--cap", default=13, show_default=True)
@click.option("--seed", default=0, show_default=True)
@click.option("--length-edges", default=None,
              help="Comma-separated 6-edge list overriding the computed length bins.")
@click.option("--no-top-up", is_flag=True, default=False)
@click.option("--out", "out_path", required=True, type=click.Path())
def sample(verdicts_path, views_path, target, cap, seed, length_edges, no_top_up, out_path):
    """Draw a deterministic stratified sample of eligible emails."""
    views_rows = read_jsonl(Path(views_path))
    if length_edges:
        bins = LengthBins(edges=tuple(float(e) for e in length_edges.split(",")))
    else:
        bins = LengthBins.from_lengths([r["html_length"] for r in views_rows])

    labeled = []
    stratum_of = {}
    for row in views_rows:
        label = assign_stratum(
            row["date"][0], row["jaccard"], row["html_length"], bins
        )
        if label is not None:
            labeled.append((row["id"], label))
            stratum_of[row["id"]] = label.key()

    plan = SamplePlan(
        target_per_stratum=target, cap_per_stratum=cap, seed=seed,
        top_up=not no_top_up,
    )
    result = stratified_sample(labeled, plan)
    write_jsonl(
        Path(out_path),
        ({"id": i, "stratum": stratum_of[i]} for i in result.sampled_ids),
    )
    click.echo(
        json.dumps(
            {
                "sampled": len(result.sampled_ids),
                "strata": len(result.per_stratum),
                "shortfalls": result.shortfalls,
                "length_edges": list(bins.edges),
            }
        )
    )


@main.command("classify")
@click.option("--sample", "sample_path", required=True, type=click.Path(exists=True))
@click.option("--views", "views_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_path", required=True, type=click.Path())
def classify_cmd(sample_path, views_path, out_path):
    """Auto-classify sampled emails into sub-types and CSS tricks."""
    from conceal_scan.views import ConcealedSpan, ViewPair
    from conceal_scan.metrics import jaccard_distance

    sample_ids = [row["id"] for row in read_jsonl(Path(sample_path))]
    views_by_id = {row["id"]: row for row in read_jsonl(Path(views_path))}
    rows = []
    for email_id in sample_ids:
        view = views_by_id.get(email_id)
        if view is None:
            raise click.ClickException(f"no view row for sampled email {email_id!r}")
        pair = ViewPair(
            mail_filter_tokens=view["mail_filter_tokens"],
            recipient_tokens=view["recipient_tokens"],
            concealed_spans=[
                ConcealedSpan.from_dict(s) for s in view["concealed_spans"]
            ],
            jaccard=view["jaccard"],
        )
        rows.append(classify_views(email_id, pair).to_dict())
    write_jsonl(Path(out_path), rows)
    click.echo(f"classified {len(rows)} emails -> {out_path}")


@main.command()
@click.option("--records", "records_path", required=True, type=click.Path(exists=True))
@click.option("--verdicts", "verdicts_path", required=True, type=click.Path(exists=True))
@click.option("--views", "views_path", required=True, type=click.Path(exists=True))
@click.option("--out", "out_dir", required=True, type=click.Path())
def report(records_path, verdicts_path, views_path, out_dir):
    """Aggregate records into the report bundle and figure CSVs."""
    from conceal_scan.classify import ConcealmentRecord
    from conceal_scan.preprocess import FilterVerdict

    records = [ConcealmentRecord.from_dict(r) for r in read_jsonl(Path(records_path))]
    verdicts = [
        FilterVerdict(
            email_id=r["id"],
            received_date=tuple(r["date"]),
            stage_outcome=r["stage_outcome"],
            detail=r.get("detail", ""),
            html_length=r.get("html_length", 0),
        )
        for r in read_jsonl(Path(verdicts_path))
    ]
    views_map = {r["id"]: r for r in read_jsonl(Path(views_path))}
    lengths = [r["html_length"] for r in views_map.values()]
    bins = LengthBins.from_lengths(lengths) if lengths else None
    bundle = aggregate(records, verdicts, views_map, length_bins=bins)
    files = emit_reports(bundle, Path(out_dir))
    click.echo(json.dumps({"written": [str(f) for f in files]}))


@main.command()
@click.option("--sample", "sample_path", required=True, type=click.Path(exists=True))
@click.option("--views", "views_path", required=True, type=click.Path(exists=True))
@click.option("--records", "records_path", required=True, type=click.Path(exists=True))
@click.option("--labels", "labels_path", required=True, type=click.Path())
@click.option("--verdicts", "verdicts_path", default=None, type=click.Path())
@click.option("--corpus", default=None, type=click.Path(exists=True, file_okay=False))
@click.option("--ui-dir", default=None, type=click.Path(file_okay=False))
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8008, show_default=True)
def serve(sample_path, views_path, records_path, labels_path, verdicts_path,
          corpus, ui_dir, host, port):
    """Serve the triage API and UI."""
    import uvicorn

    store = ReviewStore.load(
        sample_path=Path(sample_path),
        views_path=Path(views_path),
        records_path=Path(records_path),
        labels_path=Path(labels_path),
        corpus_dir=Path(corpus) if corpus else None,
        verdicts_path=Path(verdicts_path) if verdicts_path else None,
    )
    app = create_app(store, ui_dir=Path(ui_dir) if ui_dir else None)
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    sys.exit(main())
