"""HTTP review service: serves sampled emails with their four
perspectives and persists analyst labels to an append-only JSONL log."""

from __future__ import annotations

import difflib
import json
import os
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

from fastapi import FastAPI, HTTPException, Query
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from conceal_scan.classify import ConcealmentRecord, SubType, Trick
from conceal_scan.preprocess import FilterVerdict
from conceal_scan.report import aggregate, emit_reports  # noqa: F401 (emit unused here)

VALID_SUBTYPES = {s.value for s in SubType}
VALID_TRICKS = {t.value for t in Trick}


def read_jsonl(path: Path) -> List[dict]:
    rows = []
    with Path(path).open() as fh:
        for line in fh:
            line = line.strip()
            if line:
                rows.append(json.loads(line))
    return rows


def write_jsonl(path: Path, rows) -> None:
    with Path(path).open("w") as fh:
        for row in rows:
            fh.write(json.dumps(row) + "\n")


class LabelLog:
    """Append-only label history. A label is durable (flushed and fsynced)
    before the write call returns; the latest record per email wins."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self.latest: Dict[str, dict] = {}
        self.history: List[dict] = []
        if self.path.exists():
            for row in read_jsonl(self.path):
                self.history.append(row)
                self.latest[row["id"]] = row

    def append(self, record: dict) -> dict:
        with self._lock:
            with self.path.open("a") as fh:
                fh.write(json.dumps(record) + "\n")
                fh.flush()
                os.fsync(fh.fileno())
            self.history.append(record)
            self.latest[record["id"]] = record
        return record


@dataclass
class ReviewStore:
    sample_rows: List[dict]
    views: Dict[str, dict]
    records: Dict[str, dict]
    labels: LabelLog
    raw_sources: Dict[str, str] = field(default_factory=dict)
    verdicts: List[FilterVerdict] = field(default_factory=list)

    @staticmethod
    def load(
        sample_path: Path,
        views_path: Path,
        records_path: Path,
        labels_path: Path,
        corpus_dir: Optional[Path] = None,
        verdicts_path: Optional[Path] = None,
    ) -> "ReviewStore":
        sample_rows = sorted(read_jsonl(sample_path), key=lambda r: r["id"])
        views = {row["id"]: row for row in read_jsonl(views_path)}
        records = {row["id"]: row for row in read_jsonl(records_path)}
        raw_sources: Dict[str, str] = {}
        if corpus_dir is not None:
            corpus_dir = Path(corpus_dir)
            for row in sample_rows:
                path = corpus_dir / row["id"]
                if path.exists():
                    raw_sources[row["id"]] = path.read_bytes().decode(
                        "utf-8", errors="replace"
                    )
        verdicts: List[FilterVerdict] = []
        if verdicts_path is not None and Path(verdicts_path).exists():
            for row in read_jsonl(verdicts_path):
                verdicts.append(
                    FilterVerdict(
                        email_id=row["id"],
                        received_date=tuple(row["date"]),
                        stage_outcome=row["stage_outcome"],
                        detail=row.get("detail", ""),
                        html_length=row.get("html_length", 0),
                    )
                )
        return ReviewStore(
            sample_rows=sample_rows,
            views=views,
            records=records,
            labels=LabelLog(Path(labels_path)),
            raw_sources=raw_sources,
            verdicts=verdicts,
        )


class LabelIn(BaseModel):
    has_concealment: bool
    subtypes: List[str] = []
    tricks: List[str] = []
    note: str = ""


def token_diff(mail_filter: List[str], recipient: List[str]) -> List[list]:
    """Opcode list aligning the mail-filter tokens to the recipient tokens."""
    matcher = difflib.SequenceMatcher(a=mail_filter, b=recipient, autojunk=False)
    return [list(op) for op in matcher.get_opcodes()]


def create_app(store: ReviewStore, ui_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="conceal-scan review service")
    app.state.store = store

    @app.get("/api/sample")
    def list_sample(
        stratum: Optional[str] = None,
        labeled: Optional[bool] = None,
        page: int = Query(default=1, ge=1),
        page_size: int = Query(default=50, ge=1, le=500),
    ):
        rows = store.sample_rows
        if stratum is not None:
            rows = [r for r in rows if r.get("stratum") == stratum]
        if labeled is not None:
            rows = [
                r for r in rows if (r["id"] in store.labels.latest) == labeled
            ]
        total = len(rows)
        pages = max(1, -(-total // page_size))
        start = (page - 1) * page_size
        items = []
        for row in rows[start:start + page_size]:
            record = store.records.get(row["id"], {})
            items.append(
                {
                    "id": row["id"],
                    "stratum": row.get("stratum"),
                    "labeled": row["id"] in store.labels.latest,
                    "auto": {
                        "has_concealment": record.get("has_concealment", False),
                        "subtypes": record.get("subtypes", []),
                        "tricks": record.get("tricks", []),
                    },
                }
            )
        return {"items": items, "page": page, "pages": pages, "total": total}

    @app.get("/api/emails/{email_id:path}/perspectives")
    def get_perspectives(email_id: str):
        view = store.views.get(email_id)
        if view is None:
            raise HTTPException(status_code=404, detail="unknown email id")
        record = store.records.get(email_id, {})
        human = store.labels.latest.get(email_id)
        return {
            "id": email_id,
            "raw_source": store.raw_sources.get(email_id, ""),
            "normalized_html": view.get("normalized_html", ""),
            "mail_filter_tokens": view["mail_filter_tokens"],
            "recipient_tokens": view["recipient_tokens"],
            "token_diff": token_diff(
                view["mail_filter_tokens"], view["recipient_tokens"]
            ),
            "spans": view.get("concealed_spans", []),
            "auto_labels": {
                "has_concealment": record.get("has_concealment", False),
                "subtypes": record.get("subtypes", []),
                "tricks": record.get("tricks", []),
            },
            "human_labels": human,
        }

    @app.post("/api/emails/{email_id:path}/labels")
    def post_label(email_id: str, label: LabelIn):
        if email_id not in store.views:
            raise HTTPException(status_code=404, detail="unknown email id")
        bad_subtypes = set(label.subtypes) - VALID_SUBTYPES
        bad_tricks = set(label.tricks) - VALID_TRICKS
        if bad_subtypes or bad_tricks:
            raise HTTPException(
                status_code=422,
                detail=f"invalid enum values: {sorted(bad_subtypes | bad_tricks)}",
            )
        record = {
            "id": email_id,
            "has_concealment": label.has_concealment,
            "subtypes": sorted(set(label.subtypes)),
            "tricks": sorted(set(label.tricks)),
            "note": label.note,
            "timestamp": time.time(),
            "source": "human",
        }
        return store.labels.append(record)

    @app.get("/api/stats")
    def stats():
        records = []
        for email_id, auto in store.records.items():
            human = store.labels.latest.get(email_id)
            if human is not None:
                records.append(
                    ConcealmentRecord(
                        email_id=email_id,
                        has_concealment=human["has_concealment"],
                        subtypes=frozenset(SubType(s) for s in human["subtypes"]),
                        tricks=frozenset(Trick(t) for t in human["tricks"]),
                        label_source="human",
                    )
                )
            else:
                records.append(ConcealmentRecord.from_dict(auto))
        views = {
            email_id: {"jaccard": view["jaccard"]}
            for email_id, view in store.views.items()
        }
        records = [r for r in records if r.email_id in views]
        bundle = aggregate(records, store.verdicts, views)
        return {
            "pipeline_counts": bundle.pipeline_counts,
            "concealed": bundle.concealed_total,
            "clean": bundle.clean_total,
            "mean_jaccard_with": bundle.mean_jaccard_with,
            "mean_jaccard_without": bundle.mean_jaccard_without,
            "subtype_venn": {
                "+".join(sorted(s.value for s in region)): count
                for region, count in bundle.subtype_venn.items()
            },
            "trick_combinations": {
                "+".join(sorted(t.value for t in combo)): count
                for combo, count in bundle.trick_combinations.items()
            },
        }

    if ui_dir is None:
        ui_dir = Path(__file__).resolve().parent / "ui"
    ui_dir = Path(ui_dir)
    if ui_dir.is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
