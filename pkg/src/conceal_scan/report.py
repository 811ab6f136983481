"""Aggregation of verdicts, distances, and concealment records into the
result artifacts: pipeline counts, per-stratum histograms, sub-type Venn
regions, trick combination counts, and the trick x sub-type heatmap."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from conceal_scan.classify import ConcealmentRecord, SubType, Trick
from conceal_scan.preprocess import FilterVerdict, PipelineCounts
from conceal_scan.sampler import (
    JACCARD_BIN_LABELS,
    LengthBins,
    YEAR_MAX,
    YEAR_MIN,
    jaccard_bin,
)


class MissingJoinKey(Exception):
    pass


@dataclass
class ReportBundle:
    pipeline_counts: dict
    by_year: Dict[int, Tuple[int, int]]  # year -> (with, without)
    by_jaccard_bin: Dict[int, Tuple[int, int]]
    by_length_bin: Dict[int, Tuple[int, int]]
    subtype_venn: Dict[FrozenSet[SubType], int]
    trick_combinations: Dict[FrozenSet[Trick], int]
    heatmap: Dict[Tuple[Trick, SubType], int]
    mean_jaccard_with: float
    mean_jaccard_without: float
    concealed_total: int = 0
    clean_total: int = 0

    @property
    def concealed_fraction(self) -> float:
        total = self.concealed_total + self.clean_total
        return self.concealed_total / total if total else 0.0


def _two_way(counts: Dict, key, concealed: bool) -> None:
    w, wo = counts.get(key, (0, 0))
    counts[key] = (w + 1, wo) if concealed else (w, wo + 1)


def aggregate(
    records: Sequence[ConcealmentRecord],
    verdicts: Sequence[FilterVerdict],
    views: Dict[str, dict],
    counts: Optional[PipelineCounts] = None,
    length_bins: Optional[LengthBins] = None,
) -> ReportBundle:
    """Join records with their views/verdicts and compute every figure.

    views maps email id -> {"jaccard": float, ...}; verdicts supply date
    and html_length. Raises MissingJoinKey when a record has no view.
    """
    verdict_by_id = {v.email_id: v for v in verdicts}
    if counts is None:
        counts = PipelineCounts()
        for v in verdicts:
            counts.add(v)

    by_year: Dict[int, Tuple[int, int]] = {}
    by_jbin: Dict[int, Tuple[int, int]] = {}
    by_lbin: Dict[int, Tuple[int, int]] = {}
    venn: Dict[FrozenSet[SubType], int] = {}
    combos: Dict[FrozenSet[Trick], int] = {}
    heatmap: Dict[Tuple[Trick, SubType], int] = {}
    jac_with: List[float] = []
    jac_without: List[float] = []

    for record in records:
        view = views.get(record.email_id)
        if view is None:
            raise MissingJoinKey(record.email_id)
        verdict = verdict_by_id.get(record.email_id)
        jaccard = float(view["jaccard"])
        concealed = record.has_concealment

        if verdict is not None:
            year = verdict.received_date[0]
            if YEAR_MIN <= year <= YEAR_MAX:
                _two_way(by_year, year, concealed)
            if length_bins is not None:
                lbin = length_bins.assign(verdict.html_length)
                if lbin is not None:
                    _two_way(by_lbin, lbin, concealed)
        _two_way(by_jbin, jaccard_bin(jaccard), concealed)

        if concealed:
            jac_with.append(jaccard)
            venn[record.subtypes] = venn.get(record.subtypes, 0) + 1
            combos[record.tricks] = combos.get(record.tricks, 0) + 1
            for trick in record.tricks:
                for subtype in record.subtypes:
                    heatmap[(trick, subtype)] = heatmap.get((trick, subtype), 0) + 1
        else:
            jac_without.append(jaccard)

    return ReportBundle(
        pipeline_counts=counts.to_dict(),
        by_year=by_year,
        by_jaccard_bin=by_jbin,
        by_length_bin=by_lbin,
        subtype_venn=venn,
        trick_combinations=combos,
        heatmap=heatmap,
        mean_jaccard_with=sum(jac_with) / len(jac_with) if jac_with else 0.0,
        mean_jaccard_without=sum(jac_without) / len(jac_without) if jac_without else 0.0,
        concealed_total=len(jac_with),
        clean_total=len(jac_without),
    )


def _write_csv(path: Path, header: List[str], rows: List[list]) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def emit_reports(bundle: ReportBundle, out_dir: Path) -> List[Path]:
    """Serialize the bundle as counts.json plus the figure CSVs."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: List[Path] = []

    counts_path = out_dir / "counts.json"
    counts_path.write_text(
        json.dumps(
            {
                "pipeline": bundle.pipeline_counts,
                "concealed": bundle.concealed_total,
                "clean": bundle.clean_total,
                "concealed_pct": round(100 * bundle.concealed_fraction, 1),
                "mean_jaccard_with": bundle.mean_jaccard_with,
                "mean_jaccard_without": bundle.mean_jaccard_without,
            },
            indent=2,
        )
    )
    written.append(counts_path)

    year_rows = [
        [year, *bundle.by_year.get(year, (0, 0))]
        for year in range(YEAR_MIN, YEAR_MAX + 1)
    ]
    path = out_dir / "concealment_by_year.csv"
    _write_csv(path, ["year", "with_concealment", "no_concealment"], year_rows)
    written.append(path)

    jac_rows = [
        [JACCARD_BIN_LABELS[b], *bundle.by_jaccard_bin.get(b, (0, 0))]
        for b in range(5)
    ]
    path = out_dir / "concealment_by_jaccard.csv"
    _write_csv(path, ["jaccard_bin", "with_concealment", "no_concealment"], jac_rows)
    written.append(path)

    len_rows = [
        [b, *bundle.by_length_bin.get(b, (0, 0))] for b in range(5)
    ]
    path = out_dir / "concealment_by_length.csv"
    _write_csv(path, ["part_length_bin", "with_concealment", "no_concealment"], len_rows)
    written.append(path)

    venn_rows = [
        ["+".join(sorted(s.value for s in region)), count]
        for region, count in sorted(
            bundle.subtype_venn.items(),
            key=lambda kv: "+".join(sorted(s.value for s in kv[0])),
        )
    ]
    path = out_dir / "subtype_venn.csv"
    _write_csv(path, ["subtypes", "count"], venn_rows)
    written.append(path)

    combo_rows = [
        ["+".join(sorted(t.value for t in combo)), count]
        for combo, count in sorted(
            bundle.trick_combinations.items(),
            key=lambda kv: (-kv[1], "+".join(sorted(t.value for t in kv[0]))),
        )
    ]
    path = out_dir / "trick_combinations.csv"
    _write_csv(path, ["tricks", "count"], combo_rows)
    written.append(path)

    heat_rows = []
    for trick in Trick:
        row = [trick.value]
        for subtype in SubType:
            row.append(bundle.heatmap.get((trick, subtype), 0))
        heat_rows.append(row)
    path = out_dir / "heatmap.csv"
    _write_csv(path, ["trick", *(s.value for s in SubType)], heat_rows)
    written.append(path)

    return written
