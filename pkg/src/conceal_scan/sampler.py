"""Stratified sampling over (year x Jaccard-bin x HTML-length-bin).

16 year levels (2003-2018) x 5 Jaccard bins x 5 length bins = 160
sub-strata. Draws are deterministic for a given seed and independent of
input ordering.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

YEAR_MIN = 2003
YEAR_MAX = 2018

JACCARD_BIN_LABELS = ("0.0-0.2", "0.2-0.4", "0.4-0.6", "0.6-0.8", "0.8-1.0")


class OutOfRangeYear(Exception):
    pass


@dataclass(frozen=True)
class StratumLabel:
    year: int
    jaccard_bin: int
    length_bin: int

    def key(self) -> str:
        return f"{self.year},{self.jaccard_bin},{self.length_bin}"

    @staticmethod
    def from_key(key: str) -> "StratumLabel":
        year, jbin, lbin = (int(x) for x in key.split(","))
        return StratumLabel(year, jbin, lbin)


@dataclass(frozen=True)
class SamplePlan:
    target_per_stratum: int
    cap_per_stratum: int
    seed: int
    top_up: bool = True

    def __post_init__(self):
        if not (0 < self.target_per_stratum <= self.cap_per_stratum):
            raise ValueError("need 0 < target <= cap")


@dataclass(frozen=True)
class LengthBins:
    """5 equal-width bins between the shortest eligible HTML part and the
    95th percentile; longer parts are outliers and excluded."""

    edges: Tuple[float, ...]  # 6 ascending edges

    def __post_init__(self):
        if len(self.edges) != 6 or list(self.edges) != sorted(self.edges):
            raise ValueError("need 6 ascending edges")

    @staticmethod
    def from_lengths(lengths: Sequence[int]) -> "LengthBins":
        if not lengths:
            raise ValueError("no lengths")
        ordered = sorted(lengths)
        lo = ordered[0]
        # nearest-rank 95th percentile
        idx = max(0, min(len(ordered) - 1, round(0.95 * (len(ordered) - 1))))
        p95 = ordered[idx]
        if p95 <= lo:
            p95 = lo + 1
        width = (p95 - lo) / 5
        return LengthBins(edges=tuple(lo + i * width for i in range(6)))

    def assign(self, length: int) -> Optional[int]:
        """Bin index 0-4, or None for outliers beyond the 95th percentile
        (or shorter than the observed minimum)."""
        lo, hi = self.edges[0], self.edges[5]
        if length < lo or length > hi:
            return None
        if length == hi:
            return 4
        width = (hi - lo) / 5
        return min(4, int((length - lo) / width))


def jaccard_bin(jaccard: float) -> int:
    """Lower-inclusive bins [0,.2) [.2,.4) [.4,.6) [.6,.8) [.8,1.0]."""
    if not 0.0 <= jaccard <= 1.0:
        raise ValueError(f"jaccard out of range: {jaccard}")
    return min(4, int(jaccard * 5))


def assign_stratum(
    year: int, jaccard: float, html_length: int, length_bins: LengthBins
) -> Optional[StratumLabel]:
    """Label one record, or None when its length is an excluded outlier."""
    if not YEAR_MIN <= year <= YEAR_MAX:
        raise OutOfRangeYear(str(year))
    lbin = length_bins.assign(html_length)
    if lbin is None:
        return None
    return StratumLabel(year=year, jaccard_bin=jaccard_bin(jaccard), length_bin=lbin)


@dataclass
class SampleResult:
    sampled_ids: List[str]
    per_stratum: Dict[str, List[str]] = field(default_factory=dict)
    shortfalls: Dict[str, int] = field(default_factory=dict)


def _stratum_rng(seed: int, label: StratumLabel) -> random.Random:
    material = f"{seed}|{label.year}|{label.jaccard_bin}|{label.length_bin}"
    digest = hashlib.sha256(material.encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def stratified_sample(
    records: Iterable[Tuple[str, StratumLabel]], plan: SamplePlan
) -> SampleResult:
    """Uniform draw without replacement per sub-stratum.

    Each stratum's candidate ids are sorted then shuffled with a PRNG
    keyed by (seed, stratum), so the draw does not depend on enumeration
    order. An optional top-up pass raises per-stratum draws toward the
    cap to compensate shortfalls elsewhere.
    """
    by_stratum: Dict[StratumLabel, List[str]] = {}
    for email_id, label in records:
        by_stratum.setdefault(label, []).append(email_id)

    shuffled: Dict[StratumLabel, List[str]] = {}
    drawn: Dict[StratumLabel, int] = {}
    shortfalls: Dict[str, int] = {}
    total_shortfall = 0
    for label in sorted(by_stratum, key=lambda s: (s.year, s.jaccard_bin, s.length_bin)):
        ids = sorted(set(by_stratum[label]))
        _stratum_rng(plan.seed, label).shuffle(ids)
        shuffled[label] = ids
        take = min(plan.target_per_stratum, len(ids))
        drawn[label] = take
        short = plan.target_per_stratum - take
        if short:
            shortfalls[label.key()] = short
            total_shortfall += short

    if plan.top_up and total_shortfall:
        for label in sorted(shuffled, key=lambda s: (s.year, s.jaccard_bin, s.length_bin)):
            if total_shortfall <= 0:
                break
            extra_room = min(plan.cap_per_stratum, len(shuffled[label])) - drawn[label]
            if extra_room <= 0:
                continue
            extra = min(extra_room, total_shortfall)
            drawn[label] += extra
            total_shortfall -= extra

    per_stratum = {
        label.key(): shuffled[label][: drawn[label]] for label in shuffled
    }
    sampled: List[str] = []
    for label in sorted(shuffled, key=lambda s: (s.year, s.jaccard_bin, s.length_bin)):
        sampled.extend(per_stratum[label.key()])
    return SampleResult(
        sampled_ids=sampled, per_stratum=per_stratum, shortfalls=shortfalls
    )
