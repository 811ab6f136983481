"""Concealment detection and sub-type / CSS-trick classification."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Sequence

from conceal_scan.styles import ConcealReason
from conceal_scan.views import (
    BOUNDARY_BLOCK_RUN,
    BOUNDARY_SPLITS_WORD,
    BOUNDARY_WHOLE_WORD,
    ConcealedSpan,
    ViewPair,
)

# CSS trick categories map 1:1 onto concealment reason codes
Trick = ConcealReason


class SubType(enum.Enum):
    ADD_PARAGRAPH = "AddParagraph"
    DISRUPT_WORD = "DisruptWord"
    INSERT_WORD = "InsertWord"


@dataclass(frozen=True)
class ClassifierConfig:
    # bulk-run thresholds for the AddParagraph sub-type
    paragraph_min_tokens: int = 4
    paragraph_min_chars: int = 20


@dataclass
class ConcealmentRecord:
    email_id: str
    has_concealment: bool
    spans: List[ConcealedSpan] = field(default_factory=list)
    subtypes: FrozenSet[SubType] = frozenset()
    tricks: FrozenSet[Trick] = frozenset()
    label_source: str = "auto"  # auto | human

    def to_dict(self) -> dict:
        return {
            "id": self.email_id,
            "has_concealment": self.has_concealment,
            "subtypes": sorted(s.value for s in self.subtypes),
            "tricks": sorted(t.value for t in self.tricks),
            "spans": [s.to_dict() for s in self.spans],
            "label_source": self.label_source,
        }

    @staticmethod
    def from_dict(d: dict) -> "ConcealmentRecord":
        return ConcealmentRecord(
            email_id=d["id"],
            has_concealment=d["has_concealment"],
            spans=[ConcealedSpan.from_dict(s) for s in d.get("spans", [])],
            subtypes=frozenset(SubType(s) for s in d.get("subtypes", [])),
            tricks=frozenset(Trick(t) for t in d.get("tricks", [])),
            label_source=d.get("label_source", "auto"),
        )


_TOKEN_CHAR_RE = re.compile(r"[^\W_]", re.UNICODE)


def _is_material(span: ConcealedSpan) -> bool:
    """A span matters when it changes the filter's token stream: it either
    carries token characters, or it is punctuation wedged inside a visible
    word (which still breaks that word apart for the filter). Hidden
    punctuation between words changes nothing and is ignored."""
    if _TOKEN_CHAR_RE.search(span.raw_text):
        return True
    return span.boundary == BOUNDARY_SPLITS_WORD


def detect_concealment(view_pair: ViewPair) -> bool:
    """True iff at least one concealed span alters what a filter reads."""
    return any(_is_material(span) for span in view_pair.concealed_spans)


def classify_subtypes(
    spans: Sequence[ConcealedSpan], cfg: Optional[ClassifierConfig] = None
) -> FrozenSet[SubType]:
    """Sub-types from span boundary classes and run lengths; an email may
    carry several. Always non-empty for a non-empty span list."""
    cfg = cfg or ClassifierConfig()
    subtypes = set()
    for span in spans:
        if (
            span.boundary == BOUNDARY_BLOCK_RUN
            and span.run_length_tokens >= cfg.paragraph_min_tokens
        ) or span.run_length_chars >= cfg.paragraph_min_chars:
            subtypes.add(SubType.ADD_PARAGRAPH)
        if span.boundary == BOUNDARY_SPLITS_WORD:
            subtypes.add(SubType.DISRUPT_WORD)
        if (
            span.boundary == BOUNDARY_WHOLE_WORD
            and span.run_length_tokens < cfg.paragraph_min_tokens
        ):
            subtypes.add(SubType.INSERT_WORD)
    if not subtypes and spans:
        # fallback keeps the subtypes-nonempty invariant for short runs
        # that match no primary predicate
        boundaries = {s.boundary for s in spans}
        if BOUNDARY_BLOCK_RUN in boundaries:
            subtypes.add(SubType.ADD_PARAGRAPH)
        elif BOUNDARY_WHOLE_WORD in boundaries:
            subtypes.add(SubType.INSERT_WORD)
        else:
            subtypes.add(SubType.DISRUPT_WORD)
    return frozenset(subtypes)


def attribute_tricks(spans: Sequence[ConcealedSpan]) -> FrozenSet[Trick]:
    """Union of the spans' reason codes; spans with no recognisable cause
    contribute Other."""
    tricks = set()
    for span in spans:
        if span.reasons:
            tricks.update(span.reasons)
        else:
            tricks.add(Trick.OTHER)
    return frozenset(tricks)


def classify(
    email_id: str, view_pair: ViewPair, cfg: Optional[ClassifierConfig] = None
) -> ConcealmentRecord:
    spans = [s for s in view_pair.concealed_spans if _is_material(s)]
    if not spans:
        return ConcealmentRecord(email_id=email_id, has_concealment=False)
    return ConcealmentRecord(
        email_id=email_id,
        has_concealment=True,
        spans=spans,
        subtypes=classify_subtypes(spans, cfg),
        tricks=attribute_tricks(spans),
    )
