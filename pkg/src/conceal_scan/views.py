"""Dual-view extraction: mail-filter tokens, recipient tokens, and the
concealed spans linking them.

The mail filter view is every renderable text node in document order
(tags, comments and CSS excluded). The recipient view keeps only text
judged visible by the style model, replacing the screenshot-and-OCR
route with an analytic one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from conceal_scan.dom import BLOCK_ELEMENTS, DomNode, NON_RENDERED, parse_html
from conceal_scan.metrics import jaccard_distance
from conceal_scan.styles import (
    ConcealReason,
    VisibilityConfig,
    judge_visibility,
    resolve_styles,
)

# token characters are unicode letters and digits; everything else separates
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

BOUNDARY_SPLITS_WORD = "splits_visible_word"
BOUNDARY_WHOLE_WORD = "whole_word_between_visible"
BOUNDARY_BLOCK_RUN = "block_run"


def tokenize(text: str) -> List[str]:
    """Split on any non-alphanumeric character, lowercase, drop empties."""
    return [m.group(0).lower() for m in _TOKEN_RE.finditer(text)]


@dataclass
class ConcealedSpan:
    dom_path: str
    raw_text: str
    reasons: frozenset  # of ConcealReason
    boundary: str
    run_length_tokens: int
    run_length_chars: int

    def to_dict(self) -> dict:
        return {
            "dom_path": self.dom_path,
            "raw_text": self.raw_text,
            "reasons": sorted(r.value for r in self.reasons),
            "boundary": self.boundary,
            "run_length_tokens": self.run_length_tokens,
            "run_length_chars": self.run_length_chars,
        }

    @staticmethod
    def from_dict(d: dict) -> "ConcealedSpan":
        return ConcealedSpan(
            dom_path=d["dom_path"],
            raw_text=d["raw_text"],
            reasons=frozenset(ConcealReason(r) for r in d["reasons"]),
            boundary=d["boundary"],
            run_length_tokens=d["run_length_tokens"],
            run_length_chars=d["run_length_chars"],
        )


@dataclass
class ViewPair:
    mail_filter_tokens: List[str]
    recipient_tokens: List[str]
    concealed_spans: List[ConcealedSpan]
    jaccard: float

    def to_dict(self) -> dict:
        return {
            "mail_filter_tokens": self.mail_filter_tokens,
            "recipient_tokens": self.recipient_tokens,
            "concealed_spans": [s.to_dict() for s in self.concealed_spans],
            "jaccard": self.jaccard,
        }


# --- linear rendering stream ----------------------------------------------

@dataclass
class _Chunk:
    kind: str  # "text" | "break"
    text: str = ""
    visible: bool = True
    reasons: frozenset = frozenset()
    node: Optional[DomNode] = None


def _flatten(node: DomNode, cfg: VisibilityConfig, out: List[_Chunk]) -> None:
    if node.kind == "comment":
        return
    if node.kind == "text":
        if not node.text:
            return
        parent = node.parent
        if parent is not None and parent.is_element() and parent.tag in NON_RENDERED:
            return
        main, fl = judge_visibility(node, cfg)
        _emit_text(node, main, fl, out)
        return
    # element
    if node.is_element() and node.tag == "br":
        out.append(_Chunk(kind="break"))
        return
    is_block = node.is_element() and node.tag in BLOCK_ELEMENTS
    if is_block:
        out.append(_Chunk(kind="break"))
    for child in node.children:
        _flatten(child, cfg, out)
    if is_block:
        out.append(_Chunk(kind="break"))


def _emit_text(node, main, fl, out: List[_Chunk]) -> None:
    text = node.text
    if fl is not None and fl.visible != main.visible:
        # split first letter from the remainder; the differential styling
        # itself is the concealment mechanism, categorised as Other
        m = re.search(r"\S", text)
        if m is not None:
            i = m.start()
            head, first, rest = text[:i], text[i], text[i + 1:]
            if head:
                out.append(_chunk_for(head, main, node))
            out.append(_chunk_for(first, fl, node, add_other=not fl.visible))
            if rest:
                out.append(_chunk_for(rest, main, node, add_other=not main.visible))
            return
    out.append(_chunk_for(text, main, node))


def _chunk_for(text, judgment, node, add_other: bool = False) -> _Chunk:
    reasons = judgment.reasons
    if add_other:
        reasons = reasons | {ConcealReason.OTHER}
    return _Chunk(
        kind="text",
        text=text,
        visible=judgment.visible,
        reasons=reasons,
        node=node,
    )


def _stream(tree: DomNode, cfg: VisibilityConfig) -> List[_Chunk]:
    out: List[_Chunk] = []
    _flatten(tree, cfg, out)
    return out


def _join_chunks(chunks: List[_Chunk], visible_only: bool) -> str:
    parts: List[str] = []
    for c in chunks:
        if c.kind == "break":
            parts.append("\n")
        elif not visible_only or c.visible:
            parts.append(c.text)
    return "".join(parts)


def mail_filter_view(html: str) -> List[str]:
    """Tokens a text-based filter reads: all renderable text in source
    order, with tags, comments, and style/script content excluded."""
    tree = parse_html(html)
    resolve_styles(tree)
    chunks = _stream(tree, VisibilityConfig())
    return tokenize(_join_chunks(chunks, visible_only=False))


def _classify_runs(chunks: List[_Chunk]) -> List[ConcealedSpan]:
    spans: List[ConcealedSpan] = []
    i = 0
    n = len(chunks)
    while i < n:
        c = chunks[i]
        if c.kind != "text" or c.visible:
            i += 1
            continue
        # maximal run of concealed text chunks, allowing internal breaks
        j = i
        has_internal_break = False
        last_text = i
        while j < n:
            ch = chunks[j]
            if ch.kind == "text":
                if ch.visible:
                    break
                last_text = j
            j += 1
        has_internal_break = any(
            chunks[k].kind == "break" for k in range(i, last_text + 1)
        )
        run = [chunks[k] for k in range(i, last_text + 1) if chunks[k].kind == "text"]
        raw = "".join(
            chunks[k].text if chunks[k].kind == "text" else "\n"
            for k in range(i, last_text + 1)
        )
        reasons = frozenset().union(*(ch.reasons for ch in run))

        left_char, left_break = _visible_neighbor(chunks, i - 1, -1)
        right_char, right_break = _visible_neighbor(chunks, last_text + 1, +1)

        splits = (
            left_char is not None
            and right_char is not None
            and not left_char.isspace()
            and not right_char.isspace()
            and not left_break
            and not right_break
        )
        if splits:
            boundary = BOUNDARY_SPLITS_WORD
        elif has_internal_break or (
            (left_break or left_char is None) and (right_break or right_char is None)
        ):
            boundary = BOUNDARY_BLOCK_RUN
        else:
            boundary = BOUNDARY_WHOLE_WORD

        stripped = raw.strip()
        if stripped:
            spans.append(
                ConcealedSpan(
                    dom_path=run[0].node.path() if run[0].node is not None else "",
                    raw_text=raw,
                    reasons=reasons,
                    boundary=boundary,
                    run_length_tokens=len(tokenize(raw)),
                    run_length_chars=len(stripped),
                )
            )
        i = last_text + 1
    return spans


def _visible_neighbor(
    chunks: List[_Chunk], start: int, step: int
) -> Tuple[Optional[str], bool]:
    """Nearest visible character scanning from start in direction step,
    plus whether a block break intervenes before it."""
    crossed_break = False
    i = start
    while 0 <= i < len(chunks):
        c = chunks[i]
        if c.kind == "break":
            crossed_break = True
        elif c.visible and c.text:
            ch = c.text[-1] if step < 0 else c.text[0]
            return ch, crossed_break
        i += step
    return None, crossed_break


def recipient_view(
    styled_tree: DomNode, cfg: Optional[VisibilityConfig] = None
) -> Tuple[List[str], List[ConcealedSpan]]:
    """Tokens the recipient would actually see, plus the concealed spans."""
    cfg = cfg or VisibilityConfig()
    chunks = _stream(styled_tree, cfg)
    tokens = tokenize(_join_chunks(chunks, visible_only=True))
    return tokens, _classify_runs(chunks)


def compute_views(html: str, cfg: Optional[VisibilityConfig] = None) -> ViewPair:
    """Build both views and their Jaccard distance for one HTML document."""
    cfg = cfg or VisibilityConfig()
    tree = parse_html(html)
    resolve_styles(tree)
    chunks = _stream(tree, cfg)
    mail_filter = tokenize(_join_chunks(chunks, visible_only=False))
    recipient = tokenize(_join_chunks(chunks, visible_only=True))
    spans = _classify_runs(chunks)
    return ViewPair(
        mail_filter_tokens=mail_filter,
        recipient_tokens=recipient,
        concealed_spans=spans,
        jaccard=jaccard_distance(set(mail_filter), set(recipient)),
    )
