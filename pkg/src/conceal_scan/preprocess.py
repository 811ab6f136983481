"""Six-stage eligibility pipeline with Sankey-style stage accounting.

Verdicts are assigned in a fixed stage order, first failure wins:
ParseError -> NoHtml -> RemoteContent -> NonEnglish -> EncodingError ->
MsoDirectives -> Eligible. The CSS-availability stage modifies HTML but
never filters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from conceal_scan.ingest import (
    EmailDocument,
    MalformedMessage,
    ParsedEmail,
    RawEmail,
    parse_rfc5322,
    select_renderable_html,
)
from conceal_scan.language import HeuristicDetector, LanguageDetector
from conceal_scan.views import mail_filter_view

STAGES = (
    "ParseError",
    "NoHtml",
    "RemoteContent",
    "NonEnglish",
    "EncodingError",
    "MsoDirectives",
    "Eligible",
)


@dataclass(frozen=True)
class FilterVerdict:
    email_id: str
    received_date: Tuple[int, int]
    stage_outcome: str
    detail: str = ""
    html_length: int = 0


@dataclass
class PipelineCounts:
    removed: Dict[str, int] = field(
        default_factory=lambda: {s: 0 for s in STAGES if s != "Eligible"}
    )
    eligible: int = 0

    @property
    def total(self) -> int:
        return sum(self.removed.values()) + self.eligible

    def add(self, verdict: FilterVerdict) -> None:
        if verdict.stage_outcome == "Eligible":
            self.eligible += 1
        else:
            self.removed[verdict.stage_outcome] += 1

    def merge(self, other: "PipelineCounts") -> "PipelineCounts":
        for stage, n in other.removed.items():
            self.removed[stage] += n
        self.eligible += other.eligible
        return self

    def to_dict(self) -> dict:
        return {"removed": dict(self.removed), "eligible": self.eligible, "total": self.total}


# --- stage (ii): remote content -------------------------------------------

_IMG_INPUT_TAG_RE = re.compile(r"<\s*(?:img|input)\b[^>]*>", re.IGNORECASE | re.DOTALL)
_SRC_ATTR_RE = re.compile(
    r"""\bsrc\s*=\s*(?:"([^"]*)"|'([^']*)'|([^\s>]+))""", re.IGNORECASE
)
_BACKGROUND_ATTR_RE = re.compile(
    r"""\bbackground\s*=\s*(?:"([^"]*)"|'([^']*)'|([^\s>]+))""", re.IGNORECASE
)
_CSS_URL_RE = re.compile(r"""url\(\s*['"]?\s*(https?:)""", re.IGNORECASE)


def _is_remote_ref(ref: str) -> bool:
    return ref.strip().lower().startswith(("http://", "https://"))


def detect_remote_content(html: str) -> bool:
    """True iff any rendered-resource reference uses an http(s) scheme.

    cid:, data: and relative references are not remote. Purely syntactic;
    no network I/O ever happens.
    """
    for tag in _IMG_INPUT_TAG_RE.findall(html):
        m = _SRC_ATTR_RE.search(tag)
        if m and _is_remote_ref(next(g for g in m.groups() if g is not None)):
            return True
    for m in _BACKGROUND_ATTR_RE.finditer(html):
        ref = next(g for g in m.groups() if g is not None)
        if _is_remote_ref(ref):
            return True
    if _CSS_URL_RE.search(html):
        return True
    return False


# --- stage (v): conditional comments ---------------------------------------

_MSO_RE = re.compile(r"<!--\[if|<!\[if|<!\[endif\]", re.IGNORECASE)


def detect_mso_directives(html: str) -> bool:
    """True iff the HTML contains IE/Outlook conditional-comment syntax."""
    return bool(_MSO_RE.search(html))


# --- stage (vi): CSS availability ------------------------------------------

_SCRIPT_RE = re.compile(r"<\s*script\b.*?(?:</\s*script\s*>|$)", re.IGNORECASE | re.DOTALL)
_STYLESHEET_LINK_RE = re.compile(
    r"""<\s*link\b[^>]*\brel\s*=\s*["']?\s*stylesheet[^>]*>""", re.IGNORECASE
)
_ANIMATION_DECL_RE = re.compile(
    r"(?:-[a-z]+-)?(?:animation|transition)[a-z-]*\s*:[^;}\"']*;?", re.IGNORECASE
)
_STYLE_ELEMENT_RE = re.compile(
    r"(<\s*style\b[^>]*>)(.*?)(</\s*style\s*>)", re.IGNORECASE | re.DOTALL
)
_STYLE_ATTR_RE = re.compile(
    r"""(\bstyle\s*=\s*)("([^"]*)"|'([^']*)')""", re.IGNORECASE
)


def _strip_keyframes(css: str) -> str:
    out = []
    i = 0
    n = len(css)
    keyframes_re = re.compile(r"@(?:-[a-z]+-)?keyframes\b", re.IGNORECASE)
    while i < n:
        m = keyframes_re.search(css, i)
        if not m:
            out.append(css[i:])
            break
        out.append(css[i:m.start()])
        # skip to the end of the (possibly nested) block
        j = css.find("{", m.end())
        if j == -1:
            break
        depth = 1
        j += 1
        while j < n and depth:
            if css[j] == "{":
                depth += 1
            elif css[j] == "}":
                depth -= 1
            j += 1
        i = j
    return "".join(out)


def _clean_css_text(css: str) -> str:
    return _ANIMATION_DECL_RE.sub("", _strip_keyframes(css))


def normalize_css_availability(html: str) -> str:
    """Remove CSS features most mail clients do not support: scripts,
    @keyframes, animation/transition declarations, external stylesheets.

    Never filters an email; idempotent.
    """
    html = _SCRIPT_RE.sub("", html)
    html = _STYLESHEET_LINK_RE.sub("", html)
    html = _STYLE_ELEMENT_RE.sub(
        lambda m: m.group(1) + _clean_css_text(m.group(2)) + m.group(3), html
    )

    def _clean_attr(m: re.Match) -> str:
        quote = m.group(2)[0]
        inner = m.group(3) if m.group(3) is not None else m.group(4)
        return m.group(1) + quote + _ANIMATION_DECL_RE.sub("", inner) + quote

    return _STYLE_ATTR_RE.sub(_clean_attr, html)


# --- pipeline ---------------------------------------------------------------

@dataclass
class PipelineResult:
    verdicts: List[FilterVerdict]
    counts: PipelineCounts
    eligible_docs: List[EmailDocument] = field(default_factory=list)


def classify_email(
    raw: RawEmail, detector: Optional[LanguageDetector] = None
) -> Tuple[FilterVerdict, Optional[EmailDocument]]:
    """Assign the single stage outcome for one email."""
    detector = detector or HeuristicDetector()
    try:
        parsed: ParsedEmail = parse_rfc5322(raw)
    except MalformedMessage as exc:
        return (
            FilterVerdict(raw.id, raw.received_date, "ParseError", str(exc)),
            None,
        )

    doc = select_renderable_html(parsed)
    if doc is None:
        return (
            FilterVerdict(
                raw.id, raw.received_date, "NoHtml", "no renderable text/html part"
            ),
            None,
        )

    if doc.decode_failure is not None:
        # undecodable html: the remote/language stages cannot be evaluated
        return (
            FilterVerdict(
                raw.id,
                raw.received_date,
                "EncodingError",
                f"offset {doc.decode_failure.offset}: {doc.decode_failure.detail}",
                doc.html_length,
            ),
            None,
        )

    if detect_remote_content(doc.html):
        return (
            FilterVerdict(
                raw.id, raw.received_date, "RemoteContent",
                "remote resource reference", doc.html_length,
            ),
            None,
        )

    normalized = normalize_css_availability(doc.html)
    tokens = mail_filter_view(normalized)
    lang, confidence = detector.identify(" ".join(tokens))
    if lang != "en":
        return (
            FilterVerdict(
                raw.id, raw.received_date, f"NonEnglish",
                f"lang={lang} confidence={confidence:.2f}", doc.html_length,
            ),
            None,
        )

    if detect_mso_directives(doc.html):
        return (
            FilterVerdict(
                raw.id, raw.received_date, "MsoDirectives",
                "conditional comment syntax", doc.html_length,
            ),
            None,
        )

    return (
        FilterVerdict(raw.id, raw.received_date, "Eligible", "", doc.html_length),
        doc,
    )


def run_pipeline(
    raws: Iterable[RawEmail], detector: Optional[LanguageDetector] = None
) -> PipelineResult:
    """Classify every email and accumulate Sankey counts.

    Per-email verdicts are independent, so input order never changes an
    outcome; counts merge by addition.
    """
    detector = detector or HeuristicDetector()
    verdicts: List[FilterVerdict] = []
    counts = PipelineCounts()
    eligible: List[EmailDocument] = []
    for raw in raws:
        verdict, doc = classify_email(raw, detector)
        verdicts.append(verdict)
        counts.add(verdict)
        if doc is not None:
            eligible.append(doc)
    return PipelineResult(verdicts=verdicts, counts=counts, eligible_docs=eligible)
