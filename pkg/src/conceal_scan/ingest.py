"""RFC5322/MIME corpus ingestion.

Parses raw message files from a year-month directory layout, decodes
bodies (transfer encoding then charset), and selects the renderable
text/html part.
"""

from __future__ import annotations

import base64
import binascii
import codecs
import email
import email.errors
import email.policy
import quopri
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, List, Optional, Tuple


class MalformedMessage(Exception):
    """Message has no header/body separator or cannot be parsed at all."""


@dataclass(frozen=True)
class EncodingFailure:
    offset: int
    detail: str


@dataclass(frozen=True)
class RawEmail:
    id: str  # corpus-relative path
    received_date: Tuple[int, int]  # (year, month)
    data: bytes


@dataclass
class MimePart:
    content_type: str
    charset: Optional[str]
    transfer_encoding: str  # 7bit/8bit/binary/quoted-printable/base64/unknown
    disposition: Optional[str]  # inline/attachment/None
    raw_body: bytes = b""
    body: Optional[str] = None
    failure: Optional[EncodingFailure] = None

    def summary(self) -> dict:
        return {
            "content_type": self.content_type,
            "charset": self.charset,
            "transfer_encoding": self.transfer_encoding,
            "disposition": self.disposition,
            "decoded": self.body is not None,
        }


@dataclass
class ParsedEmail:
    id: str
    received_date: Tuple[int, int]
    headers: dict
    parts: List[MimePart] = field(default_factory=list)


@dataclass
class EmailDocument:
    id: str
    received_date: Tuple[int, int]
    html: str
    html_length: int
    all_parts: List[dict] = field(default_factory=list)
    decode_failure: Optional[EncodingFailure] = None


# mail-world charset names the codecs module does not resolve by itself
CHARSET_ALIASES = {
    "latin1": "iso-8859-1",
    "latin-1": "iso-8859-1",
    "win-1252": "cp1252",
    "windows-1252": "cp1252",
    "ansi_x3.4-1968": "ascii",
    "us-ascii": "ascii",
    "utf8": "utf-8",
    "iso8859-1": "iso-8859-1",
    "gb2312": "gb2312",
    "default": "ascii",
    "x-unknown": None,  # declared-but-meaningless charsets fail decoding
    "unknown-8bit": None,
}

_KNOWN_ENCODINGS = {"7bit", "8bit", "binary", "quoted-printable", "base64"}


def _normalize_charset(charset: Optional[str]) -> Optional[str]:
    # absent charset falls back to the MIME default of us-ascii
    name = (charset or "us-ascii").strip().lower().strip("\"'")
    if name in CHARSET_ALIASES:
        resolved = CHARSET_ALIASES[name]
        return resolved
    try:
        codecs.lookup(name)
        return name
    except LookupError:
        return None


def decode_body(part: MimePart) -> MimePart:
    """Reverse the transfer encoding, then charset-decode.

    Sets part.body on success or part.failure with the offending offset.
    Deterministic: identical raw bytes produce identical results.
    """
    raw = part.raw_body
    encoding = part.transfer_encoding
    if encoding not in _KNOWN_ENCODINGS:
        encoding = "8bit"

    if encoding == "base64":
        compact = re.sub(rb"\s+", b"", raw)
        if len(compact) % 4:
            compact += b"=" * (4 - len(compact) % 4)
        try:
            payload = base64.b64decode(compact, validate=True)
        except (binascii.Error, ValueError) as exc:
            part.failure = EncodingFailure(offset=0, detail=f"base64: {exc}")
            return part
    elif encoding == "quoted-printable":
        payload = quopri.decodestring(raw)
    else:
        payload = raw

    codec = _normalize_charset(part.charset)
    if codec is None:
        part.failure = EncodingFailure(
            offset=0, detail=f"unknown charset {part.charset!r}"
        )
        return part
    try:
        part.body = payload.decode(codec, errors="strict")
    except UnicodeDecodeError as exc:
        part.failure = EncodingFailure(offset=exc.start, detail=str(exc))
    except ValueError as exc:
        part.failure = EncodingFailure(offset=0, detail=str(exc))
    return part


def _raw_payload_bytes(message) -> bytes:
    payload = message.get_payload(decode=False)
    if payload is None:
        return b""
    if isinstance(payload, bytes):
        return payload
    # compat32 stores raw bytes as ascii-with-surrogateescape text
    return payload.encode("ascii", errors="surrogateescape")


def _leaf_to_part(message) -> MimePart:
    ctype = message.get_content_type().lower()
    charset = message.get_content_charset() or message.get_param("charset")
    cte = (message.get("Content-Transfer-Encoding") or "7bit").strip().lower()
    if cte not in _KNOWN_ENCODINGS:
        cte = "unknown"
    disposition = None
    cd = message.get("Content-Disposition")
    if cd:
        disposition = cd.split(";", 1)[0].strip().lower() or None
    part = MimePart(
        content_type=ctype,
        charset=charset if isinstance(charset, str) else None,
        transfer_encoding=cte,
        disposition=disposition,
        raw_body=_raw_payload_bytes(message),
    )
    return decode_body(part)


def parse_rfc5322(raw: RawEmail) -> ParsedEmail:
    """Parse a raw message into headers plus depth-first leaf MimeParts."""
    if not raw.data:
        raise MalformedMessage("empty message")
    try:
        message = email.message_from_bytes(raw.data)
    except Exception as exc:
        raise MalformedMessage(str(exc)) from exc
    for defect in message.defects:
        if isinstance(defect, email.errors.MissingHeaderBodySeparatorDefect):
            raise MalformedMessage("no header/body separator")
    if not message.items():
        raise MalformedMessage("no headers parsed")

    parts: List[MimePart] = []

    def walk(msg):
        if msg.is_multipart():
            for sub in msg.get_payload():
                walk(sub)
        else:
            parts.append(_leaf_to_part(msg))

    walk(message)
    headers = {k.lower(): v for k, v in message.items()}
    return ParsedEmail(
        id=raw.id, received_date=raw.received_date, headers=headers, parts=parts
    )


def select_renderable_html(parsed: ParsedEmail) -> Optional[EmailDocument]:
    """The renderable text/html part, or None (NoHtml) when absent.

    When several qualify, the last one wins (MIME best-alternative-last).
    A part that failed decoding still counts as present; its document
    carries html=None downstream via the preprocessing pipeline, so the
    email is classified as an encoding error rather than NoHtml.
    """
    candidates = [
        p
        for p in parsed.parts
        if p.content_type == "text/html" and p.disposition != "attachment"
    ]
    if not candidates:
        return None
    chosen = candidates[-1]
    return EmailDocument(
        id=parsed.id,
        received_date=parsed.received_date,
        html=chosen.body if chosen.body is not None else "",
        html_length=max(len(chosen.raw_body), 1),
        all_parts=[p.summary() for p in parsed.parts],
        decode_failure=chosen.failure,
    )


_DATE_DIR_RE = re.compile(r"(?:^|[/\\])(\d{4})[-_./\\](\d{1,2})(?:[/\\]|$)")


def date_from_relpath(relpath: str) -> Tuple[int, int]:
    """Extract (year, month) from a corpus-relative path such as
    2007-07/file.txt or 2007/07/file.txt."""
    m = _DATE_DIR_RE.search(relpath.replace("\\", "/"))
    if not m:
        raise ValueError(f"no year-month directory in path: {relpath}")
    return int(m.group(1)), int(m.group(2))


def iter_corpus(root: Path) -> Iterator[RawEmail]:
    """Yield raw emails from a corpus directory, sorted by relative path."""
    root = Path(root)
    files = sorted(p for p in root.rglob("*") if p.is_file())
    for path in files:
        rel = path.relative_to(root).as_posix()
        try:
            date = date_from_relpath(rel)
        except ValueError:
            continue  # not inside a year-month directory
        data = path.read_bytes()
        if not data:
            continue
        yield RawEmail(id=rel, received_date=date, data=data)
