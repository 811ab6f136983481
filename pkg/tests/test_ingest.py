import base64

import pytest

from conceal_scan.ingest import (
    MalformedMessage,
    MimePart,
    RawEmail,
    date_from_relpath,
    decode_body,
    iter_corpus,
    parse_rfc5322,
    select_renderable_html,
)
from conceal_scan.synthetic import wrap_email

from conftest import bad_base64_email, broken_header_email, plain_text_email


def raw(data: bytes, email_id="2007-07/x.txt") -> RawEmail:
    return RawEmail(id=email_id, received_date=(2007, 7), data=data)


# --- body decoding ----------------------------------------------------------

def part(body: bytes, cte="8bit", charset="utf-8") -> MimePart:
    return MimePart(
        content_type="text/html",
        charset=charset,
        transfer_encoding=cte,
        disposition=None,
        raw_body=body,
    )


def test_decode_base64():
    p = decode_body(part(base64.b64encode("héllo".encode("utf-8")), cte="base64"))
    assert p.body == "héllo"
    assert p.failure is None


def test_decode_base64_tolerates_whitespace_and_missing_padding():
    encoded = base64.b64encode(b"hello world").decode().rstrip("=")
    wrapped = "\r\n".join(encoded[i:i + 4] for i in range(0, len(encoded), 4))
    p = decode_body(part(wrapped.encode(), cte="base64"))
    assert p.body == "hello world"


def test_decode_bad_base64_fails_with_offset():
    p = decode_body(part(b"!!!!not*base64!!!!", cte="base64"))
    assert p.body is None
    assert p.failure is not None
    assert p.failure.offset == 0
    assert "base64" in p.failure.detail


def test_decode_quoted_printable():
    p = decode_body(part(b"h=C3=A9llo=20world", cte="quoted-printable"))
    assert p.body == "héllo world"


def test_decode_charset_aliases():
    p = decode_body(part("café".encode("latin-1"), charset="latin1"))
    assert p.body == "café"
    p = decode_body(part(b"\x93quoted\x94", charset="windows-1252"))
    assert p.body == "“quoted”"


def test_decode_absent_charset_defaults_to_ascii():
    assert decode_body(part(b"plain", charset=None)).body == "plain"
    failed = decode_body(part(b"caf\xe9", charset=None))
    assert failed.body is None
    assert failed.failure.offset == 3


def test_decode_unknown_charset_fails():
    p = decode_body(part(b"abc", charset="x-unknown"))
    assert p.body is None
    assert "charset" in p.failure.detail


def test_decode_reports_undecodable_byte_offset():
    p = decode_body(part(b"ok so far \xff oops", charset="utf-8"))
    assert p.failure.offset == 10


def test_decode_is_deterministic():
    a = decode_body(part(b"same \xff bytes"))
    b = decode_body(part(b"same \xff bytes"))
    assert (a.body, a.failure) == (b.body, b.failure)


# --- message parsing --------------------------------------------------------

def test_parse_simple_multipart():
    parsed = parse_rfc5322(raw(wrap_email("<p>hi</p>")))
    types = [p.content_type for p in parsed.parts]
    assert types == ["text/plain", "text/html"]
    assert parsed.headers["subject"] == "hello"


def test_parse_rejects_garbage():
    with pytest.raises(MalformedMessage):
        parse_rfc5322(raw(b""))
    with pytest.raises(MalformedMessage):
        parse_rfc5322(raw(broken_header_email()))


def test_select_html_prefers_last_alternative():
    body = (
        b"From: a@x\r\nMIME-Version: 1.0\r\n"
        b'Content-Type: multipart/alternative; boundary="B"\r\n\r\n'
        b"--B\r\nContent-Type: text/html\r\n\r\n<p>first</p>\r\n"
        b"--B\r\nContent-Type: text/html\r\n\r\n<p>second</p>\r\n"
        b"--B--\r\n"
    )
    doc = select_renderable_html(parse_rfc5322(raw(body)))
    assert "second" in doc.html


def test_select_html_skips_attachments():
    body = (
        b"From: a@x\r\nMIME-Version: 1.0\r\n"
        b'Content-Type: multipart/mixed; boundary="B"\r\n\r\n'
        b"--B\r\nContent-Type: text/html\r\n"
        b"Content-Disposition: attachment; filename=x.html\r\n\r\n<p>att</p>\r\n"
        b"--B\r\nContent-Type: text/plain\r\n\r\nhello\r\n"
        b"--B--\r\n"
    )
    assert select_renderable_html(parse_rfc5322(raw(body))) is None


def test_select_html_none_for_plain_text():
    assert select_renderable_html(parse_rfc5322(raw(plain_text_email()))) is None


def test_select_html_carries_decode_failure():
    doc = select_renderable_html(parse_rfc5322(raw(bad_base64_email())))
    assert doc is not None
    assert doc.decode_failure is not None
    assert doc.html == ""
    assert doc.html_length >= 1


# --- corpus layout ----------------------------------------------------------

def test_date_from_relpath_variants():
    assert date_from_relpath("2007-07/file.txt") == (2007, 7)
    assert date_from_relpath("2007/07/file.txt") == (2007, 7)
    assert date_from_relpath("archive/2013_11/x") == (2013, 11)
    with pytest.raises(ValueError):
        date_from_relpath("no/date/here.txt")


def test_iter_corpus_sorted_and_dated(tmp_path):
    (tmp_path / "2004-01").mkdir()
    (tmp_path / "2004-01" / "b.txt").write_bytes(b"data b")
    (tmp_path / "2004-01" / "a.txt").write_bytes(b"data a")
    (tmp_path / "misc").mkdir()
    (tmp_path / "misc" / "ignored.txt").write_bytes(b"no date dir")
    (tmp_path / "2004-01" / "empty.txt").write_bytes(b"")
    raws = list(iter_corpus(tmp_path))
    assert [r.id for r in raws] == ["2004-01/a.txt", "2004-01/b.txt"]
    assert raws[0].received_date == (2004, 1)
