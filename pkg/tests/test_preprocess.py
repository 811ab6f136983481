from conceal_scan.ingest import RawEmail, iter_corpus
from conceal_scan.preprocess import (
    PipelineCounts,
    classify_email,
    detect_mso_directives,
    detect_remote_content,
    normalize_css_availability,
    run_pipeline,
)
from conceal_scan.synthetic import wrap_email

from conftest import (
    ENGLISH_HTML,
    REMOTE_HTML,
    SPANISH_HTML,
    broken_header_email,
)


def raw(data: bytes, email_id="2007-07/x.txt") -> RawEmail:
    return RawEmail(id=email_id, received_date=(2007, 7), data=data)


# --- remote content ---------------------------------------------------------

def test_remote_detection_positive_cases():
    assert detect_remote_content('<img src="http://x.com/a.gif">')
    assert detect_remote_content("<img src=https://x.com/a.gif>")
    assert detect_remote_content('<input type="image" src="HTTP://x/y">')
    assert detect_remote_content('<body background="http://x/bg.jpg">')
    assert detect_remote_content('<div style="background:url(http://x/i)">')


def test_remote_detection_negative_cases():
    assert not detect_remote_content('<img src="cid:inline-part">')
    assert not detect_remote_content('<img src="data:image/gif;base64,AA==">')
    assert not detect_remote_content('<img src="relative/pic.png">')
    assert not detect_remote_content('<a href="http://x.com">link text</a>')
    assert not detect_remote_content("<p>http://not-a-resource.example</p>")


# --- conditional comments ---------------------------------------------------

def test_mso_detection():
    assert detect_mso_directives("<!--[if mso]>x<![endif]-->")
    assert detect_mso_directives("<![if !vml]>y<![endif]>")
    assert not detect_mso_directives("<!-- plain comment -->")


# --- css availability -------------------------------------------------------

def test_normalize_strips_scripts_and_stylesheet_links():
    html = (
        '<link rel="stylesheet" href="x.css"><script>alert(1)</script>'
        "<p>keep me</p>"
    )
    out = normalize_css_availability(html)
    assert "script" not in out and "stylesheet" not in out
    assert "keep me" in out


def test_normalize_strips_keyframes_and_animation():
    html = (
        "<style>@keyframes fly {from {left:0} to {left:100px}} "
        "p {animation: fly 2s; color: red}</style>"
        '<p style="transition: all 1s; color: blue">x</p>'
    )
    out = normalize_css_availability(html)
    assert "keyframes" not in out and "animation" not in out and "transition" not in out
    assert "color: red" in out and "color: blue" in out


def test_normalize_is_idempotent_and_never_filters():
    for html in ("", "<p>x</p>", REMOTE_HTML, "<style>@keyframes a{}</style>"):
        once = normalize_css_availability(html)
        assert normalize_css_availability(once) == once


# --- stage assignment -------------------------------------------------------

def test_stage_order_remote_beats_language():
    remote_spanish = (
        '<html><body><img src="http://x.com/a.gif"><p>'
        "hola amigo este es un mensaje para usted y esperamos que todo "
        "vaya bien</p></body></html>"
    )
    verdict, doc = classify_email(raw(wrap_email(remote_spanish)))
    assert verdict.stage_outcome == "RemoteContent"
    assert doc is None


def test_parse_error_beats_everything():
    verdict, _ = classify_email(raw(broken_header_email()))
    assert verdict.stage_outcome == "ParseError"


def test_eligible_email_returns_document():
    verdict, doc = classify_email(raw(wrap_email(ENGLISH_HTML)))
    assert verdict.stage_outcome == "Eligible"
    assert doc is not None
    assert verdict.html_length == doc.html_length > 0


def test_non_english_verdict_carries_language_detail():
    verdict, _ = classify_email(raw(wrap_email(SPANISH_HTML)))
    assert verdict.stage_outcome == "NonEnglish"
    assert "lang=" in verdict.detail


# --- counts ------------------------------------------------------------------

def test_pipeline_counts_on_sankey_corpus(sankey_corpus):
    result = run_pipeline(iter_corpus(sankey_corpus))
    assert result.counts.to_dict()["removed"] == {
        "ParseError": 0,
        "NoHtml": 1,
        "RemoteContent": 1,
        "NonEnglish": 1,
        "EncodingError": 1,
        "MsoDirectives": 1,
    }
    assert result.counts.eligible == 2
    assert result.counts.total == 7
    assert len(result.eligible_docs) == 2


def test_counts_merge_matches_single_run(sankey_corpus):
    raws = list(iter_corpus(sankey_corpus))
    whole = run_pipeline(raws).counts
    first = run_pipeline(raws[:3]).counts
    second = run_pipeline(raws[3:]).counts
    assert first.merge(second).to_dict() == whole.to_dict()


def test_order_independence(sankey_corpus):
    raws = list(iter_corpus(sankey_corpus))
    forward = run_pipeline(raws)
    backward = run_pipeline(reversed(raws))
    by_id_f = {v.email_id: v.stage_outcome for v in forward.verdicts}
    by_id_b = {v.email_id: v.stage_outcome for v in backward.verdicts}
    assert by_id_f == by_id_b
    assert forward.counts.to_dict() == backward.counts.to_dict()


def test_counts_accounting_is_conserved():
    counts = PipelineCounts()
    assert counts.total == 0
