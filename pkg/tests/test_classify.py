from conceal_scan.classify import (
    ClassifierConfig,
    ConcealmentRecord,
    SubType,
    Trick,
    attribute_tricks,
    classify,
    classify_subtypes,
    detect_concealment,
)
from conceal_scan.styles import ConcealReason
from conceal_scan.views import (
    BOUNDARY_BLOCK_RUN,
    BOUNDARY_SPLITS_WORD,
    BOUNDARY_WHOLE_WORD,
    ConcealedSpan,
    compute_views,
)

from conftest import ADD_PARAGRAPH_HTML, DISRUPT_WORD_HTML, INSERT_WORD_HTML


def span(text, boundary, reasons=(ConcealReason.FONT_COLOUR,)):
    tokens = [t for t in text.split() if t]
    return ConcealedSpan(
        dom_path="/div[1]/#text[1]",
        raw_text=text,
        reasons=frozenset(reasons),
        boundary=boundary,
        run_length_tokens=len(tokens),
        run_length_chars=len(text.strip()),
    )


def test_detect_requires_token_characters():
    clean = compute_views("<p>all visible</p>")
    assert not detect_concealment(clean)
    assert detect_concealment(compute_views(ADD_PARAGRAPH_HTML))
    # hidden punctuation between words changes no tokens
    punct_between = compute_views('x <font color="white">~!*</font> y')
    assert not detect_concealment(punct_between)
    # but hidden punctuation inside a word splits it for the filter
    punct_inside = compute_views('pil<font color="white">#</font>ls')
    assert detect_concealment(punct_inside)


def test_subtype_add_paragraph_by_tokens_or_chars():
    long_block = span("one two three four five", BOUNDARY_BLOCK_RUN)
    assert classify_subtypes([long_block]) == {SubType.ADD_PARAGRAPH}
    # a long single "word" qualifies by character count wherever it sits
    long_word = span("supercalifragilisticexpialidocious", BOUNDARY_WHOLE_WORD)
    assert SubType.ADD_PARAGRAPH in classify_subtypes([long_word])


def test_subtype_disrupt_word():
    assert classify_subtypes([span("#", BOUNDARY_SPLITS_WORD)]) == {
        SubType.DISRUPT_WORD
    }


def test_subtype_insert_word():
    assert classify_subtypes([span("never", BOUNDARY_WHOLE_WORD)]) == {
        SubType.INSERT_WORD
    }


def test_subtypes_never_empty_for_nonempty_spans():
    short_block = span("hi", BOUNDARY_BLOCK_RUN)  # too short for AddParagraph
    assert classify_subtypes([short_block]) == {SubType.ADD_PARAGRAPH}


def test_config_thresholds_are_respected():
    cfg = ClassifierConfig(paragraph_min_tokens=2, paragraph_min_chars=100)
    two_tokens = span("a b", BOUNDARY_BLOCK_RUN)
    assert SubType.ADD_PARAGRAPH in classify_subtypes([two_tokens], cfg)


def test_multiple_subtypes_accumulate():
    spans = [
        span("one two three four five", BOUNDARY_BLOCK_RUN),
        span("#", BOUNDARY_SPLITS_WORD),
    ]
    assert classify_subtypes(spans) == {SubType.ADD_PARAGRAPH, SubType.DISRUPT_WORD}


def test_tricks_union_and_other_fallback():
    spans = [
        span("a", BOUNDARY_WHOLE_WORD, reasons=(ConcealReason.FONT_SIZE,)),
        span("b", BOUNDARY_WHOLE_WORD, reasons=()),
    ]
    assert attribute_tricks(spans) == {Trick.FONT_SIZE, Trick.OTHER}


def test_classify_appendix_fixtures_end_to_end():
    expectations = {
        ADD_PARAGRAPH_HTML: ({SubType.ADD_PARAGRAPH}, {Trick.FONT_COLOUR}),
        DISRUPT_WORD_HTML: ({SubType.DISRUPT_WORD}, {Trick.FONT_SIZE}),
        INSERT_WORD_HTML: ({SubType.INSERT_WORD}, {Trick.TEXT_POSITION}),
    }
    for html, (subtypes, tricks) in expectations.items():
        record = classify("x", compute_views(html))
        assert record.has_concealment
        assert record.subtypes == subtypes
        assert record.tricks == tricks


def test_classify_clean_email():
    record = classify("x", compute_views("<p>nothing hidden here at all</p>"))
    assert not record.has_concealment
    assert record.subtypes == frozenset()
    assert record.tricks == frozenset()


def test_record_round_trip():
    record = classify("x", compute_views(DISRUPT_WORD_HTML))
    clone = ConcealmentRecord.from_dict(record.to_dict())
    assert clone.email_id == record.email_id
    assert clone.subtypes == record.subtypes
    assert clone.tricks == record.tricks
    assert clone.spans == record.spans
