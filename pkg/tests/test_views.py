from conceal_scan.styles import ConcealReason
from conceal_scan.views import (
    BOUNDARY_BLOCK_RUN,
    BOUNDARY_SPLITS_WORD,
    BOUNDARY_WHOLE_WORD,
    ConcealedSpan,
    compute_views,
    mail_filter_view,
    tokenize,
)

from conftest import (
    ADD_PARAGRAPH_HTML,
    DISRUPT_WORD_HTML,
    FIRST_LETTER_TRICK_HTML,
    INSERT_WORD_HTML,
    TEXT_POSITION_TRICK_HTML,
)


def test_tokenize_splits_on_non_alphanumerics():
    assert tokenize("Pil#l=/s") == ["pil", "l", "s"]
    assert tokenize("fish & chips, NOW!") == ["fish", "chips", "now"]
    assert tokenize("250,000 a_b") == ["250", "000", "a", "b"]
    assert tokenize("") == []


def test_mail_filter_view_excludes_tags_comments_css():
    html = (
        "<style>p {color:red}</style><script>var x=1;</script>"
        "<!-- secret --><title>head title</title><p>real words only</p>"
    )
    assert mail_filter_view(html) == ["real", "words", "only"]


def test_mail_filter_view_includes_hidden_text():
    assert mail_filter_view(ADD_PARAGRAPH_HTML) == tokenize(
        "prolate balfour rabid pliant embroider Each Order Includes a free bonus"
    )


def test_recipient_view_drops_concealed_text():
    pair = compute_views(ADD_PARAGRAPH_HTML)
    assert pair.recipient_tokens == tokenize("Each Order Includes a free bonus")
    assert len(pair.concealed_spans) == 1
    span = pair.concealed_spans[0]
    assert span.reasons == frozenset({ConcealReason.FONT_COLOUR})
    assert span.run_length_tokens == 5
    assert span.run_length_chars == len("prolate balfour rabid pliant embroider")


def test_disrupted_word_reassembles_for_recipient():
    pair = compute_views(DISRUPT_WORD_HTML)
    assert pair.mail_filter_tokens == ["pil", "l", "s"]
    assert pair.recipient_tokens == ["pills"]
    assert len(pair.concealed_spans) == 2
    for span in pair.concealed_spans:
        assert span.boundary == BOUNDARY_SPLITS_WORD
        assert span.reasons == frozenset({ConcealReason.FONT_SIZE})


def test_inserted_word_boundary():
    pair = compute_views(INSERT_WORD_HTML)
    assert "etruscan" in pair.mail_filter_tokens
    assert "etruscan" not in pair.recipient_tokens
    assert all(
        s.boundary == BOUNDARY_WHOLE_WORD for s in pair.concealed_spans
    )
    assert all(
        s.reasons == frozenset({ConcealReason.TEXT_POSITION})
        for s in pair.concealed_spans
    )


def test_block_run_boundary():
    html = (
        "<p>visible before</p>"
        '<div style="color:#ffffff">a whole hidden paragraph of words</div>'
        "<p>visible after</p>"
    )
    pair = compute_views(html)
    assert len(pair.concealed_spans) == 1
    assert pair.concealed_spans[0].boundary == BOUNDARY_BLOCK_RUN


def test_adjacent_concealed_nodes_merge_into_one_run():
    html = (
        "<p>before</p>"
        '<div style="color:white">one<br>two</div>'
        "<p>after</p>"
    )
    pair = compute_views(html)
    assert len(pair.concealed_spans) == 1
    span = pair.concealed_spans[0]
    assert span.run_length_tokens == 2
    # the break keeps the two fragments from merging into "onetwo"
    assert tokenize(span.raw_text) == ["one", "two"]


def test_first_letter_splits_visibility_within_a_text_node():
    pair = compute_views(FIRST_LETTER_TRICK_HTML)
    assert pair.recipient_tokens == ["s", "e", "l", "l"]
    assert pair.mail_filter_tokens == ["seet", "expired", "lodgings", "lake"]
    assert len(pair.concealed_spans) == 4
    for span in pair.concealed_spans:
        assert ConcealReason.OTHER in span.reasons
        assert ConcealReason.FONT_COLOUR in span.reasons


def test_float_trick_preserves_recipient_word():
    pair = compute_views(TEXT_POSITION_TRICK_HTML)
    assert "discounts" in pair.recipient_tokens
    assert "jzw" in pair.mail_filter_tokens
    for span in pair.concealed_spans:
        assert span.boundary == BOUNDARY_SPLITS_WORD
        assert span.reasons == frozenset(
            {
                ConcealReason.FONT_COLOUR,
                ConcealReason.FONT_SIZE,
                ConcealReason.TEXT_POSITION,
            }
        )


def test_jaccard_zero_for_fully_visible_email():
    pair = compute_views("<p>every single word here is visible</p>")
    assert pair.jaccard == 0.0
    assert pair.concealed_spans == []
    assert pair.mail_filter_tokens == pair.recipient_tokens


def test_whitespace_only_concealment_yields_no_span():
    pair = compute_views('visible<font color="white">   </font>text')
    assert pair.concealed_spans == []


def test_span_round_trip():
    pair = compute_views(ADD_PARAGRAPH_HTML)
    span = pair.concealed_spans[0]
    assert ConcealedSpan.from_dict(span.to_dict()) == span


def test_view_pair_serialization_round_trip():
    pair = compute_views(DISRUPT_WORD_HTML)
    d = pair.to_dict()
    assert d["mail_filter_tokens"] == ["pil", "l", "s"]
    assert d["recipient_tokens"] == ["pills"]
    assert [ConcealedSpan.from_dict(s) for s in d["concealed_spans"]] == pair.concealed_spans
