import pytest

from conceal_scan.synthetic import generate_corpus, wrap_email


# --- reconstructed concealment fixtures ------------------------------------

ADD_PARAGRAPH_HTML = (
    "<html><body>"
    "<FONT color=#fffffc size=2>prolate balfour rabid pliant embroider</FONT>\n"
    "<font face=Arial color=#000000>Each Order Includes a free bonus</font>"
    "</body></html>"
)

DISRUPT_WORD_HTML = (
    "<html><body>"
    'Pil<FONT style="FONT-SIZE: 1px">#</font>'
    'l<FONT style="FONT-SIZE: 1px">= /</font>s'
    "</body></html>"
)

INSERT_WORD_HTML = (
    "<html><body>"
    "how to save on your medications "
    '<span style="display:none">etruscan</span> '
    "over 70 pharmshop successfull and proven way to save "
    '<span style="display:none">alodial</span> '
    "your money"
    "</body></html>"
)

FONT_COLOR_TRICK_HTML = (
    '<a href="http-example">Cool shop in a one click</a> '
    "<font color=white> In their native </font>"
    "<font color=white>(or worse, a flat tire), </font>"
)

FONT_SIZE_TRICK_HTML = (
    "Please watch this one trade Tuesday and all week!<br>"
    '<DIV><FONT style="FONT-SIZE: 2px">moth-eat sail twine<BR>'
    "bracket capital south-southwesterly</FONT></DIV>"
)

TEXT_POSITION_TRICK_HTML = (
    '<td align="left">Get the great di'
    '<span style="FONT-SIZE: 2px; FLOAT: right; COLOR: white"> jzw </span>scou'
    '<span style="FONT-SIZE: 2px; FLOAT: right; COLOR: white"> kl </span>'
    "nts on popular</td>"
)

TABLE_TRICK_HTML = (
    "<table><tr>"
    "<td>Acomplia Clomid Deflucan</td>"
    '<td width="0" height="0">cheap meds overnight shipping</td>'
    "</tr></table>"
)

FIRST_LETTER_TRICK_HTML = (
    "<STYLE>\n"
    "DIV {COLOR: #FAFFFB}\n"
    " DIV.b:first-letter {COLOR: #28ED2A}\n"
    " DIV:first-letter {FONT-SIZE: 300%}\n"
    " </STYLE>\n"
    "<DIV class=b>Seet!</DIV>\n"
    "<DIV class=b>Expired,</DIV>\n"
    "<DIV class=b>Lodgings,</DIV>\n"
    "<DIV class=b>Lake:</DIV>"
)


@pytest.fixture(scope="session")
def synthetic_corpus(tmp_path_factory):
    root = tmp_path_factory.mktemp("corpus")
    return generate_corpus(root, per_subtype=10, clean=10, seed=7)


# --- hand-built pipeline corpus ---------------------------------------------

ENGLISH_HTML = (
    "<html><body><p>hello friend this is a simple message for you and we "
    "hope that you are doing well with all of the things that you do</p>"
    "</body></html>"
)

SPANISH_HTML = (
    "<html><body><p>hola amigo este es un mensaje muy simple para usted y "
    "esperamos que todo vaya bien con las cosas que usted hace cada uno de "
    "los dias porque la vida es para disfrutar</p></body></html>"
)

REMOTE_HTML = (
    '<html><body><img src="http://tracker.example.com/pixel.gif">'
    "<p>hello friend this is a message with a tracking pixel in it for you"
    "</p></body></html>"
)

MSO_HTML = (
    "<html><body><!--[if mso]><p>outlook only content here</p><![endif]-->"
    "<p>hello friend this is the message everyone can see and read today"
    "</p></body></html>"
)


def plain_text_email() -> bytes:
    return (
        b"From: a@example.com\r\nTo: b@example.com\r\nSubject: plain\r\n"
        b"Content-Type: text/plain\r\n\r\njust plain text, no html part\r\n"
    )


def bad_base64_email() -> bytes:
    return (
        b"From: a@example.com\r\nTo: b@example.com\r\nSubject: broken\r\n"
        b"MIME-Version: 1.0\r\n"
        b"Content-Type: text/html; charset=utf-8\r\n"
        b"Content-Transfer-Encoding: base64\r\n\r\n"
        b"!!!!not*base64*at*all!!!!\r\n"
    )


def broken_header_email() -> bytes:
    # no header/body separator at all
    return b"this file is not an rfc5322 message in any way"


@pytest.fixture(scope="session")
def sankey_corpus(tmp_path_factory):
    """7 emails: plain-text, remote, Spanish, bad-base64, MSO, 2 eligible."""
    root = tmp_path_factory.mktemp("sankey")
    sub = root / "2007-07"
    sub.mkdir()
    (sub / "b_plain.txt").write_bytes(plain_text_email())
    (sub / "c_remote.txt").write_bytes(wrap_email(REMOTE_HTML))
    (sub / "d_spanish.txt").write_bytes(wrap_email(SPANISH_HTML))
    (sub / "e_badb64.txt").write_bytes(bad_base64_email())
    (sub / "f_mso.txt").write_bytes(wrap_email(MSO_HTML))
    (sub / "g_ok1.txt").write_bytes(wrap_email(ENGLISH_HTML))
    (sub / "h_ok2.txt").write_bytes(wrap_email(ADD_PARAGRAPH_HTML + ENGLISH_HTML))
    return root
