"""Synthetic corpus generation with known ground truth.

Builds RFC5322 email files that exercise each concealment sub-type using
the patterns observed in real spam, plus clean controls. Used by the
test suite and handy for demoing the pipeline without a real archive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from email.message import EmailMessage
from pathlib import Path
from typing import Dict, List, Optional, Tuple

VISIBLE_SENTENCES = [
    "good morning customer you have problems we can solve it",
    "click this link below to see what we can offer you today",
    "we are happy to help you with all of the questions you have",
    "this is the best offer that you will see for a very long time",
    "please read this message and tell us what you think about it",
    "you can save money when you order from us because we are cheap",
]

HIDDEN_WORDS = [
    "prolate", "balfour", "rabid", "pliant", "embroider", "etruscan",
    "thermograph", "alodial", "supersaturate", "vilayet", "galenic",
    "crotch", "registrar", "depredate", "perambulate", "egregious",
    "decipherable", "polychromatic", "inflorescence", "selfhealing",
]

SPAM_WORDS = ["viagra", "pills", "mortgage", "casino", "lottery", "refinance"]


def wrap_email(
    html: str,
    subject: str = "hello",
    charset: str = "utf-8",
    cte: str = "quoted-printable",
) -> bytes:
    msg = EmailMessage()
    msg["From"] = "sender@example.com"
    msg["To"] = "rcpt@example.com"
    msg["Subject"] = subject
    msg.set_content("plain text alternative")
    msg.add_alternative(html, subtype="html")
    return bytes(msg)


@dataclass
class GroundTruth:
    email_id: str
    concealed: bool
    subtypes: frozenset = frozenset()
    tricks: frozenset = frozenset()


@dataclass
class SyntheticCorpus:
    root: Path
    truths: Dict[str, GroundTruth] = field(default_factory=dict)
    ids: List[str] = field(default_factory=list)


def _visible_paragraphs(rng: random.Random, n: int = 2) -> str:
    picks = rng.sample(VISIBLE_SENTENCES, n)
    return "".join(f"<p>{s}</p>" for s in picks)


def add_paragraph_html(rng: random.Random) -> str:
    hidden = " ".join(rng.sample(HIDDEN_WORDS, 8))
    return (
        "<html><body>"
        + _visible_paragraphs(rng)
        + f'<div><font color="#ffffff">{hidden}</font></div>'
        + _visible_paragraphs(rng, 1)
        + "</body></html>"
    )


def disrupt_word_html(rng: random.Random) -> str:
    word = rng.choice(SPAM_WORDS)
    cut = rng.randrange(1, len(word) - 1)
    noise = rng.choice("0123456789xyz")
    disrupted = (
        word[:cut]
        + f'<font style="font-size:1px">{noise}</font>'
        + word[cut:]
    )
    return (
        "<html><body>"
        + _visible_paragraphs(rng, 1)
        + f"<p>buy {disrupted} from our shop and we will ship it to you</p>"
        + "</body></html>"
    )


def insert_word_html(rng: random.Random) -> str:
    hidden = rng.choice(HIDDEN_WORDS)
    return (
        "<html><body>"
        + f'<p>dear friend <span style="display:none">{hidden}</span> '
        "we want you to know that you can trust us with your order</p>"
        + _visible_paragraphs(rng, 1)
        + "</body></html>"
    )


def clean_html(rng: random.Random) -> str:
    return "<html><body>" + _visible_paragraphs(rng, 3) + "</body></html>"


_GENERATORS = [
    ("addpara", add_paragraph_html, {"AddParagraph"}, {"FontColour"}),
    ("disrupt", disrupt_word_html, {"DisruptWord"}, {"FontSize"}),
    ("insert", insert_word_html, {"InsertWord"}, {"TextPosition"}),
]


def generate_corpus(
    root: Path,
    per_subtype: int = 10,
    clean: int = 10,
    seed: int = 7,
    year_month: Tuple[int, int] = (2007, 7),
) -> SyntheticCorpus:
    """Write a year-month corpus directory with known per-email labels."""
    rng = random.Random(seed)
    root = Path(root)
    year, month = year_month
    subdir = root / f"{year}-{month:02d}"
    subdir.mkdir(parents=True, exist_ok=True)
    corpus = SyntheticCorpus(root=root)

    counter = 0
    for name, generator, subtypes, tricks in _GENERATORS:
        for i in range(per_subtype):
            counter += 1
            email_id = f"{year}-{month:02d}/{name}_{i:03d}.txt"
            (root / email_id).write_bytes(wrap_email(generator(rng)))
            corpus.truths[email_id] = GroundTruth(
                email_id=email_id,
                concealed=True,
                subtypes=frozenset(subtypes),
                tricks=frozenset(tricks),
            )
            corpus.ids.append(email_id)
    for i in range(clean):
        email_id = f"{year}-{month:02d}/clean_{i:03d}.txt"
        (root / email_id).write_bytes(wrap_email(clean_html(rng)))
        corpus.truths[email_id] = GroundTruth(email_id=email_id, concealed=False)
        corpus.ids.append(email_id)
    return corpus
