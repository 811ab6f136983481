"""Error-tolerant HTML parsing into a simple DOM tree.

Built on html.parser.HTMLParser: unclosed tags are auto-closed, unknown
tags are kept as generic elements, comments are preserved. The parser is
total; the worst malformed input still yields a tree (possibly a single
text node under the root).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from html.parser import HTMLParser
from typing import Dict, Iterator, List, Optional

VOID_ELEMENTS = {
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr",
}

# Elements that break the inline text flow. <br> is handled separately
# (a line break, not an enclosing box).
BLOCK_ELEMENTS = {
    "address", "article", "aside", "blockquote", "body", "caption",
    "center", "dd", "div", "dl", "dt", "fieldset", "figure", "footer",
    "form", "h1", "h2", "h3", "h4", "h5", "h6", "head", "header", "hr",
    "html", "li", "main", "nav", "ol", "p", "pre", "section", "table",
    "tbody", "td", "tfoot", "th", "thead", "title", "tr", "ul",
}

# Content of these elements is never renderable text.
NON_RENDERED = {"script", "style", "title", "head"}

# start tag -> open tags it implicitly closes
_IMPLIED_CLOSERS: Dict[str, set] = {
    "li": {"li"},
    "option": {"option"},
    "tr": {"tr", "td", "th"},
    "td": {"td", "th"},
    "th": {"td", "th"},
    "thead": {"tr", "td", "th", "tbody", "tfoot"},
    "tbody": {"tr", "td", "th", "thead", "tfoot"},
    "tfoot": {"tr", "td", "th", "thead", "tbody"},
    "dt": {"dt", "dd"},
    "dd": {"dt", "dd"},
    "p": {"p"},
}
# any block start closes an open <p>
for _tag in BLOCK_ELEMENTS:
    _IMPLIED_CLOSERS.setdefault(_tag, set()).add("p")


@dataclass(eq=False)  # identity comparison; structural eq would recurse
class DomNode:
    kind: str  # "element" | "text" | "comment"
    tag: str = ""
    attrs: Dict[str, str] = field(default_factory=dict)
    children: List["DomNode"] = field(default_factory=list)
    text: str = ""
    parent: Optional["DomNode"] = None
    # filled in by the style resolver
    style: object = None

    def append(self, child: "DomNode") -> None:
        child.parent = self
        self.children.append(child)

    def is_element(self, *tags: str) -> bool:
        return self.kind == "element" and (not tags or self.tag in tags)

    def iter(self) -> Iterator["DomNode"]:
        yield self
        for child in self.children:
            yield from child.iter()

    def ancestors(self) -> Iterator["DomNode"]:
        node = self.parent
        while node is not None:
            yield node
            node = node.parent

    def path(self) -> str:
        """Root-relative path like /div[1]/font[2]/#text[1]."""
        parts: List[str] = []
        node: Optional[DomNode] = self
        while node is not None and node.parent is not None:
            siblings = [
                c for c in node.parent.children
                if (c.kind, c.tag) == (node.kind, node.tag)
            ]
            idx = siblings.index(node) + 1
            name = node.tag if node.kind == "element" else "#" + node.kind
            parts.append(f"{name}[{idx}]")
            node = node.parent
        return "/" + "/".join(reversed(parts))


class _TreeBuilder(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.root = DomNode(kind="element", tag="#root")
        self.stack = [self.root]

    @property
    def top(self) -> DomNode:
        return self.stack[-1]

    def handle_starttag(self, tag, attrs):
        closers = _IMPLIED_CLOSERS.get(tag)
        if closers:
            while len(self.stack) > 1 and self.top.tag in closers:
                self.stack.pop()
        node = DomNode(
            kind="element",
            tag=tag,
            attrs={k.lower(): (v if v is not None else "") for k, v in attrs},
        )
        self.top.append(node)
        if tag not in VOID_ELEMENTS:
            self.stack.append(node)

    def handle_startendtag(self, tag, attrs):
        node = DomNode(
            kind="element",
            tag=tag,
            attrs={k.lower(): (v if v is not None else "") for k, v in attrs},
        )
        self.top.append(node)

    def handle_endtag(self, tag):
        if tag in VOID_ELEMENTS:
            return
        # close up to the matching open tag; ignore strays
        for i in range(len(self.stack) - 1, 0, -1):
            if self.stack[i].tag == tag:
                del self.stack[i:]
                return

    def handle_data(self, data):
        if not data:
            return
        self.top.append(DomNode(kind="text", text=data))

    def handle_comment(self, data):
        self.top.append(DomNode(kind="comment", text=data))

    def unknown_decl(self, data):
        # downlevel-revealed conditional syntax ends up here; keep it as
        # a comment node so it never contributes renderable text
        self.top.append(DomNode(kind="comment", text=data))

    def handle_decl(self, decl):
        self.top.append(DomNode(kind="comment", text=decl))

    def handle_pi(self, data):
        self.top.append(DomNode(kind="comment", text=data))


def parse_html(html: str) -> DomNode:
    """Parse HTML into a DomNode tree rooted at a synthetic #root element."""
    builder = _TreeBuilder()
    try:
        builder.feed(html)
        builder.close()
    except Exception:
        # HTMLParser rarely raises, but the parser must stay total
        pass
    return builder.root
