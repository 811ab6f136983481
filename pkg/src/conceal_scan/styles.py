"""CSS cascade resolution and per-text-node visibility judgment.

An analytic visibility model: styles are resolved for the concealment-
relevant property subset only (color, background, font-size, display,
visibility, float/position offsets, declared widths/heights), and each
text node is judged visible or concealed with reason codes. No box-model
layout is computed; positional judgments use declared values.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Tuple

from conceal_scan.dom import BLOCK_ELEMENTS, DomNode


class ConcealReason(enum.Enum):
    FONT_COLOUR = "FontColour"
    FONT_SIZE = "FontSize"
    TEXT_POSITION = "TextPosition"
    TABLE_MANIPULATION = "TableManipulation"
    OTHER = "Other"


@dataclass(frozen=True)
class VisibilityConfig:
    # contrast ratios below this count as invisible against the background
    min_contrast: float = 1.05
    # computed font sizes at or below this many px count as invisible
    max_hidden_font_px: float = 3.0
    # nominal viewport width for off-screen judgments
    viewport_width: float = 800.0


@dataclass(frozen=True)
class RGBA:
    r: int
    g: int
    b: int
    a: float = 1.0


WHITE = RGBA(255, 255, 255)
BLACK = RGBA(0, 0, 0)
TRANSPARENT = RGBA(0, 0, 0, 0.0)

NAMED_COLORS: Dict[str, Tuple[int, int, int]] = {
    "aliceblue": (240, 248, 255), "aqua": (0, 255, 255), "azure": (240, 255, 255),
    "beige": (245, 245, 220), "black": (0, 0, 0), "blue": (0, 0, 255),
    "brown": (165, 42, 42), "coral": (255, 127, 80), "cyan": (0, 255, 255),
    "darkgray": (169, 169, 169), "darkgrey": (169, 169, 169),
    "floralwhite": (255, 250, 240), "fuchsia": (255, 0, 255),
    "ghostwhite": (248, 248, 255), "gold": (255, 215, 0), "gray": (128, 128, 128),
    "green": (0, 128, 0), "grey": (128, 128, 128), "honeydew": (240, 255, 240),
    "ivory": (255, 255, 240), "khaki": (240, 230, 140),
    "lavender": (230, 230, 250), "lightgray": (211, 211, 211),
    "lightgrey": (211, 211, 211), "lightyellow": (255, 255, 224),
    "lime": (0, 255, 0), "magenta": (255, 0, 255), "maroon": (128, 0, 0),
    "mintcream": (245, 255, 250), "navy": (0, 0, 128), "olive": (128, 128, 0),
    "orange": (255, 165, 0), "pink": (255, 192, 203), "purple": (128, 0, 128),
    "red": (255, 0, 0), "salmon": (250, 128, 114), "seashell": (255, 245, 238),
    "silver": (192, 192, 192), "snow": (255, 250, 250), "tan": (210, 180, 140),
    "teal": (0, 128, 128), "white": (255, 255, 255),
    "whitesmoke": (245, 245, 245), "yellow": (255, 255, 0),
}

_RGB_FN_RE = re.compile(r"rgba?\(([^)]*)\)", re.IGNORECASE)


def parse_color(value: str) -> Optional[RGBA]:
    """Parse a CSS color value; None when unparseable."""
    if not value:
        return None
    v = value.strip().lower()
    if v == "transparent":
        return TRANSPARENT
    if v in NAMED_COLORS:
        r, g, b = NAMED_COLORS[v]
        return RGBA(r, g, b)
    if v.startswith("#"):
        hexpart = v[1:]
        if not re.fullmatch(r"[0-9a-f]+", hexpart):
            return None
        if len(hexpart) == 3:
            return RGBA(*(int(c * 2, 16) for c in hexpart))
        if len(hexpart) == 4:
            r, g, b, a = (int(c * 2, 16) for c in hexpart)
            return RGBA(r, g, b, a / 255.0)
        if len(hexpart) == 6:
            return RGBA(*(int(hexpart[i:i + 2], 16) for i in (0, 2, 4)))
        if len(hexpart) == 8:
            vals = [int(hexpart[i:i + 2], 16) for i in (0, 2, 4, 6)]
            return RGBA(vals[0], vals[1], vals[2], vals[3] / 255.0)
        return None
    m = _RGB_FN_RE.fullmatch(v)
    if m:
        parts = [p.strip() for p in m.group(1).replace("/", ",").split(",") if p.strip()]
        if len(parts) not in (3, 4):
            return None
        try:
            chans = []
            for p in parts[:3]:
                if p.endswith("%"):
                    chans.append(round(float(p[:-1]) * 255 / 100))
                else:
                    chans.append(round(float(p)))
            chans = [max(0, min(255, c)) for c in chans]
            alpha = 1.0
            if len(parts) == 4:
                p = parts[3]
                alpha = float(p[:-1]) / 100 if p.endswith("%") else float(p)
                alpha = max(0.0, min(1.0, alpha))
            return RGBA(chans[0], chans[1], chans[2], alpha)
        except ValueError:
            return None
    return None


def _srgb_channel(c: int) -> float:
    s = c / 255.0
    return s / 12.92 if s <= 0.03928 else ((s + 0.055) / 1.055) ** 2.4


def relative_luminance(c: RGBA) -> float:
    return (
        0.2126 * _srgb_channel(c.r)
        + 0.7152 * _srgb_channel(c.g)
        + 0.0722 * _srgb_channel(c.b)
    )


def composite_over(fg: RGBA, bg: RGBA) -> RGBA:
    """Alpha-composite fg over an (assumed opaque) background."""
    a = fg.a
    return RGBA(
        round(fg.r * a + bg.r * (1 - a)),
        round(fg.g * a + bg.g * (1 - a)),
        round(fg.b * a + bg.b * (1 - a)),
    )


def contrast_ratio(fg: RGBA, bg: RGBA) -> float:
    """W3C relative-luminance contrast ratio, always >= 1.0.

    fg is alpha-composited over bg first.
    """
    l1 = relative_luminance(composite_over(fg, bg))
    l2 = relative_luminance(bg)
    if l1 < l2:
        l1, l2 = l2, l1
    return (l1 + 0.05) / (l2 + 0.05)


# --- declaration / stylesheet parsing -----------------------------------

_LENGTH_RE = re.compile(r"(-?\d+(?:\.\d+)?)\s*(px|pt|em|rem|%)?\s*$", re.IGNORECASE)

_FONT_SIZE_KEYWORDS = {
    "xx-small": 9.0, "x-small": 10.0, "small": 13.0, "medium": 16.0,
    "large": 18.0, "x-large": 24.0, "xx-large": 32.0,
}

# HTML <font size=n> mapping (conventional browser values)
HTML_FONT_SIZE_PX = {1: 10.0, 2: 13.0, 3: 16.0, 4: 18.0, 5: 24.0, 6: 32.0, 7: 48.0}

DEFAULT_FONT_SIZE_PX = 16.0


def parse_declarations(text: str) -> Dict[str, str]:
    """Parse 'prop: value; ...' with declaration-level error recovery."""
    out: Dict[str, str] = {}
    for chunk in text.split(";"):
        if ":" not in chunk:
            continue
        prop, _, value = chunk.partition(":")
        prop = prop.strip().lower()
        value = value.strip()
        if prop and value:
            out[prop] = value
    return out


def parse_length_px(value: str, parent_px: float = DEFAULT_FONT_SIZE_PX) -> Optional[float]:
    v = value.strip().lower()
    if v in _FONT_SIZE_KEYWORDS:
        return _FONT_SIZE_KEYWORDS[v]
    if v == "smaller":
        return parent_px / 1.2
    if v == "larger":
        return parent_px * 1.2
    m = _LENGTH_RE.match(v)
    if not m:
        return None
    num = float(m.group(1))
    unit = (m.group(2) or "px").lower()
    if unit == "px":
        return num
    if unit == "pt":
        return num * 4.0 / 3.0
    if unit == "em":
        return num * parent_px
    if unit == "rem":
        return num * DEFAULT_FONT_SIZE_PX
    if unit == "%":
        return num * parent_px / 100.0
    return None


@dataclass(frozen=True)
class SimpleSelector:
    tag: Optional[str]
    classes: Tuple[str, ...]
    id: Optional[str]

    def matches(self, node: DomNode) -> bool:
        if node.kind != "element":
            return False
        if self.tag is not None and node.tag != self.tag:
            return False
        if self.id is not None and node.attrs.get("id") != self.id:
            return False
        if self.classes:
            have = set(node.attrs.get("class", "").lower().split())
            if not set(self.classes) <= have:
                return False
        return True


@dataclass(frozen=True)
class Rule:
    selectors: Tuple[SimpleSelector, ...]  # descendant chain, last is subject
    first_letter: bool
    specificity: Tuple[int, int, int]
    order: int
    declarations: Dict[str, str] = field(hash=False)

    def matches(self, node: DomNode) -> bool:
        if not self.selectors[-1].matches(node):
            return False
        remaining = list(self.selectors[:-1])
        anc = node.parent
        while remaining and anc is not None:
            if remaining[-1].matches(anc):
                remaining.pop()
            anc = anc.parent
        return not remaining


_SIMPLE_SEL_RE = re.compile(r"([a-zA-Z][\w-]*|\*)?((?:[.#][\w-]+)*)$")


def _parse_simple_selector(token: str) -> Optional[SimpleSelector]:
    m = _SIMPLE_SEL_RE.match(token)
    if not m or (not m.group(1) and not m.group(2)):
        return None
    tag = m.group(1)
    tag = None if tag in (None, "*") else tag.lower()
    classes: List[str] = []
    sel_id: Optional[str] = None
    for part in re.findall(r"[.#][\w-]+", m.group(2) or ""):
        if part.startswith("."):
            classes.append(part[1:].lower())
        else:
            sel_id = part[1:]
    return SimpleSelector(tag=tag, classes=tuple(classes), id=sel_id)


def _strip_comments(css: str) -> str:
    return re.sub(r"/\*.*?\*/", " ", css, flags=re.DOTALL)


def _skip_at_rule(css: str, i: int) -> int:
    """Return index just past an at-rule starting at i."""
    depth = 0
    n = len(css)
    while i < n:
        c = css[i]
        if c == "{":
            depth += 1
        elif c == "}":
            depth -= 1
            if depth <= 0:
                return i + 1
        elif c == ";" and depth == 0:
            return i + 1
        i += 1
    return n


def parse_stylesheet(css: str) -> List[Rule]:
    """Parse element/.class/#id/descendant/:first-letter rules; everything
    else (at-rules, unsupported selectors) is skipped."""
    css = _strip_comments(css)
    rules: List[Rule] = []
    order = 0
    i = 0
    n = len(css)
    while i < n:
        if css[i].isspace():
            i += 1
            continue
        if css[i] == "@":
            i = _skip_at_rule(css, i)
            continue
        brace = css.find("{", i)
        if brace == -1:
            break
        close = css.find("}", brace)
        if close == -1:
            close = n
        selector_text = css[i:brace].strip()
        decls = parse_declarations(css[brace + 1:close])
        i = close + 1
        if not selector_text or not decls:
            continue
        for sel in selector_text.split(","):
            sel = sel.strip()
            if not sel:
                continue
            first_letter = False
            low = sel.lower()
            for suffix in ("::first-letter", ":first-letter"):
                if low.endswith(suffix):
                    sel = sel[: -len(suffix)].strip()
                    first_letter = True
                    break
            if not sel or ":" in sel:
                continue  # unsupported pseudo
            chain: List[SimpleSelector] = []
            ok = True
            for token in sel.split():
                if token in (">", "+", "~"):
                    ok = False  # unsupported combinators
                    break
                simple = _parse_simple_selector(token.lower() if "#" not in token else token)
                if simple is None:
                    ok = False
                    break
                chain.append(simple)
            if not ok or not chain:
                continue
            ids = sum(1 for s in chain if s.id)
            classes = sum(len(s.classes) for s in chain)
            types = sum(1 for s in chain if s.tag)
            rules.append(
                Rule(
                    selectors=tuple(chain),
                    first_letter=first_letter,
                    specificity=(ids, classes, types),
                    order=order,
                    declarations=decls,
                )
            )
            order += 1
    return rules


# --- resolved styles ------------------------------------------------------

@dataclass
class FirstLetterOverride:
    color: Optional[RGBA] = None
    font_size: Optional[float] = None


@dataclass
class ResolvedStyle:
    color: RGBA = BLACK
    background: Optional[RGBA] = None  # None = transparent
    effective_background: RGBA = WHITE
    font_size: float = DEFAULT_FONT_SIZE_PX
    display: str = "inline"
    visibility: str = "visible"
    float_: str = "none"
    position: str = "static"
    left: Optional[float] = None
    top: Optional[float] = None
    width: Optional[float] = None
    height: Optional[float] = None
    hidden_subtree: bool = False  # display:none at this element or above
    first_letter: Optional[FirstLetterOverride] = None


def _default_display(tag: str) -> str:
    if tag in ("td", "th"):
        return "table-cell"
    if tag == "tr":
        return "table-row"
    if tag == "table":
        return "table"
    if tag in ("thead", "tbody", "tfoot"):
        return "table-row-group"
    if tag in ("li",):
        return "list-item"
    if tag in BLOCK_ELEMENTS:
        return "block"
    return "inline"


def _presentational_props(node: DomNode) -> Dict[str, str]:
    props: Dict[str, str] = {}
    attrs = node.attrs
    if node.tag == "font":
        if "color" in attrs:
            props["color"] = attrs["color"]
        if "size" in attrs:
            size = attrs["size"].strip()
            try:
                if size.startswith(("+", "-")):
                    n = 3 + int(size)
                else:
                    n = int(size)
                n = max(1, min(7, n))
                props["font-size"] = f"{HTML_FONT_SIZE_PX[n]}px"
            except ValueError:
                pass
    if "bgcolor" in attrs:
        props["background-color"] = attrs["bgcolor"]
    for dim in ("width", "height"):
        if dim in attrs:
            raw = attrs[dim].strip()
            props[dim] = raw if raw.endswith("%") else f"{raw}px"
    return props


def _background_from_props(props: Dict[str, str]) -> Optional[RGBA]:
    if "background-color" in props:
        c = parse_color(props["background-color"])
        if c is not None:
            return c
    if "background" in props:
        # shorthand: take the first token that parses as a color
        for token in props["background"].split():
            c = parse_color(token)
            if c is not None:
                return c
    return None


def _collect_props(node: DomNode, rules: List[Rule]) -> Tuple[Dict[str, str], Optional[FirstLetterOverride]]:
    props = _presentational_props(node)
    fl_props: Dict[str, str] = {}
    matching = [r for r in rules if r.matches(node)]
    for rule in sorted(matching, key=lambda r: (r.specificity, r.order)):
        if rule.first_letter:
            fl_props.update(rule.declarations)
        else:
            props.update(rule.declarations)
    if "style" in node.attrs:
        props.update(parse_declarations(node.attrs["style"]))
    override = None
    if fl_props:
        override = FirstLetterOverride()
        if "color" in fl_props:
            override.color = parse_color(fl_props["color"])
        if "font-size" in fl_props:
            override.font_size = fl_props["font-size"]  # resolved later
        if override.color is None and override.font_size is None:
            override = None
    return props, override


def _resolve_node(node: DomNode, parent: ResolvedStyle, rules: List[Rule]) -> None:
    props, fl_override = _collect_props(node, rules)

    style = ResolvedStyle(
        color=parent.color,
        font_size=parent.font_size,
        visibility=parent.visibility,
        effective_background=parent.effective_background,
        hidden_subtree=parent.hidden_subtree,
        display=_default_display(node.tag),
    )

    if "color" in props:
        c = parse_color(props["color"])
        if c is not None:
            style.color = c
    if "font-size" in props:
        fs = parse_length_px(props["font-size"], parent.font_size)
        if fs is not None and fs >= 0:
            style.font_size = fs
    if "display" in props:
        style.display = props["display"].strip().lower()
    if "visibility" in props:
        v = props["visibility"].strip().lower()
        if v in ("visible", "hidden", "collapse"):
            style.visibility = "hidden" if v == "collapse" else v
    if "float" in props:
        style.float_ = props["float"].strip().lower()
    if "position" in props:
        style.position = props["position"].strip().lower()
    for prop, attr in (("left", "left"), ("top", "top")):
        if prop in props:
            setattr(style, attr, parse_length_px(props[prop], parent.font_size))
    for prop in ("width", "height"):
        if prop in props:
            val = props[prop].strip()
            px = parse_length_px(val, parent.font_size)
            if px is None and val.endswith("%"):
                # percentage extents only matter when declared zero
                try:
                    px = 0.0 if float(val[:-1]) == 0 else None
                except ValueError:
                    px = None
            setattr(style, prop, px)

    style.background = _background_from_props(props)
    if style.background is not None and style.background.a > 0:
        style.effective_background = composite_over(
            style.background, parent.effective_background
        )
    if style.display == "none":
        style.hidden_subtree = True

    if fl_override is not None:
        resolved_fl = FirstLetterOverride(color=fl_override.color)
        if fl_override.font_size is not None:
            resolved_fl.font_size = parse_length_px(
                str(fl_override.font_size), style.font_size
            )
        style.first_letter = resolved_fl

    node.style = style
    for child in node.children:
        if child.kind == "element":
            _resolve_node(child, style, rules)


def resolve_styles(root: DomNode) -> DomNode:
    """Annotate every element in the tree with a ResolvedStyle.

    Cascade order: tag defaults < presentational attributes < style-element
    rules (by specificity, then source order) < inline style attribute.
    color, font-size and visibility inherit; background does not, but each
    node carries the effective background of its nearest painted ancestor.
    """
    rules: List[Rule] = []
    for node in root.iter():
        if node.is_element("style"):
            css = "".join(c.text for c in node.children if c.kind == "text")
            rules.extend(parse_stylesheet(css))
    # re-number rule order across multiple style elements
    rules = [replace(r, order=i) for i, r in enumerate(rules)]

    base = ResolvedStyle(display="block")
    root.style = base
    for child in root.children:
        if child.kind == "element":
            _resolve_node(child, base, rules)
    return root


# --- visibility judgment --------------------------------------------------

@dataclass(frozen=True)
class VisibilityJudgment:
    visible: bool
    reasons: frozenset  # of ConcealReason

    @staticmethod
    def from_reasons(reasons) -> "VisibilityJudgment":
        rs = frozenset(reasons)
        return VisibilityJudgment(visible=not rs, reasons=rs)


_TABLE_TAGS = {"td", "th", "tr", "table", "col", "colgroup"}


def _table_zero_extent(element: DomNode) -> bool:
    node: Optional[DomNode] = element
    while node is not None:
        if node.is_element() and node.tag in _TABLE_TAGS and node.style is not None:
            st = node.style
            if st.width == 0 or st.height == 0:
                return True
        node = node.parent
    return False


def _judge(
    element: DomNode,
    color: RGBA,
    font_size: float,
    cfg: VisibilityConfig,
) -> frozenset:
    st: ResolvedStyle = element.style
    reasons = set()

    if st.hidden_subtree or st.visibility == "hidden":
        reasons.add(ConcealReason.TEXT_POSITION)
    if st.position in ("absolute", "fixed", "relative") and st.left is not None:
        if st.left >= cfg.viewport_width or st.left <= -cfg.viewport_width:
            reasons.add(ConcealReason.TEXT_POSITION)

    if color.a == 0:
        reasons.add(ConcealReason.FONT_COLOUR)
    elif contrast_ratio(color, st.effective_background) < cfg.min_contrast:
        reasons.add(ConcealReason.FONT_COLOUR)

    if font_size <= cfg.max_hidden_font_px:
        reasons.add(ConcealReason.FONT_SIZE)

    if _table_zero_extent(element):
        reasons.add(ConcealReason.TABLE_MANIPULATION)

    # float/absolute displacement contributes to concealment only when the
    # text is already unreadable; floated-but-legible text stays visible
    if reasons and (
        st.float_ in ("left", "right") or st.position in ("absolute", "fixed")
    ):
        reasons.add(ConcealReason.TEXT_POSITION)

    return frozenset(reasons)


def judge_visibility(
    text_node: DomNode, cfg: Optional[VisibilityConfig] = None
) -> Tuple[VisibilityJudgment, Optional[VisibilityJudgment]]:
    """Judge a text node's visibility from its parent element's resolved
    style. Returns (main judgment, first-letter judgment or None).

    The first-letter judgment is present only when an enclosing element
    declared a :first-letter override; it applies to the node's first
    character.
    """
    cfg = cfg or VisibilityConfig()
    element = text_node.parent
    if element is None or element.style is None:
        return VisibilityJudgment(True, frozenset()), None
    st: ResolvedStyle = element.style

    main = VisibilityJudgment.from_reasons(_judge(element, st.color, st.font_size, cfg))

    fl_judgment = None
    if st.first_letter is not None:
        fl_color = st.first_letter.color if st.first_letter.color is not None else st.color
        fl_size = (
            st.first_letter.font_size
            if st.first_letter.font_size is not None
            else st.font_size
        )
        fl_judgment = VisibilityJudgment.from_reasons(
            _judge(element, fl_color, fl_size, cfg)
        )
    return main, fl_judgment
