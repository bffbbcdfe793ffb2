"""Main-article extraction from noisy HTML pages.

The page is converted to plain text where structural markup becomes newline
characters, then the text is split into blocks at newline runs. Each
"reduction" removes one newline from every run; blocks whose separator
reaches zero are merged (joined with a single space). After k reductions the
longest block is taken as the article: paragraphs of body text sit close
together (short newline runs) and coalesce, while navigation, ads and other
chrome stay separated behind longer runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from html.parser import HTMLParser

# Tags whose start marks a structural boundary in the text flow.
BLOCK_TAGS = frozenset({
    "p", "br", "div", "tr", "td", "th", "li", "h1", "h2", "h3", "h4", "h5",
    "h6", "table", "ul", "ol", "dl", "dt", "dd", "section", "article",
    "header", "footer", "nav", "aside", "main", "blockquote", "pre", "form",
    "fieldset", "hr", "title", "caption", "figure", "figcaption", "address",
    "center",
})

# Content of these tags is dropped entirely.
SKIP_TAGS = frozenset({"script", "style"})


class _TextExtractor(HTMLParser):
    """Tolerant tag-soup converter: block tags emit a newline, inline tags
    vanish without inserting whitespace, script/style/comments are dropped,
    character references are decoded. Text data passes through verbatim."""

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self._parts: list[str] = []
        self._skip_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in SKIP_TAGS:
            self._skip_depth += 1
        elif tag in BLOCK_TAGS:
            self._parts.append("\n")

    def handle_startendtag(self, tag, attrs):
        if tag in BLOCK_TAGS:
            self._parts.append("\n")

    def handle_endtag(self, tag):
        if tag in SKIP_TAGS and self._skip_depth > 0:
            self._skip_depth -= 1

    def handle_data(self, data):
        if self._skip_depth == 0 and data:
            self._parts.append(data)

    def text(self) -> str:
        return "".join(self._parts)


def html_to_text(html: str) -> str:
    """Plain text of an HTML page; worst case returns empty text."""
    parser = _TextExtractor()
    try:
        parser.feed(html)
        parser.close()
    except Exception:
        pass  # malformed input: keep whatever was parsed so far
    return parser.text().strip()


def normalize_whitespace(text: str) -> str:
    """Remove carriage returns and tabs; newlines are preserved."""
    return text.replace("\r", "").replace("\t", "")


@dataclass(frozen=True)
class TextBlock:
    """A maximal newline-free run of text.

    sep_after counts the newline characters separating this block from the
    next one (0 for the final block).
    """

    content: str
    sep_after: int = 0

    @property
    def length(self) -> int:
        return len(self.content)


@dataclass(frozen=True)
class BlockSequence:
    blocks: tuple[TextBlock, ...]
    reduction_count: int = 0

    def __len__(self) -> int:
        return len(self.blocks)


_NEWLINE_RUNS = re.compile(r"(\n+)")


def split_blocks(text: str) -> BlockSequence:
    """Split text (free of \\r and \\t) into blocks at newline runs.

    Whitespace-only blocks are dropped; the newline runs on both of their
    sides accumulate into a single separator.
    """
    blocks: list[TextBlock] = []
    sep_accum = 0
    for segment in _NEWLINE_RUNS.split(text):
        if not segment:
            continue
        if segment[0] == "\n":
            sep_accum += len(segment)
            continue
        content = segment.strip()
        if not content:
            continue
        if blocks:
            last = blocks[-1]
            blocks[-1] = TextBlock(last.content, sep_accum)
        blocks.append(TextBlock(content, 0))
        sep_accum = 0
    return BlockSequence(tuple(blocks))


def reduce_once(seq: BlockSequence) -> BlockSequence:
    """One reduction: every separator loses one newline; pairs whose
    separator was exactly 1 merge, joined by a single space. Merging
    cascades left to right, so a chain of single-separator blocks
    collapses into one block within the pass."""
    result: list[TextBlock] = []
    carry: str | None = None
    for block in seq.blocks:
        content = block.content if carry is None else carry + " " + block.content
        if block.sep_after == 1:
            carry = content
        else:
            result.append(TextBlock(content, max(block.sep_after - 1, 0)))
            carry = None
    if carry is not None:
        result.append(TextBlock(carry, 0))
    return BlockSequence(tuple(result), seq.reduction_count + 1)


def extract_article(html: str, k: int = 9) -> str:
    """Extract the main article from an HTML page via k reductions.

    Returns the content of the longest block (earliest block on ties);
    empty text signals an extraction miss.
    """
    if k < 1:
        raise ValueError(f"reduction count must be >= 1, got {k}")
    text = normalize_whitespace(html_to_text(html))
    seq = split_blocks(text)
    for _ in range(k):
        seq = reduce_once(seq)
    if not seq.blocks:
        return ""
    return max(seq.blocks, key=lambda b: b.length).content
