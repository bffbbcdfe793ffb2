"""Turn extracted article text into a Document of positioned canonical tokens.

Stage order is fixed: tokenize -> remove stop words -> canonicalize synonyms
-> stem. Stop words go first so frequent words never consume synonym lookups;
synonyms are resolved before stemming so group membership matches the
user-authored vocabulary (the base form then runs through the stemmer like
any other token).
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Any, Iterable, Sequence

from . import porter
from .vocab import SynonymTable, default_stop_words

# Maximal runs of alphanumeric characters; apostrophes inside words retained.
_TOKEN = re.compile(r"[^\W_]+(?:'[^\W_]+)*")

# Raw-token share of English stop words below which a page is flagged
# as not English.
ENGLISH_STOP_RATIO = 0.02


@dataclass(frozen=True)
class TokenInfo:
    """A token with its canonical form and location in the source text.

    position is the 0-based ordinal within the canonical token stream
    (recomputed after stop-word removal); offset/length address the
    surface form in the original article text.
    """

    surface: str
    canonical: str
    position: int
    offset: int
    length: int


@dataclass
class Document:
    """An extracted article with its canonical token stream and term counts."""

    url: str
    raw_text: str
    tokens: tuple[TokenInfo, ...]
    tf: dict[str, int]
    language: str = "en"
    text_length: int = 0
    rank: int = 0
    metadata: dict[str, Any] = field(default_factory=dict)

    _positions: dict[str, tuple[int, ...]] | None = field(
        default=None, init=False, repr=False, compare=False
    )

    @property
    def token_count(self) -> int:
        return len(self.tokens)

    @property
    def distinct_terms(self) -> int:
        return len(self.tf)

    @property
    def is_empty(self) -> bool:
        return not self.tokens

    def term_positions(self) -> dict[str, tuple[int, ...]]:
        """Positions of every instance of each canonical term, in order."""
        if self._positions is None:
            acc: dict[str, list[int]] = {}
            for token in self.tokens:
                acc.setdefault(token.canonical, []).append(token.position)
            self._positions = {t: tuple(p) for t, p in acc.items()}
        return self._positions

    def to_dict(self) -> dict[str, Any]:
        return {
            "url": self.url,
            "language": self.language,
            "text_length": self.text_length,
            "rank": self.rank,
            "metadata": dict(self.metadata),
            "tokens": [
                [t.surface, t.canonical, t.position, t.offset, t.length]
                for t in self.tokens
            ],
            "tf": dict(self.tf),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any], raw_text: str = "") -> "Document":
        tokens = tuple(TokenInfo(*row) for row in data["tokens"])
        return cls(
            url=data["url"],
            raw_text=raw_text,
            tokens=tokens,
            tf=dict(data["tf"]),
            language=data.get("language", "en"),
            text_length=data.get("text_length", 0),
            rank=data.get("rank", 0),
            metadata=dict(data.get("metadata", {})),
        )


def tokenize(text: str) -> list[TokenInfo]:
    """Split text into positioned tokens; canonical = lowercased surface."""
    tokens = []
    for position, match in enumerate(_TOKEN.finditer(text)):
        surface = match.group(0)
        tokens.append(
            TokenInfo(
                surface=surface,
                canonical=surface.lower(),
                position=position,
                offset=match.start(),
                length=len(surface),
            )
        )
    return tokens


def remove_stop_words(
    tokens: Iterable[TokenInfo], stop_list: frozenset[str] | set[str]
) -> list[TokenInfo]:
    """Drop tokens whose canonical form is a stop word; survivors are
    renumbered 0..n-1."""
    kept = [t for t in tokens if t.canonical not in stop_list]
    return [replace(t, position=i) for i, t in enumerate(kept)]


def canonicalize_synonyms(
    tokens: Iterable[TokenInfo], syn: SynonymTable
) -> list[TokenInfo]:
    """Map each token of a synonym group onto the group's base term."""
    if not syn:
        return list(tokens)
    out = []
    for token in tokens:
        base = syn.base_of(token.canonical)
        out.append(token if base is None else replace(token, canonical=base))
    return out


def stem(tokens: Iterable[TokenInfo]) -> list[TokenInfo]:
    """Replace each canonical form with its stem."""
    return [replace(t, canonical=porter.stem(t.canonical)) for t in tokens]


def canonical_term(term: str, syn: SynonymTable | None = None) -> str:
    """Run a single term through the synonym + stemming stages.

    Used to normalize query terms the same way document tokens are."""
    term = term.lower()
    if syn is not None:
        base = syn.base_of(term)
        if base is not None:
            term = base
    return porter.stem(term)


def detect_language(raw_tokens: Sequence[TokenInfo]) -> str:
    """Crude language flag: pages where almost no raw tokens are English
    stop words are assumed not to be English ("und")."""
    if not raw_tokens:
        return "und"
    stops = default_stop_words()
    hits = sum(1 for t in raw_tokens if t.canonical in stops)
    return "en" if hits / len(raw_tokens) >= ENGLISH_STOP_RATIO else "und"


def build_document(
    url: str,
    article_text: str,
    rank: int = 0,
    *,
    stop_words: frozenset[str] | set[str] | None = None,
    syn: SynonymTable | None = None,
    metadata: dict[str, Any] | None = None,
) -> Document:
    """Full normalization pipeline for one extracted article.

    stop_words defaults to the bundled English list; pass an empty set to
    disable removal. An empty article yields an empty (flagged) document.
    """
    if stop_words is None:
        stop_words = default_stop_words()
    raw_tokens = tokenize(article_text)
    language = detect_language(raw_tokens)
    tokens = remove_stop_words(raw_tokens, stop_words)
    tokens = canonicalize_synonyms(tokens, syn or SynonymTable.empty())
    tokens = stem(tokens)
    tf = Counter(t.canonical for t in tokens)
    return Document(
        url=url,
        raw_text=article_text,
        tokens=tuple(tokens),
        tf=dict(tf),
        language=language,
        text_length=len(article_text),
        rank=rank,
        metadata=metadata or {},
    )
