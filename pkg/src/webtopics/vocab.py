"""Vocabulary files: synonym groups, stop words, stop-URL prefixes, word lists.

File formats:
  synonyms  - one group per line, comma-separated, first entry is the base term
  stop words - one term per line
  stop URLs  - one URL prefix per line
  word list  - one word per line (used by the web sampler)

Blank lines and lines starting with '#' are ignored everywhere.
"""

from __future__ import annotations

import logging
from importlib import resources
from pathlib import Path

from .errors import ConfigurationError

log = logging.getLogger(__name__)


def _read_lines(path: str | Path, what: str) -> list[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read {what} file {path!r}: {exc}") from exc
    lines = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    return lines


class SynonymTable:
    """Synonym groups with a designated base (preferred) term per group.

    Looking up any member of a group returns the same base term; every
    group contains its own base term (it is the first file entry).
    """

    def __init__(self, groups: list[list[str]] | None = None):
        self._groups: dict[str, tuple[str, ...]] = {}
        self._base: dict[str, str] = {}
        for group in groups or []:
            self.add_group(group)

    def add_group(self, members: list[str]) -> None:
        members = [m.strip().lower() for m in members if m.strip()]
        if not members:
            return
        base = members[0]
        group = tuple(dict.fromkeys(members))
        self._groups[base] = group
        for member in group:
            if member in self._base and self._base[member] != base:
                log.warning("synonym %r already in group %r; keeping first", member, self._base[member])
                continue
            self._base[member] = base

    @classmethod
    def empty(cls) -> "SynonymTable":
        return cls()

    @classmethod
    def from_file(cls, path: str | Path) -> "SynonymTable":
        table = cls()
        for line in _read_lines(path, "synonym"):
            table.add_group(line.split(","))
        return table

    def base_of(self, term: str) -> str | None:
        """Base term of the group containing `term`, or None."""
        return self._base.get(term.lower())

    def group_of(self, term: str) -> tuple[str, ...] | None:
        """All members of the group containing `term` (base first), or None."""
        base = self._base.get(term.lower())
        return self._groups[base] if base is not None else None

    def __len__(self) -> int:
        return len(self._groups)

    def __bool__(self) -> bool:
        return bool(self._groups)


def load_stop_words(path: str | Path) -> frozenset[str]:
    return frozenset(w.lower() for w in _read_lines(path, "stop-word"))


def load_stop_urls(path: str | Path) -> tuple[str, ...]:
    return tuple(_read_lines(path, "stop-URL"))


def load_word_list(path: str | Path) -> tuple[str, ...]:
    return tuple(_read_lines(path, "word-list"))


def _bundled(name: str) -> Path:
    return Path(str(resources.files("webtopics").joinpath("data", name)))


_DEFAULT_STOP_WORDS: frozenset[str] | None = None


def default_stop_words() -> frozenset[str]:
    """The bundled 127-term English stop-word list."""
    global _DEFAULT_STOP_WORDS
    if _DEFAULT_STOP_WORDS is None:
        _DEFAULT_STOP_WORDS = load_stop_words(_bundled("stopwords_en.txt"))
    return _DEFAULT_STOP_WORDS


def default_word_list() -> tuple[str, ...]:
    """The bundled English word list used by the web sampler."""
    return load_word_list(_bundled("wordlist_en.txt"))
