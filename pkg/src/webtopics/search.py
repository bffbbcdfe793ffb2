"""Federated search: query expansion, pluggable providers, merge + shuffle.

Providers are pluggable behind a small search(query, limit) surface. Two
kinds ship with the package: fixture providers reading a JSON file of result
items (the reproducible test path) and a generic HTTP provider driven by an
endpoint template with {query} and {count} placeholders. HTTP requests are
sent without identifying headers so results cannot be personalized.
"""

from __future__ import annotations

import json
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from datetime import date
from pathlib import Path
from typing import Any, Sequence
from urllib.parse import quote_plus, urlsplit, urlunsplit
from urllib.request import Request, urlopen

from .errors import ConfigurationError, EmptyFederationError, InvalidQueryError

log = logging.getLogger(__name__)

_OPERATORS = {"and", "or"}

DEFAULT_MAX_RESULTS = 40


def normalize_url(url: str) -> str:
    """Canonical form used for exact-URL comparisons: lowercase the scheme
    and host, strip any trailing slash from the path."""
    parts = urlsplit(url.strip())
    return urlunsplit(
        (
            parts.scheme.lower(),
            parts.netloc.lower(),
            parts.path.rstrip("/"),
            parts.query,
            parts.fragment,
        )
    )


@dataclass(frozen=True)
class Query:
    """A keyword query: the raw text, its synonym-expanded form, and the
    bare query terms (boolean operators and parentheses stripped)."""

    raw: str
    expanded: str
    terms: tuple[str, ...]

    @classmethod
    def from_raw(cls, raw: str) -> "Query":
        if not raw or not raw.strip():
            raise InvalidQueryError("query is blank")
        terms = []
        for token in raw.split():
            core = token.strip("()").lower()
            if core and core not in _OPERATORS:
                terms.append(core)
        if not terms:
            raise InvalidQueryError(f"query {raw!r} contains no searchable terms")
        return cls(raw=raw, expanded=raw, terms=tuple(terms))


def expand_query(q: Query, syn) -> Query:
    """Replace every raw term that has a synonym group with an
    or-disjunction of all group members; operators and terms without
    groups pass through unchanged. The disjunction is parenthesized when
    the query has more than one token so operator precedence survives."""
    if not q.raw.strip():
        raise InvalidQueryError("query is blank")
    tokens = q.raw.split()
    multi = len(tokens) > 1
    out = []
    for token in tokens:
        lead = token[: len(token) - len(token.lstrip("("))]
        trail = token[len(token.rstrip(")")):]
        core = token[len(lead): len(token) - len(trail)]
        group = syn.group_of(core.lower()) if core and core.lower() not in _OPERATORS else None
        if group:
            disjunction = " or ".join(group)
            if multi:
                disjunction = "(" + disjunction + ")"
            out.append(lead + disjunction + trail)
        else:
            out.append(token)
    return replace(q, expanded=" ".join(out))


@dataclass(frozen=True)
class SearchResultItem:
    """One result row: a URL plus whatever metadata the provider offered.

    rank is the 0-based position within the provider's own result list.
    """

    url: str
    title: str | None = None
    description: str | None = None
    published: date | None = None
    rank: int = 0
    provider: str = ""


@dataclass(frozen=True)
class ProviderSpec:
    """Configuration of one search provider.

    kind "fixture": location is a JSON file path (may contain {query});
    kind "http": location is an endpoint template with {query} and {count}
    placeholders, with response_mapping describing where result fields live
    in the JSON payload.
    """

    id: str
    kind: str
    location: str
    max_results: int = DEFAULT_MAX_RESULTS
    response_mapping: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("fixture", "http"):
            raise ConfigurationError(f"unknown provider kind {self.kind!r}")
        if self.max_results < 1:
            raise ConfigurationError("provider max_results must be >= 1")


def _parse_date(value: Any) -> date | None:
    if not value or not isinstance(value, str):
        return None
    try:
        return date.fromisoformat(value[:10])
    except ValueError:
        return None


class FixtureProvider:
    """Provider backed by a JSON array of {url, title, description,
    published, rank} objects."""

    def __init__(self, spec: ProviderSpec):
        self.spec = spec

    def search(self, query: str, limit: int) -> list[SearchResultItem]:
        path = Path(self.spec.location.replace("{query}", query))
        rows = json.loads(path.read_text(encoding="utf-8"))
        items = []
        for i, row in enumerate(rows[:limit]):
            if not row.get("url"):
                continue
            items.append(
                SearchResultItem(
                    url=row["url"],
                    title=row.get("title"),
                    description=row.get("description"),
                    published=_parse_date(row.get("published")),
                    rank=row.get("rank", i),
                    provider=self.spec.id,
                )
            )
        return items


def _dig(payload: Any, dotted: str) -> Any:
    node = payload
    for part in dotted.split("."):
        if part:
            node = node[part]
    return node


class HttpProvider:
    """Generic JSON-over-HTTP provider.

    The request carries no identifying headers, keeping results free of
    personalization. response_mapping keys: "results" (dotted path to the
    result list, empty for the payload root) and per-field source names
    for url/title/description/published/rank.
    """

    def __init__(self, spec: ProviderSpec, timeout: float = 10.0):
        self.spec = spec
        self.timeout = timeout

    def search(self, query: str, limit: int) -> list[SearchResultItem]:
        url = self.spec.location.replace("{query}", quote_plus(query))
        url = url.replace("{count}", str(limit))
        request = Request(url, headers={"User-Agent": "", "Accept": "application/json"})
        with urlopen(request, timeout=self.timeout) as response:
            payload = json.loads(response.read().decode("utf-8"))
        mapping = self.spec.response_mapping
        rows = _dig(payload, mapping.get("results", ""))
        items = []
        for i, row in enumerate(rows[:limit]):
            link = row.get(mapping.get("url", "url"))
            if not link:
                continue
            rank_field = mapping.get("rank")
            items.append(
                SearchResultItem(
                    url=link,
                    title=row.get(mapping.get("title", "title")),
                    description=row.get(mapping.get("description", "description")),
                    published=_parse_date(row.get(mapping.get("published", "published"))),
                    rank=row.get(rank_field, i) if rank_field else i,
                    provider=self.spec.id,
                )
            )
        return items


def build_provider(spec: ProviderSpec, timeout: float = 10.0):
    if spec.kind == "fixture":
        return FixtureProvider(spec)
    return HttpProvider(spec, timeout=timeout)


def federate(
    q: Query,
    providers: Sequence[ProviderSpec],
    *,
    timeout: float = 10.0,
    max_workers: int = 8,
) -> list[list[SearchResultItem]]:
    """Submit the expanded query to every provider; one result list per
    provider, in provider order. A failing provider contributes an empty
    list (with a logged warning); if every provider fails the federation
    is empty and an error is raised."""
    if not providers:
        raise ConfigurationError("no search providers configured")

    def run_one(spec: ProviderSpec) -> list[SearchResultItem]:
        return build_provider(spec, timeout=timeout).search(q.expanded, spec.max_results)

    results: list[list[SearchResultItem]] = []
    failures = 0
    with ThreadPoolExecutor(max_workers=min(max_workers, len(providers))) as pool:
        futures = [pool.submit(run_one, spec) for spec in providers]
        for spec, future in zip(providers, futures):
            try:
                results.append(future.result())
            except Exception as exc:
                log.warning("provider %s failed: %s", spec.id, exc)
                results.append([])
                failures += 1
    if failures == len(providers):
        raise EmptyFederationError("all search providers failed")
    return results


def merge_results_with_duplicates(
    results: Sequence[Sequence[SearchResultItem]], seed: int
) -> tuple[list[SearchResultItem], list[SearchResultItem]]:
    """Union of the per-provider lists with exact-URL duplicates removed
    (first occurrence kept), shuffled by a seeded PRNG. Also returns the
    dropped duplicates for reporting."""
    seen: set[str] = set()
    unique: list[SearchResultItem] = []
    dropped: list[SearchResultItem] = []
    for result_list in results:
        for item in result_list:
            key = normalize_url(item.url)
            if key in seen:
                dropped.append(item)
            else:
                seen.add(key)
                unique.append(item)
    random.Random(seed).shuffle(unique)
    return unique, dropped


def merge_results(
    results: Sequence[Sequence[SearchResultItem]], seed: int
) -> list[SearchResultItem]:
    return merge_results_with_duplicates(results, seed)[0]


def sample_web(
    m: int,
    words: Sequence[str],
    providers: Sequence[ProviderSpec],
    stop_urls: Sequence[str] = (),
    seed: int = 0,
    *,
    timeout: float = 10.0,
) -> list[str]:
    """Random web sample: m words drawn without replacement, each issued
    as a single-keyword query; the first result not matching a stop-URL
    prefix is taken per word. Returns at most m URLs."""
    if not words:
        raise ConfigurationError("word list is empty")
    if len(words) < m:
        raise ConfigurationError(f"word list has {len(words)} entries, need {m}")
    rng = random.Random(seed)
    chosen = rng.sample(list(words), m)
    urls: list[str] = []
    taken: set[str] = set()
    for word in chosen:
        try:
            per_provider = federate(Query.from_raw(word), providers, timeout=timeout)
        except EmptyFederationError:
            log.warning("no provider answered for sample word %r", word)
            continue
        for item in (it for lst in per_provider for it in lst):
            if any(item.url.startswith(prefix) for prefix in stop_urls):
                continue
            key = normalize_url(item.url)
            if key in taken:
                continue
            taken.add(key)
            urls.append(item.url)
            break
    return urls
