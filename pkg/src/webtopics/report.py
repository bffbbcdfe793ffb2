"""Run reports: the data model of one discovery run and its renderings.

The text format follows the transcript style of the original tool (provider
counts, a numbered URL legend over an upper-triangular similarity table with
above-threshold cells starred, selected/filtered sections). The JSON format
is a stable, versioned schema that round-trips through from_dict.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .analytics import RankedRecommendation
from .errors import ConfigurationError

SCHEMA_VERSION = 1

# Filter reasons are a closed vocabulary; "similar-to:<url>" carries its peer.
REASON_DUPLICATE_URL = "duplicate-URL"
REASON_NON_ENGLISH = "non-English"
REASON_EMPTY_EXTRACTION = "empty-extraction"
REASON_PREVIOUSLY_SEEN = "previously-seen"
REASON_FETCH_ERROR = "fetch-error"


def similar_to(url: str) -> str:
    return f"similar-to:{url}"


@dataclass(frozen=True)
class FilteredItem:
    url: str
    reason: str


@dataclass(frozen=True)
class RunReport:
    query_raw: str
    query_expanded: str
    query_terms: tuple[str, ...]
    provider_counts: tuple[tuple[str, int], ...]
    merged_count: int
    similarity_urls: tuple[str, ...]
    similarity_matrix: tuple[tuple[float, ...], ...]
    corpus_sizes: tuple[int, ...]
    selected: tuple[RankedRecommendation, ...]
    filtered: tuple[FilteredItem, ...]
    parameters: dict[str, Any] = field(default_factory=dict)
    timings: dict[str, float] = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "query": {
                "raw": self.query_raw,
                "expanded": self.query_expanded,
                "terms": list(self.query_terms),
            },
            "provider_counts": [
                {"provider": name, "count": count}
                for name, count in self.provider_counts
            ],
            "merged_count": self.merged_count,
            "similarity": {
                "urls": list(self.similarity_urls),
                "matrix": [list(row) for row in self.similarity_matrix],
            },
            "corpus_sizes": list(self.corpus_sizes),
            "selected": [
                {
                    "position": r.position,
                    "url": r.url,
                    "lexical_entropy": r.lexical_entropy,
                    "lexical_diversity": r.lexical_diversity,
                    "relative_entropy": r.relative_entropy,
                }
                for r in self.selected
            ],
            "filtered": [
                {"url": f.url, "reason": f.reason} for f in self.filtered
            ],
            "parameters": dict(self.parameters),
            "timings": dict(self.timings),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "RunReport":
        return cls(
            query_raw=data["query"]["raw"],
            query_expanded=data["query"]["expanded"],
            query_terms=tuple(data["query"]["terms"]),
            provider_counts=tuple(
                (row["provider"], row["count"]) for row in data["provider_counts"]
            ),
            merged_count=data["merged_count"],
            similarity_urls=tuple(data["similarity"]["urls"]),
            similarity_matrix=tuple(
                tuple(row) for row in data["similarity"]["matrix"]
            ),
            corpus_sizes=tuple(data["corpus_sizes"]),
            selected=tuple(
                RankedRecommendation(
                    url=row["url"],
                    lexical_entropy=row["lexical_entropy"],
                    lexical_diversity=row["lexical_diversity"],
                    relative_entropy=row["relative_entropy"],
                    position=row["position"],
                )
                for row in data["selected"]
            ),
            filtered=tuple(
                FilteredItem(url=row["url"], reason=row["reason"])
                for row in data["filtered"]
            ),
            parameters=dict(data.get("parameters", {})),
            timings=dict(data.get("timings", {})),
            schema_version=data["schema_version"],
        )


def _render_similarity_table(report: RunReport, sigma: float) -> list[str]:
    lines = ["----- SPATIAL COSINE SIMILARITY TABLE -----", ""]
    for i, url in enumerate(report.similarity_urls, 1):
        lines.append(f"{i} - {url}")
    lines.append("")
    for i, row in enumerate(report.similarity_matrix):
        cells = []
        for j, value in enumerate(row):
            if j < i:
                cells.append("0.00")
            else:
                mark = "*" if value > sigma else ""
                cells.append(f"{mark}{value:.2f}")
        lines.append(f"{i + 1} -\t" + "\t".join(cells))
    return lines


def render_text(report: RunReport) -> str:
    sigma = float(report.parameters.get("sigma", 0.5))
    lines: list[str] = []
    for name, count in report.provider_counts:
        lines.append(f"Querying: {name}")
        lines.append(f"Retrieved {count} documents.")
        lines.append("")
    lines.append(f'Querying phase for "{report.query_raw}" completed.')
    lines.append("")
    lines.append(
        f"Search subsystem retrieved a total of {report.merged_count} documents."
    )
    lines.append("")
    if report.similarity_urls:
        lines.extend(_render_similarity_table(report, sigma))
        lines.append("")
    for size in report.corpus_sizes:
        lines.append(f"Calculating Document Similarities on {size} documents")
    lines.append(
        f"The corpus size after filtering is of {len(report.selected)} documents."
    )
    lines.append("")
    lines.append("----- Selected Documents -----")
    for rec in report.selected:
        lines.append(f"{rec.position} - {rec.url} (LE={rec.lexical_entropy:.4f})")
    lines.append("")
    lines.append("----- Filtered Documents -----")
    for item in report.filtered:
        lines.append(f"{item.url} ({item.reason})")
    lines.append("")
    return "\n".join(lines)


def emit_report(report: RunReport, fmt: str = "text") -> bytes:
    """Serialize a report; "text" mirrors the run transcript, "json" is the
    stable schema (deterministic byte stream for identical reports)."""
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, ensure_ascii=False).encode("utf-8")
    if fmt == "text":
        return render_text(report).encode("utf-8")
    raise ConfigurationError(f"unknown report format {fmt!r}")
