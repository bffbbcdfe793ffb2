"""Pipeline configuration: defaults, key=value config files, environment
overrides.

Precedence (lowest to highest): built-in defaults, config file, WEBTOPICS_*
environment variables, explicit overrides (CLI flags).

Config file format: one `key = value` per line, '#' comments. Providers are
declared either with repeatable `provider = id, kind, location[, max]` lines
or via `providers_file = specs.json` pointing at a JSON array of full
provider specs (needed for http response mappings).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Mapping

from .errors import ConfigurationError
from .search import DEFAULT_MAX_RESULTS, ProviderSpec

ENV_PREFIX = "WEBTOPICS_"

DEFAULT_K = 9
DEFAULT_CACHE_TTL = 86400.0


@dataclass(frozen=True)
class PipelineConfig:
    providers: tuple[ProviderSpec, ...] = ()
    max_docs: int = DEFAULT_MAX_RESULTS
    k: int = DEFAULT_K
    alpha_scs: float = 0.6
    sigma: float = 0.5
    alpha_le: float = 0.4
    seed: int | None = None
    stopwords: str | None = None     # None -> bundled English list
    synonyms: str | None = None      # None -> no expansion
    stop_urls: str | None = None
    wordlist: str | None = None      # None -> bundled word list
    cache_ttl: float = DEFAULT_CACHE_TTL
    store: str | None = None         # None -> no persistence (trace/cache off)
    format: str = "text"
    trace: bool = True
    fetch_timeout: float = 10.0

    def validate(self) -> "PipelineConfig":
        if not 0.0 <= self.alpha_scs <= 1.0:
            raise ConfigurationError(f"alpha_scs must be in [0, 1], got {self.alpha_scs}")
        if not 0.0 <= self.alpha_le <= 1.0:
            raise ConfigurationError(f"alpha_le must be in [0, 1], got {self.alpha_le}")
        if not 0.0 < self.sigma < 1.0:
            raise ConfigurationError(f"sigma must be in (0, 1), got {self.sigma}")
        if self.k < 1:
            raise ConfigurationError(f"k must be >= 1, got {self.k}")
        if self.max_docs < 1:
            raise ConfigurationError(f"max_docs must be >= 1, got {self.max_docs}")
        if self.cache_ttl < 0:
            raise ConfigurationError(f"cache_ttl must be >= 0, got {self.cache_ttl}")
        if self.format not in ("text", "json"):
            raise ConfigurationError(f"format must be text or json, got {self.format!r}")
        return self


def parse_provider_line(line: str) -> ProviderSpec:
    parts = [p.strip() for p in line.split(",")]
    if len(parts) < 3:
        raise ConfigurationError(
            f"provider line {line!r} needs 'id, kind, location[, max_results]'"
        )
    max_results = DEFAULT_MAX_RESULTS
    if len(parts) >= 4 and parts[3]:
        max_results = _to_int("provider max_results", parts[3])
    return ProviderSpec(id=parts[0], kind=parts[1], location=parts[2], max_results=max_results)


def load_provider_specs(path: str | Path) -> tuple[ProviderSpec, ...]:
    try:
        rows = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read providers file {path!r}: {exc}") from exc
    specs = []
    for row in rows:
        specs.append(
            ProviderSpec(
                id=row["id"],
                kind=row["kind"],
                location=row["location"],
                max_results=row.get("max_results", DEFAULT_MAX_RESULTS),
                response_mapping=row.get("response_mapping", {}),
            )
        )
    return tuple(specs)


def _to_int(name: str, value: str) -> int:
    try:
        return int(value)
    except ValueError as exc:
        raise ConfigurationError(f"{name} must be an integer, got {value!r}") from exc


def _to_float(name: str, value: str) -> float:
    try:
        return float(value)
    except ValueError as exc:
        raise ConfigurationError(f"{name} must be a number, got {value!r}") from exc


def _to_bool(name: str, value: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigurationError(f"{name} must be a boolean, got {value!r}")


_PARSERS = {
    "max_docs": _to_int,
    "k": _to_int,
    "alpha_scs": _to_float,
    "sigma": _to_float,
    "alpha_le": _to_float,
    "seed": _to_int,
    "cache_ttl": _to_float,
    "fetch_timeout": _to_float,
    "trace": _to_bool,
}

_PATH_KEYS = ("stopwords", "synonyms", "stop_urls", "wordlist", "store")


def _read_config_file(path: str | Path) -> dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path!r}: {exc}") from exc
    values: dict[str, Any] = {}
    providers: list[ProviderSpec] = []
    for lineno, raw_line in enumerate(text.splitlines(), 1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip().lower(), value.strip()
        if key == "provider":
            providers.append(parse_provider_line(value))
        elif key == "providers_file":
            providers.extend(load_provider_specs(value))
        else:
            values[key] = value
    if providers:
        values["providers"] = tuple(providers)
    return values


def _env_values(env: Mapping[str, str]) -> dict[str, Any]:
    values: dict[str, Any] = {}
    for key, value in env.items():
        if not key.startswith(ENV_PREFIX):
            continue
        name = key[len(ENV_PREFIX):].lower()
        if name == "provider":
            values["providers"] = tuple(
                parse_provider_line(part) for part in value.split(";") if part.strip()
            )
        elif name == "providers_file":
            values["providers"] = load_provider_specs(value)
        else:
            values[name] = value
    return values


def _apply(config: PipelineConfig, values: dict[str, Any]) -> PipelineConfig:
    fields: dict[str, Any] = {}
    for key, value in values.items():
        if key == "providers":
            fields["providers"] = tuple(value)
        elif key in _PARSERS:
            fields[key] = _PARSERS[key](key, value) if isinstance(value, str) else value
        elif key in _PATH_KEYS:
            fields[key] = value or None
        elif key == "format":
            fields["format"] = value
        else:
            raise ConfigurationError(f"unknown config key {key!r}")
    return replace(config, **fields)


def load_config(
    path: str | Path | None = None,
    env: Mapping[str, str] | None = None,
    overrides: dict[str, Any] | None = None,
) -> PipelineConfig:
    """Build a validated PipelineConfig from file, environment and overrides."""
    config = PipelineConfig()
    if path is not None:
        config = _apply(config, _read_config_file(path))
    config = _apply(config, _env_values(os.environ if env is None else env))
    if overrides:
        config = replace(config, **overrides)
    return config.validate()
