"""Page retrieval with optional caching.

Supports http(s) URLs, file:// URLs and plain file paths (the fixture
path used in tests). HTTP requests carry no identifying headers. The
fetch counter reflects real retrievals only, so cache behaviour is
observable.
"""

from __future__ import annotations

import threading
from pathlib import Path
from urllib.parse import urlsplit
from urllib.request import Request, url2pathname, urlopen

from .storage import PageCache


class PageFetcher:
    def __init__(self, cache: PageCache | None = None, timeout: float = 10.0):
        self.cache = cache
        self.timeout = timeout
        self.fetch_count = 0
        self._lock = threading.Lock()

    def fetch(self, url: str) -> str:
        if self.cache is not None:
            cached = self.cache.get(url)
            if cached is not None:
                return cached
        body = self._fetch_raw(url)
        with self._lock:
            self.fetch_count += 1
        if self.cache is not None:
            self.cache.put(url, body)
        return body

    def _fetch_raw(self, url: str) -> str:
        scheme = urlsplit(url).scheme
        if scheme in ("http", "https"):
            request = Request(url, headers={"User-Agent": ""})
            with urlopen(request, timeout=self.timeout) as response:
                charset = response.headers.get_content_charset() or "utf-8"
                return response.read().decode(charset, errors="replace")
        if scheme == "file":
            path = url2pathname(urlsplit(url).path)
            return Path(path).read_text(encoding="utf-8", errors="replace")
        return Path(url).read_text(encoding="utf-8", errors="replace")
