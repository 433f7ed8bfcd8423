"""Optional live ConceptNet client with a write-through fixture cache.

Disabled by default; everything else in the package runs against local
fixtures. When enabled, responses are converted to the fixture edge format
and cached to disk so subsequent runs are offline and reproducible.
Requests are serialized with a minimum spacing per host.
"""

from __future__ import annotations

import json
import time
from pathlib import Path
from typing import Any, Callable

import requests

from ..errors import InvalidInputError

DEFAULT_BASE_URL = "https://api.conceptnet.io"
MIN_REQUEST_INTERVAL = 0.5  # seconds between requests to the same host


def _edge_source(edge: dict) -> str:
    blob = json.dumps(edge.get("sources", [])) + str(edge.get("dataset", ""))
    return "wordnet" if "wordnet" in blob.lower() else "crowd"


def parse_usedfor_response(label: str, payload: dict) -> list[dict]:
    """Convert a ConceptNet /query response into fixture-format edges."""
    edges = []
    for edge in payload.get("edges", []):
        rel = edge.get("rel", {}).get("label")
        if rel != "UsedFor":
            continue
        end = edge.get("end", {}).get("label")
        weight = edge.get("weight")
        if end is None or weight is None:
            continue
        start = str(edge.get("start", {}).get("label", label)).lower()
        edges.append(
            {
                "start": start,
                "relation": "UsedFor",
                "end": str(end),
                "weight": float(weight),
                "source": _edge_source(edge),
            }
        )
    return edges


class ConceptNetClient:
    """Fetches UsedFor edges and caches them as fixture files."""

    def __init__(
        self,
        cache_dir: str | Path,
        base_url: str = DEFAULT_BASE_URL,
        session: requests.Session | None = None,
        sleep: Callable[[float], None] = time.sleep,
        clock: Callable[[], float] = time.monotonic,
    ) -> None:
        self.cache_dir = Path(cache_dir)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self.base_url = base_url.rstrip("/")
        self.session = session or requests.Session()
        self._sleep = sleep
        self._clock = clock
        self._last_request: float | None = None

    def _cache_path(self, label: str) -> Path:
        safe = "".join(c if c.isalnum() or c in "-_" else "_" for c in label)
        return self.cache_dir / f"conceptnet_{safe}.json"

    def _throttle(self) -> None:
        if self._last_request is not None:
            wait = MIN_REQUEST_INTERVAL - (self._clock() - self._last_request)
            if wait > 0:
                self._sleep(wait)
        self._last_request = self._clock()

    def fetch_usedfor(self, label: str, refresh: bool = False) -> dict:
        """Return a fixture document for the label, from cache when present."""
        label = label.strip().lower()
        if not label:
            raise InvalidInputError("label must be non-empty")
        cache = self._cache_path(label)
        if cache.exists() and not refresh:
            return json.loads(cache.read_text(encoding="utf-8"))
        self._throttle()
        url = f"{self.base_url}/query"
        response = self.session.get(
            url, params={"start": f"/c/en/{label.replace(' ', '_')}", "rel": "/r/UsedFor", "limit": 100}, timeout=30
        )
        response.raise_for_status()
        doc: dict[str, Any] = {
            "wordnet": {},
            "conceptnet_edges": parse_usedfor_response(label, response.json()),
        }
        cache.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        return doc
