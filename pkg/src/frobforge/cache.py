"""Content-addressed result cache: insert-only memory dict, optional disk mirror.

Keys are sha256 hashes of a canonical JSON payload describing the input and
operation; values are JSON-serializable (polynomial strings, rank lists).
Disk entries echo their payload so corrupt or colliding files are detected,
warned about, and recomputed rather than trusted.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

log = logging.getLogger("frobforge.cache")


class ResultCache:
    def __init__(self):
        self._mem = {}
        self.directory = None
        self.hits = 0
        self.misses = 0
        self.stores = 0

    def configure(self, directory):
        """Point the cache at a directory (created if missing); None disables disk."""
        if directory is None:
            self.directory = None
            return
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def reset_stats(self):
        self.hits = 0
        self.misses = 0
        self.stores = 0

    def clear_memory(self):
        self._mem.clear()

    @staticmethod
    def digest(payload) -> str:
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()

    def get(self, payload):
        key = self.digest(payload)
        if key in self._mem:
            self.hits += 1
            return self._mem[key]
        if self.directory is not None:
            path = self.directory / f"{key}.json"
            if path.exists():
                try:
                    with open(path, "r", encoding="utf-8") as fh:
                        entry = json.load(fh)
                    if entry.get("payload") != payload:
                        raise ValueError("payload mismatch")
                    value = entry["value"]
                except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
                    log.warning("discarding corrupt cache entry %s: %s", path.name, exc)
                else:
                    self._mem[key] = value
                    self.hits += 1
                    return value
        self.misses += 1
        return None

    def put(self, payload, value):
        key = self.digest(payload)
        self._mem[key] = value
        self.stores += 1
        if self.directory is not None:
            path = self.directory / f"{key}.json"
            try:
                fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    json.dump({"payload": payload, "value": value}, fh, sort_keys=True)
                os.replace(tmp, path)
            except OSError as exc:
                log.warning("could not persist cache entry %s: %s", path.name, exc)


CACHE = ResultCache()
