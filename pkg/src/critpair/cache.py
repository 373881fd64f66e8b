"""Content-addressed result cache with a single-writer directory lock."""

from __future__ import annotations

import contextlib
import fcntl
import hashlib
import json
import os
import tempfile
import time
from dataclasses import dataclass
from importlib import metadata
from pathlib import Path
from typing import Callable, Optional

from .errors import CacheMismatch

LOCK_NAME = ".lock"


def tool_version() -> str:
    try:
        return metadata.version("critpair")
    except metadata.PackageNotFoundError:
        return "0+unknown"


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def cache_key(operation: str, inputs: dict, version: Optional[str] = None) -> str:
    payload = canonical({"version": version or tool_version(), "operation": operation,
                         "inputs": inputs})
    return hashlib.sha256(payload.encode()).hexdigest()


@dataclass(frozen=True)
class CacheEntry:
    key: str
    operation: str
    value: dict
    timestamp: float


class ResultCache:
    def __init__(self, directory):
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    @contextlib.contextmanager
    def _locked(self):
        with open(self.directory / LOCK_NAME, "a") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                yield
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    def get(self, operation: str, inputs: dict) -> Optional[CacheEntry]:
        key = cache_key(operation, inputs)
        try:
            raw = json.loads(self._path(key).read_text())
        except (FileNotFoundError, json.JSONDecodeError):
            return None
        if raw.get("key") != key:
            return None
        return CacheEntry(key, raw["operation"], raw["value"], raw["timestamp"])

    def put(self, operation: str, inputs: dict, value: dict) -> CacheEntry:
        key = cache_key(operation, inputs)
        entry = CacheEntry(key, operation, value, time.time())
        body = json.dumps({"key": key, "operation": operation, "inputs": inputs,
                           "value": value, "timestamp": entry.timestamp}, sort_keys=True)
        with self._locked():
            fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
            with os.fdopen(fd, "w") as fh:
                fh.write(body)
            os.replace(tmp, self._path(key))
        return entry


def cached(cache: Optional[ResultCache], operation: str, inputs: dict,
           compute: Callable[[], dict], verify: bool = False,
           strip: Callable[[dict], dict] = lambda d: d) -> tuple[dict, bool]:
    """Return ``(value, hit)``; with ``verify`` a hit is recomputed and compared via ``strip``."""
    if cache is None:
        return compute(), False
    entry = cache.get(operation, inputs)
    if entry is None:
        value = compute()
        cache.put(operation, inputs, value)
        return value, False
    if verify:
        fresh = compute()
        if canonical(strip(fresh)) != canonical(strip(entry.value)):
            raise CacheMismatch(f"cached {operation} result {entry.key[:12]} differs from recomputation")
    return entry.value, True
