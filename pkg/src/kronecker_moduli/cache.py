"""Persistent on-disk cache of invariant records.

One JSON file per entry, named by the SHA-256 of the key.  Writes go to a
temporary file in the same directory followed by ``os.replace``, so concurrent
writers of one key leave exactly one complete entry.  IO problems never abort
a computation: they are logged and the cache is bypassed.
"""
from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from pathlib import Path

from .reineke_engine import SCHEMA_VERSION, InvariantRecord

log = logging.getLogger(__name__)

ENV_VAR = "QUIVER_CACHE_DIR"


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "kronecker-moduli"


def resolve_cache_dir(flag: str | None) -> Path:
    """``--cache-dir`` wins, then ``QUIVER_CACHE_DIR``, then the user cache directory."""
    if flag:
        return Path(flag)
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    return default_cache_dir()


class DiskCache:
    def __init__(self, path):
        self.path = Path(path)

    def __repr__(self):
        return f"DiskCache({str(self.path)!r})"

    def file_for(self, key: str) -> Path:
        return self.path / (hashlib.sha256(key.encode("utf-8")).hexdigest() + ".json")

    def get(self, key: str) -> InvariantRecord | None:
        target = self.file_for(key)
        try:
            with open(target, encoding="utf-8") as fh:
                payload = json.load(fh)
        except FileNotFoundError:
            return None
        except (OSError, ValueError) as exc:
            log.warning("ignoring unreadable cache entry %s: %s", target, exc)
            return None
        if payload.get("schema_version") != SCHEMA_VERSION or payload.get("key") != key:
            return None
        try:
            return InvariantRecord.from_json(payload["record"])
        except (KeyError, TypeError, ValueError) as exc:
            log.warning("ignoring malformed cache entry %s: %s", target, exc)
            return None

    def put(self, key: str, record: InvariantRecord) -> None:
        target = self.file_for(key)
        if target.exists():
            return
        payload = {"key": key, "record": record.to_json(), "schema_version": SCHEMA_VERSION}
        tmp = None
        try:
            self.path.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self.path, prefix=".tmp-", suffix=".json")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, sort_keys=True)
            os.replace(tmp, target)
            tmp = None
        except OSError as exc:
            log.warning("cache write to %s failed, continuing without cache: %s", target, exc)
        finally:
            if tmp is not None:
                try:
                    os.unlink(tmp)
                except OSError:
                    pass


def cache_get(cache: DiskCache, key: str) -> InvariantRecord | None:
    return cache.get(key)


def cache_put(cache: DiskCache, key: str, record: InvariantRecord) -> None:
    cache.put(key, record)
