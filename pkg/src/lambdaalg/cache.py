"""Content-addressed JSON cache for bases, matrices, and homology cells.

Keys are hashed together with the package version, so upgrading the code
invalidates old entries. Corrupt files are ignored with a warning and
recomputed. The cache directory comes from --cache-dir or the
LAMBDA_CACHE_DIR environment variable; without either, everything is
recomputed (same bytes either way, computations are deterministic).
"""

from __future__ import annotations

import hashlib
import json
import os
import sys
from pathlib import Path
from typing import Callable

from . import __version__


class DiskCache:
    def __init__(self, root: str | Path, version: str | None = None):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.version = version if version is not None else __version__

    def _path(self, key_parts: tuple) -> tuple[Path, list]:
        key = [self.version, *key_parts]
        digest = hashlib.sha256(
            json.dumps(key, sort_keys=True, separators=(",", ":")).encode()
        ).hexdigest()
        return self.root / f"{digest}.json", key

    def get_or_compute(self, key_parts: tuple, compute: Callable[[], object]):
        path, key = self._path(key_parts)
        if path.exists():
            try:
                with open(path, "r", encoding="utf-8") as fh:
                    payload = json.load(fh)
                if payload.get("key") == key:
                    return payload["value"]
                print(f"warning: cache key clash in {path}, recomputing", file=sys.stderr)
            except (json.JSONDecodeError, OSError, KeyError) as exc:
                print(f"warning: ignoring corrupt cache entry {path}: {exc}", file=sys.stderr)
        value = compute()
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump({"key": key, "value": value}, fh, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, path)
        return value


def cache_from_env(cache_dir: str | None = None) -> DiskCache | None:
    """DiskCache for the given directory, LAMBDA_CACHE_DIR, or None if unset."""
    root = cache_dir or os.environ.get("LAMBDA_CACHE_DIR")
    return DiskCache(root) if root else None
