"""Content-addressed JSON result cache.

Files live under a cache directory as <sha256-of-request>.json and are
written atomically (temp file then rename), so concurrent writers of the
same key are harmless.  The cache is disabled unless a directory is
configured (WBLOCKS_CACHE environment variable or configure()); with it on
or off, computed results are byte-identical, only timing changes.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

_cache_dir: str | None = os.environ.get("WBLOCKS_CACHE") or None


def configure(directory: str | None):
    """Set (or clear) the cache directory at runtime; CLI flag wins over the
    environment variable."""
    global _cache_dir
    _cache_dir = directory


def current_dir() -> str | None:
    return _cache_dir


def _path(request) -> str:
    blob = json.dumps(request, sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(blob.encode()).hexdigest()
    return os.path.join(_cache_dir, f"{digest}.json")


def get(request):
    if _cache_dir is None:
        return None
    path = _path(request)
    try:
        with open(path) as fh:
            stored = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    if stored.get("request") != request:
        return None
    return stored.get("result")


def put(request, result):
    if _cache_dir is None:
        return
    os.makedirs(_cache_dir, exist_ok=True)
    path = _path(request)
    blob = json.dumps({"request": request, "result": result}, sort_keys=True)
    fd, tmp = tempfile.mkstemp(dir=_cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(blob)
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass
