"""Optional on-disk cache for coset and group tables.

Entries are ``.npz`` files named by a SHA-256 of ``(kind, matrix, T, cap)``
plus the format version.  The cache never changes results: a missing,
corrupt or stale entry is simply recomputed.
"""
from __future__ import annotations

import hashlib
import os
from pathlib import Path

import numpy as np

FORMAT_VERSION = 1
ENV_VAR = "COXALT_CACHE_DIR"


def resolve(cache_dir):
    """``cache_dir`` if given, else the environment variable, else disabled (None)."""
    if cache_dir is None:
        cache_dir = os.environ.get(ENV_VAR) or None
    if cache_dir in ("", "none", "off"):
        return None
    return Path(cache_dir) if cache_dir is not None else None


def make_key(kind: str, matrix_key: str, T, cap: int) -> str:
    text = f"v{FORMAT_VERSION}|{kind}|{matrix_key}|{','.join(map(str, T))}|{cap}"
    return hashlib.sha256(text.encode()).hexdigest()


def load(cache_dir, key: str):
    d = resolve(cache_dir)
    if d is None:
        return None
    path = d / f"{key}.npz"
    if not path.exists():
        return None
    try:
        with np.load(path) as data:
            if int(data["format_version"]) != FORMAT_VERSION:
                return None
            return {k: data[k] for k in data.files if k != "format_version"}
    except (OSError, ValueError, KeyError):
        return None


def save(cache_dir, key: str, **arrays) -> None:
    d = resolve(cache_dir)
    if d is None:
        return
    d.mkdir(parents=True, exist_ok=True)
    tmp = d / f".{key}.{os.getpid()}.tmp.npz"
    np.savez(tmp, format_version=np.array(FORMAT_VERSION), **arrays)
    os.replace(tmp, d / f"{key}.npz")
