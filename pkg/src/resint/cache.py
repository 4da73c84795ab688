"""On-disk caches: reduced Groebner bases and harness cell results.

Both live under one directory, ``$RESINT_CACHE_DIR`` when set and
``~/.cache/resint`` otherwise.  Entries are written atomically and never
rewritten, so concurrent writers at worst duplicate work.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Sequence

from . import __version__
from .ring import PolyRing, Polynomial

ENV_VAR = "RESINT_CACHE_DIR"


def cache_root() -> Path:
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else Path.home() / ".cache" / "resint"


def digest(payload) -> str:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def _write_atomic(path: Path, data: dict):
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    with os.fdopen(fd, "w") as fh:
        json.dump(data, fh, sort_keys=True, indent=1)
    os.replace(tmp, path)


def _read(path: Path) -> dict | None:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, ValueError):
        return None


class GBDiskCache:
    """Reduced bases keyed by ring signature, order and the generator texts."""

    def __init__(self, root: Path | str | None = None):
        self.root = Path(root) if root is not None else cache_root() / "gb"

    def key(self, ring: PolyRing, polys: Sequence[Polynomial]) -> str:
        return digest({"ring": ring.signature(), "gens": [str(f) for f in polys]})

    def get(self, ring: PolyRing, polys: Sequence[Polynomial]) -> list[Polynomial] | None:
        data = _read(self.root / f"{self.key(ring, polys)}.json")
        if data is None:
            return None
        man = data.get("manifest", {})
        if man.get("signature") != ring.signature() or man.get("version") != __version__:
            return None
        return [ring.parse(t) for t in data["basis"]]

    def put(self, ring: PolyRing, polys: Sequence[Polynomial], basis: Sequence[Polynomial]):
        manifest = {"signature": ring.signature(), "prime": ring.field.p, "version": __version__}
        _write_atomic(self.root / f"{self.key(ring, polys)}.json",
                      {"manifest": manifest, "basis": [str(f) for f in basis]})


class CellCache:
    """Harness cell results keyed by the run manifest hash and the cell key."""

    def __init__(self, manifest: dict, root: Path | str | None = None):
        base = Path(root) if root is not None else cache_root() / "cells"
        self.dir = base / digest({"manifest": manifest, "version": __version__})[:24]

    def _path(self, key: str) -> Path:
        return self.dir / f"{hashlib.sha256(key.encode()).hexdigest()[:32]}.json"

    def get(self, key: str) -> list[dict] | None:
        data = _read(self._path(key))
        if data is None or data.get("key") != key:
            return None
        return data["cells"]

    def put(self, key: str, cells: list[dict]):
        _write_atomic(self._path(key), {"key": key, "cells": cells})
