"""Optional on-disk matrix cache keyed by content hashes.

Enabled only when HOPFCORAD_CACHE_DIR names an existing directory.  Entries
are written to a temp file and renamed into place, so concurrent writers of
the same key are harmless.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .exactla import FieldSpec, Matrix

ENV_VAR = "HOPFCORAD_CACHE_DIR"


def digest(*parts) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(repr(p).encode())
        h.update(b"\0")
    return h.hexdigest()


def matrix_digest(m: Matrix) -> str:
    return digest(m.rows, m.cols, str(m.field), sorted((i, j, m.field.format(x)) for (i, j), x in m.entries().items()))


class MatrixCache:
    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    @classmethod
    def from_env(cls) -> "MatrixCache | None":
        d = os.environ.get(ENV_VAR)
        if d and Path(d).is_dir():
            return cls(d)
        return None

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def get(self, key: str, field: FieldSpec) -> Matrix | None:
        path = self._path(key)
        try:
            data = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if data.get("field") != str(field):
            return None
        entries = {(i, j): field.parse(x) for i, j, x in data["entries"]}
        return Matrix.from_entries(data["rows"], data["cols"], field, entries)

    def put(self, key: str, m: Matrix) -> None:
        payload = {
            "rows": m.rows, "cols": m.cols, "field": str(m.field),
            "entries": sorted([i, j, m.field.format(x)] for (i, j), x in m.entries().items()),
        }
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(payload, fh)
            os.replace(tmp, self._path(key))
        except OSError:
            try:
                os.unlink(tmp)
            except OSError:
                pass
