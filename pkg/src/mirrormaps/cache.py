"""On-disk cache of serialised series, keyed by (kind, tuple, order)."""
from __future__ import annotations

import hashlib
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

from .series import TruncatedSeries

ENV_VAR = "MIRRORMAP_CACHE"
DEFAULT_DIR = ".mirrormap-cache"


@dataclass(frozen=True)
class CacheKey:
    kind: str
    ntuple: str
    order: int

    def digest(self) -> str:
        text = f"{self.kind}|{self.ntuple}|{self.order}"
        return hashlib.sha256(text.encode("ascii")).hexdigest()


class SeriesCache:
    def __init__(self, directory: Optional[os.PathLike] = None, enabled: bool = True):
        if directory is None:
            directory = os.environ.get(ENV_VAR, DEFAULT_DIR)
        self.directory = Path(directory)
        self.enabled = enabled

    def path(self, key: CacheKey) -> Path:
        return self.directory / (key.digest() + ".series")

    def load(self, key: CacheKey) -> Optional[TruncatedSeries]:
        if not self.enabled:
            return None
        p = self.path(key)
        try:
            text = p.read_text(encoding="ascii")
        except FileNotFoundError:
            return None
        return TruncatedSeries.from_text(text)

    def store(self, key: CacheKey, series: TruncatedSeries) -> None:
        if not self.enabled:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        # write to a private temp file, then rename into place atomically
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".series")
        try:
            with os.fdopen(fd, "w", encoding="ascii") as fh:
                fh.write(series.to_text())
            os.replace(tmp, self.path(key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def get_or_compute(self, key: CacheKey, compute: Callable[[], TruncatedSeries]) -> TruncatedSeries:
        hit = self.load(key)
        if hit is not None:
            return hit
        value = compute()
        self.store(key, value)
        return value
