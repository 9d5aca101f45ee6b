"""Persistent completion cache: append-only JSONL with an in-memory index."""

from __future__ import annotations

import hashlib
import json
import threading
import warnings
from pathlib import Path

from .types import Completion, GenerationParams

SCHEMA_VERSION = 1


def cache_key(model_name: str, prompt: str, params: GenerationParams) -> str:
    """Digest of everything that determines a completion."""
    payload = json.dumps(
        {
            "model": model_name,
            "prompt": prompt,
            "temperature": params.temperature,
            "max_tokens": params.max_tokens,
        },
        sort_keys=True,
        ensure_ascii=False,
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


class ResponseCache:
    """Crash-safe completion store.

    Lines are appended and never rewritten; corrupt lines (e.g. from a crash
    mid-write) are skipped with a warning on load.  Writes are serialized
    through one lock, and a key is only ever stored once, so retries cannot
    create duplicates.
    """

    def __init__(self, path):
        self._path = Path(path)
        self._lock = threading.Lock()
        self._index: dict[str, Completion] = {}
        if self._path.exists():
            self._load()

    def _load(self) -> None:
        skipped = 0
        with self._path.open("r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                try:
                    obj = json.loads(line)
                    self._index[obj["key"]] = Completion.from_json(obj["completion"])
                except (json.JSONDecodeError, KeyError, TypeError):
                    skipped += 1
        if skipped:
            warnings.warn(
                f"skipped {skipped} corrupt line(s) in cache {self._path}",
                stacklevel=2,
            )

    def __len__(self) -> int:
        return len(self._index)

    def get(self, key: str) -> Completion | None:
        stored = self._index.get(key)
        if stored is None:
            return None
        return Completion(
            text=stored.text,
            prompt_tokens=stored.prompt_tokens,
            output_tokens=stored.output_tokens,
            latency_ms=0,
            source="cache",
            truncated=stored.truncated,
        )

    def put(self, key: str, completion: Completion) -> None:
        with self._lock:
            if key in self._index:
                return
            self._index[key] = completion
            record = {
                "schema_version": SCHEMA_VERSION,
                "key": key,
                "completion": completion.to_json(),
            }
            self._path.parent.mkdir(parents=True, exist_ok=True)
            with self._path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")
