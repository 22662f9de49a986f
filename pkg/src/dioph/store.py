"""Append-only JSONL store of verified integer identities, deduplicated by canonical form."""

from __future__ import annotations

import fcntl
import json
import os
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, Iterator, Union

from dioph.integerize import IntegerSolution, canonical_form, verify
from dioph.ratcore import format_rational

DEFAULT_STORE = "dioph_solutions.jsonl"


def default_store_path() -> Path:
    return Path(os.environ.get("DIOPH_STORE", DEFAULT_STORE))


def canonical_key(sol) -> str:
    return json.dumps(
        [[e, format_rational(v), format_rational(c)] for e, v, c in canonical_form(sol)],
        separators=(",", ":"),
    )


class SolutionStore:
    def __init__(self, path: Union[str, Path, None] = None):
        self.path = Path(path) if path is not None else default_store_path()

    @contextmanager
    def _locked(self) -> Iterator:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.path, "a+") as fh:
            fcntl.flock(fh, fcntl.LOCK_EX)
            try:
                fh.seek(0)
                yield fh
            finally:
                fcntl.flock(fh, fcntl.LOCK_UN)

    def _keys(self, fh) -> set[str]:
        keys = set()
        for line in fh:
            if line.strip():
                keys.add(canonical_key(IntegerSolution.from_json(json.loads(line))))
        return keys

    def records(self) -> list[IntegerSolution]:
        if not self.path.exists():
            return []
        with open(self.path) as fh:
            return [IntegerSolution.from_json(json.loads(line)) for line in fh if line.strip()]

    def add(self, solutions: Iterable[IntegerSolution]) -> int:
        """Append the verified, not yet stored solutions; returns how many were written."""
        written = 0
        with self._locked() as fh:
            keys = self._keys(fh)
            for sol in solutions:
                if not verify(sol):
                    continue
                key = canonical_key(sol)
                if key in keys:
                    continue
                keys.add(key)
                fh.write(json.dumps(sol.to_json(verified=True)) + "\n")
                written += 1
            fh.flush()
        return written

    def __len__(self) -> int:
        return len(self.records())
