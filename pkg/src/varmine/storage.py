"""Deterministic file helpers: canonical JSON and atomic writes.

All on-disk formats in this package are line-oriented JSON with a header
record. Serialization goes through canonical_dumps so that identical data
always produces identical bytes, which the round-trip tests rely on.
"""

from __future__ import annotations

import json
import os
import tempfile
from typing import Any, Iterable, Iterator

from .errors import CorpusError


def canonical_dumps(obj: Any) -> str:
    """Serialize to JSON with sorted keys and no whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def atomic_write_text(path: str, text: str) -> None:
    """Write text to path via a temp file + rename so readers never see partial data."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_jsonl(path: str, header: dict, records: Iterable[dict]) -> None:
    """Write a header line followed by one canonical JSON record per line."""
    lines = [canonical_dumps(header)]
    lines.extend(canonical_dumps(rec) for rec in records)
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_jsonl(path: str) -> Iterator[tuple[int, dict]]:
    """Yield (line_number, record) pairs; line numbers are 1-based.

    Blank lines are skipped. A line that is not a JSON object raises
    CorpusError naming the offending line.
    """
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}: line {lineno}: invalid JSON ({exc.msg})") from exc
            if not isinstance(record, dict):
                raise CorpusError(f"{path}: line {lineno}: expected a JSON object")
            yield lineno, record
