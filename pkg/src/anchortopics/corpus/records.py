"""Microblog records and their JSONL/CSV readers.

Field names follow common scraper exports: ``id``, ``date``, ``username``,
``tweet`` and ``mentions``. An optional ``time`` column is appended to ``date``
when the export splits them.
"""

from __future__ import annotations

import ast
import json
import logging
import re
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Iterator, List, Tuple, Union

import pandas as pd

logger = logging.getLogger("records")

RECORD_FORMATS = ("jsonl", "csv")
_MENTION_SPLIT_RE = re.compile(r"[\s,;]+")


@dataclass(frozen=True)
class Microblog:
    id: str
    timestamp: datetime
    author: str
    text: str
    mentions: Tuple[str, ...] = field(default_factory=tuple)


@dataclass
class ParseResult:
    """Records read from one file plus the number of skipped rows."""

    records: List[Microblog]
    skipped: int = 0

    def __iter__(self) -> Iterator[Microblog]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)


class MalformedRecord(ValueError):
    """Raised internally for a row that cannot become a Microblog."""


def strip_handle(value: Any) -> str:
    return str(value or "").strip().lstrip("@").strip()


def parse_timestamp(value: Any) -> datetime:
    """Parse a scraper timestamp into an aware UTC datetime.

    Naive timestamps are taken as UTC.

    Raises:
        MalformedRecord: If the value is empty or not an ISO-like timestamp.
    """
    text = str(value or "").strip()
    if not text:
        raise MalformedRecord("empty timestamp")
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    try:
        parsed = datetime.fromisoformat(text)
    except ValueError as exc:
        raise MalformedRecord(f"unparseable timestamp {value!r}") from exc
    if parsed.tzinfo is None:
        return parsed.replace(tzinfo=timezone.utc)
    return parsed.astimezone(timezone.utc)


def _parse_mentions(value: Any) -> Tuple[str, ...]:
    if value is None:
        return ()
    if isinstance(value, str):
        text = value.strip()
        if not text:
            return ()
        if text.startswith("["):
            try:
                value = ast.literal_eval(text)
            except (ValueError, SyntaxError):
                value = text.strip("[]").replace("'", " ").replace('"', " ")
        if isinstance(value, str):
            value = [part for part in _MENTION_SPLIT_RE.split(value) if part]
    handles: list[str] = []
    for item in value:
        if isinstance(item, dict):
            item = item.get("screen_name", item.get("username", ""))
        handle = strip_handle(item)
        if handle:
            handles.append(handle)
    return tuple(handles)


def record_from_fields(fields: dict) -> Microblog:
    """Build a Microblog from a scraper row.

    Raises:
        MalformedRecord: If id, author, text or timestamp are unusable.
    """
    raw_id = fields.get("id")
    record_id = "" if raw_id is None else str(raw_id).strip()
    if not record_id:
        raise MalformedRecord("missing id")
    date_text = str(fields.get("date") or "").strip()
    time_text = str(fields.get("time") or "").strip()
    if time_text and len(date_text) <= 10:
        date_text = f"{date_text} {time_text}"
    timestamp = parse_timestamp(date_text)
    author = strip_handle(fields.get("username"))
    if not author:
        raise MalformedRecord("missing username")
    text = str(fields.get("tweet") or "")
    if not text.strip():
        raise MalformedRecord("empty text")
    return Microblog(
        id=record_id,
        timestamp=timestamp,
        author=author,
        text=text,
        mentions=_parse_mentions(fields.get("mentions")),
    )


def _jsonl_rows(path: Path) -> Iterator[Tuple[int, Any]]:
    with path.open("r", encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                yield line_no, json.loads(line)
            except json.JSONDecodeError as exc:
                yield line_no, MalformedRecord(f"invalid JSON: {exc.msg}")


def _csv_rows(path: Path) -> Iterator[Tuple[int, Any]]:
    if path.stat().st_size == 0:
        return
    frame = pd.read_csv(path, dtype=str, keep_default_na=False, encoding="utf-8")
    for offset, row in enumerate(frame.to_dict(orient="records")):
        yield offset + 2, row


def parse_records(path: Union[str, Path], fmt: str = "jsonl") -> ParseResult:
    """Read all well-formed microblogs from a JSONL or CSV file, in file order.

    Args:
        path: Input file (UTF-8).
        fmt: ``"jsonl"`` or ``"csv"``.

    Returns:
        A ParseResult with the records and the count of skipped rows.

    Raises:
        OSError: If the file cannot be read.
        ValueError: If ``fmt`` is not a supported format.
    """
    path = Path(path)
    normalized = str(fmt or "jsonl").strip().lower()
    if normalized not in RECORD_FORMATS:
        raise ValueError(f"Unsupported record format {fmt!r}; expected one of {RECORD_FORMATS}")
    rows = _jsonl_rows(path) if normalized == "jsonl" else _csv_rows(path)

    records: list[Microblog] = []
    skipped = 0
    for line_no, row in rows:
        try:
            if isinstance(row, MalformedRecord):
                raise row
            if not isinstance(row, dict):
                raise MalformedRecord("row is not an object")
            records.append(record_from_fields(row))
        except MalformedRecord as exc:
            skipped += 1
            logger.warning("%s:%d skipped: %s", path.name, line_no, exc)
    logger.info("Parsed %d records from %s (%d skipped)", len(records), path, skipped)
    return ParseResult(records=records, skipped=skipped)


def write_records(path: Union[str, Path], records: Iterable[Microblog]) -> Path:
    """Write microblogs as JSONL using the reader's field names."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        for record in records:
            payload = {
                "id": record.id,
                "date": record.timestamp.astimezone(timezone.utc).strftime("%Y-%m-%d %H:%M:%S"),
                "username": record.author,
                "tweet": record.text,
                "mentions": list(record.mentions),
            }
            handle.write(json.dumps(payload, ensure_ascii=False, sort_keys=True) + "\n")
    return path
