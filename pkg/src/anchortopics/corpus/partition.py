"""Split microblogs into the official and public sub-corpora."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from pathlib import Path
from typing import FrozenSet, Iterable, List, Union

from anchortopics.corpus.records import Microblog, strip_handle
from anchortopics.errors import ConfigurationError
from anchortopics.utils.paths import get_accounts_path

logger = logging.getLogger("partition")

DEFAULT_WINDOW_START = date(2020, 3, 1)
DEFAULT_WINDOW_END = date(2020, 5, 17)


@dataclass(frozen=True)
class AccountList:
    """Case-insensitive set of tracked official handles (stored case-folded, no "@")."""

    handles: FrozenSet[str]

    def __post_init__(self) -> None:
        if not self.handles:
            raise ConfigurationError("Account list is empty")

    @classmethod
    def from_handles(cls, handles: Iterable[str]) -> "AccountList":
        folded = {strip_handle(handle).casefold() for handle in handles}
        folded.discard("")
        return cls(frozenset(folded))

    @classmethod
    def from_file(cls, path: Union[str, Path, None] = None) -> "AccountList":
        """Load one handle per line; blank lines and ``#`` comments are ignored.

        Raises:
            OSError: If the file cannot be read.
            ConfigurationError: If the file lists no handle.
        """
        path = Path(path) if path else get_accounts_path()
        lines = path.read_text(encoding="utf-8").splitlines()
        handles = [line.split("#", 1)[0].strip() for line in lines]
        return cls.from_handles(handle for handle in handles if handle)

    def __contains__(self, handle: object) -> bool:
        return strip_handle(handle).casefold() in self.handles

    def __len__(self) -> int:
        return len(self.handles)

    def referenced_in(self, mentions: Iterable[str], text: str) -> bool:
        """Return True when a mention or a literal ``@handle`` in the text is tracked."""
        if any(mention in self for mention in mentions):
            return True
        folded = text.casefold()
        return any(f"@{handle}" in folded for handle in self.handles)


@dataclass(frozen=True)
class StudyWindow:
    """Inclusive UTC date range."""

    start: date = DEFAULT_WINDOW_START
    end: date = DEFAULT_WINDOW_END

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ConfigurationError(f"Study window start {self.start} is after end {self.end}")

    def contains(self, timestamp: datetime) -> bool:
        day = timestamp.astimezone(timezone.utc).date() if timestamp.tzinfo else timestamp.date()
        return self.start <= day <= self.end


@dataclass
class CorpusPartition:
    official: List[Microblog] = field(default_factory=list)
    public: List[Microblog] = field(default_factory=list)
    dropped: int = 0
    out_of_window: int = 0

    def counts(self) -> dict:
        return {
            "official": len(self.official),
            "public": len(self.public),
            "dropped": int(self.dropped),
            "out_of_window": int(self.out_of_window),
        }


def partition(records: Iterable[Microblog], officials: AccountList, window: StudyWindow) -> CorpusPartition:
    """Assign each in-window post to the official or public sub-corpus.

    Posts outside the window and posts that neither come from nor reference a
    tracked account are counted in ``dropped`` (``out_of_window`` keeps the
    window share of it).
    """
    result = CorpusPartition()
    for record in records:
        if not window.contains(record.timestamp):
            result.dropped += 1
            result.out_of_window += 1
        elif record.author in officials:
            result.official.append(record)
        elif officials.referenced_in(record.mentions, record.text):
            result.public.append(record)
        else:
            result.dropped += 1
    if not result.official and not result.public:
        logger.warning("Partition produced no official and no public posts")
    logger.info(
        "Partition: official=%d public=%d dropped=%d (out of window=%d)",
        len(result.official),
        len(result.public),
        result.dropped,
        result.out_of_window,
    )
    return result
