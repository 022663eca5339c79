"""Exploratory corpus statistics: volume, users, weekly posts, post lengths."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from datetime import date, timedelta, timezone
from typing import Dict, Iterable, List, Tuple

import pandas as pd

from anchortopics.corpus.records import Microblog


def week_start(day: date) -> date:
    """Return the Monday opening the ISO week of ``day``."""
    return day - timedelta(days=day.weekday())


def word_count(text: str) -> int:
    return len(text.split())


@dataclass
class CorpusStats:
    total_posts: int = 0
    unique_users: int = 0
    top_users: List[Tuple[str, int]] = field(default_factory=list)
    weekly_counts: List[Tuple[date, int]] = field(default_factory=list)
    word_histogram: Dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "total_posts": self.total_posts,
            "unique_users": self.unique_users,
            "top_users": [[handle, count] for handle, count in self.top_users],
            "weekly_counts": [[week.isoformat(), count] for week, count in self.weekly_counts],
            "word_histogram": {str(length): count for length, count in self.word_histogram.items()},
        }


def user_counts(records: Iterable[Microblog]) -> List[Tuple[str, int]]:
    """Return (handle, posts) sorted by count descending, ties by handle."""
    counter = Counter(record.author for record in records)
    return sorted(counter.items(), key=lambda item: (-item[1], item[0]))


def corpus_stats(records: Iterable[Microblog], top_n: int = 50) -> CorpusStats:
    """Compute totals, top-N posters, Monday-start weekly counts and the words-per-post histogram."""
    record_list = list(records)
    if not record_list:
        return CorpusStats()

    frame = pd.DataFrame(
        {
            "author": [record.author for record in record_list],
            "day": [record.timestamp.astimezone(timezone.utc).date() for record in record_list],
            "words": [word_count(record.text) for record in record_list],
        }
    )
    frame["week"] = frame["day"].map(week_start)
    weekly = frame.groupby("week").size().sort_index()
    histogram = frame.groupby("words").size().sort_index()
    ranked = user_counts(record_list)
    return CorpusStats(
        total_posts=len(record_list),
        unique_users=int(frame["author"].nunique()),
        top_users=ranked[: max(0, int(top_n))],
        weekly_counts=[(week, int(count)) for week, count in weekly.items()],
        word_histogram={int(length): int(count) for length, count in histogram.items()},
    )
