"""Weekly topic volume series."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from datetime import date, timedelta, timezone
from enum import Enum
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import pandas as pd

from anchortopics.corpus.partition import StudyWindow
from anchortopics.corpus.records import Microblog
from anchortopics.corpus.stats import week_start
from anchortopics.errors import InvariantViolation

logger = logging.getLogger("timelines")

TIMELINE_COLUMNS = ["topic", "source", "week", "count", "normalized"]


class Source(str, Enum):
    OFFICIAL = "official"
    PUBLIC = "public"


@dataclass
class TimelineSeries:
    topic: int
    source: Source
    buckets: List[Tuple[date, int]]
    normalized: Optional[List[float]] = None

    @property
    def weeks(self) -> List[date]:
        return [week for week, _ in self.buckets]

    @property
    def counts(self) -> List[int]:
        return [count for _, count in self.buckets]

    def peak(self) -> Tuple[date, int]:
        """Week with the largest count, earliest on ties."""
        return max(self.buckets, key=lambda bucket: (bucket[1], -bucket[0].toordinal()))


def window_weeks(window: StudyWindow) -> List[date]:
    """Monday of every week overlapping the window, in order."""
    first, last = week_start(window.start), week_start(window.end)
    return [first + timedelta(days=7 * i) for i in range((last - first).days // 7 + 1)]


def _weekly_frame(docs: Sequence[Microblog], labels: Sequence[int]) -> pd.DataFrame:
    if len(docs) != len(labels):
        raise InvariantViolation(f"{len(docs)} documents but {len(labels)} labels")
    return pd.DataFrame(
        {
            "week": [week_start(doc.timestamp.astimezone(timezone.utc).date()) for doc in docs],
            "label": [int(value) for value in labels],
        }
    )


def _series_from_frame(
    frame: pd.DataFrame, topic: int, source: Source, weeks: List[date], normalize: bool
) -> TimelineSeries:
    counts = frame.loc[frame["label"] == topic].groupby("week").size().reindex(weeks, fill_value=0)
    buckets = [(week, int(count)) for week, count in counts.items()]
    normalized = None
    if normalize:
        totals = frame.groupby("week").size().reindex(weeks, fill_value=0)
        normalized = [float(count) / float(total) if total else 0.0 for count, total in zip(counts, totals)]
    return TimelineSeries(topic=int(topic), source=Source(source), buckets=buckets, normalized=normalized)


def topic_timeline(
    docs: Sequence[Microblog],
    labels: Sequence[int],
    topic: int,
    source: Union[Source, str],
    window: StudyWindow = StudyWindow(),
    normalize: bool = False,
) -> TimelineSeries:
    """Count posts labelled ``topic`` per Monday-start week across the whole window.

    Weeks without posts appear with a zero count. With ``normalize`` each week
    also carries the topic share of that week's labelled posts.

    Raises:
        InvariantViolation: If docs and labels are not aligned.
    """
    frame = _weekly_frame(docs, labels)
    return _series_from_frame(frame, int(topic), Source(source), window_weeks(window), normalize)


def topic_timelines(
    docs: Sequence[Microblog],
    labels: Sequence[int],
    n_topics: int,
    source: Union[Source, str],
    window: StudyWindow = StudyWindow(),
) -> List[TimelineSeries]:
    """Normalized series for every topic of one source."""
    frame = _weekly_frame(docs, labels)
    weeks = window_weeks(window)
    return [_series_from_frame(frame, topic, Source(source), weeks, True) for topic in range(int(n_topics))]


def timelines_frame(series: Sequence[TimelineSeries]) -> pd.DataFrame:
    """Long format table: one row per (topic, source, week)."""
    rows = []
    for item in series:
        shares = item.normalized if item.normalized is not None else [None] * len(item.buckets)
        for (week, count), share in zip(item.buckets, shares):
            rows.append((item.topic, item.source.value, week.isoformat(), count, share))
    return pd.DataFrame(rows, columns=TIMELINE_COLUMNS)


def write_timelines_csv(path: Union[str, Path], series: Sequence[TimelineSeries]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    timelines_frame(series).to_csv(path, index=False, lineterminator="\n", float_format="%.6f")
    logger.info("Wrote %d timeline series to %s", len(series), path)
    return path
