"""Key-date markers drawn on timeline figures.

File format: ``YYYY-MM-DD,label`` per line; blank lines and ``#`` comments are
ignored.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import List, Optional, Union

from anchortopics.corpus.partition import StudyWindow
from anchortopics.errors import ConfigurationError
from anchortopics.utils.paths import get_events_path

logger = logging.getLogger("events")


@dataclass(frozen=True)
class EventMarker:
    date: date
    label: str


def load_event_markers(path: Union[str, Path, None] = None, window: Optional[StudyWindow] = None) -> List[EventMarker]:
    """Read markers sorted by date; markers outside ``window`` are skipped with a warning.

    Raises:
        OSError: If the file cannot be read.
        ConfigurationError: On a malformed line.
    """
    path = Path(path) if path else get_events_path()
    markers: List[EventMarker] = []
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        day, sep, text = line.partition(",")
        try:
            marker = EventMarker(date=date.fromisoformat(day.strip()), label=text.strip())
        except ValueError as exc:
            raise ConfigurationError(f"{path}:{line_no}: invalid event date {day.strip()!r}") from exc
        if not sep or not marker.label:
            raise ConfigurationError(f"{path}:{line_no}: expected 'YYYY-MM-DD,label'")
        if window is not None and not window.start <= marker.date <= window.end:
            logger.warning("Event %s (%s) lies outside the study window; skipped", marker.label, marker.date)
            continue
        markers.append(marker)
    return sorted(markers, key=lambda marker: marker.date)
