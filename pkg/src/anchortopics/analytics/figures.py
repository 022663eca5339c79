"""Standalone SVG figures rendered with matplotlib's non-interactive Figure API.

Text stays text and the SVG id salt is fixed, so the same data always yields
the same file.
"""

from __future__ import annotations

import logging
from datetime import date
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

import matplotlib
from matplotlib.figure import Figure

from anchortopics.analytics.events import EventMarker
from anchortopics.analytics.similarity import SimilarityMatrix
from anchortopics.analytics.timelines import TimelineSeries

logger = logging.getLogger("figures")

matplotlib.rcParams["svg.hashsalt"] = "anchortopics"
matplotlib.rcParams["svg.fonttype"] = "none"


def _save(fig: Figure, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    logger.debug("Saved figure %s", path)
    return path


def plot_timelines(
    series: Sequence[TimelineSeries],
    events: Sequence[EventMarker],
    path: Union[str, Path],
    title: str = "Topic timeline",
    normalized: bool = False,
) -> Path:
    """Line chart of weekly volumes with a vertical rule per event."""
    fig = Figure(figsize=(10, 5))
    ax = fig.add_subplot()
    for item in series:
        values = item.normalized if normalized and item.normalized is not None else item.counts
        ax.plot(item.weeks, values, marker="o", linewidth=1.5, label=f"{item.source.value} topic {item.topic}")
    for event in events:
        ax.axvline(event.date, color="grey", linestyle="--", linewidth=1)
        ax.annotate(
            event.label,
            xy=(event.date, 1.0),
            xycoords=("data", "axes fraction"),
            rotation=90,
            va="top",
            ha="right",
            fontsize=7,
            color="dimgrey",
        )
    ax.set_title(title)
    ax.set_xlabel("Week")
    ax.set_ylabel("Share of posts" if normalized else "Posts")
    ax.grid(True, alpha=0.3)
    if series:
        ax.legend(loc="upper left", fontsize=8)
    fig.autofmt_xdate()
    return _save(fig, path)


def plot_heatmap(matrix: SimilarityMatrix, path: Union[str, Path], title: str = "Topic similarity") -> Path:
    """Colored grid, official topics on rows and public topics on columns."""
    size = max(4.0, 0.4 * matrix.n_topics + 2.0)
    fig = Figure(figsize=(size + 1.0, size))
    ax = fig.add_subplot()
    image = ax.imshow(matrix.values, cmap="viridis", vmin=0.0, vmax=1.0)
    ticks = list(range(matrix.n_topics))
    ax.set_xticks(ticks)
    ax.set_yticks(ticks)
    ax.set_xlabel("Public topic")
    ax.set_ylabel("Official topic")
    ax.set_title(title)
    fig.colorbar(image, ax=ax, label="Cosine similarity")
    return _save(fig, path)


def plot_top_users(counts: Sequence[Tuple[str, int]], path: Union[str, Path], top_n: int = 50) -> Path:
    top = list(counts)[:top_n]
    fig = Figure(figsize=(12, 5))
    ax = fig.add_subplot()
    ax.bar(range(len(top)), [count for _, count in top], color="steelblue")
    ax.set_xticks(range(len(top)))
    ax.set_xticklabels([handle for handle, _ in top], rotation=90, fontsize=6)
    ax.set_ylabel("Posts")
    ax.set_title(f"Top {len(top)} users")
    return _save(fig, path)


def plot_weekly_posts(weekly: Sequence[Tuple[date, int]], path: Union[str, Path]) -> Path:
    fig = Figure(figsize=(10, 4))
    ax = fig.add_subplot()
    ax.plot([week for week, _ in weekly], [count for _, count in weekly], marker="o")
    ax.set_xlabel("Week")
    ax.set_ylabel("Posts")
    ax.set_title("Posts per week")
    ax.grid(True, alpha=0.3)
    fig.autofmt_xdate()
    return _save(fig, path)


def plot_word_histogram(histogram: Dict[int, int], path: Union[str, Path]) -> Path:
    lengths: List[int] = sorted(histogram)
    fig = Figure(figsize=(8, 4))
    ax = fig.add_subplot()
    ax.bar(lengths, [histogram[length] for length in lengths], color="darkorange")
    ax.set_xlabel("Words per post")
    ax.set_ylabel("Posts")
    ax.set_title("Post length distribution")
    return _save(fig, path)
