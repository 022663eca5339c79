"""Rank/frequency slope of per-user post counts."""

from __future__ import annotations

from typing import Sequence

import numpy as np


def power_law_slope(counts: Sequence[int], top_n: int = 50) -> float:
    """Least-squares slope of log(count) against log(rank) over the ``top_n`` users.

    Counts are ranked in descending order; zero counts are ignored.

    Raises:
        ValueError: With fewer than three positive counts.
    """
    values = np.sort(np.asarray([count for count in counts if count > 0], dtype=np.float64))[::-1][: int(top_n)]
    if values.size < 3:
        raise ValueError(f"At least 3 users with posts are needed for a slope (got {values.size})")
    ranks = np.arange(1, values.size + 1, dtype=np.float64)
    slope, _ = np.polyfit(np.log(ranks), np.log(values), 1)
    return float(slope)
