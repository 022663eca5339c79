"""Mutual information of binary variable pairs from 2x2 soft-count tables."""

from __future__ import annotations

import numpy as np
from scipy.stats import chi2


def mutual_information(joint) -> float:
    """Mutual information in nats of a 2x2 (soft) count table.

    ``0 * log 0`` is taken as 0; the table is normalized first.

    Raises:
        ValueError: On a wrong shape, negative counts or an all-zero table.
    """
    table = np.asarray(joint, dtype=np.float64)
    if table.shape != (2, 2):
        raise ValueError(f"Expected a 2x2 table, got shape {table.shape}")
    if np.any(table < 0):
        raise ValueError("Counts must be non-negative")
    total = table.sum()
    if total <= 0:
        raise ValueError("Mutual information of an all-zero table is undefined")
    p = table / total
    outer = np.outer(p.sum(axis=1), p.sum(axis=0))
    mask = p > 0
    return float(max(0.0, np.sum(p[mask] * np.log(p[mask] / outer[mask]))))


def mutual_information_tables(tables: np.ndarray) -> np.ndarray:
    """Vectorized mutual information over the two trailing 2x2 axes.

    Tables must be strictly positive (smoothed counts).
    """
    tables = np.asarray(tables, dtype=np.float64)
    total = tables.sum(axis=(-2, -1), keepdims=True)
    p = tables / total
    row = p.sum(axis=-1, keepdims=True)
    col = p.sum(axis=-2, keepdims=True)
    mi = np.sum(p * (np.log(p) - np.log(row) - np.log(col)), axis=(-2, -1))
    return np.maximum(mi, 0.0)


def independence_threshold(n_samples: int, p_value: float = 1e-3) -> float:
    """Mutual information (nats) a 2x2 table of ``n_samples`` exceeds by chance with probability ``p_value``.

    Under independence ``2 * n * I`` follows a chi-square law with one degree
    of freedom.

    Raises:
        ValueError: On a non-positive sample count or a p-value outside (0, 1).
    """
    if int(n_samples) < 1:
        raise ValueError(f"n_samples must be >= 1 (got {n_samples})")
    if not 0.0 < float(p_value) < 1.0:
        raise ValueError(f"p_value must lie in (0, 1) (got {p_value})")
    return float(chi2.isf(float(p_value), df=1)) / (2.0 * int(n_samples))
