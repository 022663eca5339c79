"""Cross-model topic similarity: per topic pair, a vectorizer fitted on the union
of the two sub-corpora and the cosine of their summed document vectors."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import numpy as np
import pandas as pd
from sklearn.feature_extraction.text import TfidfVectorizer
from sklearn.metrics.pairwise import cosine_similarity

from anchortopics.errors import InvariantViolation
from anchortopics.threading_utils.thread_manager import ThreadManager

logger = logging.getLogger("similarity")

Tokens = Sequence[str]


@dataclass
class SimilarityMatrix:
    """Rows are official topics, columns public topics."""

    values: np.ndarray
    undefined: np.ndarray

    @property
    def n_topics(self) -> int:
        return int(self.values.shape[0])

    def diagonal_dominance(self) -> float:
        """Fraction of rows whose largest entry sits on the diagonal."""
        rows = [t for t in range(self.n_topics) if not self.undefined[t, t]]
        if not rows:
            return 0.0
        hits = sum(int(np.argmax(self.values[t]) == t) for t in rows)
        return hits / len(rows)

    def to_frame(self) -> pd.DataFrame:
        topics = range(self.n_topics)
        return pd.DataFrame(
            [(t, u, float(self.values[t, u]), bool(self.undefined[t, u])) for t in topics for u in topics],
            columns=["official_topic", "public_topic", "similarity", "undefined"],
        )


def _as_tokens(doc: Tokens) -> List[str]:
    return list(doc)


def _split_by_label(docs: Sequence[Tokens], labels: Sequence[int], n_topics: int) -> List[List[Tokens]]:
    if len(docs) != len(labels):
        raise InvariantViolation(f"{len(docs)} documents but {len(labels)} labels")
    groups: List[List[Tokens]] = [[] for _ in range(n_topics)]
    for doc, topic in zip(docs, labels):
        if not 0 <= int(topic) < n_topics:
            raise InvariantViolation(f"Label {topic} outside [0, {n_topics})")
        groups[int(topic)].append(doc)
    return groups


def _has_tokens(docs: Sequence[Tokens]) -> bool:
    return any(len(doc) > 0 for doc in docs)


def subcorpus_similarity(left: Sequence[Tokens], right: Sequence[Tokens], use_idf: bool = True) -> float:
    """Cosine of the summed weighted vectors of two token-list sub-corpora, in [0, 1].

    0 when neither side holds a token.
    """
    vectorizer = TfidfVectorizer(analyzer=_as_tokens, use_idf=use_idf, smooth_idf=True, norm=None)
    try:
        weighted = vectorizer.fit_transform([*left, *right])
    except ValueError:
        return 0.0
    left_sum = np.asarray(weighted[: len(left)].sum(axis=0))
    right_sum = np.asarray(weighted[len(left) :].sum(axis=0))
    return float(np.clip(cosine_similarity(left_sum, right_sum)[0, 0], 0.0, 1.0))


def similarity_heatmap(
    official_docs: Sequence[Tokens],
    official_labels: Sequence[int],
    public_docs: Sequence[Tokens],
    public_labels: Sequence[int],
    n_topics: int,
    *,
    weighting: str = "tfidf",
    threads: int = 1,
) -> SimilarityMatrix:
    """Similarity of every (official topic, public topic) pair.

    Documents are token lists. A cell whose sub-corpus on either side holds no
    token (no document, or only empty documents) is 0 and flagged as undefined.
    """
    use_idf = str(getattr(weighting, "value", weighting)).lower() != "tf"
    official = _split_by_label(official_docs, official_labels, n_topics)
    public = _split_by_label(public_docs, public_labels, n_topics)
    official_filled = [_has_tokens(docs) for docs in official]
    public_filled = [_has_tokens(docs) for docs in public]
    cells: List[Tuple[int, int]] = [(t, u) for t in range(n_topics) for u in range(n_topics)]

    def score(cell: Tuple[int, int]) -> float:
        t, u = cell
        if not official_filled[t] or not public_filled[u]:
            return 0.0
        return subcorpus_similarity(official[t], public[u], use_idf=use_idf)

    with ThreadManager(max_workers=threads) as manager:
        scores = manager.map_ordered("similarity.cells", score, cells)
    values = np.asarray(scores, dtype=np.float64).reshape(n_topics, n_topics)
    undefined = np.array(
        [[not official_filled[t] or not public_filled[u] for u in range(n_topics)] for t in range(n_topics)],
        dtype=bool,
    )
    if undefined.any():
        logger.warning("%d heatmap cells have a sub-corpus without tokens", int(undefined.sum()))
    return SimilarityMatrix(values=values, undefined=undefined)


def write_heatmap_csv(path: Union[str, Path], matrix: SimilarityMatrix) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    matrix.to_frame().to_csv(path, index=False, lineterminator="\n", float_format="%.6f")
    logger.info("Wrote %dx%d similarity heatmap to %s", matrix.n_topics, matrix.n_topics, path)
    return path
