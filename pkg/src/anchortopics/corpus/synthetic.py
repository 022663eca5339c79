"""Planted-topic microblog corpora with known document topics."""

from __future__ import annotations

import string
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from typing import List

import numpy as np

from anchortopics.corpus.records import Microblog


@dataclass
class PlantedCorpus:
    records: List[Microblog]
    topics: List[int]
    vocabularies: List[List[str]]
    noise_words: List[str]

    def anchors(self, per_topic: int = 1) -> List[List[str]]:
        """First ``per_topic`` planted words of each topic, usable as seed groups."""
        return [list(words[:per_topic]) for words in self.vocabularies]


def planted_corpus(
    n_docs: int = 1000,
    n_topics: int = 5,
    words_per_topic: int = 20,
    n_noise: int = 50,
    *,
    min_words: int = 8,
    max_words: int = 15,
    max_noise: int = 3,
    decay: float = 1.0,
    rng_seed: int = 0,
    start: datetime = datetime(2020, 3, 2, 9, 0, tzinfo=timezone.utc),
    span_days: int = 77,
    author_prefix: str = "user",
) -> PlantedCorpus:
    """Generate documents that each draw words from exactly one planted topic.

    Topic ``k`` owns the words ``<letter><i>`` (``a1``, ``a2``, ... for topic 0)
    and word ``i`` is drawn with weight ``decay**i``; the default ``decay=1``
    samples a topic's words uniformly, smaller values skew frequencies towards
    the first words.
    Documents also take 0..``max_noise`` shared noise words.
    """
    if n_topics > len(string.ascii_lowercase):
        raise ValueError("planted_corpus supports at most 26 topics")
    rng = np.random.default_rng(rng_seed)
    vocabularies = [
        [f"{string.ascii_lowercase[k]}{i + 1}" for i in range(words_per_topic)] for k in range(n_topics)
    ]
    noise_words = [f"noise{i + 1}" for i in range(n_noise)]
    weights = decay ** np.arange(words_per_topic, dtype=np.float64)
    weights /= weights.sum()
    upper = min(max_words, words_per_topic)
    lower = min(min_words, upper)

    records: list[Microblog] = []
    topics: list[int] = []
    for doc in range(n_docs):
        topic = int(rng.integers(n_topics))
        size = int(rng.integers(lower, upper + 1))
        picked = rng.choice(words_per_topic, size=size, replace=False, p=weights)
        words = [vocabularies[topic][int(i)] for i in picked]
        if noise_words and max_noise > 0:
            n_extra = int(rng.integers(0, min(max_noise, len(noise_words)) + 1))
            words += [noise_words[int(i)] for i in rng.choice(len(noise_words), size=n_extra, replace=False)]
        timestamp = start + timedelta(days=int(rng.integers(span_days)), minutes=doc % 1440)
        records.append(
            Microblog(
                id=f"p{doc:06d}",
                timestamp=timestamp,
                author=f"{author_prefix}{int(rng.integers(50))}",
                text=" ".join(words),
                mentions=(),
            )
        )
        topics.append(topic)
    return PlantedCorpus(records=records, topics=topics, vocabularies=vocabularies, noise_words=noise_words)
