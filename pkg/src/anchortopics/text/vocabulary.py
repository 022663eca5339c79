"""Capped, deterministic vocabularies with document frequencies."""

from __future__ import annotations

import hashlib
import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, Sequence, Tuple, Union

from anchortopics.errors import ConfigurationError

logger = logging.getLogger("vocabulary")


def vocabulary_fingerprint(words: Sequence[str]) -> str:
    """SHA-256 over the ordered word list; binds models and matrices to one vocabulary."""
    digest = hashlib.sha256()
    for word in words:
        digest.update(word.encode("utf-8"))
        digest.update(b"\n")
    return digest.hexdigest()


@dataclass(frozen=True)
class Vocabulary:
    words: Tuple[str, ...]
    doc_freq: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(set(self.words)) != len(self.words):
            raise ConfigurationError("Vocabulary words must be unique")
        object.__setattr__(self, "index", {word: i for i, word in enumerate(self.words)})

    def __len__(self) -> int:
        return len(self.words)

    def __contains__(self, word: object) -> bool:
        return word in self.index

    @property
    def fingerprint(self) -> str:
        return vocabulary_fingerprint(self.words)


def document_frequencies(docs: Iterable[Sequence[str]]) -> Counter:
    counts: Counter = Counter()
    for doc in docs:
        counts.update(set(doc))
    return counts


def build_vocabulary(
    docs: Iterable[Sequence[str]],
    min_df: int = 1,
    max_vocab: int = 20_000,
    force_include: Iterable[str] = (),
) -> Vocabulary:
    """Keep words with ``doc_freq >= min_df``, capped to the ``max_vocab`` most frequent.

    Words are indexed by descending document frequency, ties broken
    lexicographically. ``force_include`` words (seed words) are always kept,
    even below ``min_df``, beyond the cap, or absent from every document.

    Raises:
        ConfigurationError: On invalid bounds or when no word survives.
    """
    if int(min_df) < 1 or int(max_vocab) < 1:
        raise ConfigurationError(f"min_df and max_vocab must be >= 1 (got {min_df}, {max_vocab})")
    counts = document_frequencies(docs)

    def order(word: str) -> tuple:
        return (-counts.get(word, 0), word)

    kept = sorted((word for word, df in counts.items() if df >= min_df), key=order)[: int(max_vocab)]
    kept_set = set(kept)
    forced = [word for word in dict.fromkeys(force_include) if word and word not in kept_set]
    if forced:
        logger.info("Force-including %d seed words in the vocabulary", len(forced))
    words = tuple(sorted(set(kept) | set(forced), key=order))
    if not words:
        raise ConfigurationError("Vocabulary is empty; lower min_df or check the corpus")
    return Vocabulary(words=words, doc_freq={word: int(counts.get(word, 0)) for word in words})


def save_vocabulary(path: Union[str, Path], vocabulary: Vocabulary) -> Path:
    """Write ``word<TAB>doc_freq`` lines in index order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{word}\t{vocabulary.doc_freq.get(word, 0)}" for word in vocabulary.words]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def load_vocabulary(path: Union[str, Path]) -> Vocabulary:
    words: list[str] = []
    doc_freq: dict[str, int] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line:
            continue
        word, _, df = line.partition("\t")
        words.append(word)
        doc_freq[word] = int(df or 0)
    return Vocabulary(words=tuple(words), doc_freq=doc_freq)
