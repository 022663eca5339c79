"""Microblog tokenizer.

Transforms run in a fixed order: URL strip, mention strip, hashtag unwrap,
lowercase, split on non-alphanumeric characters (apostrophes kept inside
words), minimum length filter, stopword filter. Words listed in ``keep`` (the
seed words of a run) pass both filters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Collection, FrozenSet, Iterable, List, Union

from sklearn.feature_extraction.text import ENGLISH_STOP_WORDS

from anchortopics.errors import ConfigurationError

_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_MENTION_RE = re.compile(r"@\w+")
_HASHTAG_RE = re.compile(r"#(\w+)")
_TOKEN_RE = re.compile(r"[^\W_]+(?:'[^\W_]+)*")


@dataclass(frozen=True)
class TokenizerConfig:
    lowercase: bool = True
    strip_urls: bool = True
    strip_mentions: bool = True
    keep_hashtag_text: bool = True
    min_token_len: int = 2
    stopwords: FrozenSet[str] = field(default=frozenset(ENGLISH_STOP_WORDS))

    def __post_init__(self) -> None:
        if int(self.min_token_len) < 1:
            raise ConfigurationError("min_token_len must be >= 1")


def load_stopwords(path: Union[str, Path]) -> FrozenSet[str]:
    """Read one stopword per line (``#`` starts a comment)."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        word = line.split("#", 1)[0].strip().lower()
        if word:
            words.add(word)
    return frozenset(words)


def tokenize(text: str, cfg: TokenizerConfig = TokenizerConfig(), keep: Collection[str] = frozenset()) -> List[str]:
    """Split a post into tokens according to ``cfg``; tokens in ``keep`` are never filtered."""
    if not text:
        return []
    if cfg.strip_urls:
        text = _URL_RE.sub(" ", text)
    if cfg.strip_mentions:
        text = _MENTION_RE.sub(" ", text)
    text = _HASHTAG_RE.sub(r"\1" if cfg.keep_hashtag_text else " ", text)
    if cfg.lowercase:
        text = text.lower()
    text = text.replace("’", "'")
    tokens = []
    for token in _TOKEN_RE.findall(text):
        if token.lower() not in keep and (len(token) < cfg.min_token_len or token.lower() in cfg.stopwords):
            continue
        tokens.append(token)
    return tokens


def tokenize_all(
    texts: Iterable[str], cfg: TokenizerConfig = TokenizerConfig(), keep: Iterable[str] = ()
) -> List[List[str]]:
    kept = frozenset(word.lower() for word in keep)
    return [tokenize(text, cfg, kept) for text in texts]
