"""Pipeline and run configuration parsed from settings.txt sections."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

from anchortopics.corpus.partition import DEFAULT_WINDOW_END, DEFAULT_WINDOW_START, AccountList, StudyWindow
from anchortopics.corpus.records import RECORD_FORMATS
from anchortopics.errors import ConfigurationError
from anchortopics.model.seeds import DEFAULT_ANCHOR_STRENGTH
from anchortopics.text.tokenizer import TokenizerConfig, load_stopwords
from anchortopics.utils.paths import get_accounts_path, get_events_path, get_repo_root, get_seeds_path
from anchortopics.utils.settings_loader import as_bool, get_value, section


class SeedMode(str, Enum):
    EXTRACTED_ONLY = "extracted_only"
    EXTRACTED_PLUS_CURATED = "extracted_plus_curated"

    @classmethod
    def from_value(cls, value: object) -> "SeedMode":
        raw = str(value or "").strip().lower()
        if not raw:
            return cls.EXTRACTED_ONLY
        for item in cls:
            if item.value == raw:
                return item
        raise ConfigurationError(
            f"Unsupported seed mode: {value}. Allowed values: 'extracted_only', 'extracted_plus_curated'."
        )


class SimilarityWeighting(str, Enum):
    TFIDF = "tfidf"
    TF = "tf"

    @classmethod
    def from_value(cls, value: object) -> "SimilarityWeighting":
        raw = str(value or "").strip().lower()
        if not raw:
            return cls.TFIDF
        for item in cls:
            if item.value == raw:
                return item
        raise ConfigurationError(f"Unsupported similarity weighting: {value}. Allowed values: 'tfidf', 'tf'.")


@dataclass
class PipelineConfig:
    seeds_path: Path = field(default_factory=get_seeds_path)
    n_topics: int = 20
    n_iter: int = 100
    top_k: int = 10
    seed_mode: SeedMode = SeedMode.EXTRACTED_ONLY
    rng_seed: int = 42
    anchor_strength: float = DEFAULT_ANCHOR_STRENGTH
    tokenizer: TokenizerConfig = field(default_factory=TokenizerConfig)
    window: StudyWindow = field(default_factory=StudyWindow)
    accounts_path: Path = field(default_factory=get_accounts_path)
    officials: Optional[AccountList] = None
    official_min_df: int = 1
    public_min_df: int = 3
    max_vocab: int = 20_000
    threads: int = 1

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        """Raises ConfigurationError on out-of-range values."""
        if int(self.top_k) < 1:
            raise ConfigurationError(f"TOP_K must be >= 1 (got {self.top_k})")
        if int(self.n_topics) < 1:
            raise ConfigurationError(f"N_TOPICS must be >= 1 (got {self.n_topics})")
        if int(self.n_iter) < 1:
            raise ConfigurationError(f"N_ITER must be >= 1 (got {self.n_iter})")
        if float(self.anchor_strength) < 1.0:
            raise ConfigurationError(f"ANCHOR_STRENGTH must be >= 1 (got {self.anchor_strength})")
        if min(int(self.official_min_df), int(self.public_min_df), int(self.max_vocab)) < 1:
            raise ConfigurationError("Vocabulary MIN_DF and MAX_VOCAB values must be >= 1")
        if int(self.threads) < 1:
            raise ConfigurationError(f"THREADS must be >= 1 (got {self.threads})")

    def load_officials(self) -> AccountList:
        if self.officials is None:
            self.officials = AccountList.from_file(self.accounts_path)
        return self.officials

    def to_dict(self) -> Dict[str, Any]:
        return {
            "seeds_path": str(self.seeds_path),
            "n_topics": int(self.n_topics),
            "n_iter": int(self.n_iter),
            "top_k": int(self.top_k),
            "seed_mode": self.seed_mode.value,
            "rng_seed": int(self.rng_seed),
            "anchor_strength": float(self.anchor_strength),
            "tokenizer": {
                "lowercase": self.tokenizer.lowercase,
                "strip_urls": self.tokenizer.strip_urls,
                "strip_mentions": self.tokenizer.strip_mentions,
                "keep_hashtag_text": self.tokenizer.keep_hashtag_text,
                "min_token_len": int(self.tokenizer.min_token_len),
                "stopwords": len(self.tokenizer.stopwords),
            },
            "window": [self.window.start.isoformat(), self.window.end.isoformat()],
            "accounts_path": str(self.accounts_path),
            "official_min_df": int(self.official_min_df),
            "public_min_df": int(self.public_min_df),
            "max_vocab": int(self.max_vocab),
            "threads": int(self.threads),
        }


@dataclass
class RunConfig:
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    input_path: Optional[Path] = None
    input_format: str = "jsonl"
    output_dir: Path = Path("output")
    events_path: Path = field(default_factory=get_events_path)
    top_users: int = 50
    similarity_weighting: SimilarityWeighting = SimilarityWeighting.TFIDF
    emit_csv: bool = True
    emit_svg: bool = True
    emit_manifest: bool = True

    def __post_init__(self) -> None:
        if self.input_format not in RECORD_FORMATS:
            raise ConfigurationError(f"Unsupported input FORMAT: {self.input_format}. Allowed values: {RECORD_FORMATS}.")
        if int(self.top_users) < 1:
            raise ConfigurationError(f"TOP_USERS must be >= 1 (got {self.top_users})")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pipeline": self.pipeline.to_dict(),
            "input_path": str(self.input_path) if self.input_path else None,
            "input_format": self.input_format,
            "output_dir": str(self.output_dir),
            "events_path": str(self.events_path),
            "top_users": int(self.top_users),
            "similarity_weighting": self.similarity_weighting.value,
            "emit_csv": self.emit_csv,
            "emit_svg": self.emit_svg,
            "emit_manifest": self.emit_manifest,
        }


def _resolve_path(value: Any, default: Path) -> Path:
    """Blank values fall back to ``default``; relative paths hang off the repository root."""
    if value is None or not str(value).strip():
        return default
    path = Path(str(value).strip()).expanduser()
    return path if path.is_absolute() else get_repo_root() / path


def _as_date(value: Any, default: date, key: str) -> date:
    if value is None or not str(value).strip():
        return default
    try:
        return date.fromisoformat(str(value).strip())
    except ValueError as exc:
        raise ConfigurationError(f"Invalid {key}: {value} (expected YYYY-MM-DD)") from exc


def _as_int(value: Any, key: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"Invalid {key}: {value} (expected an integer)") from exc


def _as_float(value: Any, key: str) -> float:
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"Invalid {key}: {value} (expected a number)") from exc


def load_tokenizer_config(settings: Dict[str, Dict[str, Any]]) -> TokenizerConfig:
    values = section(settings, "TOKENIZER")
    stopwords_value = get_value(values, "stopwords_path", None)
    kwargs: Dict[str, Any] = {}
    if stopwords_value is not None:
        stopwords_path = _resolve_path(stopwords_value, Path())
        if not stopwords_path.exists():
            raise ConfigurationError(f"Stopword file not found: {stopwords_path}")
        kwargs["stopwords"] = load_stopwords(stopwords_path)
    return TokenizerConfig(
        lowercase=as_bool(get_value(values, "lowercase", True), True),
        strip_urls=as_bool(get_value(values, "strip_urls", True), True),
        strip_mentions=as_bool(get_value(values, "strip_mentions", True), True),
        keep_hashtag_text=as_bool(get_value(values, "keep_hashtag_text", True), True),
        min_token_len=_as_int(get_value(values, "min_token_len", 2), "MIN_TOKEN_LEN"),
        **kwargs,
    )


def load_pipeline_config(settings: Dict[str, Dict[str, Any]]) -> PipelineConfig:
    """Build the pipeline configuration; missing keys take their defaults.

    Raises:
        ConfigurationError: On malformed or out-of-range values.
    """
    corpus = section(settings, "CORPUS")
    vocabulary = section(settings, "VOCABULARY")
    model = section(settings, "MODEL")
    performance = section(settings, "PERFORMANCE")
    return PipelineConfig(
        seeds_path=_resolve_path(get_value(model, "seeds_path", None), get_seeds_path()),
        n_topics=_as_int(get_value(model, "n_topics", 20), "N_TOPICS"),
        n_iter=_as_int(get_value(model, "n_iter", 100), "N_ITER"),
        top_k=_as_int(get_value(model, "top_k", 10), "TOP_K"),
        seed_mode=SeedMode.from_value(get_value(model, "seed_mode", SeedMode.EXTRACTED_ONLY.value)),
        rng_seed=_as_int(get_value(model, "rng_seed", 42), "RNG_SEED"),
        anchor_strength=_as_float(get_value(model, "anchor_strength", DEFAULT_ANCHOR_STRENGTH), "ANCHOR_STRENGTH"),
        tokenizer=load_tokenizer_config(settings),
        window=StudyWindow(
            start=_as_date(get_value(corpus, "window_start", None), DEFAULT_WINDOW_START, "WINDOW_START"),
            end=_as_date(get_value(corpus, "window_end", None), DEFAULT_WINDOW_END, "WINDOW_END"),
        ),
        accounts_path=_resolve_path(get_value(corpus, "accounts_path", None), get_accounts_path()),
        official_min_df=_as_int(get_value(vocabulary, "official_min_df", 1), "OFFICIAL_MIN_DF"),
        public_min_df=_as_int(get_value(vocabulary, "public_min_df", 3), "PUBLIC_MIN_DF"),
        max_vocab=_as_int(get_value(vocabulary, "max_vocab", 20_000), "MAX_VOCAB"),
        threads=_as_int(get_value(performance, "threads", 1), "THREADS"),
    )


def load_run_config(settings: Dict[str, Dict[str, Any]], output_dir: Optional[Path] = None) -> RunConfig:
    corpus = section(settings, "CORPUS")
    analytics = section(settings, "ANALYTICS")
    output = section(settings, "OUTPUT")
    return RunConfig(
        pipeline=load_pipeline_config(settings),
        input_format=str(get_value(corpus, "format", "jsonl")).strip().lower(),
        output_dir=Path(output_dir) if output_dir else Path("output"),
        events_path=_resolve_path(get_value(analytics, "events_path", None), get_events_path()),
        top_users=_as_int(get_value(analytics, "top_users", 50), "TOP_USERS"),
        similarity_weighting=SimilarityWeighting.from_value(get_value(analytics, "similarity_weighting", "tfidf")),
        emit_csv=as_bool(get_value(output, "emit_csv", True), True),
        emit_svg=as_bool(get_value(output, "emit_svg", True), True),
        emit_manifest=as_bool(get_value(output, "emit_manifest", True), True),
    )
