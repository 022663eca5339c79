"""Two-tier topic modelling: curated seeds shape the official model, whose
top words then anchor the public model topic by topic."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

from anchortopics.corpus.partition import CorpusPartition
from anchortopics.corpus.records import Microblog
from anchortopics.errors import ConfigurationError
from anchortopics.model.corex import CorexModel, fit, label, top_words
from anchortopics.model.seeds import SeedSet, load_seed_set, merge_seed_sets
from anchortopics.pipeline.config import PipelineConfig, SeedMode
from anchortopics.text.doc_term import DocTermMatrix, vectorize
from anchortopics.text.tokenizer import TokenizerConfig, tokenize_all
from anchortopics.text.vocabulary import build_vocabulary

logger = logging.getLogger("TwoTierPipeline")


@dataclass
class PreparedCorpus:
    tokens: List[List[str]]
    matrix: DocTermMatrix


@dataclass
class TieredResult:
    official_model: CorexModel
    public_model: CorexModel
    official_labels: List[int]
    public_labels: List[int]
    extracted_seeds: SeedSet
    public_seeds: SeedSet
    official: PreparedCorpus
    public: PreparedCorpus


def prepare_corpus(
    records: Sequence[Microblog],
    tokenizer: TokenizerConfig,
    min_df: int,
    max_vocab: int,
    force_include: Sequence[str] = (),
) -> PreparedCorpus:
    """Tokenize, build a vocabulary that keeps ``force_include`` and vectorize.

    ``force_include`` words also bypass the stopword and length filters.
    """
    tokens = tokenize_all((record.text for record in records), tokenizer, keep=force_include)
    vocabulary = build_vocabulary(tokens, min_df=min_df, max_vocab=max_vocab, force_include=force_include)
    matrix = vectorize(tokens, vocabulary, doc_ids=[record.id for record in records])
    return PreparedCorpus(tokens=tokens, matrix=matrix)


def extract_seed_keywords(model: CorexModel, top_k: int, anchor_strength: Optional[float] = None) -> SeedSet:
    """Group ``g`` holds ``top_words(model, g, top_k)`` verbatim."""
    groups = tuple(tuple(top_words(model, topic, top_k)) for topic in range(model.n_topics))
    strength = model.seeds.anchor_strength if anchor_strength is None else anchor_strength
    return SeedSet(groups=groups, anchor_strength=strength)


def tier_two_seeds(extracted: SeedSet, curated: SeedSet, mode: SeedMode) -> SeedSet:
    if mode == SeedMode.EXTRACTED_PLUS_CURATED:
        return merge_seed_sets(extracted, curated, anchor_strength=extracted.anchor_strength)
    return extracted


def run_two_tier(
    corpus: CorpusPartition,
    cfg: PipelineConfig,
    curated: Optional[SeedSet] = None,
) -> TieredResult:
    """Fit the official model, extract its keywords and fit the public model on them.

    Topic ``g`` of the public model is anchored on the keywords of topic ``g``
    of the official model, so indices correspond across tiers.

    Args:
        corpus: Partitioned posts; both sub-corpora must be non-empty.
        cfg: Pipeline configuration.
        curated: Curated seed groups; loaded from ``cfg.seeds_path`` when omitted.

    Raises:
        ConfigurationError: On an empty sub-corpus or seed problems.
    """
    if not corpus.official or not corpus.public:
        raise ConfigurationError(
            f"Two-tier modelling needs official and public posts (got {len(corpus.official)} and {len(corpus.public)})"
        )
    if curated is None:
        curated = load_seed_set(cfg.seeds_path, anchor_strength=cfg.anchor_strength)
    if len(curated) > cfg.n_topics:
        raise ConfigurationError(f"{len(curated)} seed groups exceed N_TOPICS={cfg.n_topics}")

    logger.info("Tier one: %d official posts, %d curated seed groups", len(corpus.official), len(curated))
    official = prepare_corpus(
        corpus.official, cfg.tokenizer, cfg.official_min_df, cfg.max_vocab, force_include=curated.words
    )
    official_model = fit(
        official.matrix, curated, n_topics=cfg.n_topics, n_iter=cfg.n_iter, rng_seed=cfg.rng_seed, threads=cfg.threads
    )
    extracted = extract_seed_keywords(official_model, cfg.top_k, anchor_strength=cfg.anchor_strength)
    for topic, group in enumerate(extracted.groups):
        if not group:
            logger.warning("Official topic %d yielded no keyword; public topic %d stays unanchored", topic, topic)

    public_seeds = tier_two_seeds(extracted, curated, cfg.seed_mode)
    logger.info("Tier two: %d public posts, seed mode %s", len(corpus.public), cfg.seed_mode.value)
    public = prepare_corpus(
        corpus.public, cfg.tokenizer, cfg.public_min_df, cfg.max_vocab, force_include=public_seeds.words
    )
    public_model = fit(
        public.matrix, public_seeds, n_topics=cfg.n_topics, n_iter=cfg.n_iter, rng_seed=cfg.rng_seed, threads=cfg.threads
    )

    return TieredResult(
        official_model=official_model,
        public_model=public_model,
        official_labels=label(official_model, official.matrix, threads=cfg.threads),
        public_labels=label(public_model, public.matrix, threads=cfg.threads),
        extracted_seeds=extracted,
        public_seeds=public_seeds,
        official=official,
        public=public,
    )
