"""Two-tier orchestration: configuration, official/public model fits and run manifests."""

from anchortopics.pipeline.config import (
    PipelineConfig,
    RunConfig,
    SeedMode,
    SimilarityWeighting,
    load_pipeline_config,
    load_run_config,
    load_tokenizer_config,
)
from anchortopics.pipeline.manifest import build_manifest, write_manifest
from anchortopics.pipeline.two_tier import TieredResult, extract_seed_keywords, run_two_tier

__all__ = [
    "PipelineConfig",
    "RunConfig",
    "SeedMode",
    "SimilarityWeighting",
    "TieredResult",
    "build_manifest",
    "extract_seed_keywords",
    "load_pipeline_config",
    "load_run_config",
    "load_tokenizer_config",
    "run_two_tier",
    "write_manifest",
]
