"""Subcommands. Each takes the parsed arguments plus the loaded settings and
returns an exit code; failures propagate as exceptions mapped in ``main``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from anchortopics.analytics.events import load_event_markers
from anchortopics.analytics.figures import (
    plot_heatmap,
    plot_timelines,
    plot_top_users,
    plot_weekly_posts,
    plot_word_histogram,
)
from anchortopics.analytics.power_law import power_law_slope
from anchortopics.analytics.similarity import similarity_heatmap, write_heatmap_csv
from anchortopics.analytics.timelines import Source, topic_timelines, write_timelines_csv
from anchortopics.corpus.partition import CorpusPartition, partition
from anchortopics.corpus.records import Microblog, parse_records, write_records
from anchortopics.corpus.stats import corpus_stats, user_counts
from anchortopics.errors import ConfigurationError, InvariantViolation
from anchortopics.model.corex import label, top_words
from anchortopics.model.model_io import load_model, save_model
from anchortopics.model.seeds import load_seed_set, save_seed_set
from anchortopics.pipeline.config import RunConfig, SeedMode, load_run_config
from anchortopics.pipeline.manifest import build_manifest, write_manifest
from anchortopics.pipeline.two_tier import run_two_tier
from anchortopics.text.doc_term import save_matrix, vectorize
from anchortopics.text.tokenizer import tokenize_all
from anchortopics.text.vocabulary import Vocabulary, save_vocabulary
from anchortopics.utils.settings_loader import Settings

logger = logging.getLogger("cli")

OFFICIAL_RECORDS = "official.jsonl"
PUBLIC_RECORDS = "public.jsonl"
STATS_FILE = "stats.json"
MANIFEST_FILE = "manifest.json"


def build_run_config(args: argparse.Namespace, settings: Settings) -> RunConfig:
    """Settings file values overridden by command-line flags."""
    cfg = load_run_config(settings, output_dir=getattr(args, "out", None))
    pipeline = cfg.pipeline
    overrides: Dict[str, Any] = {}
    for flag, key in (
        ("topics", "n_topics"),
        ("iters", "n_iter"),
        ("top_k", "top_k"),
        ("rng_seed", "rng_seed"),
        ("anchor_strength", "anchor_strength"),
        ("threads", "threads"),
    ):
        value = getattr(args, flag, None)
        if value is not None:
            overrides[key] = value
    if getattr(args, "seeds", None):
        overrides["seeds_path"] = Path(args.seeds)
    if getattr(args, "accounts", None):
        overrides["accounts_path"] = Path(args.accounts)
    if getattr(args, "seed_mode", None):
        overrides["seed_mode"] = SeedMode.from_value(args.seed_mode)
    if overrides:
        pipeline = replace(pipeline, **overrides)
    run_overrides: Dict[str, Any] = {"pipeline": pipeline}
    if getattr(args, "format", None):
        run_overrides["input_format"] = args.format
    if getattr(args, "events", None):
        run_overrides["events_path"] = Path(args.events)
    if getattr(args, "no_svg", False):
        run_overrides["emit_svg"] = False
    if getattr(args, "no_csv", False):
        run_overrides["emit_csv"] = False
    return replace(cfg, **run_overrides)


def write_labels(path: Path, doc_ids: Sequence[str], labels: Sequence[int], empty: Sequence[bool]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = pd.DataFrame({"id": list(doc_ids), "topic": list(labels), "empty": [bool(flag) for flag in empty]})
    frame.to_csv(path, index=False, lineterminator="\n")
    return path


def read_labels(path: Path) -> pd.DataFrame:
    frame = pd.read_csv(path, dtype={"id": str}, keep_default_na=False)
    if "topic" not in frame.columns:
        raise ConfigurationError(f"Label file {path} has no 'topic' column")
    return frame


def _aligned_labels(records: Sequence[Microblog], labels_path: Path) -> List[int]:
    frame = read_labels(labels_path)
    if len(frame) != len(records):
        raise InvariantViolation(f"{labels_path} holds {len(frame)} labels for {len(records)} posts")
    if list(frame["id"]) != [record.id for record in records]:
        raise InvariantViolation(f"{labels_path} is not aligned with its posts")
    return [int(topic) for topic in frame["topic"]]


def _stats_payload(records: Sequence[Microblog], top_users: int) -> Dict[str, Any]:
    payload = corpus_stats(records, top_n=top_users).to_dict()
    counts = [count for _, count in user_counts(records)]
    try:
        payload["power_law_slope"] = power_law_slope(counts, top_n=top_users)
    except ValueError:
        payload["power_law_slope"] = None
    return payload


def _write_json(path: Path, payload: Any) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8", newline="\n")
    return path


def _exploratory_figures(records: Sequence[Microblog], out_dir: Path, prefix: str, top_users: int) -> List[Path]:
    stats = corpus_stats(records, top_n=top_users)
    return [
        plot_top_users(stats.top_users, out_dir / f"{prefix}_top_users.svg", top_n=top_users),
        plot_weekly_posts(stats.weekly_counts, out_dir / f"{prefix}_weekly_posts.svg"),
        plot_word_histogram(stats.word_histogram, out_dir / f"{prefix}_post_lengths.svg"),
    ]


def cmd_ingest(args: argparse.Namespace, settings: Settings) -> int:
    """Partition a raw scrape into official and public posts and report statistics."""
    cfg = build_run_config(args, settings)
    out_dir = cfg.output_dir
    parsed = parse_records(args.input, cfg.input_format)
    if not parsed.records:
        logger.warning("No usable post in %s", args.input)
    split = partition(parsed.records, cfg.pipeline.load_officials(), cfg.pipeline.window)
    outputs = [
        write_records(out_dir / OFFICIAL_RECORDS, split.official),
        write_records(out_dir / PUBLIC_RECORDS, split.public),
    ]
    stats = {
        "skipped": parsed.skipped,
        "partition": split.counts(),
        "all": _stats_payload(parsed.records, cfg.top_users),
        "official": _stats_payload(split.official, cfg.top_users),
        "public": _stats_payload(split.public, cfg.top_users),
    }
    outputs.append(_write_json(out_dir / STATS_FILE, stats))
    if cfg.emit_svg and parsed.records:
        outputs += _exploratory_figures(parsed.records, out_dir, "corpus", cfg.top_users)
    logger.info("Ingest wrote %d files to %s", len(outputs), out_dir)
    return 0


def cmd_stats(args: argparse.Namespace, settings: Settings) -> int:
    """Print exploratory statistics of one records file as JSON."""
    cfg = build_run_config(args, settings)
    parsed = parse_records(args.input, cfg.input_format)
    payload = _stats_payload(parsed.records, cfg.top_users)
    if getattr(args, "out", None):
        _write_json(cfg.output_dir / STATS_FILE, payload)
        if cfg.emit_svg and parsed.records:
            _exploratory_figures(parsed.records, cfg.output_dir, Path(args.input).stem, cfg.top_users)
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_run(args: argparse.Namespace, settings: Settings) -> int:
    """Run the two-tier pipeline and write every artifact plus the manifest."""
    cfg = build_run_config(args, settings)
    pipeline_cfg = cfg.pipeline
    out_dir = cfg.output_dir
    official_path = Path(args.official) if args.official else out_dir / OFFICIAL_RECORDS
    public_path = Path(args.public) if args.public else out_dir / PUBLIC_RECORDS
    official_records = parse_records(official_path, "jsonl").records
    public_records = parse_records(public_path, "jsonl").records
    curated = load_seed_set(pipeline_cfg.seeds_path, anchor_strength=pipeline_cfg.anchor_strength)

    result = run_two_tier(CorpusPartition(official=official_records, public=public_records), pipeline_cfg, curated)

    outputs: List[Path] = []
    for tier, model, prepared, records, labels in (
        ("official", result.official_model, result.official, official_records, result.official_labels),
        ("public", result.public_model, result.public, public_records, result.public_labels),
    ):
        outputs.append(save_model(out_dir / f"{tier}_model.corex", model))
        outputs.append(save_vocabulary(out_dir / f"{tier}_vocabulary.tsv", prepared.matrix.vocabulary))
        outputs.append(save_matrix(out_dir / f"{tier}_matrix.txt", prepared.matrix))
        outputs.append(write_labels(out_dir / f"{tier}_labels.csv", prepared.matrix.doc_ids, labels, prepared.matrix.empty_rows()))
    outputs.append(save_seed_set(out_dir / "extracted_seeds.txt", result.extracted_seeds))
    if result.public_seeds is not result.extracted_seeds:
        outputs.append(save_seed_set(out_dir / "public_seeds.txt", result.public_seeds))

    n_topics = pipeline_cfg.n_topics
    window = pipeline_cfg.window
    official_series = topic_timelines(official_records, result.official_labels, n_topics, Source.OFFICIAL, window)
    public_series = topic_timelines(public_records, result.public_labels, n_topics, Source.PUBLIC, window)
    heatmap = similarity_heatmap(
        result.official.tokens,
        result.official_labels,
        result.public.tokens,
        result.public_labels,
        n_topics,
        weighting=cfg.similarity_weighting.value,
        threads=pipeline_cfg.threads,
    )
    logger.info("Heatmap diagonal dominance: %.2f", heatmap.diagonal_dominance())
    if cfg.emit_csv:
        outputs.append(write_timelines_csv(out_dir / "timelines.csv", official_series + public_series))
        outputs.append(write_heatmap_csv(out_dir / "heatmap.csv", heatmap))
    if cfg.emit_svg:
        events = load_event_markers(cfg.events_path, window)
        for topic in range(n_topics):
            outputs.append(
                plot_timelines(
                    [official_series[topic], public_series[topic]],
                    events,
                    out_dir / "timelines" / f"topic_{topic:02d}.svg",
                    title=f"Topic {topic}: {', '.join(result.extracted_seeds.groups[topic][:5])}",
                )
            )
        outputs.append(plot_heatmap(heatmap, out_dir / "heatmap.svg"))
    if cfg.emit_manifest:
        inputs = [official_path, public_path, pipeline_cfg.seeds_path]
        manifest = build_manifest(
            config=cfg.to_dict(),
            counts={"official": len(official_records), "public": len(public_records)},
            inputs=inputs,
            official_model=result.official_model,
            public_model=result.public_model,
            extracted_seeds=result.extracted_seeds.groups,
            outputs=outputs,
        )
        write_manifest(out_dir / MANIFEST_FILE, manifest)
    logger.info("Run finished: %d artifacts in %s", len(outputs), out_dir)
    return 0


def cmd_label(args: argparse.Namespace, settings: Settings) -> int:
    """Label a records file with a saved model."""
    cfg = build_run_config(args, settings)
    model = load_model(args.model)
    records = parse_records(args.input, cfg.input_format).records
    tokens = tokenize_all((record.text for record in records), cfg.pipeline.tokenizer, keep=model.seeds.words)
    matrix = vectorize(tokens, Vocabulary(words=model.words), doc_ids=[record.id for record in records])
    labels = label(model, matrix, threads=cfg.pipeline.threads)
    target = Path(args.labels) if args.labels else cfg.output_dir / f"{Path(args.input).stem}_labels.csv"
    write_labels(target, matrix.doc_ids, labels, matrix.empty_rows())
    logger.info("Labelled %d posts into %s", len(labels), target)
    return 0


def cmd_timeline(args: argparse.Namespace, settings: Settings) -> int:
    """Weekly series per topic for one labelled records file."""
    cfg = build_run_config(args, settings)
    records = parse_records(args.input, cfg.input_format).records
    labels = _aligned_labels(records, Path(args.labels))
    n_topics = args.topics or cfg.pipeline.n_topics
    series = topic_timelines(records, labels, n_topics, Source(args.source), cfg.pipeline.window)
    if args.topic is not None:
        series = [item for item in series if item.topic == args.topic]
    out_dir = cfg.output_dir
    write_timelines_csv(out_dir / f"{args.source}_timelines.csv", series)
    if cfg.emit_svg:
        events = load_event_markers(cfg.events_path, cfg.pipeline.window)
        for item in series:
            plot_timelines([item], events, out_dir / f"{args.source}_topic_{item.topic:02d}.svg", normalized=args.normalized)
    return 0


def cmd_similarity(args: argparse.Namespace, settings: Settings) -> int:
    """Topic similarity heatmap between two labelled corpora."""
    cfg = build_run_config(args, settings)
    official = parse_records(args.official, "jsonl").records
    public = parse_records(args.public, "jsonl").records
    official_labels = _aligned_labels(official, Path(args.official_labels))
    public_labels = _aligned_labels(public, Path(args.public_labels))
    tokenizer = cfg.pipeline.tokenizer
    heatmap = similarity_heatmap(
        tokenize_all((record.text for record in official), tokenizer),
        official_labels,
        tokenize_all((record.text for record in public), tokenizer),
        public_labels,
        args.topics or cfg.pipeline.n_topics,
        weighting=args.weighting or cfg.similarity_weighting.value,
        threads=cfg.pipeline.threads,
    )
    write_heatmap_csv(cfg.output_dir / "heatmap.csv", heatmap)
    if cfg.emit_svg:
        plot_heatmap(heatmap, cfg.output_dir / "heatmap.svg")
    return 0


def cmd_report(args: argparse.Namespace, settings: Settings) -> int:
    """Print a text summary of a finished run directory."""
    run_dir = Path(args.run_dir)
    manifest_path = run_dir / MANIFEST_FILE
    manifest: Optional[Dict[str, Any]] = None
    if manifest_path.exists():
        manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    lines: List[str] = []
    if manifest:
        lines.append(f"Run {manifest.get('version', '?')} created {manifest.get('created_at', '?')}")
        lines.append(f"Posts: {manifest.get('counts', {})}")
    for tier in ("official", "public"):
        model_path = run_dir / f"{tier}_model.corex"
        if not model_path.exists():
            continue
        model = load_model(model_path)
        lines.append(f"{tier.capitalize()} model: {model.n_topics} topics, TC bound {model.tc_history[-1]:.4f}")
        for topic in range(model.n_topics):
            lines.append(f"  {topic:2d}: {', '.join(top_words(model, topic, args.top_k))}")
    if not lines:
        raise ConfigurationError(f"No run artifacts found in {run_dir}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0
