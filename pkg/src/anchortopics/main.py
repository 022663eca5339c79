# Anchored topic modelling of official and public microblogs
# Author : Stephane Rey

from pathlib import Path
import sys

# Allow direct execution via `python main.py` from `src/anchortopics`.
if __package__ in (None, ""):
    sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

import argparse
import configparser
import logging
from logging.handlers import TimedRotatingFileHandler
from typing import List, Optional

from anchortopics.app_info import display_version
from anchortopics.cli import commands
from anchortopics.errors import ConfigurationError, InvariantViolation
from anchortopics.utils.paths import get_log_file
from anchortopics.utils.settings_loader import Settings, load_settings, resolve_settings_path

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

EXIT_OK = 0
EXIT_IO = 1
EXIT_CONFIG = 2
EXIT_INVARIANT = 3

logger = logging.getLogger("main")


def setup_logging(verbose: bool = False, log_to_file: bool = True, log_file: Optional[Path] = None) -> None:
    """Console handler on stderr plus a daily rotating file (7 days kept)."""
    level = logging.DEBUG if verbose else logging.INFO
    root_logger = logging.getLogger()
    root_logger.setLevel(level)

    # Drop handlers left by an earlier call or by basicConfig
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)
        handler.close()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root_logger.addHandler(console_handler)

    if not log_to_file:
        return
    log_file = Path(log_file) if log_file else get_log_file()
    try:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = TimedRotatingFileHandler(
            str(log_file),
            when="D",
            interval=1,
            backupCount=7,
            encoding="utf-8",
            utc=False,
        )
    except OSError as exc:
        logger.warning("File logging disabled, %s is not writable: %s", log_file, exc)
        return
    file_handler.setLevel(level)
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root_logger.addHandler(file_handler)


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--topics", type=int, help="number of topics per model (N_TOPICS)")
    parser.add_argument("--iters", type=int, help="maximum training iterations (N_ITER)")
    parser.add_argument("--top-k", dest="top_k", type=int, help="keywords extracted per official topic (TOP_K)")
    parser.add_argument("--seeds", help="curated seed file, one comma-separated group per line (SEEDS_PATH)")
    parser.add_argument(
        "--seed-mode",
        dest="seed_mode",
        choices=["extracted_only", "extracted_plus_curated"],
        help="public model anchors: extracted keywords alone or merged with the curated seeds (SEED_MODE)",
    )
    parser.add_argument("--rng-seed", dest="rng_seed", type=int, help="initialisation seed (RNG_SEED)")
    parser.add_argument("--anchor-strength", dest="anchor_strength", type=float, help="anchor weight >= 1 (ANCHOR_STRENGTH)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="anchortopics",
        description="Two-tier anchored topic modelling of official and public microblogs.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {display_version()}")
    parser.add_argument("--config", help="settings file (default: ANCHORTOPICS_CONFIG_PATH or repo settings.txt)")
    parser.add_argument("--threads", type=int, help="worker threads hint (PERFORMANCE THREADS)")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("--no-log-file", dest="no_log_file", action="store_true", help="log to stderr only")
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="partition a raw scrape into official/public posts and report statistics")
    ingest.add_argument("input", help="raw records file (JSONL or CSV)")
    ingest.add_argument("--format", choices=["jsonl", "csv"], help="input format (CORPUS FORMAT)")
    ingest.add_argument("--accounts", help="official account list, one handle per line (ACCOUNTS_PATH)")
    ingest.add_argument("--out", required=True, help="output directory")
    ingest.add_argument("--no-svg", dest="no_svg", action="store_true", help="skip exploratory figures")
    ingest.set_defaults(handler=commands.cmd_ingest)

    stats = sub.add_parser("stats", help="print exploratory statistics of a records file")
    stats.add_argument("input", help="records file (JSONL or CSV)")
    stats.add_argument("--format", choices=["jsonl", "csv"], help="input format")
    stats.add_argument("--out", help="also write stats.json and figures here")
    stats.add_argument("--no-svg", dest="no_svg", action="store_true", help="skip figures")
    stats.set_defaults(handler=commands.cmd_stats)

    run = sub.add_parser("run", help="fit the official and public models and write every artifact")
    run.add_argument("--official", help="official posts (default: <out>/official.jsonl)")
    run.add_argument("--public", help="public posts (default: <out>/public.jsonl)")
    run.add_argument("--out", required=True, help="output directory")
    run.add_argument("--events", help="event markers file (EVENTS_PATH)")
    run.add_argument("--no-svg", dest="no_svg", action="store_true", help="skip SVG figures")
    run.add_argument("--no-csv", dest="no_csv", action="store_true", help="skip CSV tables")
    _add_model_flags(run)
    run.set_defaults(handler=commands.cmd_run)

    label = sub.add_parser("label", help="label a records file with a saved model")
    label.add_argument("--model", required=True, help="model file written by 'run'")
    label.add_argument("--input", required=True, help="records file to label")
    label.add_argument("--format", choices=["jsonl", "csv"], help="input format")
    label.add_argument("--labels", help="output CSV (default: <out>/<input>_labels.csv)")
    label.add_argument("--out", help="output directory")
    label.set_defaults(handler=commands.cmd_label)

    timeline = sub.add_parser("timeline", help="weekly topic series of a labelled records file")
    timeline.add_argument("--input", required=True, help="records file")
    timeline.add_argument("--format", choices=["jsonl", "csv"], help="input format")
    timeline.add_argument("--labels", required=True, help="label CSV aligned with the records")
    timeline.add_argument("--source", choices=["official", "public"], required=True)
    timeline.add_argument("--topics", type=int, help="number of topics (N_TOPICS)")
    timeline.add_argument("--topic", type=int, help="only this topic")
    timeline.add_argument("--normalized", action="store_true", help="plot weekly shares instead of counts")
    timeline.add_argument("--events", help="event markers file (EVENTS_PATH)")
    timeline.add_argument("--out", required=True, help="output directory")
    timeline.add_argument("--no-svg", dest="no_svg", action="store_true", help="skip SVG figures")
    timeline.set_defaults(handler=commands.cmd_timeline)

    similarity = sub.add_parser("similarity", help="topic similarity heatmap between labelled corpora")
    similarity.add_argument("--official", required=True, help="official posts (JSONL)")
    similarity.add_argument("--official-labels", dest="official_labels", required=True)
    similarity.add_argument("--public", required=True, help="public posts (JSONL)")
    similarity.add_argument("--public-labels", dest="public_labels", required=True)
    similarity.add_argument("--topics", type=int, help="number of topics (N_TOPICS)")
    similarity.add_argument("--weighting", choices=["tfidf", "tf"], help="SIMILARITY_WEIGHTING")
    similarity.add_argument("--out", required=True, help="output directory")
    similarity.add_argument("--no-svg", dest="no_svg", action="store_true", help="skip the SVG heatmap")
    similarity.set_defaults(handler=commands.cmd_similarity)

    report = sub.add_parser("report", help="summarize a run directory")
    report.add_argument("run_dir", help="directory written by 'run'")
    report.add_argument("--top-k", dest="top_k", type=int, default=10, help="words shown per topic")
    report.set_defaults(handler=commands.cmd_report)
    return parser


def _load_settings(config: Optional[str]) -> Settings:
    """Explicit --config must exist; a missing default file means built-in defaults."""
    path = resolve_settings_path(config)
    if not path.exists():
        if config:
            raise ConfigurationError(f"Settings file not found: {path}")
        logger.warning("No settings file at %s, using built-in defaults", path)
        return {}
    logger.info("Loading settings from %s", path)
    return load_settings(path)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(verbose=args.verbose, log_to_file=not args.no_log_file)
    logger.info("anchortopics %s: %s", display_version(), args.command)

    try:
        settings = _load_settings(args.config)
        return int(args.handler(args, settings))
    except InvariantViolation as exc:
        logger.error("Internal invariant violated: %s", exc)
        logger.debug("Traceback", exc_info=True)
        return EXIT_INVARIANT
    except (ConfigurationError, ValueError, configparser.Error) as exc:
        logger.error("Configuration error: %s", exc)
        logger.debug("Traceback", exc_info=True)
        return EXIT_CONFIG
    except OSError as exc:
        logger.error("I/O error: %s", exc)
        logger.debug("Traceback", exc_info=True)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
