"""Path helpers for repo-local development mode."""

from __future__ import annotations

import os
from pathlib import Path


def get_repo_root() -> Path:
    """Return the repository root (dev mode only)."""
    return Path(__file__).resolve().parents[3]


def get_src_root() -> Path:
    """Return the repo-local src/ directory."""
    return get_repo_root() / "src"


def get_data_dir() -> Path:
    """Return the canonical data directory (src/data)."""
    return get_src_root() / "data"


def get_logs_dir() -> Path:
    """Return the canonical logs directory (src/logs)."""
    return get_src_root() / "logs"


def get_log_file() -> Path:
    """Return the canonical log file path (src/logs/anchortopics.log)."""
    return get_logs_dir() / "anchortopics.log"


def get_accounts_path() -> Path:
    """Return the shipped official account list (src/data/accounts.txt)."""
    return get_data_dir() / "accounts.txt"


def get_seeds_path() -> Path:
    """Return the shipped curated seed groups (src/data/seeds.txt)."""
    return get_data_dir() / "seeds.txt"


def get_events_path() -> Path:
    """Return the shipped event markers (src/data/events.txt)."""
    return get_data_dir() / "events.txt"


def get_config_path() -> Path:
    """Resolve the settings.txt path with ANCHORTOPICS_CONFIG_PATH override."""
    override = os.getenv("ANCHORTOPICS_CONFIG_PATH")
    if override:
        return Path(override).expanduser().resolve()
    return (get_repo_root() / "settings.txt").resolve()
