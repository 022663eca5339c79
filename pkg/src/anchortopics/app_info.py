"""Version and build information echoed by ``--version`` and stored in run manifests."""

from __future__ import annotations

import subprocess
from importlib import metadata
from pathlib import Path
from typing import Dict, Optional

Version_Major = 1
Version_Minor = 0
Version_patch = 0

version = f"v{Version_Major}.{Version_Minor}.{Version_patch}"

# Bumped whenever the on-disk model layout changes.
MODEL_FORMAT_VERSION = 1

# Libraries whose versions can change fitted numbers or SVG bytes.
NUMERIC_LIBRARIES = ("numpy", "scipy", "scikit-learn", "pandas", "matplotlib")


def _repo_root() -> Path:
    return Path(__file__).resolve().parents[2]


def _resolve_git_dir(repo_root: Path) -> Optional[Path]:
    """``.git`` directory, following the ``gitdir:`` pointer of worktrees."""
    git_path = repo_root / ".git"
    if git_path.is_dir():
        return git_path
    if git_path.is_file():
        pointer = git_path.read_text(encoding="utf-8").strip()
        if pointer.lower().startswith("gitdir:"):
            return (repo_root / pointer[len("gitdir:"):].strip()).resolve()
    return None


def _packed_ref(git_dir: Path, ref: str) -> Optional[str]:
    packed = git_dir / "packed-refs"
    if not packed.exists():
        return None
    for line in packed.read_text(encoding="utf-8").splitlines():
        sha, _, name = line.partition(" ")
        if line.startswith(("#", "^")) or name != ref:
            continue
        return sha
    return None


def commit_from_git_files(repo_root: Path) -> Optional[str]:
    """Short SHA of HEAD read straight from the ``.git`` files, without running git."""
    try:
        git_dir = _resolve_git_dir(repo_root)
        if git_dir is None:
            return None
        head = (git_dir / "HEAD").read_text(encoding="utf-8").strip()
        if not head.startswith("ref:"):
            sha: Optional[str] = head
        else:
            ref = head.split(" ", 1)[1].strip()
            ref_path = git_dir / ref
            sha = ref_path.read_text(encoding="utf-8").strip() if ref_path.exists() else _packed_ref(git_dir, ref)
    except OSError:
        return None
    return sha[:7] if sha else None


def git_commit_short() -> Optional[str]:
    """Short git SHA of the checkout, or None outside a repository."""
    repo_root = _repo_root()
    commit = commit_from_git_files(repo_root)
    if commit:
        return commit
    try:
        result = subprocess.run(
            ["git", "rev-parse", "--short", "HEAD"],
            cwd=repo_root,
            capture_output=True,
            text=True,
            check=True,
        )
    except (OSError, subprocess.CalledProcessError):
        return None
    return result.stdout.strip() or None


def display_version() -> str:
    """Version string with the git SHA when available."""
    commit = git_commit_short()
    return f"{version} ({commit})" if commit else version


def library_versions() -> Dict[str, Optional[str]]:
    """Installed versions of the numeric stack; None for a missing distribution."""
    versions: Dict[str, Optional[str]] = {}
    for name in NUMERIC_LIBRARIES:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = None
    return versions


def build_info() -> Dict[str, object]:
    """Everything a manifest needs to tell which code produced a run."""
    return {
        "version": display_version(),
        "model_format_version": MODEL_FORMAT_VERSION,
        "libraries": library_versions(),
    }
