"""Seed-word groups that anchor topics.

File format: one group per line, comma-separated words; group ``g`` (line
order, blank lines and ``#`` comments skipped) anchors topic ``g``. A line
holding only ``-`` is a group without words, which keeps later groups on
their topic.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from anchortopics.errors import ConfigurationError
from anchortopics.utils.paths import get_seeds_path

logger = logging.getLogger("seeds")

DEFAULT_ANCHOR_STRENGTH = 2.0
EMPTY_GROUP_MARKER = "-"


def _normalize_group(words: Iterable[str]) -> Tuple[str, ...]:
    cleaned = (str(word).strip().lower() for word in words)
    return tuple(dict.fromkeys(word for word in cleaned if word))


@dataclass(frozen=True)
class SeedSet:
    """Ordered word groups; words are lowercased and deduplicated within a group."""

    groups: Tuple[Tuple[str, ...], ...]
    anchor_strength: float = DEFAULT_ANCHOR_STRENGTH

    def __post_init__(self) -> None:
        object.__setattr__(self, "groups", tuple(_normalize_group(group) for group in self.groups))
        if float(self.anchor_strength) < 1.0:
            raise ConfigurationError(f"anchor_strength must be >= 1 (got {self.anchor_strength})")
        object.__setattr__(self, "anchor_strength", float(self.anchor_strength))

    def __len__(self) -> int:
        return len(self.groups)

    @property
    def words(self) -> List[str]:
        """All seed words, first occurrence order."""
        return list(dict.fromkeys(word for group in self.groups for word in group))

    def anchored_groups(self) -> List[int]:
        return [g for g, group in enumerate(self.groups) if group]

    def with_strength(self, anchor_strength: float) -> "SeedSet":
        return SeedSet(groups=self.groups, anchor_strength=anchor_strength)


def load_seed_set(path: Union[str, Path, None] = None, anchor_strength: float = DEFAULT_ANCHOR_STRENGTH) -> SeedSet:
    """Read a seed file; duplicated words within a line are dropped with a warning.

    Raises:
        ConfigurationError: If the file is missing or holds no group.
    """
    path = Path(path) if path else get_seeds_path()
    if not path.exists():
        raise ConfigurationError(f"Seed file not found: {path}")
    groups: List[Tuple[str, ...]] = []
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line == EMPTY_GROUP_MARKER:
            groups.append(())
            continue
        words = [word.strip().lower() for word in line.split(",") if word.strip()]
        group = _normalize_group(words)
        if len(group) != len(words):
            logger.warning("Seed file %s line %d: duplicated words removed", path, line_no)
        groups.append(group)
    if not groups:
        raise ConfigurationError(f"Seed file holds no group: {path}")
    logger.info("Loaded %d seed groups from %s", len(groups), path)
    return SeedSet(groups=tuple(groups), anchor_strength=anchor_strength)


def save_seed_set(path: Union[str, Path], seeds: SeedSet) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = ((",".join(group) or EMPTY_GROUP_MARKER) + "\n" for group in seeds.groups)
    path.write_text("".join(lines), encoding="utf-8", newline="\n")
    return path


def merge_seed_sets(primary: SeedSet, extra: SeedSet, anchor_strength: Optional[float] = None) -> SeedSet:
    """Union of two seed sets group by group, ``primary`` words first.

    A word already claimed by an earlier group is not repeated in a later one,
    so no word anchors two topics.
    """
    size = max(len(primary), len(extra))
    seen: set[str] = set()
    groups: List[Tuple[str, ...]] = []
    for g in range(size):
        left: Sequence[str] = primary.groups[g] if g < len(primary) else ()
        right: Sequence[str] = extra.groups[g] if g < len(extra) else ()
        group = [word for word in dict.fromkeys([*left, *right]) if word not in seen]
        seen.update(group)
        groups.append(tuple(group))
    strength = primary.anchor_strength if anchor_strength is None else anchor_strength
    return SeedSet(groups=tuple(groups), anchor_strength=strength)
