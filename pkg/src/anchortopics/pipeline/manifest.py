"""Run manifest: everything needed to reproduce a run and find its outputs."""

from __future__ import annotations

import hashlib
import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Optional, Union

from anchortopics.app_info import build_info
from anchortopics.model.corex import CorexModel

logger = logging.getLogger("manifest")


def file_sha256(path: Union[str, Path]) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as handle:
        for block in iter(lambda: handle.read(1 << 20), b""):
            digest.update(block)
    return digest.hexdigest()


def tc_summary(model: CorexModel) -> Dict[str, Any]:
    history = model.tc_history
    return {
        "iterations": len(history),
        "initial": history[0] if history else None,
        "final": history[-1] if history else None,
        "max": max(history) if history else None,
        "per_topic": [float(value) for value in model.topic_tc],
    }


def build_manifest(
    config: Mapping[str, Any],
    counts: Mapping[str, int],
    inputs: Iterable[Union[str, Path]] = (),
    official_model: Optional[CorexModel] = None,
    public_model: Optional[CorexModel] = None,
    extracted_seeds: Optional[Iterable[Iterable[str]]] = None,
    outputs: Iterable[Union[str, Path]] = (),
) -> Dict[str, Any]:
    """Assemble the manifest dictionary.

    Only ``created_at`` changes between two runs of the same configuration on
    the same inputs.
    """
    manifest: Dict[str, Any] = {
        "created_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        **build_info(),
        "config": dict(config),
        "inputs": {str(path): file_sha256(path) for path in inputs},
        "counts": dict(counts),
        "outputs": sorted(str(path) for path in outputs),
    }
    for key, model in (("official_model", official_model), ("public_model", public_model)):
        if model is not None:
            manifest[key] = {
                "n_topics": model.n_topics,
                "n_words": model.n_words,
                "n_docs": model.n_docs,
                "n_iter": model.n_iter,
                "rng_seed": model.rng_seed,
                "vocab_fingerprint": model.vocab_fingerprint,
                "tc": tc_summary(model),
            }
    if extracted_seeds is not None:
        manifest["extracted_seeds"] = [list(group) for group in extracted_seeds]
    return manifest


def write_manifest(path: Union[str, Path], manifest: Mapping[str, Any]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8", newline="\n")
    logger.info("Wrote run manifest to %s", path)
    return path
