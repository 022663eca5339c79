"""Single-file model persistence.

Layout: the magic line ``ANCHORTOPICS-COREX``, one line of sorted-key JSON
(format version, vocabulary fingerprint, words, seeds, scalar fields, array
shapes), then the arrays of :data:`ARRAY_FIELDS` as consecutive ``.npy``
records. Writing the same model twice yields identical bytes.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Union

import numpy as np

from anchortopics.app_info import MODEL_FORMAT_VERSION
from anchortopics.errors import ConfigurationError
from anchortopics.model.corex import CorexModel
from anchortopics.model.seeds import SeedSet
from anchortopics.text.vocabulary import vocabulary_fingerprint

logger = logging.getLogger("model_io")

MAGIC = b"ANCHORTOPICS-COREX\n"
ARRAY_FIELDS = (
    "alpha",
    "log_marginals",
    "log_prior",
    "log_word_marginals",
    "mi",
    "joint_counts",
    "topic_tc",
)


def save_model(path: Union[str, Path], model: CorexModel) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = {
        "format_version": MODEL_FORMAT_VERSION,
        "vocab_fingerprint": model.vocab_fingerprint,
        "words": list(model.words),
        "n_topics": model.n_topics,
        "n_iter": model.n_iter,
        "rng_seed": model.rng_seed,
        "n_docs": model.n_docs,
        "tc_history": [float(value) for value in model.tc_history],
        "seeds": {"groups": [list(group) for group in model.seeds.groups], "anchor_strength": model.seeds.anchor_strength},
        "arrays": {name: list(np.shape(getattr(model, name))) for name in ARRAY_FIELDS},
    }
    with path.open("wb") as handle:
        handle.write(MAGIC)
        handle.write(json.dumps(header, sort_keys=True, ensure_ascii=True).encode("ascii") + b"\n")
        for name in ARRAY_FIELDS:
            np.save(handle, np.ascontiguousarray(getattr(model, name), dtype=np.float64), allow_pickle=False)
    logger.info("Saved model (%d topics, %d words) to %s", model.n_topics, model.n_words, path)
    return path


def load_model(path: Union[str, Path]) -> CorexModel:
    """Read a model written by :func:`save_model`.

    Raises:
        OSError: If the file cannot be read.
        ConfigurationError: On a foreign file, an unknown format version or
            inconsistent contents.
    """
    path = Path(path)
    with path.open("rb") as handle:
        if handle.readline() != MAGIC:
            raise ConfigurationError(f"Not a model file: {path}")
        try:
            header = json.loads(handle.readline().decode("ascii"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"Corrupt model header in {path}: {exc}") from exc
        version = header.get("format_version")
        if version != MODEL_FORMAT_VERSION:
            raise ConfigurationError(f"Unsupported model format version {version} in {path}")
        arrays = {}
        for name in ARRAY_FIELDS:
            try:
                array = np.load(handle, allow_pickle=False)
            except (ValueError, EOFError) as exc:
                raise ConfigurationError(f"Truncated model file {path}: {exc}") from exc
            expected = tuple(header["arrays"][name])
            if array.shape != expected:
                raise ConfigurationError(f"Array {name} has shape {array.shape}, expected {expected}")
            arrays[name] = array

    words = tuple(header["words"])
    if vocabulary_fingerprint(words) != header["vocab_fingerprint"]:
        raise ConfigurationError(f"Vocabulary fingerprint mismatch inside {path}")
    seeds = SeedSet(
        groups=tuple(tuple(group) for group in header["seeds"]["groups"]),
        anchor_strength=header["seeds"]["anchor_strength"],
    )
    return CorexModel(
        n_topics=int(header["n_topics"]),
        words=words,
        vocab_fingerprint=header["vocab_fingerprint"],
        seeds=seeds,
        tc_history=[float(value) for value in header["tc_history"]],
        n_iter=int(header["n_iter"]),
        rng_seed=int(header["rng_seed"]),
        n_docs=int(header["n_docs"]),
        **arrays,
    )
