"""Anchored Correlation Explanation (CorEx) over binary document-term matrices.

Each topic ``j`` is a latent binary factor ``y_j``. Per iteration the model
computes document posteriors

    log p(y_j = y | x) = log p(y_j = y) + sum_i alpha[j, i] * (log p(x_i | y_j = y) - log p(x_i)) - log Z_j(x)

re-estimates ``p(x_i | y_j)`` and ``p(y_j)`` from posterior-weighted 2x2 soft
counts, refreshes the word/topic mutual informations, lets every word lean
towards its highest-information topic through ``alpha`` and records the total
correlation lower bound ``sum_j mean_x log Z_j(x)``. Anchor words keep
``alpha = anchor_strength`` on their topic.

For fixed ``alpha`` one iteration is an EM step on that bound and cannot lower
it. An ``alpha`` step that lowers the bound is rolled back and the step size
halved, so ``tc_history`` never regresses. Word/topic pairs whose information
stays below the chance level of an independent 2x2 table get no weight, and a
topic whose bound is still below ``SETTLED_TC`` keeps its weights until it has
picked up structure.

Reductions run over fixed-size document chunks summed in chunk order, so the
fitted parameters do not depend on the worker count.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import partial
from typing import List, NamedTuple, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.special import logsumexp

from anchortopics.errors import ConfigurationError, FingerprintMismatchError, InvariantViolation
from anchortopics.model.information import independence_threshold, mutual_information_tables
from anchortopics.model.seeds import SeedSet
from anchortopics.text.doc_term import DocTermMatrix
from anchortopics.threading_utils.thread_manager import ThreadManager

logger = logging.getLogger("Corex")

CHUNK_SIZE = 4096
SMOOTHING = 1e-3
ALPHA_RATE = 0.5
ALPHA_TEMPERATURE = 20.0
TC_TOLERANCE = 1e-6
INIT_ALPHA_RANGE = (0.25, 0.5)
INIT_ANCHORED_WEIGHT = 0.9
# p-value of the chance level below which a word/topic pair loses its weight
NULL_MI_PVALUE = 1e-3
SETTLED_TC = 0.01


@dataclass
class CorexModel:
    """Fitted parameters; arrays are indexed ``[topic, word, y, x]``."""

    n_topics: int
    words: Tuple[str, ...]
    vocab_fingerprint: str
    alpha: np.ndarray
    log_marginals: np.ndarray
    log_prior: np.ndarray
    log_word_marginals: np.ndarray
    mi: np.ndarray
    joint_counts: np.ndarray
    topic_tc: np.ndarray
    seeds: SeedSet
    tc_history: List[float] = field(default_factory=list)
    n_iter: int = 100
    rng_seed: int = 0
    n_docs: int = 0

    @property
    def n_words(self) -> int:
        return len(self.words)

    @property
    def prior(self) -> np.ndarray:
        """p(y_j = 1) per topic."""
        return np.exp(self.log_prior)

    def anchor_pairs(self) -> List[Tuple[int, int]]:
        index = {word: i for i, word in enumerate(self.words)}
        return [(g, index[word]) for g, group in enumerate(self.seeds.groups) for word in group if word in index]


class _ChunkScores(NamedTuple):
    posterior: np.ndarray
    log_z: np.ndarray
    log_odds: np.ndarray


def _row_chunks(n_rows: int) -> List[slice]:
    return [slice(start, min(start + CHUNK_SIZE, n_rows)) for start in range(0, n_rows, CHUNK_SIZE)]


def _validate_seeds(seeds: SeedSet, words: Sequence[str], n_topics: int) -> List[Tuple[int, int]]:
    if n_topics < 1:
        raise ConfigurationError(f"n_topics must be >= 1 (got {n_topics})")
    if len(seeds) > n_topics:
        raise ConfigurationError(f"{len(seeds)} seed groups cannot anchor only {n_topics} topics")
    index = {word: i for i, word in enumerate(words)}
    missing = [word for word in seeds.words if word not in index]
    if missing:
        raise ConfigurationError(f"Seed words missing from the vocabulary: {', '.join(missing)}")
    return [(g, index[word]) for g, group in enumerate(seeds.groups) for word in group]


def _log_two_state(log_p1: np.ndarray) -> np.ndarray:
    """Stack ``log p(y=0)`` and ``log p(y=1)`` along a trailing axis."""
    return np.stack([np.log(-np.expm1(log_p1)), log_p1], axis=-1)


def _word_log_marginals(doc_freq: np.ndarray, n_docs: int, smoothing: float) -> np.ndarray:
    p1 = (doc_freq + smoothing) / (n_docs + 2.0 * smoothing)
    return np.stack([np.log1p(-p1), np.log(p1)], axis=-1)


def _evidence_terms(
    alpha: np.ndarray, log_marginals: np.ndarray, log_word_marginals: np.ndarray
) -> Tuple[np.ndarray, np.ndarray]:
    """Split the weighted log-ratio into an all-absent base and per-word presence deltas.

    Returns ``base`` of shape (m, 2) and ``delta`` of shape (V, 2m) with column
    ``2j + y``.
    """
    n_topics, n_words = alpha.shape
    weighted = alpha[:, :, None, None] * (log_marginals - log_word_marginals[None, :, None, :])
    base = weighted[..., 0].sum(axis=1)
    delta = (weighted[..., 1] - weighted[..., 0]).transpose(1, 0, 2).reshape(n_words, 2 * n_topics)
    return base, np.ascontiguousarray(delta)


def _score_chunk(block: sparse.csr_matrix, log_prior2: np.ndarray, base: np.ndarray, delta: np.ndarray) -> _ChunkScores:
    n_rows = block.shape[0]
    n_topics = log_prior2.shape[0]
    evidence = np.asarray(block @ delta).reshape(n_rows, n_topics, 2)
    scores = log_prior2[None] + base[None] + evidence
    empty = np.diff(block.indptr) == 0
    scores[empty] = log_prior2
    log_z = logsumexp(scores, axis=2)
    log_z[empty] = 0.0
    posterior = np.exp(scores[..., 1] - log_z)
    return _ChunkScores(posterior=posterior, log_z=log_z, log_odds=scores[..., 1] - scores[..., 0])


def _score_blocks(
    manager: ThreadManager,
    blocks: Sequence[sparse.csr_matrix],
    alpha: np.ndarray,
    log_marginals: np.ndarray,
    log_prior: np.ndarray,
    log_word_marginals: np.ndarray,
) -> Tuple[List[_ChunkScores], np.ndarray]:
    """Posterior pass over every block; also returns the per-topic bound ``mean_x log Z_j(x)``."""
    base, delta = _evidence_terms(alpha, log_marginals, log_word_marginals)
    scorer = partial(_score_chunk, log_prior2=_log_two_state(log_prior), base=base, delta=delta)
    scored = manager.map_ordered("corex.posterior", scorer, blocks)
    log_z_sum = np.zeros(alpha.shape[0])
    n_rows = 0
    for chunk in scored:
        log_z_sum += chunk.log_z.sum(axis=0)
        n_rows += chunk.log_z.shape[0]
    return scored, log_z_sum / n_rows


def _chunk_counts(chunk: Tuple[sparse.csr_matrix, np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
    block, posterior = chunk
    return np.asarray(block.T @ posterior), posterior.sum(axis=0)


def _soft_counts(
    manager: ThreadManager,
    blocks: Sequence[sparse.csr_matrix],
    posteriors: Sequence[np.ndarray],
    doc_freq: np.ndarray,
    n_docs: int,
    smoothing: float,
) -> np.ndarray:
    """Smoothed 2x2 tables ``[topic, word, y, x]`` of posterior-weighted counts."""
    partials = manager.map_ordered("corex.counts", _chunk_counts, list(zip(blocks, posteriors)))
    both = np.zeros((len(doc_freq), posteriors[0].shape[1]))
    weight_y1 = np.zeros(posteriors[0].shape[1])
    for chunk_both, chunk_y1 in partials:
        both += chunk_both
        weight_y1 += chunk_y1
    c11 = both.T
    c01 = np.clip(doc_freq[None, :] - c11, 0.0, None)
    c10 = np.clip(weight_y1[:, None] - c11, 0.0, None)
    c00 = np.clip((n_docs - weight_y1)[:, None] - c01, 0.0, None)
    counts = np.empty(c11.shape + (2, 2))
    counts[..., 0, 0] = c00
    counts[..., 0, 1] = c01
    counts[..., 1, 0] = c10
    counts[..., 1, 1] = c11
    return counts + smoothing


def _estimate(counts: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    log_marginals = np.log(counts) - np.log(counts.sum(axis=3, keepdims=True))
    y_totals = counts[:, 0].sum(axis=2)
    log_prior = np.log(y_totals[:, 1]) - np.log(y_totals.sum(axis=1))
    return log_marginals, log_prior, mutual_information_tables(counts)


def topic_orientation(log_marginals: np.ndarray, alpha: np.ndarray, anchor_mask: np.ndarray) -> np.ndarray:
    """Association of ``y = 1`` with word presence, one score per topic.

    Anchored topics look at their anchors only; free topics weight every word
    by ``alpha``. A negative score means state 1 currently stands for "topic
    absent".
    """
    lift = np.exp(log_marginals[..., 1, 1]) - np.exp(log_marginals[..., 0, 1])
    anchored = anchor_mask.any(axis=1, keepdims=True)
    weights = np.where(anchored, anchor_mask.astype(np.float64), alpha)
    return (weights * lift).sum(axis=1)


def _update_alpha(
    alpha: np.ndarray,
    mi: np.ndarray,
    topic_tc: np.ndarray,
    anchors: Sequence[Tuple[int, int]],
    strength: float,
    *,
    rate: float,
    chance_mi: float,
) -> np.ndarray:
    """Move ``alpha`` towards the soft-max competition target.

    Pairs with ``mi <= chance_mi`` target 0. Rows of topics whose bound is
    below ``SETTLED_TC`` are left as they are.
    """
    competition = np.exp(ALPHA_TEMPERATURE * (mi - mi.max(axis=0, keepdims=True)))
    target = np.where(mi > chance_mi, competition, 0.0)
    updated = np.clip((1.0 - rate) * alpha + rate * target, 0.0, 1.0)
    unsettled = topic_tc < SETTLED_TC
    updated[unsettled] = alpha[unsettled]
    _pin_anchors(updated, anchors, strength)
    return updated


def _pin_anchors(alpha: np.ndarray, anchors: Sequence[Tuple[int, int]], strength: float) -> None:
    for topic, word in anchors:
        alpha[topic, word] = strength


def fit(
    matrix: DocTermMatrix,
    seeds: SeedSet,
    n_topics: int = 20,
    n_iter: int = 100,
    rng_seed: int = 42,
    *,
    threads: int = 1,
    smoothing: float = SMOOTHING,
    tolerance: float = TC_TOLERANCE,
) -> CorexModel:
    """Fit an anchored CorEx model.

    Group ``g`` of ``seeds`` anchors topic ``g``; topics beyond the seed groups
    are free. Documents without any vocabulary word carry no evidence and are
    left out of the fit.

    Args:
        matrix: Binary document-term matrix.
        seeds: Anchor groups, every word present in the matrix vocabulary.
        n_topics: Number of latent topics.
        n_iter: Maximum number of iterations.
        rng_seed: Seed of the initialisation draws.
        threads: Worker hint for chunked posterior and count computations.
        smoothing: Additive smoothing of every soft-count cell.
        tolerance: Stop once the bound changes by less than this.

    Returns:
        The fitted model.

    Raises:
        ConfigurationError: On missing seed words, too many seed groups, or an
            all-empty matrix.
    """
    if int(n_iter) < 1:
        raise ConfigurationError(f"n_iter must be >= 1 (got {n_iter})")
    words = matrix.vocabulary.words
    anchors = _validate_seeds(seeds, words, int(n_topics))
    n_topics = int(n_topics)
    observed = ~matrix.empty_rows()
    if not observed.any():
        raise ConfigurationError("Cannot fit a topic model: every document is empty")
    if not observed.all():
        logger.info("Skipping %d empty documents during fit", int((~observed).sum()))
    x = sparse.csr_matrix(matrix.matrix[observed], dtype=np.float64)
    n_docs, n_words = x.shape
    blocks = [x[rows] for rows in _row_chunks(n_docs)]
    doc_freq = np.asarray(x.sum(axis=0)).ravel()
    log_word_marginals = _word_log_marginals(doc_freq, n_docs, smoothing)

    anchor_mask = np.zeros((n_topics, n_words), dtype=bool)
    for topic, word in anchors:
        anchor_mask[topic, word] = True

    rng = np.random.default_rng(int(rng_seed))
    alpha = rng.uniform(*INIT_ALPHA_RANGE, size=(n_topics, n_words))
    _pin_anchors(alpha, anchors, seeds.anchor_strength)
    initial = rng.uniform(0.4, 0.6, size=(n_docs, n_topics))
    for topic in range(n_topics):
        if anchor_mask[topic].any():
            hits = np.asarray(x[:, anchor_mask[topic]].sum(axis=1)).ravel() > 0
            initial[hits, topic] = INIT_ANCHORED_WEIGHT
    posteriors = [initial[rows] for rows in _row_chunks(n_docs)]

    chance_mi = independence_threshold(n_docs, NULL_MI_PVALUE)
    rate = ALPHA_RATE
    rollbacks = 0
    tc_history: List[float] = []
    topic_tc = np.zeros(n_topics)
    with ThreadManager(max_workers=threads) as manager:
        counts = _soft_counts(manager, blocks, posteriors, doc_freq, n_docs, smoothing)
        log_marginals, log_prior, mi = _estimate(counts)
        accepted_alpha = alpha
        for iteration in range(int(n_iter)):
            scored, topic_tc = _score_blocks(manager, blocks, alpha, log_marginals, log_prior, log_word_marginals)
            if tc_history and topic_tc.sum() < tc_history[-1] - tolerance:
                # Fixed-alpha EM steps never lower the bound: retry with the weights of the last step.
                logger.debug(
                    "Iteration %d: alpha step lowered the TC bound to %.6f, rolling back", iteration + 1, topic_tc.sum()
                )
                alpha = accepted_alpha
                rate *= 0.5
                rollbacks += 1
                scored, topic_tc = _score_blocks(manager, blocks, alpha, log_marginals, log_prior, log_word_marginals)
            posteriors = [chunk.posterior for chunk in scored]

            counts = _soft_counts(manager, blocks, posteriors, doc_freq, n_docs, smoothing)
            log_marginals, log_prior, mi = _estimate(counts)
            flipped = topic_orientation(log_marginals, alpha, anchor_mask) < 0
            if flipped.any():
                counts[flipped] = counts[flipped][:, :, ::-1, :]
                log_marginals, log_prior, mi = _estimate(counts)
            accepted_alpha = alpha
            alpha = _update_alpha(
                alpha, mi, topic_tc, anchors, seeds.anchor_strength, rate=rate, chance_mi=chance_mi
            )

            tc_history.append(float(topic_tc.sum()))
            logger.debug("Iteration %d: TC bound %.6f", iteration + 1, tc_history[-1])
            if len(tc_history) > 1 and abs(tc_history[-1] - tc_history[-2]) < tolerance:
                logger.info("TC bound converged after %d iterations", len(tc_history))
                break
        logger.debug(manager.diagnostics_summary())
    if rollbacks:
        logger.info("%d alpha steps rolled back, final alpha step %.4g", rollbacks, rate)

    logger.info(
        "Fitted %d topics on %d documents x %d words, TC bound %.4f", n_topics, n_docs, n_words, tc_history[-1]
    )
    return CorexModel(
        n_topics=n_topics,
        words=tuple(words),
        vocab_fingerprint=matrix.fingerprint,
        alpha=alpha,
        log_marginals=log_marginals,
        log_prior=log_prior,
        log_word_marginals=log_word_marginals,
        mi=mi,
        joint_counts=counts,
        topic_tc=topic_tc,
        seeds=seeds,
        tc_history=tc_history,
        n_iter=int(n_iter),
        rng_seed=int(rng_seed),
        n_docs=int(n_docs),
    )


def _infer(model: CorexModel, matrix: DocTermMatrix, threads: int) -> List[_ChunkScores]:
    if matrix.fingerprint != model.vocab_fingerprint:
        raise FingerprintMismatchError("Matrix vocabulary does not match the model vocabulary")
    x = sparse.csr_matrix(matrix.matrix, dtype=np.float64)
    base, delta = _evidence_terms(model.alpha, model.log_marginals, model.log_word_marginals)
    scorer = partial(_score_chunk, log_prior2=_log_two_state(model.log_prior), base=base, delta=delta)
    with ThreadManager(max_workers=threads) as manager:
        scored = manager.map_ordered("corex.inference", scorer, [x[rows] for rows in _row_chunks(x.shape[0])])
    for chunk in scored:
        if not np.all(np.isfinite(chunk.log_odds)):
            raise InvariantViolation("Non-finite topic posterior")
    return scored


def posterior(model: CorexModel, matrix: DocTermMatrix, *, threads: int = 1) -> np.ndarray:
    """Return ``p(y_j = 1 | x)`` with shape (n_docs, n_topics); empty rows get the prior.

    Raises:
        FingerprintMismatchError: If the matrix vocabulary is not the model's.
    """
    scored = _infer(model, matrix, threads)
    if not scored:
        return np.zeros((0, model.n_topics))
    return np.concatenate([chunk.posterior for chunk in scored], axis=0)


def label(model: CorexModel, matrix: DocTermMatrix, *, threads: int = 1) -> List[int]:
    """Assign each document the topic with the largest posterior log-odds.

    Ties go to the lowest topic index. Empty documents are labelled from the
    prior; ``matrix.empty_rows()`` flags them.
    """
    scored = _infer(model, matrix, threads)
    if not scored:
        return []
    log_odds = np.concatenate([chunk.log_odds for chunk in scored], axis=0)
    empty = int(matrix.empty_rows().sum())
    if empty:
        logger.warning("%d empty documents labelled from the topic prior", empty)
    return [int(topic) for topic in np.argmax(log_odds, axis=1)]


def top_words(model: CorexModel, topic: int, k: int = 10) -> List[str]:
    """Return up to ``k`` words ranked by mutual information with ``topic``.

    The anchor words of ``topic`` lead, in seed order. Then come the words more
    frequent when the topic is present: first those whose highest-information
    topic is ``topic``, then the others, each in information order. Ties go to
    the lower word index.
    """
    if not 0 <= int(topic) < model.n_topics:
        raise ValueError(f"Topic {topic} outside [0, {model.n_topics})")
    if int(k) < 1:
        raise ValueError(f"k must be >= 1 (got {k})")
    anchored = [word for group_topic, word in model.anchor_pairs() if group_topic == topic]
    scores = model.mi[topic]
    positive = model.log_marginals[topic, :, 1, 1] > model.log_marginals[topic, :, 0, 1]
    positive[anchored] = False
    owned = np.argmax(model.mi, axis=0) == topic
    order = np.lexsort((np.arange(model.n_words), -scores))
    ranked = list(dict.fromkeys(anchored))
    ranked += [int(i) for i in order if positive[i] and owned[i]]
    if len(ranked) < k:
        ranked += [int(i) for i in order if positive[i] and not owned[i]]
    return [model.words[i] for i in ranked[: int(k)]]


def tc_bound(model: CorexModel) -> float:
    """Last total-correlation lower bound of the fit.

    Raises:
        InvariantViolation: If the model never completed an iteration.
    """
    if not model.tc_history:
        raise InvariantViolation("Model has no completed iteration")
    return float(model.tc_history[-1])
