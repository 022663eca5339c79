import time
from dataclasses import replace

import numpy as np
import pytest
from scipy import sparse
from scipy.special import logsumexp

from anchortopics.corpus.synthetic import planted_corpus
from anchortopics.errors import ConfigurationError, FingerprintMismatchError, InvariantViolation
from anchortopics.model import corex
from anchortopics.model.corex import fit, label, posterior, tc_bound, top_words, topic_orientation
from anchortopics.model.information import mutual_information
from anchortopics.model.seeds import SeedSet
from anchortopics.text.doc_term import DocTermMatrix, vectorize
from anchortopics.text.tokenizer import tokenize_all
from anchortopics.text.vocabulary import Vocabulary, build_vocabulary

A_WORDS = {f"a{i}" for i in range(1, 6)}
B_WORDS = {f"b{i}" for i in range(1, 6)}


def _two_cluster_docs(n_docs=100, seed=11):
    rng = np.random.default_rng(seed)
    docs = []
    for doc in range(n_docs):
        words = sorted(A_WORDS if doc < n_docs // 2 else B_WORDS)
        size = int(rng.integers(2, 5))
        docs.append([words[int(i)] for i in rng.choice(5, size=size, replace=False)])
    return docs


def _random_matrix(n_docs, n_words, seed):
    rng = np.random.default_rng(seed)
    dense = (rng.random((n_docs, n_words)) < 0.5).astype(np.float64)
    vocab = Vocabulary(tuple(f"w{i}" for i in range(n_words)))
    return DocTermMatrix(sparse.csr_matrix(dense), [str(i) for i in range(n_docs)], vocab)


def _smoothed_is_non_decreasing(history, window=5, tolerance=1e-6):
    values = np.asarray(history, dtype=np.float64)
    if values.size > window:
        values = np.convolve(values, np.ones(window) / window, mode="valid")
    return bool(np.all(np.diff(values) >= -tolerance))


@pytest.fixture(scope="module")
def two_cluster():
    docs = _two_cluster_docs()
    vocab = build_vocabulary(docs)
    matrix = vectorize(docs, vocab)
    model = fit(matrix, SeedSet(groups=(("a1",), ("b1",))), n_topics=2, n_iter=100, rng_seed=0)
    return docs, matrix, model


@pytest.fixture(scope="module")
def planted_five():
    corpus = planted_corpus(n_docs=1000, n_topics=5, words_per_topic=20, n_noise=50, rng_seed=1)
    # an arbitrary planted word per topic, not the first one
    anchors = [[words[7]] for words in corpus.vocabularies]
    started = time.perf_counter()
    tokens = tokenize_all(record.text for record in corpus.records)
    matrix = vectorize(tokens, build_vocabulary(tokens, force_include=[w for group in anchors for w in group]))
    model = fit(matrix, SeedSet(groups=tuple(tuple(group) for group in anchors)), n_topics=5, n_iter=100, rng_seed=3)
    elapsed = time.perf_counter() - started
    return corpus, anchors, matrix, model, elapsed


def test_planted_clusters_own_their_top_words(two_cluster):
    _, _, model = two_cluster
    assert set(top_words(model, 0, 5)) <= A_WORDS
    assert set(top_words(model, 1, 5)) <= B_WORDS
    assert tc_bound(model) > 0.0


def test_planted_labels_and_posteriors(two_cluster):
    _, matrix, model = two_cluster
    labels = label(model, matrix)
    assert len(labels) == matrix.n_docs
    accuracy = np.mean([labels[i] == (0 if i < 50 else 1) for i in range(100)])
    assert accuracy >= 0.95
    probs = posterior(model, matrix)
    assert probs.shape == (100, 2)
    assert np.all((probs >= 0.0) & (probs <= 1.0))
    assert probs[0, 0] > probs[0, 1]


def test_single_document_posterior_shape(two_cluster):
    _, matrix, model = two_cluster
    single = vectorize([["a2", "a3"]], matrix.vocabulary)
    assert posterior(model, single).shape == (1, 2)
    assert label(model, single) == [0]


def test_anchor_pinning_and_alpha_range(two_cluster):
    _, matrix, model = two_cluster
    index = matrix.vocabulary.index
    assert model.alpha[0, index["a1"]] == 2.0
    assert model.alpha[1, index["b1"]] == 2.0
    mask = np.ones_like(model.alpha, dtype=bool)
    mask[0, index["a1"]] = False
    mask[1, index["b1"]] = False
    assert np.all((model.alpha[mask] >= 0.0) & (model.alpha[mask] <= 1.0))


def test_marginals_normalize_and_mi_is_consistent(two_cluster):
    _, _, model = two_cluster
    assert np.allclose(logsumexp(model.log_marginals, axis=3), 0.0, atol=1e-12)
    brute = np.array(
        [[mutual_information(model.joint_counts[j, i]) for i in range(model.n_words)] for j in range(model.n_topics)]
    )
    assert np.max(np.abs(brute - model.mi)) < 1e-9
    assert np.all(model.mi >= 0.0)


def test_topics_are_oriented_towards_presence(two_cluster):
    _, matrix, model = two_cluster
    index = matrix.vocabulary.index
    mask = np.zeros_like(model.alpha, dtype=bool)
    mask[0, index["a1"]] = True
    mask[1, index["b1"]] = True
    assert np.all(topic_orientation(model.log_marginals, model.alpha, mask) > 0.0)


def test_tc_history_is_bounded_and_never_regresses(two_cluster):
    _, _, model = two_cluster
    assert 2 <= len(model.tc_history) <= 100
    assert _smoothed_is_non_decreasing(model.tc_history)
    assert model.tc_history[-1] >= model.tc_history[0]


def test_smoothed_history_check_catches_a_drop():
    assert _smoothed_is_non_decreasing([0.0, 1.0, 2.0, 2.0, 2.0, 2.0, 2.0])
    assert not _smoothed_is_non_decreasing([0.0, 1.0, 25.23, 25.1, 25.0, 24.9, 24.8, 24.77])
    assert not _smoothed_is_non_decreasing([1.0, 0.5])


def test_fit_is_deterministic(two_cluster):
    _, matrix, model = two_cluster
    again = fit(matrix, SeedSet(groups=(("a1",), ("b1",))), n_topics=2, n_iter=100, rng_seed=0)
    assert np.array_equal(again.alpha, model.alpha)
    assert again.tc_history == model.tc_history


def test_thread_count_does_not_change_the_fit(monkeypatch):
    monkeypatch.setattr(corex, "CHUNK_SIZE", 16)
    docs = _two_cluster_docs(n_docs=120, seed=5)
    matrix = vectorize(docs, build_vocabulary(docs))
    seeds = SeedSet(groups=(("a1",), ("b1",)))
    single = fit(matrix, seeds, n_topics=3, n_iter=30, rng_seed=9, threads=1)
    pooled = fit(matrix, seeds, n_topics=3, n_iter=30, rng_seed=9, threads=4)
    assert np.array_equal(single.alpha, pooled.alpha)
    assert np.array_equal(single.log_marginals, pooled.log_marginals)
    assert single.tc_history == pooled.tc_history


@pytest.mark.parametrize("n_topics", [1, 2, 20])
def test_independent_columns_have_near_zero_tc(n_topics):
    model = fit(_random_matrix(500, 50, seed=2), SeedSet(groups=()), n_topics=n_topics, n_iter=100, rng_seed=4)
    assert tc_bound(model) < 0.05
    assert _smoothed_is_non_decreasing(model.tc_history)


def test_alpha_step_drops_chance_level_pairs_and_waits_for_unsettled_topics():
    alpha = np.full((3, 4), 0.5)
    mi = np.array(
        [
            [0.30, 0.001, 0.10, 0.0],
            [0.05, 0.002, 0.20, 0.0],
            [0.40, 0.400, 0.40, 0.4],
        ]
    )
    topic_tc = np.array([1.0, 1.0, 0.0])
    updated = corex._update_alpha(alpha, mi, topic_tc, [(0, 3)], 2.0, rate=0.5, chance_mi=0.01)
    assert updated[0, 1] == pytest.approx(0.25)
    assert updated[1, 1] == pytest.approx(0.25)
    assert updated[0, 0] == pytest.approx(0.5 * 0.5 + 0.5 * np.exp(20.0 * (0.30 - 0.40)))
    assert updated[0, 3] == 2.0
    assert np.array_equal(updated[2], alpha[2])
    assert np.all(alpha == 0.5)


def test_empty_document_gets_the_prior(two_cluster):
    _, matrix, model = two_cluster
    empty = vectorize([[], ["a1"]], matrix.vocabulary)
    probs = posterior(model, empty)
    assert np.array_equal(probs[0], np.exp(model.log_prior))
    assert empty.empty_rows().tolist() == [True, False]


def test_identical_topics_tie_to_lowest_index(two_cluster):
    _, matrix, model = two_cluster
    twin = replace(
        model,
        alpha=np.vstack([model.alpha[0], model.alpha[0]]),
        log_marginals=np.stack([model.log_marginals[0], model.log_marginals[0]]),
        log_prior=np.array([model.log_prior[0], model.log_prior[0]]),
    )
    assert set(label(twin, matrix)) == {0}


def test_fingerprint_mismatch_is_fatal(two_cluster):
    _, _, model = two_cluster
    other = vectorize([["a1"]], Vocabulary(("a1", "zzz")))
    with pytest.raises(FingerprintMismatchError):
        posterior(model, other)
    with pytest.raises(FingerprintMismatchError):
        label(model, other)


def test_fit_preconditions(two_cluster):
    _, matrix, _ = two_cluster
    with pytest.raises(ConfigurationError):
        fit(matrix, SeedSet(groups=(("missing",),)), n_topics=2, n_iter=5)
    with pytest.raises(ConfigurationError):
        fit(matrix, SeedSet(groups=(("a1",), ("b1",), ("a2",))), n_topics=2, n_iter=5)
    empty = vectorize([[], []], matrix.vocabulary)
    with pytest.raises(ConfigurationError):
        fit(empty, SeedSet(groups=()), n_topics=2, n_iter=5)


def test_unfitted_model_has_no_bound(two_cluster):
    _, _, model = two_cluster
    with pytest.raises(InvariantViolation):
        tc_bound(replace(model, tc_history=[]))


def test_top_words_truncates_without_padding(two_cluster):
    _, _, model = two_cluster
    words = top_words(model, 0, 50)
    assert len(words) < 50
    assert len(words) == len(set(words))
    with pytest.raises(ValueError):
        top_words(model, 2, 5)


def test_anchors_lead_their_topics_on_planted_corpus(planted_five):
    corpus, anchors, matrix, model, elapsed = planted_five
    for topic, group in enumerate(anchors):
        top = top_words(model, topic, 10)
        assert top[0] == group[0]
        planted = set(corpus.vocabularies[topic])
        assert len(planted.intersection(top)) >= 8
    labels = label(model, matrix)
    accuracy = np.mean(np.asarray(labels) == np.asarray(corpus.topics))
    assert accuracy >= 0.9
    assert elapsed < 10.0


def test_planted_history_never_regresses(planted_five):
    _, _, _, model, _ = planted_five
    assert len(model.tc_history) > 5
    assert _smoothed_is_non_decreasing(model.tc_history)


def test_anchor_leads_even_with_lower_information(two_cluster):
    _, matrix, model = two_cluster
    index = matrix.vocabulary.index
    mi = model.mi.copy()
    mi[0, index["a1"]] = 0.0
    assert top_words(replace(model, mi=mi), 0, 3)[0] == "a1"
