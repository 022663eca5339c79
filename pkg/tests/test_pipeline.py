import numpy as np
import pytest

from anchortopics.analytics.similarity import similarity_heatmap
from anchortopics.corpus.partition import CorpusPartition
from anchortopics.corpus.synthetic import planted_corpus
from anchortopics.errors import ConfigurationError
from anchortopics.model.corex import top_words
from anchortopics.model.seeds import SeedSet, save_seed_set
from anchortopics.pipeline.config import PipelineConfig, SeedMode, load_pipeline_config
from anchortopics.pipeline.manifest import build_manifest, write_manifest
from anchortopics.pipeline.two_tier import extract_seed_keywords, prepare_corpus, run_two_tier
from anchortopics.text.tokenizer import TokenizerConfig

N_TOPICS = 5
N_OFFICIAL = 100


def _config(**overrides):
    values = dict(n_topics=N_TOPICS, n_iter=100, top_k=10, rng_seed=0)
    values.update(overrides)
    return PipelineConfig(**values)


def _jaccard(left, right):
    left, right = set(left), set(right)
    return len(left & right) / len(left | right)


def _heatmap(result, n_topics=N_TOPICS):
    return similarity_heatmap(
        result.official.tokens, result.official_labels, result.public.tokens, result.public_labels, n_topics
    )


@pytest.fixture(scope="module")
def planted_tiers(tmp_path_factory):
    corpus = planted_corpus(n_docs=1000, n_topics=N_TOPICS, words_per_topic=20, n_noise=50, rng_seed=1)
    curated = SeedSet(groups=tuple(tuple(group) for group in corpus.anchors(1)))
    seeds_path = save_seed_set(tmp_path_factory.mktemp("seeds") / "seeds.txt", curated)
    partition = CorpusPartition(official=corpus.records[:N_OFFICIAL], public=corpus.records[N_OFFICIAL:])
    cfg = _config(seeds_path=seeds_path)
    result = run_two_tier(partition, cfg)
    return corpus, curated, partition, cfg, result


def test_extracted_seeds_mirror_official_top_words(planted_tiers):
    _, _, _, _, result = planted_tiers
    assert len(result.extracted_seeds) == N_TOPICS
    for topic, group in enumerate(result.extracted_seeds.groups):
        assert 1 <= len(group) <= 10
        assert list(group) == top_words(result.official_model, topic, 10)
    assert result.public_seeds is result.extracted_seeds


def test_public_topics_follow_official_topics(planted_tiers):
    corpus, curated, _, _, result = planted_tiers
    assert result.official_model.seeds == curated
    for topic in range(N_TOPICS):
        official_top = top_words(result.official_model, topic, 10)
        public_top = top_words(result.public_model, topic, 10)
        assert _jaccard(official_top, public_top) >= 0.5
        assert len(set(public_top) & set(corpus.vocabularies[topic])) >= 8
    official_accuracy = np.mean(np.asarray(result.official_labels) == np.asarray(corpus.topics[:N_OFFICIAL]))
    public_accuracy = np.mean(np.asarray(result.public_labels) == np.asarray(corpus.topics[N_OFFICIAL:]))
    assert official_accuracy >= 0.9
    assert public_accuracy >= 0.9


def test_labels_align_with_corpora(planted_tiers):
    _, _, partition, _, result = planted_tiers
    assert len(result.official_labels) == len(partition.official)
    assert len(result.public_labels) == len(partition.public)
    assert result.public.matrix.doc_ids == [record.id for record in partition.public]


def test_heatmap_diagonal_dominates_on_tiered_results(planted_tiers):
    _, _, _, _, result = planted_tiers
    heatmap = _heatmap(result)
    assert heatmap.diagonal_dominance() == 1.0
    off_diagonal = ~np.eye(N_TOPICS, dtype=bool)
    assert np.diag(heatmap.values).mean() >= heatmap.values[off_diagonal].mean() + 0.2


def test_same_posts_on_both_tiers_give_a_unit_diagonal():
    corpus = planted_corpus(n_docs=300, n_topics=3, rng_seed=5)
    curated = SeedSet(groups=tuple(tuple(group) for group in corpus.anchors(1)))
    partition = CorpusPartition(official=corpus.records, public=corpus.records)
    result = run_two_tier(partition, _config(n_topics=3, public_min_df=1), curated)
    assert result.official_labels == result.public_labels
    heatmap = _heatmap(result, n_topics=3)
    assert np.allclose(np.diag(heatmap.values), 1.0, rtol=0.0, atol=1e-9)


def test_two_tier_is_deterministic(planted_tiers):
    _, _, partition, cfg, result = planted_tiers
    again = run_two_tier(partition, cfg)
    assert again.public_labels == result.public_labels
    assert again.extracted_seeds == result.extracted_seeds
    assert np.array_equal(again.public_model.alpha, result.public_model.alpha)
    assert again.official_model.tc_history == result.official_model.tc_history


def test_extracted_plus_curated_mode_keeps_curated_words(planted_tiers):
    _, curated, partition, cfg, _ = planted_tiers
    result = run_two_tier(partition, _config(n_iter=20, seed_mode=SeedMode.EXTRACTED_PLUS_CURATED), curated)
    for topic, group in enumerate(curated.groups):
        assert set(group) <= set(result.public_seeds.groups[topic])


def test_extract_seed_keywords_shape(planted_tiers):
    _, _, _, _, result = planted_tiers
    seeds = extract_seed_keywords(result.official_model, 3)
    assert len(seeds) == N_TOPICS
    assert all(len(group) == 3 for group in seeds.groups)
    assert seeds.anchor_strength == result.official_model.seeds.anchor_strength


def test_stopword_seed_keeps_its_column(planted_tiers):
    corpus, _, _, _, _ = planted_tiers
    tokenizer = TokenizerConfig(stopwords=frozenset({"a1", "b1"}))
    plain = prepare_corpus(corpus.records[:50], tokenizer, min_df=1, max_vocab=1000)
    assert "a1" not in plain.matrix.vocabulary.index
    seeded = prepare_corpus(corpus.records[:50], tokenizer, min_df=1, max_vocab=1000, force_include=["a1"])
    column = seeded.matrix.vocabulary.index["a1"]
    expected = sum("a1" in record.text.split() for record in corpus.records[:50])
    assert expected > 0
    assert seeded.matrix.matrix[:, column].sum() == expected
    assert "b1" not in seeded.matrix.vocabulary.index


def test_empty_partition_is_rejected(planted_tiers):
    _, curated, partition, _, _ = planted_tiers
    with pytest.raises(ConfigurationError):
        run_two_tier(CorpusPartition(official=partition.official, public=[]), _config(), curated)


def test_too_many_seed_groups_rejected(planted_tiers):
    _, _, partition, _, _ = planted_tiers
    seeds = SeedSet(groups=tuple((f"a{i}",) for i in range(1, N_TOPICS + 2)))
    with pytest.raises(ConfigurationError):
        run_two_tier(partition, _config(), seeds)


def test_default_configuration_matches_reference_setup(tmp_path):
    cfg = load_pipeline_config({})
    assert (cfg.n_topics, cfg.n_iter, cfg.top_k) == (20, 100, 10)
    assert cfg.seed_mode is SeedMode.EXTRACTED_ONLY
    assert cfg.anchor_strength == 2.0
    manifest = build_manifest(cfg.to_dict(), {"official": 0, "public": 0})
    path = write_manifest(tmp_path / "manifest.json", manifest)
    assert path.exists()
    assert manifest["config"]["n_topics"] == 20
    assert manifest["config"]["n_iter"] == 100


def test_invalid_settings_rejected():
    with pytest.raises(ConfigurationError):
        load_pipeline_config({"MODEL": {"top_k": 0}})
    with pytest.raises(ConfigurationError):
        load_pipeline_config({"MODEL": {"seed_mode": "both"}})
    with pytest.raises(ConfigurationError):
        load_pipeline_config({"CORPUS": {"window_start": "March"}})
    with pytest.raises(ConfigurationError):
        load_pipeline_config({"MODEL": {"n_topics": "many"}})
