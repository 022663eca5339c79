import numpy as np
import pytest

from anchortopics.errors import ConfigurationError
from anchortopics.model.corex import fit, label
from anchortopics.model.model_io import MAGIC, load_model, save_model
from anchortopics.model.seeds import SeedSet
from anchortopics.text.doc_term import vectorize
from anchortopics.text.vocabulary import build_vocabulary


@pytest.fixture(scope="module")
def small_model():
    docs = [["flu", "cough"], ["cough", "fever"], ["beer", "wine"], ["wine", "alcohol"], ["flu", "fever"]] * 4
    matrix = vectorize(docs, build_vocabulary(docs))
    model = fit(matrix, SeedSet(groups=(("cough",), ("wine",))), n_topics=3, n_iter=20, rng_seed=1)
    return matrix, model


def test_saved_model_reloads_identically(tmp_path, small_model):
    matrix, model = small_model
    path = save_model(tmp_path / "model.corex", model)
    loaded = load_model(path)
    for name in ("alpha", "log_marginals", "log_prior", "log_word_marginals", "mi", "joint_counts", "topic_tc"):
        assert np.array_equal(getattr(loaded, name), getattr(model, name))
    assert loaded.words == model.words
    assert loaded.vocab_fingerprint == model.vocab_fingerprint
    assert loaded.seeds == model.seeds
    assert loaded.tc_history == model.tc_history
    assert label(loaded, matrix) == label(model, matrix)


def test_saving_twice_gives_identical_bytes(tmp_path, small_model):
    _, model = small_model
    first = save_model(tmp_path / "a.corex", model).read_bytes()
    second = save_model(tmp_path / "b.corex", model).read_bytes()
    assert first == second
    assert first.startswith(MAGIC)


def test_foreign_or_truncated_files_rejected(tmp_path, small_model):
    _, model = small_model
    foreign = tmp_path / "foreign.corex"
    foreign.write_bytes(b"hello\n")
    with pytest.raises(ConfigurationError):
        load_model(foreign)
    data = save_model(tmp_path / "full.corex", model).read_bytes()
    truncated = tmp_path / "truncated.corex"
    truncated.write_bytes(data[: len(data) // 2])
    with pytest.raises(ConfigurationError):
        load_model(truncated)
