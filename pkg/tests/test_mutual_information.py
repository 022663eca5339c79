import math

import numpy as np
import pytest

from anchortopics.model.information import independence_threshold, mutual_information, mutual_information_tables


def test_perfectly_correlated_table_gives_log_two():
    assert mutual_information([[0.5, 0.0], [0.0, 0.5]]) == pytest.approx(math.log(2.0), abs=1e-12)


def test_independent_table_gives_zero():
    assert mutual_information([[0.25, 0.25], [0.25, 0.25]]) == pytest.approx(0.0, abs=1e-15)
    assert mutual_information([[6.0, 2.0], [3.0, 1.0]]) == pytest.approx(0.0, abs=1e-12)


def test_partially_correlated_table():
    assert mutual_information([[0.4, 0.1], [0.1, 0.4]]) == pytest.approx(0.192745, abs=1e-6)


def test_counts_are_normalized_first():
    assert mutual_information([[40, 10], [10, 40]]) == pytest.approx(mutual_information([[0.4, 0.1], [0.1, 0.4]]))


def test_invalid_tables_rejected():
    with pytest.raises(ValueError):
        mutual_information([[0, 0], [0, 0]])
    with pytest.raises(ValueError):
        mutual_information([[1, -1], [0, 1]])
    with pytest.raises(ValueError):
        mutual_information([1, 2, 3])


def test_vectorized_estimator_matches_scalar():
    rng = np.random.default_rng(7)
    tables = rng.uniform(0.01, 5.0, size=(3, 4, 2, 2))
    batched = mutual_information_tables(tables)
    expected = np.array([[mutual_information(tables[j, i]) for i in range(4)] for j in range(3)])
    assert np.allclose(batched, expected, atol=1e-12)
    assert np.all(batched >= 0.0)


def test_independence_threshold_follows_the_chi_square_tail():
    assert independence_threshold(500) == pytest.approx(10.8276 / 1000.0, rel=1e-4)
    assert independence_threshold(100) == pytest.approx(5.0 * independence_threshold(500))
    assert independence_threshold(500, p_value=0.05) < independence_threshold(500)
    with pytest.raises(ValueError):
        independence_threshold(0)
    with pytest.raises(ValueError):
        independence_threshold(10, p_value=1.0)
