from datetime import date, datetime, timedelta, timezone

from anchortopics.corpus.records import Microblog
from anchortopics.corpus.stats import corpus_stats, user_counts, week_start
from anchortopics.corpus.synthetic import planted_corpus


def _post(post_id, author, text, when):
    return Microblog(id=post_id, timestamp=when, author=author, text=text)


def test_week_start_is_monday():
    assert week_start(date(2020, 4, 29)) == date(2020, 4, 27)
    assert week_start(date(2020, 4, 27)) == date(2020, 4, 27)


def test_corpus_stats_counts():
    base = datetime(2020, 4, 27, 9, tzinfo=timezone.utc)
    records = [
        _post("1", "alice", "one two three", base),
        _post("2", "alice", "one two", base + timedelta(days=1)),
        _post("3", "bob", "one", base + timedelta(days=7)),
    ]
    stats = corpus_stats(records, top_n=1)
    assert stats.total_posts == 3
    assert stats.unique_users == 2
    assert stats.top_users == [("alice", 2)]
    assert stats.weekly_counts == [(date(2020, 4, 27), 2), (date(2020, 5, 4), 1)]
    assert stats.word_histogram == {1: 1, 2: 1, 3: 1}
    assert stats.to_dict()["weekly_counts"][0] == ["2020-04-27", 2]


def test_empty_stats_are_zeroed():
    stats = corpus_stats([])
    assert stats.total_posts == 0
    assert stats.to_dict()["top_users"] == []


def test_user_counts_ties_by_handle():
    when = datetime(2020, 4, 1, tzinfo=timezone.utc)
    records = [_post(str(i), author, "x", when) for i, author in enumerate(["b", "a", "b", "a", "c"])]
    assert user_counts(records) == [("a", 2), ("b", 2), ("c", 1)]


def test_planted_corpus_is_reproducible():
    first = planted_corpus(n_docs=50, n_topics=3, rng_seed=3)
    second = planted_corpus(n_docs=50, n_topics=3, rng_seed=3)
    assert [record.text for record in first.records] == [record.text for record in second.records]
    for record, topic in zip(first.records, first.topics):
        letter = "abc"[topic]
        assert all(word.startswith((letter, "noise")) for word in record.text.split())
    assert first.anchors(2)[1] == ["b1", "b2"]
