from datetime import date, datetime, timezone
from pathlib import Path

import pytest

from anchortopics.corpus.partition import AccountList, StudyWindow, partition
from anchortopics.corpus.records import Microblog, parse_records
from anchortopics.errors import ConfigurationError

DATA_DIR = Path(__file__).parent / "data"


def _post(post_id, author, text, mentions=(), day=date(2020, 4, 1)):
    return Microblog(
        id=post_id,
        timestamp=datetime(day.year, day.month, day.day, 12, tzinfo=timezone.utc),
        author=author,
        text=text,
        mentions=tuple(mentions),
    )


def test_shipped_accounts():
    officials = AccountList.from_file()
    assert len(officials) == 4
    assert "@cyrilramaphosa" in officials
    assert "NICD_SA" in officials


def test_sample_fixture_partition_counts():
    records = parse_records(DATA_DIR / "sample_posts.jsonl").records
    result = partition(records, AccountList.from_file(), StudyWindow())
    assert result.counts() == {"official": 3, "public": 5, "dropped": 2, "out_of_window": 0}


def test_window_bounds_are_inclusive():
    officials = AccountList.from_handles(["HealthZA"])
    window = StudyWindow(date(2020, 3, 1), date(2020, 5, 17))
    records = [
        _post("a", "HealthZA", "first day", day=date(2020, 3, 1)),
        _post("b", "HealthZA", "last day", day=date(2020, 5, 17)),
        _post("c", "HealthZA", "too late", day=date(2020, 5, 18)),
    ]
    result = partition(records, officials, window)
    assert [record.id for record in result.official] == ["a", "b"]
    assert result.dropped == 1
    assert result.out_of_window == 1


def test_official_author_wins_over_mention():
    officials = AccountList.from_handles(["HealthZA", "nicd_sa"])
    result = partition([_post("x", "HealthZA", "hi @nicd_sa", ["nicd_sa"])], officials, StudyWindow())
    assert len(result.official) == 1
    assert not result.public


def test_empty_input_partitions_to_nothing():
    result = partition([], AccountList.from_handles(["HealthZA"]), StudyWindow())
    assert result.counts() == {"official": 0, "public": 0, "dropped": 0, "out_of_window": 0}


def test_invalid_window_and_empty_accounts_rejected():
    with pytest.raises(ConfigurationError):
        StudyWindow(date(2020, 5, 1), date(2020, 3, 1))
    with pytest.raises(ConfigurationError):
        AccountList.from_handles(["", "@"])
