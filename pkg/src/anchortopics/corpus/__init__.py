"""Microblog ingestion, official/public partitioning and exploratory statistics."""

from anchortopics.corpus.partition import AccountList, CorpusPartition, StudyWindow, partition
from anchortopics.corpus.records import Microblog, ParseResult, parse_records, write_records
from anchortopics.corpus.stats import CorpusStats, corpus_stats, user_counts

__all__ = [
    "AccountList",
    "CorpusPartition",
    "CorpusStats",
    "Microblog",
    "ParseResult",
    "StudyWindow",
    "corpus_stats",
    "parse_records",
    "partition",
    "user_counts",
    "write_records",
]
