"""Analysis artifacts: topic timelines, event markers, similarity heatmaps, power-law slope and figures."""

from anchortopics.analytics.events import EventMarker, load_event_markers
from anchortopics.analytics.power_law import power_law_slope
from anchortopics.analytics.similarity import SimilarityMatrix, similarity_heatmap
from anchortopics.analytics.timelines import Source, TimelineSeries, topic_timeline, topic_timelines

__all__ = [
    "EventMarker",
    "SimilarityMatrix",
    "Source",
    "TimelineSeries",
    "load_event_markers",
    "power_law_slope",
    "similarity_heatmap",
    "topic_timeline",
    "topic_timelines",
]
