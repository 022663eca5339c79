"""Anchored Correlation Explanation topic model, seed sets and model files."""

from anchortopics.model.corex import CorexModel, fit, label, posterior, tc_bound, top_words
from anchortopics.model.information import mutual_information
from anchortopics.model.model_io import load_model, save_model
from anchortopics.model.seeds import SeedSet, load_seed_set, merge_seed_sets, save_seed_set

__all__ = [
    "CorexModel",
    "SeedSet",
    "fit",
    "label",
    "load_model",
    "load_seed_set",
    "merge_seed_sets",
    "mutual_information",
    "posterior",
    "save_model",
    "save_seed_set",
    "tc_bound",
    "top_words",
]
