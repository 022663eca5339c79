"""Tokenization, vocabulary building and binary document-term matrices."""

from anchortopics.text.doc_term import DocTermMatrix, load_matrix, save_matrix, vectorize
from anchortopics.text.tokenizer import TokenizerConfig, tokenize, tokenize_all
from anchortopics.text.vocabulary import Vocabulary, build_vocabulary, load_vocabulary, save_vocabulary

__all__ = [
    "DocTermMatrix",
    "TokenizerConfig",
    "Vocabulary",
    "build_vocabulary",
    "load_matrix",
    "load_vocabulary",
    "save_matrix",
    "save_vocabulary",
    "tokenize",
    "tokenize_all",
    "vectorize",
]
