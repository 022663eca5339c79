"""Sparse binary document-term matrices and their text sidecar format.

Sidecar layout: a header line ``<n_docs> <n_words>`` followed by one line per
document listing its sorted column ids separated by spaces (empty line for an
empty document).
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import sparse

from anchortopics.errors import ConfigurationError
from anchortopics.text.vocabulary import Vocabulary


@dataclass
class DocTermMatrix:
    """Binary word-presence matrix, rows aligned with ``doc_ids``."""

    matrix: sparse.csr_matrix
    doc_ids: List[str]
    vocabulary: Vocabulary

    @property
    def n_docs(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def n_words(self) -> int:
        return int(self.matrix.shape[1])

    @property
    def fingerprint(self) -> str:
        return self.vocabulary.fingerprint

    def row(self, i: int) -> Tuple[int, ...]:
        start, end = self.matrix.indptr[i], self.matrix.indptr[i + 1]
        return tuple(int(col) for col in self.matrix.indices[start:end])

    def empty_rows(self) -> np.ndarray:
        return np.diff(self.matrix.indptr) == 0

    def subset(self, rows: Sequence[int]) -> "DocTermMatrix":
        rows = np.asarray(rows, dtype=np.int64)
        return DocTermMatrix(
            matrix=self.matrix[rows],
            doc_ids=[self.doc_ids[int(i)] for i in rows],
            vocabulary=self.vocabulary,
        )


def _csr_from_rows(rows: Sequence[Sequence[int]], n_words: int) -> sparse.csr_matrix:
    indptr = np.zeros(len(rows) + 1, dtype=np.int64)
    for i, cols in enumerate(rows):
        indptr[i + 1] = indptr[i] + len(cols)
    indices = np.fromiter((col for cols in rows for col in cols), dtype=np.int64, count=int(indptr[-1]))
    data = np.ones(indices.shape[0], dtype=np.float64)
    return sparse.csr_matrix((data, indices, indptr), shape=(len(rows), int(n_words)))


def vectorize(
    docs: Sequence[Sequence[str]],
    vocab: Vocabulary,
    doc_ids: Optional[Sequence[str]] = None,
) -> DocTermMatrix:
    """Build the binary incidence matrix; out-of-vocabulary tokens are ignored.

    Empty rows are kept so documents stay aligned with their labels.

    Raises:
        ConfigurationError: If the vocabulary is empty or ids are misaligned.
    """
    if len(vocab) == 0:
        raise ConfigurationError("Cannot vectorize with an empty vocabulary")
    ids = [str(i) for i in range(len(docs))] if doc_ids is None else [str(i) for i in doc_ids]
    if len(ids) != len(docs):
        raise ConfigurationError(f"{len(ids)} document ids for {len(docs)} documents")
    index = vocab.index
    rows = [sorted({index[token] for token in doc if token in index}) for doc in docs]
    return DocTermMatrix(matrix=_csr_from_rows(rows, len(vocab)), doc_ids=ids, vocabulary=vocab)


def save_matrix(path: Union[str, Path], matrix: DocTermMatrix) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"{matrix.n_docs} {matrix.n_words}"]
    lines += [" ".join(str(col) for col in matrix.row(i)) for i in range(matrix.n_docs)]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def load_matrix(
    path: Union[str, Path],
    vocabulary: Vocabulary,
    doc_ids: Optional[Sequence[str]] = None,
) -> DocTermMatrix:
    """Read a sidecar written by :func:`save_matrix`.

    Raises:
        ConfigurationError: If the header disagrees with the body or the vocabulary.
    """
    lines = Path(path).read_text(encoding="utf-8").split("\n")
    n_docs, n_words = (int(value) for value in lines[0].split())
    if n_words != len(vocabulary):
        raise ConfigurationError(f"Matrix has {n_words} columns but vocabulary has {len(vocabulary)} words")
    body = lines[1 : 1 + n_docs]
    if len(body) != n_docs:
        raise ConfigurationError(f"Matrix header announces {n_docs} rows, found {len(body)}")
    rows = [[int(col) for col in line.split()] for line in body]
    if any(col >= n_words for cols in rows for col in cols):
        raise ConfigurationError("Matrix references a column beyond the vocabulary")
    ids = [str(i) for i in range(n_docs)] if doc_ids is None else [str(i) for i in doc_ids]
    return DocTermMatrix(matrix=_csr_from_rows(rows, n_words), doc_ids=ids, vocabulary=vocabulary)
