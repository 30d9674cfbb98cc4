"""Corpus ingestion and representation.

Two input routes produce the same immutable :class:`Corpus`: plain text
(one document per line) and the UCI sparse bag-of-words pair
(docword + vocab files). Token order inside a document is preserved for
the plain-text route; the UCI route expands each count into consecutive
repeats, so only per-document multisets survive a round trip.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

# Maximal runs of Unicode alphanumerics, underscore excluded.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

# Tokens shorter than this are dropped by the plain-text tokenizer.
MIN_TOKEN_LEN = 2


class Vocabulary:
    """Immutable word list; word ids are positions in the list."""

    __slots__ = ("words", "index")

    def __init__(self, words: Iterable[str]):
        object.__setattr__(self, "words", tuple(words))
        object.__setattr__(
            self, "index", {w: i for i, w in enumerate(self.words)}
        )
        if len(self.index) != len(self.words):
            raise ValueError("vocabulary contains duplicate words")
        if not self.words:
            raise ValueError("vocabulary is empty")
        for w in self.words:
            if not w:
                raise ValueError("vocabulary contains an empty word")

    def __setattr__(self, name, value):
        raise AttributeError("Vocabulary is immutable")

    @property
    def size(self) -> int:
        return len(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __getitem__(self, word_id: int) -> str:
        return self.words[word_id]

    def __contains__(self, word: str) -> bool:
        return word in self.index

    def __eq__(self, other) -> bool:
        return isinstance(other, Vocabulary) and self.words == other.words

    def __hash__(self) -> int:
        return hash(self.words)

    def __repr__(self) -> str:
        return f"Vocabulary(size={self.size})"


@dataclass(frozen=True)
class Document:
    """One document as an array of word ids, in reading order."""

    id: int
    tokens: np.ndarray

    @property
    def length(self) -> int:
        return int(self.tokens.shape[0])


class Corpus:
    """Immutable tokenized document collection.

    Besides the per-document views, the constructor precomputes flat
    token arrays (`token_word`, `token_doc`) and document offsets
    (`doc_start`, `doc_end`, `doc_lengths`) so that model fits never
    rebuild them. All arrays are read-only.
    """

    __slots__ = (
        "documents",
        "vocabulary",
        "token_word",
        "token_doc",
        "doc_start",
        "doc_end",
        "doc_lengths",
    )

    def __init__(
        self, token_lists: Sequence[Sequence[int]], vocabulary: Vocabulary
    ):
        if len(token_lists) == 0:
            raise ValueError("corpus has no documents")
        n_words = vocabulary.size
        docs = []
        flat_word = []
        lengths = np.empty(len(token_lists), dtype=np.int64)
        for d, toks in enumerate(token_lists):
            arr = np.asarray(toks, dtype=np.int32)
            if arr.ndim != 1 or arr.shape[0] == 0:
                raise ValueError(f"document {d} is empty")
            if arr.min() < 0 or arr.max() >= n_words:
                raise ValueError(f"document {d} has out-of-range word ids")
            arr.setflags(write=False)
            docs.append(Document(id=d, tokens=arr))
            flat_word.append(arr)
            lengths[d] = arr.shape[0]

        token_word = np.concatenate(flat_word).astype(np.int32)
        token_doc = np.repeat(
            np.arange(len(docs), dtype=np.int32), lengths
        )
        doc_end = np.cumsum(lengths)
        doc_start = doc_end - lengths
        for a in (token_word, token_doc, doc_start, doc_end, lengths):
            a.setflags(write=False)

        object.__setattr__(self, "documents", tuple(docs))
        object.__setattr__(self, "vocabulary", vocabulary)
        object.__setattr__(self, "token_word", token_word)
        object.__setattr__(self, "token_doc", token_doc)
        object.__setattr__(self, "doc_start", doc_start)
        object.__setattr__(self, "doc_end", doc_end)
        object.__setattr__(self, "doc_lengths", lengths)

    def __setattr__(self, name, value):
        raise AttributeError("Corpus is immutable")

    @property
    def n_docs(self) -> int:
        return len(self.documents)

    @property
    def n_words(self) -> int:
        return self.vocabulary.size

    @property
    def total_tokens(self) -> int:
        return int(self.token_word.shape[0])

    def word_counts(self) -> np.ndarray:
        """Corpus-wide occurrence count per word id."""
        return np.bincount(self.token_word, minlength=self.n_words).astype(
            np.int64
        )

    def __repr__(self) -> str:
        return (
            f"Corpus(docs={self.n_docs}, words={self.n_words}, "
            f"tokens={self.total_tokens})"
        )


def corpus_from_tokens(docs: Sequence[Sequence[str]]) -> Corpus:
    """Build a corpus from pre-tokenized documents.

    The vocabulary is assembled in first-occurrence order. Documents
    must be nonempty; tokens are used verbatim (no case folding or
    filtering happens here).
    """
    index: dict[str, int] = {}
    token_lists = []
    for toks in docs:
        ids = []
        for tok in toks:
            word_id = index.get(tok)
            if word_id is None:
                word_id = len(index)
                index[tok] = word_id
            ids.append(word_id)
        token_lists.append(ids)
    if not index:
        raise ValueError("no tokens in any document")
    vocab = Vocabulary(index.keys())
    return Corpus(token_lists, vocab)


def _read_stopwords(path: str | Path) -> frozenset[str]:
    with open(path, encoding="utf-8") as fh:
        return frozenset(
            line.strip().lower() for line in fh if line.strip()
        )


def load_plain_text(
    path: str | Path, stopwords_path: str | Path | None = None
) -> Corpus:
    """Load a corpus from a text file with one document per line.

    Lines are lowercased and split into maximal alphanumeric runs.
    Tokens shorter than two characters and stopwords are dropped;
    documents left empty after filtering are skipped. The vocabulary
    keeps first-occurrence order.

    Raises ValueError if no document survives filtering.
    """
    stop = _read_stopwords(stopwords_path) if stopwords_path else frozenset()
    docs: list[list[str]] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            toks = [
                t
                for t in _TOKEN_RE.findall(line.lower())
                if len(t) >= MIN_TOKEN_LEN and t not in stop
            ]
            if toks:
                docs.append(toks)
    if not docs:
        raise ValueError(f"no nonempty documents in {path}")
    return corpus_from_tokens(docs)


def load_uci_bow(
    docword_path: str | Path, vocab_path: str | Path
) -> Corpus:
    """Load a corpus from UCI sparse bag-of-words files.

    The docword file holds three header integers (documents, vocabulary
    size, number of triples) followed by whitespace-separated
    ``docID wordID count`` triples with 1-based ids. Each triple is
    expanded into `count` consecutive tokens, so tokens within a
    document appear grouped by triple order.

    Raises ValueError for a vocabulary size mismatch, malformed or
    out-of-range triples, an empty body, or documents that receive no
    tokens.
    """
    with open(vocab_path, encoding="utf-8") as fh:
        raw = [line.strip() for line in fh]
    while raw and not raw[-1]:
        raw.pop()
    if any(not w for w in raw):
        raise ValueError(f"blank entry in vocabulary file {vocab_path}")
    vocab = Vocabulary(raw)

    with open(docword_path, encoding="utf-8") as fh:
        try:
            fields = [int(tok) for tok in fh.read().split()]
        except ValueError as exc:
            raise ValueError(
                f"non-integer field in docword file {docword_path}"
            ) from exc
    if len(fields) < 3:
        raise ValueError(f"missing header in docword file {docword_path}")
    n_docs, n_words, nnz = fields[:3]
    body = fields[3:]
    if n_docs < 1:
        raise ValueError("docword header declares no documents")
    if n_words != vocab.size:
        raise ValueError(
            f"docword header declares {n_words} words but vocabulary "
            f"file has {vocab.size}"
        )
    if nnz < 1:
        raise ValueError("docword file has an empty body")
    if len(body) != 3 * nnz:
        raise ValueError(
            f"docword body has {len(body)} fields, expected {3 * nnz}"
        )

    token_lists: list[list[int]] = [[] for _ in range(n_docs)]
    for i in range(nnz):
        doc_id, word_id, count = body[3 * i : 3 * i + 3]
        if not 1 <= doc_id <= n_docs:
            raise ValueError(f"triple {i}: document id {doc_id} out of range")
        if not 1 <= word_id <= n_words:
            raise ValueError(f"triple {i}: word id {word_id} out of range")
        if count < 1:
            raise ValueError(f"triple {i}: count {count} is not positive")
        token_lists[doc_id - 1].extend([word_id - 1] * count)
    for d, toks in enumerate(token_lists):
        if not toks:
            raise ValueError(f"document {d + 1} has no triples")
    return Corpus(token_lists, vocab)


def save_uci_bow(
    corpus: Corpus, docword_path: str | Path, vocab_path: str | Path
) -> None:
    """Write a corpus as UCI sparse bag-of-words files.

    Triples are emitted document-major with ascending word ids and
    1-based indices, so a reload preserves every per-document token
    multiset (order within documents is not kept).
    """
    lines = []
    for doc in corpus.documents:
        words, counts = np.unique(doc.tokens, return_counts=True)
        for w, c in zip(words, counts):
            lines.append(f"{doc.id + 1} {w + 1} {c}")
    with open(docword_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{corpus.n_docs}\n{corpus.n_words}\n{len(lines)}\n")
        fh.write("\n".join(lines))
        if lines:
            fh.write("\n")
    with open(vocab_path, "w", encoding="utf-8", newline="\n") as fh:
        for word in corpus.vocabulary.words:
            fh.write(word + "\n")
