"""Synthetic corpora with known topic structure.

Documents are drawn from the standard generative story: per-topic
word distributions from a symmetric Dirichlet(beta), per-document
topic weights from a symmetric Dirichlet(alpha), then each token picks
a topic and a word. The true word-topic matrix is returned next to
the corpus so recovery can be checked.
"""

from __future__ import annotations

import numpy as np

from .core import PhiMatrix, seeded_rng
from .corpus import Corpus, Vocabulary


def _sample_categorical(cum: np.ndarray, u: np.ndarray, top: int) -> np.ndarray:
    idx = np.searchsorted(cum, u, side="right")
    return np.minimum(idx, top - 1)


def generate_synthetic(
    n_topics: int,
    n_words: int,
    n_docs: int,
    doc_len: int,
    alpha: float,
    beta: float,
    seed: int,
) -> tuple[Corpus, PhiMatrix]:
    """Generate a corpus with planted topics.

    Every document has exactly doc_len tokens. Word ids are labeled
    w0..w{n_words-1}; unused words stay in the vocabulary so the
    matrix shapes match the requested sizes. Returns the corpus and
    the true word-topic matrix (one Dirichlet(beta) column per topic).
    """
    if n_topics < 1 or n_words < 1 or n_docs < 1 or doc_len < 1:
        raise ValueError("all size parameters must be positive")
    if n_topics > n_words:
        raise ValueError(
            f"{n_topics} topics need at least as many words, got {n_words}"
        )
    if not (alpha > 0.0 and beta > 0.0):
        raise ValueError("alpha and beta must be positive")

    rng = seeded_rng(seed)
    true_phi = np.ascontiguousarray(
        rng.dirichlet(np.full(n_words, beta), size=n_topics).T
    )
    cum_phi = np.cumsum(true_phi, axis=0)

    token_lists = []
    for _ in range(n_docs):
        theta = rng.dirichlet(np.full(n_topics, alpha))
        cum_theta = np.cumsum(theta)
        z = _sample_categorical(cum_theta, rng.random(doc_len), n_topics)
        tokens = np.empty(doc_len, dtype=np.int32)
        u = rng.random(doc_len)
        for t in np.unique(z):
            sel = z == t
            tokens[sel] = _sample_categorical(cum_phi[:, t], u[sel], n_words)
        token_lists.append(tokens)

    vocab = Vocabulary(f"w{i}" for i in range(n_words))
    corpus = Corpus(token_lists, vocab)
    return corpus, PhiMatrix(true_phi)
