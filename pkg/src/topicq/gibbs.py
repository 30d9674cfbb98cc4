"""Collapsed Gibbs topic inference.

One kernel serves two models. With a window half-width of zero it is
the classic collapsed sampler: every token's topic is resampled from

    weight[t] = (c[w, t] + beta) / (total[t] + n_words * beta)
              * (c[d, t] + alpha) / (len[d] + alpha * n_topics)

after removing the token's current assignment from the counts (the
document length in the denominator stays fixed). With half-width
r > 0, windows of 2r + 1 consecutive tokens tile each document left to
right; the topic is sampled once per window at its central anchor
token and then assigned to every token in the window. Half-width zero
makes the windowed model bit-identical to the plain one under the same
seed.

All randomness comes from uniforms pre-drawn from the seeded
generator, one per anchor per sweep, consumed in document order.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import (
    FitResult,
    Model,
    ModelConfig,
    PhiMatrix,
    ThetaMatrix,
    check_fit_args,
    seeded_rng,
)
from .corpus import Corpus

# Cap on uniforms drawn per batch of sweeps (in doubles).
_UNIFORM_BATCH = 4_000_000


@dataclass(frozen=True)
class CountTables:
    """Assignment counts for one sampler state.

    word_topic is (n_words, n_topics), doc_topic is (n_docs, n_topics),
    topic_totals and doc_lengths are the corresponding margins, and
    assignments holds the per-token topic ids in corpus order.
    """

    word_topic: np.ndarray
    doc_topic: np.ndarray
    topic_totals: np.ndarray
    doc_lengths: np.ndarray
    assignments: np.ndarray

    def validate(self, corpus: Corpus) -> None:
        """Check internal consistency against a corpus; raises on failure."""
        z = self.assignments
        n_topics = self.word_topic.shape[1]
        if z.shape[0] != corpus.total_tokens:
            raise ValueError("assignment array does not match corpus size")
        if z.min() < 0 or z.max() >= n_topics:
            raise ValueError("assignment out of topic range")
        wt = np.zeros_like(self.word_topic)
        np.add.at(wt, (corpus.token_word, z), 1)
        dt = np.zeros_like(self.doc_topic)
        np.add.at(dt, (corpus.token_doc, z), 1)
        if not np.array_equal(wt, self.word_topic):
            raise ValueError("word_topic does not match assignments")
        if not np.array_equal(dt, self.doc_topic):
            raise ValueError("doc_topic does not match assignments")
        if not np.array_equal(self.word_topic.sum(axis=0), self.topic_totals):
            raise ValueError("topic_totals does not match word_topic")
        if not np.array_equal(self.doc_topic.sum(axis=1), self.doc_lengths):
            raise ValueError("doc_lengths does not match doc_topic")
        if not np.array_equal(self.doc_lengths, corpus.doc_lengths):
            raise ValueError("doc_lengths does not match corpus")


@njit(cache=True)
def _sweep(
    token_word,
    token_doc,
    doc_start,
    doc_end,
    doc_len,
    z,
    c_wt,
    c_dt,
    topic_tot,
    alpha,
    beta,
    region,
    uniforms,
    argmax,
):
    """Run uniforms.shape[0] sweeps in place.

    Windows of width 2 * region + 1 tile each document; the anchor is
    the window's center (clamped into a truncated final window). The
    anchor's assignment is removed from the counts before the weights
    are computed; the sampled topic is then written to the whole
    window. uniforms must be (n_sweeps, n_anchors).
    """
    n_words = c_wt.shape[0]
    n_topics = c_wt.shape[1]
    weights = np.empty(n_topics, dtype=np.float64)
    step = 2 * region + 1
    for s in range(uniforms.shape[0]):
        a_idx = 0
        for d in range(doc_start.shape[0]):
            end = doc_end[d]
            denom_doc = doc_len[d] + alpha * n_topics
            lo = doc_start[d]
            while lo < end:
                hi = lo + step
                if hi > end:
                    hi = end
                anchor = lo + region
                if anchor >= hi:
                    anchor = hi - 1
                w = token_word[anchor]
                old = z[anchor]
                c_wt[w, old] -= 1
                c_dt[d, old] -= 1
                topic_tot[old] -= 1
                total = 0.0
                for t in range(n_topics):
                    val = (
                        (c_wt[w, t] + beta)
                        / (topic_tot[t] + n_words * beta)
                        * (c_dt[d, t] + alpha)
                        / denom_doc
                    )
                    weights[t] = val
                    total += val
                if argmax:
                    new = 0
                    best = weights[0]
                    for t in range(1, n_topics):
                        if weights[t] > best:
                            best = weights[t]
                            new = t
                else:
                    u = uniforms[s, a_idx] * total
                    new = n_topics - 1
                    acc = 0.0
                    for t in range(n_topics):
                        acc += weights[t]
                        if u < acc:
                            new = t
                            break
                z[anchor] = new
                c_wt[w, new] += 1
                c_dt[d, new] += 1
                topic_tot[new] += 1
                for q in range(lo, hi):
                    if q == anchor:
                        continue
                    wq = token_word[q]
                    oldq = z[q]
                    c_wt[wq, oldq] -= 1
                    c_dt[d, oldq] -= 1
                    topic_tot[oldq] -= 1
                    z[q] = new
                    c_wt[wq, new] += 1
                    c_dt[d, new] += 1
                    topic_tot[new] += 1
                a_idx += 1
                lo += step
    return None


def _count_anchors(corpus: Corpus, region: int) -> int:
    step = 2 * region + 1
    return int(np.sum((corpus.doc_lengths + step - 1) // step))


def sample_count_tables(
    corpus: Corpus, config: ModelConfig, region: int | None = None
) -> CountTables:
    """Run the collapsed sampler and return its final count state.

    Assignments start uniform at random from the seeded generator;
    config.iterations full sweeps follow. The window half-width
    defaults to config.glda_region for the windowed model and 0
    otherwise; pass `region` to override.
    """
    check_fit_args(corpus, config)
    if region is None:
        region = config.glda_region if config.model is Model.GLDA else 0
    if region < 0:
        raise ValueError(f"region must be nonnegative, got {region}")
    n_topics = config.topics
    n_words = corpus.n_words
    n_tokens = corpus.total_tokens
    rng = seeded_rng(config.seed)

    z = (rng.random(n_tokens) * n_topics).astype(np.int32)
    np.minimum(z, n_topics - 1, out=z)
    c_wt = np.bincount(
        corpus.token_word.astype(np.int64) * n_topics + z,
        minlength=n_words * n_topics,
    ).reshape(n_words, n_topics)
    c_dt = np.bincount(
        corpus.token_doc.astype(np.int64) * n_topics + z,
        minlength=corpus.n_docs * n_topics,
    ).reshape(corpus.n_docs, n_topics)
    topic_tot = np.bincount(z, minlength=n_topics).astype(np.int64)
    c_wt = c_wt.astype(np.int64)
    c_dt = c_dt.astype(np.int64)

    n_anchors = _count_anchors(corpus, region)
    sweeps_left = config.iterations
    batch = max(1, _UNIFORM_BATCH // max(1, n_anchors))
    while sweeps_left > 0:
        n_sweeps = min(batch, sweeps_left)
        uniforms = rng.random((n_sweeps, n_anchors))
        _sweep(
            corpus.token_word,
            corpus.token_doc,
            corpus.doc_start,
            corpus.doc_end,
            corpus.doc_lengths,
            z,
            c_wt,
            c_dt,
            topic_tot,
            config.alpha,
            config.beta,
            region,
            uniforms,
            config.argmax_selection,
        )
        sweeps_left -= n_sweeps

    return CountTables(
        word_topic=c_wt,
        doc_topic=c_dt,
        topic_totals=topic_tot,
        doc_lengths=corpus.doc_lengths.copy(),
        assignments=z,
    )


def conditional_weights(
    tables: CountTables, word: int, doc: int, config: ModelConfig
) -> np.ndarray:
    """Unnormalized per-topic sampling weights for one (word, doc) slot.

    Mirrors the kernel arithmetic exactly, with the counts as given
    (callers who want the leave-one-out weights must decrement first).
    All entries are strictly positive for positive alpha and beta.
    """
    n_words, n_topics = tables.word_topic.shape
    word_factor = (tables.word_topic[word] + config.beta) / (
        tables.topic_totals + n_words * config.beta
    )
    doc_factor = (tables.doc_topic[doc] + config.alpha) / (
        tables.doc_lengths[doc] + config.alpha * n_topics
    )
    return word_factor * doc_factor


def matrices_from_counts(
    tables: CountTables, alpha: float, beta: float
) -> tuple[PhiMatrix, ThetaMatrix]:
    """Smoothed point estimates from a count state.

    phi[w, t] = (c[w, t] + beta) / (total[t] + n_words * beta) and
    theta[t, d] = (c[d, t] + alpha) / (len[d] + n_topics * alpha).
    """
    n_words, n_topics = tables.word_topic.shape
    phi = (tables.word_topic + beta) / (
        tables.topic_totals + n_words * beta
    )
    theta_dt = (tables.doc_topic + alpha) / (
        tables.doc_lengths + alpha * n_topics
    )[:, None]
    return PhiMatrix(phi), ThetaMatrix(theta_dt.T)


def fit_lda_gs(corpus: Corpus, config: ModelConfig) -> FitResult:
    """Fit by collapsed per-token Gibbs sampling.

    Runs config.iterations sweeps and converts the final counts into
    smoothed matrices. No likelihood trace is recorded.
    """
    tables = sample_count_tables(corpus, config, region=0)
    phi, theta = matrices_from_counts(tables, config.alpha, config.beta)
    return FitResult(phi=phi, theta=theta, loglik_trace=None, config=config)


def fit_glda(corpus: Corpus, config: ModelConfig) -> FitResult:
    """Fit by windowed collapsed Gibbs sampling.

    Like :func:`fit_lda_gs`, but one topic is sampled per window of
    2 * config.glda_region + 1 consecutive tokens and assigned to the
    whole window. Half-width 0 reproduces :func:`fit_lda_gs` exactly.
    """
    tables = sample_count_tables(corpus, config, region=config.glda_region)
    phi, theta = matrices_from_counts(tables, config.alpha, config.beta)
    return FitResult(phi=phi, theta=theta, loglik_trace=None, config=config)
