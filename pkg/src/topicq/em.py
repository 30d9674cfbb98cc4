"""EM topic inference.

Two variants share one engine. The maximum-likelihood variant (PLSA)
alternates a responsibility pass with count renormalization; the
smoothed variant (VLDA) adds symmetric Dirichlet pseudo-counts in the
M-step, updating

    phi[w, t]   = (n[w, t] + beta)  / (n[t] + n_words * beta)
    theta[t, d] = (n[t, d] + alpha) / (n[d] + n_topics * alpha)

where the n's are posterior-expected counts. Each fit records the
objective it maximizes after every iteration; for the smoothed variant
that is the data log-likelihood plus the log prior-kernel terms
``beta * sum(log phi) + alpha * sum(log theta)``, which is what EM
guarantees to be non-decreasing (the bare likelihood need not be).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import (
    FitResult,
    ModelConfig,
    PhiMatrix,
    ThetaMatrix,
    check_fit_args,
    seeded_rng,
)
from .corpus import Corpus

# Floor applied to mixture probabilities before taking logs.
MIX_FLOOR = 1e-300

# Largest objective decrease tolerated between consecutive iterations.
MONOTONICITY_TOL = 1e-8

_LL_CHUNK = 1 << 18


class MonotonicityError(RuntimeError):
    """The EM objective decreased by more than the tolerance."""


@dataclass(frozen=True)
class EmWorkspace:
    """Sparse (word, doc, count) triples for one corpus.

    Triples are sorted by document then word id, so kernel loops are
    deterministic. Counts are stored as floats for the kernel's sake.
    """

    word_ids: np.ndarray
    doc_ids: np.ndarray
    counts: np.ndarray
    n_words: int
    n_docs: int

    @classmethod
    def from_corpus(cls, corpus: Corpus) -> "EmWorkspace":
        n_words = corpus.n_words
        key = corpus.token_doc.astype(np.int64) * n_words + corpus.token_word
        uniq, counts = np.unique(key, return_counts=True)
        return cls(
            word_ids=(uniq % n_words).astype(np.int64),
            doc_ids=(uniq // n_words).astype(np.int64),
            counts=counts.astype(np.float64),
            n_words=n_words,
            n_docs=corpus.n_docs,
        )


@njit(cache=True)
def _accumulate(word_ids, doc_ids, counts, phi, theta_dt, n_wt, n_dt):
    """Responsibility pass over the sparse triples.

    Reads phi (n_words, n_topics) and theta_dt (n_docs, n_topics),
    adds posterior-expected counts into n_wt and n_dt, and returns the
    data log-likelihood of the matrices as given. The per-topic share
    is computed as mix[t] / p before scaling by the count so that a
    single-topic mixture contributes its count exactly.
    """
    n_topics = phi.shape[1]
    mix = np.empty(n_topics, dtype=np.float64)
    ll = 0.0
    for i in range(word_ids.shape[0]):
        w = word_ids[i]
        d = doc_ids[i]
        c = counts[i]
        p = 0.0
        for t in range(n_topics):
            m = phi[w, t] * theta_dt[d, t]
            mix[t] = m
            p += m
        if p < MIX_FLOOR:
            p = MIX_FLOOR
        ll += c * np.log(p)
        for t in range(n_topics):
            a = c * (mix[t] / p)
            n_wt[w, t] += a
            n_dt[d, t] += a
    return ll


def _normalize_columns(m: np.ndarray) -> np.ndarray:
    sums = m.sum(axis=0)
    dead = sums <= 0.0
    if dead.any():
        m[:, dead] = 1.0
        sums = m.sum(axis=0)
    return m / sums


def _normalize_rows(m: np.ndarray) -> np.ndarray:
    sums = m.sum(axis=1)
    dead = sums <= 0.0
    if dead.any():
        m[dead, :] = 1.0
        sums = m.sum(axis=1)
    return m / sums[:, None]


def _random_init(rng, n_words, n_topics, n_docs):
    phi = np.ascontiguousarray(
        rng.dirichlet(np.ones(n_words), size=n_topics).T
    )
    theta_dt = rng.dirichlet(np.ones(n_topics), size=n_docs)
    return phi, theta_dt


def _run_em(
    ws: EmWorkspace,
    phi: np.ndarray,
    theta_dt: np.ndarray,
    iterations: int,
    alpha: float | None,
    beta: float | None,
):
    """Run EM from an explicit starting point.

    alpha/beta of None selects the unsmoothed update. Returns the
    final (phi, theta_dt, trace); trace[k] is the objective after
    iteration k+1 and is checked to be non-decreasing.
    """
    smoothed = alpha is not None
    n_wt = np.zeros((ws.n_words, phi.shape[1]))
    n_dt = np.zeros((ws.n_docs, phi.shape[1]))

    def prior_term(phi_m, theta_m):
        if not smoothed:
            return 0.0
        return beta * float(np.log(phi_m).sum()) + alpha * float(
            np.log(theta_m).sum()
        )

    trace = []
    for k in range(iterations):
        n_wt[:] = 0.0
        n_dt[:] = 0.0
        ll = _accumulate(
            ws.word_ids, ws.doc_ids, ws.counts, phi, theta_dt, n_wt, n_dt
        )
        if k > 0:
            trace.append(ll + prior_term(phi, theta_dt))
        if smoothed:
            phi = _normalize_columns(n_wt + beta)
            theta_dt = _normalize_rows(n_dt + alpha)
        else:
            phi = _normalize_columns(n_wt.copy())
            theta_dt = _normalize_rows(n_dt.copy())

    n_wt[:] = 0.0
    n_dt[:] = 0.0
    ll = _accumulate(
        ws.word_ids, ws.doc_ids, ws.counts, phi, theta_dt, n_wt, n_dt
    )
    trace.append(ll + prior_term(phi, theta_dt))

    arr = np.asarray(trace)
    drops = np.diff(arr)
    if drops.size and drops.min() < -MONOTONICITY_TOL:
        raise MonotonicityError(
            f"EM objective decreased by {-drops.min():.3e} "
            f"(tolerance {MONOTONICITY_TOL})"
        )
    return phi, theta_dt, arr


def _fit_em(corpus, config, smoothed: bool) -> FitResult:
    check_fit_args(corpus, config)
    ws = EmWorkspace.from_corpus(corpus)
    rng = seeded_rng(config.seed)
    phi0, theta_dt0 = _random_init(
        rng, ws.n_words, config.topics, ws.n_docs
    )
    alpha = config.alpha if smoothed else None
    beta = config.beta if smoothed else None
    phi, theta_dt, trace = _run_em(
        ws, phi0, theta_dt0, config.iterations, alpha, beta
    )
    return FitResult(
        phi=PhiMatrix(phi),
        theta=ThetaMatrix(theta_dt.T),
        loglik_trace=trace,
        config=config,
    )


def fit_plsa(corpus: Corpus, config: ModelConfig) -> FitResult:
    """Fit the maximum-likelihood EM model.

    Starts from random column-stochastic matrices drawn from the
    seeded generator (phi first, then theta, both Dirichlet(1)) and
    runs `config.iterations` EM rounds. The returned trace holds the
    data log-likelihood after each round.
    """
    return _fit_em(corpus, config, smoothed=False)


def fit_vlda(corpus: Corpus, config: ModelConfig) -> FitResult:
    """Fit the Dirichlet-smoothed EM model.

    Same engine as :func:`fit_plsa` with pseudo-counts config.beta
    (word side) and config.alpha (document side) added in every
    M-step. The trace holds the penalized log-likelihood; as the
    smoothing tends to zero the fit approaches the unsmoothed one from
    the same seed.
    """
    return _fit_em(corpus, config, smoothed=True)


def _matrix_values(m) -> np.ndarray:
    return m.values if hasattr(m, "values") else np.asarray(m, dtype=np.float64)


def log_likelihood(corpus: Corpus, phi, theta) -> float:
    """Data log-likelihood of (phi, theta) on a corpus.

    Computes sum over (word, doc) pairs of count * log(mixture), where
    mixture = sum_t phi[w, t] * theta[t, d]. Always <= 0 for valid
    stochastic matrices. A zero mixture for an observed pair makes the
    result -inf, with a warning.
    """
    phi_m = _matrix_values(phi)
    theta_m = _matrix_values(theta)
    if phi_m.shape[0] != corpus.n_words:
        raise ValueError(
            f"phi has {phi_m.shape[0]} words, corpus has {corpus.n_words}"
        )
    if theta_m.shape[1] != corpus.n_docs:
        raise ValueError(
            f"theta has {theta_m.shape[1]} docs, corpus has {corpus.n_docs}"
        )
    if phi_m.shape[1] != theta_m.shape[0]:
        raise ValueError("phi and theta disagree on the topic count")

    ws = EmWorkspace.from_corpus(corpus)
    theta_dt = np.ascontiguousarray(theta_m.T)
    total = 0.0
    for s in range(0, ws.word_ids.shape[0], _LL_CHUNK):
        w = ws.word_ids[s : s + _LL_CHUNK]
        d = ws.doc_ids[s : s + _LL_CHUNK]
        p = np.einsum("it,it->i", phi_m[w], theta_dt[d])
        if np.any(p <= 0.0):
            warnings.warn(
                "zero mixture probability for an observed pair; "
                "log-likelihood is -inf"
            )
            return float("-inf")
        total += float(np.log(p) @ ws.counts[s : s + _LL_CHUNK])
    return total


def topic_posterior(phi, theta, word_ids, doc_ids) -> np.ndarray:
    """Posterior topic responsibilities for (word, doc) pairs.

    Returns an array of shape (len(word_ids), n_topics) whose rows are
    phi[w, :] * theta[:, d] normalized to sum 1. Raises ValueError if
    any requested pair has zero mixture mass.
    """
    phi_m = _matrix_values(phi)
    theta_m = _matrix_values(theta)
    w = np.asarray(word_ids, dtype=np.int64)
    d = np.asarray(doc_ids, dtype=np.int64)
    raw = phi_m[w] * theta_m[:, d].T
    sums = raw.sum(axis=1)
    if np.any(sums <= 0.0):
        raise ValueError("zero mixture mass for a requested (word, doc) pair")
    return raw / sums[:, None]
