"""Independent oracle implementations used to cross-check the package.

Everything here is written directly from the defining formulas with
plain Python loops, trading speed for obviousness, so tests compare
two separately coded routes.
"""

import itertools
import math

import numpy as np
from scipy.special import gammaln


def naive_log_likelihood(corpus, phi, theta):
    """Triple-loop evaluation of sum n_wd * log(sum_t phi*theta)."""
    total = 0.0
    for d, doc in enumerate(corpus.documents):
        counts = {}
        for w in doc.tokens:
            counts[int(w)] = counts.get(int(w), 0) + 1
        for w, c in sorted(counts.items()):
            p = 0.0
            for t in range(phi.shape[1]):
                p += phi[w, t] * theta[t, d]
            total += c * math.log(p)
    return total


def naive_count_high(values):
    """Double-loop scan for entries strictly above 1 / n_rows."""
    n_words = values.shape[0]
    threshold = 1.0 / n_words
    n_high = 0
    mass = 0.0
    for w in range(values.shape[0]):
        for t in range(values.shape[1]):
            if values[w, t] > threshold:
                n_high += 1
                mass += values[w, t]
    return n_high, mass


def naive_top_words(values):
    """Double-loop union of above-threshold word ids."""
    threshold = 1.0 / values.shape[0]
    out = set()
    for w in range(values.shape[0]):
        for t in range(values.shape[1]):
            if values[w, t] > threshold:
                out.add(w)
    return out


def naive_jaccard_matrix(sets):
    """Full unmirrored pairwise Jaccard computation."""
    n = len(sets)
    out = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            union = sets[i] | sets[j]
            if not union:
                out[i, j] = math.nan
            else:
                out[i, j] = len(sets[i] & sets[j]) / len(union)
    return out


def free_energy_transcribed(prob_mass, n_high, n_words, n_topics):
    """Second transcription of the free-energy formulas.

    energy is the negative log of the normalized above-threshold
    mass, the entropy proxy is the log of the fraction of
    above-threshold cells, and the free energy couples them with a
    factor of n_topics.
    """
    energy = -math.log(prob_mass * (1.0 / n_topics))
    entropy = math.log(n_high) - math.log(n_words * n_topics)
    lam = energy - n_topics * entropy
    return energy, entropy, lam


def shannon_plugin(p):
    """Plain -sum(p log p) over positive entries."""
    total = 0.0
    for x in np.asarray(p).ravel():
        if x > 0:
            total -= x * math.log(x)
    return total


def enumerate_collapsed_posterior(corpus, n_topics, alpha, beta):
    """Exact collapsed posterior over all topic-assignment vectors.

    Probability of an assignment z is proportional to

        prod_d prod_t Gamma(c_dt + alpha) / Gamma(alpha)
      * prod_t [Gamma(N*beta) / Gamma(n_t + N*beta)
                * prod_w Gamma(c_wt + beta) / Gamma(beta)]

    computed by brute-force enumeration (feasible for a handful of
    tokens). Returns a dict mapping each assignment tuple to its
    normalized probability.
    """
    n_words = corpus.n_words
    n_docs = corpus.n_docs
    tokens = [(int(d), int(w)) for d, w in zip(corpus.token_doc, corpus.token_word)]
    n = len(tokens)
    log_weights = {}
    for z in itertools.product(range(n_topics), repeat=n):
        c_wt = np.zeros((n_words, n_topics), dtype=np.int64)
        c_dt = np.zeros((n_docs, n_topics), dtype=np.int64)
        for (d, w), t in zip(tokens, z):
            c_wt[w, t] += 1
            c_dt[d, t] += 1
        n_t = c_wt.sum(axis=0)
        lw = 0.0
        for d in range(n_docs):
            for t in range(n_topics):
                lw += gammaln(c_dt[d, t] + alpha) - gammaln(alpha)
        for t in range(n_topics):
            lw += gammaln(n_words * beta) - gammaln(n_t[t] + n_words * beta)
            for w in range(n_words):
                lw += gammaln(c_wt[w, t] + beta) - gammaln(beta)
        log_weights[z] = lw
    peak = max(log_weights.values())
    weights = {z: math.exp(lw - peak) for z, lw in log_weights.items()}
    total = sum(weights.values())
    return {z: w / total for z, w in weights.items()}


def total_variation(p, q):
    """Total-variation distance between two distributions over dicts."""
    keys = set(p) | set(q)
    return 0.5 * sum(abs(p.get(k, 0.0) - q.get(k, 0.0)) for k in keys)
