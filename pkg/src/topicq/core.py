"""Shared model types, seeded randomness, and the common fit entry point.

All randomness in the package flows through :func:`seeded_rng`, a
counter-based generator keyed by a 64-bit mix of user-supplied
integers. Identical inputs therefore give bit-identical fits on any
platform with IEEE-754 doubles.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import TYPE_CHECKING, Optional

import numpy as np

if TYPE_CHECKING:
    from .corpus import Corpus

_MASK64 = (1 << 64) - 1

# Tolerance for the column-stochastic checks on fitted matrices.
COLUMN_SUM_TOL = 1e-9

# Significant digits used by the CSV matrix exports.
_CSV_DIGITS = 12


class Model(enum.Enum):
    """Inference algorithm selector."""

    PLSA = "plsa"
    VLDA = "vlda"
    LDA_GS = "lda-gs"
    GLDA = "glda"


def mix64(*values: int) -> int:
    """Mix integers into a single 64-bit value.

    Chained SplitMix64 finalizer: each input is added to the running
    state, which is then scrambled by the standard shift/multiply
    rounds. Used to derive independent generator keys from structured
    inputs such as (base_seed, topic_count, run).
    """
    h = 0
    for v in values:
        h = (h + (int(v) & _MASK64)) & _MASK64
        h ^= h >> 30
        h = (h * 0xBF58476D1CE4E5B9) & _MASK64
        h ^= h >> 27
        h = (h * 0x94D049BB133111EB) & _MASK64
        h ^= h >> 31
    return h


def seeded_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Deterministic generator for a (seed, stream) pair.

    Counter-based Philox keyed with ``mix64(seed, stream)``; distinct
    pairs give statistically independent streams and the same pair
    always reproduces the same sequence.
    """
    return np.random.Generator(np.random.Philox(key=mix64(seed, stream)))


@dataclass(frozen=True)
class ModelConfig:
    """Configuration shared by all four inference algorithms.

    `alpha` smooths the document-topic distributions and `beta` the
    topic-word distributions. When left unset they resolve to the
    common collapsed-sampler convention, alpha = 50 / topics and
    beta = 0.01; the resolved values are stored so every output can
    report them. `glda_region` is the half-width of the assignment
    window used by the windowed sampler and is ignored by the other
    models; 0 reduces that sampler to plain per-token sampling.
    `argmax_selection` switches the samplers from drawing a topic to
    taking the highest-weight topic (ties break to the lowest index).
    """

    model: Model
    topics: int
    alpha: Optional[float] = None
    beta: Optional[float] = None
    iterations: int = 100
    seed: int = 0
    glda_region: int = 2
    argmax_selection: bool = False

    def __post_init__(self):
        if not isinstance(self.model, Model):
            raise ValueError(f"model must be a Model, got {self.model!r}")
        if not isinstance(self.topics, int) or self.topics < 1:
            raise ValueError(f"topics must be a positive int, got {self.topics!r}")
        if self.alpha is None:
            object.__setattr__(self, "alpha", 50.0 / self.topics)
        if self.beta is None:
            object.__setattr__(self, "beta", 0.01)
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        if not self.alpha > 0.0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if not self.beta > 0.0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if not isinstance(self.iterations, int) or self.iterations < 1:
            raise ValueError(
                f"iterations must be a positive int, got {self.iterations!r}"
            )
        if not isinstance(self.seed, int):
            raise ValueError(f"seed must be an int, got {self.seed!r}")
        if not isinstance(self.glda_region, int) or self.glda_region < 0:
            raise ValueError(
                f"glda_region must be a nonnegative int, got {self.glda_region!r}"
            )


def _as_stochastic(values: np.ndarray, axis_name: str) -> np.ndarray:
    v = np.ascontiguousarray(values, dtype=np.float64)
    if v.ndim != 2 or v.shape[0] == 0 or v.shape[1] == 0:
        raise ValueError(f"expected a nonempty 2-d array, got shape {values.shape!r}")
    if not np.isfinite(v).all():
        raise ValueError("matrix has non-finite entries")
    if v.min() < 0.0 or v.max() > 1.0:
        raise ValueError("matrix entries must lie in [0, 1]")
    sums = v.sum(axis=0)
    err = np.abs(sums - 1.0).max()
    if err > COLUMN_SUM_TOL:
        raise ValueError(
            f"each {axis_name} must sum to 1 within {COLUMN_SUM_TOL}, "
            f"worst deviation {err:.3e}"
        )
    v.setflags(write=False)
    return v


@dataclass(frozen=True)
class PhiMatrix:
    """Word-topic probabilities, shape (n_words, n_topics).

    Column t is the word distribution of topic t; columns sum to 1
    within a small tolerance. The wrapped array is made read-only.
    """

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "values", _as_stochastic(self.values, "topic column")
        )

    @property
    def n_words(self) -> int:
        return self.values.shape[0]

    @property
    def n_topics(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class ThetaMatrix:
    """Topic-document probabilities, shape (n_topics, n_docs).

    Column d is the topic distribution of document d; columns sum to 1
    within a small tolerance. The wrapped array is made read-only.
    """

    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "values", _as_stochastic(self.values, "document column")
        )

    @property
    def n_topics(self) -> int:
        return self.values.shape[0]

    @property
    def n_docs(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class FitResult:
    """Output of one model fit.

    `loglik_trace` is present for the EM models only and holds the
    objective each model maximizes, evaluated after every iteration:
    the data log-likelihood for PLSA and the smoothed (penalized)
    log-likelihood for VLDA.
    """

    phi: PhiMatrix
    theta: ThetaMatrix
    loglik_trace: Optional[np.ndarray]
    config: ModelConfig

    def __post_init__(self):
        if self.phi.n_topics != self.theta.n_topics:
            raise ValueError(
                f"phi has {self.phi.n_topics} topics but theta has "
                f"{self.theta.n_topics}"
            )
        if self.phi.n_topics != self.config.topics:
            raise ValueError(
                f"matrices have {self.phi.n_topics} topics but config "
                f"declares {self.config.topics}"
            )
        if self.loglik_trace is not None:
            trace = np.asarray(self.loglik_trace, dtype=np.float64)
            trace.setflags(write=False)
            object.__setattr__(self, "loglik_trace", trace)


def check_fit_args(corpus: "Corpus", config: ModelConfig) -> None:
    """Validate a (corpus, config) pair before fitting."""
    if corpus.n_docs < 1:
        raise ValueError("corpus has no documents")
    if config.topics > corpus.n_words:
        raise ValueError(
            f"requested {config.topics} topics but the vocabulary has "
            f"only {corpus.n_words} words"
        )


def fit(corpus: "Corpus", config: ModelConfig) -> FitResult:
    """Fit the model selected by `config.model` on `corpus`.

    Dispatches to the matching algorithm. Rejects configurations that
    request more topics than there are vocabulary words.
    """
    check_fit_args(corpus, config)
    from . import em, gibbs

    if config.model is Model.PLSA:
        return em.fit_plsa(corpus, config)
    if config.model is Model.VLDA:
        return em.fit_vlda(corpus, config)
    if config.model is Model.LDA_GS:
        return gibbs.fit_lda_gs(corpus, config)
    if config.model is Model.GLDA:
        return gibbs.fit_glda(corpus, config)
    raise ValueError(f"unknown model {config.model!r}")


def _write_rows(path: str | Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(row) + "\n")


def write_phi_csv(path: str | Path, phi: PhiMatrix) -> None:
    """Write word-topic probabilities as CSV.

    One row per word id, columns ``topic_0..topic_{T-1}``, 12
    significant digits, '.' decimal separator, LF line endings.
    """
    header = [f"topic_{t}" for t in range(phi.n_topics)]
    rows = (
        [format(x, f".{_CSV_DIGITS}g") for x in row] for row in phi.values
    )
    _write_rows(path, header, rows)


def write_theta_csv(path: str | Path, theta: ThetaMatrix) -> None:
    """Write topic-document probabilities as CSV.

    One row per document, columns ``topic_0..topic_{T-1}``, 12
    significant digits, '.' decimal separator, LF line endings.
    """
    header = [f"topic_{t}" for t in range(theta.n_topics)]
    rows = (
        [format(x, f".{_CSV_DIGITS}g") for x in row] for row in theta.values.T
    )
    _write_rows(path, header, rows)
