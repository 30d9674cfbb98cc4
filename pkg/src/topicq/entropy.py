"""Entropy diagnostics for fitted word-topic matrices.

A fitted matrix is scored by how far it departs from the uniform
baseline 1/n_words. Entries strictly above that threshold are the
high-probability cells; their count and total mass give a density,
an energy, a free energy, and from those a pair of deformed entropies
with deformation parameter q = 1 / n_topics:

    rho    = n_high / (n_words * n_topics)
    energy = -log(prob_mass / n_topics)
    free   = energy - n_topics * log(rho)
    renyi  = free / (n_topics - 1)
    tsallis = (exp((q - 1) * renyi) - 1) / (q - 1)

Well-separated solutions make both deformed entropies small, so
scanning topic counts and taking the minimum is a model-selection
rule. Direct definitions of both entropies for explicit distributions
are included for cross-checking the transform chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PhiMatrix


class DegenerateSolutionError(ValueError):
    """No word-topic cell exceeds the uniform threshold."""


class EntropyDivergenceError(ValueError):
    """The deformed entropies are undefined at this parameter value."""


def count_high_prob(phi: PhiMatrix | np.ndarray) -> tuple[int, float]:
    """Count cells strictly above uniform and their total mass.

    The threshold is 1 / n_words. Returns (n_high, prob_mass); a
    matrix with no qualifying cell returns (0, 0.0).
    """
    values = phi.values if isinstance(phi, PhiMatrix) else np.asarray(phi)
    mask = values > (1.0 / values.shape[0])
    return int(mask.sum()), float(values[mask].sum())


def density_of_states(n_high: float, n_words: int, n_topics: int) -> float:
    """Fraction of word-topic cells above the uniform threshold."""
    if n_words < 1 or n_topics < 1:
        raise ValueError("n_words and n_topics must be positive")
    return n_high / (n_words * n_topics)


def shannon_from_density(rho: float) -> float:
    """Entropy proxy log(rho) for the above-threshold cell fraction."""
    if rho <= 0.0:
        raise DegenerateSolutionError(
            "no cells above the uniform threshold; log density diverges"
        )
    return math.log(rho)


def free_energy(
    prob_mass: float, n_high: float, n_words: int, n_topics: int
) -> tuple[float, float, float]:
    """Energy, entropy proxy, and free energy of a solution.

    energy = -log(prob_mass / n_topics), entropy = log(rho), and
    free = energy - n_topics * entropy. Raises
    DegenerateSolutionError when nothing lies above the threshold.
    """
    if n_high <= 0 or prob_mass <= 0.0:
        raise DegenerateSolutionError(
            "no probability mass above the uniform threshold"
        )
    rho = density_of_states(n_high, n_words, n_topics)
    energy = -math.log(prob_mass / n_topics)
    entropy = math.log(rho)
    return energy, entropy, energy - n_topics * entropy


def renyi_from_free_energy(free: float, n_topics: int) -> float:
    """Deformed Renyi entropy free / (n_topics - 1), with q = 1/n_topics."""
    if n_topics < 2:
        raise EntropyDivergenceError(
            "the deformed entropy diverges at a single topic (q = 1)"
        )
    return free / (n_topics - 1)


def tsallis_from_renyi(renyi: float, q: float) -> float:
    """Map a Renyi value to the Tsallis scale at deformation q.

    tsallis = (exp((q - 1) * renyi) - 1) / (q - 1); undefined at q = 1.
    """
    if q == 1.0:
        raise EntropyDivergenceError("the map is undefined at q = 1")
    return (math.exp((q - 1.0) * renyi) - 1.0) / (q - 1.0)


def _check_distribution(p: np.ndarray) -> np.ndarray:
    arr = np.asarray(p, dtype=np.float64).ravel()
    if arr.size == 0:
        raise ValueError("empty distribution")
    if not np.isfinite(arr).all() or arr.min() < 0.0:
        raise ValueError("distribution entries must be finite and nonnegative")
    if abs(arr.sum() - 1.0) > 1e-12:
        raise ValueError(
            f"distribution must sum to 1 within 1e-12, got {arr.sum()!r}"
        )
    return arr


def renyi_direct(p, q: float) -> float:
    """Renyi entropy log(sum p_k^q) / (1 - q) of a distribution.

    Zero-probability entries are excluded from the power sum, so
    orders below 1 follow the support-based convention. Orders q <= 0
    require strictly positive entries. Undefined at q = 1.
    """
    arr = _check_distribution(p)
    if q == 1.0:
        raise EntropyDivergenceError("Renyi entropy of order 1 is the limit case")
    support = arr[arr > 0.0]
    if q <= 0.0 and support.size != arr.size:
        raise ValueError("orders q <= 0 need a strictly positive distribution")
    power_sum = float(np.sum(support**q))
    return math.log(power_sum) / (1.0 - q)


def tsallis_direct(p, q: float) -> float:
    """Tsallis entropy (1 - sum p_k^q) / (q - 1) of a distribution.

    Same support and order conventions as :func:`renyi_direct`.
    """
    arr = _check_distribution(p)
    if q == 1.0:
        raise EntropyDivergenceError(
            "Tsallis entropy of order 1 is the limit case"
        )
    support = arr[arr > 0.0]
    if q <= 0.0 and support.size != arr.size:
        raise ValueError("orders q <= 0 need a strictly positive distribution")
    power_sum = float(np.sum(support**q))
    return (1.0 - power_sum) / (q - 1.0)


def classical_shannon(phi: PhiMatrix | np.ndarray) -> float:
    """Shannon entropy of the matrix flattened to one distribution.

    The word-topic matrix is scaled by 1 / n_topics so all cells sum
    to 1, then -sum(p * log p) is taken over the positive cells.
    Reported alongside the deformed entropies for reference.
    """
    values = phi.values if isinstance(phi, PhiMatrix) else np.asarray(phi)
    p = values / values.shape[1]
    p = p[p > 0.0]
    return float(-(p * np.log(p)).sum())


@dataclass(frozen=True)
class EntropyPoint:
    """All diagnostics for one topic count.

    n_high is a float because averaged points hold run means. q is
    always 1 / n_topics.
    """

    n_topics: int
    n_high: float
    rho: float
    prob_mass: float
    energy: float
    free_energy: float
    shannon: float
    shannon_classical: float
    renyi: float
    tsallis: float
    q: float

    def __post_init__(self):
        if self.n_topics < 2:
            raise EntropyDivergenceError(
                "entropy diagnostics need at least two topics"
            )
        if self.n_high < 0:
            raise ValueError("n_high cannot be negative")


def point_from_counts(
    n_topics: int,
    n_words: int,
    n_high: float,
    prob_mass: float,
    shannon_classical: float = math.nan,
) -> EntropyPoint:
    """Assemble an EntropyPoint from threshold statistics.

    Used both for single fits and for run-averaged statistics, so
    n_high may be fractional. Raises DegenerateSolutionError when the
    statistics are empty and EntropyDivergenceError for n_topics < 2.
    """
    if n_topics < 2:
        raise EntropyDivergenceError(
            "entropy diagnostics need at least two topics"
        )
    energy, shannon, free = free_energy(prob_mass, n_high, n_words, n_topics)
    renyi = renyi_from_free_energy(free, n_topics)
    q = 1.0 / n_topics
    return EntropyPoint(
        n_topics=n_topics,
        n_high=float(n_high),
        rho=density_of_states(n_high, n_words, n_topics),
        prob_mass=float(prob_mass),
        energy=energy,
        free_energy=free,
        shannon=shannon,
        shannon_classical=shannon_classical,
        renyi=renyi,
        tsallis=tsallis_from_renyi(renyi, q),
        q=q,
    )


def evaluate_solution(phi: PhiMatrix) -> EntropyPoint:
    """Full diagnostics for one fitted word-topic matrix.

    Raises DegenerateSolutionError if no cell clears the uniform
    threshold and EntropyDivergenceError for single-topic matrices.
    """
    n_high, prob_mass = count_high_prob(phi)
    return point_from_counts(
        phi.n_topics,
        phi.n_words,
        n_high,
        prob_mass,
        shannon_classical=classical_shannon(phi),
    )
