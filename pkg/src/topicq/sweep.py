"""Topic-count sweeps: fit, score, average, and export.

A sweep fits one model over a grid of topic counts, several
independently seeded runs per count. Every fit is scored with the
entropy diagnostics; per topic count the threshold statistics
(cell count and probability mass) are averaged over the non-degenerate
runs and the entropy chain is recomputed from those averages. Top-word
sets from the first run feed the Jaccard stability artifacts.

Per-cell seeds are derived as mix64(base_seed, topic_count, run), so
any cell can be reproduced in isolation and runs are independent.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .core import Model, ModelConfig, fit, mix64
from .corpus import Corpus
from .entropy import (
    DegenerateSolutionError,
    EntropyPoint,
    classical_shannon,
    count_high_prob,
    point_from_counts,
)
from .invariance import (
    JaccardMatrix,
    TopWordSet,
    diagonal_curve,
    jaccard_matrix,
    ranked_top_words,
    top_words,
)

_FLOAT_FMT = ".12g"
_JACCARD_FMT = ".6f"

_CURVE_COLUMNS = (
    "T",
    "run",
    "n_high",
    "rho",
    "prob_mass",
    "energy",
    "free_energy",
    "shannon",
    "shannon_classical",
    "renyi",
    "tsallis",
)


@dataclass(frozen=True)
class SweepConfig:
    """Grid and model settings for one sweep.

    alpha and beta of None resolve per topic count to the model
    defaults (50 / T and 0.01). output_dir is carried for the CLI's
    sake; run_sweep itself never writes files.
    """

    model: Model
    t_min: int
    t_max: int
    t_step: int = 2
    runs: int = 3
    base_seed: int = 0
    alpha: Optional[float] = None
    beta: Optional[float] = None
    iterations: int = 100
    glda_region: int = 2
    argmax_selection: bool = False
    output_dir: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.model, Model):
            raise ValueError(f"model must be a Model, got {self.model!r}")
        if self.t_min < 2:
            raise ValueError(f"t_min must be at least 2, got {self.t_min}")
        if self.t_max < self.t_min:
            raise ValueError(
                f"t_max ({self.t_max}) must not be below t_min ({self.t_min})"
            )
        if self.t_step < 1:
            raise ValueError(f"t_step must be positive, got {self.t_step}")
        if self.runs < 1:
            raise ValueError(f"runs must be positive, got {self.runs}")

    @property
    def t_values(self) -> tuple[int, ...]:
        return tuple(range(self.t_min, self.t_max + 1, self.t_step))


def derive_seed(base_seed: int, n_topics: int, run: int) -> int:
    """Per-cell seed: 64-bit mix of (base_seed, topic count, run)."""
    return mix64(base_seed, n_topics, run)


@dataclass(frozen=True)
class RunRecord:
    """Diagnostics of one fitted cell.

    point is None when the fit was degenerate (nothing above the
    uniform threshold); the raw statistics are kept either way.
    """

    n_topics: int
    run: int
    seed: int
    alpha: float
    beta: float
    n_high: int
    prob_mass: float
    shannon_classical: float
    point: Optional[EntropyPoint]


@dataclass(frozen=True)
class SweepReport:
    """Everything a finished sweep produced.

    averaged maps each topic count to the entropy chain recomputed
    from run-averaged threshold statistics (None if every run was
    degenerate); runs_used counts the non-degenerate runs behind each
    average. jaccard compares first-run top-word sets across the grid;
    per_run_jaccard holds one matrix per run when runs > 1.
    """

    config: SweepConfig
    n_docs: int
    n_words: int
    n_tokens: int
    records: tuple[RunRecord, ...]
    averaged: dict[int, Optional[EntropyPoint]]
    runs_used: dict[int, int]
    top_sets: dict[tuple[int, int], TopWordSet] = field(repr=False)
    ranked_words: dict[int, tuple[str, ...]] = field(repr=False)
    jaccard: JaccardMatrix = field(repr=False)
    per_run_jaccard: dict[int, JaccardMatrix] = field(repr=False)
    argmin_renyi: Optional[int] = None


def run_sweep(corpus: Corpus, config: SweepConfig) -> SweepReport:
    """Fit the whole grid and collect diagnostics.

    Cells are independent (each has its own derived seed) and are run
    in a fixed order, so the report is deterministic for a given
    corpus and config.
    """
    records: list[RunRecord] = []
    top_sets: dict[tuple[int, int], TopWordSet] = {}
    ranked_words: dict[int, tuple[str, ...]] = {}
    averaged: dict[int, Optional[EntropyPoint]] = {}
    runs_used: dict[int, int] = {}

    for n_topics in config.t_values:
        per_t: list[RunRecord] = []
        for run in range(config.runs):
            seed = derive_seed(config.base_seed, n_topics, run)
            model_config = ModelConfig(
                model=config.model,
                topics=n_topics,
                alpha=config.alpha,
                beta=config.beta,
                iterations=config.iterations,
                seed=seed,
                glda_region=config.glda_region,
                argmax_selection=config.argmax_selection,
            )
            result = fit(corpus, model_config)
            n_high, prob_mass = count_high_prob(result.phi)
            sc = classical_shannon(result.phi)
            try:
                point = point_from_counts(
                    n_topics, corpus.n_words, n_high, prob_mass, sc
                )
            except DegenerateSolutionError:
                point = None
            record = RunRecord(
                n_topics=n_topics,
                run=run,
                seed=seed,
                alpha=model_config.alpha,
                beta=model_config.beta,
                n_high=n_high,
                prob_mass=prob_mass,
                shannon_classical=sc,
                point=point,
            )
            per_t.append(record)
            records.append(record)
            top_sets[(n_topics, run)] = top_words(result.phi)
            if run == 0:
                ranked_words[n_topics] = tuple(
                    corpus.vocabulary[i] for i in ranked_top_words(result.phi)
                )

        good = [r for r in per_t if r.point is not None]
        runs_used[n_topics] = len(good)
        if good:
            averaged[n_topics] = point_from_counts(
                n_topics,
                corpus.n_words,
                float(np.mean([r.n_high for r in good])),
                float(np.mean([r.prob_mass for r in good])),
                float(np.mean([r.shannon_classical for r in good])),
            )
        else:
            averaged[n_topics] = None

    first_run_sets = [top_sets[(t, 0)] for t in config.t_values]
    jac = jaccard_matrix(first_run_sets)
    per_run_jaccard: dict[int, JaccardMatrix] = {}
    if config.runs > 1:
        for run in range(config.runs):
            per_run_jaccard[run] = jaccard_matrix(
                [top_sets[(t, run)] for t in config.t_values]
            )

    argmin: Optional[int] = None
    best = np.inf
    for n_topics in config.t_values:
        point = averaged[n_topics]
        if point is not None and point.renyi < best:
            best = point.renyi
            argmin = n_topics

    return SweepReport(
        config=config,
        n_docs=corpus.n_docs,
        n_words=corpus.n_words,
        n_tokens=corpus.total_tokens,
        records=tuple(records),
        averaged=averaged,
        runs_used=runs_used,
        top_sets=top_sets,
        ranked_words=ranked_words,
        jaccard=jac,
        per_run_jaccard=per_run_jaccard,
        argmin_renyi=argmin,
    )


def _fmt(x: float, fmt: str = _FLOAT_FMT) -> str:
    if isinstance(x, float) and np.isnan(x):
        return ""
    return format(x, fmt)


def _curve_row(
    n_topics: int, run_label: str, n_high, rho, prob_mass, sc, point
) -> list[str]:
    row = [
        str(n_topics),
        run_label,
        _fmt(n_high) if isinstance(n_high, float) else str(n_high),
        _fmt(rho),
        _fmt(prob_mass),
    ]
    if point is None:
        row += ["", "", "", _fmt(sc), "", ""]
    else:
        row += [
            _fmt(point.energy),
            _fmt(point.free_energy),
            _fmt(point.shannon),
            _fmt(sc),
            _fmt(point.renyi),
            _fmt(point.tsallis),
        ]
    return row


def _write_curve_csv(path: Path, report: SweepReport) -> None:
    by_t: dict[int, list[RunRecord]] = {}
    for record in report.records:
        by_t.setdefault(record.n_topics, []).append(record)
    lines = [",".join(_CURVE_COLUMNS)]
    for n_topics in report.config.t_values:
        for record in sorted(by_t[n_topics], key=lambda r: r.run):
            rho = record.n_high / (report.n_words * n_topics)
            lines.append(
                ",".join(
                    _curve_row(
                        n_topics,
                        str(record.run),
                        record.n_high,
                        rho,
                        record.prob_mass,
                        record.shannon_classical,
                        record.point,
                    )
                )
            )
        point = report.averaged[n_topics]
        if point is None:
            lines.append(
                ",".join(
                    _curve_row(n_topics, "avg", 0.0, 0.0, 0.0, np.nan, None)
                )
            )
        else:
            lines.append(
                ",".join(
                    _curve_row(
                        n_topics,
                        "avg",
                        point.n_high,
                        point.rho,
                        point.prob_mass,
                        point.shannon_classical,
                        point,
                    )
                )
            )
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _write_jaccard_csv(path: Path, matrix: JaccardMatrix) -> None:
    lines = ["," + ",".join(str(t) for t in matrix.t_values)]
    for i, t in enumerate(matrix.t_values):
        cells = [
            "" if np.isnan(v) else _fmt(v, _JACCARD_FMT)
            for v in matrix.values[i]
        ]
        lines.append(f"{t}," + ",".join(cells))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _write_diagonal_csv(path: Path, matrix: JaccardMatrix) -> None:
    lines = ["T,value"]
    for t, v in diagonal_curve(matrix):
        lines.append(f"{t}," + ("" if np.isnan(v) else _fmt(v, _JACCARD_FMT)))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def _manifest(report: SweepReport) -> dict:
    config = report.config
    return {
        "tool_version": __version__,
        "model": config.model.value,
        "t_min": config.t_min,
        "t_max": config.t_max,
        "t_step": config.t_step,
        "runs": config.runs,
        "base_seed": config.base_seed,
        "alpha": config.alpha,
        "beta": config.beta,
        "iterations": config.iterations,
        "glda_region": config.glda_region,
        "argmax_selection": config.argmax_selection,
        "corpus": {
            "n_docs": report.n_docs,
            "n_words": report.n_words,
            "n_tokens": report.n_tokens,
        },
        "cells": [
            {
                "t": record.n_topics,
                "run": record.run,
                "seed": record.seed,
                "alpha": record.alpha,
                "beta": record.beta,
                "degenerate": record.point is None,
            }
            for record in report.records
        ],
        "runs_used": {str(t): n for t, n in report.runs_used.items()},
        "argmin_renyi": report.argmin_renyi,
    }


def emit_report(report: SweepReport, out_dir: str | Path) -> list[Path]:
    """Write all sweep artifacts into a directory.

    Produces entropy_curve.csv (per-run and averaged rows),
    jaccard_matrix.csv and jaccard_diagonal.csv from the first run
    (plus jaccard_matrix_run{r}.csv for every run when runs > 1),
    one top_words_T{t}.txt per topic count, and manifest.json with
    every setting and derived seed. Returns the written paths.
    All files use '.' decimals and LF line endings.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    curve = out / "entropy_curve.csv"
    _write_curve_csv(curve, report)
    written.append(curve)

    matrix_path = out / "jaccard_matrix.csv"
    _write_jaccard_csv(matrix_path, report.jaccard)
    written.append(matrix_path)

    diagonal_path = out / "jaccard_diagonal.csv"
    _write_diagonal_csv(diagonal_path, report.jaccard)
    written.append(diagonal_path)

    for run, matrix in sorted(report.per_run_jaccard.items()):
        p = out / f"jaccard_matrix_run{run}.csv"
        _write_jaccard_csv(p, matrix)
        written.append(p)

    for n_topics in report.config.t_values:
        p = out / f"top_words_T{n_topics}.txt"
        with open(p, "w", encoding="utf-8", newline="\n") as fh:
            for word in report.ranked_words[n_topics]:
                fh.write(word + "\n")
        written.append(p)

    manifest_path = out / "manifest.json"
    with open(manifest_path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(_manifest(report), fh, indent=2, sort_keys=True)
        fh.write("\n")
    written.append(manifest_path)
    return written
