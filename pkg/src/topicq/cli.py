"""Command-line interface.

Subcommands: `sweep` scans topic counts and writes the full report,
`fit` runs a single model and exports its matrices, `synth` writes a
generated corpus with planted topics, and `invariance` recomputes the
Jaccard artifacts from previously exported top-word files.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from .core import (
    Model,
    ModelConfig,
    fit,
    write_phi_csv,
    write_theta_csv,
)
from .corpus import load_plain_text, load_uci_bow, save_uci_bow
from .invariance import top_word_set_from_words
from .sweep import SweepConfig, emit_report, run_sweep
from .synthetic import generate_synthetic

_MODEL_NAMES = [m.value for m in Model]


def _add_corpus_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="corpus file")
    parser.add_argument(
        "--format",
        choices=["text", "uci"],
        default="text",
        help="text: one document per line; uci: sparse docword file",
    )
    parser.add_argument(
        "--vocab", help="vocabulary file (required for --format uci)"
    )
    parser.add_argument(
        "--stopwords", help="stopword list, one word per line (text format)"
    )


def _load_corpus(args):
    if args.format == "uci":
        if not args.vocab:
            raise ValueError("--format uci requires --vocab")
        return load_uci_bow(args.input, args.vocab)
    return load_plain_text(args.input, args.stopwords)


def _add_model_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--alpha",
        type=float,
        help="document-topic smoothing (default 50 / topics)",
    )
    parser.add_argument(
        "--beta", type=float, help="topic-word smoothing (default 0.01)"
    )
    parser.add_argument(
        "--iterations", type=int, default=100, help="sweeps or EM rounds"
    )
    parser.add_argument(
        "--glda-region",
        type=int,
        default=2,
        help="window half-width for the glda model",
    )
    parser.add_argument(
        "--argmax",
        action="store_true",
        help="pick the highest-weight topic instead of sampling (samplers)",
    )
    parser.add_argument("--seed", type=int, default=0, help="base seed")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topicq",
        description="Topic models with entropy-based topic-count selection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser(
        "sweep", help="fit a grid of topic counts and write the report"
    )
    _add_corpus_args(p_sweep)
    p_sweep.add_argument("--model", choices=_MODEL_NAMES, required=True)
    p_sweep.add_argument("--t-min", type=int, required=True)
    p_sweep.add_argument("--t-max", type=int, required=True)
    p_sweep.add_argument("--t-step", type=int, default=2)
    p_sweep.add_argument("--runs", type=int, default=3)
    _add_model_args(p_sweep)
    p_sweep.add_argument("--out", required=True, help="output directory")

    p_fit = sub.add_parser(
        "fit", help="fit one model and export its matrices"
    )
    _add_corpus_args(p_fit)
    p_fit.add_argument("--model", choices=_MODEL_NAMES, required=True)
    p_fit.add_argument("--topics", type=int, required=True)
    _add_model_args(p_fit)
    p_fit.add_argument("--out", required=True, help="output directory")

    p_synth = sub.add_parser(
        "synth", help="generate a corpus with planted topics"
    )
    p_synth.add_argument("--topics", type=int, required=True)
    p_synth.add_argument(
        "--vocab", type=int, required=True, help="vocabulary size"
    )
    p_synth.add_argument("--docs", type=int, required=True)
    p_synth.add_argument("--doc-len", type=int, required=True)
    p_synth.add_argument("--alpha", type=float, default=0.1)
    p_synth.add_argument("--beta", type=float, default=0.05)
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--out", required=True, help="output directory")

    p_inv = sub.add_parser(
        "invariance",
        help="recompute Jaccard artifacts from top_words_T*.txt files",
    )
    p_inv.add_argument(
        "--top-words-dir",
        required=True,
        help="directory holding top_words_T{n}.txt files",
    )
    p_inv.add_argument("--out", required=True, help="output directory")

    return parser


def _cmd_sweep(args) -> int:
    corpus = _load_corpus(args)
    config = SweepConfig(
        model=Model(args.model),
        t_min=args.t_min,
        t_max=args.t_max,
        t_step=args.t_step,
        runs=args.runs,
        base_seed=args.seed,
        alpha=args.alpha,
        beta=args.beta,
        iterations=args.iterations,
        glda_region=args.glda_region,
        argmax_selection=args.argmax,
        output_dir=args.out,
    )
    report = run_sweep(corpus, config)
    emit_report(report, args.out)
    if report.argmin_renyi is None:
        print("sweep done; every topic count was degenerate")
    else:
        print(f"sweep done; minimum Renyi entropy at T={report.argmin_renyi}")
    print(f"report written to {args.out}")
    return 0


def _cmd_fit(args) -> int:
    corpus = _load_corpus(args)
    config = ModelConfig(
        model=Model(args.model),
        topics=args.topics,
        alpha=args.alpha,
        beta=args.beta,
        iterations=args.iterations,
        seed=args.seed,
        glda_region=args.glda_region,
        argmax_selection=args.argmax,
    )
    result = fit(corpus, config)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_phi_csv(out / "phi.csv", result.phi)
    write_theta_csv(out / "theta.csv", result.theta)
    if result.loglik_trace is not None:
        with open(
            out / "loglik.csv", "w", encoding="utf-8", newline="\n"
        ) as fh:
            fh.write("iteration,objective\n")
            for i, value in enumerate(result.loglik_trace, start=1):
                fh.write(f"{i},{value:.12g}\n")
    print(f"fit done; matrices written to {args.out}")
    return 0


def _cmd_synth(args) -> int:
    corpus, true_phi = generate_synthetic(
        n_topics=args.topics,
        n_words=args.vocab,
        n_docs=args.docs,
        doc_len=args.doc_len,
        alpha=args.alpha,
        beta=args.beta,
        seed=args.seed,
    )
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    save_uci_bow(corpus, out / "docword.txt", out / "vocab.txt")
    write_phi_csv(out / "true_phi.csv", true_phi)
    print(
        f"synthetic corpus written to {args.out} "
        f"({corpus.n_docs} docs, {corpus.n_words} words)"
    )
    return 0


_TOP_WORDS_RE = re.compile(r"^top_words_T(\d+)\.txt$")


def _cmd_invariance(args) -> int:
    directory = Path(args.top_words_dir)
    found = []
    for p in directory.iterdir():
        m = _TOP_WORDS_RE.match(p.name)
        if m:
            found.append((int(m.group(1)), p))
    if not found:
        raise ValueError(f"no top_words_T*.txt files in {directory}")
    found.sort()
    sets = []
    for n_topics, p in found:
        words = [line.strip() for line in p.read_text(encoding="utf-8").splitlines()]
        sets.append(
            top_word_set_from_words(n_topics, [w for w in words if w])
        )
    from .invariance import jaccard_matrix
    from .sweep import _write_diagonal_csv, _write_jaccard_csv

    matrix = jaccard_matrix(sets)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_jaccard_csv(out / "jaccard_matrix.csv", matrix)
    _write_diagonal_csv(out / "jaccard_diagonal.csv", matrix)
    print(f"jaccard artifacts written to {args.out}")
    return 0


_COMMANDS = {
    "sweep": _cmd_sweep,
    "fit": _cmd_fit,
    "synth": _cmd_synth,
    "invariance": _cmd_invariance,
}


def main(argv=None) -> int:
    """Parse arguments and run one subcommand.

    Returns 0 on success and 1 on any diagnosed error (bad input
    files, invalid configurations), printing the reason to stderr.
    """
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main_entry() -> None:
    raise SystemExit(main())
