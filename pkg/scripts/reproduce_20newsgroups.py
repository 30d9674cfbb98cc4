#!/usr/bin/env python3
"""Manual reproduction: topic-count selection on 20 newsgroups.

Not part of the CI suite -- the dataset download and the full sweep
take far too long for an automated gate.  Run it by hand:

    python3 scripts/reproduce_20newsgroups.py --out runs/20news

It fetches the 20 newsgroups collection via scikit-learn, tokenizes
and prunes the vocabulary, then sweeps the topic count T over
[2, 60] in steps of 2 for the requested models (three runs per T,
averaged).  Per-model artifacts (entropy curve, Jaccard matrices,
top-word lists, manifest) are written under the output directory and
the location of the averaged Renyi-entropy minimum is printed.

Reference outcome on the full collection: the Renyi minimum lands in
roughly [10, 26] for the Gibbs-sampled and smoothed-EM models and
[14, 30] for plain EM, consistent with the ~20 human newsgroup
labels.  Expect hours of runtime at full size; use --max-docs for a
quick (noisier) pass.
"""

import argparse
import re
import sys
import time

import topicq as tq

TOKEN_RE = re.compile(r"[a-z]{2,}")

MODEL_CHOICES = {m.value: m for m in tq.Model}

REFERENCE_BANDS = {
    tq.Model.LDA_GS: (10, 26),
    tq.Model.VLDA: (10, 26),
    tq.Model.GLDA: (10, 26),
    tq.Model.PLSA: (14, 30),
}


def fetch_documents(max_docs):
    try:
        from sklearn.datasets import fetch_20newsgroups
    except ImportError:
        sys.exit(
            "scikit-learn is required to download the dataset: "
            "pip install scikit-learn"
        )
    try:
        bundle = fetch_20newsgroups(
            subset="all", remove=("headers", "footers", "quotes")
        )
    except Exception as exc:  # network/cache failure
        sys.exit(f"could not fetch 20 newsgroups: {exc}")
    docs = bundle.data
    if max_docs is not None:
        docs = docs[:max_docs]
    return docs


def build_corpus(raw_docs, min_count):
    from sklearn.feature_extraction.text import ENGLISH_STOP_WORDS

    tokenized = [
        [t for t in TOKEN_RE.findall(doc.lower())
         if t not in ENGLISH_STOP_WORDS]
        for doc in raw_docs
    ]
    counts = {}
    for tokens in tokenized:
        for t in tokens:
            counts[t] = counts.get(t, 0) + 1
    kept = {t for t, c in counts.items() if c >= min_count}
    pruned = [[t for t in tokens if t in kept] for tokens in tokenized]
    pruned = [tokens for tokens in pruned if tokens]
    return tq.corpus_from_tokens(pruned)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--models",
        nargs="+",
        default=["lda-gs", "vlda", "plsa"],
        choices=sorted(MODEL_CHOICES),
        help="models to sweep",
    )
    parser.add_argument("--t-min", type=int, default=2)
    parser.add_argument("--t-max", type=int, default=60)
    parser.add_argument("--t-step", type=int, default=2)
    parser.add_argument("--runs", type=int, default=3)
    parser.add_argument("--iterations", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument(
        "--min-count",
        type=int,
        default=5,
        help="drop words occurring fewer times than this",
    )
    parser.add_argument(
        "--max-docs",
        type=int,
        default=None,
        help="subsample the collection for a faster, noisier pass",
    )
    parser.add_argument("--out", required=True, help="output directory")
    args = parser.parse_args()

    print("fetching 20 newsgroups ...", flush=True)
    raw_docs = fetch_documents(args.max_docs)
    corpus = build_corpus(raw_docs, args.min_count)
    print(
        f"corpus: {corpus.n_docs} documents, {corpus.n_words} words, "
        f"{corpus.total_tokens} tokens",
        flush=True,
    )

    from pathlib import Path

    out_root = Path(args.out)
    for name in args.models:
        model = MODEL_CHOICES[name]
        config = tq.SweepConfig(
            model=model,
            t_min=args.t_min,
            t_max=args.t_max,
            t_step=args.t_step,
            runs=args.runs,
            base_seed=args.seed,
            iterations=args.iterations,
        )
        print(f"[{name}] sweeping T in {config.t_values} ...", flush=True)
        start = time.perf_counter()
        report = tq.run_sweep(corpus, config)
        elapsed = time.perf_counter() - start
        tq.emit_report(report, out_root / name)
        argmin = report.argmin_renyi
        lo, hi = REFERENCE_BANDS[model]
        verdict = (
            "inside" if argmin is not None and lo <= argmin <= hi
            else "OUTSIDE"
        )
        print(
            f"[{name}] minimum averaged Renyi entropy at T={argmin} "
            f"({verdict} reference band [{lo}, {hi}]), {elapsed:.0f}s",
            flush=True,
        )
    print(f"artifacts under {out_root}")


if __name__ == "__main__":
    main()
