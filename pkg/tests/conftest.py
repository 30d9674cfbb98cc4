import numpy as np
import pytest

import topicq as tq

import _acceptance_report


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_report.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _acceptance_report.RESULTS:
        tag = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{tag}] {name}: {detail}")


@pytest.fixture
def tiny_corpus():
    """Nine documents over a 10-word vocabulary, deterministic."""
    rng = np.random.default_rng(123)
    words = [f"w{i}" for i in range(10)]
    docs = []
    for _ in range(9):
        length = int(rng.integers(4, 12))
        docs.append([words[int(i)] for i in rng.integers(0, 10, size=length)])
    return tq.corpus_from_tokens(docs)


@pytest.fixture
def separable_corpus():
    """Two 50-document halves over disjoint 12-word vocabularies."""
    rng = np.random.default_rng(99)
    vocab_a = [f"a{i}" for i in range(12)]
    vocab_b = [f"b{i}" for i in range(12)]
    docs = []
    for half in (vocab_a, vocab_b):
        for _ in range(50):
            docs.append([half[int(i)] for i in rng.integers(0, 12, size=30)])
    return tq.corpus_from_tokens(docs)
