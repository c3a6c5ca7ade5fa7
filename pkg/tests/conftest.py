import time

import pytest

from padicisog.cli import default_corpus_path
from padicisog.verify import run_verification


@pytest.fixture(scope="session")
def corpus_report():
    """One full verification run over the built-in corpus, shared by the
    acceptance criteria; elapsed wall time is attached for the timing
    budget check."""
    t0 = time.perf_counter()
    report = run_verification(default_corpus_path())
    elapsed = time.perf_counter() - t0
    return report, elapsed


@pytest.fixture(scope="session")
def corpus_entries(corpus_report):
    report, _ = corpus_report
    entries = [item for item in report.entries if not isinstance(item, dict)]
    errors = [item for item in report.entries if isinstance(item, dict)]
    assert not errors, f"corpus entries failed to analyze: {errors}"
    return entries
