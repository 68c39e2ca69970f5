import pytest

from deixis import corpus


@pytest.fixture(scope="session")
def corpus_dir():
    return corpus.shipped_corpus_dir()


@pytest.fixture
def load(corpus_dir):
    def _load(name):
        return corpus.load_script(corpus_dir / f"{name}.json")

    return _load


@pytest.fixture
def replayed(load):
    """Replay a shipped script, optionally stopping after a clause."""

    def _replay(name, through=None):
        return corpus.replay(load(name), through=through, run_queries=False)

    return _replay


_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance_line():
    """Record one PASS/FAIL line; all lines are repeated in the terminal summary."""

    def _record(number, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
        print(line)
        _ACCEPTANCE.append(line)
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
