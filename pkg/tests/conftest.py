import shlex
import sys
from pathlib import Path

import pytest

from datapoint import lexicon as lx

TESTS = Path(__file__).parent
DATA = TESTS.parent / "src" / "datapoint" / "data"
SAMPLE_CORPUS = DATA / "sample_corpus.txt"
SAMPLE_GAZETTEER = DATA / "sample_gazetteer.json"
ADAPTERS = TESTS / "adapters"

_acceptance = {}


def adapter_cmd(script, *args):
    """Shell-quoted command line running one of the test adapters."""
    parts = [sys.executable, str(ADAPTERS / script), *args]
    return " ".join(shlex.quote(p) for p in parts)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(num, title): acceptance criterion check")


def pytest_runtest_logreport(report):
    marker = getattr(report, "acceptance", None)
    if marker is None:
        return
    num, title = marker
    ok = report.passed if report.when == "call" else not report.failed
    prev = _acceptance.get(num, (title, True))
    _acceptance[num] = (title, prev[1] and ok)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("acceptance")
    if m is not None:
        rep.acceptance = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_acceptance):
        title, ok = _acceptance[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {num}: {title}")


@pytest.fixture(scope="session")
def valence():
    return lx.default_valence_lexicon()


@pytest.fixture(scope="session")
def emotions():
    return lx.default_emotion_lexicon()


@pytest.fixture(scope="session")
def themes():
    return lx.default_theme_lexicon()


@pytest.fixture(scope="session")
def default_cast():
    return lx.default_gazetteer()


@pytest.fixture(scope="session")
def sample_gazetteer():
    return lx.load_gazetteer(SAMPLE_GAZETTEER)
