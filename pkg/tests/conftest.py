from __future__ import annotations

from pathlib import Path

import pytest

from sosv import ArchitectureView, parse

FIXTURES = Path(__file__).parent / "fixtures"

# One pass/fail line per acceptance criterion at the end of the run.
_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _ACCEPTANCE_RESULTS.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE_RESULTS:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status} {name}")

# The corpus stops right before the closing brace; this section reproduces its
# deployment facts (the nodes named in the shared-resource descriptions).
DEPLOYMENT_SECTION = """
  deployment {
    node "srv-dbopc" { kind computer }
    node "srv-web1" { kind computer }
    node "srv-web2" { kind computer }
  }
}
"""


@pytest.fixture(scope="session")
def corpus_path() -> Path:
    return FIXTURES / "adventure_builder.sosv"


@pytest.fixture(scope="session")
def corpus_text(corpus_path: Path) -> str:
    return corpus_path.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def corpus_view(corpus_text: str) -> ArchitectureView:
    outcome = parse(corpus_text, "adventure_builder.sosv")
    assert outcome.view is not None, [d.render() for d in outcome.diagnostics]
    return outcome.view


@pytest.fixture(scope="session")
def deployed_corpus_text(corpus_text: str) -> str:
    body = corpus_text.rstrip()
    assert body.endswith("}")
    return body[:-1] + DEPLOYMENT_SECTION


@pytest.fixture(scope="session")
def deployed_corpus_view(deployed_corpus_text: str) -> ArchitectureView:
    outcome = parse(deployed_corpus_text, "adventure_builder_deployed.sosv")
    assert outcome.view is not None, [d.render() for d in outcome.diagnostics]
    return outcome.view
