from __future__ import annotations

from pathlib import Path

import pytest

from offsetdeg.mvpoly import MultiPoly
from offsetdeg.parse import parse_poly

FIXTURES = Path(__file__).parent / "fixtures"

_ACCEPTANCE = pytest.StashKey[list]()


def poly(text: str) -> MultiPoly:
    return parse_poly(text)


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def acceptance_log(request):
    """Append ``(criterion, passed, detail)`` lines printed at the end of the run."""
    return request.config.stash[_ACCEPTANCE]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in lines:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {criterion}: {detail}")
