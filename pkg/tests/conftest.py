from pathlib import Path

import pytest

from factoriad import fixtures as fx

ROOT = Path(__file__).resolve().parent.parent
FIXTURE_DIR = ROOT / "fixtures"
ALL = fx.CORE + fx.EXTRA


@pytest.fixture(params=ALL)
def named(request):
    return request.param, fx.get(request.param)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
