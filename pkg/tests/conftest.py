from __future__ import annotations

from importlib import resources

import pytest

from exactreg.analysis import Workbench
from exactreg.substitution import parse_substitution

FIXTURES = ("thue_morse", "phi2", "phi3", "fib_variant", "nonpisot", "proper")

# lines collected by the acceptance suite and echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def load_fixture(name: str):
    text = resources.files("exactreg").joinpath(f"fixtures/{name}.sub").read_text(encoding="utf-8")
    return parse_substitution(text)


def fixture_path(name: str) -> str:
    return str(resources.files("exactreg").joinpath(f"fixtures/{name}.sub"))


_benches: dict[str, Workbench] = {}


def bench(name: str) -> Workbench:
    if name not in _benches:
        _benches[name] = Workbench(load_fixture(name))
    return _benches[name]


@pytest.fixture(params=FIXTURES)
def fixture_name(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
