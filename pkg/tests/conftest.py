from __future__ import annotations

import json
from pathlib import Path

import pytest

from partact.spec_io import load_global, parse_spec

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


def fixture_path(name: str) -> Path:
    return FIXTURES / name


@pytest.fixture
def ex_i():
    """Cyclic group of order 8 acting partially on x1..x4."""
    return parse_spec(FIXTURES / "cyclic8_four_points.json")[1]


@pytest.fixture
def ex_ii():
    return parse_spec(FIXTURES / "cyclic4_four_points.json")[1]


@pytest.fixture
def ex_i_doc():
    return json.loads((FIXTURES / "cyclic8_four_points.json").read_text())


@pytest.fixture
def envelope_table(ex_i):
    """The hand-tabulated enveloping action of ``ex_i``, read from its fixture."""
    return load_global(FIXTURES / "cyclic8_envelope_table.json", ex_i)


ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


class criterion:
    """Record the outcome of one acceptance criterion for the end-of-run summary."""

    def __init__(self, number: int, title: str):
        self.number, self.title = number, title
        self.note = ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        note = self.note if exc_type is None else f"{exc_type.__name__}: {exc}".splitlines()[0]
        ACCEPTANCE[self.number] = (status, self.title, note)
        print(f"criterion {self.number} {status}: {self.title} {note}")
        return False


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, title, note = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{status}] {n}. {title} ({note})")
