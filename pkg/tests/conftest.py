"""Shared fixtures: cached algebras and removal contexts, plus the acceptance summary."""

from functools import lru_cache

import pytest

from arrowkernel import assemble_algebra, load_fixture
from arrowkernel.cleft import build_context

ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def algebra(name: str, field: str | None = None):
    return assemble_algebra(load_fixture(name, field))


@lru_cache(maxsize=None)
def context(name: str, arrows: tuple[str, ...], field: str | None = None):
    return build_context(load_fixture(name, field), arrows, algebra(name, field))


REMOVALS = [("L2", ("a2",)), ("L3", ("a2", "a3")), ("C3", ("a",)), ("H4", ("a",))]


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per criterion and assert it."""

    def record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
