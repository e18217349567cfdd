from __future__ import annotations

import os
import random
import tempfile

import pytest

# keep the prime cache out of the user's home directory
os.environ["GF2PERFECT_CACHE"] = tempfile.mkdtemp(prefix="gf2perfect-test-")


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240613)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
