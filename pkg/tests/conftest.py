import os
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

from greygraph import Attribute, DecisionProblem, GreyArray
from greygraph._kernels import warmup

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

DATA = Path(__file__).resolve().parent.parent / "data"


def pytest_sessionstart(session):
    # keep JIT compilation out of timed tests
    warmup()


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def example4():
    """The service-system selection problem: three alternatives, one cost and two benefit attributes."""
    attrs = (
        Attribute("A1", "cost", (0.45, 0.10)),
        Attribute("A2", "benefit", (0.35, 0.10)),
        Attribute("A3", "benefit", (0.20, 0.10)),
    )
    matrix = [
        [(90, 110), (70, 85), (60, 75)],
        [(80, 95), (65, 80), (70, 85)],
        [(85, 100), (80, 90), (55, 70)],
    ]
    infl = GreyArray(
        [[1, 0.3, 0.1], [0.3, 1, 0.15], [0.1, 0.15, 1]],
        [[0, 0.2, 0.2], [0.2, 0, 0.2], [0.2, 0.2, 0]],
    )
    return DecisionProblem.from_intervals(("X1", "X2", "X3"), attrs, matrix, infl)


_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _acceptance.append((name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
