from __future__ import annotations

import time

import numpy as np
import pytest
from hypothesis import settings

from nhssh.model import make_params

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_RESULTS: list = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion tag")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_call(item):
    start = time.perf_counter()
    yield
    item.user_properties.append(("elapsed", time.perf_counter() - start))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    elapsed = dict(item.user_properties).get("elapsed", float("nan"))
    number, title = marker.args
    _RESULTS.append((str(number), title, report.outcome, elapsed))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")

    def key(r):
        head = r[0].rstrip("abcdefgh")
        return (int(head), r[0])

    for number, title, outcome, elapsed in sorted(_RESULTS, key=key):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  criterion {number:<4} {title}  ({elapsed:.1f} s)")


@pytest.fixture
def pi_chain():
    """theta = pi, delta = 0.3, gamma2 = 1 line used throughout the gamma1 scans."""
    return lambda g1: make_params(1.0, 0.3, np.pi, g1, 1.0)
