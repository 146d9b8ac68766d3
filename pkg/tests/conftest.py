import functools
import os

import pytest
from hypothesis import HealthCheck, settings

from edrank.gradings import build_grading
from edrank.lattices import Family, build_lattice, enumerate_roots
from edrank.weyl import build_w_eps

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile("default")

SLOW = os.environ.get("EDRANK_SLOW") == "1"

FAMILIES = {
    "pgl-2-1": Family.pgl(2, 1),
    "pgl-2-2": Family.pgl(2, 2),
    "pgl-3-1": Family.pgl(3, 1),
    "pgl-2-3": Family.pgl(2, 3),
    "pgl-3-2": Family.pgl(3, 2),
    "pgo-3": Family.pgo(3),
    "pgo-4": Family.pgo(4),
    "pgo-5": Family.pgo(5),
    "pgo-6": Family.pgo(6),
    "pgo-8": Family.pgo(8),
    "hspin16": Family.hspin16(),
    "e6": Family.e6(),
}
FOUR = ["pgl-2-2", "pgo-4", "hspin16", "e6"]


@functools.lru_cache(maxsize=None)
def setup(key):
    """(lattice, grading, closed-form W(eps), roots) for a named family."""
    lat = build_lattice(FAMILIES[key])
    g = build_grading(lat)
    return lat, g, build_w_eps(lat, g), enumerate_roots(lat)


@pytest.fixture
def family_setup():
    return setup


ACCEPTANCE_LINES: dict[str, str] = {}


def record_acceptance(number: int, ok: bool, summary: str) -> None:
    ACCEPTANCE_LINES[f"{number:02d}"] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {summary}"
    print(ACCEPTANCE_LINES[f"{number:02d}"])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for key in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[key])
