from __future__ import annotations

import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from gwenergy.exactmath import BiPoly

GOLDEN_DIR = Path(__file__).parent / "golden"


def pytest_addoption(parser):
    parser.addoption(
        "--update-golden",
        action="store_true",
        default=False,
        help="rewrite tests/golden/*.json from the current CLI output",
    )


@pytest.fixture
def update_golden(request) -> bool:
    return request.config.getoption("--update-golden")


@pytest.fixture
def run_cli():
    def run(*args: str) -> subprocess.CompletedProcess:
        return subprocess.run(
            [sys.executable, "-m", "gwenergy", *args],
            capture_output=True,
            text=True,
            check=False,
            timeout=60,
        )

    return run


# --- hypothesis strategies ---------------------------------------------------

fractions_st = st.fractions(min_value=-20, max_value=20, max_denominator=12)
nonzero_fractions_st = fractions_st.filter(lambda q: q != 0)


@st.composite
def bipolys(draw, max_degree: int = 3, max_terms: int = 4) -> BiPoly:
    monomials = st.tuples(st.integers(0, max_degree), st.integers(0, max_degree))
    terms = draw(st.lists(st.tuples(monomials, fractions_st), max_size=max_terms))
    return BiPoly(terms)


# --- acceptance report -------------------------------------------------------

_criteria: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (report.when != "call" and not report.failed):
        return
    n, text = marker.args
    entry = _criteria.setdefault(n, {"text": text, "ok": True})
    if report.failed:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        entry = _criteria[n]
        status = "PASS" if entry["ok"] else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {entry['text']}")


# --- CLI golden matrix ---------------------------------------------------------

GOLDEN_CASES = {
    "energy_k1": ["energy", "--k", "1", "--lambda", "1/2", "--area", "1"],
    "energy_k1_flat": ["energy", "--k", "1", "--lambda", "0", "--area", "1"],
    "energy_k2": ["energy", "--k", "2", "--lambda", "1/2", "--area", "1"],
    "jacobi_k1": ["jacobi-poly", "--k", "1", "--check"],
    "jacobi_k3": ["jacobi-poly", "--k", "3", "--check"],
    "sphere_k1_m1": ["sphere", "--k", "1", "--m", "1", "--jmax", "3"],
    "sphere_k2_m3": ["sphere", "--k", "2", "--m", "3", "--jmax", "1"],
    "sphere_k1_m1_j0": ["sphere", "--k", "1", "--m", "1", "--jmax", "0"],
    "clifford_1_1": ["clifford", "--d1", "1", "--d2", "1"],
    "clifford_3_3": ["clifford", "--d1", "3", "--d2", "3"],
    "clifford_2_2": ["clifford", "--d1", "2", "--d2", "2"],
    "verify_k1": ["verify-numeric", "--k", "1", "--lambda", "0.5", "--eps0", "0.5", "--points", "24", "--tol", "1e-8"],
    "verify_k2": ["verify-numeric", "--k", "2", "--lambda", "0.5", "--eps0", "0.5", "--points", "24", "--tol", "1e-8"],
    "verify_k3": ["verify-numeric", "--k", "3", "--lambda", "0.5", "--eps0", "0.5", "--points", "24", "--tol", "1e-6"],
}

EXIT_CASES = [
    (["jacobi-poly", "--k", "0"], 2),
    (["energy", "--k", "1", "--lambda", "1/x", "--area", "1"], 2),
    (["energy", "--k", "1", "--lambda", "1/2", "--area", "0"], 2),
    (["clifford", "--d1", "1", "--d2", "2"], 2),
    (["sphere", "--k", "1"], 2),
    (["verify-numeric", "--k", "1", "--points", "2"], 1),
    (["verify-numeric", "--k", "3", "--tol", "1e-14"], 1),
    (["energy", "--k", "3", "--lambda", "-2/7", "--area", "5/3"], 0),
]
