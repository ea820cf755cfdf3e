"""Shared fixtures: clean environment, backend handling, session full run."""

from __future__ import annotations

import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))  # make `oracles` importable

from zetastrips import EvalParams, config_from_sources  # noqa: E402


@pytest.fixture(autouse=True, scope="session")
def _scrub_zeta_env():
    """Tests must not inherit ZETA_* settings from the caller's shell."""
    saved = {k: v for k, v in os.environ.items() if k.startswith("ZETA_")}
    for k in saved:
        del os.environ[k]
    yield
    os.environ.update(saved)


def have_numba() -> bool:
    try:
        import numba  # noqa: F401

        return True
    except ImportError:
        return False


@pytest.fixture(scope="session")
def params() -> EvalParams:
    return EvalParams()


@pytest.fixture(scope="session")
def full_run(tmp_path_factory):
    """One m_max=200 pipeline run shared by the acceptance tests."""
    from zetastrips import run

    out = tmp_path_factory.mktemp("full200")
    config = config_from_sources(
        {"m_max": 200, "output_dir": str(out), "worker_count": 2}
    )
    summary = run(config)
    return config, summary


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Echo one PASS/FAIL line per acceptance criterion after the run."""
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
