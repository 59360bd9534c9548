import sys

import pytest

from kronecker_moduli import reineke_engine


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    """Keep tests away from the user's cache directory."""
    monkeypatch.setenv("QUIVER_CACHE_DIR", str(tmp_path / "cache"))
    previous = reineke_engine._store
    reineke_engine.set_store(None)
    yield
    reineke_engine.set_store(previous)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if module is None or not module.REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(module.REPORT):
        terminalreporter.write_line(module.REPORT[number])
