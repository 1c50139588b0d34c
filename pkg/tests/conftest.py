import pytest

from polydir import laws


@pytest.fixture(scope="session")
def reports():
    """Each law suite on the default grid, run once per session."""
    return {name: laws.run_suite(name) for name in laws.SUITES}


@pytest.fixture(scope="session")
def mutation_reports():
    return {name: laws.run_suite(name, mutate=m) for name, m in laws.SUITE_MUTATIONS.items()}


_ACCEPTANCE = {}


@pytest.fixture
def record():
    def put(number, title, ok, detail=""):
        _ACCEPTANCE[number] = (title, ok, detail)
        print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
    return put


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
