import importlib

import pytest

stuffle = importlib.import_module("qmzv.stuffle")
partitions = importlib.import_module("qmzv.partitions")
qseries = importlib.import_module("qmzv.qseries")

ACCEPTANCE_LINES: list[str] = []


def clear_all_caches() -> None:
    stuffle.clear_caches()
    partitions._enumerate.cache_clear()
    qseries._sz_int.cache_clear()
    qseries._factor.cache_clear()


@pytest.fixture(autouse=True, scope="module")
def _fresh_caches():
    yield
    clear_all_caches()


@pytest.fixture
def record_criterion():
    def record(name: str, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
