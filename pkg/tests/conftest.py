import pytest

from modunits import kernels

_CRITERIA: list[str] = []


@pytest.fixture(scope="session", params=sorted(kernels.backends()))
def backend(request):
    """Each available kernel implementation (``python`` always, ``cython`` when built)."""
    return kernels.backends()[request.param]


@pytest.fixture
def record_criterion():
    def record(number: int, title: str, ok: bool, detail: str = "") -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {title}"
        if detail:
            line += f" ({detail})"
        _CRITERIA.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
