import pytest

_CRITERIA: list[str] = []


class CriterionLog:
    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title

    def record(self, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {self.number}: {self.title} -- {detail}"
        _CRITERIA.append(line)
        print(line)
        assert ok, line


@pytest.fixture
def criterion():
    return CriterionLog


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
