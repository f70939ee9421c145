import time

import pytest

_CRITERIA = {}


class Criterion:
    """Collects the clauses of one acceptance criterion."""

    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget
        self.clauses = []
        self._t0 = time.perf_counter()

    def check(self, name, ok, detail=""):
        self.clauses.append((name, bool(ok), detail))

    def finish(self):
        elapsed = time.perf_counter() - self._t0
        self.check("runtime", elapsed < self.budget, f"{elapsed:.1f}s < {self.budget:g}s")
        return self

    @property
    def passed(self):
        return bool(self.clauses) and all(ok for _, ok, _ in self.clauses)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        failed = [f"{n} ({d})" if d else n for n, ok, d in self.clauses if not ok]
        tail = f"; failing: {', '.join(failed)}" if failed else ""
        return f"criterion {self.number:>2} {status}: {self.title}{tail}"

    def assert_passed(self):
        lines = [f"  {'ok  ' if ok else 'FAIL'} {n}: {d}" for n, ok, d in self.clauses]
        assert self.passed, "\n" + "\n".join(lines)


@pytest.fixture
def criterion():
    def make(number, title, budget):
        c = Criterion(number, title, budget)
        _CRITERIA[number] = c
        return c
    return make


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[n].line())
