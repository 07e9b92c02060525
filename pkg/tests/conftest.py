import pytest

from dicke2p import ModelParams, solve_mean_field


@pytest.fixture
def fig2():
    """N = 1000, omega = 1, eps = 0.0008 (N*eps = 0.8), g = 0.49."""
    return ModelParams(omega=1.0, epsilon=0.0008, n_qubits=1000, g=0.49)


@pytest.fixture
def sr49(fig2):
    return solve_mean_field(fig2, +1)


@pytest.fixture
def sr49_minus(fig2):
    return solve_mean_field(fig2, -1)


ACCEPTANCE_LINES = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion."""

    def _report(label, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
