import numpy as np
import pytest

# Dense single-cell matrices in the (|0>, |1>) basis, written out by hand so the
# tests do not share code with the Pauli-string kernels.
I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, 1j], [-1j, 0]], dtype=complex)
SZ = np.diag([-1.0, 1.0]).astype(complex)
LETTER = {"I": I2, "X": SX, "Y": SY, "Z": SZ}


def kron_op(n, ops):
    """Dense operator with ``ops[cell]`` on the given cells (cell 1 is the leftmost factor)."""
    out = np.ones((1, 1), dtype=complex)
    for cell in range(1, n + 1):
        out = np.kron(out, LETTER[ops.get(cell, "I")])
    return out


def kron_hamiltonian(c, t, clock_prefactor=1.0):
    """H(t) of a circuit built from Kronecker products."""
    n = c.n_cells
    h = np.zeros((2**n, 2**n), dtype=complex)
    for cp in list(c.couplings) + list(c.nnn_couplings):
        h += -cp.j / 2 * kron_op(n, {cp.a: "Z", cp.b: "Z"})
    for d in c.drivers:
        h += 0.5 * d.schedule.value(t) * kron_op(n, {d.cell: "Z"})
    for z in c.clock_zones:
        g = z.schedule.value(t)
        for i in z.cells:
            h += clock_prefactor * g * kron_op(n, {i: "X"})
    return h


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


# Acceptance verdict lines, printed in the terminal summary so they show up
# whatever the capture mode.
_ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(_ACCEPTANCE_LINES):
            terminalreporter.write_line(_ACCEPTANCE_LINES[k])
