"""Expectation values, polarizations, transition reports and kink counts."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, check_label, index_to_label, spins
from .pauli import PauliString

IMAG_TOL = 1e-10
DEFAULT_THRESHOLD = 1e-4


def pauli_expectation(state: np.ndarray, p: PauliString) -> float:
    """``<psi|P|psi>`` for a state vector or ``Tr(P rho)`` for a density matrix."""
    state = np.asarray(state)
    dim = 2**p.n_cells
    if state.shape[0] != dim or state.ndim not in (1, 2) or (state.ndim == 2 and state.shape != (dim, dim)):
        raise ValueError(f"state shape {state.shape} does not match {p.n_cells} cells")
    mask = p.flip_mask
    idx = np.arange(dim)
    # P|j> = phi[j] |j ^ mask>
    phi = p.coefficient * p.phases()
    if state.ndim == 1:
        val = np.vdot(state[idx ^ mask], phi * state)
    else:
        # Tr(P rho) = sum_j <j|P rho|j> = sum_k phi[k] rho[k, k ^ mask]
        val = np.sum(phi * state[idx, idx ^ mask])
    if abs(val.imag) > IMAG_TOL * max(1.0, abs(val.real)):
        raise ArithmeticError(f"expectation has imaginary part {val.imag:.3e}")
    return float(val.real)


def z_string(n_cells: int, cell: int) -> PauliString:
    return PauliString.from_cells(n_cells, {cell: "Z"})


def polarization(state: np.ndarray, cell: int) -> float:
    """Expected polarization ``<sigma_z>`` of ``cell``."""
    state = np.asarray(state)
    n = int(np.log2(state.shape[0]))
    return pauli_expectation(state, z_string(n, cell))


def populations(state: np.ndarray) -> np.ndarray:
    """Computational-basis populations of a state vector or density matrix."""
    state = np.asarray(state)
    if state.ndim == 1:
        return np.abs(state) ** 2
    return np.diagonal(state).real.copy()


@dataclass
class TransitionReport:
    """Basis-state probabilities at or above ``threshold``; the rest is ``residual``."""

    entries: dict[str, float]
    residual: float
    threshold: float

    def total(self) -> float:
        return sum(self.entries.values()) + self.residual

    def output_bit_probability(self, cell: int, bit: str = "1") -> float:
        """Summed probability of reported labels whose ``cell`` holds ``bit``."""
        return sum(p for label, p in self.entries.items() if label[cell - 1] == bit)

    def to_dict(self) -> dict:
        return {"threshold": self.threshold, "residual": self.residual, "entries": self.entries}


def transition_probabilities(v: np.ndarray, threshold: float = DEFAULT_THRESHOLD) -> TransitionReport:
    """Populations of every basis label with probability >= ``threshold``.

    Entries are ordered by decreasing probability.
    """
    pops = populations(v)
    if abs(pops.sum() - 1.0) > 1e-6:
        raise ValueError(f"state is not normalized (total population {pops.sum()})")
    n = int(np.log2(pops.size))
    keep = np.flatnonzero(pops >= threshold)
    keep = keep[np.argsort(-pops[keep], kind="stable")]
    entries = {index_to_label(int(i), n): float(pops[i]) for i in keep}
    residual = float(pops.sum() - pops[keep].sum())
    return TransitionReport(entries, residual, threshold)


def bit_probability(state: np.ndarray, cell: int, bit: str = "1") -> float:
    """Exact probability that ``cell`` is found in ``bit`` (no threshold)."""
    pops = populations(state)
    n = int(np.log2(pops.size))
    bits = (np.arange(pops.size) >> (n - cell)) & 1
    return float(pops[bits == int(bit)].sum())


def kink_count(label: str, c: Circuit) -> int:
    """Couplings whose cells violate the coupling's preferred alignment."""
    check_label(label, c.n_cells)
    m = spins(label)
    return sum(1 for cp in c.couplings if np.sign(cp.j) * m[cp.a - 1] * m[cp.b - 1] < 0)


def driver_kink_count(label: str, c: Circuit, t: float) -> int:
    """``kink_count`` plus one for each driven cell opposing its driver at ``t``.

    A driver value P > 0 favours bit 0 and P < 0 favours bit 1.
    """
    m = spins(check_label(label, c.n_cells))
    extra = 0
    for d in c.drivers:
        p = d.schedule.value(t)
        if p * m[d.cell - 1] > 0:
            extra += 1
    return kink_count(label, c) + extra


def classical_ground_label(c: Circuit, t: float = 0.0) -> str:
    """Lowest-energy basis label at ``t`` (first one on ties)."""
    from .circuit import all_labels
    from .pauli import classical_energy

    labels = all_labels(c.n_cells)
    energies = [classical_energy(c, lab, t) for lab in labels]
    return labels[int(np.argmin(energies))]
