"""Ground and internal-flip starts for gate circuits.

At t=0 every clock is latched, so the Hamiltonian is diagonal and a gate's
classical ground state can be degenerate (a frustrated input arm may hold
its kink on either side of a cell).  The state that the clock ramp follows
is then fixed by first-order degenerate perturbation theory: the ground
vector of the ramp term restricted to the degenerate manifold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, index_to_label, internal_cells
from .evolution import DEFAULT_DT, evolve_batch
from .observables import z_string
from .pauli import CLOCK_PREFACTOR, PauliString, apply, build_template, diagonal, pauli_apply

DEGENERACY_TOL = 1e-9
_PROBE_FRACTION = 1e-6


def ground_manifold(c: Circuit, clock_prefactor: float = CLOCK_PREFACTOR) -> list[int]:
    """Basis indices of the lowest diagonal energy at t=0."""
    d = diagonal(build_template(c, clock_prefactor=clock_prefactor), 0.0)
    return [int(i) for i in np.flatnonzero(d <= d.min() + DEGENERACY_TOL)]


def adiabatic_ground_state(c: Circuit, clock_prefactor: float = CLOCK_PREFACTOR) -> np.ndarray:
    """The t=0 ground state that is continuously connected to t>0.

    Raises
    ------
    ArithmeticError
        If the first-order splitting leaves the ground state degenerate.
    """
    h = build_template(c, clock_prefactor=clock_prefactor)
    idx = ground_manifold(c, clock_prefactor)
    if len(idx) == 1:
        v = np.zeros(h.dimension, dtype=complex)
        v[idx[0]] = 1.0
        return v
    delta = _PROBE_FRACTION * c.t_f
    basis = np.zeros((h.dimension, len(idx)), dtype=complex)
    basis[idx, np.arange(len(idx))] = 1.0
    ramp = (apply(h, delta, basis) - apply(h, 0.0, basis))[idx] / delta
    w, u = np.linalg.eigh(0.5 * (ramp + ramp.conj().T))
    if w.size > 1 and w[1] - w[0] <= DEGENERACY_TOL * max(1.0, abs(w[0])):
        raise ArithmeticError("ground state is still degenerate at first order")
    v = basis @ u[:, 0]
    return v / np.linalg.norm(v)


def flip_cell(state: np.ndarray, n_cells: int, cell: int) -> np.ndarray:
    """Apply sigma_x on ``cell``; on a basis state this flips one bit."""
    return pauli_apply(PauliString.from_cells(n_cells, {cell: "X"}), state)


def describe(state: np.ndarray, n_cells: int, floor: float = 1e-12) -> str:
    """Compact ``label|label`` rendering of the basis states in ``state``."""
    return "|".join(index_to_label(int(i), n_cells) for i in np.flatnonzero(np.abs(state) > floor))


@dataclass(frozen=True)
class GateRun:
    """Output polarization after switching, from the ground and each internal flip."""

    name: str
    ground_label: str
    ground_output: float
    flips: tuple[tuple[int, str, float], ...]  # (cell, start label(s), output)
    norm_drift: float = 0.0

    @property
    def ground_ok(self) -> bool:
        return self.ground_output > 0.0

    @property
    def flips_ok(self) -> bool:
        return all(p < 0.0 for _, _, p in self.flips)


def run_gate(
    name: str, c: Circuit, dt: float = DEFAULT_DT, clock_prefactor: float = CLOCK_PREFACTOR
) -> GateRun:
    """Switch ``c`` from its adiabatic ground state and from every internal flip."""
    n = c.n_cells
    ground = adiabatic_ground_state(c, clock_prefactor)
    cells = internal_cells(c)
    starts = [ground] + [flip_cell(ground, n, k) for k in cells]
    h = build_template(c, clock_prefactor=clock_prefactor)
    probe = {"P_out": z_string(n, c.output_cell)}
    _, _, values = evolve_batch(h, np.stack(starts, axis=1), c.t_f, dt, probe, sample_every=10**9)
    final = values["P_out"][-1]
    flips = tuple(
        (k, describe(starts[i + 1], n), float(final[i + 1])) for i, k in enumerate(cells)
    )
    drift = float(np.max(np.abs(values["norm"] - 1.0)))
    return GateRun(name, describe(ground, n), float(final[0]), flips, drift)
