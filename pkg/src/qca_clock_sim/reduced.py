"""Closed linear equations for the output polarization of a clocked chain.

For an N-cell chain driven on cell 1 define, with the output at cell N,

    Z_k = < sigma_z^(N-k) sigma_x^(N-k+1) ... sigma_x^N >     k = 0..N-1
    Y_k = < sigma_y^(N-k) sigma_x^(N-k+1) ... sigma_x^N >     k = 0..N-1
    Z_N = < sigma_x^1 ... sigma_x^N >

so ``Z_0`` is the output polarization.  With clock term ``c_x gamma_i(t)
sigma_x^i``, driver ``(1/2) P(t) sigma_z^1`` and couplings ``-(J_i/2)
sigma_z^i sigma_z^(i+1)`` these obey (g_i = 2 c_x gamma_i)

    dZ_k/dt     =  g_(N-k) Y_k + J_(N-k) Y_(k-1)          (Y_-1 = 0)
    dY_k/dt     = -g_(N-k) Z_k - J_(N-k-1) Z_(k+1)        k <= N-2
    dY_(N-1)/dt = -g_1 Z_(N-1) + P Z_N
    dZ_N/dt     = -P Y_(N-1)

Next-to-nearest-neighbour couplings are not part of this system.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .circuit import Circuit, check_label
from .evolution import DEFAULT_DT, TimeGrid, Trajectory, _march, _Recorder, evolve_batch
from .observables import z_string
from .pauli import CLOCK_PREFACTOR, basis_state, build_template


class UnsupportedTopologyError(ValueError):
    """The circuit is not a single chain driven on its first cell."""


@dataclass
class ReducedState:
    """``z`` holds Z_0..Z_N and ``y`` holds Y_0..Y_(N-1)."""

    z: np.ndarray
    y: np.ndarray

    @property
    def n_cells(self) -> int:
        return len(self.y)

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.z, self.y])

    @classmethod
    def from_vector(cls, v: np.ndarray, n_cells: int) -> ReducedState:
        v = np.asarray(v, dtype=float)
        return cls(v[: n_cells + 1].copy(), v[n_cells + 1:].copy())


def _check_chain(c: Circuit):
    if not c.is_chain():
        raise UnsupportedTopologyError("reduced equations need a linear chain 1-2-...-N")
    if len(c.drivers) != 1 or c.drivers[0].cell != 1:
        raise UnsupportedTopologyError("reduced equations need exactly one driver, on cell 1")


def init_reduced(label: str, c: Circuit | None = None) -> ReducedState:
    """Reduced state of a basis state: Z_0 = output polarization, all else 0.

    When ``c`` is given, the output cell must be latched at t=0.
    """
    n = len(label)
    if c is not None:
        check_label(label, c.n_cells)
        if c.clock_of(c.output_cell).value(0.0) != 0.0:
            raise ValueError("output cell is not latched at t=0")
    z = np.zeros(n + 1)
    y = np.zeros(n)
    z[0] = 1.0 if label[-1] == "1" else -1.0
    return ReducedState(z, y)


def reduced_rhs(
    s: ReducedState, t: float, wire: Circuit, clock_prefactor: float = CLOCK_PREFACTOR
) -> ReducedState:
    """Time derivative of ``s`` at ``t``, written out term by term."""
    _check_chain(wire)
    n = wire.n_cells
    js = wire.chain_couplings()  # js[i-1] couples cells i and i+1
    p_in = wire.drivers[0].schedule.value(t)

    def g(cell):
        return 2.0 * clock_prefactor * wire.clock_of(cell).value(t)

    def j(i):
        return js[i - 1]

    z, y = s.z, s.y
    dz = np.zeros_like(z)
    dy = np.zeros_like(y)
    for k in range(n):
        c = n - k
        dz[k] = g(c) * y[k] + (j(c) * y[k - 1] if k >= 1 else 0.0)
        if k <= n - 2:
            dy[k] = -g(c) * z[k] - j(c - 1) * z[k + 1]
        else:
            dy[k] = -g(1) * z[k] + p_in * z[n]
    dz[n] = -p_in * y[n - 1]
    return ReducedState(dz, dy)


def reduced_generators(wire: Circuit, clock_prefactor: float = CLOCK_PREFACTOR):
    """Split the right-hand side as ``sum_g c_g(t) M_g``.

    Returns ``(schedules, mats)``; ``mats[0]`` is time independent and
    ``mats[g]`` is scaled by ``schedules[g-1]``.
    """
    _check_chain(wire)
    n = wire.n_cells
    size = 2 * n + 1
    js = wire.chain_couplings()
    schedules = []
    index = {}

    def group(s):
        if s not in index:
            schedules.append(s)
            index[s] = len(schedules)
        return index[s]

    mats = {0: np.zeros((size, size))}

    def add(g, row, col, val):
        mats.setdefault(g, np.zeros((size, size)))[row, col] += val

    def zi(k):
        return k

    def yi(k):
        return n + 1 + k

    for k in range(n):
        c = n - k
        gc = group(wire.clock_of(c))
        add(gc, zi(k), yi(k), 2.0 * clock_prefactor)
        add(gc, yi(k), zi(k), -2.0 * clock_prefactor)
        if k >= 1:
            add(0, zi(k), yi(k - 1), js[c - 1])
        if k <= n - 2:
            add(0, yi(k), zi(k + 1), -js[c - 2])
    gp = group(wire.drivers[0].schedule)
    add(gp, yi(n - 1), zi(n), 1.0)
    add(gp, zi(n), yi(n - 1), -1.0)
    stack = np.array([mats.get(g, np.zeros((size, size))) for g in range(len(schedules) + 1)])
    return schedules, stack


def evolve_reduced(
    wire: Circuit,
    label: str,
    dt: float = DEFAULT_DT,
    t_f: float | None = None,
    sample_every: int | None = None,
    clock_prefactor: float = CLOCK_PREFACTOR,
) -> Trajectory:
    """Integrate the reduced system from basis state ``label``.

    The trajectory has a ``Z0`` column (the output polarization) plus every
    other component as ``Z1..ZN`` and ``Y0..Y(N-1)``.
    """
    t_f = t_f or wire.t_f
    n = wire.n_cells
    schedules, mats = reduced_generators(wire, clock_prefactor)
    grid = TimeGrid.from_dt(t_f, dt)
    ts = grid.half_steps()
    coefs = np.ascontiguousarray(
        np.stack([np.ones_like(ts)] + [s.values(ts) for s in schedules], axis=1)
    )
    names = [f"Z{k}" for k in range(n + 1)] + [f"Y{k}" for k in range(n)]
    rec = _Recorder(names)

    def advance(y, row0, steps):
        return _kernels.advance_linear(y, coefs, row0, steps, grid.h, mats)

    def sample(t, y):
        rec.add(t, dict(zip(names, y)))

    _march(grid, sample_every, init_reduced(label, wire).to_vector(), advance, sample)
    return rec.trajectory()


def full_output_polarization(
    circuit: Circuit,
    labels: list[str],
    dt: float = DEFAULT_DT,
    t_f: float | None = None,
    sample_every: int | None = None,
    clock_prefactor: float = CLOCK_PREFACTOR,
) -> tuple[np.ndarray, np.ndarray]:
    """Output polarization trajectories of full state-vector runs.

    Returns ``(times, P)`` with ``P[:, k]`` the trajectory for ``labels[k]``.
    """
    t_f = t_f or circuit.t_f
    h = build_template(circuit, clock_prefactor=clock_prefactor)
    states = np.stack([basis_state(check_label(lab, circuit.n_cells)) for lab in labels], axis=1)
    probe = {"P_out": z_string(circuit.n_cells, circuit.output_cell)}
    _, times, values = evolve_batch(h, states, t_f, dt, probe, sample_every)
    return times, values["P_out"]


def compare_with_full(
    wire: Circuit,
    label: str | list[str],
    dt: float = DEFAULT_DT,
    t_f: float | None = None,
    sample_every: int | None = None,
    clock_prefactor: float = CLOCK_PREFACTOR,
):
    """Largest ``|Z_0^reduced(t) - P_out^full(t)|`` over the shared sample grid.

    ``wire`` may carry NNN couplings; they enter the full evolution only.
    For a list of labels an array of deviations is returned.
    """
    labels = [label] if isinstance(label, str) else list(label)
    times, full = full_output_polarization(wire, labels, dt, t_f, sample_every, clock_prefactor)
    out = []
    for k, lab in enumerate(labels):
        red = evolve_reduced(wire, lab, dt, t_f, sample_every, clock_prefactor)
        if not np.array_equal(red.times, times):
            raise RuntimeError("reduced and full runs sampled on different grids")
        out.append(float(np.max(np.abs(red["Z0"] - full[:, k]))))
    return out[0] if isinstance(label, str) else np.array(out)
