"""Fixed-step RK4 integration of the Schrodinger and Von Neumann equations.

All integrators share one time grid: ``n = round(t_f / dt)`` steps of
``h = t_f / n``, with the Hamiltonian evaluated at the start, midpoint and
end of every step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from . import _kernels
from .circuit import MAX_DENSITY_CELLS
from .pauli import HamiltonianTemplate, PauliString, pauli_apply

DEFAULT_DT = 1e-3
DEFAULT_SAMPLES = 300
NORM_TOL = 1e-9


@dataclass
class Trajectory:
    """Sampled observables; ``columns[name][k]`` is the value at ``times[k]``."""

    times: np.ndarray
    columns: dict[str, np.ndarray] = field(default_factory=dict)

    def __getitem__(self, name: str) -> np.ndarray:
        return self.columns[name]

    def names(self) -> list[str]:
        return list(self.columns)

    def rows(self):
        """Yield one ``{"t": t, name: value, ...}`` record per sample."""
        for k, t in enumerate(self.times):
            row = {"t": float(t)}
            row.update({name: float(col[k]) for name, col in self.columns.items()})
            yield row


@dataclass(frozen=True)
class TimeGrid:
    t_f: float
    n_steps: int

    @classmethod
    def from_dt(cls, t_f: float, dt: float) -> TimeGrid:
        if not dt > 0:
            raise ValueError(f"dt must be positive, got {dt}")
        if not t_f > 0:
            raise ValueError(f"t_f must be positive, got {t_f}")
        if t_f / dt < 1 - 1e-12:
            raise ValueError(f"t_f/dt must be at least 1 (t_f={t_f}, dt={dt})")
        return cls(float(t_f), max(1, int(round(t_f / dt))))

    @property
    def h(self) -> float:
        return self.t_f / self.n_steps

    def half_steps(self) -> np.ndarray:
        ts = np.arange(2 * self.n_steps + 1) * (self.h / 2)
        ts[-1] = self.t_f
        return ts

    def sample_steps(self, sample_every: int | None) -> list[int]:
        """Step counts at which samples are taken, always including 0 and n."""
        every = sample_every or max(1, self.n_steps // DEFAULT_SAMPLES)
        if every < 1:
            raise ValueError("sample_every must be >= 1")
        steps = list(range(0, self.n_steps + 1, every))
        if steps[-1] != self.n_steps:
            steps.append(self.n_steps)
        return steps

    def time_of(self, step: int) -> float:
        return self.t_f if step == self.n_steps else step * self.h


def kernel_tables(h: HamiltonianTemplate):
    k = h._kernel
    return k.diags, k.term_group, k.gather, k.phase


def _march(grid: TimeGrid, sample_every, state, advance, sample):
    """Advance ``state`` between sample points, calling ``sample(t, state)``."""
    steps = grid.sample_steps(sample_every)
    sample(0.0, state)
    for prev, nxt in zip(steps, steps[1:]):
        state = advance(state, 2 * prev, nxt - prev)
        sample(grid.time_of(nxt), state)
    return state


class _Recorder:
    def __init__(self, names):
        self.times = []
        self.values = {name: [] for name in names}

    def add(self, t, values):
        self.times.append(t)
        for name, col in self.values.items():
            col.append(values[name])

    def trajectory(self) -> Trajectory:
        return Trajectory(np.array(self.times), {k: np.array(v) for k, v in self.values.items()})


def batch_expectation(p: PauliString, states: np.ndarray) -> np.ndarray:
    """``<psi_k|P|psi_k>`` for every column of ``states``."""
    return np.einsum("ij,ij->j", states.conj(), pauli_apply(p, states)).real


def _check_normalized(v: np.ndarray):
    norms = np.linalg.norm(v, axis=0)
    if np.any(np.abs(norms - 1.0) > NORM_TOL):
        raise ValueError(f"initial state is not normalized (norm {norms})")


def evolve_batch(
    h: HamiltonianTemplate,
    states: np.ndarray,
    t_f: float,
    dt: float = DEFAULT_DT,
    probes: Mapping[str, PauliString] | None = None,
    sample_every: int | None = None,
) -> tuple[np.ndarray, np.ndarray, dict[str, np.ndarray]]:
    """Evolve the columns of ``states`` together under ``i dpsi/dt = H(t) psi``.

    Returns ``(final_states, times, values)``; ``values[name]`` has shape
    ``(n_samples, n_states)`` and ``values["norm"]`` is always present.
    The states are never renormalized.
    """
    states = np.array(states, dtype=complex)
    if states.ndim != 2 or states.shape[0] != h.dimension:
        raise ValueError(f"batch shape {states.shape} does not match dimension {h.dimension}")
    _check_normalized(states)
    probes = dict(probes or {})
    grid = TimeGrid.from_dt(t_f, dt)
    coefs = h._kernel.coefficient_table(grid.half_steps())
    tables = kernel_tables(h)
    rec = _Recorder(["norm", *probes])

    def advance(v, row0, n):
        return _kernels.advance_states(v, coefs, row0, n, grid.h, *tables)

    def sample(t, v):
        vals = {"norm": np.linalg.norm(v, axis=0)}
        vals.update({name: batch_expectation(p, v) for name, p in probes.items()})
        rec.add(t, vals)

    final = _march(grid, sample_every, np.ascontiguousarray(states), advance, sample)
    traj = rec.trajectory()
    return final, traj.times, traj.columns


def evolve_state(
    h: HamiltonianTemplate,
    v0: np.ndarray,
    t_f: float,
    dt: float = DEFAULT_DT,
    probes: Mapping[str, PauliString] | None = None,
    sample_every: int | None = None,
) -> tuple[np.ndarray, Trajectory]:
    """Integrate ``i d|psi>/dt = H(t)|psi>`` from 0 to ``t_f``.

    The trajectory has a ``norm`` column followed by one expectation-value
    column per probe.
    """
    v0 = np.asarray(v0, dtype=complex)
    if v0.shape != (h.dimension,):
        raise ValueError(f"state shape {v0.shape} does not match dimension {h.dimension}")
    final, times, values = evolve_batch(h, v0[:, None], t_f, dt, probes, sample_every)
    return final[:, 0], Trajectory(times, {k: v[:, 0] for k, v in values.items()})


# -- density matrices -------------------------------------------------------


def hermitian_part(rho: np.ndarray) -> np.ndarray:
    return 0.5 * (rho + rho.conj().T)


def check_density(rho: np.ndarray, dim: int, trace: float | None = 1.0, tol: float = 1e-9):
    """Raise ``ValueError`` unless ``rho`` is a Hermitian ``(dim, dim)`` matrix of the given trace."""
    if rho.shape != (dim, dim):
        raise ValueError(f"density matrix shape {rho.shape} does not match dimension {dim}")
    if not np.allclose(rho, rho.conj().T, atol=tol, rtol=0):
        raise ValueError("density matrix is not Hermitian")
    if trace is not None and abs(np.trace(rho) - trace) > tol:
        raise ValueError(f"density matrix trace {np.trace(rho).real} != {trace}")


def density_from_state(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def maximally_mixed(n_cells: int) -> np.ndarray:
    dim = 2**n_cells
    return np.eye(dim, dtype=complex) / dim


def density_expectation(p: PauliString, rho: np.ndarray) -> float:
    from .observables import pauli_expectation

    return pauli_expectation(rho, p)


def evolve_density(
    h: HamiltonianTemplate,
    rho0: np.ndarray,
    t_f: float,
    dt: float = DEFAULT_DT,
    probes: Mapping[str, PauliString] | None = None,
    sample_every: int | None = None,
) -> tuple[np.ndarray, Trajectory]:
    """Integrate ``d rho/dt = -i [H(t), rho]`` from 0 to ``t_f``.

    ``rho`` is replaced by its Hermitian part after every step.  Columns
    ``trace`` and ``purity`` (Tr rho^2) are always recorded.
    """
    if h.n_cells > MAX_DENSITY_CELLS:
        raise ValueError(f"density evolution is limited to {MAX_DENSITY_CELLS} cells")
    rho0 = np.array(rho0, dtype=complex)
    check_density(rho0, h.dimension)
    probes = dict(probes or {})
    grid = TimeGrid.from_dt(t_f, dt)
    coefs = h._kernel.coefficient_table(grid.half_steps())
    tables = kernel_tables(h)
    rec = _Recorder(["trace", "purity", *probes])

    def advance(rho, row0, n):
        return _kernels.advance_density(rho, coefs, row0, n, grid.h, *tables)

    def sample(t, rho):
        vals = {"trace": float(np.trace(rho).real), "purity": float(np.vdot(rho, rho).real)}
        vals.update({name: density_expectation(p, rho) for name, p in probes.items()})
        rec.add(t, vals)

    rho = _march(grid, sample_every, rho0, advance, sample)
    return rho, rec.trajectory()


def rk4_reference(
    rhs: Callable[[float, np.ndarray], np.ndarray], y0: np.ndarray, t_f: float, dt: float
) -> np.ndarray:
    """Plain-Python RK4 on the same grid as the compiled integrators.

    Slow; kept as an independent check of the compiled loops.
    """
    grid = TimeGrid.from_dt(t_f, dt)
    h = grid.h
    y = np.array(y0, dtype=complex)
    for k in range(grid.n_steps):
        t = k * h
        t1 = grid.time_of(k + 1)
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2, y + (h / 2) * k1)
        k3 = rhs(t + h / 2, y + (h / 2) * k2)
        k4 = rhs(t1, y + h * k3)
        y = y + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


def norm_drift(traj: Trajectory) -> float:
    return float(np.max(np.abs(traj["norm"] - 1.0)))
