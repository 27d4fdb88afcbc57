"""Exact split of the density matrix into a wire part and an NNN correction.

``rho = rho_wire + rho_I`` where ``rho_wire`` evolves under the
nearest-neighbour Hamiltonian alone and ``rho_I`` (zero at t=0) carries the
effect of the next-to-nearest-neighbour terms:

    d rho_wire/dt = -i [H_wire, rho_wire]
    d rho_I/dt    = -i [H_wire + H_I, rho_I] - i [H_I, rho_wire]

Summing the two recovers the Von Neumann equation under ``H_wire + H_I``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .circuit import MAX_DENSITY_CELLS, Circuit
from .evolution import (
    DEFAULT_DT,
    TimeGrid,
    Trajectory,
    _march,
    _Recorder,
    check_density,
    kernel_tables,
)
from .observables import pauli_expectation, z_string
from .pauli import CLOCK_PREFACTOR, PauliString, build_template, nnn_template


@dataclass
class SplitState:
    rho_wire: np.ndarray
    rho_I: np.ndarray

    @property
    def total(self) -> np.ndarray:
        return self.rho_wire + self.rho_I


def polarization_shift(s: SplitState, cell: int) -> float:
    """``Tr(sigma_z^cell rho_I)``: the polarization change caused by the NNN terms."""
    n = int(np.log2(s.rho_I.shape[0]))
    return pauli_expectation(s.rho_I, z_string(n, cell))


def correlator_string(n_cells: int) -> PauliString:
    return PauliString.from_cells(n_cells, {n_cells - 2: "Z", n_cells: "X"})


def driving_correlator(rho_wire: np.ndarray, n_cells: int) -> float:
    """``Tr(sigma_z^(N-2) sigma_x^N rho_wire)``, the source that feeds the shift."""
    if n_cells < 3:
        raise ValueError("the correlator needs at least three cells")
    return pauli_expectation(rho_wire, correlator_string(n_cells))


def evolve_split(
    c: Circuit,
    rho0: np.ndarray,
    dt: float = DEFAULT_DT,
    t_f: float | None = None,
    sample_every: int | None = None,
    with_total: bool = False,
    clock_prefactor: float = CLOCK_PREFACTOR,
) -> tuple[SplitState, Trajectory]:
    """Evolve ``(rho_wire, rho_I)`` in lockstep.

    Trajectory columns: ``shift`` (output cell), ``P_wire``, ``P_split``
    (from ``rho_wire + rho_I``), ``trace_I``, ``y_I`` (``Tr(sigma_y^N
    rho_I)``), ``correlator``, ``trace_wire`` and ``purity_wire``.  With
    ``with_total`` the full density matrix is also evolved under
    ``H_wire + H_I`` and the columns ``P_total``, ``purity_total`` and
    ``split_error`` (max-abs entry of the difference) are added.
    """
    if not c.nnn_couplings:
        raise ValueError("circuit has no NNN couplings; there is nothing to split")
    n = c.n_cells
    if n > MAX_DENSITY_CELLS:
        raise ValueError(f"density evolution is limited to {MAX_DENSITY_CELLS} cells")
    rho0 = np.array(rho0, dtype=complex)
    check_density(rho0, 2**n)
    t_f = t_f or c.t_f
    grid = TimeGrid.from_dt(t_f, dt)
    ts = grid.half_steps()

    h_wire = build_template(c, include_nnn=False, clock_prefactor=clock_prefactor)
    h_int = nnn_template(c)
    h_total = build_template(c, clock_prefactor=clock_prefactor)
    coefs_w = h_wire._kernel.coefficient_table(ts)
    coefs_i = h_int._kernel.coefficient_table(ts)
    coefs_t = h_total._kernel.coefficient_table(ts)
    wire_tab = kernel_tables(h_wire)
    if h_int._kernel.term_group.size:
        raise ValueError("interaction Hamiltonian must be diagonal")
    int_diags = h_int._kernel.diags
    total_tab = kernel_tables(h_total)

    out = n
    zs = z_string(n, out)
    ys = PauliString.from_cells(n, {out: "Y"})
    corr = correlator_string(n) if n >= 3 else None
    names = ["shift", "P_wire", "P_split", "trace_I", "y_I", "correlator", "trace_wire", "purity_wire"]
    if with_total:
        names += ["P_total", "purity_total", "split_error"]
    rec = _Recorder(names)

    def advance(state, row0, steps):
        rw, ri, rt = state
        rw, ri = _kernels.advance_split(rw, ri, coefs_w, coefs_i, row0, steps, grid.h, wire_tab, int_diags)
        if with_total:
            rt = _kernels.advance_density(rt, coefs_t, row0, steps, grid.h, *total_tab)
        return rw, ri, rt

    def sample(t, state):
        rw, ri, rt = state
        vals = {
            "shift": pauli_expectation(ri, zs),
            "P_wire": pauli_expectation(rw, zs),
            "P_split": pauli_expectation(rw + ri, zs),
            "trace_I": float(np.trace(ri).real),
            "y_I": pauli_expectation(ri, ys),
            "correlator": pauli_expectation(rw, corr) if corr is not None else 0.0,
            "trace_wire": float(np.trace(rw).real),
            "purity_wire": float(np.vdot(rw, rw).real),
        }
        if with_total:
            vals["P_total"] = pauli_expectation(rt, zs)
            vals["purity_total"] = float(np.vdot(rt, rt).real)
            vals["split_error"] = float(np.max(np.abs(rw + ri - rt)))
        rec.add(t, vals)

    start = (rho0, np.zeros_like(rho0), rho0.copy() if with_total else None)
    rw, ri, _ = _march(grid, sample_every, start, advance, sample)
    return SplitState(rw, ri), rec.trajectory()


def zero_crossings(x: np.ndarray, floor: float = 1e-12) -> int:
    """Sign changes in ``x``, ignoring samples with ``|x| <= floor``."""
    signs = np.sign(x[np.abs(x) > floor])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
