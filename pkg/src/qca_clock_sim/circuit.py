"""Circuit description: cells, couplings, drivers and clock zones.

Conventions used throughout the package:

* hbar = 1 and E_k = 1, so energies are in E_k and times in hbar/E_k.
* Cells are numbered from 1.  A basis label is a bit string with cell 1
  leftmost; bit ``1`` is polarization +1 and bit ``0`` polarization -1.
* The basis index packs cell 1 as the most significant bit.
* A driver term is ``+(1/2) P(t) sigma_z`` on its target cell, so ``P = +1``
  pulls the cell towards ``|0>`` and ``P = -1`` towards ``|1>``.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .schedules import Constant, CosineSwitch, Schedule, SineRamp

MAX_CELLS = 12
MAX_DENSITY_CELLS = 10
DEFAULT_NNN_FACTOR = 1.0 / 32.0


class CircuitError(ValueError):
    """A circuit violates one of its structural invariants."""


@dataclass(frozen=True)
class Coupling:
    a: int
    b: int
    j: float = 1.0


@dataclass(frozen=True)
class Driver:
    cell: int
    schedule: Schedule


@dataclass(frozen=True)
class ClockZone:
    cells: tuple[int, ...]
    schedule: Schedule

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(int(c) for c in self.cells))


@dataclass(frozen=True)
class Circuit:
    """Immutable circuit description; validated on construction.

    The output cell of every circuit is the last cell, ``n_cells``.
    """

    n_cells: int
    couplings: tuple[Coupling, ...] = ()
    nnn_couplings: tuple[Coupling, ...] = ()
    drivers: tuple[Driver, ...] = ()
    clock_zones: tuple[ClockZone, ...] = ()
    kink_energy: float = field(default=1.0)

    def __post_init__(self):
        for name in ("couplings", "nnn_couplings", "drivers", "clock_zones"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        validate(self)

    @property
    def output_cell(self) -> int:
        return self.n_cells

    @property
    def t_f(self) -> float | None:
        """Longest schedule duration, or None if every schedule is constant."""
        ends = [s.t_f for s in self.schedules() if s.t_f is not None]
        return max(ends) if ends else None

    def schedules(self) -> list[Schedule]:
        return [d.schedule for d in self.drivers] + [z.schedule for z in self.clock_zones]

    def clock_of(self, cell: int) -> Schedule:
        for zone in self.clock_zones:
            if cell in zone.cells:
                return zone.schedule
        raise KeyError(cell)

    def without_nnn(self) -> Circuit:
        return replace(self, nnn_couplings=())

    def is_chain(self) -> bool:
        """True when the couplings are exactly (i, i+1) for i = 1..n-1."""
        pairs = sorted(tuple(sorted((c.a, c.b))) for c in self.couplings)
        return pairs == [(i, i + 1) for i in range(1, self.n_cells)]

    def chain_couplings(self) -> list[float]:
        """Coupling strengths J_i between cells i and i+1 of a chain."""
        if not self.is_chain():
            raise CircuitError("circuit is not a linear chain")
        js = {min(c.a, c.b): c.j for c in self.couplings}
        return [js[i] for i in range(1, self.n_cells)]

    def digest(self) -> str:
        """Short stable hash of the circuit contents."""
        text = json.dumps(circuit_to_dict(self), sort_keys=True)
        return hashlib.sha256(text.encode()).hexdigest()[:12]


def validate(c: Circuit) -> Circuit:
    """Check every structural invariant of ``c``; return it unchanged."""
    n = c.n_cells
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_CELLS:
        raise CircuitError(f"n_cells must be an integer in 1..{MAX_CELLS}, got {n!r}")

    def check_cell(i, what):
        if not isinstance(i, (int, np.integer)) or not 1 <= i <= n:
            raise CircuitError(f"{what}: cell index {i!r} outside 1..{n}")

    seen = set()
    for kind, group in (("coupling", c.couplings), ("nnn coupling", c.nnn_couplings)):
        for cp in group:
            check_cell(cp.a, kind)
            check_cell(cp.b, kind)
            if cp.a == cp.b:
                raise CircuitError(f"{kind} ({cp.a}, {cp.b}) couples a cell to itself")
            if not np.isfinite(cp.j):
                raise CircuitError(f"{kind} ({cp.a}, {cp.b}) has non-finite strength")
            key = frozenset((cp.a, cp.b))
            if key in seen:
                raise CircuitError(f"duplicate coupling between cells {cp.a} and {cp.b}")
            seen.add(key)

    for d in c.drivers:
        check_cell(d.cell, "driver")

    owner = {}
    for k, zone in enumerate(c.clock_zones):
        for i in zone.cells:
            check_cell(i, "clock zone")
            if i in owner:
                raise CircuitError(f"cell {i} belongs to clock zones {owner[i]} and {k}")
            owner[i] = k
    missing = sorted(set(range(1, n + 1)) - set(owner))
    if missing:
        raise CircuitError(f"cells {missing} are not in any clock zone")
    if c.kink_energy != 1.0:
        raise CircuitError("kink_energy is the unit of energy and must be 1")
    return c


# -- basis labels -----------------------------------------------------------


def check_label(label: str, n_cells: int) -> str:
    if len(label) != n_cells or set(label) - {"0", "1"}:
        raise ValueError(f"basis label {label!r} is not a {n_cells}-bit string")
    return label


def label_to_index(label: str) -> int:
    return int(label, 2)


def index_to_label(index: int, n_cells: int) -> str:
    return format(index, f"0{n_cells}b")


def spins(label: str) -> np.ndarray:
    """Polarizations m_i = 2 b_i - 1 of every cell."""
    return np.array([2 * int(ch) - 1 for ch in label], dtype=float)


def all_labels(n_cells: int) -> list[str]:
    return ["".join(bits) for bits in itertools.product("01", repeat=n_cells)]


def flip(label: str, cell: int) -> str:
    i = cell - 1
    return label[:i] + ("1" if label[i] == "0" else "0") + label[i + 1:]


# -- named topologies -------------------------------------------------------


def _single_zone(n: int, t_f: float, gamma_max: float) -> tuple[ClockZone, ...]:
    return (ClockZone(tuple(range(1, n + 1)), SineRamp(gamma_max, t_f)),)


def chain_nnn(n_cells: int, factor: float = DEFAULT_NNN_FACTOR) -> tuple[Coupling, ...]:
    """Next-to-nearest-neighbour pairs (i, i+2) of a chain."""
    return tuple(Coupling(i, i + 2, factor) for i in range(1, n_cells - 1))


def wire(n_cells: int, t_f: float = 30.0, gamma_max: float = 0.5, nnn: bool = False) -> Circuit:
    """Uniform chain driven on cell 1 and clocked as a single zone.

    The driver switches from P = +1 to P = -1, i.e. the input moves from
    ``|0>`` to ``|1>``.  With ``nnn`` the (i, i+2) couplings at 1/32 of the
    nearest-neighbour strength are added.
    """
    if not 2 <= n_cells <= MAX_CELLS:
        raise CircuitError(f"wire needs 2..{MAX_CELLS} cells, got {n_cells}")
    return Circuit(
        n_cells=n_cells,
        couplings=tuple(Coupling(i, i + 1, 1.0) for i in range(1, n_cells)),
        nnn_couplings=chain_nnn(n_cells) if nnn else (),
        drivers=(Driver(1, CosineSwitch(1.0, -1.0, t_f)),),
        clock_zones=_single_zone(n_cells, t_f, gamma_max),
    )


def singly_branched_inverter(
    n_cells: int = 4,
    t_f: float = 30.0,
    gamma_max: float = 0.5,
    couplings: Sequence[float] | None = None,
) -> Circuit:
    """Chain whose couplings carry signs; by default the last one is -1.

    ``couplings`` gives J for each (i, i+1) link explicitly.
    """
    base = wire(n_cells, t_f, gamma_max)
    js = list(couplings) if couplings is not None else [1.0] * (n_cells - 2) + [-1.0]
    if len(js) != n_cells - 1:
        raise CircuitError(f"need {n_cells - 1} coupling strengths, got {len(js)}")
    return replace(base, couplings=tuple(Coupling(i, i + 1, float(j)) for i, j in enumerate(js, 1)))


def _arm(first: int, length: int) -> list[Coupling]:
    return [Coupling(i, i + 1, 1.0) for i in range(first, first + length - 1)]


def majority_gate(
    arm_len: int = 1,
    t_f: float = 30.0,
    gamma_max: float = 0.5,
    fixed_inputs: tuple[float, float] = (1.0, 1.0),
) -> Circuit:
    """Three driven input arms joined at a device cell, plus an output arm.

    Layout for arm length L: arm A is cells 1..L, arm B is L+1..2L, arm C is
    2L+1..3L, the device cell is 3L+1 and the output arm 3L+2..4L+1.  The
    outermost cell of each input arm is driven.  Arm A is switched from
    ``|0>`` to ``|1>``; ``fixed_inputs`` are the held polarizations of arms B
    and C (+1 means ``|1>``).
    """
    if arm_len < 1:
        raise CircuitError(f"arm_len must be >= 1, got {arm_len}")
    L = arm_len
    device = 3 * L + 1
    n = 4 * L + 1
    couplings = []
    for first in (1, L + 1, 2 * L + 1):
        couplings += _arm(first, L)
        couplings.append(Coupling(first + L - 1, device, 1.0))
    couplings.append(Coupling(device, device + 1, 1.0))
    couplings += _arm(device + 1, L)
    drivers = (
        Driver(1, CosineSwitch(1.0, -1.0, t_f)),
        # a held polarization m is produced by driver value P = -m
        Driver(L + 1, Constant(-float(fixed_inputs[0]))),
        Driver(2 * L + 1, Constant(-float(fixed_inputs[1]))),
    )
    return Circuit(n, tuple(couplings), (), drivers, _single_zone(n, t_f, gamma_max))


def doubly_branched_inverter(arm_len: int = 1, t_f: float = 60.0, gamma_max: float = 0.5) -> Circuit:
    """Input arm that splits into two branches rejoining at an inverted output.

    Layout for arm length L: input arm 1..L (cell 1 driven), branches
    L+1..2L and 2L+1..3L, output cell 3L+1.  Both branches attach to the
    output through J = -1 couplings.  The input is switched from ``|1>`` to
    ``|0>`` so that a correctly inverting gate ends with its output in ``|1>``.
    """
    if arm_len < 1:
        raise CircuitError(f"arm_len must be >= 1, got {arm_len}")
    L = arm_len
    out = 3 * L + 1
    couplings = _arm(1, L)
    for first in (L + 1, 2 * L + 1):
        couplings.append(Coupling(L, first, 1.0))
        couplings += _arm(first, L)
        couplings.append(Coupling(first + L - 1, out, -1.0))
    drivers = (Driver(1, CosineSwitch(-1.0, 1.0, t_f)),)
    return Circuit(out, tuple(couplings), (), drivers, _single_zone(out, t_f, gamma_max))


def internal_cells(c: Circuit) -> list[int]:
    """Cells that are neither driven nor the output cell."""
    driven = {d.cell for d in c.drivers}
    return [i for i in range(1, c.n_cells + 1) if i not in driven and i != c.output_cell]


def with_gamma_max(c: Circuit, gamma_max: float) -> Circuit:
    """Copy of ``c`` with every sine clock rescaled to amplitude ``gamma_max``."""
    zones = tuple(
        replace(z, schedule=replace(z.schedule, gamma_max=gamma_max))
        if isinstance(z.schedule, SineRamp)
        else z
        for z in c.clock_zones
    )
    return replace(c, clock_zones=zones)


def gamma_max_of(c: Circuit) -> float | None:
    """Largest sine clock amplitude in ``c`` (None without sine clocks)."""
    amps = [z.schedule.gamma_max for z in c.clock_zones if isinstance(z.schedule, SineRamp)]
    return max(amps) if amps else None


# -- configuration documents ------------------------------------------------


def schedule_to_dict(s: Schedule) -> dict:
    if isinstance(s, CosineSwitch):
        return {"type": "cosine", "p0": s.p0, "p1": s.p1, "t_f": s.t_f}
    if isinstance(s, SineRamp):
        return {"type": "sine", "gamma_max": s.gamma_max, "t_f": s.t_f}
    if isinstance(s, Constant):
        return {"type": "constant", "v": s.v}
    return {"type": "piecewise", "points": [list(p) for p in s.points]}


def circuit_to_dict(c: Circuit) -> dict:
    return {
        "cells": c.n_cells,
        "couplings": [{"a": cp.a, "b": cp.b, "j": cp.j} for cp in c.couplings],
        "nnn": {
            "auto": False,
            "factor": DEFAULT_NNN_FACTOR,
            "pairs": [{"a": cp.a, "b": cp.b, "j": cp.j} for cp in c.nnn_couplings],
        },
        "drivers": [{"cell": d.cell, "schedule": schedule_to_dict(d.schedule)} for d in c.drivers],
        "clock_zones": [
            {"cells": list(z.cells), "schedule": schedule_to_dict(z.schedule)} for z in c.clock_zones
        ],
    }

