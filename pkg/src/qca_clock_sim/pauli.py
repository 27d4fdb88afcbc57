"""Pauli-string Hamiltonians compiled from circuits.

Single-cell operators act on ``|0>, |1>`` as

    sigma_z = diag(-1, +1),   sigma_x = [[0, 1], [1, 0]],   sigma_y = [[0, i], [-i, 0]]

The sign of sigma_z follows the cell convention (``|0>`` has polarization
-1); sigma_y is chosen so that the usual algebra ``sigma_x sigma_y = i
sigma_z`` still holds, which the reduced observable equations rely on.
On a basis state with bit b and m = 2b - 1:

    sigma_z |b> = m |b>,   sigma_x |b> = |1-b>,   sigma_y |b> = i m |1-b>
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

import numpy as np

from .circuit import Circuit, check_label, label_to_index, spins
from .schedules import Schedule

_LETTERS = frozenset("IXYZ")

# Transverse clock term is CLOCK_PREFACTOR * gamma(t) * sigma_x (in E_k).  With
# a prefactor of 1/2 a 4-cell wire at gamma_max = 0.5, t_f = 30 barely switches
# (output |1> probability ~0.04); with 1 it switches with probability 0.9868.
CLOCK_PREFACTOR = 1.0


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-cell Pauli letters with a real coefficient.

    ``letters[0]`` acts on cell 1.
    """

    letters: str
    coefficient: float = 1.0

    def __post_init__(self):
        if not self.letters or set(self.letters) - _LETTERS:
            raise ValueError(f"bad Pauli letters {self.letters!r}")
        if not np.isfinite(self.coefficient):
            raise ValueError("Pauli coefficient must be finite")

    @classmethod
    def from_cells(cls, n_cells: int, ops: Mapping[int, str], coefficient: float = 1.0) -> PauliString:
        """Build from a ``{cell: letter}`` map, identity elsewhere."""
        letters = ["I"] * n_cells
        for cell, letter in ops.items():
            if not 1 <= cell <= n_cells:
                raise ValueError(f"cell {cell} outside 1..{n_cells}")
            letters[cell - 1] = letter
        return cls("".join(letters), coefficient)

    @property
    def n_cells(self) -> int:
        return len(self.letters)

    @property
    def flip_mask(self) -> int:
        """Bit mask of the cells flipped by X and Y letters."""
        n = self.n_cells
        return sum(1 << (n - 1 - i) for i, ch in enumerate(self.letters) if ch in "XY")

    @property
    def is_diagonal(self) -> bool:
        return self.flip_mask == 0

    def phases(self) -> np.ndarray:
        """phi with ``P|j> = phi[j] |j ^ flip_mask>`` (coefficient excluded)."""
        n = self.n_cells
        idx = np.arange(2**n)
        phi = np.ones(2**n, dtype=complex)
        for i, ch in enumerate(self.letters):
            if ch in "ZY":
                m = 2.0 * ((idx >> (n - 1 - i)) & 1) - 1.0
                phi *= m if ch == "Z" else 1j * m
        return phi

    def __str__(self) -> str:
        return f"{self.coefficient:+g}*{self.letters}"


def pauli_apply(p: PauliString, v: np.ndarray) -> np.ndarray:
    """``P v`` for a vector, or column-wise for a ``(dim, m)`` array."""
    dim = 2**p.n_cells
    if v.shape[0] != dim:
        raise ValueError(f"state dimension {v.shape[0]} does not match {dim}")
    gather = np.arange(dim) ^ p.flip_mask
    ph = p.coefficient * p.phases()[gather]
    if v.ndim == 2:
        ph = ph[:, None]
    return ph * v[gather]


@dataclass(frozen=True)
class HamiltonianTemplate:
    """Static Pauli terms plus terms scaled by a schedule value.

    ``H(t) = sum(static) + sum(s(t) * P for P, s in driven)``.  Dense
    matrices are only ever built on request by :func:`assemble`.
    """

    n_cells: int
    static_terms: tuple[PauliString, ...]
    driven_terms: tuple[tuple[PauliString, Schedule], ...]

    @property
    def dimension(self) -> int:
        return 2**self.n_cells

    @property
    def t_f(self) -> float | None:
        ends = [s.t_f for _, s in self.driven_terms if s.t_f is not None]
        return max(ends) if ends else None

    @cached_property
    def _kernel(self) -> _Kernel:
        return _Kernel(self)

    def coefficients(self, t: float) -> np.ndarray:
        return self._kernel.coefficients(t)

    def __add__(self, other: HamiltonianTemplate) -> HamiltonianTemplate:
        if other.n_cells != self.n_cells:
            raise ValueError("templates act on different cell counts")
        return HamiltonianTemplate(
            self.n_cells,
            self.static_terms + other.static_terms,
            self.driven_terms + other.driven_terms,
        )


class _Kernel:
    """Term tables grouped by schedule.

    ``diags[g]`` is the summed diagonal of group ``g`` (group 0 is static);
    off-diagonal term ``k`` belongs to group ``term_group[k]`` and acts as
    ``out[i] += c_g * phase[k, i] * v[gather[k, i]]``.
    """

    def __init__(self, h: HamiltonianTemplate):
        dim = h.dimension
        self.dim = dim
        self.schedules: list[Schedule] = []
        index: dict = {}
        groups = [(0, p) for p in h.static_terms]
        for p, s in h.driven_terms:
            if s not in index:
                index[s] = len(self.schedules) + 1
                self.schedules.append(s)
            groups.append((index[s], p))

        n_groups = len(self.schedules) + 1
        self.diags = np.zeros((n_groups, dim))
        arange = np.arange(dim)
        tg, gathers, phases = [], [], []
        for g, p in groups:
            if p.is_diagonal:
                self.diags[g] += p.coefficient * p.phases().real
            else:
                gather = arange ^ p.flip_mask
                tg.append(g)
                gathers.append(gather)
                phases.append(p.coefficient * p.phases()[gather])
        self.term_group = np.array(tg, dtype=np.int64)
        self.gather = np.array(gathers, dtype=np.int64).reshape(len(tg), dim)
        phase = np.array(phases, dtype=complex).reshape(len(tg), dim)
        # X-only strings have real phases; the compiled loops run faster on them
        self.phase = phase.real.copy() if np.all(phase.imag == 0) else phase

    def coefficients(self, t: float) -> np.ndarray:
        return np.array([1.0] + [s.value(t) for s in self.schedules])

    def coefficient_table(self, ts: np.ndarray) -> np.ndarray:
        """Coefficients at each of ``ts``, shape ``(len(ts), n_groups)``."""
        ts = np.asarray(ts, dtype=float)
        cols = [np.ones_like(ts)] + [s.values(ts) for s in self.schedules]
        return np.ascontiguousarray(np.stack(cols, axis=1))

    def diagonal(self, coefs) -> np.ndarray:
        return np.asarray(coefs) @ self.diags

    def apply(self, coefs, v: np.ndarray) -> np.ndarray:
        d = self.diagonal(coefs)
        out = (d[:, None] if v.ndim == 2 else d) * v
        for g, gather, ph in zip(self.term_group, self.gather, self.phase):
            c = coefs[g]
            if c == 0.0:
                continue
            w = c * ph
            out += (w[:, None] if v.ndim == 2 else w) * v[gather]
        return out

    def dense(self, coefs) -> np.ndarray:
        m = np.diag(self.diagonal(coefs)).astype(complex)
        rows = np.arange(self.dim)
        for g, gather, ph in zip(self.term_group, self.gather, self.phase):
            if coefs[g] != 0.0:
                m[rows, gather] += coefs[g] * ph
        return m


def build_template(
    c: Circuit, include_nnn: bool = True, clock_prefactor: float = CLOCK_PREFACTOR
) -> HamiltonianTemplate:
    """Compile ``c`` into Pauli terms.

    Each coupling contributes ``-(J/2) Z_a Z_b``, each NNN pair
    ``-(J_nnn/2) Z_a Z_b``, each driver ``+(1/2) Z_c`` scaled by P(t) and
    each clocked cell ``clock_prefactor * X_i`` scaled by its zone's gamma(t).
    """
    n = c.n_cells
    pairs = list(c.couplings) + (list(c.nnn_couplings) if include_nnn else [])
    static = tuple(PauliString.from_cells(n, {cp.a: "Z", cp.b: "Z"}, -cp.j / 2) for cp in pairs)
    driven = [(PauliString.from_cells(n, {d.cell: "Z"}, 0.5), d.schedule) for d in c.drivers]
    for zone in c.clock_zones:
        driven += [
            (PauliString.from_cells(n, {i: "X"}, clock_prefactor), zone.schedule) for i in zone.cells
        ]
    return HamiltonianTemplate(n, static, tuple(driven))


def nnn_template(c: Circuit) -> HamiltonianTemplate:
    """Only the next-to-nearest-neighbour terms of ``c``."""
    n = c.n_cells
    static = tuple(
        PauliString.from_cells(n, {cp.a: "Z", cp.b: "Z"}, -cp.j / 2) for cp in c.nnn_couplings
    )
    return HamiltonianTemplate(n, static, ())


def assemble(h: HamiltonianTemplate, t: float) -> np.ndarray:
    """Dense ``H(t)`` as a complex ``(2^n, 2^n)`` array."""
    return h._kernel.dense(h.coefficients(t))


def apply(h: HamiltonianTemplate, t: float, v: np.ndarray) -> np.ndarray:
    """Matrix-free ``H(t) v``; ``v`` may also be a ``(2^n, m)`` batch."""
    v = np.asarray(v)
    if v.shape[0] != h.dimension or v.ndim not in (1, 2):
        raise ValueError(f"state shape {v.shape} does not match dimension {h.dimension}")
    return h._kernel.apply(h.coefficients(t), v.astype(complex, copy=False))


def diagonal(h: HamiltonianTemplate, t: float) -> np.ndarray:
    """Diagonal of ``H(t)`` in the computational basis."""
    return h._kernel.diagonal(h.coefficients(t))


def classical_energy(c: Circuit, label: str, t: float, include_nnn: bool = True) -> float:
    """Diagonal element of ``H(t)`` for basis state ``label``.

    Computed directly from the circuit, not from a compiled template; the
    transverse clock terms never contribute to the diagonal.
    """
    check_label(label, c.n_cells)
    m = spins(label)
    pairs = list(c.couplings) + (list(c.nnn_couplings) if include_nnn else [])
    e = -0.5 * sum(cp.j * m[cp.a - 1] * m[cp.b - 1] for cp in pairs)
    e += 0.5 * sum(d.schedule.value(t) * m[d.cell - 1] for d in c.drivers)
    return float(e)


def basis_state(label: str) -> np.ndarray:
    """Computational basis vector for ``label``."""
    v = np.zeros(2 ** len(label), dtype=complex)
    v[label_to_index(label)] = 1.0
    return v
