"""Instantaneous spectra of H(t) over a clocking cycle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .pauli import HamiltonianTemplate, assemble

DEFAULT_SWEEP_SAMPLES = 201
RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class SpectrumSample:
    t: float
    eigenvalues: np.ndarray  # ascending, E_k units

    @property
    def gap(self) -> float:
        """E_1 - E_0 (needs at least two levels)."""
        return float(self.eigenvalues[1] - self.eigenvalues[0])


def instantaneous_spectrum(
    h: HamiltonianTemplate, t: float, k: int, check_residuals: bool = True
) -> SpectrumSample:
    """Lowest ``k`` eigenvalues of ``H(t)`` from a dense Hermitian eigensolve."""
    if not 1 <= k <= h.dimension:
        raise ValueError(f"k must be in 1..{h.dimension}, got {k}")
    m = assemble(h, t)
    w, v = np.linalg.eigh(m)
    if check_residuals:
        scale = max(np.linalg.norm(m, 2), 1.0)
        res = np.linalg.norm(m @ v[:, :k] - v[:, :k] * w[:k], axis=0)
        if np.any(res > RESIDUAL_TOL * scale):
            raise ArithmeticError(f"eigen-residual {res.max():.3e} exceeds tolerance")
    return SpectrumSample(float(t), w[:k].copy())


def spectrum_sweep(
    h: HamiltonianTemplate, samples: int = DEFAULT_SWEEP_SAMPLES, k: int = 4, t_f: float | None = None
) -> list[SpectrumSample]:
    """Spectra on a uniform grid over ``[0, t_f]``, both ends included."""
    if samples < 2:
        raise ValueError("a sweep needs at least two samples")
    t_f = t_f or h.t_f
    ts = np.linspace(0.0, t_f, samples)
    ts[-1] = t_f
    return [instantaneous_spectrum(h, t, k) for t in ts]


def min_gap(sweep: list[SpectrumSample]) -> tuple[float, float]:
    """``(t*, gap)`` for the smallest ground-to-first-excited gap in the sweep."""
    gaps = [s.gap for s in sweep]
    i = int(np.argmin(gaps))
    return sweep[i].t, gaps[i]
