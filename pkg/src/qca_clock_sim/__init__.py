"""Adiabatically clocked quantum-dot cellular automata (QCA) simulator.

Units throughout are hbar = E_k = 1.  Cells are numbered from 1; basis
labels list cell 1 first, bit 1 is polarization +1 and bit 0 is -1.
"""

from .circuit import (
    Circuit,
    CircuitError,
    ClockZone,
    Coupling,
    Driver,
    doubly_branched_inverter,
    majority_gate,
    singly_branched_inverter,
    wire,
)
from .config import Config, ConfigError, load_config, parse_circuit, parse_config
from .evolution import evolve_batch, evolve_density, evolve_state
from .gates import adiabatic_ground_state, run_gate
from .observables import (
    bit_probability,
    kink_count,
    pauli_expectation,
    polarization,
    transition_probabilities,
)
from .pauli import CLOCK_PREFACTOR, PauliString, assemble, basis_state, build_template
from .reduced import compare_with_full, evolve_reduced
from .schedules import Constant, CosineSwitch, PiecewiseLinear, SineRamp, evaluate_schedule
from .spectra import instantaneous_spectrum, min_gap, spectrum_sweep
from .split import evolve_split, polarization_shift

__all__ = [
    "CLOCK_PREFACTOR",
    "Circuit",
    "CircuitError",
    "ClockZone",
    "Config",
    "ConfigError",
    "Constant",
    "CosineSwitch",
    "Coupling",
    "Driver",
    "PauliString",
    "PiecewiseLinear",
    "SineRamp",
    "adiabatic_ground_state",
    "assemble",
    "basis_state",
    "bit_probability",
    "build_template",
    "compare_with_full",
    "doubly_branched_inverter",
    "evaluate_schedule",
    "evolve_batch",
    "evolve_density",
    "evolve_reduced",
    "evolve_split",
    "evolve_state",
    "instantaneous_spectrum",
    "kink_count",
    "load_config",
    "majority_gate",
    "min_gap",
    "parse_circuit",
    "parse_config",
    "pauli_expectation",
    "polarization",
    "polarization_shift",
    "run_gate",
    "singly_branched_inverter",
    "spectrum_sweep",
    "transition_probabilities",
    "wire",
]
