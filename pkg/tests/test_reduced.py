import numpy as np
import pytest

from qca_clock_sim.circuit import Circuit, ClockZone, Coupling, Driver, majority_gate, singly_branched_inverter, wire
from qca_clock_sim.evolution import rk4_reference
from qca_clock_sim.reduced import (
    ReducedState,
    UnsupportedTopologyError,
    compare_with_full,
    evolve_reduced,
    init_reduced,
    reduced_generators,
    reduced_rhs,
)
from qca_clock_sim.schedules import Constant, CosineSwitch


@pytest.mark.parametrize("lab, z0", [("0000", -1.0), ("0110", -1.0), ("0001", 1.0)])
def test_init_reduced(lab, z0):
    s = init_reduced(lab)
    assert s.z[0] == z0
    assert np.count_nonzero(s.z[1:]) == 0 and np.count_nonzero(s.y) == 0
    assert s.to_vector().size == 2 * 4 + 1


def test_init_requires_latched_output():
    c = Circuit(2, (Coupling(1, 2),), (), (Driver(1, CosineSwitch(1, -1, 5)),), (ClockZone((1, 2), Constant(0.2)),))
    with pytest.raises(ValueError):
        init_reduced("00", c)


def test_latched_output_is_frozen():
    c = Circuit(4, wire(4).couplings, (), wire(4).drivers, (ClockZone((1, 2, 3, 4), Constant(0.0)),))
    s = ReducedState(np.array([1.0, 0.3, -0.2, 0.1, 0.5]), np.array([0.7, 0.4, 0.2, -0.3]))
    assert reduced_rhs(s, 2.0, c).z[0] == 0.0


def test_initial_derivative_vanishes():
    d = reduced_rhs(init_reduced("0000"), 0.0, wire(4, 30, 0.5))
    assert np.count_nonzero(d.to_vector()) == 0


@pytest.mark.parametrize("c", [wire(5, 20, 0.7), singly_branched_inverter(4, 30, 0.5)])
def test_generators_reproduce_rhs(c, rng):
    schedules, mats = reduced_generators(c)
    n = c.n_cells
    for t in (0.0, 3.3, 11.0):
        v = rng.normal(size=2 * n + 1)
        coef = np.array([1.0] + [s.value(t) for s in schedules])
        direct = reduced_rhs(ReducedState.from_vector(v, n), t, c).to_vector()
        assert np.allclose(np.tensordot(coef, mats, 1) @ v, direct, atol=1e-14)


def test_compiled_loop_matches_python_rk4():
    c = wire(4, 6.0, 0.5)
    y0 = init_reduced("0000").to_vector()
    ref = rk4_reference(lambda t, y: reduced_rhs(ReducedState.from_vector(y.real, 4), t, c).to_vector(), y0, 6.0, 0.01)
    traj = evolve_reduced(c, "0000", 0.01)
    assert traj["Z0"][-1] == pytest.approx(ref[0].real, abs=1e-13)


def test_cell1_clock_term_is_needed():
    """Dropping -g_1 Z_(N-1) from the last Y equation loses agreement with full evolution."""
    c = wire(4, 30.0, 0.5)
    full = evolve_reduced(c, "0000", 0.01)["Z0"][-1]

    def truncated(t, y):
        d = reduced_rhs(ReducedState.from_vector(y.real, 4), t, c)
        s = ReducedState.from_vector(y.real, 4)
        d.y[3] += 2.0 * c.clock_of(1).value(t) * s.z[3]
        return d.to_vector()

    ref = rk4_reference(truncated, init_reduced("0000").to_vector(), 30.0, 0.01)
    assert compare_with_full(c, "0000", 0.01) <= 1e-6
    # Without it the wire does not switch at all.
    assert ref[0].real < 0 < full


def test_six_cell_output():
    traj = evolve_reduced(wire(6, 60, 0.5), "000000", 1e-3)
    assert traj["Z0"][-1] == pytest.approx(0.9932, abs=0.005)


def test_wire4_matches_full():
    assert compare_with_full(wire(4, 30, 0.5), "0000", 1e-3) <= 1e-6


def test_wire7_matches_full_and_table_value():
    c = wire(7, 60, 0.5)
    assert compare_with_full(c, "0011000", 1e-3) <= 1e-6
    assert evolve_reduced(c, "0011000", 1e-3)["Z0"][-1] == pytest.approx(0.9784, abs=0.005)


def test_signed_couplings_match_full():
    c = singly_branched_inverter(4, 30, 0.5)
    assert np.max(compare_with_full(c, ["0000", "0101", "1111"], 2e-3)) <= 1e-6


def test_half_strength_clock_convention_also_closes():
    assert compare_with_full(wire(4, 30, 0.5), "0010", 2e-3, clock_prefactor=0.5) <= 1e-6


def test_negating_initial_output_negates_trajectory():
    c = wire(5, 20, 0.5)
    a = evolve_reduced(c, "00000", 1e-2)["Z0"]
    b = evolve_reduced(c, "00001", 1e-2)["Z0"]
    assert np.array_equal(a, -b)


def test_same_last_bit_same_trajectory():
    c = wire(5, 20, 0.5)
    assert np.array_equal(evolve_reduced(c, "00000", 1e-2)["Z0"], evolve_reduced(c, "10110", 1e-2)["Z0"])


def test_nnn_breaks_closure():
    assert compare_with_full(wire(6, 60, 0.5, nnn=True), "000000", 1e-3) > 1e-4


def test_unsupported_topologies():
    with pytest.raises(UnsupportedTopologyError):
        reduced_rhs(init_reduced("00000"), 0.0, majority_gate(1))
    c = Circuit(3, wire(3).couplings, (), (Driver(2, Constant(1.0)),), wire(3).clock_zones)
    with pytest.raises(UnsupportedTopologyError):
        evolve_reduced(c, "000")
