import pytest
from hypothesis import given, strategies as st

from qca_clock_sim.circuit import (
    Circuit,
    CircuitError,
    ClockZone,
    Coupling,
    Driver,
    all_labels,
    check_label,
    doubly_branched_inverter,
    flip,
    index_to_label,
    internal_cells,
    label_to_index,
    majority_gate,
    singly_branched_inverter,
    validate,
    wire,
    with_gamma_max,
)
from qca_clock_sim.observables import classical_ground_label
from qca_clock_sim.pauli import classical_energy
from qca_clock_sim.schedules import Constant, CosineSwitch, SineRamp


def test_wire4_structure():
    c = wire(4, 30, 0.5, nnn=False)
    assert len(c.couplings) == 3
    assert len(c.drivers) == 1 and c.drivers[0].cell == 1
    assert c.drivers[0].schedule == CosineSwitch(1, -1, 30)
    assert len(c.clock_zones) == 1 and c.clock_zones[0].cells == (1, 2, 3, 4)
    assert c.nnn_couplings == ()


def test_wire4_nnn_pairs():
    c = wire(4, 30, 0.5, nnn=True)
    assert {(cp.a, cp.b) for cp in c.nnn_couplings} == {(1, 3), (2, 4)}
    assert all(cp.j == 1 / 32 for cp in c.nnn_couplings)


def test_two_cell_wire_has_no_nnn_pairs():
    assert wire(2, 10, 0.5, nnn=True).nnn_couplings == ()


@pytest.mark.parametrize("n", [1, 13])
def test_wire_size_limits(n):
    with pytest.raises(CircuitError):
        wire(n)


def test_singly_branched_inverter_signs():
    c = singly_branched_inverter(4, 30, 0.5)
    assert c.chain_couplings() == [1.0, 1.0, -1.0]


def test_inverter_with_all_positive_couplings_is_a_wire():
    assert singly_branched_inverter(4, 30, 0.5, couplings=(1, 1, 1)) == wire(4, 30, 0.5)


def test_majority_gate_is_a_five_cell_cross():
    c = majority_gate(1, 30, 0.5, fixed_inputs=(1.0, 1.0))
    assert c.n_cells == 5
    device = 4
    assert sorted(cp.a if cp.b == device else cp.b for cp in c.couplings
                  if device in (cp.a, cp.b)) == [1, 2, 3, 5]
    assert [d.cell for d in c.drivers] == [1, 2, 3]
    assert internal_cells(c) == [4]


def test_majority_all_inputs_one_latched_ground_is_all_ones():
    c = majority_gate(1, 30, 0.5)
    drivers = tuple(Driver(d.cell, Constant(-1.0)) for d in c.drivers)
    held = Circuit(c.n_cells, c.couplings, (), drivers, c.clock_zones)
    assert classical_ground_label(held, 0.0) == "11111"
    energies = sorted(classical_energy(held, lab, 0.0) for lab in all_labels(5))
    assert energies[0] < energies[1]


def test_doubly_branched_inverter_layout():
    c = doubly_branched_inverter(1, 60, 0.5)
    assert c.n_cells == 4
    neg = sorted((cp.a, cp.b) for cp in c.couplings if cp.j < 0)
    assert neg == [(2, 4), (3, 4)]
    # the latched ground state has the output opposite the input arm
    assert classical_ground_label(c, 0.0) == "1110"


@pytest.mark.parametrize("builder", [majority_gate, doubly_branched_inverter])
def test_gate_arm_length_must_be_positive(builder):
    with pytest.raises(CircuitError):
        builder(0)


def _zone(n):
    return (ClockZone(tuple(range(1, n + 1)), SineRamp(0.5, 10)),)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(couplings=(Coupling(0, 1),)),
        dict(couplings=(Coupling(1, 1),)),
        dict(couplings=(Coupling(1, 2), Coupling(2, 1))),
        dict(couplings=(Coupling(1, 2, float("nan")),)),
        dict(drivers=(Driver(4, Constant(1.0)),)),
    ],
)
def test_validation_errors(kwargs):
    with pytest.raises(CircuitError):
        Circuit(3, clock_zones=_zone(3), **kwargs)


def test_cells_must_be_in_exactly_one_zone():
    with pytest.raises(CircuitError):
        Circuit(3, clock_zones=(ClockZone((1, 2), SineRamp(0.5, 10)),))
    with pytest.raises(CircuitError):
        Circuit(2, clock_zones=(ClockZone((1, 2), SineRamp(0.5, 10)), ClockZone((2,), SineRamp(0.5, 10))))


def test_nnn_duplicating_a_coupling_is_rejected():
    with pytest.raises(CircuitError):
        Circuit(3, (Coupling(1, 2),), (Coupling(2, 1, 1 / 32),), clock_zones=_zone(3))


def test_validation_is_idempotent():
    c = wire(5, nnn=True)
    assert validate(validate(c)) is c


def test_with_gamma_max_rescales_clock_only():
    c = with_gamma_max(wire(4), 2.0)
    assert c.clock_zones[0].schedule == SineRamp(2.0, 30.0)
    assert c.drivers == wire(4).drivers


def test_digest_is_stable_and_content_sensitive():
    assert wire(4).digest() == wire(4).digest()
    assert wire(4).digest() != wire(4, nnn=True).digest()


@given(st.integers(1, 10).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2**n - 1))))
def test_label_index_round_trip(args):
    n, i = args
    lab = index_to_label(i, n)
    assert label_to_index(lab) == i
    assert lab[0] == str((i >> (n - 1)) & 1)  # cell 1 is the most significant bit


def test_flip_and_check_label():
    assert flip("0000", 2) == "0100"
    with pytest.raises(ValueError):
        check_label("012", 3)
    with pytest.raises(ValueError):
        check_label("01", 3)
