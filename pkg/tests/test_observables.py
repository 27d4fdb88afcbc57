import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qca_clock_sim.circuit import all_labels, singly_branched_inverter, spins, wire
from qca_clock_sim.evolution import density_from_state, evolve_state, maximally_mixed
from qca_clock_sim.observables import (
    bit_probability,
    driver_kink_count,
    kink_count,
    pauli_expectation,
    polarization,
    populations,
    transition_probabilities,
    z_string,
)
from qca_clock_sim.pauli import PauliString, basis_state, build_template


@pytest.fixture(scope="module")
def finals():
    h = build_template(wire(4, 30, 0.5))
    return {lab: evolve_state(h, basis_state(lab), 30.0, 1e-3)[0] for lab in ("0000", "0110")}


def test_z_on_basis_state():
    v = basis_state("0110")
    assert pauli_expectation(v, z_string(4, 2)) == 1.0
    assert pauli_expectation(v, z_string(4, 1)) == -1.0


@pytest.mark.parametrize("lab", ["0000", "0110", "1011"])
@pytest.mark.parametrize("cell", [1, 2, 3, 4])
def test_x_on_basis_state_vanishes(lab, cell):
    assert pauli_expectation(basis_state(lab), PauliString.from_cells(4, {cell: "X"})) == 0.0


def test_polarization_examples(finals):
    assert polarization(finals["0000"], 4) == pytest.approx(0.9736, abs=0.01)
    assert polarization(maximally_mixed(4), 2) == 0.0
    assert polarization(basis_state("1111"), 3) == 1.0


def test_transition_report_wire4(finals):
    rep = transition_probabilities(finals["0000"])
    assert rep.entries["1111"] == pytest.approx(0.9858, abs=0.005)
    assert rep.output_bit_probability(4) == pytest.approx(0.9868, abs=0.005)
    assert list(rep.entries.values()) == sorted(rep.entries.values(), reverse=True)
    assert rep.total() == pytest.approx(1.0, abs=1e-9)


def test_output_bit_probability_same_from_both_starts(finals):
    a = bit_probability(finals["0000"], 4, "1")
    b = bit_probability(finals["0110"], 4, "1")
    assert a == pytest.approx(0.9868, abs=0.005)
    assert abs(a - b) <= 1e-6


def test_full_report_sums_to_one(finals):
    rep = transition_probabilities(finals["0110"], threshold=0.0)
    assert len(rep.entries) == 16
    assert sum(rep.entries.values()) == pytest.approx(1.0, abs=1e-9)
    assert rep.residual == pytest.approx(0.0, abs=1e-12)


def test_transition_report_rejects_unnormalized():
    with pytest.raises(ValueError):
        transition_probabilities(2 * basis_state("00"))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n), st.integers(0, 2**32 - 1))))
def test_polarization_two_paths(args):
    n, cell, seed = args
    r = np.random.default_rng(seed)
    v = r.normal(size=2**n) + 1j * r.normal(size=2**n)
    v /= np.linalg.norm(v)
    by_pops = sum(p * spins(lab)[cell - 1] for p, lab in zip(populations(v), all_labels(n)))
    assert polarization(v, cell) == pytest.approx(by_pops, abs=1e-10)
    assert polarization(density_from_state(v), cell) == pytest.approx(by_pops, abs=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.text(alphabet="IXYZ", min_size=3, max_size=3), st.integers(0, 2**32 - 1))
def test_state_and_density_expectations_agree(letters, seed):
    r = np.random.default_rng(seed)
    v = r.normal(size=8) + 1j * r.normal(size=8)
    v /= np.linalg.norm(v)
    p = PauliString(letters)
    assert pauli_expectation(v, p) == pytest.approx(pauli_expectation(density_from_state(v), p), abs=1e-12)


def test_complex_expectation_is_rejected():
    # a non-Hermitian matrix has a complex trace against X
    rho = np.array([[0.5, 1j], [0.0, 0.5]])
    with pytest.raises(ArithmeticError):
        pauli_expectation(rho, PauliString("X"))


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        pauli_expectation(basis_state("000"), z_string(2, 1))


def test_kink_counts():
    c = wire(4)
    assert kink_count("0000", c) == 0
    assert driver_kink_count("0000", c, 0.0) == 0
    assert kink_count("0110", c) == 2
    assert driver_kink_count("0110", c, 0.0) == 2
    assert driver_kink_count("1000", c, 0.0) == 2
    assert kink_count("0000", singly_branched_inverter(4, 30, 0.5)) == 1
