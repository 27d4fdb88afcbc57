"""
Gates started in their ground and excited states
================================================

A wire forgets which internal state it started in.  A gate need not: an
internal cell flipped at the start can change the answer.  Each gate is
switched from the ground state the clock ramp follows and from every
single internal-cell flip of it.
"""

from qca_clock_sim import doubly_branched_inverter, majority_gate, run_gate
from qca_clock_sim.gates import ground_manifold

gates = {
    "majority": majority_gate(arm_len=1, t_f=30.0, gamma_max=0.5),
    "inverter": doubly_branched_inverter(arm_len=1, t_f=60.0, gamma_max=0.5),
}

for name, c in gates.items():
    # The latched majority gate has two degenerate ground labels; the clock
    # picks one superposition of them at first order.
    print(f"{name}: {c.n_cells} cells, latched ground labels: {len(ground_manifold(c))}")
    run = run_gate(name, c, dt=1e-3)
    print(f"  ground {run.ground_label:<12s} output {run.ground_output:+.4f}")
    for cell, label, p in run.flips:
        print(f"  flip {cell}  {label:<12s} output {p:+.4f}")

# The inverter's excited starts end on the wrong side; the majority gate's
# device flip only weakens the output.  See the README for what this
# layout does and does not reproduce.
