"""
The measurement-assisted OR gadget
==================================

The gadget sets ``v_j <- v_j OR (v_i AND e)`` using one ancilla, a
Hadamard and a mid-circuit measurement.  The measurement outcome only ever
changes signs, never branch weights.
"""
import itertools

import numpy as np

from qnetrel.circuit import Circuit, NotGate, build_edge_init, build_qc_or, dump_circuit, make_layout
from qnetrel.graph import Network
from qnetrel.simulator import StateVector, run_circuit

net = Network.from_edges(2, [(0, 1, 0.3)])
layout = make_layout(net)
gadget = build_qc_or(layout, 0, 1, 0, slot=0)
print(dump_circuit(Circuit(layout.total_qubits, 1, gadget)))

###############################################################################
# Truth table on basis states
# ---------------------------
# Qubit order: v0 v1 e aux label.

print(" v_i e v_j -> v_j'")
for vi, e, vj in itertools.product((0, 1), repeat=3):
    start = StateVector.basis(f"{vi}{vj}{e}00")
    out = run_circuit(Circuit(layout.total_qubits, 1, gadget), seed=1, initial=start).state
    idx = int(np.flatnonzero(np.abs(out.amplitudes) > 0.5)[0])
    bits = format(idx, "05b")
    print(f"  {vi}   {e}  {vj}  ->  {bits[1]}   (aux {bits[3]}, amplitude {out.amplitudes[idx].real:+.0f})")

###############################################################################
# Superposed edge, different seeds
# --------------------------------
# The edge qubit is in superposition and v_0 = 1.  Different measurement
# outcomes give different signs but identical moduli.

ops = build_edge_init(net, layout) + [NotGate(0)] + gadget
circ = Circuit(layout.total_qubits, 1, ops)
for seed in range(4):
    res = run_circuit(circ, seed)
    nz = {format(i, "05b"): round(float(a.real), 6) for i, a in enumerate(res.state.amplitudes) if abs(a) > 1e-12}
    print(f"seed {seed}: outcome {res.records[0]}  {nz}")
