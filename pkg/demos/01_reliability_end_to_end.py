"""
Reliability end to end
======================

Build a small probabilistic network, compute its reliability by brute-force
enumeration, then run the full simulated circuit and read the label qubit.
"""
from pathlib import Path

from qnetrel import build_pipeline, exact_reliability, make_layout, parse_network
from qnetrel.circuit import gate_count_report
from qnetrel.estimator import quantum_reliability_exact_readout
from qnetrel.simulator import run_circuit, support_decomposition

HERE = Path(__file__).parent

###############################################################################
# Load a network
# --------------
# Five nodes, seven edges.  Each edge carries its own failure probability.

net = parse_network((HERE / "graphs" / "house.json").read_text())
print(f"V = {net.num_nodes}, E = {net.num_edges}")
for k, e in enumerate(net.edges):
    print(f"  edge {k}: ({e.u}, {e.v})  p_fail = {e.p_fail}")

###############################################################################
# Classical ground truth
# ----------------------
# 2**7 = 128 configurations are enumerated.

for T in range(1, net.num_nodes + 1):
    print(f"P(at least {T} nodes reachable from 0) = {exact_reliability(net, 0, T):.12f}")

###############################################################################
# The circuit
# -----------
# Edge rotations, one NOT on the root, (V-1) passes of qc-OR gadgets, and a
# multi-controlled NOT onto the label qubit.

circuit = build_pipeline(net, root=0)
layout = make_layout(net)
print(f"{circuit.num_qubits} qubits, {len(circuit)} operations")
print(gate_count_report(circuit))

###############################################################################
# Exact readout
# -------------
# P(label = 1) in the final state is the all-terminal reliability.

est = quantum_reliability_exact_readout(net, root=0, seed=0)
print(f"simulated R = {est.value:.12f}")
print(f"enumerated R = {exact_reliability(net):.12f}")

###############################################################################
# What the node register holds
# ----------------------------
# After reachability every edge configuration carries exactly one node
# bitstring: the set of nodes reachable from the root.

state = run_circuit(circuit, seed=0).state
support = support_decomposition(state, layout)
print(f"{len(support)} edge configurations in the support; first five:")
for mask, nodes, amp in support[:5]:
    print(f"  edges {mask:07b}  nodes {nodes}  |amp|^2 = {abs(amp) ** 2:.3e}")
