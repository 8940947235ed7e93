"""
Shot sampling and Wilson intervals
==================================

Sampling the label qubit estimates reliability with error shrinking like
``1/sqrt(shots)``.  Compare with the exact readout.
"""
from qnetrel.estimator import quantum_reliability_exact_readout, quantum_reliability_sampled
from qnetrel.graph import Network

bridge = Network.from_edges(2, [(0, 1, 0.25)])
exact = quantum_reliability_exact_readout(bridge).value
print(f"exact readout: {exact}")

print(f"{'shots':>7} {'estimate':>9} {'95% CI':>22} {'width':>8}")
for shots in (100, 1000, 10_000):
    est = quantum_reliability_sampled(bridge, shots=shots, seed=0)
    print(f"{shots:>7} {est.value:>9.4f}   [{est.ci_low:.4f}, {est.ci_high:.4f}] {est.ci_high - est.ci_low:>8.4f}")

###############################################################################
# A larger graph
# --------------
# Each shot is a full state-vector run with its own measurement record.

triangle = Network.from_edges(3, [(0, 1, 0.5), (1, 2, 0.5), (0, 2, 0.5)])
est = quantum_reliability_sampled(triangle, shots=2000, seed=7)
print(f"triangle: sampled {est.value:.4f} [{est.ci_low:.4f}, {est.ci_high:.4f}], exact 0.5")
