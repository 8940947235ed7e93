"""
Gate-count estimates
====================

Closed-form CNOT and T counts for a full amplitude-amplification run,
against the qubit count, for a few graph sizes and precisions.
"""
from qnetrel.resources import estimate_resources

print(f"{'E':>4} {'V':>4} {'eps':>6} {'CNOT':>14} {'T':>14} {'qubits':>7}")
for E, V in [(3, 3), (7, 5), (20, 10), (100, 30)]:
    for eps in (0.1, 0.01):
        r = estimate_resources(E, V, V, eps)
        print(f"{E:>4} {V:>4} {eps:>6} {r.cnot_int:>14,} {r.t_int:>14,} {r.qubits:>7}")

###############################################################################
# Scaling
# -------
# For fixed T the counts grow linearly in E*V and in 1/eps.

base = estimate_resources(10, 10, 10, 0.1)
for factor in (2, 4):
    r = estimate_resources(10 * factor, 10, 10, 0.1)
    print(f"E x{factor}: CNOT ratio {r.cnot_real / base.cnot_real:.3f}")
r = estimate_resources(10, 10, 10, 0.01)
print(f"eps / 10: CNOT ratio {r.cnot_real / base.cnot_real:.3f}")
