"""End-to-end reliability pipelines and the oracle verification sweep."""
from __future__ import annotations

import itertools
import math
from dataclasses import asdict, dataclass
from statistics import NormalDist
from typing import Literal

import numpy as np

from .circuit import build_pipeline, make_layout
from .graph import Edge, Network, exact_reliability, hop_distances, network_to_dict
from .simulator import marginal_probability, run_circuit, sample_label, support_decomposition

__all__ = [
    "ReliabilityEstimate",
    "SimulationBudgetError",
    "DEFAULT_MAX_QUBITS",
    "wilson_interval",
    "quantum_reliability_exact_readout",
    "quantum_reliability_sampled",
    "random_network",
    "bfs_level_failures",
    "sweep_instances",
    "verify_sweep",
]

DEFAULT_MAX_QUBITS = 20
_Z95 = NormalDist().inv_cdf(0.975)


class SimulationBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class ReliabilityEstimate:
    value: float
    method: Literal["exact-readout", "sampled"]
    seed: int
    shots: int | None = None
    ci_low: float | None = None
    ci_high: float | None = None

    def to_dict(self) -> dict:
        return asdict(self)


def wilson_interval(successes: int, trials: int, z: float = _Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion (95% by default)."""
    if trials < 1:
        raise ValueError("trials must be positive")
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    centre = (phat + z2 / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z2 / (4 * trials * trials)) / denom
    # the exact interval always contains phat; keep that true under rounding
    return max(0.0, min(centre - half, phat)), min(1.0, max(centre + half, phat))


def _check_budget(net: Network, max_qubits: int) -> None:
    need = make_layout(net).total_qubits
    if need > max_qubits:
        raise SimulationBudgetError(f"instance needs {need} qubits, budget is {max_qubits}")


def quantum_reliability_exact_readout(
    net: Network,
    root: int = 0,
    terminals: int | None = None,
    seed: int = 0,
    *,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> ReliabilityEstimate:
    """Run the full circuit once and read P(label = 1) off the final state."""
    _check_budget(net, max_qubits)
    circuit = build_pipeline(net, root, terminals)
    result = run_circuit(circuit, seed)
    value = marginal_probability(result.state, make_layout(net).label, 1)
    return ReliabilityEstimate(value=value, method="exact-readout", seed=seed)


def quantum_reliability_sampled(
    net: Network,
    root: int = 0,
    terminals: int | None = None,
    shots: int = 1000,
    seed: int = 0,
    *,
    max_qubits: int = DEFAULT_MAX_QUBITS,
) -> ReliabilityEstimate:
    """Estimate reliability from ``shots`` label measurements, with a Wilson interval."""
    _check_budget(net, max_qubits)
    circuit = build_pipeline(net, root, terminals)
    ones, shots = sample_label(circuit, make_layout(net), shots, seed)
    lo, hi = wilson_interval(ones, shots)
    return ReliabilityEstimate(
        value=ones / shots, method="sampled", seed=seed, shots=shots, ci_low=lo, ci_high=hi
    )


def random_network(
    rng: np.random.Generator,
    max_nodes: int = 5,
    max_edges: int = 7,
    *,
    probabilities: Literal["uniform", "binary"] = "uniform",
    kind: Literal["any", "connected", "disconnected"] = "any",
) -> Network:
    """Random simple graph with at most ``max_nodes`` nodes and ``max_edges`` edges.

    ``kind="connected"`` embeds a random spanning tree; ``"disconnected"``
    leaves one node isolated (when there are at least two nodes).
    """
    V = int(rng.integers(1, max_nodes + 1))
    pairs = list(itertools.combinations(range(V), 2))
    chosen: list[tuple[int, int]] = []
    if kind == "connected" and V > 1 and V - 1 <= max_edges:
        order = rng.permutation(V)
        for k in range(1, V):
            a, b = int(order[k]), int(order[rng.integers(0, k)])
            chosen.append((min(a, b), max(a, b)))
    elif kind == "disconnected" and V > 1:
        lonely = int(rng.integers(0, V))
        pairs = [p for p in pairs if lonely not in p]
    rest = [p for p in pairs if p not in chosen]
    room = min(max_edges - len(chosen), len(rest))
    extra = int(rng.integers(0, room + 1)) if room > 0 else 0
    for idx in rng.choice(len(rest), size=extra, replace=False) if extra else ():
        chosen.append(rest[int(idx)])
    rng.shuffle(chosen)
    if probabilities == "binary":
        ps = rng.integers(0, 2, size=len(chosen)).astype(float)
    else:
        ps = rng.random(len(chosen))
    return Network(V, tuple(Edge(u, v, float(p)) for (u, v), p in zip(chosen, ps)))


def bfs_level_failures(
    net: Network, root: int, seed: int = 0, *, mode: Literal["exact", "bounds"] = "exact"
) -> list[str]:
    """Compare node bits after every reachability pass with classical hop distances.

    ``mode="exact"`` demands that after pass ``k`` exactly the nodes within
    ``k`` hops are set.  ``mode="bounds"`` demands only that every node
    within ``k`` hops is set, that no unreachable node is, and that after
    the last pass the set equals the reachable set.  Sequential in-place
    updates inside a pass can run ahead of the hop distance, so the exact
    check fails on many graphs while the bounds check should never fail.

    Returns one description per mismatch.
    """
    circuit = build_pipeline(net, root, label=False)
    layout = make_layout(net)
    passes = [(int(name.split("-")[1]), pos) for name, pos in circuit.marks if name.startswith("pass-")]
    last = len(passes)
    result = run_circuit(circuit, seed, snapshot_at=[pos for _, pos in passes])
    failures = []
    for k, pos in passes:
        for mask, nodes, _ in support_decomposition(result.snapshots[pos], layout):
            dist = hop_distances(net, mask, root)
            near = "".join("1" if d is not None and d <= k else "0" for d in dist)
            if mode == "exact":
                ok = nodes == near
            else:
                reach = "".join("0" if d is None else "1" for d in dist)
                ok = all(a <= b <= c for a, b, c in zip(near, nodes, reach))
                ok = ok and (k < last or nodes == reach)
            if not ok:
                failures.append(f"pass {k}, config {mask}: got {nodes}, within {k} hops {near}")
    return failures


_KINDS = ("any", "connected", "disconnected")


def sweep_instances(
    max_nodes: int = 5,
    max_edges: int = 7,
    trials: int = 100,
    seed: int = 0,
    probabilities: Literal["uniform", "binary"] = "uniform",
):
    """Yield ``(network, root, terminals)`` for each sweep trial.

    Trial ``k`` depends only on ``(seed, k)``.
    """
    for k in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(k,)))
        net = random_network(rng, max_nodes, max_edges, probabilities=probabilities, kind=_KINDS[k % 3])
        root = int(rng.integers(0, net.num_nodes))
        T = int(rng.integers(1, net.num_nodes + 1))
        yield net, root, T


def verify_sweep(
    max_nodes: int = 5,
    max_edges: int = 7,
    trials: int = 100,
    tol: float = 1e-9,
    seed: int = 0,
    *,
    probabilities: Literal["uniform", "binary"] = "uniform",
    check_bfs_levels: bool = True,
) -> dict:
    """Compare simulated and enumerated reliability on random instances.

    Trials cycle through unconstrained, connected and disconnected graphs
    so both zero and non-zero reliabilities are exercised.  The report
    passes iff the largest deviation is at most ``tol``; BFS-level
    mismatches of either kind are reported but do not affect the verdict.
    """
    records = []
    exact_fails: list[str] = []
    bound_fails: list[str] = []
    instances = sweep_instances(max_nodes, max_edges, trials, seed, probabilities)
    for k, (net, root, T) in enumerate(instances):
        r_exact = exact_reliability(net, root, T)
        r_quantum = quantum_reliability_exact_readout(net, root, T, seed=k).value
        rec = {
            "trial": k,
            "graph": network_to_dict(net),
            "root": root,
            "terminals": T,
            "R_exact": r_exact,
            "R_quantum": r_quantum,
            "deviation": abs(r_quantum - r_exact),
        }
        if check_bfs_levels:
            exact = bfs_level_failures(net, root, seed=k, mode="exact")
            bounds = bfs_level_failures(net, root, seed=k, mode="bounds")
            rec["bfs_level_exact"] = not exact
            rec["bfs_level_bounds"] = not bounds
            exact_fails += [f"trial {k}: {msg}" for msg in exact]
            bound_fails += [f"trial {k}: {msg}" for msg in bounds]
        records.append(rec)
    max_dev = max((r["deviation"] for r in records), default=0.0)
    summary = {
        "trials": trials,
        "max_deviation": max_dev,
        "tolerance": tol,
        "bfs_level_exact_failures": len(exact_fails),
        "bfs_level_bound_failures": len(bound_fails),
        "passed": max_dev <= tol,
    }
    return {
        "summary": summary,
        "trials": records,
        "bfs_level_exact_details": exact_fails,
        "bfs_level_bound_details": bound_fails,
    }
