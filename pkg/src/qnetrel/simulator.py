"""Dense state-vector execution with mid-circuit measurement.

Qubit ``q`` is axis ``q`` of the ``(2,) * n`` tensor view, i.e. bit
``n - 1 - q`` of the flat basis index, so qubit 0 is the leftmost
character of a printed bitstring.

Gate kernels mutate the state in place and return it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .circuit import (
    Circuit,
    ClassicallyControlledNot,
    ControlledNot,
    ControlledZ,
    Gate,
    Hadamard,
    Measure,
    NotGate,
    PauliZ,
    QubitLayout,
    RotateY,
    ThresholdPhaseFlip,
    gate_qubits,
)

__all__ = [
    "StateVector",
    "ExecutionResult",
    "SimulationError",
    "SuperposedNodeRegisterError",
    "IMPOSSIBLE_BRANCH",
    "apply_gate",
    "measure",
    "run_circuit",
    "marginal_probability",
    "support_decomposition",
    "sample_label",
    "shot_seed",
    "dump_state",
]

IMPOSSIBLE_BRANCH = 1e-14
_INV_SQRT2 = 1.0 / np.sqrt(2.0)


class SimulationError(RuntimeError):
    pass


class SuperposedNodeRegisterError(SimulationError):
    """An edge configuration carries more than one node bitstring."""


@dataclass
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray

    @classmethod
    def zero(cls, num_qubits: int) -> "StateVector":
        amps = np.zeros(1 << num_qubits, dtype=np.complex128)
        amps[0] = 1.0
        return cls(num_qubits, amps)

    @classmethod
    def basis(cls, bits: str) -> "StateVector":
        """Basis state from a bitstring, qubit 0 first."""
        state = cls.zero(len(bits))
        state.amplitudes[0] = 0.0
        state.amplitudes[int(bits, 2)] = 1.0
        return state

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy())

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.num_qubits)

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass
class ExecutionResult:
    state: StateVector
    records: list[int]
    seed: object
    snapshots: dict[int, StateVector] = field(default_factory=dict)


def _index(n: int, fixed: dict[int, int]) -> tuple:
    idx: list = [slice(None)] * n
    for q, val in fixed.items():
        idx[q] = val
    return tuple(idx)


def _check_qubits(state: StateVector, gate: Gate) -> None:
    for q in gate_qubits(gate):
        if not 0 <= q < state.num_qubits:
            raise IndexError(f"qubit {q} out of range for {state.num_qubits}-qubit state in {gate}")


def _weight_mask(n: int, qubits: Iterable[int], threshold: int) -> np.ndarray:
    basis = np.arange(1 << n)
    weight = np.zeros(1 << n, dtype=np.int64)
    for q in qubits:
        weight += (basis >> (n - 1 - q)) & 1
    return weight >= threshold


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply a unitary gate in place.

    Measurement and classically controlled gates go through
    :func:`run_circuit` instead.
    """
    if isinstance(gate, (Measure, ClassicallyControlledNot)):
        raise TypeError(f"{type(gate).__name__} needs classical context; use run_circuit")
    _check_qubits(state, gate)
    n = state.num_qubits
    t = state.tensor()

    if isinstance(gate, (NotGate, ControlledNot)):
        fixed = dict(gate.controls) if isinstance(gate, ControlledNot) else {}
        i0 = _index(n, {**fixed, gate.target: 0})
        i1 = _index(n, {**fixed, gate.target: 1})
        a0 = t[i0].copy()
        t[i0] = t[i1]
        t[i1] = a0
    elif isinstance(gate, RotateY):
        c, s = np.cos(gate.angle / 2), np.sin(gate.angle / 2)
        i0, i1 = _index(n, {gate.target: 0}), _index(n, {gate.target: 1})
        a0, a1 = t[i0].copy(), t[i1].copy()
        t[i0] = c * a0 - s * a1
        t[i1] = s * a0 + c * a1
    elif isinstance(gate, Hadamard):
        i0, i1 = _index(n, {gate.target: 0}), _index(n, {gate.target: 1})
        a0, a1 = t[i0].copy(), t[i1].copy()
        t[i0] = (a0 + a1) * _INV_SQRT2
        t[i1] = (a0 - a1) * _INV_SQRT2
    elif isinstance(gate, PauliZ):
        t[_index(n, {gate.target: 1})] *= -1
    elif isinstance(gate, ControlledZ):
        t[_index(n, {**dict(gate.controls), gate.target: 1})] *= -1
    elif isinstance(gate, ThresholdPhaseFlip):
        hit = _weight_mask(n, gate.qubits, gate.threshold)
        amps = state.amplitudes
        if gate.target is None:
            amps[hit] *= -1
        else:
            bit = 1 << (n - 1 - gate.target)
            lo = np.flatnonzero(hit & ((np.arange(1 << n) & bit) == 0))
            hi = lo | bit
            amps[lo], amps[hi] = amps[hi].copy(), amps[lo].copy()
    else:
        raise TypeError(f"unknown gate {gate!r}")
    return state


def measure(state: StateVector, qubit: int, rng: np.random.Generator) -> tuple[int, StateVector]:
    """Projective Z measurement of one qubit, in place.

    Exactly one uniform draw is consumed per call.  A branch whose
    probability is below ``IMPOSSIBLE_BRANCH`` is never selected.
    """
    if not 0 <= qubit < state.num_qubits:
        raise IndexError(f"qubit {qubit} out of range")
    n = state.num_qubits
    t = state.tensor()
    i0, i1 = _index(n, {qubit: 0}), _index(n, {qubit: 1})
    p0 = float(np.sum(np.abs(t[i0]) ** 2))
    p1 = float(np.sum(np.abs(t[i1]) ** 2))
    u = rng.random()
    if p0 < IMPOSSIBLE_BRANCH and p1 < IMPOSSIBLE_BRANCH:
        raise SimulationError(f"both outcomes of qubit {qubit} have vanishing probability")
    if p1 < IMPOSSIBLE_BRANCH:
        outcome = 0
    elif p0 < IMPOSSIBLE_BRANCH:
        outcome = 1
    else:
        outcome = 0 if u < p0 / (p0 + p1) else 1
    keep, drop, p = (i0, i1, p0) if outcome == 0 else (i1, i0, p1)
    t[drop] = 0.0
    t[keep] /= np.sqrt(p)
    return outcome, state


def run_circuit(
    circuit: Circuit,
    seed=0,
    *,
    snapshot_at: Iterable[int] = (),
    initial: StateVector | None = None,
) -> ExecutionResult:
    """Execute ``circuit`` from |0...0> (or ``initial``).

    ``seed`` is anything :func:`numpy.random.default_rng` accepts.
    ``snapshot_at`` lists op counts after which a copy of the state is
    kept (0 means before the first op).
    """
    rng = np.random.default_rng(seed)
    state = StateVector.zero(circuit.num_qubits) if initial is None else initial.copy()
    if state.num_qubits != circuit.num_qubits:
        raise ValueError("initial state width does not match circuit")
    records = [0] * circuit.num_record_slots
    wanted = set(snapshot_at)
    snaps: dict[int, StateVector] = {}
    if 0 in wanted:
        snaps[0] = state.copy()
    for pos, gate in enumerate(circuit.ops, start=1):
        if isinstance(gate, Measure):
            records[gate.slot], _ = measure(state, gate.target, rng)
        elif isinstance(gate, ClassicallyControlledNot):
            if records[gate.slot]:
                apply_gate(state, NotGate(gate.target))
        else:
            apply_gate(state, gate)
        if pos in wanted:
            snaps[pos] = state.copy()
    return ExecutionResult(state, records, seed, snaps)


def marginal_probability(state: StateVector, qubit: int, value: int = 1) -> float:
    """Probability of reading ``value`` on ``qubit``."""
    if not 0 <= qubit < state.num_qubits:
        raise IndexError(f"qubit {qubit} out of range")
    sel = state.tensor()[_index(state.num_qubits, {qubit: value})]
    return float(np.sum(np.abs(sel) ** 2))


def _definite_value(state: StateVector, qubit: int, atol: float) -> int:
    p1 = marginal_probability(state, qubit, 1)
    if p1 <= atol:
        return 0
    if p1 >= 1.0 - atol:
        return 1
    raise SimulationError(f"qubit {qubit} is not in a definite basis state (P(1)={p1:.3g})")


def support_decomposition(
    state: StateVector, layout: QubitLayout, atol: float = 1e-14
) -> list[tuple[int, str, complex]]:
    """Group the support by edge configuration.

    Returns ``(edge_mask, node_bits, amplitude)`` sorted by ``edge_mask``,
    where bit ``k`` of the mask is edge qubit ``k`` and ``node_bits[i]`` is
    node qubit ``i``.  Amplitudes with modulus at or below ``atol`` are
    treated as zero.  The aux qubit must be in a definite state; the label
    qubit may vary between configurations but not within one.

    Raises:
        SuperposedNodeRegisterError: an edge mask appears with two
            different node (or label) bitstrings.
    """
    if state.num_qubits != layout.total_qubits:
        raise ValueError("state width does not match layout")
    _definite_value(state, layout.aux, 1e-12)
    n, V, E = state.num_qubits, layout.num_nodes, layout.num_edges
    found: dict[int, tuple[str, str, complex]] = {}
    for idx in np.flatnonzero(np.abs(state.amplitudes) > atol):
        bits = format(int(idx), f"0{n}b")
        nodes, label = bits[:V], bits[layout.label]
        mask = sum(1 << k for k in range(E) if bits[V + k] == "1")
        amp = complex(state.amplitudes[idx])
        if mask in found and found[mask][:2] != (nodes, label):
            raise SuperposedNodeRegisterError(
                f"edge config {mask:0{E}b} has node/label states "
                f"{found[mask][0]}/{found[mask][1]} and {nodes}/{label}"
            )
        found[mask] = (nodes, label, amp)
    return [(m, nodes, amp) for m, (nodes, _, amp) in sorted(found.items())]


def shot_seed(master_seed: int, shot: int) -> np.random.SeedSequence:
    """Seed for one shot; depends only on ``(master_seed, shot)``."""
    return np.random.SeedSequence(master_seed, spawn_key=(shot,))


def sample_label(circuit: Circuit, layout: QubitLayout, shots: int, seed: int = 0) -> tuple[int, int]:
    """Run ``shots`` independent executions and count label readings of 1."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    ones = 0
    for k in range(shots):
        ss = shot_seed(seed, k)
        rng = np.random.default_rng(ss)
        result = run_circuit(circuit, rng)
        bit, _ = measure(result.state, layout.label, rng)
        ones += bit
    return ones, shots


def dump_state(state: StateVector, atol: float = 0.0) -> str:
    """``index real imag`` per line, ascending basis index."""
    lines = []
    for idx, amp in enumerate(state.amplitudes):
        if abs(amp) > atol:
            lines.append(f"{idx} {float(amp.real)!r} {float(amp.imag)!r}")
    return "\n".join(lines) + ("\n" if lines else "")
