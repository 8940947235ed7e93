"""Gate IR, qubit layout and the circuit builders for the reliability algorithm.

Circuits are immutable data.  Multi-controlled NOTs and the threshold
oracle are kept as single primitives; nothing here decomposes them.

Register layout (canonical)::

    nodes  0 .. V-1
    edges  V .. V+E-1
    aux    V+E          (reused by every qc-OR gadget)
    label  V+E+1
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .graph import Network

__all__ = [
    "OPEN",
    "CLOSED",
    "QubitLayout",
    "RotateY",
    "NotGate",
    "Hadamard",
    "PauliZ",
    "ControlledNot",
    "ControlledZ",
    "ThresholdPhaseFlip",
    "Measure",
    "ClassicallyControlledNot",
    "Gate",
    "Circuit",
    "CircuitError",
    "make_layout",
    "edge_angle",
    "build_edge_init",
    "build_node_init",
    "build_qc_or",
    "build_reachability",
    "build_label",
    "build_pipeline",
    "gate_count_report",
    "find_qc_or_gadgets",
    "dump_circuit",
    "QC_OR_LENGTH",
]

# control polarity = basis value the control qubit must hold
OPEN = 0
CLOSED = 1

QC_OR_LENGTH = 5


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class QubitLayout:
    num_nodes: int
    num_edges: int

    @property
    def total_qubits(self) -> int:
        return self.num_nodes + self.num_edges + 2

    def node_qubit(self, i: int) -> int:
        if not 0 <= i < self.num_nodes:
            raise IndexError(f"node {i} outside [0, {self.num_nodes})")
        return i

    def edge_qubit(self, k: int) -> int:
        if not 0 <= k < self.num_edges:
            raise IndexError(f"edge {k} outside [0, {self.num_edges})")
        return self.num_nodes + k

    @property
    def node_qubits(self) -> tuple[int, ...]:
        return tuple(range(self.num_nodes))

    @property
    def edge_qubits(self) -> tuple[int, ...]:
        return tuple(range(self.num_nodes, self.num_nodes + self.num_edges))

    @property
    def aux(self) -> int:
        return self.num_nodes + self.num_edges

    @property
    def label(self) -> int:
        return self.num_nodes + self.num_edges + 1


@dataclass(frozen=True)
class RotateY:
    """``exp(-i angle Y / 2)``."""

    target: int
    angle: float


@dataclass(frozen=True)
class NotGate:
    target: int


@dataclass(frozen=True)
class Hadamard:
    target: int


@dataclass(frozen=True)
class PauliZ:
    target: int


@dataclass(frozen=True)
class ControlledNot:
    """NOT on ``target`` when every ``(qubit, polarity)`` control holds."""

    controls: tuple[tuple[int, int], ...]
    target: int


@dataclass(frozen=True)
class ControlledZ:
    controls: tuple[tuple[int, int], ...]
    target: int


@dataclass(frozen=True)
class ThresholdPhaseFlip:
    """Acts where the Hamming weight of ``qubits`` is at least ``threshold``.

    With ``target=None`` the amplitude is negated (phase form).  With a
    target qubit that qubit is flipped instead (bit-flip form).
    """

    qubits: tuple[int, ...]
    threshold: int
    target: int | None = None


@dataclass(frozen=True)
class Measure:
    target: int
    slot: int


@dataclass(frozen=True)
class ClassicallyControlledNot:
    target: int
    slot: int


Gate = Union[
    RotateY,
    NotGate,
    Hadamard,
    PauliZ,
    ControlledNot,
    ControlledZ,
    ThresholdPhaseFlip,
    Measure,
    ClassicallyControlledNot,
]


def gate_qubits(gate: Gate) -> tuple[int, ...]:
    if isinstance(gate, (ControlledNot, ControlledZ)):
        return tuple(q for q, _ in gate.controls) + (gate.target,)
    if isinstance(gate, ThresholdPhaseFlip):
        return gate.qubits + (() if gate.target is None else (gate.target,))
    return (gate.target,)


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    num_record_slots: int = 0
    ops: tuple[Gate, ...] = ()
    # (name, op index) pairs marking positions of interest, e.g. pass ends
    marks: tuple[tuple[str, int], ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        written: set[int] = set()
        for pos, gate in enumerate(self.ops):
            qs = gate_qubits(gate)
            if len(set(qs)) != len(qs):
                raise CircuitError(f"op {pos}: repeated qubit in {gate}")
            if any(not 0 <= q < self.num_qubits for q in qs):
                raise CircuitError(f"op {pos}: qubit index out of range in {gate}")
            if isinstance(gate, (ControlledNot, ControlledZ)):
                if any(pol not in (OPEN, CLOSED) for _, pol in gate.controls):
                    raise CircuitError(f"op {pos}: bad control polarity in {gate}")
            if isinstance(gate, (Measure, ClassicallyControlledNot)):
                if not 0 <= gate.slot < self.num_record_slots:
                    raise CircuitError(f"op {pos}: record slot {gate.slot} out of range")
            if isinstance(gate, Measure):
                if gate.slot in written:
                    raise CircuitError(f"op {pos}: record slot {gate.slot} written twice")
                written.add(gate.slot)
            elif isinstance(gate, ClassicallyControlledNot) and gate.slot not in written:
                raise CircuitError(f"op {pos}: slot {gate.slot} read before it is measured")

    def __len__(self) -> int:
        return len(self.ops)

    def mark(self, name: str) -> int:
        for key, pos in self.marks:
            if key == name:
                return pos
        raise KeyError(name)


def make_layout(net: Network) -> QubitLayout:
    return QubitLayout(net.num_nodes, net.num_edges)


def edge_angle(p_fail: float) -> float:
    """RotateY angle taking |0> to sqrt(p)|0> + sqrt(1-p)|1>."""
    return 2.0 * math.acos(math.sqrt(p_fail))


def build_edge_init(net: Network, layout: QubitLayout) -> list[Gate]:
    return [RotateY(layout.edge_qubit(k), edge_angle(e.p_fail)) for k, e in enumerate(net.edges)]


def build_node_init(layout: QubitLayout, root: int) -> list[Gate]:
    return [NotGate(layout.node_qubit(root))]


def build_qc_or(layout: QubitLayout, src: int, dst: int, edge: int, slot: int) -> list[Gate]:
    """Measurement-assisted ``v_dst <- v_dst OR (v_src AND e_edge)``.

    The aux qubit ends in |0> again; each branch may pick up a sign that
    depends on the measurement outcome.
    """
    vi, vj, e, aux = layout.node_qubit(src), layout.node_qubit(dst), layout.edge_qubit(edge), layout.aux
    return [
        ControlledNot(((vj, OPEN),), aux),
        ControlledNot(((vi, CLOSED), (e, CLOSED), (aux, CLOSED)), vj),
        Hadamard(aux),
        Measure(aux, slot),
        ClassicallyControlledNot(aux, slot),
    ]


def _reachability_passes(net: Network, layout: QubitLayout, first_slot: int = 0) -> list[list[Gate]]:
    passes = []
    slot = first_slot
    for _ in range(net.num_nodes - 1):
        ops: list[Gate] = []
        for k, e in enumerate(net.edges):
            ops += build_qc_or(layout, e.u, e.v, k, slot)
            ops += build_qc_or(layout, e.v, e.u, k, slot + 1)
            slot += 2
        passes.append(ops)
    return passes


def build_reachability(net: Network, layout: QubitLayout, first_slot: int = 0) -> list[Gate]:
    """V-1 identical passes; each pass runs qc-OR both ways over every edge in order.

    Record slots are allocated consecutively from ``first_slot``.
    """
    return [g for ops in _reachability_passes(net, layout, first_slot) for g in ops]


def build_label(layout: QubitLayout, terminals: int) -> list[Gate]:
    V = layout.num_nodes
    if not 1 <= terminals <= V:
        raise ValueError(f"terminals {terminals} outside [1, {V}]")
    if terminals == V:
        return [ControlledNot(tuple((q, CLOSED) for q in layout.node_qubits), layout.label)]
    return [ThresholdPhaseFlip(layout.node_qubits, terminals, layout.label)]


def build_pipeline(
    net: Network, root: int = 0, terminals: int | None = None, *, label: bool = True
) -> Circuit:
    """Edge init, node init, reachability and (optionally) the label step.

    Marks: ``"init"`` after register preparation, ``"pass-k"`` after the
    k-th reachability pass, ``"reach"`` after the last pass.
    """
    if terminals is None:
        terminals = net.num_nodes
    layout = make_layout(net)
    ops: list[Gate] = build_edge_init(net, layout) + build_node_init(layout, root)
    marks = [("init", len(ops))]
    for k, pass_ops in enumerate(_reachability_passes(net, layout), start=1):
        ops += pass_ops
        marks.append((f"pass-{k}", len(ops)))
    marks.append(("reach", len(ops)))
    if label:
        ops += build_label(layout, terminals)
    num_slots = 2 * net.num_edges * (net.num_nodes - 1)
    return Circuit(layout.total_qubits, num_slots, tuple(ops), tuple(marks))


def _kind(gate: Gate) -> str:
    return type(gate).__name__


def gate_count_report(circuit: Circuit | Iterable[Gate]) -> dict[str, int]:
    """Tally of gates by kind, sorted by kind name."""
    ops = circuit.ops if isinstance(circuit, Circuit) else circuit
    return dict(sorted(Counter(_kind(g) for g in ops).items()))


def find_qc_or_gadgets(ops: Sequence[Gate], aux: int) -> list[int]:
    """Start positions of every complete qc-OR gadget on ``aux``."""
    if isinstance(ops, Circuit):
        ops = ops.ops
    starts = []
    for pos in range(len(ops) - QC_OR_LENGTH + 1):
        a, b, c, d, e = ops[pos : pos + QC_OR_LENGTH]
        if (
            isinstance(a, ControlledNot)
            and a.target == aux
            and len(a.controls) == 1
            and a.controls[0][1] == OPEN
            and isinstance(b, ControlledNot)
            and len(b.controls) == 3
            and (aux, CLOSED) in b.controls
            and b.target == a.controls[0][0]
            and isinstance(c, Hadamard)
            and c.target == aux
            and isinstance(d, Measure)
            and d.target == aux
            and isinstance(e, ClassicallyControlledNot)
            and e.target == aux
            and e.slot == d.slot
        ):
            starts.append(pos)
    return starts


def _fmt_controls(controls) -> list[str]:
    return [f"{q}{'+' if pol == CLOSED else '-'}" for q, pol in controls]


def dump_circuit(circuit: Circuit) -> str:
    """One line per gate: ``KIND target [controls] [angle] [slot]``.

    Controls print as ``q+`` (closed) or ``q-`` (open); slots as ``@s``;
    threshold gates print their qubits as closed controls followed by
    ``>=T``, with ``-`` as target for the phase form.
    """
    lines = []
    for g in circuit.ops:
        kind = _kind(g)
        if isinstance(g, RotateY):
            parts = [kind, str(g.target), repr(g.angle)]
        elif isinstance(g, (ControlledNot, ControlledZ)):
            parts = [kind, str(g.target), *_fmt_controls(g.controls)]
        elif isinstance(g, ThresholdPhaseFlip):
            tgt = "-" if g.target is None else str(g.target)
            parts = [kind, tgt, *_fmt_controls((q, CLOSED) for q in g.qubits), f">={g.threshold}"]
        elif isinstance(g, (Measure, ClassicallyControlledNot)):
            parts = [kind, str(g.target), f"@{g.slot}"]
        else:
            parts = [kind, str(g.target)]
        lines.append(" ".join(parts))
    return "\n".join(lines) + ("\n" if lines else "")
