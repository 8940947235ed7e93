import math

import numpy as np
import pytest

from qnetrel.circuit import (
    CLOSED,
    OPEN,
    Circuit,
    CircuitError,
    ClassicallyControlledNot,
    ControlledNot,
    Hadamard,
    Measure,
    NotGate,
    RotateY,
    ThresholdPhaseFlip,
    build_edge_init,
    build_label,
    build_node_init,
    build_pipeline,
    build_qc_or,
    build_reachability,
    dump_circuit,
    edge_angle,
    find_qc_or_gadgets,
    gate_count_report,
    make_layout,
)
from qnetrel.estimator import random_network
from qnetrel.graph import Network

BRIDGE_DUMP = """\
RotateY 2 2.0943951023931957
NotGate 0
ControlledNot 3 1-
ControlledNot 1 0+ 2+ 3+
Hadamard 3
Measure 3 @0
ClassicallyControlledNot 3 @0
ControlledNot 3 0-
ControlledNot 0 1+ 2+ 3+
Hadamard 3
Measure 3 @1
ClassicallyControlledNot 3 @1
ControlledNot 4 0+ 1+
"""


@pytest.mark.parametrize("V, E, total", [(2, 1, 5), (3, 3, 8), (1, 0, 3)])
def test_layout_sizes(V, E, total):
    pairs = [(0, 1), (1, 2), (0, 2)][:E]
    layout = make_layout(Network.from_edges(V, [(u, v, 0.5) for u, v in pairs]))
    assert layout.total_qubits == total
    used = [*layout.node_qubits, *layout.edge_qubits, layout.aux, layout.label]
    assert sorted(used) == list(range(total))


def test_layout_canonical_order(triangle):
    layout = make_layout(triangle)
    assert layout.node_qubits == (0, 1, 2)
    assert layout.edge_qubits == (3, 4, 5)
    assert (layout.aux, layout.label) == (6, 7)
    with pytest.raises(IndexError):
        layout.edge_qubit(3)


@pytest.mark.parametrize("p, angle", [(1.0, 0.0), (0.0, math.pi), (0.5, math.pi / 2)])
def test_edge_angle(p, angle):
    assert edge_angle(p) == pytest.approx(angle, abs=1e-15)


def test_edge_angle_amplitudes():
    for p in (0.0, 0.1, 0.25, 0.5, 0.9, 1.0):
        theta = edge_angle(p)
        assert math.cos(theta / 2) == pytest.approx(math.sqrt(p), abs=1e-15)
        assert math.sin(theta / 2) == pytest.approx(math.sqrt(1 - p), abs=1e-15)


def test_edge_init_one_rotation_per_edge(triangle):
    ops = build_edge_init(triangle, make_layout(triangle))
    assert [type(g) for g in ops] == [RotateY] * 3
    assert [g.target for g in ops] == [3, 4, 5]


@pytest.mark.parametrize("root", [0, 2])
def test_node_init(triangle, root):
    assert build_node_init(make_layout(triangle), root) == [NotGate(root)]


def test_node_init_single_node():
    assert build_node_init(make_layout(Network(1)), 0) == [NotGate(0)]


def test_qc_or_structure(triangle):
    layout = make_layout(triangle)
    ops = build_qc_or(layout, 0, 1, 0, slot=4)
    aux = layout.aux
    assert ops == [
        ControlledNot(((1, OPEN),), aux),
        ControlledNot(((0, CLOSED), (3, CLOSED), (aux, CLOSED)), 1),
        Hadamard(aux),
        Measure(aux, 4),
        ClassicallyControlledNot(aux, 4),
    ]


@pytest.mark.parametrize(
    "edges, V, gadgets",
    [([(0, 1), (1, 2), (0, 2)], 3, 12), ([(0, 1)], 2, 2), ([], 1, 0)],
)
def test_reachability_gadget_count(edges, V, gadgets):
    net = Network.from_edges(V, [(u, v, 0.5) for u, v in edges])
    layout = make_layout(net)
    ops = build_reachability(net, layout)
    assert len(find_qc_or_gadgets(ops, layout.aux)) == gadgets
    assert len(ops) == 5 * gadgets


def test_reachability_visits_both_directions_in_edge_order(path3):
    layout = make_layout(path3)
    ops = build_reachability(path3, layout)
    targets = [g.target for g in ops if isinstance(g, ControlledNot) and len(g.controls) == 3]
    # per pass: (0->1), (1->0), (1->2), (2->1)
    assert targets == [1, 0, 2, 1] * 2


def test_reachability_is_deterministic(triangle):
    layout = make_layout(triangle)
    assert build_reachability(triangle, layout) == build_reachability(triangle, layout)


def test_label_all_terminal(triangle):
    layout = make_layout(triangle)
    assert build_label(layout, 3) == [ControlledNot(((0, CLOSED), (1, CLOSED), (2, CLOSED)), layout.label)]


@pytest.mark.parametrize("T", [1, 2])
def test_label_threshold(triangle, T):
    layout = make_layout(triangle)
    (gate,) = build_label(layout, T)
    assert gate == ThresholdPhaseFlip((0, 1, 2), T, layout.label)


def test_label_bad_threshold(triangle):
    with pytest.raises(ValueError):
        build_label(make_layout(triangle), 0)
    with pytest.raises(ValueError):
        build_label(make_layout(triangle), 4)


def test_gate_count_report_bridge(bridge):
    assert gate_count_report(build_pipeline(bridge)) == {
        "ClassicallyControlledNot": 2,
        "ControlledNot": 5,
        "Hadamard": 2,
        "Measure": 2,
        "NotGate": 1,
        "RotateY": 1,
    }


def test_gate_count_report_edge_cases():
    assert gate_count_report(Circuit(1)) == {}
    V = 6
    net = Network.from_edges(V, [(i, i + 1, 0.3) for i in range(5)])
    assert gate_count_report(build_edge_init(net, make_layout(net))) == {"RotateY": 5}


def test_dump_golden(bridge):
    assert dump_circuit(build_pipeline(bridge)) == BRIDGE_DUMP


def test_dump_threshold_and_empty():
    layout = make_layout(Network(3))
    circ = Circuit(layout.total_qubits, 0, build_label(layout, 2))
    assert dump_circuit(circ) == "ThresholdPhaseFlip 4 0+ 1+ 2+ >=2\n"
    assert dump_circuit(Circuit(2)) == ""


def test_pipeline_marks(triangle):
    circ = build_pipeline(triangle)
    assert circ.mark("init") == 4
    assert circ.mark("pass-1") == 4 + 30
    assert circ.mark("pass-2") == circ.mark("reach") == 4 + 60
    assert len(circ) == 65


@pytest.mark.parametrize(
    "ops, slots",
    [
        ([NotGate(3)], 0),
        ([ControlledNot(((0, CLOSED),), 0)], 0),
        ([Measure(0, 1)], 1),
        ([ClassicallyControlledNot(0, 0)], 1),
        ([Measure(0, 0), Measure(1, 0)], 1),
        ([ControlledNot(((0, 2),), 1)], 0),
    ],
)
def test_circuit_validation(ops, slots):
    with pytest.raises(CircuitError):
        Circuit(2, slots, ops)


def test_structural_invariants_random_graphs():
    rng = np.random.default_rng(11)
    for _ in range(50):
        net = random_network(rng, 5, 7)
        V, E = net.num_nodes, net.num_edges
        circ = build_pipeline(net, int(rng.integers(0, V)), int(rng.integers(1, V + 1)))
        counts = gate_count_report(circ)
        layout = make_layout(net)
        assert circ.num_qubits == V + E + 2
        assert counts.get("RotateY", 0) == E
        assert counts["NotGate"] == 1
        assert len(find_qc_or_gadgets(circ, layout.aux)) == 2 * E * (V - 1)
        assert counts.get("Measure", 0) == 2 * E * (V - 1)
        measured = [g.slot for g in circ.ops if isinstance(g, Measure)]
        read = [g.slot for g in circ.ops if isinstance(g, ClassicallyControlledNot)]
        assert sorted(measured) == list(range(circ.num_record_slots))
        assert sorted(read) == sorted(set(read))
