"""Closed-form CNOT / T / qubit counts for the full amplitude-amplification run.

These are formula calculators under the published cost model (relative-phase
Toffolis, repeat-until-success rotations).  They are not tallies of the IR
built in :mod:`qnetrel.circuit`, which keeps multi-controlled gates whole.

The rotation-synthesis error budget is taken equal to the target precision
``epsilon``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ResourceEstimate",
    "MODEL_NAME",
    "cnot_per_step",
    "t_per_step",
    "cnot_count",
    "t_count",
    "qubit_count",
    "repetitions",
    "estimate_resources",
]

MODEL_NAME = "paper-eq13"
THRESHOLD_NOTE = "paper model, threshold construction unspecified"


def _check(E: int, V: int, T: int, epsilon: float) -> None:
    if E < 1:
        raise ValueError(f"E must be >= 1, got {E}")
    if V < 2:
        raise ValueError(f"V must be >= 2, got {V}")
    if not 1 <= T <= V:
        raise ValueError(f"T must lie in [1, V={V}], got {T}")
    if not 0.0 < epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon}")


def repetitions(epsilon: float) -> float:
    """Amplitude-amplification repetition factor ``2 / epsilon``."""
    return 2.0 / epsilon


def cnot_per_step(E: int, V: int, T: int) -> int:
    # 7 CNOTs per qc-OR, 2EV qc-ORs; 6T - 12 for the T-controlled oracle NOT
    return 14 * E * V + 6 * T - 12


def t_per_step(E: int, V: int, T: int, epsilon: float) -> float:
    # RUS rotations, 8 T per relative-phase Toffoli, 8T - 17 for the oracle
    return 1.15 * math.log2(E / epsilon) + 16 * E * V + 8 * T - 17


def cnot_count(E: int, V: int, T: int, epsilon: float) -> float:
    _check(E, V, T, epsilon)
    return cnot_per_step(E, V, T) * 2 / epsilon


def t_count(E: int, V: int, T: int, epsilon: float) -> float:
    _check(E, V, T, epsilon)
    return t_per_step(E, V, T, epsilon) * 2 / epsilon


def qubit_count(E: int, V: int) -> int:
    """Edge and node registers plus the shared ancilla and the label qubit."""
    if E < 0 or V < 1:
        raise ValueError(f"need E >= 0 and V >= 1, got E={E}, V={V}")
    return E + V + 2


@dataclass(frozen=True)
class ResourceEstimate:
    E: int
    V: int
    T: int
    epsilon: float
    cnot_real: float
    cnot_int: int
    t_real: float
    t_int: int
    qubits: int

    @property
    def note(self) -> str | None:
        return THRESHOLD_NOTE if self.T < self.V else None

    def to_dict(self) -> dict:
        out = {
            "inputs": {"E": self.E, "V": self.V, "T": self.T, "epsilon": self.epsilon},
            "cnot_real": self.cnot_real,
            "cnot_int": self.cnot_int,
            "t_real": self.t_real,
            "t_int": self.t_int,
            "qubits": self.qubits,
            "model": MODEL_NAME,
        }
        if self.note:
            out["note"] = self.note
        return out


def estimate_resources(E: int, V: int, T: int, epsilon: float) -> ResourceEstimate:
    """All counts at once.

    Integer forms round each step up and use ``ceil(2 / epsilon)``
    repetitions; the real forms are the raw formula values.
    """
    _check(E, V, T, epsilon)
    reps = math.ceil(repetitions(epsilon))
    return ResourceEstimate(
        E=E,
        V=V,
        T=T,
        epsilon=epsilon,
        cnot_real=cnot_count(E, V, T, epsilon),
        cnot_int=cnot_per_step(E, V, T) * reps,
        t_real=t_count(E, V, T, epsilon),
        t_int=math.ceil(t_per_step(E, V, T, epsilon)) * reps,
        qubits=qubit_count(E, V),
    )
