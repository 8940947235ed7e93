"""Simulation and resource estimation for a quantum network-reliability algorithm.

Modules:

* :mod:`qnetrel.graph`      networks, parsing, brute-force reliability
* :mod:`qnetrel.circuit`    gate IR, qubit layout, circuit builders
* :mod:`qnetrel.simulator`  state-vector execution with mid-circuit measurement
* :mod:`qnetrel.estimator`  end-to-end pipelines and the verification sweep
* :mod:`qnetrel.resources`  closed-form gate and qubit counts
* :mod:`qnetrel.cli`        JSON command-line front end
"""
from .circuit import build_pipeline, make_layout
from .estimator import (
    ReliabilityEstimate,
    quantum_reliability_exact_readout,
    quantum_reliability_sampled,
    verify_sweep,
)
from .graph import Edge, Network, exact_reliability, parse_network
from .resources import estimate_resources

__version__ = "0.1.0"

__all__ = [
    "Edge",
    "Network",
    "ReliabilityEstimate",
    "build_pipeline",
    "estimate_resources",
    "exact_reliability",
    "make_layout",
    "parse_network",
    "quantum_reliability_exact_readout",
    "quantum_reliability_sampled",
    "verify_sweep",
]
