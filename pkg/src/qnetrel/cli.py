"""Command-line front end.

Every subcommand writes a single JSON document to stdout.  Failures print
``{"error": {"type": ..., "message": ...}}`` and exit non-zero; ``verify``
exits 1 when the sweep fails.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .estimator import (
    SimulationBudgetError,
    quantum_reliability_exact_readout,
    quantum_reliability_sampled,
    verify_sweep,
)
from .graph import InstanceTooLargeError, Network, NetworkError, exact_reliability, parse_network
from .resources import estimate_resources

log = logging.getLogger("qnetrel")

DEFAULT_SEED = 0

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2


class UsageError(ValueError):
    pass


def _load(args) -> Network:
    if args.graph is None:
        raise UsageError("--graph is required")
    try:
        text = Path(args.graph).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read graph file: {exc}") from exc
    return parse_network(text)


def _terminals(args, net: Network) -> int:
    return net.num_nodes if args.terminals is None else args.terminals


def cmd_exact(args) -> tuple[dict, int]:
    net = _load(args)
    T = _terminals(args, net)
    value = exact_reliability(net, args.root, T)
    return {
        "reliability": value,
        "method": "enumeration",
        "configs": 1 << net.num_edges,
        "root": args.root,
        "terminals": T,
    }, EXIT_OK


def cmd_simulate(args) -> tuple[dict, int]:
    net = _load(args)
    est = quantum_reliability_exact_readout(net, args.root, _terminals(args, net), args.seed)
    return est.to_dict(), EXIT_OK


def cmd_sample(args) -> tuple[dict, int]:
    net = _load(args)
    if args.shots < 1:
        raise UsageError("--shots must be at least 1")
    est = quantum_reliability_sampled(net, args.root, _terminals(args, net), args.shots, args.seed)
    return est.to_dict(), EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    report = verify_sweep(args.max_nodes, args.max_edges, args.trials, args.tolerance, args.seed)
    return report, EXIT_OK if report["summary"]["passed"] else EXIT_FAILED


def cmd_resources(args) -> tuple[dict, int]:
    E, V = args.num_edges, args.num_nodes
    if args.graph is not None:
        net = _load(args)
        E = net.num_edges if E is None else E
        V = net.num_nodes if V is None else V
    if E is None or V is None:
        raise UsageError("resources needs --graph or both --num-edges and --num-nodes")
    T = V if args.terminals is None else args.terminals
    return estimate_resources(E, V, T, args.epsilon).to_dict(), EXIT_OK


COMMANDS = {
    "exact": cmd_exact,
    "simulate": cmd_simulate,
    "sample": cmd_sample,
    "verify": cmd_verify,
    "resources": cmd_resources,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qnetrel", description="Network reliability via simulated quantum circuits.")
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_opts(p, *, required=True):
        p.add_argument("--graph", required=required, help="graph JSON file")
        p.add_argument("--root", type=int, default=0)
        p.add_argument("--terminals", type=int, default=None, help="T (default: number of nodes)")

    p = sub.add_parser("exact", help="brute-force enumeration")
    graph_opts(p)

    p = sub.add_parser("simulate", help="state-vector simulation, exact label readout")
    graph_opts(p)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("sample", help="state-vector simulation, shot sampling")
    graph_opts(p)
    p.add_argument("--shots", type=int, default=1000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("verify", help="random sweep against the enumeration oracle")
    p.add_argument("--max-nodes", type=int, default=5)
    p.add_argument("--max-edges", type=int, default=7)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("resources", help="closed-form CNOT/T/qubit counts")
    p.add_argument("--graph", default=None)
    p.add_argument("--num-edges", type=int, default=None)
    p.add_argument("--num-nodes", type=int, default=None)
    p.add_argument("--terminals", type=int, default=None)
    p.add_argument("--epsilon", type=float, required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        payload, code = COMMANDS[args.command](args)
    except (NetworkError, InstanceTooLargeError, SimulationBudgetError, UsageError, ValueError) as exc:
        log.error("%s", exc)
        payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        code = EXIT_ERROR
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
