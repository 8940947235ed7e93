"""Probabilistic undirected networks and the brute-force reliability oracle.

A :class:`Network` is a node count plus an ordered list of edges, each with
the probability that the edge *fails*.  Edge ``k`` is the ``k``-th entry of
that list and the same index is used by every downstream module.

Edge configurations are plain integers: bit ``k`` set means edge ``k``
survived.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "Edge",
    "Network",
    "NetworkError",
    "MalformedNetworkError",
    "ProbabilityRangeError",
    "SelfLoopError",
    "DuplicateEdgeError",
    "EndpointRangeError",
    "InstanceTooLargeError",
    "DEFAULT_ENUMERATION_CAP",
    "parse_network",
    "network_to_dict",
    "network_to_json",
    "reachable_count",
    "reachable_set",
    "hop_distances",
    "config_probability",
    "exact_reliability",
]

DEFAULT_ENUMERATION_CAP = 24

# configs evaluated per vectorised block in exact_reliability
_BLOCK_BITS = 18


class NetworkError(ValueError):
    """Base class for network validation errors."""


class MalformedNetworkError(NetworkError):
    pass


class ProbabilityRangeError(NetworkError):
    pass


class SelfLoopError(NetworkError):
    pass


class DuplicateEdgeError(NetworkError):
    pass


class EndpointRangeError(NetworkError):
    pass


class InstanceTooLargeError(ValueError):
    """Raised when exhaustive enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    p_fail: float

    def __post_init__(self):
        # canonical storage orientation; traversal uses both directions
        if self.u > self.v:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)


@dataclass(frozen=True)
class Network:
    """Undirected graph with per-edge failure probabilities.

    Construction validates every invariant and raises the matching
    :class:`NetworkError` subclass on violation.
    """

    num_nodes: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if isinstance(self.num_nodes, bool) or not isinstance(self.num_nodes, (int, np.integer)):
            raise MalformedNetworkError(f"num_nodes must be an integer, got {self.num_nodes!r}")
        if self.num_nodes < 1:
            raise MalformedNetworkError(f"num_nodes must be positive, got {self.num_nodes}")
        seen = set()
        for k, e in enumerate(self.edges):
            if not (0 <= e.u < self.num_nodes and 0 <= e.v < self.num_nodes):
                raise EndpointRangeError(
                    f"edge {k} ({e.u}, {e.v}) has an endpoint outside [0, {self.num_nodes})"
                )
            if e.u == e.v:
                raise SelfLoopError(f"edge {k} is a self-loop on node {e.u}")
            if (e.u, e.v) in seen:
                raise DuplicateEdgeError(f"edge {k} duplicates undirected edge ({e.u}, {e.v})")
            seen.add((e.u, e.v))
            p = e.p_fail
            if not (isinstance(p, (int, float, np.floating)) and not isinstance(p, bool)) or not 0.0 <= p <= 1.0:
                raise ProbabilityRangeError(f"edge {k} p_fail={p!r} is outside [0, 1]")

    @classmethod
    def from_edges(cls, num_nodes: int, edges: Sequence[tuple[int, int, float]]) -> "Network":
        """Build from ``(u, v, p_fail)`` triples."""
        return cls(num_nodes, tuple(Edge(u, v, p) for u, v, p in edges))

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def p_fail(self) -> np.ndarray:
        return np.array([e.p_fail for e in self.edges], dtype=float)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per node, the list of ``(neighbour, edge_index)`` pairs."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.num_nodes)]
        for k, e in enumerate(self.edges):
            adj[e.u].append((e.v, k))
            adj[e.v].append((e.u, k))
        return adj


def parse_network(text: str | bytes) -> Network:
    """Parse the JSON graph format into a validated :class:`Network`.

    The document is an object with ``num_nodes`` and an ``edges`` array of
    ``{"u", "v", "p_fail"}`` objects.  Edge order is kept.
    """
    try:
        doc = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedNetworkError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise MalformedNetworkError("top-level JSON value must be an object")
    if "num_nodes" not in doc or "edges" not in doc:
        raise MalformedNetworkError("document needs both 'num_nodes' and 'edges'")
    num_nodes = doc["num_nodes"]
    if isinstance(num_nodes, bool) or not isinstance(num_nodes, int):
        raise MalformedNetworkError(f"num_nodes must be an integer, got {num_nodes!r}")
    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise MalformedNetworkError("'edges' must be an array")
    edges = []
    for k, item in enumerate(raw_edges):
        if not isinstance(item, dict) or not {"u", "v", "p_fail"} <= item.keys():
            raise MalformedNetworkError(f"edge {k} must be an object with 'u', 'v', 'p_fail'")
        u, v, p = item["u"], item["v"], item["p_fail"]
        for name, val in (("u", u), ("v", v)):
            if isinstance(val, bool) or not isinstance(val, int):
                raise MalformedNetworkError(f"edge {k} field {name!r} must be an integer")
        if isinstance(p, bool) or not isinstance(p, (int, float)):
            raise MalformedNetworkError(f"edge {k} field 'p_fail' must be a number")
        edges.append(Edge(u, v, float(p)))
    return Network(num_nodes, tuple(edges))


def network_to_dict(net: Network) -> dict:
    return {
        "num_nodes": net.num_nodes,
        "edges": [{"u": e.u, "v": e.v, "p_fail": e.p_fail} for e in net.edges],
    }


def network_to_json(net: Network) -> str:
    return json.dumps(network_to_dict(net))


def _check_root(net: Network, root: int) -> None:
    if not 0 <= root < net.num_nodes:
        raise ValueError(f"root {root} outside [0, {net.num_nodes})")


def hop_distances(net: Network, config: int, root: int) -> list[int | None]:
    """BFS hop distance from ``root`` over surviving edges; ``None`` if unreachable."""
    _check_root(net, root)
    adj = net.adjacency()
    dist: list[int | None] = [None] * net.num_nodes
    dist[root] = 0
    queue = deque([root])
    while queue:
        a = queue.popleft()
        for b, k in adj[a]:
            if dist[b] is None and (config >> k) & 1:
                dist[b] = dist[a] + 1
                queue.append(b)
    return dist


def reachable_set(net: Network, config: int, root: int) -> set[int]:
    return {i for i, d in enumerate(hop_distances(net, config, root)) if d is not None}


def reachable_count(net: Network, config: int, root: int) -> int:
    """Number of nodes reachable from ``root`` (itself included) in ``config``."""
    return len(reachable_set(net, config, root))


def config_probability(net: Network, config: int) -> float:
    """Probability that exactly the edges set in ``config`` survive."""
    prob = 1.0
    for k, e in enumerate(net.edges):
        prob *= (1.0 - e.p_fail) if (config >> k) & 1 else e.p_fail
    return prob


def _block_reach_counts(net: Network, masks: np.ndarray, root: int) -> np.ndarray:
    # Frontier expansion to a true fixed point over a block of configs at once.
    # Reached sets are bitsets over the root plus edge endpoints (at most 2E+1
    # nodes, so they fit one machine word per config).
    ids = {root: 0}
    for e in net.edges:
        ids.setdefault(e.u, len(ids))
        ids.setdefault(e.v, len(ids))
    dtype = next(t for t in (np.uint8, np.uint16, np.uint32, np.uint64) if len(ids) <= np.iinfo(t).bits)
    reached = np.ones(masks.size, dtype=dtype)
    pairs = [dtype((1 << ids[e.u]) | (1 << ids[e.v])) for e in net.edges]
    alive = [((masks >> k) & 1).astype(dtype) for k in range(net.num_edges)]
    while True:
        before = reached.copy()
        for k, pair in enumerate(pairs):
            touch = (reached & pair) != 0
            reached |= alive[k] * touch * pair
        if np.array_equal(before, reached):
            break
    counts = np.zeros(masks.size, dtype=np.int64)
    for i in range(len(ids)):
        counts += (reached >> dtype(i)) & dtype(1)
    return counts


def _block_probabilities(net: Network, masks: np.ndarray) -> np.ndarray:
    p = net.p_fail
    bits = ((masks[:, None] >> np.arange(net.num_edges)) & 1).astype(bool)
    return np.prod(np.where(bits, 1.0 - p, p), axis=1)


def exact_reliability(
    net: Network,
    root: int = 0,
    terminals: int | None = None,
    *,
    max_edges: int = DEFAULT_ENUMERATION_CAP,
) -> float:
    """Exact probability that at least ``terminals`` nodes are reachable from ``root``.

    Enumerates all ``2**E`` edge configurations.  ``terminals`` defaults to
    the node count, which is all-terminal reliability.

    Raises:
        InstanceTooLargeError: if ``E > max_edges``.
    """
    _check_root(net, root)
    if terminals is None:
        terminals = net.num_nodes
    if not 1 <= terminals <= net.num_nodes:
        raise ValueError(f"terminals {terminals} outside [1, {net.num_nodes}]")
    E = net.num_edges
    if E > max_edges:
        raise InstanceTooLargeError(
            f"{E} edges exceeds the enumeration cap of {max_edges} (2**{E} configurations)"
        )
    total = 1 << E
    block = 1 << min(E, _BLOCK_BITS)
    partials = []
    for start in range(0, total, block):
        masks = np.arange(start, start + block, dtype=np.int64)
        ok = _block_reach_counts(net, masks, root) >= terminals
        partials.append(math.fsum(_block_probabilities(net, masks[ok])))
    return math.fsum(partials)
