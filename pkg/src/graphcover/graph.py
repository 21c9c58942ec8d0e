"""Undirected graphs over dense integer node ids.

Hop distances, closed delta-neighborhoods, connectivity, the edge
neighborhood-gap ``nu``, induced subgraphs, a few deterministic generators,
and the plain-text edge-list format.
"""

from __future__ import annotations

import math
from collections import deque
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "UNREACHABLE",
    "Graph",
    "GraphError",
    "GenerationError",
    "distance",
    "distances_from",
    "delta_neighborhood",
    "is_connected",
    "diameter",
    "nu",
    "induced_subgraph",
    "path_graph",
    "star_graph",
    "cycle_graph",
    "complete_graph",
    "double_star",
    "generate_random_geometric",
    "load_graph",
    "save_graph",
    "format_edge_list",
    "parse_edge_list",
]

#: Distance reported between nodes in different components.
UNREACHABLE = math.inf

RGG_RETRIES = 100


class GraphError(ValueError):
    """Invalid node id, malformed graph, or malformed graph file."""


class GenerationError(RuntimeError):
    """A random generator ran out of retries."""


class Graph:
    """Immutable undirected simple graph on nodes ``0 .. node_count - 1``.

    Neighborhood queries are memoized per instance; the cache is never
    observable from outside.
    """

    __slots__ = ("_adj", "_edges", "_nbhd_cache", "_connected")

    def __init__(self, node_count: int, edges: Iterable[tuple[int, int]] = ()):
        if node_count < 1:
            raise GraphError(f"node_count must be positive, got {node_count}")
        nbrs: list[set[int]] = [set() for _ in range(node_count)]
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside [0, {node_count})")
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self._adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self._edges: tuple[tuple[int, int], ...] = tuple(
            (u, v) for u in range(node_count) for v in self._adj[u] if u < v
        )
        self._nbhd_cache: dict[tuple[int, int], frozenset[int]] = {}
        self._connected: bool | None = None

    @property
    def node_count(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Edges as ``(u, v)`` with ``u < v``, lexicographically sorted."""
        return self._edges

    def nodes(self) -> range:
        return range(len(self._adj))

    def neighbors(self, v: int) -> tuple[int, ...]:
        self.check_node(v)
        return self._adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        self.check_node(u)
        self.check_node(v)
        return v in self._adj[u]

    def check_node(self, v: int) -> None:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < len(self._adj):
            raise GraphError(f"invalid node id {v!r} for a graph with {len(self._adj)} nodes")

    def neighborhood(self, v: int, delta: int) -> frozenset[int]:
        """Memoized form of :func:`delta_neighborhood`."""
        key = (v, delta)
        hit = self._nbhd_cache.get(key)
        if hit is None:
            hit = delta_neighborhood(self, v, delta)
            self._nbhd_cache[key] = hit
        return hit

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(node_count={self.node_count}, edges={list(self._edges)})"


def distances_from(g: Graph, source: int) -> list[float]:
    """Breadth-first hop counts from ``source``; ``UNREACHABLE`` elsewhere."""
    g.check_node(source)
    dist: list[float] = [UNREACHABLE] * g.node_count
    dist[source] = 0
    queue = deque([source])
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] == UNREACHABLE:
                dist[w] = du
                queue.append(w)
    return dist


def distance(g: Graph, v: int, w: int) -> float:
    """Length of a shortest ``v``-``w`` path, or ``UNREACHABLE``."""
    g.check_node(w)
    return distances_from(g, v)[w]


def delta_neighborhood(g: Graph, v: int, delta: int) -> frozenset[int]:
    """All nodes within ``delta`` hops of ``v`` (``v`` included)."""
    g.check_node(v)
    if delta < 0:
        raise GraphError(f"delta must be non-negative, got {delta}")
    seen = {v}
    frontier = [v]
    adj = g.adjacency
    for _ in range(delta):
        nxt = []
        for u in frontier:
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if not nxt:
            break
        frontier = nxt
    return frozenset(seen)


def is_connected(g: Graph) -> bool:
    if g._connected is None:
        g._connected = UNREACHABLE not in distances_from(g, 0)
    return g._connected


def diameter(g: Graph) -> float:
    return max(max(distances_from(g, v)) for v in g.nodes())


def nu(g: Graph, delta: int) -> int:
    """Largest one-sided delta-neighborhood difference across an edge.

    Both orientations of every edge are examined.
    """
    if g.edge_count == 0:
        raise GraphError("nu is undefined on an edgeless graph")
    best = 0
    for u, v in g.edges:
        nu_, nv = g.neighborhood(u, delta), g.neighborhood(v, delta)
        best = max(best, len(nu_ - nv), len(nv - nu_))
    return best


def induced_subgraph(g: Graph, nodes: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Subgraph on ``nodes`` with every edge of ``g`` between them.

    Returns the subgraph and the old-id -> new-id mapping; new ids follow
    ascending old ids.
    """
    keep = sorted(set(nodes))
    if not keep:
        raise GraphError("cannot induce a subgraph on an empty node set")
    for v in keep:
        g.check_node(v)
    mapping = {old: new for new, old in enumerate(keep)}
    edges = [(mapping[u], mapping[v]) for u, v in g.edges if u in mapping and v in mapping]
    return Graph(len(keep), edges), mapping


# -- generators -------------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """Hub 0 joined to leaves ``1 .. leaves``."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 nodes")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def double_star(left: int, right: int) -> Graph:
    """Adjacent hubs 0 and 1; hub 0 carries ``left`` leaves, hub 1 ``right``."""
    edges = [(0, 1)]
    nxt = 2
    for hub, count in ((0, left), (1, right)):
        for _ in range(count):
            edges.append((hub, nxt))
            nxt += 1
    return Graph(nxt, edges)


def _geometric_edges(points: np.ndarray, radius: float) -> list[tuple[int, int]]:
    diff = points[:, None, :] - points[None, :, :]
    close = np.einsum("ijk,ijk->ij", diff, diff) <= radius * radius
    iu, ju = np.nonzero(np.triu(close, k=1))
    return list(zip(iu.tolist(), ju.tolist()))


def generate_random_geometric(
    n: int, radius: float, seed: int, retries: int = RGG_RETRIES
) -> Graph:
    """Connected random geometric graph in the unit square.

    Points are drawn uniformly from one seeded stream; a disconnected draw is
    discarded and redrawn, at most ``retries`` times.
    """
    if n < 1:
        raise GraphError(f"n must be positive, got {n}")
    if radius <= 0:
        raise GraphError(f"radius must be positive, got {radius}")
    rng = np.random.default_rng(seed)
    for _ in range(retries):
        points = rng.random((n, 2))
        g = Graph(n, _geometric_edges(points, radius))
        if is_connected(g):
            return g
    raise GenerationError(
        f"no connected geometric graph with n={n}, radius={radius} after {retries} draws"
    )


# -- edge-list files ----------------------------------------------------------


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"p {g.node_count}")
    lines.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> tuple[Graph, dict[int, int]]:
    """Parse the ``p``/``e`` edge-list format.

    With a ``p`` header the ids must already be dense and 0-based. Without
    one, the ids seen on ``e`` lines are compacted in ascending order. The
    returned mapping is file-id -> graph-id (identity in the first case).
    """
    node_count = None
    raw: list[tuple[int, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "p" and len(parts) == 2:
                if node_count is not None:
                    raise GraphError(f"line {lineno}: duplicate 'p' line")
                node_count = int(parts[1])
            elif parts[0] == "e" and len(parts) == 3:
                raw.append((int(parts[1]), int(parts[2])))
            else:
                raise GraphError(f"line {lineno}: cannot parse {line!r}")
        except ValueError as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"line {lineno}: non-integer field in {line!r}") from None
    if node_count is not None:
        return Graph(node_count, raw), {v: v for v in range(node_count)}
    ids = sorted({v for e in raw for v in e})
    if not ids:
        raise GraphError("edge list has neither a 'p' line nor any edges")
    mapping = {old: new for new, old in enumerate(ids)}
    return Graph(len(ids), [(mapping[u], mapping[v]) for u, v in raw]), mapping


def save_graph(g: Graph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_edge_list(g, comment))


def load_graph(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())[0]


def graph_from_adjacency(adjacency: Sequence[Sequence[int]]) -> Graph:
    return Graph(len(adjacency), [(u, v) for u, row in enumerate(adjacency) for v in row if u < v])
