"""Communication graphs, unit disk graphs, Euclidean MST, and the doubled-MST tour."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import ApexMismatchError, TooFewPointsError
from .geom import PointSet, REL_TOL, Wedge, check_distinct, points_coincide

# Below this size the pure-Python induced-graph path beats numpy's call overhead.
_VECTORIZE_THRESHOLD = 48


class CommGraph:
    """Undirected graph over vertex indices with Euclidean edge weights.

    Built once and then treated as read-only, so a finished graph can be
    shared freely across concurrent readers.
    """

    __slots__ = ("n", "_adj", "_weights")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, float]] = ()):
        self.n = n
        self._adj: list[list[int]] = [[] for _ in range(n)]
        self._weights: dict[tuple[int, int], float] = {}
        for u, v, w in edges:
            self.add_edge(u, v, w)

    def add_edge(self, u: int, v: int, weight: float) -> None:
        if u == v:
            raise ValueError("self-loops are not allowed")
        key = (u, v) if u < v else (v, u)
        if key in self._weights:
            return
        self._weights[key] = weight
        self._adj[u].append(v)
        self._adj[v].append(u)

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._weights

    def weight(self, u: int, v: int) -> float:
        return self._weights[(u, v) if u < v else (v, u)]

    def neighbors(self, u: int) -> list[int]:
        return self._adj[u]

    def edges(self) -> list[tuple[int, int, float]]:
        return [(u, v, w) for (u, v), w in sorted(self._weights.items())]

    def edge_set(self) -> set[tuple[int, int]]:
        return set(self._weights)

    @property
    def edge_count(self) -> int:
        return len(self._weights)

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        seen = [False] * self.n
        seen[0] = True
        stack = [0]
        count = 1
        while stack:
            u = stack.pop()
            for v in self._adj[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    stack.append(v)
        return count == self.n


def _check_apexes(points: PointSet, wedges: Sequence[Wedge]) -> None:
    if len(points) != len(wedges):
        raise ApexMismatchError(
            f"{len(points)} points but {len(wedges)} wedges"
        )
    for i, (p, w) in enumerate(zip(points, wedges)):
        if not points_coincide(p, w.apex):
            raise ApexMismatchError(f"wedge {i} apex {w.apex} is not at point {p}")


def _induced_graph_numpy(points: PointSet, wedges: Sequence[Wedge]) -> CommGraph:
    n = len(points)
    xs = np.array([p.x for p in points])
    ys = np.array([p.y for p in points])
    bis = np.array([w.bisector.degrees for w in wedges])
    half = np.array([w.aperture_deg / 2.0 for w in wedges])
    rad = np.array([math.inf if w.radius is None else w.radius for w in wedges])

    dx = xs[None, :] - xs[:, None]
    dy = ys[None, :] - ys[:, None]
    dist = np.hypot(dx, dy)
    ang = np.degrees(np.arctan2(dy, dx))
    delta = (ang - bis[:, None] + 180.0) % 360.0 - 180.0
    covers = np.abs(delta) <= half[:, None] + 1e-9
    covers &= dist <= rad[:, None] * (1.0 + REL_TOL)
    mutual = covers & covers.T
    np.fill_diagonal(mutual, False)
    iu, iv = np.nonzero(np.triu(mutual, 1))
    g = CommGraph(n)
    for u, v in zip(iu.tolist(), iv.tolist()):
        g.add_edge(u, v, dist[u, v])
    return g


def induced_graph(points: PointSet, wedges: Sequence[Wedge]) -> CommGraph:
    """Symmetric communication graph: edge (u,v) iff each point lies in the
    other's wedge and both range limits (when present) are satisfied."""
    _check_apexes(points, wedges)
    n = len(points)
    if n >= _VECTORIZE_THRESHOLD:
        return _induced_graph_numpy(points, wedges)
    g = CommGraph(n)
    for u in range(n):
        for v in range(u + 1, n):
            if wedges[u].contains(points[v]) and wedges[v].contains(points[u]):
                g.add_edge(u, v, points[u].distance_to(points[v]))
    return g


def unit_disk_graph(points: PointSet, r: float = 1.0) -> CommGraph:
    """Edge between u and v iff |uv| <= r (closed boundary, relative tolerance)."""
    n = len(points)
    g = CommGraph(n)
    if n < 2:
        return g
    limit = r * (1.0 + REL_TOL)
    if n >= _VECTORIZE_THRESHOLD:
        xs = np.array([p.x for p in points])
        ys = np.array([p.y for p in points])
        dist = np.hypot(xs[None, :] - xs[:, None], ys[None, :] - ys[:, None])
        iu, iv = np.nonzero(np.triu(dist <= limit, 1))
        for u, v in zip(iu.tolist(), iv.tolist()):
            g.add_edge(u, v, dist[u, v])
        return g
    for u in range(n):
        for v in range(u + 1, n):
            d = points[u].distance_to(points[v])
            if d <= limit:
                g.add_edge(u, v, d)
    return g


def hop_distance(g: CommGraph, u: int, v: int, cap: Optional[int] = None) -> Optional[int]:
    """BFS hop count from u to v; None when unreachable (or beyond cap)."""
    if u == v:
        return 0
    seen = [False] * g.n
    seen[u] = True
    frontier = deque([(u, 0)])
    while frontier:
        node, d = frontier.popleft()
        if cap is not None and d >= cap:
            return None
        for nxt in g.neighbors(node):
            if nxt == v:
                return d + 1
            if not seen[nxt]:
                seen[nxt] = True
                frontier.append((nxt, d + 1))
    return None


def hop_distances_from(g: CommGraph, source: int) -> list[Optional[int]]:
    """All-targets BFS hop counts from source (None where unreachable)."""
    dist: list[Optional[int]] = [None] * g.n
    dist[source] = 0
    frontier = deque([source])
    while frontier:
        u = frontier.popleft()
        du = dist[u]
        for v in g.neighbors(u):
            if dist[v] is None:
                dist[v] = du + 1
                frontier.append(v)
    return dist


@dataclass(frozen=True)
class SpanningTree:
    """Edge list of a spanning tree plus its total Euclidean weight."""

    edges: tuple[tuple[int, int], ...]
    weight: float

    @property
    def n(self) -> int:
        return len(self.edges) + 1


def tree_from_edges(points: PointSet, edges: Iterable[tuple[int, int]]) -> SpanningTree:
    """Build a SpanningTree from index pairs, validating span and acyclicity."""
    n = len(points)
    norm = tuple(sorted((u, v) if u < v else (v, u) for u, v in edges))
    if len(norm) != n - 1:
        raise ValueError(f"spanning tree on {n} vertices needs {n - 1} edges, got {len(norm)}")
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    weight = 0.0
    for u, v in norm:
        ru, rv = find(u), find(v)
        if ru == rv:
            raise ValueError(f"edge ({u},{v}) creates a cycle")
        parent[ru] = rv
        weight += points[u].distance_to(points[v])
    return SpanningTree(norm, weight)


def euclidean_mst(points: PointSet) -> SpanningTree:
    """Minimum spanning tree of the complete Euclidean graph (dense Prim)."""
    n = len(points)
    if n < 1:
        raise TooFewPointsError("euclidean_mst requires at least one point")
    check_distinct(points)
    if n == 1:
        return SpanningTree((), 0.0)
    xs = np.array([p.x for p in points])
    ys = np.array([p.y for p in points])
    in_tree = np.zeros(n, dtype=bool)
    best = np.full(n, np.inf)
    parent = np.zeros(n, dtype=np.int64)
    in_tree[0] = True
    best[0] = np.inf
    d0 = np.hypot(xs - xs[0], ys - ys[0])
    mask = d0 < best
    best[mask] = d0[mask]
    parent[mask] = 0
    best[0] = np.inf
    edges = []
    for _ in range(n - 1):
        k = int(np.argmin(best))
        u = int(parent[k])
        edges.append((u, k) if u < k else (k, u))
        in_tree[k] = True
        best[k] = np.inf
        dk = np.hypot(xs - xs[k], ys - ys[k])
        upd = (dk < best) & ~in_tree
        best[upd] = dk[upd]
        parent[upd] = k
    weight = sum(points[u].distance_to(points[v]) for u, v in edges)
    return SpanningTree(tuple(sorted(edges)), weight)


@dataclass(frozen=True)
class Tour:
    """Cyclic visiting order of all vertices; weight includes the closing edge."""

    order: tuple[int, ...]
    weight: float
    edge_weights: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.order)

    def edge(self, i: int) -> tuple[int, int]:
        return self.order[i], self.order[(i + 1) % self.n]


def tsp_tour(points: PointSet, mst: Optional[SpanningTree] = None) -> Tour:
    """2-approximate TSP tour: preorder walk of the Euclidean MST with shortcuts.

    Root is vertex 0 and children are visited in ascending index order, so
    the result is deterministic. Asserts weight <= 2 * MST weight.
    """
    n = len(points)
    if n < 2:
        raise TooFewPointsError("tsp_tour requires at least two points")
    if mst is None:
        mst = euclidean_mst(points)
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in mst.edges:
        adj[u].append(v)
        adj[v].append(u)
    for lst in adj:
        lst.sort()
    order = []
    seen = [False] * n
    stack = [0]
    while stack:
        u = stack.pop()
        if seen[u]:
            continue
        seen[u] = True
        order.append(u)
        for v in reversed(adj[u]):
            if not seen[v]:
                stack.append(v)
    edge_weights = tuple(
        points[order[i]].distance_to(points[order[(i + 1) % n]]) for i in range(n)
    )
    weight = sum(edge_weights)
    assert weight <= 2.0 * mst.weight * (1.0 + 1e-9), "shortcut tour exceeded twice the MST weight"
    return Tour(tuple(order), weight, edge_weights)


def cross_edge(
    g: CommGraph, side_a: Iterable[int], side_b: Iterable[int]
) -> Optional[tuple[int, int]]:
    """Minimum-length edge of g with one endpoint in each side, or None.

    Ties broken lexicographically on (min endpoint, max endpoint). The two
    sides must be disjoint.
    """
    a = set(side_a)
    b = set(side_b)
    if a & b:
        raise ValueError("cross_edge sides must be disjoint")
    best: Optional[tuple[float, int, int]] = None
    for u in sorted(a):
        for v in g.neighbors(u):
            if v in b:
                lo, hi = (u, v) if u < v else (v, u)
                cand = (g.weight(u, v), lo, hi)
                if best is None or cand < best:
                    best = cand
    if best is None:
        return None
    return best[1], best[2]
