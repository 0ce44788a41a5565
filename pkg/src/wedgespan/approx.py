"""Angle-bounded spanning tree builders for apertures 180, 120, and 90 degrees.

Each builder starts from the shortcut TSP tour (at most twice the MST
weight), carves it into groups, orients a wedge gadget per group, and joins
consecutive groups with the shortest induced cross edge. The heaviest
tour-edge class is reserved for the group boundaries, which is what brings
the weight bounds down to 2x / 6x / 16x the Euclidean MST.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import (
    SeparationConnectivityViolation,
    TheoremViolation,
    TooFewPointsError,
)
from .gadget import orient_pair, orient_quadruplet, orient_triplet
from .geom import (
    ANGLE_TOL_DEG,
    PointSet,
    Wedge,
    angular_spread,
    check_distinct,
    covering_wedge,
    direction,
)
from .graph import (
    CommGraph,
    SpanningTree,
    Tour,
    cross_edge,
    euclidean_mst,
    induced_graph,
    tree_from_edges,
    tsp_tour,
)

_RATIO_BOUNDS = {180: 2.0, 120: 6.0, 90: 16.0}
_REL = 1e-9


@dataclass(frozen=True)
class AlphaTree:
    """A spanning tree whose edges at every vertex fit in an aperture-alpha wedge.

    ``wedges`` are per-point witnesses: every tree edge is an edge of the
    graph induced by them.
    """

    alpha_deg: float
    tree: SpanningTree
    wedges: tuple[Wedge, ...]
    mst_weight: float
    tour_weight: float

    @property
    def ratio(self) -> float:
        return self.tree.weight / self.mst_weight if self.mst_weight > 0 else 1.0


@dataclass(frozen=True)
class TourPartition:
    """Tour split into consecutive groups with the heaviest boundary class.

    ``connecting_class`` is the offset j of the tour-edge class chosen as
    group boundaries; it maximizes the class weight, so by pigeonhole it
    carries at least 1/group_size of the tour weight.
    """

    groups: tuple[tuple[int, ...], ...]
    connecting_class: int
    class_weights: tuple[float, ...]


def partition_tour(tour: Tour, group_size: int = 3) -> TourPartition:
    """Split the tour into runs of ``group_size`` consecutive vertices.

    Tour edges with index congruent to the chosen class run between groups.
    When group_size does not divide n, the trailing group is short.
    """
    n = tour.n
    if n < group_size:
        raise TooFewPointsError(f"partition needs at least {group_size} points, got {n}")
    weights = [0.0] * group_size
    for i in range(n):
        weights[i % group_size] += tour.edge_weights[i]
    best = max(range(group_size), key=lambda j: (weights[j], -j))
    assert weights[best] >= tour.weight / group_size - _REL * tour.weight
    start = (best + 1) % n
    rotated = [tour.order[(start + m) % n] for m in range(n)]
    groups = tuple(
        tuple(rotated[k : k + group_size]) for k in range(0, n, group_size)
    )
    return TourPartition(groups=groups, connecting_class=best, class_weights=tuple(weights))


def _pair_tree(points: PointSet, aperture_deg: float) -> AlphaTree:
    w = points[0].distance_to(points[1])
    wedges = orient_pair(points, aperture_deg)
    tree = tree_from_edges(points, [(0, 1)])
    return AlphaTree(aperture_deg, tree, tuple(wedges), mst_weight=w, tour_weight=2.0 * w)


def build_tree_180(points: PointSet) -> AlphaTree:
    """Half-plane tree: the shortcut tour minus its heaviest edge.

    A path has maximum degree two, so the incident edges at every vertex fit
    in a 180-degree wedge. Weight is at most the tour's, hence at most twice
    the MST weight.
    """
    n = len(points)
    if n < 2:
        raise TooFewPointsError("build_tree_180 requires at least two points")
    check_distinct(points)
    mst = euclidean_mst(points)
    tour = tsp_tour(points, mst=mst)
    drop = max(range(n), key=lambda i: (tour.edge_weights[i], -i))
    edges = {tuple(sorted(tour.edge(i))) for i in range(n) if i != drop}
    adjacency: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    wedges = tuple(
        covering_wedge(points[v], [points[u] for u in adjacency[v]], 180.0) for v in range(n)
    )
    tree = tree_from_edges(points, edges)
    result = AlphaTree(180.0, tree, wedges, mst_weight=mst.weight, tour_weight=tour.weight)
    assert tree.weight <= 2.0 * mst.weight * (1.0 + _REL)
    return result


def _local_induced(points: PointSet, wedges: Sequence[Wedge], members: Sequence[int]) -> CommGraph:
    sub_points = [points[i] for i in members]
    sub_wedges = [wedges[i] for i in members]
    return induced_graph(sub_points, sub_wedges)


def _attach_leftovers(
    points: PointSet,
    wedges: list[Optional[Wedge]],
    leftovers: Sequence[int],
    host_group: Sequence[int],
    aperture_deg: float,
) -> list[tuple[int, int]]:
    """Give each leftover point a wedge aimed at the nearest host wedge covering it.

    The host group's wedges cover the plane, so a covering wedge exists;
    pointing the leftover's bisector at its apex makes the edge mutual.
    """
    edges = []
    for p in leftovers:
        candidates = [
            x for x in host_group if wedges[x] is not None and wedges[x].contains(points[p])
        ]
        assert candidates, f"host group wedges do not cover leftover point {p}"
        x = min(candidates, key=lambda i: (points[p].distance_to(points[i]), i))
        wedges[p] = Wedge(points[p], direction(points[p], points[x]), aperture_deg)
        edges.append((p, x))
    return edges


def build_tree_120(points: PointSet) -> AlphaTree:
    """Aperture-120 tree via triplet gadgets along the tour.

    Groups of three consecutive tour points are oriented independently; the
    two guaranteed gadget edges join each group internally and the shortest
    induced cross edge joins consecutive groups (its existence for any two
    independently oriented triplet gadgets is the load-bearing guarantee —
    a missing one raises TheoremViolation). When 3 divides n, the weight is
    at most 3x the tour and 6x the MST.
    """
    n = len(points)
    if n < 2:
        raise TooFewPointsError("build_tree_120 requires at least two points")
    check_distinct(points)
    if n == 2:
        return _pair_tree(points, 120.0)
    mst = euclidean_mst(points)
    tour = tsp_tour(points, mst=mst)
    part = partition_tour(tour, 3)
    full = [g for g in part.groups if len(g) == 3]
    leftovers = [p for g in part.groups if len(g) < 3 for p in g]

    wedges: list[Optional[Wedge]] = [None] * n
    edges: list[tuple[int, int]] = []
    for g in full:
        tri = orient_triplet([points[i] for i in g])
        for local in range(3):
            wedges[g[local]] = tri.wedges[local]
        for a, b in tri.tree_edges:
            edges.append((g[a], g[b]))
    for k in range(len(full) - 1):
        a, b = full[k], full[k + 1]
        members = list(a) + list(b)
        sub = _local_induced(points, wedges, members)  # type: ignore[arg-type]
        ce = cross_edge(sub, range(3), range(3, 6))
        if ce is None:
            raise TheoremViolation(
                f"no cross edge between triplet groups {a} and {b}"
            )
        edges.append((members[ce[0]], members[ce[1]]))
    edges.extend(_attach_leftovers(points, wedges, leftovers, full[-1], 120.0))

    tree = tree_from_edges(points, edges)
    result = AlphaTree(
        120.0, tree, tuple(wedges), mst_weight=mst.weight, tour_weight=tour.weight
    )
    if n % 3 == 0:
        assert tree.weight <= 3.0 * tour.weight * (1.0 + _REL)
        assert tree.weight <= 6.0 * mst.weight * (1.0 + _REL)
    return result


def _split_by_x(points: PointSet, members: Sequence[int]) -> tuple[list[int], list[int]]:
    ordered = sorted(members, key=lambda i: (points[i].x, points[i].y, i))
    half = len(ordered) // 2
    return ordered[:half], ordered[half:]


def _quad_inner_edges(
    points: PointSet, wedges: Sequence[Optional[Wedge]], quad: Sequence[int]
) -> list[tuple[int, int]]:
    """Minimum spanning tree of the quadruplet's induced graph (3 edges)."""
    sub = _local_induced(points, wedges, quad)  # type: ignore[arg-type]
    cands = sorted((w, u, v) for u, v, w in sub.edges())
    parent = list(range(4))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    picked = []
    for w, u, v in cands:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            picked.append((quad[u], quad[v]))
    assert len(picked) == 3, "quadruplet induced graph was not connected"
    return picked


def build_tree_90(points: PointSet) -> AlphaTree:
    """Aperture-90 tree via quadruplet gadgets over tour sections of eight.

    Each section splits at its median x coordinate into two quadruplets
    (so the pair is separated by a vertical line); quadruplets are oriented
    independently, joined inside each section and across consecutive
    sections by induced cross edges. Missing cross edges raise
    SeparationConnectivityViolation. When 8 divides n, the weight is at
    most 8x the tour and 16x the MST.
    """
    n = len(points)
    if n < 2:
        raise TooFewPointsError("build_tree_90 requires at least two points")
    check_distinct(points)
    if n == 2:
        return _pair_tree(points, 90.0)
    mst = euclidean_mst(points)
    tour = tsp_tour(points, mst=mst)

    wedges: list[Optional[Wedge]] = [None] * n
    edges: list[tuple[int, int]] = []

    if n == 3:
        # Star on the vertex whose two neighbors fit in a quarter wedge; the
        # smallest triangle angle is at most 60, so one always exists.
        hub = next(
            v
            for v in range(3)
            if angular_spread(points[v], [points[u] for u in range(3) if u != v])
            <= 90.0 + ANGLE_TOL_DEG
        )
        others = [u for u in range(3) if u != hub]
        wedges[hub] = covering_wedge(points[hub], [points[u] for u in others], 90.0)
        for u in others:
            wedges[u] = Wedge(points[u], direction(points[u], points[hub]), 90.0)
            edges.append((u, hub))
    elif n < 8:
        quad, leftovers = sorted(range(n), key=lambda i: (points[i].x, points[i].y, i))[:4], []
        quad_set = set(quad)
        leftovers = [p for p in tour.order if p not in quad_set]
        orientation = orient_quadruplet([points[i] for i in quad])
        for local in range(4):
            wedges[quad[local]] = orientation.wedges[local]
        edges.extend(_quad_inner_edges(points, wedges, quad))
        edges.extend(_attach_leftovers(points, wedges, leftovers, quad, 90.0))
    else:
        part = partition_tour(tour, 8)
        full = [g for g in part.groups if len(g) == 8]
        leftovers = [p for g in part.groups if len(g) < 8 for p in g]
        halves: list[tuple[list[int], list[int]]] = []
        for g in full:
            left, right = _split_by_x(points, g)
            for quad in (left, right):
                orientation = orient_quadruplet([points[i] for i in quad])
                for local in range(4):
                    wedges[quad[local]] = orientation.wedges[local]
                edges.extend(_quad_inner_edges(points, wedges, quad))
            halves.append((left, right))
        for (left, right), g in zip(halves, full):
            members = left + right
            sub = _local_induced(points, wedges, members)
            ce = cross_edge(sub, range(4), range(4, 8))
            if ce is None:
                raise SeparationConnectivityViolation(
                    f"no edge between x-separated quadruplets of section {g}"
                )
            edges.append((members[ce[0]], members[ce[1]]))
        for k in range(len(full) - 1):
            members = list(full[k]) + list(full[k + 1])
            sub = _local_induced(points, wedges, members)
            ce = cross_edge(sub, range(8), range(8, 16))
            if ce is None:
                raise SeparationConnectivityViolation(
                    f"no edge between consecutive sections {full[k]} and {full[k + 1]}"
                )
            edges.append((members[ce[0]], members[ce[1]]))
        edges.extend(_attach_leftovers(points, wedges, leftovers, full[-1], 90.0))

    tree = tree_from_edges(points, edges)
    result = AlphaTree(
        90.0, tree, tuple(wedges), mst_weight=mst.weight, tour_weight=tour.weight
    )
    if n % 8 == 0:
        assert tree.weight <= 8.0 * tour.weight * (1.0 + _REL)
        assert tree.weight <= 16.0 * mst.weight * (1.0 + _REL)
    return result


_BUILDERS = {180: build_tree_180, 120: build_tree_120, 90: build_tree_90}


def build_tree(points: PointSet, alpha_deg: float) -> AlphaTree:
    """Dispatch to the builder for alpha in {90, 120, 180} degrees."""
    key = int(round(alpha_deg))
    if key not in _BUILDERS or abs(alpha_deg - key) > ANGLE_TOL_DEG:
        raise ValueError(f"no builder for alpha={alpha_deg}; supported: 90, 120, 180")
    return _BUILDERS[key](points)


@dataclass(frozen=True)
class AlphaTreeReport:
    """Recomputed validity and weight-bound report for an AlphaTree."""

    passed: bool
    alpha_deg: float
    n: int
    edge_count_ok: bool
    connected: bool
    acyclic: bool
    weight: float
    mst_weight: float
    ratio: float
    bound: Optional[float]
    ratio_enforced: bool
    ratio_ok: bool
    max_spread_deg: float
    worst_vertex: Optional[int]
    witness_edges_ok: bool
    failures: tuple[str, ...]

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "alpha": self.alpha_deg,
            "n": self.n,
            "edge_count_ok": self.edge_count_ok,
            "connected": self.connected,
            "acyclic": self.acyclic,
            "weight": self.weight,
            "mst_weight": self.mst_weight,
            "ratio": self.ratio,
            "bound": self.bound,
            "ratio_enforced": self.ratio_enforced,
            "ratio_ok": self.ratio_ok,
            "max_spread_deg": self.max_spread_deg,
            "worst_vertex": self.worst_vertex,
            "witness_edges_ok": self.witness_edges_ok,
            "failures": list(self.failures),
        }


def verify_alpha_tree(points: PointSet, result: AlphaTree) -> AlphaTreeReport:
    """Recompute every AlphaTree invariant from scratch and report.

    Checks tree structure, per-vertex angular spread against alpha, witness
    wedge consistency of every edge, the stored weight, and the ratio against
    a fresh Euclidean MST. The alpha-specific ratio bound (2 / 6 / 16) is
    enforced only where the charging argument applies: always for 180, and
    when the group size divides n for 120 and 90.
    """
    n = len(points)
    failures: list[str] = []
    tree = result.tree
    edge_count_ok = len(tree.edges) == n - 1
    if not edge_count_ok:
        failures.append(f"expected {n - 1} edges, found {len(tree.edges)}")

    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    acyclic = True
    for u, v in tree.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            acyclic = False
        else:
            parent[ru] = rv
    connected = len({find(v) for v in range(n)}) == 1
    if not connected:
        failures.append("tree does not span all vertices")
    if not acyclic:
        failures.append("tree contains a cycle")

    adjacency: list[list[int]] = [[] for _ in range(n)]
    weight = 0.0
    for u, v in tree.edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
        weight += points[u].distance_to(points[v])
    if abs(weight - tree.weight) > _REL * max(1.0, weight):
        failures.append(f"stored weight {tree.weight} != recomputed {weight}")

    max_spread = 0.0
    worst: Optional[int] = None
    for v in range(n):
        if not adjacency[v]:
            continue
        spread = angular_spread(points[v], [points[u] for u in adjacency[v]])
        if spread > max_spread:
            max_spread = spread
            worst = v
    if max_spread > result.alpha_deg + ANGLE_TOL_DEG:
        failures.append(f"vertex {worst} has spread {max_spread} > alpha {result.alpha_deg}")

    witness_ok = True
    for u, v in tree.edges:
        if not (result.wedges[u].contains(points[v]) and result.wedges[v].contains(points[u])):
            witness_ok = False
            failures.append(f"edge ({u},{v}) is not mutual under the witness wedges")
            break

    mst_weight = euclidean_mst(points).weight if n >= 1 else 0.0
    ratio = weight / mst_weight if mst_weight > 0 else 1.0
    key = int(round(result.alpha_deg))
    bound = _RATIO_BOUNDS.get(key)
    group = {180: 1, 120: 3, 90: 8}.get(key, 1)
    enforced = bound is not None and n % group == 0
    ratio_ok = bound is None or ratio <= bound * (1.0 + _REL)
    if enforced and not ratio_ok:
        failures.append(f"ratio {ratio} exceeds bound {bound}")

    passed = (
        edge_count_ok
        and connected
        and acyclic
        and witness_ok
        and max_spread <= result.alpha_deg + ANGLE_TOL_DEG
        and abs(weight - tree.weight) <= _REL * max(1.0, weight)
        and (ratio_ok or not enforced)
    )
    return AlphaTreeReport(
        passed=passed,
        alpha_deg=result.alpha_deg,
        n=n,
        edge_count_ok=edge_count_ok,
        connected=connected,
        acyclic=acyclic,
        weight=weight,
        mst_weight=mst_weight,
        ratio=ratio,
        bound=bound,
        ratio_enforced=enforced,
        ratio_ok=ratio_ok,
        max_spread_deg=max_spread,
        worst_vertex=worst,
        witness_edges_ok=witness_ok,
        failures=tuple(failures),
    )
