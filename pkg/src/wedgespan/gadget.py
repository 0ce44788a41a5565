"""Wedge-orientation gadgets for small point groups.

Three recipes live here:

* ``orient_triplet`` — 120-degree wedges for any three points, guaranteeing
  two induced edges (a 2-edge spanning path centered on the smallest-angle
  vertex) and full plane coverage by the wedge union.
* ``orient_quadruplet`` — 90-degree wedges for any four points, found by a
  deterministic candidate search and verified against the same two
  postconditions (connected induced graph, plane coverage).
* ``orient_pair`` — two facing wedges, the trivial case.

``verify_coverage`` checks plane coverage of a wedge family: the direction
part exactly (interval arithmetic), the near-field part with a deterministic
low-discrepancy sample.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import GadgetSearchFailed
from .geom import (
    ANGLE_TOL_DEG,
    Direction,
    Point,
    PointSet,
    Wedge,
    check_distinct,
    direction,
    intervals_cover_circle,
)

_COVERAGE_SAMPLES = 10_000
_COVERAGE_BOUND = 10.0

# Canonical triplet bisectors by role: smallest triangle angle faces along the
# base, the other two complete an exact 3-way partition of directions.
_CANON_BASE_LEFT = 0.0
_CANON_BASE_RIGHT = 120.0
_CANON_PEAK = 240.0


def _dir_in_half_aperture(dir_deg: float, bis_deg: float, half_deg: float) -> bool:
    return abs((dir_deg - bis_deg + 180.0) % 360.0 - 180.0) <= half_deg + ANGLE_TOL_DEG


@dataclass(frozen=True)
class TripletOrientation:
    """Result of orienting a 3-point group with 120-degree wedges.

    Role indices point into the input sequence: ``base_left`` has the
    smallest triangle angle, ``peak`` the largest. In the canonical frame
    (base horizontal, base_left at the origin, peak on or above the base
    line) the bisectors are exactly 0 / 120 / 240 for base_left /
    base_right / peak.
    """

    base_left: int
    base_right: int
    peak: int
    rotation_deg: float
    reflected: bool
    origin: Point
    wedges: tuple[Wedge, Wedge, Wedge]

    @property
    def tree_edges(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """The two induced edges guaranteed by the construction."""
        return (self.peak, self.base_left), (self.base_left, self.base_right)

    @property
    def roles(self) -> tuple[int, int, int]:
        return self.base_left, self.base_right, self.peak


@dataclass(frozen=True)
class QuadrupletOrientation:
    """Four 90-degree wedges with connected induced graph and plane coverage."""

    wedges: tuple[Wedge, Wedge, Wedge, Wedge]
    verified: bool


def orient_triplet(points: PointSet, *, check: bool = True) -> TripletOrientation:
    """Orient 120-degree wedges on three points.

    Roles are assigned by ascending triangle angle (ties by input index),
    the rigid motion placing the base horizontal is computed, canonical
    bisectors are assigned, and the wedges are mapped back through the
    inverse motion (reflecting when the largest-angle vertex falls below
    the base line). Collinear triplets are handled by the same formula;
    the closed wedge boundary keeps both guaranteed edges.
    """
    if len(points) != 3:
        raise ValueError(f"orient_triplet requires exactly 3 points, got {len(points)}")
    check_distinct(points)
    p0, p1, p2 = points
    d01 = direction(p0, p1).degrees
    d02 = direction(p0, p2).degrees
    d12 = direction(p1, p2).degrees
    d10 = (d01 + 180.0) % 360.0
    d20 = (d02 + 180.0) % 360.0
    d21 = (d12 + 180.0) % 360.0
    dirs = ((None, d01, d02), (d10, None, d12), (d20, d21, None))

    # Law of cosines keeps the role angles exactly symmetric under symmetric
    # inputs, so angle ties genuinely fall through to the index tie-break.
    s01 = p0.distance_to(p1)
    s02 = p0.distance_to(p2)
    s12 = p1.distance_to(p2)

    def _corner(adj_a: float, adj_b: float, opp: float) -> float:
        cos_v = (adj_a * adj_a + adj_b * adj_b - opp * opp) / (2.0 * adj_a * adj_b)
        return math.degrees(math.acos(min(1.0, max(-1.0, cos_v))))

    angles = (_corner(s01, s02, s12), _corner(s01, s12, s02), _corner(s02, s12, s01))
    by_angle = sorted(range(3), key=lambda i: (angles[i], i))
    bl, br, pk = by_angle

    theta = dirs[bl][br]
    vx = points[br].x - points[bl].x
    vy = points[br].y - points[bl].y
    wx = points[pk].x - points[bl].x
    wy = points[pk].y - points[bl].y
    reflected = (vx * wy - vy * wx) < 0.0

    def _back(canon_deg: float) -> Direction:
        if reflected:
            return Direction(theta - canon_deg)
        return Direction(theta + canon_deg)

    bis = [0.0, 0.0, 0.0]
    bis[bl] = _back(_CANON_BASE_LEFT).degrees
    bis[br] = _back(_CANON_BASE_RIGHT).degrees
    bis[pk] = _back(_CANON_PEAK).degrees
    wedges = tuple(Wedge(points[i], Direction(bis[i]), 120.0) for i in range(3))

    if check:
        ok = (
            _dir_in_half_aperture(dirs[bl][pk], bis[bl], 60.0)
            and _dir_in_half_aperture(dirs[pk][bl], bis[pk], 60.0)
            and _dir_in_half_aperture(dirs[bl][br], bis[bl], 60.0)
            and _dir_in_half_aperture(dirs[br][bl], bis[br], 60.0)
        )
        assert ok, f"triplet gadget lost a guaranteed edge on {points}"
        assert intervals_cover_circle(w.direction_interval() for w in wedges)

    return TripletOrientation(
        base_left=bl,
        base_right=br,
        peak=pk,
        rotation_deg=theta,
        reflected=reflected,
        origin=points[bl],
        wedges=wedges,  # type: ignore[arg-type]
    )


def orient_pair(points: PointSet, aperture_deg: float) -> tuple[Wedge, Wedge]:
    """Two wedges whose bisectors face each other, guaranteeing the edge."""
    if len(points) != 2:
        raise ValueError(f"orient_pair requires exactly 2 points, got {len(points)}")
    p, q = points
    d = direction(p, q)
    return Wedge(p, d, aperture_deg), Wedge(q, d.opposite(), aperture_deg)


def _connected_on_four(edges: Sequence[tuple[int, int]]) -> bool:
    reach = 1  # bitmask over vertices 0..3, seeded with vertex 0
    changed = True
    while changed:
        changed = False
        for u, v in edges:
            bu, bv = 1 << u, 1 << v
            if (reach & bu) and not (reach & bv):
                reach |= bv
                changed = True
            elif (reach & bv) and not (reach & bu):
                reach |= bu
                changed = True
    return reach == 0b1111


def orient_quadruplet(points: PointSet) -> QuadrupletOrientation:
    """Orient 90-degree wedges on four points.

    Candidate bisector assignments are the four quadrant bisectors
    45/135/225/315 rotated by phi, with phi drawn from the directions of the
    six point pairs (mod 90) plus 0, assigned to the points in every
    permutation. Candidates with a connected induced graph are ranked by
    (most induced edges, smallest total edge length, enumeration order) and
    the first one passing the plane-coverage check wins.
    """
    if len(points) != 4:
        raise ValueError(f"orient_quadruplet requires exactly 4 points, got {len(points)}")
    check_distinct(points)
    dirs = [[0.0] * 4 for _ in range(4)]
    dists = [[0.0] * 4 for _ in range(4)]
    for i in range(4):
        for j in range(i + 1, 4):
            d = direction(points[i], points[j]).degrees
            dirs[i][j] = d
            dirs[j][i] = (d + 180.0) % 360.0
            dists[i][j] = dists[j][i] = points[i].distance_to(points[j])

    phis: list[float] = []
    for i in range(4):
        for j in range(i + 1, 4):
            cand = dirs[i][j] % 90.0
            if all(abs(cand - p) > ANGLE_TOL_DEG for p in phis):
                phis.append(cand)
    if all(abs(p) > ANGLE_TOL_DEG for p in phis):
        phis.append(0.0)

    scored: list[tuple[int, float, int, tuple[float, float, float, float]]] = []
    seq = 0
    for phi in phis:
        base = (45.0 + phi, 135.0 + phi, 225.0 + phi, 315.0 + phi)
        for perm in itertools.permutations(range(4)):
            bis = tuple(base[perm[i]] % 360.0 for i in range(4))
            edges = []
            total = 0.0
            for i in range(4):
                for j in range(i + 1, 4):
                    if _dir_in_half_aperture(dirs[i][j], bis[i], 45.0) and _dir_in_half_aperture(
                        dirs[j][i], bis[j], 45.0
                    ):
                        edges.append((i, j))
                        total += dists[i][j]
            if edges and _connected_on_four(edges):
                scored.append((-len(edges), total, seq, bis))
            seq += 1

    if not scored:
        raise GadgetSearchFailed(f"no connected wedge assignment found for {points}")

    scored.sort()
    for _, _, _, bis in scored:
        wedges = tuple(Wedge(points[i], Direction(bis[i]), 90.0) for i in range(4))
        if verify_coverage(wedges, _COVERAGE_BOUND):
            return QuadrupletOrientation(wedges=wedges, verified=True)  # type: ignore[arg-type]
    raise GadgetSearchFailed(f"no covering wedge assignment found for {points}")


_unit_disk_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}
_halton_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _unit_disk_samples(count: int) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic low-discrepancy points in the unit disk (sunflower spiral)."""
    cached = _unit_disk_cache.get(count)
    if cached is None:
        i = np.arange(count)
        r = np.sqrt((i + 0.5) / count)
        th = i * (math.pi * (3.0 - math.sqrt(5.0)))
        cached = (r * np.cos(th), r * np.sin(th))
        _unit_disk_cache[count] = cached
    return cached


def _radical_inverse(indices: np.ndarray, base: int) -> np.ndarray:
    result = np.zeros(len(indices), dtype=float)
    frac = 1.0 / base
    idx = indices.copy()
    while idx.max() > 0:
        result += (idx % base) * frac
        idx //= base
        frac /= base
    return result


def _halton_samples(count: int) -> tuple[np.ndarray, np.ndarray]:
    cached = _halton_cache.get(count)
    if cached is None:
        idx = np.arange(1, count + 1)
        cached = (_radical_inverse(idx, 2), _radical_inverse(idx, 3))
        _halton_cache[count] = cached
    return cached


def _points_covered(wedges: Sequence[Wedge], xs: np.ndarray, ys: np.ndarray) -> bool:
    inside = np.zeros(len(xs), dtype=bool)
    for w in wedges:
        todo = ~inside
        if not todo.any():
            return True
        dx = xs[todo] - w.apex.x
        dy = ys[todo] - w.apex.y
        ang = np.degrees(np.arctan2(dy, dx))
        delta = (ang - w.bisector.degrees + 180.0) % 360.0 - 180.0
        hit = np.abs(delta) <= w.aperture_deg / 2.0 + ANGLE_TOL_DEG
        hit |= (dx * dx + dy * dy) == 0.0
        inside[todo] = hit
    return bool(inside.all())


def verify_coverage(
    wedges: Sequence[Wedge], bound: float = _COVERAGE_BOUND, samples: int = _COVERAGE_SAMPLES
) -> bool:
    """Check that the union of unbounded wedges covers the plane.

    Two parts: (a) the wedge direction intervals must cover [0, 360)
    exactly, which settles coverage at infinity; (b) ``samples``
    deterministic low-discrepancy points in the disk of radius
    ``bound`` times the apex diameter, centered at the apex centroid,
    must each fall inside some wedge. Wedges must have no range limit.
    """
    wedges = list(wedges)
    if not wedges:
        return False
    if any(w.radius is not None for w in wedges):
        raise ValueError("coverage verification applies to unbounded wedges only")
    if not intervals_cover_circle(w.direction_interval() for w in wedges):
        return False
    apexes = [w.apex for w in wedges]
    cx = sum(p.x for p in apexes) / len(apexes)
    cy = sum(p.y for p in apexes) / len(apexes)
    diameter = max(
        (a.distance_to(b) for a, b in itertools.combinations(apexes, 2)),
        default=0.0,
    )
    radius = bound * diameter if diameter > 0.0 else bound
    ux, uy = _unit_disk_samples(samples)
    return _points_covered(wedges, cx + radius * ux, cy + radius * uy)


def matched_ray_direction(w1: Wedge, w2: Wedge) -> Direction | None:
    """The shared bounding-ray direction of two gadget wedges, if any.

    In a triplet gadget exactly one direction occurs as a left ray of one
    wedge and a right ray of the other.
    """
    for cand, other in ((w1.left_ray, w2.right_ray), (w1.right_ray, w2.left_ray)):
        if abs((cand.degrees - other.degrees + 180.0) % 360.0 - 180.0) <= ANGLE_TOL_DEG:
            return cand
    return None


def pair_halfplane_covered(
    w1: Wedge,
    w2: Wedge,
    *,
    reach_factor: float = 1000.0,
    samples: int = _COVERAGE_SAMPLES,
) -> bool:
    """Sampled check that two wedges with a shared ray direction cover the
    halfplane beyond any line perpendicular to that direction crossing both
    rays (on the side away from the apexes)."""
    shared = matched_ray_direction(w1, w2)
    if shared is None:
        return False
    rad = math.radians(shared.degrees)
    ex, ey = math.cos(rad), math.sin(rad)
    t1 = w1.apex.x * ex + w1.apex.y * ey
    t2 = w2.apex.x * ex + w2.apex.y * ey
    t_line = max(t1, t2)
    diameter = max(w1.apex.distance_to(w2.apex), 1.0)
    reach = reach_factor * diameter
    h1, h2 = _halton_samples(samples)
    t = t_line + h1 * reach
    s = (h2 * 2.0 - 1.0) * reach
    xs = t * ex - s * ey
    ys = t * ey + s * ex
    return _points_covered((w1, w2), xs, ys)
