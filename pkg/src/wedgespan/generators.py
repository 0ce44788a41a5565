"""Deterministic instance generators for the CLI and the test suites.

All randomness comes from numpy's PCG64 bit generator seeded with the given
64-bit seed, so a (generator, seed) pair always produces identical bytes.
"""

from __future__ import annotations

import math
from typing import Callable

import numpy as np

from .errors import UnknownGeneratorError
from .geom import Point
from .oracle import hex_grid_of_cells, square_grid_graph, square_grid_reduction


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _distinct(points: list[Point]) -> bool:
    return len({(p.x, p.y) for p in points}) == len(points)


def uniform_square(n: int, side: float = 1.0, seed: int = 0) -> list[Point]:
    """n points i.i.d. uniform in the side x side square."""
    rng = _rng(seed)
    while True:
        coords = rng.uniform(0.0, side, size=(n, 2))
        points = [Point(float(x), float(y)) for x, y in coords]
        if _distinct(points):
            return points


def clustered(
    n: int, clusters: int = 3, spread: float = 0.05, side: float = 1.0, seed: int = 0
) -> list[Point]:
    """n points in gaussian blobs around uniformly placed cluster centers."""
    rng = _rng(seed)
    while True:
        centers = rng.uniform(0.0, side, size=(clusters, 2))
        offsets = rng.normal(0.0, spread, size=(n, 2))
        points = [
            Point(
                float(centers[i % clusters][0] + offsets[i][0]),
                float(centers[i % clusters][1] + offsets[i][1]),
            )
            for i in range(n)
        ]
        if _distinct(points):
            return points


def collinear(n: int, gap: float = 1.0) -> list[Point]:
    """n equally spaced points on the x axis."""
    return [Point(i * gap, 0.0) for i in range(n)]


def equilateral(side: float = 1.0) -> list[Point]:
    return [
        Point(0.0, 0.0),
        Point(side, 0.0),
        Point(side / 2.0, side * math.sqrt(3.0) / 2.0),
    ]


def equilateral_with_center(side: float = 1.0) -> list[Point]:
    """Equilateral triangle corners plus the center of their circumscribed circle."""
    return equilateral(side) + [Point(side / 2.0, side * math.sqrt(3.0) / 6.0)]


def square_grid_reduction_points(width: int = 2, height: int = 3) -> list[Point]:
    """Points of the square-grid hardness reduction on a degree-<=3 grid.

    Ladder grids (min dimension <= 2) are used as-is; wider grids are carved
    into a comb (full bottom row plus teeth on even columns) to respect the
    maximum-degree-3 requirement.
    """
    if width < 1 or height < 1:
        raise ValueError("grid dimensions must be positive")
    if min(width, height) <= 2:
        coords = [(x, y) for y in range(height) for x in range(width)]
    else:
        coords = [(x, 0) for x in range(width)]
        coords += [(x, y) for x in range(0, width, 2) for y in range(1, height)]
    instance = square_grid_reduction(square_grid_graph(coords))
    return list(instance.points)


def hex_grid_points(rows: int = 1) -> list[Point]:
    """Vertices of a vertical column of unit hexagons (6 + 4*(rows-1) points)."""
    if rows < 1:
        raise ValueError("rows must be positive")
    return list(hex_grid_of_cells([(0, r) for r in range(rows)]).vertices)


_GENERATORS: dict[str, Callable[..., list[Point]]] = {
    "uniform-square": uniform_square,
    "clustered": clustered,
    "collinear": collinear,
    "equilateral": equilateral,
    "equilateral-center": equilateral_with_center,
    "square-grid-reduction": square_grid_reduction_points,
    "hex-grid": hex_grid_points,
}

GENERATOR_NAMES = tuple(sorted(_GENERATORS))


def generate(name: str, **params) -> list[Point]:
    """Dispatch to a named generator; unknown names raise UnknownGeneratorError."""
    fn = _GENERATORS.get(name)
    if fn is None:
        raise UnknownGeneratorError(
            f"unknown generator {name!r}; available: {', '.join(GENERATOR_NAMES)}"
        )
    return fn(**params)
