"""Seeded sample generation for the verifiers.

All randomness flows through numpy Generators created by :func:`seeded_rng`;
the default seed (42) keeps reports reproducible run to run. Mesh samplers
are deterministic by construction.
"""

from __future__ import annotations

import numpy as np

DEFAULT_SEED = 42


def seeded_rng(seed: int = DEFAULT_SEED) -> np.random.Generator:
    return np.random.default_rng(int(seed))


def mesh_pairs(low: float, high: float, per_axis: int) -> list[tuple[float, float]]:
    """All pairs from a uniform mesh with ``per_axis`` points per coordinate,
    endpoints included."""
    axis = np.linspace(low, high, per_axis)
    return [(float(x), float(y)) for x in axis for y in axis]


def random_pairs(rng: np.random.Generator, count: int,
                 low: float, high: float) -> list[tuple[float, float]]:
    block = rng.uniform(low, high, size=(count, 2))
    return [(float(a), float(b)) for a, b in block]


def random_triples(rng: np.random.Generator, count: int,
                   low: float, high: float) -> list[tuple[float, float, float]]:
    block = rng.uniform(low, high, size=(count, 3))
    return [(float(a), float(b), float(c)) for a, b, c in block]


def positive_mesh_pairs(per_axis: int = 100, low: float = 1e-2,
                        high: float = 10.0) -> list[tuple[float, float]]:
    """Strictly positive mesh pairs; ``low`` stays well above the strictness
    epsilon so margins of legitimate strict inequalities remain resolvable."""
    if low <= 0:
        raise ValueError("low must be strictly positive")
    return mesh_pairs(low, high, per_axis)


def random_positive_pairs(rng: np.random.Generator, count: int,
                          low: float = 1e-3, high: float = 10.0) -> list[tuple[float, float]]:
    if low <= 0:
        raise ValueError("low must be strictly positive")
    return random_pairs(rng, count, low, high)


def random_grid_pairs(rng: np.random.Generator, count: int, n: int,
                      low: float = 0.0, high: float = 1.0) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairs of grid functions with independent uniform node values."""
    block = rng.uniform(low, high, size=(count, 2, n + 1))
    return [(np.array(row[0]), np.array(row[1])) for row in block]


def probe_pair(limit: float, length: int = 200, t_offset: float = 1.0,
               s_offset: float = 1.0, start: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Paired sequences ``limit + offset / k`` sharing the limit ``limit``.

    Zero offsets give constant sequences. Negative offsets approach from
    below; pick ``start`` large enough to keep every term positive.
    """
    k = np.arange(start, start + length, dtype=float)
    return limit + t_offset / k, limit + s_offset / k
