"""Named example subspaces and a seeded random-matrix generator."""

from __future__ import annotations

import random
from fractions import Fraction

from .matroid import Matroid, from_matrix

MATRICES: dict[str, list[list]] = {
    "u23": [[1, 0, 1], [0, 1, 1]],
    "u24": [[1, 0, 1, 1], [0, 1, 1, 2]],
    "u35": [[1, 0, 0, 1, 1], [0, 1, 0, 1, 2], [0, 0, 1, 1, 3]],
    "k4": [[1, 0, 0, 1, 1, 0], [0, 1, 0, -1, 0, 1], [0, 0, 1, 0, -1, -1]],
    "loop": [[1, 0]],
    "parallel": [[1, 1]],
    "boolean3": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    # coloop 1 next to a parallel pair and a triangle
    "mixed": [[1, 0, 0, 0, 0], [0, 1, 1, 0, 1], [0, 0, 0, 1, 1]],
}


def fixture(name: str) -> Matroid:
    return from_matrix(MATRICES[name], name)


def random_matrix(rng: random.Random, max_d: int = 3, max_n: int = 7, bound: int = 5) -> list[list[Fraction]]:
    """d x n matrix, 1 <= d <= max_d, 1 <= n <= max_n, entries p/q in [-bound, bound]."""
    d = rng.randint(1, max_d)
    n = rng.randint(1, max_n)
    return [
        [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(n)]
        for _ in range(d)
    ]


def random_matroids(seed: int, count: int, **kwargs) -> list[Matroid]:
    rng = random.Random(seed)
    return [from_matrix(random_matrix(rng, **kwargs), f"random-{seed}-{k}") for k in range(count)]
