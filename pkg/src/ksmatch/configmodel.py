"""Degree sequences in {3,4} and uniform configuration-pairing sampling.

A configuration assigns each vertex v a set of d(v) points, draws a uniform
perfect pairing of all points, and maps point pairs to vertex pairs. Loops
are removed by whole-configuration rejection, which keeps the distribution
exactly uniform over loop-free configurations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def validate(d) -> None:
    """Accept a degree sequence iff every entry is 3 or 4 and the sum is even."""
    total = 0
    for i, di in enumerate(d):
        if di not in (3, 4):
            raise ValueError(f"degree d({i})={di} outside {{3,4}}")
        total += di
    if total % 2:
        raise ValueError(f"degree sum {total} is odd")


def degree_sequence(n: int, deg4_frac: float) -> tuple[list[int], bool]:
    """Build n degrees with floor(deg4_frac*n) fours, threes elsewhere.

    If the sum comes out odd, one vertex is flipped to fix parity; the
    second return value reports whether that adjustment happened.
    """
    if n <= 0:
        raise ValueError("need at least one vertex")
    if not 0.0 <= deg4_frac <= 1.0:
        raise ValueError("deg4_frac must lie in [0,1]")
    n4 = int(deg4_frac * n)
    adjusted = False
    if (3 * n + n4) % 2:
        n4 = n4 + 1 if n4 < n else n4 - 1
        adjusted = True
    d = [4] * n4 + [3] * (n - n4)
    validate(d)
    return d, adjusted


@dataclass
class PairingSample:
    """One loop-free configuration draw: vertex pairs plus retry count."""

    pairs: list[tuple[int, int]]
    retries: int


def pair_points(num_points: int, rng) -> tuple[tuple[int, int], ...]:
    """One unconditioned uniform pairing of point indices, canonical form.

    Shuffles the points and pairs consecutive items, the same scheme
    `sample_no_loops` uses at the vertex level.
    """
    if num_points % 2:
        raise ValueError("point count must be even")
    perm = rng.permutation(num_points)
    pairs = []
    for j in range(0, num_points, 2):
        a, b = int(perm[j]), int(perm[j + 1])
        pairs.append((a, b) if a < b else (b, a))
    return tuple(sorted(pairs))


def sample_no_loops(d, rng, max_retries: int = 1000,
                    simple: bool = False) -> PairingSample:
    """Uniform pairing of the configuration points, rejected until loop-free.

    Parameters
    ----------
    d : sequence of int
        Validated degree sequence; vertex v owns d[v] points.
    rng : numpy.random.Generator
        Source of permutations.
    max_retries : int
        Additional draws allowed after the first; exhausting them raises.
    simple : bool
        Also reject configurations with parallel edges. No uniformity or
        termination guarantee is made beyond what rejection provides.
    """
    validate(d)
    n = len(d)
    pts = np.repeat(np.arange(n, dtype=np.int64), d)
    for attempt in range(max_retries + 1):
        perm = rng.permutation(pts)
        a = perm[0::2]
        b = perm[1::2]
        if np.any(a == b):
            continue
        if simple:
            lo = np.minimum(a, b)
            hi = np.maximum(a, b)
            keys = lo * n + hi
            if len(np.unique(keys)) < len(keys):
                continue
        pairs = list(zip(a.tolist(), b.tolist()))
        return PairingSample(pairs=pairs, retries=attempt)
    raise RuntimeError(
        f"no loop-free pairing found in {max_retries + 1} draws")


def count_pairings(r: int) -> int:
    """Number of perfect pairings of 2r items: (2r-1)!! exactly."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    return math.prod(range(1, 2 * r, 2))


def read_degree_file(path) -> list[int]:
    """One integer per line."""
    with open(path) as fh:
        return [int(line) for line in fh if line.strip()]


def write_degree_file(path, d) -> None:
    with open(path, "w") as fh:
        for di in d:
            fh.write(f"{di}\n")
