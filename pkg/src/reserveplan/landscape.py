"""Synthetic gridded landscapes: generation, fragmentation scoring, population placement.

A landscape is an n x n grid of habitat values in [0, 1], where a higher value
marks worse habitat. Individuals of a species are placed on a landscape by a
seeded multinomial draw whose per-parcel intensity is proportional to habitat
quality q = 1 - h.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = [
    "InvalidDimensionError",
    "InsufficientCandidatesError",
    "DegenerateIntensityError",
    "Landscape",
    "CountsGrid",
    "generate_landscape",
    "fragmentation",
    "select_extremes",
    "distribute_population",
]


class InvalidDimensionError(ValueError):
    """Grid side length is not positive, or an array has the wrong shape."""


class InsufficientCandidatesError(ValueError):
    """Landscape pool is too small for the requested selection."""


class DegenerateIntensityError(ValueError):
    """Individuals were requested but every parcel has zero habitat quality."""


@dataclass(frozen=True, eq=False)
class Landscape:
    """Square grid of per-parcel habitat values in [0, 1] (higher = worse).

    ``seed`` and ``smoothing_rounds`` record how the grid was generated; they
    are absent (None) on landscapes loaded from files.
    """

    n: int
    values: np.ndarray
    seed: int | None = None
    smoothing_rounds: int | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidDimensionError(f"grid side length must be >= 1, got {self.n}")
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != (self.n, self.n):
            raise InvalidDimensionError(
                f"expected a {self.n}x{self.n} value grid, got shape {values.shape}"
            )
        if np.any(values < 0.0) or np.any(values > 1.0):
            raise ValueError("habitat values must lie in [0, 1]")
        object.__setattr__(self, "values", values)

    @property
    def parcel_count(self) -> int:
        return self.n * self.n


@dataclass(frozen=True, eq=False)
class CountsGrid:
    """Per-species, per-parcel nonnegative integer counts on an n x n grid."""

    n: int
    counts: np.ndarray  # shape (species, n, n)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidDimensionError(f"grid side length must be >= 1, got {self.n}")
        counts = np.asarray(self.counts)
        if counts.ndim != 3 or counts.shape[1:] != (self.n, self.n):
            raise InvalidDimensionError(
                f"expected counts of shape (species, {self.n}, {self.n}), got {counts.shape}"
            )
        if not np.issubdtype(counts.dtype, np.integer):
            rounded = np.rint(counts)
            if not np.array_equal(rounded, counts):
                raise ValueError("counts must be whole numbers")
            counts = rounded
        counts = counts.astype(np.int64)
        if np.any(counts < 0):
            raise ValueError("counts must be nonnegative")
        object.__setattr__(self, "counts", counts)

    @property
    def species_count(self) -> int:
        return int(self.counts.shape[0])

    @property
    def parcel_count(self) -> int:
        return self.n * self.n

    def matrix(self) -> np.ndarray:
        """Counts flattened to (species, parcels) with parcels in row-major order."""
        return self.counts.reshape(self.species_count, -1)

    def totals(self) -> np.ndarray:
        """Total population of each species across all parcels."""
        return self.matrix().sum(axis=1)

    @classmethod
    def stack(cls, grids: Sequence["CountsGrid"]) -> "CountsGrid":
        """Combine single- or multi-species grids of equal size into one grid."""
        if not grids:
            raise ValueError("need at least one grid to stack")
        n = grids[0].n
        if any(g.n != n for g in grids):
            raise InvalidDimensionError("all stacked grids must share the same side length")
        return cls(n=n, counts=np.concatenate([g.counts for g in grids], axis=0))


def generate_landscape(n: int, smoothing_rounds: int, seed: int) -> Landscape:
    """Generate a seeded random landscape with a controllable fragmentation level.

    Parcel values start as independent uniforms on [0, 1]; each smoothing round
    replaces every parcel with the mean of itself and its in-grid orthogonal
    neighbours, and the grid is finally rescaled to span [0, 1] (skipped when
    constant). More smoothing rounds yield smoother, less fragmented grids.
    The output is a deterministic function of (n, smoothing_rounds, seed).
    """
    if n < 1:
        raise InvalidDimensionError(f"grid side length must be >= 1, got {n}")
    if smoothing_rounds < 0:
        raise ValueError(f"smoothing_rounds must be >= 0, got {smoothing_rounds}")
    rng = np.random.default_rng(seed)
    h = rng.random((n, n))
    for _ in range(smoothing_rounds):
        h = _neighbor_mean(h)
    h = _rescale_unit(h)
    return Landscape(n=n, values=h, seed=seed, smoothing_rounds=smoothing_rounds)


def _neighbor_mean(h: np.ndarray) -> np.ndarray:
    """One smoothing pass: mean of each cell and its in-grid orthogonal neighbours."""
    total = h.copy()
    count = np.ones_like(h)
    total[1:, :] += h[:-1, :]
    count[1:, :] += 1.0
    total[:-1, :] += h[1:, :]
    count[:-1, :] += 1.0
    total[:, 1:] += h[:, :-1]
    count[:, 1:] += 1.0
    total[:, :-1] += h[:, 1:]
    count[:, :-1] += 1.0
    return total / count


def _rescale_unit(h: np.ndarray) -> np.ndarray:
    """Affinely rescale a grid to span [0, 1]; constant grids pass through."""
    lo = float(h.min())
    hi = float(h.max())
    if hi == lo:
        return h
    return (h - lo) / (hi - lo)


def fragmentation(landscape: Landscape) -> float:
    """Mean absolute value difference over all orthogonally adjacent parcel pairs.

    0 for a constant grid, 1 for a maximal-contrast checkerboard; 0 for a
    single parcel, which has no adjacent pairs.
    """
    if landscape.n == 1:
        return 0.0
    h = landscape.values
    down = np.abs(np.diff(h, axis=0))
    right = np.abs(np.diff(h, axis=1))
    return float((down.sum() + right.sum()) / (down.size + right.size))


def select_extremes(
    landscapes: Sequence[Landscape], k: int
) -> tuple[list[Landscape], list[Landscape]]:
    """Pick the k most and k least fragmented landscapes from a pool.

    Returns (most, least), each ordered from the more extreme to the less
    extreme entry, so most[0] has the highest score and least[0] the lowest.
    Ties are broken by input position (earlier wins the more extreme slot);
    the two groups are always disjoint.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if len(landscapes) < 2 * k:
        raise InsufficientCandidatesError(
            f"need at least {2 * k} landscapes to pick {k} of each extreme, got {len(landscapes)}"
        )
    scores = [fragmentation(l) for l in landscapes]
    order = sorted(range(len(landscapes)), key=lambda i: (-scores[i], i))
    most = [landscapes[i] for i in order[:k]]
    least = [landscapes[i] for i in reversed(order[-k:])]
    return most, least


def distribute_population(landscape: Landscape, total: int, seed: int) -> CountsGrid:
    """Place ``total`` individuals on a landscape by a seeded multinomial draw.

    Per-parcel probabilities are proportional to habitat quality q = 1 - h, so
    the placement intensity decreases on worse habitat. The returned counts sum
    to ``total`` exactly and are a deterministic function of the seed.
    """
    if total < 0:
        raise ValueError(f"total population must be >= 0, got {total}")
    n = landscape.n
    if total == 0:
        return CountsGrid(n=n, counts=np.zeros((1, n, n), dtype=np.int64))
    quality = 1.0 - landscape.values
    mass = quality.sum()
    if mass <= 0.0:
        raise DegenerateIntensityError(
            "cannot place individuals: every parcel has habitat quality 0"
        )
    probs = (quality / mass).ravel()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(total, probs).reshape(n, n)
    return CountsGrid(n=n, counts=counts[np.newaxis, :, :])
