"""Shared helpers: random problem instances and a small reusable species suite."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from reserveplan import ReserveProblem, build_species_suite


def random_problem(
    rng: np.random.Generator,
    *,
    max_parcels: int = 16,
    max_species: int = 3,
    max_cost: int = 10,
    max_value: int = 50,
    unit_costs: bool = False,
    parcels: int | None = None,
) -> ReserveProblem:
    """A random selection instance with rational weights and integer data."""
    p = parcels if parcels is not None else int(rng.integers(1, max_parcels + 1))
    s = int(rng.integers(1, max_species + 1))
    values = rng.integers(0, max_value + 1, size=(s, p))
    if unit_costs:
        costs = np.ones(p, dtype=np.int64)
    else:
        costs = rng.integers(0, max_cost + 1, size=p)
    weights = tuple(
        Fraction(int(rng.integers(0, 11)), int(rng.integers(1, 11))) for _ in range(s)
    )
    if all(w == 0 for w in weights):
        weights = (Fraction(1),) + weights[1:]
    budget = int(rng.integers(0, int(costs.sum()) + 6))
    return ReserveProblem(values=values, weights=weights, costs=costs, budget=budget)


@pytest.fixture(scope="session")
def small_suite():
    """Eight species on a 10x10 grid from a small landscape pool (fast)."""
    return build_species_suite(seed=11, pool_size=60, grid=10)
