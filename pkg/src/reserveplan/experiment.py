"""Species suites, scenarios, budget sweeps, and similarity statistics.

The default suite places eight species on the extremes of a large random
landscape pool: the two most and two least fragmented landscapes each carry
one species of population 100 and one of 250. Scenarios group species into
reserves and sweep the budget, solving the selection problem once on observed
counts and once on projected counts, then counting how many parcels receive
the same protection decision.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from statistics import fmean, median
from typing import Callable, Sequence

import numpy as np

from .dynamics import LVParams, default_params, round_counts, simulate
from .landscape import (
    CountsGrid,
    Landscape,
    distribute_population,
    generate_landscape,
    select_extremes,
)
from .solver import ReserveProblem, ReserveSolution, solve

__all__ = [
    "SpeciesSpec",
    "Scenario",
    "SweepRow",
    "SimilarityStats",
    "SUITE_LAYOUT",
    "CASE_GROUPS",
    "DEFAULT_BUDGETS",
    "MAX_SMOOTHING_ROUNDS",
    "build_species_suite",
    "default_scenarios",
    "similarity",
    "budget_sweep",
    "summarize",
    "summarize_similarities",
    "weighted_comparison",
]

#: (label, fragmentation rank, total population) for the default 8-species suite.
SUITE_LAYOUT: tuple[tuple[str, str, int], ...] = (
    ("S0", "highest", 100),
    ("S1", "2nd highest", 100),
    ("S2", "highest", 250),
    ("S3", "2nd highest", 250),
    ("S4", "lowest", 100),
    ("S5", "2nd lowest", 100),
    ("S6", "lowest", 250),
    ("S7", "2nd lowest", 250),
)

#: Suite indices for the four 2-species and two 5-species reserve cases.
CASE_GROUPS: tuple[tuple[int, ...], ...] = (
    (0, 1),
    (2, 3),
    (4, 5),
    (6, 7),
    (0, 1, 2, 3, 4),
    (5, 6, 7, 0, 1),
)

DEFAULT_BUDGETS: tuple[int, ...] = tuple(range(0, 101, 5))

#: Smoothing rounds are drawn uniformly from {0, ..., MAX_SMOOTHING_ROUNDS}.
MAX_SMOOTHING_ROUNDS = 8


@dataclass(frozen=True, eq=False)
class SpeciesSpec:
    """One species: its label, landscape assignment, and observed counts."""

    label: str
    fragmentation_rank: str
    total: int
    landscape: Landscape
    counts: CountsGrid

    def __post_init__(self) -> None:
        if self.counts.species_count != 1:
            raise ValueError("a species spec holds a single-species counts grid")
        placed = int(self.counts.totals()[0])
        if placed != self.total:
            raise ValueError(f"counts sum to {placed}, expected total {self.total}")


@dataclass(frozen=True, eq=False)
class Scenario:
    """An ordered species group with weights, budgets, costs, and dynamics parameters."""

    species: tuple[SpeciesSpec, ...]
    weights: tuple[Fraction, ...]
    budgets: tuple[int, ...]
    costs: np.ndarray
    lv_params: LVParams
    seed: int | None = None

    def __post_init__(self) -> None:
        species = tuple(self.species)
        if not species:
            raise ValueError("scenario needs at least one species")
        n = species[0].counts.n
        if any(sp.counts.n != n for sp in species):
            raise ValueError("all species in a scenario must share the same grid size")
        weights = tuple(Fraction(w) for w in self.weights)
        if len(weights) != len(species):
            raise ValueError(f"{len(weights)} weights for {len(species)} species")
        budgets = tuple(int(b) for b in self.budgets)
        if list(budgets) != sorted(set(budgets)):
            raise ValueError("budgets must be strictly ascending and unique")
        costs = np.asarray(self.costs)
        if costs.shape != (n * n,):
            raise ValueError(f"expected {n * n} parcel costs, got shape {costs.shape}")
        if self.lv_params.species_count != len(species):
            raise ValueError(
                f"dynamics parameters cover {self.lv_params.species_count} species, "
                f"scenario has {len(species)}"
            )
        object.__setattr__(self, "species", species)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "budgets", budgets)
        object.__setattr__(self, "costs", costs)

    @property
    def parcel_count(self) -> int:
        return self.species[0].counts.parcel_count

    def observed(self) -> CountsGrid:
        """Observed counts of the scenario's species, stacked in order."""
        return CountsGrid.stack([sp.counts for sp in self.species])


@dataclass(frozen=True, eq=False)
class SweepRow:
    """Solutions of both models at one budget and their protection-status agreement."""

    budget: int
    similarity: int
    objective_1: Fraction
    objective_2: Fraction
    x_1: np.ndarray
    x_2: np.ndarray


@dataclass(frozen=True)
class SimilarityStats:
    """Min/mean/median parcel agreement over the interior budgets of a sweep."""

    min: int
    mean: float
    median: float


def build_species_suite(
    seed: int, pool_size: int = 10_000, grid: int = 10
) -> list[SpeciesSpec]:
    """Generate a landscape pool, pick its fragmentation extremes, and place species.

    Pool landscape i uses seed ``seed + i`` with smoothing rounds drawn
    uniformly from {0, ..., 8}; species j is placed with seed
    ``seed + pool_size + j``. The result is deterministic in ``seed``.
    """
    if pool_size < 4:
        raise ValueError(f"pool_size must be >= 4 to pick two extremes each way, got {pool_size}")
    rng = np.random.default_rng(seed)
    rounds = rng.integers(0, MAX_SMOOTHING_ROUNDS + 1, size=pool_size)
    pool = [
        generate_landscape(grid, int(rounds[i]), seed + i) for i in range(pool_size)
    ]
    most, least = select_extremes(pool, k=2)
    by_rank = {
        "highest": most[0],
        "2nd highest": most[1],
        "lowest": least[0],
        "2nd lowest": least[1],
    }
    suite = []
    for j, (label, rank, total) in enumerate(SUITE_LAYOUT):
        landscape = by_rank[rank]
        counts = distribute_population(landscape, total, seed + pool_size + j)
        suite.append(
            SpeciesSpec(
                label=label,
                fragmentation_rank=rank,
                total=total,
                landscape=landscape,
                counts=counts,
            )
        )
    return suite


def default_scenarios(
    suite: Sequence[SpeciesSpec],
    *,
    seed: int | None = None,
    budgets: Sequence[int] = DEFAULT_BUDGETS,
    params_factory: Callable[[int], LVParams] | None = None,
) -> list[Scenario]:
    """The six standard reserve cases over an 8-species suite, equal weights, unit costs.

    ``params_factory`` maps a species count to dynamics parameters (cases mix
    2- and 5-species reserves); the default builds the uniform defaults.
    """
    if len(suite) != len(SUITE_LAYOUT):
        raise ValueError(f"expected a suite of {len(SUITE_LAYOUT)} species, got {len(suite)}")
    parcels = suite[0].counts.parcel_count
    build_params = params_factory if params_factory is not None else default_params
    scenarios = []
    for group in CASE_GROUPS:
        species = tuple(suite[i] for i in group)
        params = build_params(len(group))
        scenarios.append(
            Scenario(
                species=species,
                weights=tuple(Fraction(1) for _ in group),
                budgets=tuple(budgets),
                costs=np.ones(parcels, dtype=np.int64),
                lv_params=params,
                seed=seed,
            )
        )
    return scenarios


def similarity(a: ReserveSolution, b: ReserveSolution) -> int:
    """Number of parcels that receive the same protection decision in both solutions."""
    if a.parcel_count != b.parcel_count:
        raise ValueError(
            f"solutions cover {a.parcel_count} and {b.parcel_count} parcels"
        )
    return int(np.sum(a.x == b.x))


def budget_sweep(scenario: Scenario) -> list[SweepRow]:
    """Solve both models at every budget of a scenario.

    The projection is budget-independent, so it runs once per scenario; each
    budget then solves the observed-counts problem and the projected-counts
    problem and records their agreement.
    """
    observed = scenario.observed()
    projected = round_counts(simulate(observed, scenario.lv_params))
    observed_values = observed.matrix()
    projected_values = projected.matrix()
    rows = []
    for budget in scenario.budgets:
        sol_1 = solve(
            ReserveProblem(
                values=observed_values,
                weights=scenario.weights,
                costs=scenario.costs,
                budget=budget,
            )
        )
        sol_2 = solve(
            ReserveProblem(
                values=projected_values,
                weights=scenario.weights,
                costs=scenario.costs,
                budget=budget,
            )
        )
        rows.append(
            SweepRow(
                budget=budget,
                similarity=similarity(sol_1, sol_2),
                objective_1=sol_1.objective,
                objective_2=sol_2.objective,
                x_1=sol_1.x,
                x_2=sol_2.x,
            )
        )
    return rows


def summarize_similarities(
    budgets: Sequence[int], similarities: Sequence[int]
) -> SimilarityStats:
    """Similarity statistics over interior budgets of aligned (budget, similarity) pairs."""
    if len(budgets) != len(similarities):
        raise ValueError(f"{len(budgets)} budgets for {len(similarities)} similarities")
    order = sorted(range(len(budgets)), key=lambda i: budgets[i])
    interior = order[1:-1]
    if not interior:
        raise ValueError("need at least one interior budget row to summarize")
    sims = [similarities[i] for i in interior]
    return SimilarityStats(min=min(sims), mean=fmean(sims), median=float(median(sims)))


def summarize(rows: Sequence[SweepRow]) -> SimilarityStats:
    """Similarity statistics over a sweep's interior budgets.

    The rows at the lowest and highest budget are excluded: there the solution
    is to protect nothing or everything, which both models always share. The
    median of an even count is the mean of the two middle values.
    """
    return summarize_similarities(
        [r.budget for r in rows], [r.similarity for r in rows]
    )


def weighted_comparison(
    scenario: Scenario, weight_sets: Sequence[Sequence]
) -> list[tuple[tuple[Fraction, ...], list[SweepRow]]]:
    """Run the same sweep once per weight set on otherwise identical inputs."""
    results = []
    for raw in weight_sets:
        weights = tuple(Fraction(w) for w in raw)
        if len(weights) != len(scenario.species):
            raise ValueError(
                f"weight set of length {len(weights)} for {len(scenario.species)} species"
            )
        variant = dataclasses.replace(scenario, weights=weights)
        results.append((weights, budget_sweep(variant)))
    return results
