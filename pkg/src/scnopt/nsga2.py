"""Elitist non-dominated sorting genetic algorithm for constrained bi/multi-objective
minimization over real-coded genotypes in the unit box [0, 1]^L.

The engine is problem-agnostic: anything exposing ``genotype_length`` and
``evaluate(genotype) -> (objectives, violation)`` can be plugged in.  All
randomness flows through a single seeded generator consumed only by
initialization, selection, and variation; evaluation is pure, so it may run
concurrently without perturbing results.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Protocol, Sequence

import numpy as np

__all__ = [
    "EvaluationError",
    "Individual",
    "EngineConfig",
    "FrontPartition",
    "ParetoArchive",
    "GenerationRecord",
    "EvolutionResult",
    "Problem",
    "dominates",
    "constrained_dominates",
    "fast_nondominated_sort",
    "crowding_distance",
    "crowded_compare",
    "binary_tournament_select",
    "sbx_crossover",
    "polynomial_mutation",
    "environmental_select",
    "assign_ranks_and_crowding",
    "update_archive",
    "evolve",
]


class EvaluationError(RuntimeError):
    """An evaluator returned a malformed result (non-finite or wrong shape)."""


class Problem(Protocol):
    """Minimal evaluator interface the engine optimizes against."""

    genotype_length: int

    def evaluate(self, genotype: np.ndarray) -> tuple[np.ndarray, float]:
        """Return ``(objectives, violation)`` for one genotype.

        Objectives are minimized component-wise; ``violation`` is a
        nonnegative scalar, zero meaning feasible.
        """
        ...


@dataclass(eq=False)
class Individual:
    """One candidate solution: genotype plus (optional) evaluation results.

    ``rank`` and ``crowding`` are populated by the sorting/selection machinery
    and stay ``None`` until then.
    """

    genotype: np.ndarray
    objectives: np.ndarray | None = None
    violation: float = 0.0
    rank: int | None = None
    crowding: float | None = None

    def __post_init__(self) -> None:
        self.genotype = np.asarray(self.genotype, dtype=float)
        if self.genotype.ndim != 1:
            raise ValueError("genotype must be a one-dimensional vector")
        if np.any(self.genotype < 0.0) or np.any(self.genotype > 1.0):
            raise ValueError("genotype coordinates must lie in [0, 1]")
        if self.objectives is not None:
            self.objectives = np.asarray(self.objectives, dtype=float)
        if self.violation < 0.0:
            raise ValueError("constraint violation must be nonnegative")

    @property
    def evaluated(self) -> bool:
        return self.objectives is not None

    @property
    def feasible(self) -> bool:
        return self.violation == 0.0


@dataclass
class EngineConfig:
    """Run parameters for :func:`evolve`.

    ``population_size`` must be even (pairwise variation) and at least 4.
    ``eval_workers`` > 1 evaluates each batch in a thread pool; results are
    written back by index, so the run stays deterministic.
    """

    population_size: int = 100
    generations: int = 200
    crossover_prob: float = 0.6
    mutation_prob: float = 0.01
    sbx_eta: float = 15.0
    pm_eta: float = 20.0
    seed: int = 42
    eval_workers: int = 1

    def __post_init__(self) -> None:
        if self.population_size < 4 or self.population_size % 2 != 0:
            raise ValueError("population_size must be an even integer >= 4")
        if self.generations < 0:
            raise ValueError("generations must be >= 0")
        for name in ("crossover_prob", "mutation_prob"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.sbx_eta <= 0 or self.pm_eta <= 0:
            raise ValueError("distribution indices must be positive")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")
        if self.eval_workers < 1:
            raise ValueError("eval_workers must be >= 1")


@dataclass
class FrontPartition:
    """Result of non-dominated sorting: fronts as index arrays plus a rank map.

    ``fronts[0]`` is the non-dominated set; ``ranks[i]`` is 1-based and equals
    ``k+1`` when individual ``i`` sits in ``fronts[k]``.
    """

    fronts: list[np.ndarray]
    ranks: np.ndarray


def dominates(a: np.ndarray, b: np.ndarray) -> bool:
    """True iff ``a`` is no worse than ``b`` everywhere and strictly better somewhere."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError(f"objective length mismatch: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def constrained_dominates(a: Individual, b: Individual) -> bool:
    """Constraint-domination: feasibility first, then violation, then objectives.

    A feasible individual beats any infeasible one; two infeasible individuals
    compare by total violation; two feasible ones compare by Pareto dominance.
    """
    if not (a.evaluated and b.evaluated):
        raise ValueError("both individuals must be evaluated before comparison")
    if a.feasible != b.feasible:
        return a.feasible
    if not a.feasible:
        return a.violation < b.violation
    return dominates(a.objectives, b.objectives)


def _domination_matrix(objectives: np.ndarray, violations: np.ndarray) -> np.ndarray:
    """Pairwise constraint-domination, ``D[i, j]`` true iff ``i`` dominates ``j``."""
    feasible = violations == 0.0
    le = np.all(objectives[:, None, :] <= objectives[None, :, :], axis=2)
    lt = np.any(objectives[:, None, :] < objectives[None, :, :], axis=2)
    both_feasible = feasible[:, None] & feasible[None, :]
    both_infeasible = ~feasible[:, None] & ~feasible[None, :]
    dom = (
        (both_feasible & le & lt)
        | (feasible[:, None] & ~feasible[None, :])
        | (both_infeasible & (violations[:, None] < violations[None, :]))
    )
    np.fill_diagonal(dom, False)
    return dom


def fast_nondominated_sort(population: Sequence[Individual]) -> FrontPartition:
    """Partition a population into ranked fronts under constraint-domination.

    Builds the pairwise domination relation, then repeatedly peels the set of
    individuals with no remaining dominators (domination-count bookkeeping).
    """
    n = len(population)
    if n == 0:
        raise ValueError("cannot sort an empty population")
    for k, ind in enumerate(population):
        if not ind.evaluated:
            raise ValueError(f"individual {k} is not evaluated")
    objectives = np.array([ind.objectives for ind in population], dtype=float)
    violations = np.array([ind.violation for ind in population], dtype=float)

    dom = _domination_matrix(objectives, violations)
    counts = dom.sum(axis=0).astype(np.int64)
    unassigned = np.ones(n, dtype=bool)
    ranks = np.zeros(n, dtype=int)
    fronts: list[np.ndarray] = []
    current = np.flatnonzero(counts == 0)
    rank = 1
    while current.size:
        fronts.append(current)
        ranks[current] = rank
        unassigned[current] = False
        counts = counts - dom[current].sum(axis=0)
        current = np.flatnonzero(unassigned & (counts == 0))
        rank += 1
    return FrontPartition(fronts=fronts, ranks=ranks)


def crowding_distance(front_values: Sequence[np.ndarray] | np.ndarray) -> np.ndarray:
    """Crowding distance of each point within one front.

    Per objective, points are sorted and each interior point accumulates the
    normalized gap between its neighbors,
    ``(f[i+1] - f[i-1]) / (f_max - f_min)``; the two boundary points get
    ``+inf``.  An objective with zero spread contributes nothing to interior
    points.
    """
    values = np.asarray(front_values, dtype=float)
    if values.ndim != 2:
        raise ValueError("front_values must be a sequence of objective vectors")
    n, m = values.shape
    if n == 0:
        raise ValueError("front must be nonempty")
    distance = np.zeros(n)
    for j in range(m):
        order = np.argsort(values[:, j], kind="stable")
        span = values[order[-1], j] - values[order[0], j]
        if span > 0.0:
            gaps = (values[order[2:], j] - values[order[:-2], j]) / span
            distance[order[1:-1]] += gaps
        distance[order[0]] = np.inf
        distance[order[-1]] = np.inf
    return distance


def crowded_compare(a: Individual, b: Individual) -> int:
    """Total order used by tournaments: lower rank first, then larger crowding.

    Returns -1 if ``a`` precedes ``b``, 1 if ``b`` precedes ``a``, 0 on a tie.
    """
    if a.rank is None or b.rank is None or a.crowding is None or b.crowding is None:
        raise ValueError("rank and crowding must be assigned before comparison")
    if a.rank != b.rank:
        return -1 if a.rank < b.rank else 1
    if a.crowding != b.crowding:
        return -1 if a.crowding > b.crowding else 1
    return 0


def binary_tournament_select(population: Sequence[Individual], rng: np.random.Generator) -> int:
    """Index of the winner between two distinct uniformly drawn contestants.

    Ties go to the first contestant drawn.
    """
    n = len(population)
    if n < 2:
        raise ValueError("tournament selection needs at least two individuals")
    i = int(rng.integers(n))
    j = int(rng.integers(n - 1))
    if j >= i:
        j += 1
    return i if crowded_compare(population[i], population[j]) <= 0 else j


def sbx_crossover(
    parent1: np.ndarray,
    parent2: np.ndarray,
    config: EngineConfig,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """Simulated binary crossover on the unit box.

    With probability ``crossover_prob`` the parents are blended gene-wise with
    spread factor ``beta`` drawn from the SBX distribution (index
    ``sbx_eta``); otherwise the parents are copied through.  Children are
    clamped to [0, 1].  Identical parents always yield identical children.
    """
    p1 = np.asarray(parent1, dtype=float)
    p2 = np.asarray(parent2, dtype=float)
    if p1.shape != p2.shape:
        raise ValueError("parents must have equal genotype length")
    if rng.random() >= config.crossover_prob:
        return p1.copy(), p2.copy()
    exponent = 1.0 / (config.sbx_eta + 1.0)
    u = rng.random(p1.shape[0])
    beta = np.where(
        u <= 0.5,
        (2.0 * u) ** exponent,
        (1.0 / (2.0 * (1.0 - u))) ** exponent,
    )
    child1 = 0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2)
    child2 = 0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2)
    return np.clip(child1, 0.0, 1.0), np.clip(child2, 0.0, 1.0)


def polynomial_mutation(
    genotype: np.ndarray,
    config: EngineConfig,
    rng: np.random.Generator,
) -> np.ndarray:
    """Bounded polynomial mutation, each gene perturbed with ``mutation_prob``.

    The perturbation magnitude follows the polynomial distribution with index
    ``pm_eta``; deltas shrink near the box boundary, so results stay in
    [0, 1] by construction.
    """
    g = np.asarray(genotype, dtype=float)
    length = g.shape[0]
    mask = rng.random(length) < config.mutation_prob
    u = rng.random(length)
    exponent = 1.0 / (config.pm_eta + 1.0)
    to_lower = g          # distance to the lower bound (box is [0, 1])
    to_upper = 1.0 - g
    delta_low = (2.0 * u + (1.0 - 2.0 * u) * (1.0 - to_lower) ** (config.pm_eta + 1.0)) ** exponent - 1.0
    delta_high = 1.0 - (2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - to_upper) ** (config.pm_eta + 1.0)) ** exponent
    delta = np.where(u <= 0.5, delta_low, delta_high)
    mutated = np.where(mask, g + delta, g)
    return np.clip(mutated, 0.0, 1.0)


def assign_ranks_and_crowding(population: Sequence[Individual]) -> FrontPartition:
    """Sort a population and write rank/crowding back onto each individual."""
    partition = fast_nondominated_sort(population)
    for front in partition.fronts:
        distances = crowding_distance([population[i].objectives for i in front])
        for position, i in enumerate(front):
            population[i].rank = int(partition.ranks[i])
            population[i].crowding = float(distances[position])
    return partition


def environmental_select(
    parents: Sequence[Individual],
    offspring: Sequence[Individual],
    n_survivors: int,
) -> list[Individual]:
    """Elitist (mu + lambda) truncation of parents plus offspring to ``n_survivors``.

    Whole fronts are admitted in rank order; the front that overflows is cut
    by descending crowding distance, ties resolved toward the lower combined
    index.  Survivors are re-ranked among themselves so the returned
    population carries fresh rank/crowding values.
    """
    if len(parents) != n_survivors or len(offspring) != n_survivors:
        raise ValueError("parents and offspring must each have exactly n_survivors members")
    combined: list[Individual] = list(parents) + list(offspring)
    partition = fast_nondominated_sort(combined)
    chosen: list[int] = []
    for front in partition.fronts:
        if len(chosen) + front.size <= n_survivors:
            chosen.extend(front.tolist())
            if len(chosen) == n_survivors:
                break
        else:
            room = n_survivors - len(chosen)
            distances = crowding_distance([combined[i].objectives for i in front])
            order = np.argsort(-distances, kind="stable")  # stable: ties keep lower index
            chosen.extend(front[order[:room]].tolist())
            break
    survivors = [combined[i] for i in chosen]
    assign_ranks_and_crowding(survivors)
    return survivors


@dataclass
class ParetoArchive:
    """All-time store of feasible, mutually non-dominated individuals.

    Members are kept sorted by objective tuple; duplicate objective vectors
    are kept once.
    """

    members: list[Individual] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def objectives_array(self) -> np.ndarray:
        if not self.members:
            return np.empty((0, 0))
        return np.array([m.objectives for m in self.members], dtype=float)


def _nondominated_bi(objectives: np.ndarray) -> list[int]:
    """Indices of the non-dominated, deduplicated subset of bi-objective points.

    Sweep in (f1, f2)-lexicographic order keeping points that strictly improve
    the running best f2; this is exact for two objectives.
    """
    order = np.lexsort((objectives[:, 1], objectives[:, 0]))
    keep: list[int] = []
    best = np.inf
    for i in order:
        if objectives[i, 1] < best:
            keep.append(int(i))
            best = objectives[i, 1]
    return keep


def _nondominated_general(objectives: np.ndarray) -> list[int]:
    """Non-dominated, deduplicated indices for any objective count (pairwise test)."""
    order = np.lexsort(objectives.T[::-1])
    unique: list[int] = []
    for i in order:
        if unique and np.array_equal(objectives[unique[-1]], objectives[i]):
            continue
        unique.append(int(i))
    pts = objectives[unique]
    le = np.all(pts[:, None, :] <= pts[None, :, :], axis=2)
    lt = np.any(pts[:, None, :] < pts[None, :, :], axis=2)
    dominated = (le & lt).any(axis=0)
    return [unique[k] for k in range(len(unique)) if not dominated[k]]


def update_archive(archive: ParetoArchive, candidates: Sequence[Individual]) -> ParetoArchive:
    """Fold feasible candidates into the archive, keeping the non-dominated set.

    Infeasible candidates are ignored.  The result is a new archive whose
    members are mutually non-dominated with duplicates (by objective vector)
    removed, sorted by objectives.
    """
    pool = list(archive.members)
    for c in candidates:
        if not c.evaluated:
            raise ValueError("archive candidates must be evaluated")
        if c.feasible:
            pool.append(c)
    if not pool:
        return ParetoArchive([])
    objectives = np.array([p.objectives for p in pool], dtype=float)
    if objectives.shape[1] == 2:
        keep = _nondominated_bi(objectives)
    else:
        keep = _nondominated_general(objectives)
    keep.sort(key=lambda i: tuple(objectives[i]))
    return ParetoArchive([pool[i] for i in keep])


@dataclass
class GenerationRecord:
    """Progress snapshot after one generation has been folded into the archive."""

    generation: int
    evaluations: int
    archive_size: int
    best_objectives: np.ndarray | None
    archive_objectives: np.ndarray


@dataclass
class EvolutionResult:
    population: list[Individual]
    archive: ParetoArchive
    history: list[GenerationRecord]


def _evaluate_batch(
    genotypes: Sequence[np.ndarray],
    problem: Problem,
    workers: int,
    expected_m: int | None,
) -> tuple[list[Individual], int]:
    """Evaluate genotypes (optionally in threads) into Individuals, by index."""
    def evaluate_one(k: int) -> tuple[np.ndarray, float]:
        objectives, violation = problem.evaluate(genotypes[k])
        return np.asarray(objectives, dtype=float), float(violation)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            raw = list(pool.map(evaluate_one, range(len(genotypes))))
    else:
        raw = [evaluate_one(k) for k in range(len(genotypes))]

    individuals: list[Individual] = []
    m = expected_m
    for k, (objectives, violation) in enumerate(raw):
        if objectives.ndim != 1 or objectives.size < 2:
            raise EvaluationError(f"genotype index {k}: expected >= 2 objectives, got shape {objectives.shape}")
        if m is None:
            m = objectives.size
        elif objectives.size != m:
            raise EvaluationError(f"genotype index {k}: objective count changed from {m} to {objectives.size}")
        if not np.all(np.isfinite(objectives)):
            raise EvaluationError(f"non-finite objective at genotype index {k}: {objectives.tolist()}")
        if not math.isfinite(violation) or violation < 0.0:
            raise EvaluationError(f"invalid constraint violation at genotype index {k}: {violation}")
        individuals.append(Individual(genotypes[k], objectives=objectives, violation=violation))
    return individuals, int(m)  # type: ignore[arg-type]


def _make_offspring(
    population: list[Individual],
    config: EngineConfig,
    rng: np.random.Generator,
) -> list[np.ndarray]:
    genotypes: list[np.ndarray] = []
    for _ in range(config.population_size // 2):
        i = binary_tournament_select(population, rng)
        j = binary_tournament_select(population, rng)
        child1, child2 = sbx_crossover(population[i].genotype, population[j].genotype, config, rng)
        genotypes.append(polynomial_mutation(child1, config, rng))
        genotypes.append(polynomial_mutation(child2, config, rng))
    return genotypes


def _record(generation: int, evaluations: int, archive: ParetoArchive) -> GenerationRecord:
    objectives = archive.objectives_array()
    best = objectives.min(axis=0) if len(archive) else None
    return GenerationRecord(
        generation=generation,
        evaluations=evaluations,
        archive_size=len(archive),
        best_objectives=best,
        archive_objectives=objectives.copy(),
    )


def evolve(problem: Problem, config: EngineConfig) -> EvolutionResult:
    """Run the full generational loop and return population, archive, and history.

    The initial population is sampled uniformly from [0, 1]^L, evaluated, and
    ranked; each generation then produces ``population_size`` children via
    binary tournaments, SBX, and polynomial mutation, evaluates them, and
    applies elitist environmental selection over parents plus offspring.  The
    archive accumulates every feasible non-dominated point seen; ``history``
    holds one record for the initial population (generation 0) and one per
    generation after it.  Runs are fully deterministic for a fixed config.
    """
    length = int(problem.genotype_length)
    if length < 1:
        raise ValueError("problem.genotype_length must be >= 1")
    rng = np.random.default_rng(config.seed)
    initial = rng.random((config.population_size, length))
    population, m = _evaluate_batch(list(initial), problem, config.eval_workers, None)
    assign_ranks_and_crowding(population)
    archive = update_archive(ParetoArchive(), population)
    evaluations = config.population_size
    history = [_record(0, evaluations, archive)]

    for generation in range(1, config.generations + 1):
        child_genotypes = _make_offspring(population, config, rng)
        offspring, m = _evaluate_batch(child_genotypes, problem, config.eval_workers, m)
        population = environmental_select(population, offspring, config.population_size)
        archive = update_archive(archive, offspring)
        evaluations += config.population_size
        history.append(_record(generation, evaluations, archive))

    return EvolutionResult(population=population, archive=archive, history=history)
