"""Comparison solvers: GA, simulated annealing, crisp DE, and fuzzy PSO.

All four share the fitness path in gridsched.model, so every method optimizes
the identical objective as the fuzzy DE engine and their results are directly
comparable.  Default parameters are calibrated so each solver spends roughly
the same number of fitness evaluations per run as DE at its defaults
(population 50 x 500 iterations).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from gridsched import model
from gridsched.fuzzy_de import RunResult, SolverConfig
from gridsched.model import Assignment, ConfigurationError, GridInstance


@dataclass(frozen=True)
class GAConfig:
    # mutation_rate is per offspring; reassigning one of m genes per offspring
    # equals the canonical 1/m per-gene rate, and with elitism the always-on
    # mutation keeps exploring after the population converges.
    population_size: int = 50
    max_iterations: int = 500
    crossover_rate: float = 0.9
    mutation_rate: float = 1.0
    tournament_size: int = 2
    seed: int = 0

    def __post_init__(self) -> None:
        if self.population_size < 2:
            raise ConfigurationError(f"population_size must be >= 2, got {self.population_size}")
        if not (0 <= self.crossover_rate <= 1):
            raise ConfigurationError(f"crossover_rate must be in [0, 1], got {self.crossover_rate}")
        if not (0 <= self.mutation_rate <= 1):
            raise ConfigurationError(f"mutation_rate must be in [0, 1], got {self.mutation_rate}")
        if self.tournament_size < 1:
            raise ConfigurationError(f"tournament_size must be >= 1, got {self.tournament_size}")
        if self.max_iterations < 0:
            raise ConfigurationError(f"max_iterations must be >= 0, got {self.max_iterations}")
        if not (0 <= self.seed < 2**64):
            raise ConfigurationError(f"seed must fit in 64 unsigned bits, got {self.seed}")


@dataclass(frozen=True)
class SAConfig:
    # 502 temperature levels x 50 steps tracks the DE evaluation budget.
    initial_temperature: float = 50.0
    cooling_rate: float = 0.98
    steps_per_temperature: int = 50
    min_temperature: float = 2e-3
    seed: int = 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.initial_temperature) and self.initial_temperature > 0):
            raise ConfigurationError(
                f"initial_temperature must be positive, got {self.initial_temperature}"
            )
        if not (0 < self.cooling_rate < 1):
            raise ConfigurationError(f"cooling_rate must be in (0, 1), got {self.cooling_rate}")
        if self.steps_per_temperature < 1:
            raise ConfigurationError(
                f"steps_per_temperature must be >= 1, got {self.steps_per_temperature}"
            )
        if not (0 < self.min_temperature < self.initial_temperature):
            raise ConfigurationError(
                f"min_temperature must sit in (0, initial_temperature), got {self.min_temperature}"
            )
        if not (0 <= self.seed < 2**64):
            raise ConfigurationError(f"seed must fit in 64 unsigned bits, got {self.seed}")


@dataclass(frozen=True)
class PSOConfig:
    swarm_size: int = 50
    max_iterations: int = 500
    inertia_weight: float = 0.729
    cognitive_coefficient: float = 1.494
    social_coefficient: float = 1.494
    seed: int = 0

    def __post_init__(self) -> None:
        if self.swarm_size < 2:
            raise ConfigurationError(f"swarm_size must be >= 2, got {self.swarm_size}")
        if self.max_iterations < 0:
            raise ConfigurationError(f"max_iterations must be >= 0, got {self.max_iterations}")
        for name in ("inertia_weight", "cognitive_coefficient", "social_coefficient"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value >= 0):
                raise ConfigurationError(f"{name} must be non-negative, got {value}")
        if not (0 <= self.seed < 2**64):
            raise ConfigurationError(f"seed must fit in 64 unsigned bits, got {self.seed}")


def one_point_crossover(
    first: np.ndarray, second: np.ndarray, points: np.ndarray, crossed: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Pairwise one-point crossover: swap the tails from each cut point on.

    Rows of `first` pair with rows of `second`; pairs with `crossed` False
    pass through unchanged.  Returns fresh arrays.
    """
    genes = first.shape[1]
    head = np.arange(genes)[None, :] < points[:, None]
    keep_own = head | ~crossed[:, None]
    return np.where(keep_own, first, second), np.where(keep_own, second, first)


def ga_solve(instance: GridInstance, config: GAConfig) -> RunResult:
    """Generational GA on crisp assignment vectors.

    Tournament selection fills a parent pool, consecutive parents undergo
    one-point crossover, mutation reassigns one uniformly chosen job, and the
    best individual seen so far replaces the worst offspring (elitism of one).
    """
    started = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    n, m = instance.resource_count, instance.job_count
    pop_size = config.population_size

    population = rng.integers(0, n, size=(pop_size, m))
    fits = model.batch_fitness(instance, population)
    best_index = int(np.argmin(fits))
    best_fit = float(fits[best_index])
    best_vec = population[best_index].copy()
    trace = [best_fit]

    for _ in range(config.max_iterations):
        contenders = rng.integers(0, pop_size, size=(pop_size, config.tournament_size))
        winners = contenders[np.arange(pop_size), np.argmin(fits[contenders], axis=1)]
        children = population[winners].copy()
        pairs = pop_size // 2
        if m >= 2 and pairs:
            crossed = rng.random(pairs) < config.crossover_rate
            points = rng.integers(1, m, size=pairs)
            # Copies, not views: both assignments below write into children.
            first = children[0 : 2 * pairs : 2].copy()
            second = children[1 : 2 * pairs : 2].copy()
            children[0 : 2 * pairs : 2], children[1 : 2 * pairs : 2] = one_point_crossover(
                first, second, points, crossed
            )
        mutating = rng.random(pop_size) < config.mutation_rate
        slots = rng.integers(0, m, size=pop_size)
        moves = rng.integers(0, n, size=pop_size)
        rows = np.nonzero(mutating)[0]
        children[rows, slots[rows]] = moves[rows]
        child_fits = model.batch_fitness(instance, children)
        worst = int(np.argmax(child_fits))
        children[worst] = best_vec
        child_fits[worst] = best_fit
        population, fits = children, child_fits
        index = int(np.argmin(fits))
        if fits[index] < best_fit:
            best_fit = float(fits[index])
            best_vec = population[index].copy()
        trace.append(best_fit)

    return RunResult(
        best_assignment=Assignment(tuple(best_vec.tolist())),
        best_makespan=best_fit,
        trace=tuple(trace),
        wall_time=time.perf_counter() - started,
        iterations_run=config.max_iterations,
    )


def sa_solve(instance: GridInstance, config: SAConfig) -> RunResult:
    """Simulated annealing on a single assignment vector.

    A neighbor moves one uniformly chosen job to a uniformly chosen other
    resource.  Non-worsening moves are always accepted; worsening moves pass
    with probability exp(-delta / T) under geometric cooling.  The trace gets
    one point per temperature level.
    """
    started = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    n, m = instance.resource_count, instance.job_count

    state = rng.integers(0, n, size=m)
    fit = float(model.batch_fitness(instance, state[None, :])[0])
    best_vec = state.copy()
    best_fit = fit
    trace = [best_fit]

    temperature = config.initial_temperature
    levels = 0
    steps = config.steps_per_temperature
    while temperature > config.min_temperature:
        levels += 1
        if n > 1:
            # Per-level blocks of draws; one uniform per step even when unused
            # keeps the stream layout fixed.
            jobs = rng.integers(0, m, size=steps)
            moves = rng.integers(0, n - 1, size=steps)
            accepts = rng.random(steps)
            for step in range(steps):
                job = jobs[step]
                move = moves[step] + (moves[step] >= state[job])
                candidate = state.copy()
                candidate[job] = move
                candidate_fit = float(model.batch_fitness(instance, candidate[None, :])[0])
                delta = candidate_fit - fit
                if delta <= 0 or accepts[step] < math.exp(-delta / temperature):
                    state, fit = candidate, candidate_fit
                    if fit < best_fit:
                        best_fit = fit
                        best_vec = state.copy()
        temperature *= config.cooling_rate
        trace.append(best_fit)

    return RunResult(
        best_assignment=Assignment(tuple(best_vec.tolist())),
        best_makespan=best_fit,
        trace=tuple(trace),
        wall_time=time.perf_counter() - started,
        iterations_run=levels,
    )


def reflect_positions(vectors: np.ndarray, resource_count: int) -> np.ndarray:
    """Fold out-of-range components back into [0, resource_count].

    Triangular fold with period 2n: mirrored at both ends, so the decoded
    distribution is not biased toward the boundaries.
    """
    folded = np.mod(vectors, 2.0 * resource_count)
    return np.where(folded > resource_count, 2.0 * resource_count - folded, folded)


def decode_positions(vectors: np.ndarray, resource_count: int) -> np.ndarray:
    """Floor each component to a resource index, clamping the top edge."""
    return np.minimum(np.floor(vectors).astype(np.int64), resource_count - 1)


def crisp_de_solve(instance: GridInstance, config: SolverConfig) -> RunResult:
    """DE/rand/1/bin over real vectors in [0, n) decoded by floor."""
    started = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    n, m = instance.resource_count, instance.job_count
    pop_size = config.population_size

    population = rng.uniform(0, n, size=(pop_size, m))
    fits = model.batch_fitness(instance, decode_positions(population, n))
    best_index = int(np.argmin(fits))
    best_fit = float(fits[best_index])
    best_vec = population[best_index].copy()
    trace = [best_fit]

    for _ in range(config.max_iterations):
        order = np.argsort(rng.random((pop_size, pop_size - 1)), axis=1)[:, :3]
        partners = order + (order >= np.arange(pop_size)[:, None])
        mutants = population[partners[:, 0]] + config.scaling_factor * (
            population[partners[:, 1]] - population[partners[:, 2]]
        )
        take_mutant = rng.random((pop_size, m)) < config.crossover_rate
        forced = rng.integers(0, m, size=pop_size)
        take_mutant[np.arange(pop_size), forced] = True
        trials = np.where(take_mutant, mutants, population)
        trials = reflect_positions(trials, n)
        trial_fits = model.batch_fitness(instance, decode_positions(trials, n))
        improved = trial_fits < fits
        population[improved] = trials[improved]
        fits[improved] = trial_fits[improved]
        index = int(np.argmin(fits))
        if fits[index] < best_fit:
            best_fit = float(fits[index])
            best_vec = population[index].copy()
        trace.append(best_fit)

    decoded = decode_positions(best_vec[None, :], n)[0]
    return RunResult(
        best_assignment=Assignment(tuple(decoded.tolist())),
        best_makespan=best_fit,
        trace=tuple(trace),
        wall_time=time.perf_counter() - started,
        iterations_run=config.max_iterations,
    )


def pso_step(
    positions: np.ndarray,
    velocities: np.ndarray,
    pbest: np.ndarray,
    gbest: np.ndarray,
    config: PSOConfig,
    rng: np.random.Generator,
) -> tuple[np.ndarray, np.ndarray]:
    """One velocity/position update for a (swarm, n, m) stack of matrices.

    With zero velocity and positions equal to both bests, particles stay put.
    """
    r_cognitive = rng.random(positions.shape)
    r_social = rng.random(positions.shape)
    velocities = (
        config.inertia_weight * velocities
        + config.cognitive_coefficient * r_cognitive * (pbest - positions)
        + config.social_coefficient * r_social * (gbest[None, :, :] - positions)
    )
    positions = model.repair_stack(positions + velocities)
    return positions, velocities


def fuzzy_pso_solve(instance: GridInstance, config: PSOConfig) -> RunResult:
    """Particle swarm over membership matrices; repair keeps positions feasible."""
    started = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    n, m = instance.resource_count, instance.job_count
    swarm = config.swarm_size

    positions = model.repair_stack(rng.random((swarm, n, m)))
    velocities = np.zeros_like(positions)
    fits = model.batch_fitness(instance, model.batch_defuzzify(positions))
    pbest = positions.copy()
    pbest_fits = fits.copy()
    g = int(np.argmin(pbest_fits))
    gbest = pbest[g].copy()
    gbest_fit = float(pbest_fits[g])
    trace = [gbest_fit]

    for _ in range(config.max_iterations):
        positions, velocities = pso_step(positions, velocities, pbest, gbest, config, rng)
        fits = model.batch_fitness(instance, model.batch_defuzzify(positions))
        improved = fits < pbest_fits
        pbest[improved] = positions[improved]
        pbest_fits[improved] = fits[improved]
        g = int(np.argmin(pbest_fits))
        if pbest_fits[g] < gbest_fit:
            gbest_fit = float(pbest_fits[g])
            gbest = pbest[g].copy()
        trace.append(gbest_fit)

    assignee = model.batch_defuzzify(gbest[None, :, :])[0]
    return RunResult(
        best_assignment=Assignment(tuple(assignee.tolist())),
        best_makespan=gbest_fit,
        trace=tuple(trace),
        wall_time=time.perf_counter() - started,
        iterations_run=config.max_iterations,
    )
