"""Domain model for scheduling independent jobs on heterogeneous grid resources.

Holds the problem types (resources, jobs, instances), crisp schedules and their
makespan evaluation, the fuzzy membership-matrix encoding with its constraint
check and repair, the shared fitness function every solver routes through, and
an exhaustive enumeration oracle for small instances.

All operations are pure functions of their inputs; every value type is
immutable after construction and safe to share between concurrent workers.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

import numpy as np

# Column sums of a membership matrix must hit 1 within this tolerance.
COLUMN_SUM_TOL = 1e-9

# Weight on availability-window overshoot when scoring infeasible schedules.
OVERSHOOT_PENALTY = 10.0

# Largest number of assignments the exhaustive oracle will enumerate.
DEFAULT_ENUMERATION_BUDGET = 20_000_000


class ConfigurationError(ValueError):
    """A solver or generator configuration violates its invariants."""


class MalformedAssignmentError(ValueError):
    """An assignment does not fit the instance (wrong length or bad index)."""


class NumericDomainError(ValueError):
    """Non-finite values were passed where finite reals are required."""


class OracleBudgetError(RuntimeError):
    """Exhaustive enumeration would exceed the configured budget."""


@dataclass(frozen=True)
class Job:
    """One independent job; length is in cycles."""

    id: int
    length: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.length) or self.length <= 0:
            raise ValueError(f"job {self.id}: length must be a positive real, got {self.length}")


@dataclass(frozen=True)
class Resource:
    """One grid resource; speed is in cycles per unit time (CPUT).

    start_time / end_time bound the availability window.  The defaults
    (0, unbounded) give the plain makespan model with always-on resources.
    """

    id: int
    speed: float
    start_time: float = 0.0
    end_time: float = math.inf

    def __post_init__(self) -> None:
        if not math.isfinite(self.speed) or self.speed <= 0:
            raise ValueError(f"resource {self.id}: speed must be a positive real, got {self.speed}")
        if not math.isfinite(self.start_time) or self.start_time < 0:
            raise ValueError(f"resource {self.id}: start_time must be non-negative, got {self.start_time}")
        if math.isnan(self.end_time) or self.end_time <= self.start_time:
            raise ValueError(
                f"resource {self.id}: end_time must exceed start_time, got {self.end_time}"
            )


@dataclass(frozen=True)
class GridInstance:
    """A scheduling problem: an ordered set of resources and one of jobs."""

    resources: tuple[Resource, ...]
    jobs: tuple[Job, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "resources", tuple(self.resources))
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if len(self.resources) < 1 or len(self.jobs) < 1:
            raise ValueError("an instance needs at least one resource and one job")
        for pos, res in enumerate(self.resources):
            if res.id != pos:
                raise ValueError(f"resource ids must be contiguous from 0, got {res.id} at {pos}")
        for pos, job in enumerate(self.jobs):
            if job.id != pos:
                raise ValueError(f"job ids must be contiguous from 0, got {job.id} at {pos}")
        for name, arr in (
            ("_speeds", np.array([r.speed for r in self.resources])),
            ("_start_times", np.array([r.start_time for r in self.resources])),
            ("_end_times", np.array([r.end_time for r in self.resources])),
            ("_lengths", np.array([j.length for j in self.jobs])),
        ):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def resource_count(self) -> int:
        return len(self.resources)

    @property
    def job_count(self) -> int:
        return len(self.jobs)

    @property
    def speeds(self) -> np.ndarray:
        return self._speeds

    @property
    def start_times(self) -> np.ndarray:
        return self._start_times

    @property
    def end_times(self) -> np.ndarray:
        return self._end_times

    @property
    def lengths(self) -> np.ndarray:
        return self._lengths


@dataclass(frozen=True)
class Assignment:
    """Crisp schedule: assignee[j] is the resource index that runs job j."""

    assignee: tuple[int, ...]

    def __post_init__(self) -> None:
        coerced = tuple(operator.index(x) for x in self.assignee)
        if any(x < 0 for x in coerced):
            raise ValueError("resource indices must be non-negative")
        object.__setattr__(self, "assignee", coerced)

    def __len__(self) -> int:
        return len(self.assignee)

    def to_array(self) -> np.ndarray:
        return np.array(self.assignee, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class MembershipMatrix:
    """Fuzzy genome: rows index resources, columns index jobs.

    Entry (i, j) grades how strongly resource i claims job j.  Every entry
    lies in [0, 1] and every column sums to 1, so each job distributes one
    unit of membership over the resources.  Construct from arbitrary raw
    matrices via :func:`repair`.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=np.float64)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError(f"membership matrix must be a non-empty 2-d array, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise NumericDomainError("membership matrix contains non-finite entries")
        if not check_constraints(arr):
            raise ValueError("membership matrix violates [0,1] bounds or unit column sums")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @property
    def resource_count(self) -> int:
        return self.values.shape[0]

    @property
    def job_count(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class MakespanReport:
    """Per-resource completion times, their maximum, and window feasibility."""

    per_resource_completion: tuple[float, ...]
    makespan: float
    feasible: bool


def processing_time(job: Job, resource: Resource) -> float:
    """Time for one resource to run one job: cycles divided by cycles-per-time."""
    return job.length / resource.speed


def _validated_assignee(instance: GridInstance, assignment: Assignment) -> np.ndarray:
    a = assignment.to_array()
    if len(a) != instance.job_count:
        raise MalformedAssignmentError(
            f"assignment covers {len(a)} jobs, instance has {instance.job_count}"
        )
    if a.size and (a.min() < 0 or a.max() >= instance.resource_count):
        raise MalformedAssignmentError(
            f"resource index out of range for {instance.resource_count} resources"
        )
    return a


def _completions(instance: GridInstance, assignee: np.ndarray) -> np.ndarray:
    n = instance.resource_count
    cycles = np.bincount(assignee, weights=instance.lengths, minlength=n)
    return instance.start_times + cycles / instance.speeds


def evaluate_makespan(instance: GridInstance, assignment: Assignment) -> MakespanReport:
    """Evaluate a crisp schedule.

    Each resource finishes at its start time plus the summed processing time
    of the jobs assigned to it; a resource with no jobs just contributes its
    start time.  The makespan is the maximum completion over all resources.
    The schedule is feasible when every loaded resource finishes inside its
    availability window.
    """
    a = _validated_assignee(instance, assignment)
    completions = _completions(instance, a)
    counts = np.bincount(a, minlength=instance.resource_count)
    loaded = counts > 0
    feasible = bool(np.all(completions[loaded] <= instance.end_times[loaded]))
    return MakespanReport(
        per_resource_completion=tuple(float(c) for c in completions),
        makespan=float(completions.max()),
        feasible=feasible,
    )


def batch_fitness(instance: GridInstance, assignees: np.ndarray) -> np.ndarray:
    """Penalized makespan for each row of a (k, job_count) assignment array.

    This is the one fitness path shared by every solver: makespan plus
    OVERSHOOT_PENALTY times the total availability-window overshoot.  With
    unbounded windows the fitness is exactly the makespan.
    """
    assignees = np.asarray(assignees, dtype=np.int64)
    n = instance.resource_count
    if len(assignees) <= 4:
        cycles = np.stack(
            [np.bincount(row, weights=instance.lengths, minlength=n) for row in assignees]
        )
    else:
        onehot = assignees[:, :, None] == np.arange(n)
        cycles = (onehot * instance.lengths[None, :, None]).sum(axis=1)
    completions = instance.start_times + cycles / instance.speeds
    makespans = completions.max(axis=1)
    overshoot = np.clip(completions - instance.end_times, 0.0, None).sum(axis=1)
    return makespans + OVERSHOOT_PENALTY * overshoot


def assignment_fitness(instance: GridInstance, assignment: Assignment) -> float:
    """Penalized makespan of one crisp schedule (see :func:`batch_fitness`)."""
    a = _validated_assignee(instance, assignment)
    return float(batch_fitness(instance, a[None, :])[0])


def check_constraints(raw: np.ndarray) -> bool:
    """True iff all entries are in [0, 1] and every column sums to 1 within tolerance."""
    arr = np.asarray(raw, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        return False
    if not np.isfinite(arr).all():
        return False
    if (arr < 0.0).any() or (arr > 1.0).any():
        return False
    return bool(np.all(np.abs(arr.sum(axis=0) - 1.0) <= COLUMN_SUM_TOL))


def repair_stack(stack: np.ndarray) -> np.ndarray:
    """Repair a (..., resource_count, job_count) stack of raw matrices in place.

    Entries are clamped to [0, 1] and each column is rescaled to unit sum.
    A column whose clamped sum is zero has no usable signal left and is reset
    to the uniform column.  Idempotent up to floating-point roundoff.
    """
    if not np.isfinite(stack).all():
        raise NumericDomainError("cannot repair non-finite membership values")
    np.clip(stack, 0.0, 1.0, out=stack)
    n = stack.shape[-2]
    sums = stack.sum(axis=-2, keepdims=True)
    dead = sums == 0.0
    np.divide(stack, sums, out=stack, where=~dead)
    if dead.any():
        stack[:] = np.where(dead, 1.0 / n, stack)
    return stack


def repair(raw: np.ndarray) -> MembershipMatrix:
    """Turn an arbitrary finite raw matrix into a valid membership matrix."""
    arr = np.array(raw, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"expected a non-empty 2-d matrix, got shape {arr.shape}")
    return MembershipMatrix(repair_stack(arr))


def batch_defuzzify(stack: np.ndarray) -> np.ndarray:
    """Per-job argmax over resources for a (..., resource_count, job_count) stack.

    Ties resolve to the lowest resource index, so the decoding depends only on
    the within-column ordering of the membership values.
    """
    return np.argmax(stack, axis=-2)


def defuzzify(matrix: MembershipMatrix) -> Assignment:
    """Decode a membership matrix to the crisp schedule of per-job argmax rows."""
    return Assignment(tuple(batch_defuzzify(matrix.values).tolist()))


def brute_force_optimum(
    instance: GridInstance, budget: int = DEFAULT_ENUMERATION_BUDGET
) -> tuple[Assignment, float]:
    """Enumerate every assignment and return a makespan-minimizing one.

    Ties resolve to the lexicographically smallest assignment vector.  Raises
    OracleBudgetError when resource_count ** job_count exceeds the budget.
    Enumeration runs in chunks with the per-resource loads evaluated as
    vectorized masked sums, so desk-scale instances (a few million
    assignments) finish in seconds.
    """
    n = instance.resource_count
    m = instance.job_count
    total = n**m
    if total > budget:
        raise OracleBudgetError(
            f"{n}^{m} = {total} assignments exceed the enumeration budget of {budget}"
        )
    # Job 0 is the most significant digit: numeric id order == lexicographic
    # order of the assignment vectors, and argmin returns the first minimum.
    place = n ** np.arange(m - 1, -1, -1, dtype=np.int64)
    proc = instance.lengths[None, :] / instance.speeds[:, None]
    starts = instance.start_times
    best_value = math.inf
    best_id = -1
    chunk = 1 << 16
    for lo in range(0, total, chunk):
        ids = np.arange(lo, min(lo + chunk, total), dtype=np.int64)
        digits = (ids[:, None] // place[None, :]) % n
        makespans = np.full(len(ids), -math.inf)
        for i in range(n):
            completions_i = starts[i] + ((digits == i) * proc[i]).sum(axis=1)
            np.maximum(makespans, completions_i, out=makespans)
        pos = int(np.argmin(makespans))
        if makespans[pos] < best_value:
            best_value = float(makespans[pos])
            best_id = int(ids[pos])
    digits = (best_id // place) % n
    return Assignment(tuple(digits.tolist())), best_value
