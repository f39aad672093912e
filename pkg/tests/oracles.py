"""Independent reference implementations used only to cross-check results.

Deliberately plain Python (dicts and loops, no numpy) so these stay decoupled
from the vectorized code paths they verify.
"""

from __future__ import annotations

from gridsched.model import GridInstance


def naive_completions(instance: GridInstance, assignee) -> list[float]:
    loads: dict[int, float] = {}
    for job_index, resource_index in enumerate(assignee):
        job = instance.jobs[job_index]
        speed = instance.resources[resource_index].speed
        loads[resource_index] = loads.get(resource_index, 0.0) + job.length / speed
    return [
        resource.start_time + loads.get(index, 0.0)
        for index, resource in enumerate(instance.resources)
    ]


def naive_makespan(instance: GridInstance, assignee) -> float:
    return max(naive_completions(instance, assignee))


def naive_fitness(instance: GridInstance, assignee, penalty: float = 10.0) -> float:
    completions = naive_completions(instance, assignee)
    overshoot = 0.0
    for index, resource in enumerate(instance.resources):
        if completions[index] > resource.end_time:
            overshoot += completions[index] - resource.end_time
    return max(completions) + penalty * overshoot
