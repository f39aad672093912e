"""Grid job scheduling toolkit: fuzzy DE scheduler, baselines, benchmark harness."""

from gridsched.model import (
    Assignment,
    GridInstance,
    Job,
    MakespanReport,
    MembershipMatrix,
    Resource,
    brute_force_optimum,
    check_constraints,
    defuzzify,
    evaluate_makespan,
    processing_time,
    repair,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "GridInstance",
    "Job",
    "MakespanReport",
    "MembershipMatrix",
    "Resource",
    "brute_force_optimum",
    "check_constraints",
    "defuzzify",
    "evaluate_makespan",
    "processing_time",
    "repair",
    "__version__",
]
