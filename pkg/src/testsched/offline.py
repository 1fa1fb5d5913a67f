"""Offline benchmarks: optimal schedules when processing times are known.

With full information a job is worth min(1 + p, upper): test-and-run costs
1 + p, running blind costs the upper limit.  For the sum of completion
times the optimum orders jobs by that key ascending; for the makespan only
the per-job choice matters.  `brute_force_optimum` is the independent
oracle: it enumerates every test-set choice and every execution order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from operator import mul

from .core import (
    EXEC_TESTED,
    EXEC_UNTESTED,
    TEST,
    Instance,
    Num,
    Trace,
    build_trace,
    validate_instance,
)

BRUTE_FORCE_MAX_N = 10


class OracleSizeError(ValueError):
    """Instance too large for exhaustive enumeration."""


@dataclass(frozen=True)
class OptPlan:
    """An optimal offline schedule for the sum objective."""

    order: tuple[int, ...]      # job ids in execution order
    tested: frozenset           # ids that are tested (right before execution)
    total: Num
    makespan: Num


def job_key(job) -> Num:
    """Effective duration of a job under its better treatment."""
    return min(1 + job.proc, job.upper)


def should_test(job) -> bool:
    # Ties go to running blind: same cost, one action fewer.
    return 1 + job.proc < job.upper


def optimal_sum(inst: Instance) -> OptPlan:
    """Exact optimal sum of completion times (shortest key first)."""
    validate_instance(inst)
    order = sorted(inst.jobs, key=lambda j: (job_key(j), j.id))
    tested = frozenset(j.id for j in inst.jobs if should_test(j))
    t: Num = 0
    total: Num = 0
    for j in order:
        t = t + job_key(j)
        total = total + t
    return OptPlan(tuple(j.id for j in order), tested, total, t)


def optimal_makespan(inst: Instance) -> tuple[Num, frozenset]:
    """Minimal makespan and the set of jobs tested to achieve it."""
    validate_instance(inst)
    value: Num = 0
    for j in inst.jobs:
        value = value + job_key(j)
    return value, frozenset(j.id for j in inst.jobs if should_test(j))


def plan_trace(inst: Instance, plan: OptPlan) -> Trace:
    """Materialize an OptPlan as a replayable trace."""
    steps = []
    t: Num = 0
    for jid in plan.order:
        job = inst.jobs[jid]
        if jid in plan.tested:
            steps.append((TEST, jid, t, 1))
            t = t + 1
            steps.append((EXEC_TESTED, jid, t, job.proc))
            t = t + job.proc
        else:
            steps.append((EXEC_UNTESTED, jid, t, job.upper))
            t = t + job.upper
    return build_trace(inst.n, steps)


def brute_force_optimum(inst: Instance, objective: str = "sum") -> Num:
    """Exhaustive optimum over all test sets and execution orders.

    A tested job runs immediately after its test (delaying it only adds
    cost), so a schedule is a choice of per-job effective duration, either
    1 + p or the upper limit, plus a permutation.  Cost grows as n! * 2^n;
    instances beyond n = 10 are refused.
    """
    validate_instance(inst)
    n = inst.n
    if n > BRUTE_FORCE_MAX_N:
        raise OracleSizeError(f"brute force refuses n={n} > {BRUTE_FORCE_MAX_N}")
    pairs = [(1 + j.proc, j.upper) for j in inst.jobs]
    if objective == "makespan":
        best = None
        for durs in product(*pairs):
            c = sum(durs)
            if best is None or c < best:
                best = c
        return best
    if objective != "sum":
        raise ValueError(f"unknown objective {objective!r}")

    exact = not any(isinstance(v, float) for pair in pairs for v in pair)
    if exact:
        # Scale all durations to a common denominator and enumerate in ints.
        fracs = [(Fraction(a), Fraction(b)) for a, b in pairs]
        denom = 1
        for a, b in fracs:
            denom = denom * a.denominator // math.gcd(denom, a.denominator)
            denom = denom * b.denominator // math.gcd(denom, b.denominator)
        scaled = [(int(a * denom), int(b * denom)) for a, b in fracs]
        best_int = None
        weights = tuple(range(n, 0, -1))
        for durs in product(*scaled):
            for perm in permutations(durs):
                c = sum(map(mul, weights, perm))
                if best_int is None or c < best_int:
                    best_int = c
        return Fraction(best_int, denom)
    best = None
    weights = tuple(range(n, 0, -1))
    for durs in product(*pairs):
        for perm in permutations(durs):
            c = sum(map(mul, weights, perm))
            if best is None or c < best:
                best = c
    return best
