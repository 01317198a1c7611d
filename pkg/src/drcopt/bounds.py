"""A-priori accuracy guarantees of the two termination methods.

Method I certifies |upper - lower| <= m * eps_f.  Method II's guarantee
is the optimum of a single-constraint box linear program over the agents'
gap variables; the constraint aggregates each gap over every closed
in-neighborhood of one strongly connected window.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import GraphSchedule


def method1_accuracy(m: int, eps_f: float) -> float:
    if m < 1 or eps_f <= 0.0:
        raise ValueError("need m >= 1 and eps_f > 0")
    return m * eps_f


def neighborhood_weights(schedule: GraphSchedule) -> list[float]:
    """w_j = sum over the first T slots of (1 + outdeg_j(t)).

    Counting appearances: at slot t, gap e_j shows up once in its own
    closed neighborhood and once per out-neighbor, so the triple sum
    over agents, slots and neighborhoods collapses to sum_j w_j * e_j.
    """
    return [
        sum(1 + schedule.out_degree(j, t) for t in range(schedule.window))
        for j in range(1, schedule.m + 1)
    ]


def aggregate_gap_load(schedule: GraphSchedule, gaps: list[float]) -> float:
    """Literal triple-sum evaluation, the independent oracle for the weights."""
    total = 0.0
    for i in range(1, schedule.m + 1):
        for t in range(schedule.window):
            for j in (i,) + schedule.in_neighbors(i, t):
                total += gaps[j - 1]
    return total


def method2_accuracy(schedule: GraphSchedule, eps_f: float) -> float:
    """Optimum of: max sum(e) s.t. sum_j w_j e_j <= m*T*eps_f, 0 <= e_j <= eps_f.

    A single-constraint box LP, solved by the greedy fractional-knapsack
    rule: fill variables to eps_f in ascending weight order, fractional
    last.
    """
    if eps_f <= 0.0:
        raise ValueError("eps_f must be positive")
    weights = neighborhood_weights(schedule)
    capacity = schedule.m * schedule.window * eps_f
    total = 0.0
    for w in sorted(weights):
        take = min(eps_f, capacity / w)
        total += take
        capacity -= take * w
        if capacity <= 0.0:
            break
    return total


@dataclass(frozen=True)
class SweepRow:
    topology: str
    m: int
    window: int
    method1_bound: float
    method2_bound: float
    centralized: float


def accuracy_sweep(topologies: dict, m_range, eps_f: float) -> list[SweepRow]:
    """Bounds per (topology, m); topologies maps name -> generator(m)."""
    rows = []
    for name, generator in topologies.items():
        for m in m_range:
            schedule = generator(m)
            rows.append(
                SweepRow(
                    topology=name,
                    m=m,
                    window=schedule.window,
                    method1_bound=method1_accuracy(m, eps_f),
                    method2_bound=method2_accuracy(schedule, eps_f),
                    centralized=eps_f,
                )
            )
    return rows
