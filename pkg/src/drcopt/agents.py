"""Per-agent algorithm state: scenario sets, restriction parameter, oracles.

Each outer iteration an agent receives the consensus minimizer of the
lower (respectively upper) subproblem, checks it against its own
semi-infinite constraint via the lower-level problem, and either grows
its scenario set or (upper side) relaxes its restriction parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .llp import Verdict, feasibility_verdict, solve_llp
from .problem import ProblemInstance, Vector
from .solver import Cut, FiniteSubproblem, build_subproblem

SCENARIO_CAP = 10_000  # runaway guard per agent


class InfeasibleSentinel:
    """Marker for an upper candidate that violated its constraint (f -> +inf)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFEASIBLE"


INFEASIBLE = InfeasibleSentinel()


@dataclass
class AgentState:
    agent_id: int
    epsilon: float
    lower_scenarios: list[tuple[float, ...]] = field(default_factory=list)
    upper_scenarios: list[tuple[float, ...]] = field(default_factory=list)
    x_tilde: Vector | None = None
    x_bar: Vector | InfeasibleSentinel | None = None

    def gap(self, instance: ProblemInstance) -> float:
        """e_i = |f_i(x_bar) - f_i(x_tilde)|, +inf while x_bar is the sentinel."""
        if self.x_bar is None or self.x_bar is INFEASIBLE:
            return math.inf
        f = instance.objectives[self.agent_id - 1]
        return abs(f.evaluate(self.x_bar) - f.evaluate(self.x_tilde))


def initial_states(instance: ProblemInstance, eps0: float) -> list[AgentState]:
    if eps0 <= 0.0:
        raise ValueError("initial restriction parameter must be positive")
    return [AgentState(agent_id=i + 1, epsilon=eps0) for i in range(instance.m)]


def _append_scenario(scenarios: list[tuple[float, ...]], y: Vector) -> None:
    if len(scenarios) >= SCENARIO_CAP:
        raise RuntimeError(f"scenario set exceeded the cap of {SCENARIO_CAP}")
    # No dedup: re-appending a near-identical maximizer is harmless.
    scenarios.append(tuple(float(v) for v in np.atleast_1d(y)))


def dlbd_oracle(
    state: AgentState, instance: ProblemInstance, x_new: Vector, tol: float = 0.0
) -> tuple[Verdict, float]:
    """Lower-side oracle: record the consensus point, cut if it is infeasible."""
    constraint = instance.constraints[state.agent_id - 1]
    g_max, y_star = solve_llp(constraint, x_new)
    verdict = feasibility_verdict(g_max, tol)
    state.x_tilde = np.array(x_new, dtype=float)
    if verdict is Verdict.VIOLATED:
        _append_scenario(state.lower_scenarios, y_star)
    return verdict, g_max


def dubd_oracle(
    state: AgentState, instance: ProblemInstance, z_new: Vector, r: float, tol: float = 0.0
) -> tuple[Verdict, float]:
    """Upper-side oracle: cut on violation, shrink epsilon by r on feasibility."""
    if r <= 1.0:
        raise ValueError("reduction parameter r must exceed 1")
    constraint = instance.constraints[state.agent_id - 1]
    g_max, y_star = solve_llp(constraint, z_new)
    verdict = feasibility_verdict(g_max, tol)
    if verdict is Verdict.VIOLATED:
        _append_scenario(state.upper_scenarios, y_star)
        state.x_bar = INFEASIBLE
    else:
        state.epsilon = state.epsilon / r
        state.x_bar = np.array(z_new, dtype=float)
    return verdict, g_max


def lower_cuts(state: AgentState) -> list[Cut]:
    return [(state.agent_id, k, y, 0.0) for k, y in enumerate(state.lower_scenarios)]


def upper_cuts(state: AgentState) -> list[Cut]:
    return [(state.agent_id, k, y, -state.epsilon) for k, y in enumerate(state.upper_scenarios)]


def build_lower_subproblem(states, instance: ProblemInstance) -> FiniteSubproblem:
    cuts: list[Cut] = []
    for state in states:
        cuts.extend(lower_cuts(state))
    return build_subproblem(instance, cuts)


def build_upper_subproblem(states, instance: ProblemInstance) -> FiniteSubproblem:
    cuts: list[Cut] = []
    for state in states:
        cuts.extend(upper_cuts(state))
    return build_subproblem(instance, cuts)


def bound_values(states, instance: ProblemInstance) -> tuple[float, float]:
    """(lower, upper) objective sums; upper is +inf while any x_bar is the sentinel."""
    lower = 0.0
    upper = 0.0
    for state in states:
        f = instance.objectives[state.agent_id - 1]
        lower += f.evaluate(state.x_tilde)
        if state.x_bar is INFEASIBLE or state.x_bar is None:
            upper = math.inf
        elif math.isfinite(upper):
            upper += f.evaluate(state.x_bar)
    return lower, upper
