"""Deterministic simulator and solver for distributed robust convex optimization.

Agents cooperatively minimize a sum of convex objectives under per-agent
semi-infinite constraints by exchanging scenario cuts over a time-varying
directed network, with finite-time distributed termination detection.
"""

from .agents import INFEASIBLE, AgentState, dlbd_oracle, dubd_oracle
from .bounds import method1_accuracy, method2_accuracy
from .graph import GraphSchedule, complete, customized, directed_cycle
from .llp import Verdict, feasibility_verdict, solve_llp
from .problem import (
    ProblemInstance,
    case_study_instance,
    check_interior_point,
    example1_constraint,
)
from .sim import RunParams, RunResult, run, trace
from .solver import FiniteSubproblem, SolveReport, Tolerances, solve

__all__ = [
    "INFEASIBLE",
    "AgentState",
    "FiniteSubproblem",
    "GraphSchedule",
    "ProblemInstance",
    "RunParams",
    "RunResult",
    "SolveReport",
    "Tolerances",
    "Verdict",
    "case_study_instance",
    "check_interior_point",
    "complete",
    "customized",
    "directed_cycle",
    "dlbd_oracle",
    "dubd_oracle",
    "example1_constraint",
    "feasibility_verdict",
    "method1_accuracy",
    "method2_accuracy",
    "run",
    "solve",
    "solve_llp",
    "trace",
]

__version__ = "0.1.0"
