"""Problem instances: convex objectives, semi-infinite constraints, boxes.

An instance bundles m agents, each with a convex local objective f_i(x)
and a constraint g_i(x, y) <= 0 that must hold for every y in a compact
uncertainty box Y_i, plus a shared bounded box on the decision vector.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

Vector = np.ndarray


class NonPositiveSlack(Exception):
    """The supplied point is not a strict interior point of the feasible set."""

    def __init__(self, slack: float):
        super().__init__(f"interior-point slack is {slack:.6g} (must be > 0)")
        self.slack = slack


@dataclass(frozen=True)
class LocalObjective:
    """Convex local objective with an analytic gradient."""

    evaluate: Callable[[Vector], float]
    gradient: Callable[[Vector], Vector]
    kind: str = "custom"
    center: Optional[Vector] = None


def quadratic_distance(center) -> LocalObjective:
    """Objective ||x - center||^2, the case-study form."""
    c = np.asarray(center, dtype=float)

    def evaluate(x: Vector) -> float:
        d = np.asarray(x, dtype=float) - c
        return float(d @ d)

    def gradient(x: Vector) -> Vector:
        return 2.0 * (np.asarray(x, dtype=float) - c)

    return LocalObjective(evaluate, gradient, kind="quadratic-distance", center=c)


@dataclass(frozen=True)
class SemiInfiniteConstraint:
    """Constraint g(x, y) <= 0 for all y in a compact box.

    ``evaluate`` and ``x_gradient`` take (x, y) with y a 1-D array of
    length n_y.  ``analytic_argmax``, when present, maps x to the global
    maximizer of g(x, .) over the uncertainty box.
    """

    evaluate: Callable[[Vector, Vector], float]
    x_gradient: Callable[[Vector, Vector], Vector]
    uncertainty_box: Vector  # shape (n_y, 2)
    concave_in_y: bool = False
    analytic_argmax: Optional[Callable[[Vector], Vector]] = None

    @property
    def n_y(self) -> int:
        return self.uncertainty_box.shape[0]


@dataclass(frozen=True)
class ProblemInstance:
    """A DRCO instance in standard form.

    ``known_optimum`` is optional test metadata (point, objective value);
    the algorithm never reads it.
    """

    n: int
    m: int
    objectives: tuple[LocalObjective, ...]
    constraints: tuple[SemiInfiniteConstraint, ...]
    box: Vector  # shape (n, 2)
    known_optimum: Optional[tuple[Vector, float]] = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("instance needs at least one agent")
        if len(self.objectives) != self.m or len(self.constraints) != self.m:
            raise ValueError("objectives/constraints must have one entry per agent")
        if self.box.shape != (self.n, 2):
            raise ValueError("box must have shape (n, 2)")
        if not np.all(np.isfinite(self.box)) or np.any(self.box[:, 0] > self.box[:, 1]):
            raise ValueError("box must be bounded and nonempty")

    def objective_value(self, x: Vector) -> float:
        return sum(f.evaluate(x) for f in self.objectives)

    def objective_gradient(self, x: Vector) -> Vector:
        g = np.zeros(self.n)
        for f in self.objectives:
            g = g + f.gradient(x)
        return g

    def box_center(self) -> Vector:
        return self.box.mean(axis=1)


CASE_STUDY_CENTERS = ((0.0, 6.0), (0.0, 0.0), (1.0, 1.0), (-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0))
CASE_STUDY_V = (-0.75, -0.5, -0.25, 0.25, 0.5, 0.75)


def paper_quadratic_constraint(v: float, y_bound: float = 1.0) -> SemiInfiniteConstraint:
    """g(x, y) = (x1 - v)^2 + 2*y*x2 - y^2 - 1 over y in [-y_bound, y_bound].

    Concave in y with stationary point y = x2, so the maximizer is the
    clamp of x2 to the uncertainty interval.
    """
    lo, hi = -y_bound, y_bound

    def evaluate(x: Vector, y: Vector) -> float:
        yy = float(y[0])
        return (float(x[0]) - v) ** 2 + 2.0 * yy * float(x[1]) - yy * yy - 1.0

    def x_gradient(x: Vector, y: Vector) -> Vector:
        return np.array([2.0 * (float(x[0]) - v), 2.0 * float(y[0])])

    def analytic_argmax(x: Vector) -> Vector:
        return np.array([min(hi, max(lo, float(x[1])))])

    return SemiInfiniteConstraint(
        evaluate=evaluate,
        x_gradient=x_gradient,
        uncertainty_box=np.array([[lo, hi]]),
        concave_in_y=True,
        analytic_argmax=analytic_argmax,
    )


def example1_constraint(y_upper: float = 2.0) -> SemiInfiniteConstraint:
    """g(x, y) = x2 + (x1^2 - 2*x1) * exp(-x1^2 + y^2 - 2*x1*y) over y in [0, y_upper].

    In y the constraint is x2 + c * exp(y^2 - 2*x1*y - x1^2) with
    c = x1^2 - 2*x1.  For x1 in [0, 2] the coefficient is nonpositive, g
    is concave in y and the maximizer is the clamp of x1 to the box; for
    c > 0 the exponential is convex, so the maximum sits at a box
    endpoint.
    """

    def evaluate(x: Vector, y: Vector) -> float:
        x1, x2, yy = float(x[0]), float(x[1]), float(y[0])
        return x2 + (x1 * x1 - 2.0 * x1) * math.exp(-x1 * x1 + yy * yy - 2.0 * x1 * yy)

    def x_gradient(x: Vector, y: Vector) -> Vector:
        x1, yy = float(x[0]), float(y[0])
        e = math.exp(-x1 * x1 + yy * yy - 2.0 * x1 * yy)
        d1 = (2.0 * x1 - 2.0) * e + (x1 * x1 - 2.0 * x1) * e * (-2.0 * x1 - 2.0 * yy)
        return np.array([d1, 1.0])

    def analytic_argmax(x: Vector) -> Vector:
        x1 = float(x[0])
        if 0.0 <= x1 <= 2.0:
            return np.array([min(y_upper, max(0.0, x1))])
        lo, hi = np.array([0.0]), np.array([y_upper])
        return lo if evaluate(x, lo) >= evaluate(x, hi) else hi

    return SemiInfiniteConstraint(
        evaluate=evaluate,
        x_gradient=x_gradient,
        uncertainty_box=np.array([[0.0, y_upper]]),
        concave_in_y=False,
        analytic_argmax=analytic_argmax,
    )


def case_study_instance() -> ProblemInstance:
    """The 6-agent benchmark: quadratic objectives, quadratic-in-x constraints."""
    objectives = tuple(quadratic_distance(c) for c in CASE_STUDY_CENTERS)
    constraints = tuple(paper_quadratic_constraint(v) for v in CASE_STUDY_V)
    box = np.array([[-2.0, 2.0], [-1.0, 1.0]])
    x_star = np.array([0.0, math.sqrt(7.0) / 4.0])
    f_star = sum(f.evaluate(x_star) for f in objectives)
    return ProblemInstance(
        n=2,
        m=6,
        objectives=objectives,
        constraints=constraints,
        box=box,
        known_optimum=(x_star, f_star),
    )


def check_interior_point(instance: ProblemInstance, x0, llp_solve) -> float:
    """Certify x0 as a strict interior point of every agent's feasible set.

    Returns min_i -g_i^max(x0), the admissible headroom for the initial
    restriction parameters.  Raises :class:`NonPositiveSlack` when x0 is
    infeasible or only boundary-feasible for some agent.
    """
    x0 = np.asarray(x0, dtype=float)
    if np.any(x0 < instance.box[:, 0]) or np.any(x0 > instance.box[:, 1]):
        raise ValueError("x0 must lie inside the instance box")
    slack = math.inf
    for constraint in instance.constraints:
        g_max, _ = llp_solve(constraint, x0)
        slack = min(slack, -g_max)
    if slack <= 0.0:
        raise NonPositiveSlack(slack)
    return slack


def instance_from_config(config: dict) -> ProblemInstance:
    """Build an instance from the JSON configuration schema.

    Built-in kinds only: objectives of kind "quadratic-distance" with a
    center, constraints of kind "paper-quadratic" (field v) or "example1".
    """
    n = int(config["n"])
    m = int(config["m"])
    box = np.asarray(config["box"], dtype=float)
    agents = config["agents"]
    if len(agents) != m:
        raise ValueError(f"config declares m={m} but lists {len(agents)} agents")
    objectives = []
    constraints = []
    for spec in agents:
        obj = spec["objective"]
        if obj["kind"] != "quadratic-distance":
            raise ValueError(f"unknown objective kind {obj['kind']!r}")
        center = np.asarray(obj["center"], dtype=float)
        if center.shape != (n,):
            raise ValueError("objective center has wrong dimension")
        objectives.append(quadratic_distance(center))
        con = spec["constraint"]
        if con["kind"] == "paper-quadratic":
            constraints.append(paper_quadratic_constraint(float(con["v"])))
        elif con["kind"] == "example1":
            constraints.append(example1_constraint(float(con.get("y_upper", 2.0))))
        else:
            raise ValueError(f"unknown constraint kind {con['kind']!r}")
    return ProblemInstance(
        n=n, m=m, objectives=tuple(objectives), constraints=tuple(constraints), box=box
    )
