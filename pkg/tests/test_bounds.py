import numpy as np
import pytest
from scipy.optimize import linprog

from drcopt.bounds import (
    accuracy_sweep,
    aggregate_gap_load,
    method1_accuracy,
    method2_accuracy,
    neighborhood_weights,
)
from drcopt.graph import complete, customized, directed_cycle, make_schedule

from helpers import box_lp_vertex_max, random_connected_schedule

EPS_F = 0.01


class TestMethod1:
    def test_formula(self):
        assert method1_accuracy(6, 0.01) == pytest.approx(0.06)
        assert method1_accuracy(1, 0.01) == pytest.approx(0.01)
        assert method1_accuracy(50, 0.01) == pytest.approx(0.5)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            method1_accuracy(0, 0.01)
        with pytest.raises(ValueError):
            method1_accuracy(3, 0.0)


class TestWeights:
    def test_static_graph_weights(self):
        assert neighborhood_weights(complete(4)) == [4, 4, 4, 4]
        assert neighborhood_weights(directed_cycle(5)) == [2, 2, 2, 2, 2]
        # customized(4): clique {1,2,3} + pendant 4 on node 3
        assert neighborhood_weights(customized(4)) == [3, 3, 4, 2]

    def test_identity_against_triple_sum(self, rng):
        # w_j must equal the coefficient of e_j in the literal aggregate.
        for _ in range(30):
            schedule = random_connected_schedule(rng)
            weights = neighborhood_weights(schedule)
            gaps = list(rng.uniform(0, 1, size=schedule.m))
            literal = aggregate_gap_load(schedule, gaps)
            assert literal == pytest.approx(sum(w * e for w, e in zip(weights, gaps)))


class TestMethod2:
    def test_complete_closed_form(self):
        for m in range(2, 51):
            assert method2_accuracy(complete(m), EPS_F) == pytest.approx(EPS_F)

    def test_cycle_closed_form(self):
        for m in range(2, 51):
            assert method2_accuracy(directed_cycle(m), EPS_F) == pytest.approx(m * EPS_F / 2)

    def test_single_agent(self):
        schedule = make_schedule(1, [set()])
        assert method2_accuracy(schedule, EPS_F) == pytest.approx(EPS_F)

    def test_customized_between_complete_and_cycle(self):
        for m in range(3, 20):
            mid = method2_accuracy(customized(m), EPS_F)
            assert method2_accuracy(complete(m), EPS_F) <= mid + 1e-12
            assert mid <= method2_accuracy(directed_cycle(m), EPS_F) + 1e-12

    def test_never_exceeds_method1(self, rng):
        for _ in range(20):
            schedule = random_connected_schedule(rng)
            bound = method2_accuracy(schedule, EPS_F)
            assert EPS_F - 1e-12 <= bound <= schedule.m * EPS_F + 1e-12

    def test_greedy_matches_vertex_enumeration(self, rng):
        for generator, m in [(complete, 4), (directed_cycle, 5), (customized, 6)]:
            schedule = generator(m)
            weights = neighborhood_weights(schedule)
            capacity = schedule.m * schedule.window * EPS_F
            brute = box_lp_vertex_max(weights, capacity, EPS_F)
            assert method2_accuracy(schedule, EPS_F) == pytest.approx(brute, abs=1e-12)
        for _ in range(25):
            schedule = random_connected_schedule(rng, m_max=6)
            weights = neighborhood_weights(schedule)
            capacity = schedule.m * schedule.window * EPS_F
            brute = box_lp_vertex_max(weights, capacity, EPS_F)
            assert method2_accuracy(schedule, EPS_F) == pytest.approx(brute, abs=1e-12)

    def test_greedy_matches_linprog(self, rng):
        for _ in range(15):
            schedule = random_connected_schedule(rng)
            weights = neighborhood_weights(schedule)
            capacity = schedule.m * schedule.window * EPS_F
            res = linprog(
                c=[-1.0] * schedule.m,
                A_ub=[weights],
                b_ub=[capacity],
                bounds=[(0.0, EPS_F)] * schedule.m,
                method="highs",
            )
            assert method2_accuracy(schedule, EPS_F) == pytest.approx(-res.fun, abs=1e-9)


class TestSweep:
    def test_rows_and_closed_forms(self):
        rows = accuracy_sweep(
            {"cycle": directed_cycle, "complete": complete}, range(2, 11), EPS_F
        )
        assert len(rows) == 18
        for row in rows:
            assert row.method1_bound == pytest.approx(row.m * EPS_F)
            assert row.centralized == EPS_F
            if row.topology == "cycle":
                assert row.method2_bound == pytest.approx(row.m * EPS_F / 2)
            else:
                assert row.method2_bound == pytest.approx(EPS_F)
