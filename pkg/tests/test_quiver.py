"""Quiver-to-arrangement translation and the cycle properness test."""

from collections import Counter

import pytest

from jkcalc import builders, invariants
from jkcalc.invariants import ValidationError
from jkcalc.quiver import (Quiver, QuiverArrow, QuiverNode, QuiverStability,
                           cycle_condition_check, to_git_problem)


class TestFramedA3:
    def test_weights_match_displayed_integrand(self):
        n, r = 2, 3
        prob = builders.framed_a3_problem(n, r, (1, 1, 1))
        assert prob.rank == n
        assert prob.weyl_order == 2
        assert prob.degree == 3
        counts = Counter((w.rho, w.r_charge) for w in prob.weight_entries)
        # three loops: every ordered pair (m, n); the n diagonal slots share
        # the zero covector
        assert counts[((0,) * n, 1)] == 3 * n
        for m in range(n):
            for nn in range(n):
                if m == nn:
                    continue
                rho = [0] * n
                rho[m] += 1
                rho[nn] -= 1
                assert counts[(tuple(rho), 1)] == 3
        # framing: u_k with multiplicity r
        for k in range(n):
            rho = [0] * n
            rho[k] = 1
            assert counts[(tuple(rho), 0)] == r
        assert len(prob.weight_entries) == 3 * n * n + n * r
        # roots come in +/- pairs, n(n-1) of them
        assert len(prob.roots) == n * (n - 1)
        assert {tuple(-x for x in a) for a in prob.roots} == set(prob.roots)
        assert prob.xi == (1,) * n

    def test_integrand_factors_match_display(self):
        # d^{-N} prod_{i != j} (u_i-u_j)/(d+u_i-u_j) * ((d-u_k)/u_k)^r
        #   * prod_l prod_{m,n} (d-R_l-u_n+u_m)/(R_l+u_n-u_m)
        prob = builders.framed_a3_problem(2, 1, (1, 1, 1))
        ig = invariants.build_integrand(prob, "additive")
        num = Counter()
        den = Counter()
        for f in ig.factors:
            key = (tuple(f.rho), f.const)
            (num if f.exponent > 0 else den)[key] += abs(f.exponent)
        d = 3
        # roots: numerators u_i - u_j, denominators d + u_i - u_j
        assert num[((1, -1), 0)] == 1 and num[((-1, 1), 0)] == 1
        assert den[((1, -1), d)] == 1 and den[((-1, 1), d)] == 1
        # loop diagonal entries: constants (d - R_l) over R_l
        assert num[((0, 0), d - 1)] == 6  # two diagonal slots, three loops
        assert den[((0, 0), 1)] == 6
        # loop off-diagonal with R_l = 1: numerator (d-1) - (u_n - u_m)
        assert num[((1, -1), d - 1)] == 3 and num[((-1, 1), d - 1)] == 3
        assert den[((1, -1), 1)] == 3 and den[((-1, 1), 1)] == 3
        # framing: numerator d - u_k, denominator u_k
        assert num[((-1, 0), d)] == 1 and num[((0, -1), d)] == 1
        assert den[((1, 0), 0)] == 1 and den[((0, 1), 0)] == 1

    def test_rank_one_dt_values(self):
        assert invariants.compute(builders.framed_a3_problem(1, 1), kind="additive").dt == 8
        assert invariants.compute(builders.framed_a3_problem(1, 2), kind="additive").dt == -16


class TestUnframed:
    def test_single_node_point_quotient(self):
        quiver = Quiver(nodes=[QuiverNode("v", 1)], arrows=[])
        prob = to_git_problem(quiver, QuiverStability({"v": 0}), degree=1)
        assert prob.rank == 0
        assert prob.weight_entries == []
        assert invariants.compute(prob, kind="additive").dt == 1

    def test_stability_must_annihilate_diagonal(self):
        quiver = Quiver(nodes=[QuiverNode("a", 1), QuiverNode("b", 1)],
                        arrows=[QuiverArrow("a", "b", 1)])
        with pytest.raises(ValidationError):
            to_git_problem(quiver, QuiverStability({"a": 1, "b": 2}), degree=1)
        prob = to_git_problem(quiver, QuiverStability({"a": 1, "b": -1}), degree=1)
        assert prob.rank == 1

    def test_weight_count_identity(self):
        # #weights = sum over arrows of D_head * D_tail
        quiver = Quiver(
            nodes=[QuiverNode("a", 1), QuiverNode("b", 3)],
            arrows=[QuiverArrow("a", "b", 1), QuiverArrow("a", "b", 0),
                    QuiverArrow("b", "a", 2)])
        prob = to_git_problem(quiver, QuiverStability({"a": 3, "b": -1}), degree=1)
        assert len(prob.weight_entries) == 3 + 3 + 3
        assert len(prob.roots) == 3 * 2
        assert prob.weyl_order == 6


class TestCycleCondition:
    def test_positive_loops_pass(self):
        assert cycle_condition_check(builders.framed_a3_quiver(2, 1, (1, 1, 1))) == "pass"

    def test_zero_loop_fails(self):
        q = Quiver(nodes=[QuiverNode("v", 1), QuiverNode("f", 1, gauged=False)],
                   arrows=[QuiverArrow("v", "v", 0), QuiverArrow("f", "v", 0)])
        assert cycle_condition_check(q) == "fail"

    def test_mixed_signs_inconclusive(self):
        q = Quiver(nodes=[QuiverNode("v", 1)],
                   arrows=[QuiverArrow("v", "v", 1), QuiverArrow("v", "v", -1)])
        assert cycle_condition_check(q) == "inconclusive"

    def test_two_node_cycle(self):
        q = Quiver(nodes=[QuiverNode("a", 1), QuiverNode("b", 1)],
                   arrows=[QuiverArrow("a", "b", 2), QuiverArrow("b", "a", 1)])
        assert cycle_condition_check(q) == "pass"
        q0 = Quiver(nodes=[QuiverNode("a", 1), QuiverNode("b", 1)],
                    arrows=[QuiverArrow("a", "b", 2), QuiverArrow("b", "a", -2)])
        assert cycle_condition_check(q0) == "fail"


class TestQuiverValidation:
    def test_disconnected_rejected(self):
        with pytest.raises(ValueError):
            Quiver(nodes=[QuiverNode("a", 1), QuiverNode("b", 1)], arrows=[])

    def test_missing_node_rejected(self):
        with pytest.raises(ValueError):
            Quiver(nodes=[QuiverNode("a", 1)], arrows=[QuiverArrow("a", "c", 0)])

    def test_needs_gauged_node(self):
        with pytest.raises(ValueError):
            Quiver(nodes=[QuiverNode("a", 1, gauged=False)], arrows=[])
