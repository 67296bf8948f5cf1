import random
from fractions import Fraction
from itertools import combinations

import pytest
from scipy.optimize import linprog

import pebbling as pb
from pebbling.errors import (
    DimensionMismatchError,
    EmptyStrategySetError,
    UnboundedCoverageError,
)
from pebbling.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, linear_program, solve_lp


def two_var_vertex_optimum(rows, rhs):
    """Independent 2-variable reference: enumerate constraint intersections."""
    lines = [(a, b, c) for (a, b), c in zip(rows, rhs)] + [(1, 0, None), (0, 1, None)]
    candidates = [(Fraction(0), Fraction(0))]
    for (a1, b1, c1), (a2, b2, c2) in combinations(lines, 2):
        if c1 is None and c2 is None:
            continue
        # axis lines mean "that variable is 0"
        rows2 = []
        rhs2 = []
        for a, b, c in ((a1, b1, c1), (a2, b2, c2)):
            if c is None:
                rows2.append((a, b))
                rhs2.append(Fraction(0))
            else:
                rows2.append((a, b))
                rhs2.append(Fraction(c))
        det = rows2[0][0] * rows2[1][1] - rows2[0][1] * rows2[1][0]
        if det == 0:
            continue
        x = (rhs2[0] * rows2[1][1] - rows2[0][1] * rhs2[1]) / det
        y = (rows2[0][0] * rhs2[1] - rhs2[0] * rows2[1][0]) / det
        candidates.append((x, y))
    feasible = [
        (x, y)
        for x, y in candidates
        if x >= 0 and y >= 0 and all(a * x + b * y <= c for (a, b), c in zip(rows, rhs))
    ]
    return max(x + y for x, y in feasible)


class TestSolveLp:
    def test_hand_checked_two_variable(self):
        rows = [(2, 1), (1, 2)]
        rhs = [7, 7]
        assert two_var_vertex_optimum(rows, rhs) == Fraction(14, 3)
        sol = solve_lp(linear_program([1, 1], rows, rhs))
        assert sol.status == OPTIMAL
        assert sol.optimum == Fraction(14, 3)
        assert sol.point == (Fraction(7, 3), Fraction(7, 3))

    def test_single_bound(self):
        sol = solve_lp(linear_program([1], [[1]], [3]))
        assert sol.status == OPTIMAL and sol.optimum == 3

    def test_unbounded(self):
        sol = solve_lp(linear_program([1], [], []))
        assert sol.status == UNBOUNDED

    def test_lower_bounded_only_is_unbounded(self):
        # max x subject to x >= 1 (written -x <= -1)
        sol = solve_lp(linear_program([1], [[-1]], [-1]))
        assert sol.status == UNBOUNDED

    def test_infeasible(self):
        # x <= 1 and x >= 3 cannot both hold
        sol = solve_lp(linear_program([1], [[1], [-1]], [1, -3]))
        assert sol.status == INFEASIBLE

    def test_negative_rhs_phase_one(self):
        # x >= 2 (as -x <= -2), x <= 5
        sol = solve_lp(linear_program([1], [[-1], [1]], [-2, 5]))
        assert sol.status == OPTIMAL and sol.optimum == 5

    def test_minimize_direction_via_negation(self):
        sol = solve_lp(linear_program([-1], [[-1], [1]], [-2, 5]))
        assert sol.status == OPTIMAL and sol.optimum == -2

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            linear_program([1, 1], [[1]], [1])

    def test_row_order_independence(self):
        rows = [(2, 1), (1, 2), (1, 1)]
        rhs = [7, 7, 5]
        base = solve_lp(linear_program([1, 1], rows, rhs)).optimum
        for perm in ((1, 0, 2), (2, 1, 0), (1, 2, 0)):
            shuffled = solve_lp(
                linear_program([1, 1], [rows[i] for i in perm], [rhs[i] for i in perm])
            ).optimum
            assert shuffled == base

    def test_duality_certificate(self):
        lp = linear_program([1, 1], [(2, 1), (1, 2)], [7, 7])
        sol = solve_lp(lp)
        assert sol.dual is not None
        assert all(y >= 0 for y in sol.dual)
        assert sum(y * b for y, b in zip(sol.dual, lp.rhs)) == sol.optimum
        for j in range(2):
            assert sum(sol.dual[i] * lp.rows[i][j] for i in range(2)) >= lp.objective[j]

    def test_random_against_scipy(self):
        rng = random.Random(31337)
        for _ in range(60):
            n = rng.randint(1, 4)
            m = rng.randint(1, 5)
            rows = [[Fraction(rng.randint(0, 5)) for _ in range(n)] for _ in range(m)]
            rhs = [Fraction(rng.randint(0, 12)) for _ in range(m)]
            obj = [Fraction(rng.randint(0, 5)) for _ in range(n)]
            # guarantee boundedness: every variable in some positive row
            for j in range(n):
                if all(rows[i][j] == 0 for i in range(m)):
                    rows[rng.randrange(m)][j] = Fraction(rng.randint(1, 5))
            sol = solve_lp(linear_program(obj, rows, rhs))
            assert sol.status == OPTIMAL
            ref = linprog(
                [-float(c) for c in obj],
                A_ub=[[float(x) for x in row] for row in rows],
                b_ub=[float(b) for b in rhs],
                method="highs",
            )
            assert ref.status == 0
            assert abs(float(sol.optimum) + ref.fun) < 1e-7
            # exact feasibility and duality of our certificate
            for row, b in zip(rows, rhs):
                assert sum(a * x for a, x in zip(row, sol.point)) <= b
            if sol.dual is not None:
                assert all(y >= 0 for y in sol.dual)
                assert sum(y * b for y, b in zip(sol.dual, rhs)) == sol.optimum


class TestPebblingBound:
    def test_c5_pair(self, c5):
        a, b = pb.cycle_strategy_pair(2)
        optimum, bound = pb.lp_pebbling_bound(c5, [a, b])
        assert optimum == Fraction(14, 3)
        assert bound == 5

    def test_p3_single_path_strategy(self, p3):
        cert = pb.construction_certificate("path", 2)
        optimum, bound = pb.lp_pebbling_bound(p3, [cert])
        assert optimum == 3 and bound == 4

    def test_q4_uniform(self):
        q4 = pb.hypercube(4)
        cert = pb.construction_certificate("q4star")
        optimum, bound = pb.lp_pebbling_bound(q4, [cert])
        assert optimum == 15 and bound == 16

    def test_odd_cycle_bounds_match_formula(self):
        for k in (1, 2, 3, 4):
            g = pb.cycle_graph(2 * k + 1)
            _, bound = pb.lp_pebbling_bound(g, list(pb.cycle_strategy_pair(k)))
            assert bound == 2 * (2 ** (k + 1) // 3) + 1

    def test_bound_is_sound_for_exhaustive_pi(self):
        for k in (1, 2, 3):
            g = pb.cycle_graph(2 * k + 1)
            _, bound = pb.lp_pebbling_bound(g, list(pb.cycle_strategy_pair(k)))
            assert bound >= pb.pi_rooted(g).value

    def test_optimum_dominates_concrete_unsolvable_sizes(self, c5):
        certs = list(pb.cycle_strategy_pair(2))
        optimum, _ = pb.lp_pebbling_bound(c5, certs)
        witness = pb.pi_rooted(c5).witness_unsolvable
        assert optimum >= witness.size

    def test_empty_set(self, c5):
        with pytest.raises(EmptyStrategySetError):
            pb.lp_pebbling_bound(c5, [])

    def test_uncovered_vertex(self, c5):
        a, _ = pb.cycle_strategy_pair(2)
        with pytest.raises(UnboundedCoverageError):
            pb.lp_pebbling_bound(c5, [a])
