from fractions import Fraction

import pytest

import pebbling as pb
from conftest import naive_pi_rooted, naive_solvable, root_zero_counts
from pebbling import pebbling_number as engine


def fresh(builder, *args, **kwargs):
    """Bypass the structural result cache so scans really run."""
    engine._PI_CACHE.clear()
    return builder(*args, **kwargs)


class TestPiRooted:
    def test_p3_end(self, p3):
        assert pb.pi_rooted(p3).value == 4

    def test_q3(self, q3):
        assert pb.pi_rooted(q3).value == 8

    def test_c5(self, c5):
        assert pb.pi_rooted(c5).value == 5

    def test_agrees_with_reference(self):
        cases = [
            pb.path_graph(1),
            pb.path_graph(2),
            pb.path_graph(3),
            pb.cycle_graph(3),
            pb.cycle_graph(4),
            pb.cycle_graph(5),
            pb.cycle_graph(6),
            pb.named_graph("fig2"),
            pb.build_graph(4, [(0, 1), (0, 2), (0, 3)], root=1),  # star rooted at a leaf
            pb.build_graph(5, [(0, 1), (1, 2), (1, 3), (3, 4)], root=0),
        ]
        for g in cases:
            assert fresh(pb.pi_rooted, g).value == naive_pi_rooted(g), g.edges

    def test_symmetry_off_matches(self, c5, q3):
        for g in (c5, q3):
            assert fresh(pb.pi_rooted, g, use_symmetry=False).value == pb.pi_rooted(g).value

    def test_witness_properties(self, c5, q3, p3):
        for g in (p3, c5, q3):
            res = pb.pi_rooted(g)
            w = res.witness_unsolvable
            assert w.size == res.value - 1
            assert w.on(g.root) == 0
            assert not pb.is_solvable(g, w).solvable
            assert not naive_solvable(g, w.counts)

    def test_scan_record(self, c5):
        res = pb.pi_rooted(c5)
        sizes = res.exhaustiveness.sizes
        assert sizes[0] == 2 ** pb.eccentricity(c5, c5.root)
        assert sizes[-1] == res.value
        assert list(sizes) == list(range(sizes[0], res.value + 1))

    def test_diameter_lower_bound_invariant(self):
        for g in [pb.path_graph(3), pb.cycle_graph(5), pb.cycle_graph(7), pb.hypercube(3), pb.lollipop(1, 4)]:
            assert pb.pi_rooted(g).value >= 2 ** pb.diameter(g)

    def test_path_powers(self):
        for k in range(1, 6):
            assert pb.pi_rooted(pb.path_graph(k)).value == 2**k

    def test_odd_cycle_formula_small(self):
        for k in (1, 2, 3):
            assert pb.pi_rooted(pb.cycle_graph(2 * k + 1)).value == 2 * (2 ** (k + 1) // 3) + 1

    def test_stop_rule_documented_sizes_are_clean_beyond(self, c4):
        # levels past the first clean one stay clean
        value = pb.pi_rooted(c4).value
        for s in (value, value + 1, value + 2):
            assert all(naive_solvable(c4, c) for c in root_zero_counts(c4, s))

    def test_threads_give_identical_results(self):
        g = pb.build_graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)], root=0)
        sequential = fresh(pb.pi_rooted, g, threads=1)
        parallel = fresh(pb.pi_rooted, g, threads=2)
        assert sequential.value == parallel.value == 5
        assert sequential.witness_unsolvable.counts == parallel.witness_unsolvable.counts

    def test_wall_clock_cap_raises(self):
        from pebbling.errors import ResourceLimitError

        engine._PI_CACHE.clear()
        with pytest.raises(ResourceLimitError):
            pb.pi_rooted(pb.hypercube(4), limits=pb.SearchLimits(max_seconds=0.3))
        engine._PI_CACHE.clear()


class TestPiGlobal:
    def test_c5_via_certified_transitivity(self, c5):
        assert pb.pi_global(c5) == 5

    def test_p3_loops_all_roots(self, p3):
        best = max(
            naive_pi_rooted(pb.build_graph(3, [(0, 1), (1, 2)], root=r)) for r in range(3)
        )
        assert pb.pi_global(p3) == best == 4

    def test_q3(self, q3):
        assert pb.pi_global(q3) == 8


class TestClass0:
    def test_q3_true(self, q3):
        assert pb.is_class0(q3)

    def test_p3_false(self, p3):
        assert not pb.is_class0(p3)

    def test_c5_true(self, c5):
        assert pb.is_class0(c5)


class TestMaxUnsolvableWeight:
    def test_p3_doubling_weights(self, p3):
        w = pb.weight_function(p3, (1, 2, 0))
        worst, achiever = pb.max_unsolvable_weight(p3, w, size_bound=3)
        assert worst == 3
        assert achiever.counts == (3, 0, 0)

    def test_p2(self, p2):
        w = pb.weight_function(p2, (1, 0))
        worst, achiever = pb.max_unsolvable_weight(p2, w, size_bound=1)
        assert worst == 1 and achiever.counts == (1, 0)

    def test_fig2_is_tight(self, fig2):
        _, w = pb.construction("fig2")
        bound = pb.pi_rooted(fig2).value - 1
        worst, achiever = pb.max_unsolvable_weight(fig2, w, bound)
        # independent recomputation over every unsolvable configuration
        best = Fraction(0)
        for size in range(0, bound + 1):
            for counts in root_zero_counts(fig2, size):
                if not naive_solvable(fig2, counts):
                    value = sum(c * w.weights[v] for v, c in enumerate(counts))
                    best = max(best, value)
        assert worst == best == Fraction(11, 3)
        assert not naive_solvable(fig2, achiever.counts)
        assert sum(c * w.weights[v] for v, c in enumerate(achiever.counts)) == worst

    def test_achiever_is_unsolvable(self, c5):
        _, w = pb.construction("cycle_combined", 2)
        worst, achiever = pb.max_unsolvable_weight(c5, w, size_bound=4)
        assert not pb.is_solvable(c5, achiever).solvable
        assert worst <= w.total

    def test_asymmetric_weights_disable_reduction_but_stay_exact(self, q3):
        # weight function not constant on orbits: reduction must not be used
        w = pb.weight_function(q3, (0, 8, 4, 2, 2, 1, 1, 1))
        worst, achiever = pb.max_unsolvable_weight(q3, w, size_bound=7)
        best = Fraction(0)
        for size in range(0, 8):
            for counts in root_zero_counts(q3, size):
                if not naive_solvable(q3, counts):
                    best = max(best, sum(c * w.weights[v] for v, c in enumerate(counts)))
        assert worst == best
