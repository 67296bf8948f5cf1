import random
from fractions import Fraction

import pytest

import pebbling as pb
from conftest import all_counts, naive_solvable, root_zero_counts
from pebbling.errors import ResourceLimitError


def replay(g, p, witness):
    cur = p
    for u, v in witness:
        cur = pb.apply_move(g, cur, u, v)
    return cur


class TestPotential:
    def test_pebble_on_root(self, p3):
        assert pb.potential(p3, pb.configuration(p3, {p3.root: 1})) == 1

    def test_far_stack_on_rooted_cube(self):
        g4 = pb.rooted_cube(4)
        z = g4.vertex_by_label("z")
        assert pb.potential(g4, pb.configuration(g4, {z: 15})) == Fraction(15, 16)

    def test_path(self, p3):
        assert pb.potential(p3, pb.configuration(p3, (3, 0, 0))) == Fraction(3, 4)


class TestIsSolvable:
    def test_root_occupied(self, c5):
        p = pb.configuration(c5, {0: 1, 3: 2})
        assert pb.is_solvable(c5, p).solvable

    def test_c5_two_stuck_stacks(self, c5):
        p = pb.configuration(c5, {2: 2, 3: 2})
        out = pb.is_solvable(c5, p)
        assert not out.solvable
        assert pb.potential(c5, p) >= 1  # pruning alone cannot explain this verdict

    def test_lemma5_two_singles_and_a_far_stack(self, lemma5_graph):
        g = lemma5_graph
        p = pb.configuration(
            g, {g.vertex_by_label("x_1"): 1, g.vertex_by_label("x_2"): 1, g.vertex_by_label("z"): 8}
        )
        assert pb.is_solvable(g, p).solvable

    def test_p3_three_and_one(self, p3):
        # exhaustive reference: (3,1,0) empties into (1,2,0) then (1,0,1)
        p = pb.configuration(p3, (3, 1, 0))
        assert naive_solvable(p3, p.counts)
        assert pb.is_solvable(p3, p).solvable

    def test_empty_is_unsolvable(self, c4):
        assert not pb.is_solvable(c4, pb.empty_configuration(c4)).solvable

    def test_agrees_with_reference_exhaustively(self, p3, c4, fig2):
        for g, top in ((p3, 6), (c4, 6), (fig2, 5)):
            for size in range(0, top + 1):
                for counts in all_counts(g.vertex_count, size):
                    got = pb.Solver(g).decide(counts)
                    assert got == naive_solvable(g, counts), (g, counts)

    def test_tfold(self, p3):
        assert pb.is_solvable(p3, pb.configuration(p3, (0, 4, 0)), t=2).solvable
        assert not pb.is_solvable(p3, pb.configuration(p3, (0, 3, 0)), t=2).solvable
        assert pb.is_solvable(p3, pb.configuration(p3, (0, 2, 1)), t=2).solvable
        assert not pb.is_solvable(p3, pb.configuration(p3, (3, 0, 1)), t=2).solvable

    def test_tfold_agrees_with_reference(self, c4):
        for size in range(0, 7):
            for counts in all_counts(4, size):
                assert pb.Solver(c4, target=2).decide(counts) == naive_solvable(c4, counts, t=2)

    def test_resource_limit_is_an_error(self, c5):
        solver = pb.Solver(c5, limits=pb.SearchLimits(max_nodes=1))
        with pytest.raises(ResourceLimitError):
            solver.decide((0, 1, 2, 2, 1))

    def test_stats_counted(self, c5):
        out = pb.is_solvable(c5, pb.configuration(c5, {2: 2, 3: 2}))
        assert out.stats.nodes > 0


class TestWitness:
    def test_replay_reaches_root(self, c5, q3):
        for g, spots in ((c5, {1: 2}), (c5, {2: 4}), (q3, {7: 8}), (q3, {3: 2, 5: 2})):
            p = pb.configuration(g, spots)
            out = pb.is_solvable(g, p, want_witness=True)
            assert out.solvable and out.witness is not None
            assert replay(g, p, out.witness).on(g.root) >= 1

    def test_unsolvable_has_no_witness(self, c5):
        out = pb.is_solvable(c5, pb.configuration(c5, {2: 2, 3: 2}), want_witness=True)
        assert not out.solvable and out.witness is None

    def test_trivial_witness_is_empty(self, c5):
        out = pb.is_solvable(c5, pb.configuration(c5, {0: 1}), want_witness=True)
        assert out.witness == ()

    def test_tfold_witness(self, p3):
        p = pb.configuration(p3, (8, 0, 0))
        out = pb.is_solvable(p3, p, t=2, want_witness=True)
        assert out.solvable
        assert replay(p3, p, out.witness).on(p3.root) >= 2


class TestPathExactness:
    """On end-rooted paths, solvability is exactly w(p) >= 2^k for the
    doubling weights; checked fully for k <= 4, sampled for k = 5, 6."""

    @staticmethod
    def weighted(counts, k):
        return sum(c * (1 << i) for i, c in enumerate(counts[:k]))

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    def test_full(self, k):
        g = pb.path_graph(k)
        solver = pb.Solver(g)
        for size in range(0, (1 << k) + 1):
            for counts in root_zero_counts(g, size):
                assert solver.decide(counts) == (self.weighted(counts, k) >= 1 << k)

    @pytest.mark.parametrize("k", [5, 6])
    def test_sampled(self, k):
        rng = random.Random(20_000 + k)
        g = pb.path_graph(k)
        solver = pb.Solver(g)
        for _ in range(500):
            size = rng.randint(0, 1 << k)
            counts = [0] * (k + 1)
            for _ in range(size):
                counts[rng.randrange(k)] += 1
            assert solver.decide(tuple(counts)) == (self.weighted(counts, k) >= 1 << k)
