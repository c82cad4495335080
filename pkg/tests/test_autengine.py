"""Automorphism groups, twins, motion, all cross-checked by brute force."""

import random

import pytest

from smallmotion.autengine import (automorphism_group,
                                   automorphism_group_brute, find_twins,
                                   is_vertex_transitive, motion,
                                   motion_witness)
from smallmotion.graphcore import (Graph, circulant_graph, complete_graph,
                                   cycle_graph, empty_graph, lex_product,
                                   path_graph, petersen_graph, prism_graph,
                                   spx_graph)
from smallmotion.permcore import Permutation


def random_graph(rng, n, p=0.5):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p]
    return Graph.from_edges(n, edges)


class TestAutomorphismGroup:
    def test_matches_brute_force(self):
        rng = random.Random(20)
        for _ in range(40):
            n = rng.randint(2, 8)
            g = random_graph(rng, n, p=rng.choice([0.3, 0.5, 0.7]))
            fast = automorphism_group(g)
            brute = automorphism_group_brute(g)
            assert fast.order == brute.order()
            assert all(h in brute for h in fast.group.generators)

    def test_known_orders(self):
        assert automorphism_group(complete_graph(5)).order == 120
        assert automorphism_group(cycle_graph(6)).order == 12
        assert automorphism_group(petersen_graph()).order == 120
        assert automorphism_group(prism_graph(3)).order == 12
        # lex composition: Sym(2) wr Aut(C5) has order 2^5 * 10
        assert automorphism_group(
            lex_product(complete_graph(2), cycle_graph(5))).order == 320

    def test_complement_has_same_group(self):
        rng = random.Random(21)
        for _ in range(15):
            g = random_graph(rng, rng.randint(2, 8))
            a1 = automorphism_group(g)
            a2 = automorphism_group(g.complement())
            assert a1.order == a2.order
            assert all(h in a2.group for h in a1.group.generators)


class TestTwins:
    def test_true_twins_in_complete(self):
        info = find_twins(complete_graph(4))
        assert info and info.true_twins and not info.false_twins

    def test_false_twins_in_bipartite(self):
        info = find_twins(lex_product(empty_graph(3), cycle_graph(5)))
        assert info.false_twins and not info.true_twins

    def test_no_twins_in_cycle(self):
        assert not find_twins(cycle_graph(5))
        assert not find_twins(petersen_graph())

    def test_twin_transposition_is_automorphism(self):
        rng = random.Random(22)
        for _ in range(20):
            g = random_graph(rng, rng.randint(3, 8))
            info = find_twins(g)
            for u, v in info.all_pairs():
                t = Permutation.from_cycles(g.n, [[u, v]])
                assert g.is_automorphism(t)

    def test_twins_iff_motion_two(self):
        rng = random.Random(23)
        seen_two = 0
        for _ in range(40):
            g = random_graph(rng, rng.randint(3, 8))
            if automorphism_group(g).order == 1:
                continue
            has_twins = bool(find_twins(g))
            mu = motion(g)
            assert has_twins == (mu == 2)
            seen_two += has_twins
        assert seen_two >= 3   # the sample actually exercised both branches


class TestMotion:
    def test_motion_matches_minimal_degree(self):
        rng = random.Random(24)
        for _ in range(25):
            g = random_graph(rng, rng.randint(3, 8))
            aut = automorphism_group(g)
            if aut.order == 1:
                continue
            assert motion(g) == aut.group.minimal_degree()

    def test_witness_properties(self):
        for g in (cycle_graph(5), prism_graph(3), petersen_graph(),
                  complete_graph(6), spx_graph(3)):
            mu, w = motion_witness(g)
            assert g.is_automorphism(w)
            assert len(w.support()) == mu

    def test_known_motions(self):
        assert motion(complete_graph(4)) == 2
        assert motion(cycle_graph(4)) == 2
        assert motion(cycle_graph(5)) == 4
        assert motion(cycle_graph(6)) == 4
        assert motion(prism_graph(3)) == 4
        assert motion(petersen_graph()) == 6
        assert motion(circulant_graph(7, [1, 2])) == 6
        assert motion(spx_graph(3)) == 4

    def test_rigid_graph_rejected(self):
        # smallest rigid graph has 6 vertices; motion is undefined there
        rigid = Graph.from_edges(6, [(0, 3), (1, 2), (1, 3), (1, 5), (2, 3),
                                     (2, 4), (2, 5), (4, 5)])
        assert automorphism_group(rigid).order == 1
        with pytest.raises(ValueError):
            motion(rigid)


class TestVertexTransitive:
    def test_examples(self):
        assert is_vertex_transitive(cycle_graph(7))
        assert is_vertex_transitive(petersen_graph())
        assert is_vertex_transitive(prism_graph(4))
        assert not is_vertex_transitive(path_graph(4))
        assert not is_vertex_transitive(Graph.from_edges(4, [(0, 1)]))

    def test_matches_brute_orbit(self):
        rng = random.Random(25)
        for _ in range(25):
            g = random_graph(rng, rng.randint(2, 7))
            brute = automorphism_group_brute(g)
            assert is_vertex_transitive(g) == brute.is_transitive()
