"""Graph containers, constructions, products, and serialization formats."""

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from smallmotion.graphcore import (Graph, InfParams, PairPartition,
                                   alternate_matching, antipodal_matching,
                                   are_isomorphic, canonical_connection_set,
                                   cartesian_product, circulant_graph,
                                   complete_bipartite, complete_graph,
                                   construction, cycle_graph, empty_graph,
                                   from_edge_list, from_graph6, inf_graph,
                                   invariant_graphs_under, lex_product,
                                   matching_graph, parse_graph,
                                   petersen_graph, prism_graph, px_graph,
                                   quotient_graph, spx_graph, to_edge_list,
                                   to_graph6)
from smallmotion.grouptables import tau_cross_sym
from smallmotion.permcore import Permutation


def random_graph(rng, n, p=0.5):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.random() < p]
    return Graph.from_edges(n, edges)


@st.composite
def graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    all_pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(all_pairs),
                         max_size=len(all_pairs)))
    return Graph.from_edges(n, [e for e, b in zip(all_pairs, mask) if b])


def to_nx(graph):
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    g.add_edges_from(graph.edges())
    return g


class TestGraphBasics:
    def test_from_edges_and_queries(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2)])
        assert g.has_edge(0, 1) and g.has_edge(1, 0)
        assert not g.has_edge(0, 2)
        assert g.neighbors(1) == [0, 2]
        assert g.degree(1) == 2 and g.degree(3) == 0
        assert g.num_edges() == 2

    def test_rejects_loops(self):
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(1, 1)])

    @given(graphs())
    def test_complement_involution(self, g):
        assert g.complement().complement() == g

    @given(graphs(min_n=2))
    def test_complement_degrees(self, g):
        for v in range(g.n):
            assert g.degree(v) + g.complement().degree(v) == g.n - 1

    def test_relabel_is_action(self):
        rng = random.Random(1)
        for _ in range(20):
            n = rng.randint(2, 8)
            g = random_graph(rng, n)
            p = Permutation(rng.sample(range(n), n))
            h = g.relabel(p)
            for u, v in itertools.combinations(range(n), 2):
                assert g.has_edge(u, v) == h.has_edge(p(u), p(v))

    def test_is_automorphism(self):
        c4 = cycle_graph(4)
        assert c4.is_automorphism(Permutation([1, 2, 3, 0]))
        assert not c4.is_automorphism(Permutation([1, 0, 2, 3]))

    def test_induced_subgraph(self):
        g = cycle_graph(5)
        sub, verts = g.induced_subgraph([0, 1, 2])
        assert verts == (0, 1, 2)
        assert sub.edges() == [(0, 1), (1, 2)]


class TestNamedFamilies:
    def test_complete_and_empty(self):
        assert complete_graph(5).num_edges() == 10
        assert empty_graph(5).num_edges() == 0
        assert complete_graph(4).complement() == empty_graph(4)

    def test_cycle(self):
        c6 = cycle_graph(6)
        assert c6.num_edges() == 6
        assert all(c6.degree(v) == 2 for v in range(6))

    def test_circulant_canonicalization(self):
        assert canonical_connection_set(8, [1, 7, 3]) == frozenset({1, 3})
        assert circulant_graph(8, [1, 7]) == cycle_graph(8)
        assert circulant_graph(5, [1, 2]) == complete_graph(5)

    def test_circulant_rejects_bad_set(self):
        with pytest.raises(ValueError):
            circulant_graph(6, [0])
        with pytest.raises(ValueError):
            circulant_graph(6, [6])

    def test_complete_bipartite_and_matching(self):
        k33 = complete_bipartite(3, 3)
        assert k33.num_edges() == 9
        m3 = matching_graph(3)
        assert m3.n == 6 and m3.num_edges() == 3
        assert all(m3.degree(v) == 1 for v in range(6))

    def test_petersen(self):
        p = petersen_graph()
        assert p.n == 10 and p.num_edges() == 15
        assert nx.is_isomorphic(to_nx(p), nx.petersen_graph())

    def test_prism(self):
        pr = prism_graph(4)
        assert are_isomorphic(pr, cartesian_product(complete_graph(4),
                                                    complete_graph(2)))


class TestProducts:
    def test_lex_product_edge_rule(self):
        rng = random.Random(2)
        for _ in range(10):
            delta = random_graph(rng, rng.randint(1, 4))
            theta = random_graph(rng, rng.randint(1, 4))
            g = lex_product(delta, theta)
            m = delta.n
            assert g.n == m * theta.n
            for x in range(g.n):
                for y in range(x + 1, g.n):
                    bx, ix = divmod(x, m)
                    by, iy = divmod(y, m)
                    want = (theta.has_edge(bx, by) if bx != by
                            else delta.has_edge(ix, iy))
                    assert g.has_edge(x, y) == want

    def test_lex_against_networkx(self):
        rng = random.Random(3)
        for _ in range(10):
            delta = random_graph(rng, rng.randint(2, 4))
            theta = random_graph(rng, rng.randint(2, 4))
            ours = to_nx(lex_product(delta, theta))
            # networkx composes outer-first, so the roles swap
            theirs = nx.lexicographic_product(to_nx(theta), to_nx(delta))
            assert nx.is_isomorphic(ours, theirs)

    def test_cartesian_against_networkx(self):
        rng = random.Random(4)
        for _ in range(10):
            g1 = random_graph(rng, rng.randint(2, 4))
            g2 = random_graph(rng, rng.randint(2, 4))
            assert nx.is_isomorphic(
                to_nx(cartesian_product(g1, g2)),
                nx.cartesian_product(to_nx(g1), to_nx(g2)))

    def test_quotient(self):
        c6 = cycle_graph(6)
        q = quotient_graph(c6, [(0, 3), (1, 4), (2, 5)])
        assert are_isomorphic(q, cycle_graph(3))


class TestPairPartition:
    def test_partner_and_validation(self):
        pp = alternate_matching(6)
        assert pp.pairs == ((0, 1), (2, 3), (4, 5))
        assert pp.partner(2) == 3 and pp.partner(3) == 2
        assert pp.contains_pair(4, 5) and not pp.contains_pair(1, 2)
        with pytest.raises(ValueError):
            PairPartition.from_pairs(4, [(0, 1), (1, 2)])

    def test_antipodal(self):
        pp = antipodal_matching(6)
        assert pp.pairs == ((0, 3), (1, 4), (2, 5))

    def test_preserved_by(self):
        pp = alternate_matching(4)
        assert pp.is_preserved_by(Permutation([1, 0, 2, 3]))
        assert pp.is_preserved_by(Permutation([2, 3, 0, 1]))
        assert not pp.is_preserved_by(Permutation([0, 2, 1, 3]))


class TestInfGraphs:
    def test_rejects_bad_params(self):
        with pytest.raises(ValueError):
            InfParams(2, 0, 2)
        with pytest.raises(ValueError):
            InfParams(1, 0, 1)

    def test_fibre_structure(self):
        sigma = cycle_graph(4)
        pairs = alternate_matching(4)
        m = 3
        g = inf_graph(InfParams(1, 0, m), sigma, pairs)
        assert g.n == 4 * m
        # fibre i occupies [i*m, (i+1)*m); kappa=0 means fibres are cocliques
        for i in range(4):
            for a, b in itertools.combinations(range(i * m, (i + 1) * m), 2):
                assert not g.has_edge(a, b)

    def test_kappa_makes_fibres_complete(self):
        sigma = cycle_graph(4)
        g = inf_graph(InfParams(1, 1, 2), sigma, alternate_matching(4))
        for i in range(4):
            assert g.has_edge(2 * i, 2 * i + 1)

    def test_spx_identity(self):
        # the smallest split-praeger-xu style graph coincides with the
        # lambda=1, kappa=0 construction over an even cycle
        for r in (3, 4):
            spx = spx_graph(r)
            built = inf_graph(InfParams(1, 0, 2), cycle_graph(2 * r),
                              alternate_matching(2 * r))
            assert are_isomorphic(spx, built)

    def test_px_identity(self):
        for r in (3, 4, 5):
            assert are_isomorphic(px_graph(r),
                                  lex_product(empty_graph(2), cycle_graph(r)))

    def test_construction_dispatch(self):
        g = construction("circulant", {"n": 7, "set": [1, 2]})
        assert g == circulant_graph(7, [1, 2])
        with pytest.raises(ValueError):
            construction("nonsense", {})


class TestInvariantGraphs:
    def test_orbits_give_distinct_graphs(self):
        z = tau_cross_sym(3)
        found = invariant_graphs_under(z)
        assert len(found) == len({g for g in found})
        for g in found:
            for gen in z.generators:
                assert g.is_automorphism(gen)

    def test_count_for_pair_swap_times_sym(self):
        # edge orbits of <tau> x Sym(m): within-fibre, matched cross,
        # unmatched cross -> 2^3 graphs including empty and complete
        z = tau_cross_sym(3)
        assert len(invariant_graphs_under(z)) == 8


class TestSerialization:
    @given(graphs())
    def test_graph6_roundtrip(self, g):
        assert from_graph6(to_graph6(g)) == g

    @given(graphs())
    def test_graph6_matches_networkx(self, g):
        assert to_graph6(g) == nx.to_graph6_bytes(
            to_nx(g), header=False).decode().strip()

    @given(graphs())
    def test_edge_list_roundtrip(self, g):
        assert from_edge_list(to_edge_list(g)) == g

    def test_parse_graph_dispatch(self):
        c5 = cycle_graph(5)
        assert parse_graph(to_graph6(c5)) == c5
        assert parse_graph(to_edge_list(c5)) == c5


class TestIsomorphism:
    def test_against_networkx(self):
        rng = random.Random(5)
        for _ in range(60):
            n = rng.randint(2, 7)
            g1 = random_graph(rng, n)
            g2 = random_graph(rng, n)
            assert (are_isomorphic(g1, g2) is not None) == \
                   nx.is_isomorphic(to_nx(g1), to_nx(g2))

    def test_witness_is_isomorphism(self):
        rng = random.Random(6)
        for _ in range(30):
            n = rng.randint(2, 8)
            g1 = random_graph(rng, n)
            p = Permutation(rng.sample(range(n), n))
            g2 = g1.relabel(p)
            f = are_isomorphic(g1, g2)
            assert f is not None
            assert g1.relabel(f) == g2
