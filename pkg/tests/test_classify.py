"""Motion-2/4 decomposition, paired-fibre criteria, and the corpus driver."""

import itertools

import pytest

from smallmotion.autengine import is_vertex_transitive, motion
from smallmotion.classify import (CorpusSpec, NotVertexTransitiveError,
                                  corpus_generators, decompose,
                                  decompose_motion2, decompose_motion4,
                                  inf_is_vertex_transitive_predicted,
                                  inf_motion2_predicted, named_graph,
                                  pair_transposition_in_aut, sigma_matchings,
                                  verify_corpus, verify_graph)
from smallmotion.graphcore import (InfParams, are_isomorphic, complete_graph,
                                   cycle_graph, empty_graph, inf_graph,
                                   lex_product, path_graph, prism_graph,
                                   spx_graph, to_graph6)


def inf_grid():
    """Every (lambda, kappa, sigma, matching, m) instance of the small grid."""
    for token in ("cycle:4", "cycle:6", "cycle:8", "prism:3"):
        sigma = named_graph(token)
        for mname, pairs in sigma_matchings(token):
            for lam, kap in itertools.product((0, 1), repeat=2):
                for m in (2, 3):
                    yield token, mname, InfParams(lam, kap, m), sigma, pairs


class TestMotion2Decomposition:
    def test_complete_graph_is_true_twins(self):
        rep = decompose_motion2(complete_graph(4))
        assert rep.form == "lex_Km" and rep.m == 4
        assert rep.theta.n == 1
        assert rep.verified

    def test_c4_is_false_twins(self):
        rep = decompose_motion2(cycle_graph(4))
        assert rep.form == "lex_mK1" and rep.m == 2
        assert rep.verified

    def test_blown_up_cycle(self):
        g = lex_product(empty_graph(3), cycle_graph(5))
        rep = decompose_motion2(g)
        assert rep.form == "lex_mK1" and rep.m == 3
        assert are_isomorphic(rep.theta, cycle_graph(5)) is not None
        assert rep.verified

    def test_roundtrip_random_lex(self):
        for theta in (cycle_graph(5), cycle_graph(6), complete_graph(3)):
            for m in (2, 3):
                for fibre, tag in ((complete_graph(m), "lex_Km"),
                                   (empty_graph(m), "lex_mK1")):
                    g = lex_product(fibre, theta)
                    rep = decompose_motion2(g)
                    assert rep.form == tag
                    assert rep.verified

    def test_rejects_twinless_graph(self):
        with pytest.raises(ValueError):
            decompose_motion2(cycle_graph(5))

    def test_rejects_non_vertex_transitive(self):
        with pytest.raises(NotVertexTransitiveError):
            decompose_motion2(path_graph(4))


class TestMotion4Decomposition:
    def test_c5(self):
        rep = decompose_motion4(cycle_graph(5))
        assert rep.form == "lex_C5" and rep.verified

    def test_lex_c5(self):
        rep = decompose_motion4(lex_product(cycle_graph(5),
                                            complete_graph(2)))
        assert rep.form == "lex_C5" and rep.verified

    def test_prism(self):
        rep = decompose_motion4(prism_graph(3))
        assert rep.form == "lex_prism" and rep.m == 3 and rep.verified

    def test_c6_is_coprism(self):
        rep = decompose_motion4(cycle_graph(6))
        assert rep.form == "lex_coprism" and rep.m == 3 and rep.verified

    def test_spx_is_paired_fibre(self):
        rep = decompose_motion4(spx_graph(3))
        assert rep.form == "inf"
        assert (rep.lam, rep.kap) == (1, 0)
        assert rep.m == 2
        assert are_isomorphic(rep.sigma, cycle_graph(6)) is not None
        assert rep.verified

    def test_inf_instances_recovered(self):
        for token, mname, params, sigma, pairs in inf_grid():
            g = inf_graph(params, sigma, pairs)
            if not is_vertex_transitive(g) or motion(g) != 4:
                continue
            rep = decompose_motion4(g)
            assert rep.form != "unclassified", (token, mname, params)
            assert rep.verified, (token, mname, params)

    def test_dispatch(self):
        assert decompose(cycle_graph(4)).form == "lex_mK1"
        assert decompose(cycle_graph(5)).form == "lex_C5"
        with pytest.raises(ValueError):
            decompose(cycle_graph(7))


class TestInfIdentities:
    def test_complement_identity(self):
        # vertex-indexed equality, not just isomorphism
        for token, mname, params, sigma, pairs in inf_grid():
            g = inf_graph(params, sigma, pairs)
            flipped = InfParams((params.lam + 1) % 2, (params.kap + 1) % 2,
                                params.m)
            assert g.complement() == inf_graph(flipped, sigma.complement(),
                                               pairs), (token, mname, params)

    def test_edge_pruning_identity(self):
        # an edge of sigma joining a matched pair never affects the result
        for token, mname, params, sigma, pairs in inf_grid():
            g = inf_graph(params, sigma, pairs)
            for a, b in pairs.pairs:
                if sigma.has_edge(a, b):
                    pruned = sigma.with_edge_removed(a, b)
                    assert inf_graph(params, pruned, pairs) == g, \
                        (token, mname, params, (a, b))


class TestPairedFibreCriteria:
    def test_pair_transposition(self):
        sigma = named_graph("cycle:6")
        for name, pairs in sigma_matchings("cycle:6"):
            has = pair_transposition_in_aut(sigma, pairs)
            # no single transposition fixes a 6-cycle
            assert not has
        sigma = named_graph("prism:3")
        rungs = dict(sigma_matchings("prism:3"))["rungs"]
        assert not pair_transposition_in_aut(sigma, rungs)

    def test_vertex_transitivity_prediction(self):
        for token, mname, params, sigma, pairs in inf_grid():
            g = inf_graph(params, sigma, pairs)
            assert is_vertex_transitive(g) == \
                   inf_is_vertex_transitive_predicted(sigma, pairs), \
                   (token, mname, params)

    def test_motion_dichotomy_readings(self):
        """Both readings of the motion-2 criterion, compared per instance.

        The computed motions decide which reading is faithful.  Outcome on
        this grid: for m >= 3 the parity reading ("unequal") matches every
        instance and the "equal" reading is refuted; at m = 2 the small
        fibres admit extra motion-2 collapses even when the bits agree.
        """
        misses = {"equal": [], "unequal": []}
        exercised = 0
        for token, mname, params, sigma, pairs in inf_grid():
            g = inf_graph(params, sigma, pairs)
            if not is_vertex_transitive(g):
                continue
            mu = motion(g)
            exercised += 1
            for reading in misses:
                pred = inf_motion2_predicted(params, sigma, pairs, reading)
                if pred != (mu == 2):
                    misses[reading].append((token, mname, params))
        assert exercised >= 20
        assert not [t for t in misses["unequal"] if t[2].m >= 3]
        assert [t for t in misses["equal"] if t[2].m >= 3]
        # the m = 2 exceptions are exactly the equal-bit antipodal 4-cycles
        assert all(p.m == 2 and p.lam == p.kap and mn == "antipodal"
                   for _, mn, p in misses["unequal"])


class TestCorpus:
    def test_named_graph_tokens(self):
        assert named_graph("complete:4") == complete_graph(4)
        assert named_graph("cycle:6") == cycle_graph(6)
        assert named_graph("circulant:7:1-2").num_edges() == 14
        with pytest.raises(ValueError):
            named_graph("widget:3")

    def test_corpus_is_deterministic(self):
        spec = CorpusSpec(circulant_max=8)
        first = [(label, to_graph6(g)) for label, g in corpus_generators(spec)]
        second = [(label, to_graph6(g)) for label, g in corpus_generators(spec)]
        assert first == second

    def test_verify_graph_record(self):
        rec = verify_graph(("cycle:5", cycle_graph(5)))
        assert rec.vertex_transitive and rec.motion == 4
        assert rec.form == "lex_C5" and rec.verified
        rec = verify_graph(("path:4", path_graph(4)))
        assert not rec.vertex_transitive

    def test_small_corpus_summary(self):
        spec = CorpusSpec(circulant_max=8, inf_sigmas=("cycle:4", "cycle:6"),
                          inf_ms=(2,), lex_thetas=("complete:2",))
        summary = verify_corpus(spec)
        assert summary.ok
        assert not summary.odd_prime_motions
        assert not summary.falsifications
        assert "unclassified" not in summary.form_counts

    def test_parallel_matches_serial(self):
        spec = CorpusSpec(circulant_max=6, inf_sigmas=("cycle:4",),
                          inf_ms=(2,), lex_deltas=("complete:2",),
                          lex_thetas=("complete:2",), invariant_union_ms=())
        serial = verify_corpus(spec, jobs=1)
        parallel = verify_corpus(spec, jobs=2)
        assert [r.as_dict() for r in serial.records] == \
               [r.as_dict() for r in parallel.records]
