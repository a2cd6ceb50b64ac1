"""Arrow-relation tiers: certificate, exhaustive search, halving refutation."""

import pytest

from ramsey_lab.arrows import (
    MAX_EXHAUSTIVE_EDGES,
    arrow_certificate_kmn,
    arrow_exhaustive,
    decide_arrow,
    refute_arrow_by_halving,
)
from ramsey_lab.graphs import (
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    sample_gnp,
)
from ramsey_lab.rng import RngStream
from ramsey_lab.witness import PatternSpec, contains_book, contains_kmn


class TestCertificate:
    def test_k6_forces_k12(self):
        # e(K_6) = 15 > 2 * ex(6; K_{1,2}) = 6
        assert arrow_certificate_kmn(complete_graph(6), 1, 2)

    def test_empty_host(self):
        assert not arrow_certificate_kmn(empty_graph(6), 1, 2)

    def test_sparse_host_no_verdict(self):
        assert not arrow_certificate_kmn(cycle_graph(8), 2, 2)

    def test_sound_but_not_complete(self):
        # K_3 -> K_{1,2} holds (exhaustive proves it) but e(K_3) = 3 only
        # meets the bound 2 * 1.5 = 3, it does not beat it
        assert arrow_exhaustive(complete_graph(3), PatternSpec.complete_bipartite(1, 2))
        assert not arrow_certificate_kmn(complete_graph(3), 1, 2)

    def test_big_clique_certified_for_k22(self):
        # e(K_10) = 45 beats 2 * kst(10, 2, 2) = 41.6; K_6 at 15 does not
        assert arrow_certificate_kmn(complete_graph(10), 2, 2)
        assert not arrow_certificate_kmn(complete_graph(6), 2, 2)

    def test_side_swap(self):
        for N in (5, 6, 7):
            F = complete_graph(N)
            assert arrow_certificate_kmn(F, 2, 3) == arrow_certificate_kmn(F, 3, 2)

    def test_validation(self):
        with pytest.raises(ValueError):
            arrow_certificate_kmn(complete_graph(4), 0, 2)

    def test_certificate_sound_on_random_hosts(self):
        # wherever the certificate says yes and the host fits under the
        # enumeration cap, the exact tier confirms it
        root = RngStream(301)
        confirmed = 0
        for i in range(200):
            F = sample_gnp(6, 0.8, root.child(i))
            if F.edge_count > MAX_EXHAUSTIVE_EDGES or not arrow_certificate_kmn(F, 1, 2):
                continue
            assert arrow_exhaustive(F, PatternSpec.complete_bipartite(1, 2))
            confirmed += 1
        assert confirmed >= 20


class TestExhaustive:
    def test_k3_arrows_k12(self):
        assert arrow_exhaustive(complete_graph(3), PatternSpec.complete_bipartite(1, 2))

    def test_c4_does_not_arrow_k12(self):
        assert not arrow_exhaustive(cycle_graph(4), PatternSpec.complete_bipartite(1, 2))

    def test_k6_arrows_k22_k5_does_not(self):
        k22 = PatternSpec.complete_bipartite(2, 2)
        assert arrow_exhaustive(complete_graph(6), k22)
        assert not arrow_exhaustive(complete_graph(5), k22)

    def test_ramsey_number_three_three(self):
        # R(3,3) = 6: K_6 -> K_3 and K_5 does not
        triangle = PatternSpec.explicit(complete_graph(3))
        assert arrow_exhaustive(complete_graph(6), triangle)
        assert not arrow_exhaustive(complete_graph(5), triangle)

    def test_book_pattern(self):
        # B_{1,2} = K_{1,2} with no spine edges to add, so same verdicts
        assert arrow_exhaustive(complete_graph(3), PatternSpec.book(1, 2))
        assert not arrow_exhaustive(path_graph(4), PatternSpec.book(1, 2))

    def test_host_without_pattern_is_instant_no(self):
        assert not arrow_exhaustive(path_graph(5), PatternSpec.complete_bipartite(2, 2))

    def test_edge_cap(self):
        F = complete_graph(8)  # 28 edges
        assert F.edge_count > MAX_EXHAUSTIVE_EDGES
        with pytest.raises(ValueError, match="capped"):
            arrow_exhaustive(F, PatternSpec.complete_bipartite(2, 2))

    def test_agrees_with_refutation_on_random_hosts(self):
        # wherever a halving refutes, exhaustive must say no; sparse hosts
        # because both classes being matchings forces e(F) <= 6 here
        root = RngStream(307)
        checked = 0
        for i in range(60):
            F = sample_gnp(7, 0.25, root.child(i))
            if F.edge_count > MAX_EXHAUSTIVE_EDGES:
                continue
            split = refute_arrow_by_halving(F, 1, 2, trials=32, rng=root.child(1000 + i))
            if split is not None:
                assert not arrow_exhaustive(F, PatternSpec.complete_bipartite(1, 2))
                checked += 1
        assert checked >= 5  # seed 307 gives 21


class TestRefute:
    def test_c4_refuted(self):
        split = refute_arrow_by_halving(cycle_graph(4), 1, 2, trials=64, rng=RngStream(9))
        assert split is not None
        assert contains_kmn(split.red, 1, 2) is None
        assert contains_kmn(split.blue, 1, 2) is None
        assert split.red.edge_count + split.blue.edge_count == 4

    def test_k6_not_refuted(self):
        # K_6 -> K_{2,2} is a theorem, so no split can ever appear
        assert refute_arrow_by_halving(complete_graph(6), 2, 2, trials=64, rng=RngStream(1)) is None

    def test_host_without_pattern_refutes_on_first_trial(self):
        split = refute_arrow_by_halving(path_graph(3), 2, 2, trials=1, rng=RngStream(2))
        assert split is not None

    def test_book_kind(self):
        split = refute_arrow_by_halving(
            complete_graph(4), 1, 2, pattern_kind="book", trials=64, rng=RngStream(3)
        )
        if split is not None:
            assert contains_book(split.red, 1, 2) is None
            assert contains_book(split.blue, 1, 2) is None

    def test_determinism(self):
        a = refute_arrow_by_halving(cycle_graph(5), 1, 2, trials=32, rng=RngStream(77))
        b = refute_arrow_by_halving(cycle_graph(5), 1, 2, trials=32, rng=RngStream(77))
        assert a == b

    def test_validation(self):
        with pytest.raises(ValueError):
            refute_arrow_by_halving(cycle_graph(4), 0, 1)
        with pytest.raises(ValueError):
            refute_arrow_by_halving(cycle_graph(4), 1, 1, trials=0)
        with pytest.raises(ValueError):
            refute_arrow_by_halving(cycle_graph(4), 1, 1, pattern_kind="clique")


class TestDecideArrow:
    def test_certificate_tier(self):
        r = decide_arrow(complete_graph(6), "certificate", "kmn", 1, 2)
        assert (r.verdict, r.tier, r.exact) == ("yes", "cert", False)
        r = decide_arrow(complete_graph(3), "certificate", "kmn", 1, 2)
        assert (r.verdict, r.tier) == ("unknown", "cert")

    def test_certificate_rejects_book(self):
        with pytest.raises(ValueError):
            decide_arrow(complete_graph(6), "certificate", "book", 2, 2)

    def test_exhaustive_tier(self):
        r = decide_arrow(complete_graph(6), "exhaustive", "kmn", 2, 2)
        assert (r.verdict, r.tier, r.exact) == ("yes", "exact", True)
        r = decide_arrow(complete_graph(5), "exhaustive", "kmn", 2, 2)
        assert (r.verdict, r.exact) == ("no", True)

    def test_refute_tier(self):
        r = decide_arrow(cycle_graph(4), "refute", "kmn", 1, 2, trials=64, rng=RngStream(9))
        assert (r.verdict, r.tier, r.exact) == ("no", "refute", False)
        assert r.split is not None
        r = decide_arrow(complete_graph(6), "refute", "kmn", 2, 2, trials=16, rng=RngStream(1))
        assert (r.verdict, r.split) == ("unknown", None)

    def test_invalid_mode(self):
        with pytest.raises(ValueError):
            decide_arrow(complete_graph(4), "oracle", "kmn", 1, 1)


class TestMonotonicity:
    def test_arrow_monotone_under_edge_addition(self):
        # adding an edge can only help the arrow hold
        pattern = PatternSpec.complete_bipartite(1, 2)
        root = RngStream(311)
        for i in range(30):
            F = sample_gnp(6, 0.4, root.child(i))
            if F.edge_count + 1 > MAX_EXHAUSTIVE_EDGES:
                continue
            missing = [
                (u, v) for u in range(6) for v in range(u + 1, 6) if not F.has_edge(u, v)
            ]
            if not missing or not arrow_exhaustive(F, pattern):
                continue
            G = F.with_edge(*missing[i % len(missing)])
            assert arrow_exhaustive(G, pattern)
