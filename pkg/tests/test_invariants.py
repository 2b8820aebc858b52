import math

import networkx as nx
import numpy as np
import pytest

from corpus import atlas_connected, complete, cycle, path, random_corpus, star, to_nx
from varsz.graph import GraphError, all_pairs_distances, bfs_distances, is_block_graph
from varsz.invariants import (
    GapFunction,
    IndexProfile,
    build_profile,
    classical_indices,
    distance_sequence,
    gap,
    gap_derivative,
    szeged_alpha,
    szeged_terms,
    wiener_alpha,
)
from varsz.majorization import majorizes


def brute_szeged_terms(g):
    rows = [bfs_distances(g, v) for v in range(g.n)]
    terms = []
    for u, v in g.edges:
        nu = sum(1 for w in range(g.n) if rows[w][u] < rows[w][v])
        nv = sum(1 for w in range(g.n) if rows[w][v] < rows[w][u])
        terms.append(nu * nv)
    return sorted(terms, reverse=True)


def brute_power_sum(values, alpha):
    return math.fsum(float(v) ** alpha for v in values)


class TestSzegedTerms:
    @pytest.mark.parametrize("g, expected", [
        (path(3), [2, 2]),
        (cycle(4), [4, 4, 4, 4]),
        (star(3), [3, 3, 3]),
        (cycle(5), [4] * 5),
    ])
    def test_examples(self, g, expected):
        assert szeged_terms(g, all_pairs_distances(g)).tolist() == expected

    def test_matches_brute_force(self):
        for g in random_corpus(150, 12):
            assert szeged_terms(g, all_pairs_distances(g)).tolist() == brute_szeged_terms(g)

    def test_chunking_boundary(self):
        g = complete(70)  # 2415 edges, more than one chunk
        assert set(szeged_terms(g, all_pairs_distances(g)).tolist()) == {1}


class TestDistanceSequence:
    @pytest.mark.parametrize("g, expected", [
        (path(3), [2, 1, 1]),
        (cycle(4), [2, 2, 1, 1, 1, 1]),
        (complete(4), [1] * 6),
    ])
    def test_examples(self, g, expected):
        assert distance_sequence(all_pairs_distances(g)).tolist() == expected


def test_profile_fields():
    p = build_profile(cycle(5), check=True)
    assert (p.n, p.m, p.N, p.diam) == (5, 5, 10, 2)
    assert p.n_padded().tolist() == [4] * 5 + [0] * 5
    assert p.bipartite is False and p.block is False


def test_profile_rejects_bad_sequences():
    with pytest.raises(GraphError):
        IndexProfile(d_seq=[1, 2, 1], n_seq=[2, 2], n=3, diam=2)
    with pytest.raises(GraphError):
        IndexProfile(d_seq=[2, 1], n_seq=[2], n=3, diam=2)
    with pytest.raises(GraphError):
        build_profile(path(1))


class TestIndices:
    def test_wiener_examples(self):
        assert wiener_alpha(build_profile(path(3)), 1) == 4
        assert wiener_alpha(build_profile(cycle(4)), 2) == 12

    def test_szeged_examples(self):
        assert szeged_alpha(build_profile(path(3)), 1) == 4
        assert szeged_alpha(build_profile(cycle(4)), 1) == 16

    def test_alpha_zero_counts(self):
        for g in random_corpus(30, 10):
            p = build_profile(g)
            assert wiener_alpha(p, 0) == p.N
            assert szeged_alpha(p, 0) == p.m
            assert gap(p, 0) == p.m - p.N

    def test_against_direct_sums(self):
        for g in random_corpus(40, 11):
            p = build_profile(g)
            for a in (0.3, 0.77, 1.5, 2.5):
                w = brute_power_sum(distance_sequence(all_pairs_distances(g)), a)
                s = brute_power_sum(brute_szeged_terms(g), a)
                assert wiener_alpha(p, a) == pytest.approx(w, rel=1e-13)
                assert szeged_alpha(p, a) == pytest.approx(s, rel=1e-13)

    def test_negative_alpha_allowed(self):
        p = build_profile(path(3))
        assert wiener_alpha(p, -1) == pytest.approx(1 + 1 + 0.5)

    @pytest.mark.parametrize("g, expected", [
        (path(3), (4, 4)),
        (cycle(4), (8, 16)),
        (cycle(5), (15, 20)),
    ])
    def test_classical(self, g, expected):
        assert classical_indices(build_profile(g)) == expected

    def test_classical_matches_networkx_wiener(self):
        for g in random_corpus(40, 12):
            assert classical_indices(build_profile(g))[0] == nx.wiener_index(to_nx(g))


class TestGap:
    def test_tree_zero_at_one(self):
        assert gap(build_profile(path(3)), 1) == 0

    def test_complete_identically_zero(self):
        p = build_profile(complete(4))
        for a in (0, 0.3, 1, 2.7):
            assert gap(p, a) == 0
        assert GapFunction(p).is_degenerate

    def test_negative_at_zero(self):
        for g in atlas_connected():
            p = build_profile(g)
            if not p.is_complete:
                assert gap(p, 0) == p.m - p.N < 0

    def test_many_matches_scalar(self):
        h = build_profile(cycle(7)).gap_function
        grid = np.linspace(0.01, 2, 50)
        assert np.allclose(h.many(grid), [h(a) for a in grid], rtol=1e-12, atol=1e-12)


class TestGapDerivative:
    @pytest.mark.parametrize("q", [5, 6, 7, 8, 10])
    def test_star_closed_form(self, q):
        expected = q * math.log(q) - math.comb(q, 2) * math.log(2)
        assert gap_derivative(build_profile(star(q)), 0) == pytest.approx(expected, rel=1e-12)

    def test_star_signs(self):
        assert gap_derivative(build_profile(star(7)), 0) == pytest.approx(-0.934720, abs=1e-6)
        assert gap_derivative(build_profile(star(6)), 0) == pytest.approx(0.353349, abs=1e-6)

    def test_finite_differences(self):
        eps = 1e-6
        for g in random_corpus(60, 12):
            p = build_profile(g)
            if p.is_complete:
                continue
            for a in (0.2, 0.5, 0.9, 1.3):
                fd = (gap(p, a + eps) - gap(p, a - eps)) / (2 * eps)
                scale = gap_derivative(p, a)
                assert gap_derivative(p, a) == pytest.approx(fd, rel=1e-5, abs=1e-5 * max(1, p.szeged))
                assert np.isfinite(scale)


class TestStructuralIdentities:
    def test_edge_terms_majorize_distances(self):
        for g in atlas_connected() + random_corpus(500, 12):
            p = build_profile(g)
            assert majorizes(p.n_seq, p.d_seq)

    def test_distance_bounded_by_edge_term_on_shortest_paths(self):
        for g in random_corpus(80, 11):
            dm = all_pairs_distances(g)
            rows = dm
            term = {}
            for u, v in g.edges:
                nu = int(np.sum(rows[:, u] < rows[:, v]))
                nv = int(np.sum(rows[:, v] < rows[:, u]))
                term[(u, v)] = term[(v, u)] = nu * nv
            h = to_nx(g)
            for x in range(g.n):
                for y in range(x + 1, g.n):
                    route = nx.shortest_path(h, x, y)
                    for e in zip(route, route[1:]):
                        assert dm[x, y] <= term[e]

    def test_weak_conjecture_strengthened(self):
        for g in atlas_connected() + random_corpus(300, 12):
            p = build_profile(g)
            if p.is_complete:
                continue
            h1 = gap(p, 1)
            assert h1 >= 0
            for a in (1.1, 1.5, 2, 3):
                assert gap(p, a) > h1

    def test_zero_difference_iff_block_graph(self):
        for g in atlas_connected() + random_corpus(300, 10):
            w, s = classical_indices(build_profile(g))
            assert (s == w) == is_block_graph(g)
            assert s - w not in (1, 3)
