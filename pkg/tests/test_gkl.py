import math
from collections import Counter

import pytest

from varsz.gkl import (
    GklParams,
    build_gkl,
    closed_form_gap,
    count_roots,
    distance_census,
    search_multiroot,
    szeged_alpha_closed,
    szeged_census,
    wiener_alpha_closed,
)
from varsz.graph import is_block_graph, is_connected
from varsz.invariants import build_profile, gap, szeged_alpha, wiener_alpha


@pytest.mark.parametrize("k, ell, n, m", [(8, 5, 14, 33), (6, 1, 8, 16), (520, 82, 603, 135022)])
def test_build_sizes(k, ell, n, m):
    p = GklParams(k, ell)
    assert (p.n, p.m) == (n, m)
    if k < 100:
        g = build_gkl(p)
        assert (g.n, g.m) == (n, m)
        assert is_connected(g) and not is_block_graph(g)


def test_build_layout():
    g = build_gkl(GklParams(8, 5))
    # cycle edges v_i v_{i+1} removed, including the wrap-around v_8 v_1
    assert (0, 1) not in g.edges and (0, 7) not in g.edges and (0, 2) in g.edges
    assert g.adjacency[8] == tuple(range(8)) + (9,)
    assert [(8 + j, 9 + j) in g.edges for j in range(5)] == [True] * 5
    assert g.degree(13) == 1


@pytest.mark.parametrize("k, ell", [(5, 1), (6, 0), (2, 3)])
def test_params_bounds(k, ell):
    with pytest.raises(ValueError):
        GklParams(k, ell)


def test_closed_forms_alpha_zero():
    p = GklParams(8, 5)
    assert wiener_alpha_closed(p, 0) == math.comb(14, 2) == 91
    assert szeged_alpha_closed(p, 0) == 33


def test_closed_form_formula_by_hand():
    # the displayed closed forms, summed term by term
    for k, ell in [(8, 5), (11, 3), (520, 82)]:
        for a in (0.25, 0.5, 1.7):
            w = (math.comb(k, 2) + ell + (2 * k + ell - 1) * 2**a
                 + sum((k + ell + 1 - i) * i**a for i in range(3, ell + 2)))
            s = (k * 4**a + (math.comb(k, 2) - 2 * k) * 9**a + k * (ell + 3) ** a
                 + sum(((k + i) * (ell + 1 - i)) ** a for i in range(1, ell + 1)))
            p = GklParams(k, ell)
            assert wiener_alpha_closed(p, a) == pytest.approx(w, rel=1e-12)
            assert szeged_alpha_closed(p, a) == pytest.approx(s, rel=1e-12)


@pytest.mark.parametrize("k", range(6, 13))
@pytest.mark.parametrize("ell", range(1, 7))
def test_closed_form_matches_direct(k, ell):
    p = GklParams(k, ell)
    prof = build_profile(build_gkl(p))
    for a in (0, 1):
        assert wiener_alpha_closed(p, a) == wiener_alpha(prof, a)
        assert szeged_alpha_closed(p, a) == szeged_alpha(prof, a)
    for a in (0.25, 0.5, 2):
        assert wiener_alpha_closed(p, a) == pytest.approx(wiener_alpha(prof, a), rel=1e-9)
        assert szeged_alpha_closed(p, a) == pytest.approx(szeged_alpha(prof, a), rel=1e-9)


@pytest.mark.parametrize("k", range(6, 13))
@pytest.mark.parametrize("ell", range(1, 7))
def test_censuses_match_graph(k, ell):
    p = GklParams(k, ell)
    prof = build_profile(build_gkl(p))
    assert Counter(prof.d_seq.tolist()) == distance_census(p)
    assert Counter(prof.n_seq.tolist()) == szeged_census(p)
    assert prof.diam == ell + 1


def test_szeged_edge_classes_8_5():
    prof = build_profile(build_gkl(GklParams(8, 5)))
    expected = [4] * 8 + [9] * 12 + [8] * 8 + [45, 40, 33, 24, 13]
    assert sorted(prof.n_seq.tolist()) == sorted(expected)
    assert szeged_alpha_closed(GklParams(8, 5), 1) == sum(expected)


def test_gap_signs_at_ends():
    for k in range(6, 30, 3):
        for ell in (1, 4, 9, 20):
            h = closed_form_gap(GklParams(k, ell))
            assert h(0) < 0 < h(1)


def test_direct_gap_signs_at_ends():
    for k, ell in [(6, 1), (9, 4), (12, 6)]:
        prof = build_profile(build_gkl(GklParams(k, ell)))
        assert gap(prof, 0) < 0 < gap(prof, 1)


class TestSearch:
    def test_counterexample_cell(self):
        hits = search_multiroot([520], [82])
        assert hits == [(GklParams(520, 82), 3)]

    def test_small_cell_single_root(self):
        assert count_roots(GklParams(8, 5)) == 1

    def test_small_grid_empty(self):
        assert search_multiroot(range(6, 13), range(1, 7)) == []

    def test_window_nonempty(self):
        hits = search_multiroot(range(500, 541, 4), range(70, 96, 3))
        assert hits and all(c >= 3 for _, c in hits)

    def test_empty_ranges(self):
        assert search_multiroot([], range(1, 5)) == []
        assert search_multiroot(range(6, 9), []) == []
