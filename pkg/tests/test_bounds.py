import math
from fractions import Fraction

import pytest

import oracles
from conftest import small_digraphs
from fdsrank import fixtures as fx
from fdsrank.bounds import (
    _floor_power,
    entropy_H,
    entropy_report,
    fix_bounds_report,
    max_code_size,
)
from fdsrank.digraph import Digraph
from fdsrank.enumeration import enumerate_stats
from fdsrank.errors import SizeLimitExceeded
from fdsrank.invariants import transversal_number


class TestMaxCodeSize:
    def test_even_weight_code(self):
        assert oracles.brute_max_code_size(3, 2, 2) == 4
        assert max_code_size(3, 2, 2) == 4

    def test_repetition_code(self):
        assert max_code_size(3, 2, 3) == 2

    def test_whole_space_at_distance_one(self):
        assert max_code_size(2, 3, 1) == 9

    def test_infinite_distance(self):
        assert max_code_size(3, 2, math.inf) == 1
        assert max_code_size(3, 2, None) == 1

    def test_distance_past_length(self):
        assert max_code_size(2, 2, 5) == 1

    def test_matches_oracle(self):
        # spaces kept small: the oracle enumerates word subsets top down
        for n, q, dist in ((2, 2, 2), (3, 2, 2), (3, 2, 3), (2, 3, 2), (2, 3, 1)):
            assert max_code_size(n, q, dist) == oracles.brute_max_code_size(n, q, dist)

    def test_known_hypercube_value(self):
        # distance-2 codes halve the space
        assert max_code_size(5, 2, 2) == 16

    def test_guard(self):
        with pytest.raises(SizeLimitExceeded):
            max_code_size(20, 2, 3)


class TestEntropy:
    def test_odd_symmetric_cycle(self):
        rep = entropy_report(fx.C5_SYM)
        assert rep.exact and rep.value == Fraction(5, 2)
        assert not rep.degenerate

    def test_directed_triangle(self):
        assert entropy_H(fx.C3) == 1

    def test_sources_peel_to_zero(self):
        rep = entropy_report(fx.E3)
        assert rep.value == 0
        assert rep.degenerate and rep.peeled == (1, 2, 3)

    def test_partial_peel(self):
        d = Digraph(3, [(1, 1)])
        rep = entropy_report(d)
        assert rep.value == 1
        assert set(rep.peeled) == {2, 3}

    def test_triangle_with_loops(self):
        assert entropy_H(fx.add_loops(fx.K3)) == 3

    def test_never_exceeds_feedback_on_fixtures(self):
        for name, d in fx.CATALOG.items():
            h = entropy_report(d).value
            assert float(h) <= transversal_number(d) + 1e-9, name

    def test_float_path_matches_exact(self):
        for d in (fx.C5_SYM, fx.C3, fx.K3):
            exact = entropy_report(d, exact_cap=12).value
            approx = entropy_report(d, exact_cap=0).value
            assert abs(float(exact) - float(approx)) < 1e-6


class TestFloorPower:
    def test_exact_halves(self):
        assert _floor_power(2, Fraction(5, 2)) == 5
        assert _floor_power(2, Fraction(3)) == 8
        assert _floor_power(3, Fraction(1, 2)) == 1
        assert _floor_power(2, Fraction(0)) == 1

    def test_float_tolerance(self):
        assert _floor_power(2, 2.4999999999) == 5
        assert _floor_power(2, 3.0) == 8


class TestFixBoundsReport:
    def test_directed_triangle_tight_at_two(self):
        rep = fix_bounds_report(fx.C3, 2)
        assert rep.upper["girth"] == 2
        assert rep.upper["feedback"] == 2
        assert rep.lower["packing"] == 2
        assert rep.best_lower == rep.best_upper == 2
        assert rep.consistent

    def test_triangle_tight_at_four(self):
        rep = fix_bounds_report(fx.K3, 2)
        assert rep.lower["clique_cover"] == 4
        assert rep.lower["code"] == 4
        assert rep.upper["feedback"] == 4
        assert rep.best_lower == rep.best_upper == 4

    def test_symmetric_five_cycle(self):
        rep = fix_bounds_report(fx.C5_SYM, 2)
        assert rep.upper["entropy"] == 5  # floor(2^(5/2))
        assert rep.best_lower == 4

    def test_sandwich_on_all_two_vertex_graphs(self):
        for d in small_digraphs(2):
            rep = fix_bounds_report(d, 2)
            maxfix = enumerate_stats(d, 2, strict=False).fixed_points.maximum
            assert rep.best_lower <= maxfix <= rep.best_upper, d

    def test_loopfull_lower_is_exact_for_looped_graphs(self):
        d = fx.add_loops(fx.P1)
        rep = fix_bounds_report(d, 2)
        assert rep.lower["loopfull"] == 3
        maxfix = enumerate_stats(d, 2, strict=True).fixed_points.maximum
        assert maxfix == 3

    def test_strict_ghost_bound(self):
        rep = fix_bounds_report(fx.K3, 3, strict=True)
        assert "ghost" in rep.lower
        assert rep.lower["ghost"] == 4  # loose bracket at q=2

    def test_strict_packing_plus_one(self):
        rep = fix_bounds_report(fx.C3_LOOPED, 2, strict=True)
        assert rep.lower["packing_plus_one"] == 4
        maxfix = enumerate_stats(fx.C3_LOOPED, 2, strict=True).fixed_points.maximum
        assert rep.best_lower <= maxfix <= rep.best_upper

    def test_strict_sandwich_two_vertex(self):
        from fdsrank.enumeration import family_size

        checked = 0
        for d in small_digraphs(2):
            for q in (2, 3):
                if family_size(d, q, True) > 10 ** 7:
                    continue
                rep = fix_bounds_report(d, q, strict=True)
                maxfix = enumerate_stats(d, q, strict=True).fixed_points.maximum
                assert rep.best_lower <= maxfix <= rep.best_upper, (d, q)
                checked += 1
        assert checked > 25

    def test_json_stable_keys(self):
        import json

        a = json.dumps(fix_bounds_report(fx.K3, 2).to_json_dict(), sort_keys=True)
        b = json.dumps(fix_bounds_report(fx.K3, 2).to_json_dict(), sort_keys=True)
        assert a == b
