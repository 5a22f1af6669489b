import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import kendalltau as scipy_kendalltau

import hyperrank as hr
from oracles import kendall_tau_bruteforce, pair_counts_real_nodes


class TestKendallTau:
    def test_identical_columns(self):
        assert hr.kendall_tau([3, 1, 2], [3, 1, 2]) == 1.0

    def test_reversed_ranking(self):
        assert hr.kendall_tau([1, 2, 3, 4], [4, 3, 2, 1]) == -1.0

    def test_one_swap(self):
        assert hr.kendall_tau([1, 2, 3, 4], [1, 2, 4, 3]) == pytest.approx(2 / 3)

    def test_all_tied_column_is_nan(self):
        assert math.isnan(hr.kendall_tau([1.0, 1.0, 1.0], [1, 2, 3]))

    def test_rejects_short_or_mismatched(self):
        with pytest.raises(hr.DataError):
            hr.kendall_tau([1.0], [2.0])
        with pytest.raises(hr.DataError):
            hr.kendall_tau([1, 2], [1, 2, 3])

    @given(st.lists(st.integers(0, 8), min_size=2, max_size=60),
           st.integers(0, 2**32 - 1))
    @settings(max_examples=120, deadline=None)
    def test_matches_bruteforce_with_ties(self, a, seed):
        rng = random.Random(seed)
        b = [rng.randint(0, 8) for _ in a]
        got = hr.kendall_tau(a, b)
        want = kendall_tau_bruteforce(a, b)
        if math.isnan(want):
            assert math.isnan(got)
        else:
            assert got == pytest.approx(want, abs=1e-14)

    def test_matches_bruteforce_large_instances(self):
        rng = random.Random(8)
        for n in (50, 120, 200):
            a = [rng.uniform(0, 1) for _ in range(n)]
            b = [rng.choice(a[:10]) if rng.random() < 0.3 else rng.uniform(0, 1)
                 for _ in range(n)]
            assert hr.kendall_tau(a, b) == pytest.approx(
                kendall_tau_bruteforce(a, b), abs=1e-13
            )

    def test_matches_scipy_variant_b(self):
        rng = random.Random(15)
        for _ in range(30):
            n = rng.randint(2, 40)
            a = [rng.randint(0, 6) for _ in range(n)]
            b = [rng.randint(0, 6) for _ in range(n)]
            want = scipy_kendalltau(a, b, variant="b").statistic
            got = hr.kendall_tau(a, b)
            if math.isnan(want):
                assert math.isnan(got)
            else:
                assert got == pytest.approx(want, abs=1e-12)

    @given(st.lists(st.integers(-1000, 1000), min_size=3, max_size=40,
                    unique=True),
           st.integers(0, 2**16))
    @settings(max_examples=60, deadline=None)
    def test_invariant_under_monotone_transform(self, a, seed):
        rng = random.Random(seed)
        b = list(a)
        rng.shuffle(b)
        base = hr.kendall_tau(a, b)
        transformed = hr.kendall_tau([3 * x + 7 for x in a],
                                     [math.atan(y) for y in b])
        assert transformed == pytest.approx(base, abs=1e-12)

    def test_symmetry(self):
        rng = random.Random(3)
        a = [rng.random() for _ in range(25)]
        b = [rng.random() for _ in range(25)]
        assert hr.kendall_tau(a, b) == pytest.approx(hr.kendall_tau(b, a))


class TestZeroFill:
    def test_fill_changes_only_tie_structure(self):
        rng = random.Random(21)
        a = [rng.uniform(0.1, 1) for _ in range(12)]
        b = [rng.uniform(0.1, 1) for _ in range(12)]
        real = list(range(12))
        before = pair_counts_real_nodes(a, b, real)
        # a node absent from both methods enters with a double zero fill
        after = pair_counts_real_nodes(a + [0.0], b + [0.0], real)
        assert before == after

    def test_ranking_table_zero_fill_and_mask(self):
        table = hr.RankingTable.from_scores({
            "U2": {"a": 0.5, "b": 0.3},
            "H3": {"b": 0.2, "c": 0.8},
        })
        assert table.labels == ("a", "b", "c")
        np.testing.assert_allclose(table.column("U2"), [0.5, 0.3, 0.0])
        np.testing.assert_allclose(table.column("H3"), [0.0, 0.2, 0.8])
        assert table.present.tolist() == [[True, True, False],
                                          [False, True, True]]


class TestHeatmap:
    def test_identical_columns_give_ones(self):
        table = hr.RankingTable.from_scores({
            "A": {1: 0.6, 2: 0.4},
            "B": {1: 0.6, 2: 0.4},
        })
        np.testing.assert_allclose(hr.pairwise_heatmap(table), np.ones((2, 2)))

    def test_thread_cap_param_matches_sequential(self, monkeypatch):
        rng = random.Random(5)
        cols = {
            f"M{k}": {i: rng.random() for i in range(30)} for k in range(4)
        }
        table = hr.RankingTable.from_scores(cols)
        seq = hr.pairwise_heatmap(table)
        monkeypatch.setenv("HYPERRANK_THREADS", "4")
        par = hr.pairwise_heatmap(table)
        np.testing.assert_array_equal(seq, par)

    def test_needs_two_columns(self):
        table = hr.RankingTable.from_scores({"A": {1: 0.3, 2: 0.7}})
        with pytest.raises(hr.DataError):
            hr.pairwise_heatmap(table)


class TestTopKCurve:
    def test_equal_columns_give_ones(self):
        a = np.linspace(1, 0, 20)
        curve = hr.topk_curve(a, a, [2, 5, 10, 20])
        assert [k for k, _ in curve] == [2, 5, 10, 20]
        assert all(t == 1.0 for _, t in curve)

    def test_full_size_equals_whole_ranking_tau(self):
        rng = random.Random(6)
        a = np.array([rng.random() for _ in range(40)])
        b = np.array([rng.random() for _ in range(40)])
        curve = hr.topk_curve(a, b, [40])
        assert curve == [(40, hr.kendall_tau(a, b))]

    def test_small_ks_skipped(self):
        a = np.linspace(1, 0, 8)
        curve = hr.topk_curve(a, a, [1, 2, 3])
        assert [k for k, _ in curve] == [2, 3]

    def test_boundary_ties_expand_selection(self):
        a = np.array([5.0, 4.0, 4.0, 4.0, 1.0])
        b = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
        curve = hr.topk_curve(a, b, [2, 3, 4, 5])
        # top-2 pulls in every score tied with the 2nd: actual size 4
        assert [k for k, _ in curve] == [4, 5]

    def test_direction_matters(self):
        a = np.array([10.0, 9.0, 8.0, 1.0, 1.0])
        b = np.array([1.0, 5.0, 10.0, 9.0, 8.0])
        ab = dict(hr.topk_curve(a, b, [3]))
        ba = dict(hr.topk_curve(b, a, [3]))
        assert ab[3] == -1.0
        assert ba[3] == pytest.approx(2 / math.sqrt(6))

    def test_rejects_unsorted_ks(self):
        with pytest.raises(hr.DataError):
            hr.topk_curve([1.0, 2.0], [1.0, 2.0], [2, 1])

    def test_rejects_k_above_size(self):
        with pytest.raises(hr.DataError):
            hr.topk_curve([1.0, 2.0], [1.0, 2.0], [3])


class TestCurveFilter:
    def test_single_curve_kept(self):
        curves = {("U2", "U3"): [(10, 0.5), (20, 0.6)]}
        assert hr.curve_filter(curves) == curves

    def test_identical_curves_dedup_to_one(self):
        data = [(10, 0.5), (20, 0.6)]
        curves = {("U2", "U3"): list(data), ("U2", "U4"): list(data),
                  ("U3", "U4"): list(data), ("U3", "U2"): list(data)}
        kept = hr.curve_filter(curves)
        assert len(kept) == 1

    def test_selection_matches_bruteforce(self):
        rng = random.Random(17)
        curves = {}
        for i in range(6):
            taus = [rng.uniform(-1, 1) for _ in range(5)]
            curves[("U2", f"H{i}")] = [(k + 2, t) for k, t in enumerate(taus)]
        kept = hr.curve_filter(curves)
        stats = {
            key: (max(t for _, t in c), min(t for _, t in c),
                  sum(t for _, t in c) / len(c))
            for key, c in curves.items()
        }
        expect = {
            max(stats, key=lambda k: stats[k][0]),
            min(stats, key=lambda k: stats[k][1]),
            max(stats, key=lambda k: stats[k][2]),
            min(stats, key=lambda k: stats[k][2]),
        }
        assert set(kept) == expect
        assert len(kept) <= 4

    def test_families_grouped_separately(self):
        curves = {
            ("U2", "H3"): [(5, 0.9)],
            ("U3", "H4"): [(5, 0.1)],
            ("A3", "H4"): [(5, 0.2)],
        }
        kept = hr.curve_filter(curves)
        # U->H family keeps both extremes; A->H keeps its only curve
        assert ("A3", "H4") in kept
        assert ("U2", "H3") in kept and ("U3", "H4") in kept


class TestCsv:
    def test_heatmap_csv_layout(self, tmp_path):
        table = hr.RankingTable.from_scores({
            "U2": {1: 0.6, 2: 0.4}, "U3": {1: 0.5, 2: 0.5},
        })
        mat = hr.pairwise_heatmap(table)
        out = tmp_path / "heat.csv"
        from hyperrank.rankcmp import write_heatmap_csv
        write_heatmap_csv(out, table, mat)
        lines = out.read_text().splitlines()
        assert lines[0] == "method,U2,U3"
        assert lines[1].startswith("U2,1,")

    def test_curves_csv_layout(self, tmp_path):
        from hyperrank.rankcmp import write_curves_csv
        out = tmp_path / "curves.csv"
        write_curves_csv(out, {("U2", "U3"): [(10, 0.25)]})
        assert out.read_text().splitlines() == [
            "method_a,method_b,K,tau", "U2,U3,10,0.25",
        ]

    def test_default_ks_covers_full_size(self):
        ks = hr.default_ks(500)
        assert ks[0] >= 2 and ks[-1] == 500
        assert ks == sorted(ks)

    def test_default_ks_tiny_tables(self):
        assert hr.default_ks(1) == []
        assert hr.default_ks(2) == [2]
        assert hr.default_ks(7)[-1] == 7
