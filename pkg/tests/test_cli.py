import json
import math

import pytest

import hyperrank as hr
from hyperrank.cli import ingest_simplicial, main
from conftest import TABLE_ROWS


def write_dataset(tmp_path, nverts, simplices, labels=None, prefix="toy"):
    (tmp_path / f"{prefix}-nverts.txt").write_text(
        "\n".join(map(str, nverts)) + "\n", encoding="utf-8"
    )
    (tmp_path / f"{prefix}-simplices.txt").write_text(
        "\n".join(map(str, simplices)) + "\n", encoding="utf-8"
    )
    if labels:
        (tmp_path / f"{prefix}-node-labels.txt").write_text(
            "\n".join(f"{i}\t{name}" for i, name in labels) + "\n",
            encoding="utf-8",
        )
    return str(tmp_path / prefix)


def read_scores(path):
    lines = path.read_text().splitlines()
    assert lines[0] == "node,score"
    out = {}
    for line in lines[1:]:
        node, score = line.rsplit(",", 1)
        out[node] = float(score)
    return out


FIG1_NVERTS = [3, 2, 2]
FIG1_SIMPLICES = [1, 2, 3, 2, 4, 3, 5]

EXAMPLE6_NVERTS = [2, 4, 3]
EXAMPLE6_SIMPLICES = [1, 2, 2, 3, 4, 5, 4, 5, 6]


class TestIngest:
    def test_decodes_size_stream(self, tmp_path):
        prefix = write_dataset(tmp_path, FIG1_NVERTS, FIG1_SIMPLICES)
        h, report = ingest_simplicial(f"{prefix}-nverts.txt",
                                      f"{prefix}-simplices.txt")
        assert h.n == 5 and len(h.edges) == 3
        assert report.final_edges == 3
        assert hr.stats(h).size_histogram == {2: 2, 3: 1}

    def test_singletons_dropped(self, tmp_path):
        prefix = write_dataset(tmp_path, [1, 2], [7, 1, 2])
        h, report = ingest_simplicial(f"{prefix}-nverts.txt",
                                      f"{prefix}-simplices.txt")
        assert h.n == 2 and len(h.edges) == 1
        assert report.dropped_small == 1
        assert report.dropped_isolated == 1  # node 7 vanished with its simplex

    def test_count_mismatch_raises(self, tmp_path):
        prefix = write_dataset(tmp_path, [3, 2], [1, 2, 3, 4])
        with pytest.raises(hr.DataError, match="count mismatch"):
            ingest_simplicial(f"{prefix}-nverts.txt", f"{prefix}-simplices.txt")

    def test_label_file_applies(self, tmp_path):
        prefix = write_dataset(tmp_path, [2], [1, 2], labels=[(1, "ubuntu"),
                                                              (2, "grub")])
        h, _ = ingest_simplicial(f"{prefix}-nverts.txt",
                                 f"{prefix}-simplices.txt",
                                 f"{prefix}-node-labels.txt")
        assert set(h.labels) == {"ubuntu", "grub"}


class TestExitCodes:
    def test_count_mismatch_is_data_error(self, tmp_path):
        prefix = write_dataset(tmp_path, [3, 2], [1, 2, 3, 4])
        code = main(["stats", "--input", prefix, "--out",
                     str(tmp_path / "s.csv")])
        assert code == 2

    def test_non_integer_token(self, tmp_path):
        prefix = write_dataset(tmp_path, [2], [1, 2])
        (tmp_path / "toy-simplices.txt").write_text("1 x\n")
        code = main(["stats", "--input", prefix, "--out",
                     str(tmp_path / "s.csv")])
        assert code == 2

    def test_empty_file(self, tmp_path):
        prefix = write_dataset(tmp_path, [2], [1, 2])
        (tmp_path / "toy-nverts.txt").write_text("")
        code = main(["stats", "--input", prefix, "--out",
                     str(tmp_path / "s.csv")])
        assert code == 2

    def test_usage_error_unknown_flag(self):
        assert main(["centrality", "--definitely-not-a-flag"]) == 1

    def test_usage_error_unknown_compare_tag(self, tmp_path):
        prefix = write_dataset(tmp_path, EXAMPLE6_NVERTS, EXAMPLE6_SIMPLICES)
        code = main(["compare", "--methods", "u2,x3", "--input", prefix,
                     "--out-dir", str(tmp_path / "out")])
        assert code == 1

    def test_disconnected_without_lcc(self, tmp_path):
        prefix = write_dataset(tmp_path, [2, 2], [1, 2, 3, 4])
        code = main(["centrality", "--method", "uphec", "--p", "2",
                     "--input", prefix, "--out", str(tmp_path / "o.csv")])
        assert code == 2

    def test_missing_dataset(self, tmp_path):
        code = main(["stats", "--input", str(tmp_path / "nope"),
                     "--out", str(tmp_path / "s.csv")])
        assert code == 2

    def test_convergence_failure(self, tmp_path):
        prefix = write_dataset(tmp_path, EXAMPLE6_NVERTS, EXAMPLE6_SIMPLICES)
        code = main(["centrality", "--method", "uphec", "--p", "3",
                     "--max-iter", "2", "--input", prefix,
                     "--out", str(tmp_path / "o.csv")])
        assert code == 3


class TestCentrality:
    def test_uphec_gauge_reproduces_reference_row(self, tmp_path):
        prefix = write_dataset(tmp_path, EXAMPLE6_NVERTS, EXAMPLE6_SIMPLICES)
        out = tmp_path / "scores.csv"
        code = main([
            "centrality", "--method", "uphec", "--p", "2", "--aux-gauge",
            "--tol", "1e-13", "--input", prefix, "--out", str(out),
        ])
        assert code == 0
        scores = read_scores(out)
        for node, want in zip("123456", TABLE_ROWS[2]):
            assert scores[node] == pytest.approx(want, abs=5e-4)

    def test_manifest_contents_and_determinism(self, tmp_path):
        prefix = write_dataset(tmp_path, EXAMPLE6_NVERTS, EXAMPLE6_SIMPLICES)
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        argv = ["centrality", "--method", "uhec", "--order", "4",
                "--input", prefix]
        assert main(argv + ["--out", str(out1)]) == 0
        assert main(argv + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        manifest = json.loads((tmp_path / "a.csv.manifest.json").read_text())
        assert manifest["method"] == "uhec" and manifest["order"] == 4
        assert manifest["result"]["converged"] is True
        assert manifest["result"]["residual"] <= 1e-10
        assert manifest["preprocessing"]["final_nodes"] == 6
        assert "*" in manifest["result"]["aux_scores"]

    def test_from_manifest_roundtrip(self, tmp_path):
        prefix = write_dataset(tmp_path, EXAMPLE6_NVERTS, EXAMPLE6_SIMPLICES)
        out1 = tmp_path / "run1.csv"
        assert main(["centrality", "--method", "uphec", "--p", "3",
                     "--input", prefix, "--out", str(out1)]) == 0
        out2 = tmp_path / "run2.csv"
        assert main(["centrality", "--method", "uphec", "--p", "2",  # overridden
                     "--from-manifest", str(tmp_path / "run1.csv.manifest.json"),
                     "--input", "ignored", "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_hec_requires_lcc_on_disconnected_slice(self, tmp_path):
        # order-2 slice {4,5},{6,7} is disconnected; triple keeps it one graph
        prefix = write_dataset(
            tmp_path, [3, 2, 2], [4, 6, 8, 4, 5, 6, 7]
        )
        argv = ["centrality", "--method", "hec", "--order", "2",
                "--input", prefix, "--out", str(tmp_path / "h.csv")]
        assert main(argv) == 2
        assert main(argv + ["--lcc"]) == 0
        scores = read_scores(tmp_path / "h.csv")
        assert set(scores) == {"4", "5"}  # smallest-label component wins ties

    def test_ec_matches_closed_form(self, tmp_path):
        prefix = write_dataset(tmp_path, [2, 2], [1, 2, 2, 3])
        out = tmp_path / "ec.csv"
        assert main(["centrality", "--method", "ec", "--input", prefix,
                     "--out", str(out)]) == 0
        scores = read_scores(out)
        assert scores["2"] == pytest.approx(math.sqrt(2) / (2 + math.sqrt(2)),
                                            abs=1e-8)

    def test_zec_uplift_keeps_multiplicities(self, tmp_path):
        # two 5-edges padding the path 1-2-3 with node 4 once and node 5 twice
        prefix = write_dataset(tmp_path, [5, 5], [1, 2, 4, 5, 5, 2, 3, 4, 5, 5])
        out = tmp_path / "z.csv"
        code = main(["centrality", "--method", "zec-uplift", "--norm", "z1",
                     "--input", prefix, "--out", str(out)])
        assert code == 0
        scores = read_scores(out)
        scale = 1 / (4 + 2 * math.sqrt(2))
        assert scores["1"] == pytest.approx(scale, abs=1e-10)
        assert scores["2"] == pytest.approx(math.sqrt(2) * scale, abs=1e-10)
        assert scores["5"] == pytest.approx(2 * scale, abs=1e-10)
        manifest = json.loads((tmp_path / "z.csv.manifest.json").read_text())
        assert manifest["result"]["omega"] == 12

    def test_invalid_order_for_dataset(self, tmp_path):
        prefix = write_dataset(tmp_path, EXAMPLE6_NVERTS, EXAMPLE6_SIMPLICES)
        code = main(["centrality", "--method", "uhec", "--order", "3",
                     "--input", prefix, "--out", str(tmp_path / "x.csv")])
        assert code == 2  # below the max edge size

    def test_custom_manifest_path(self, tmp_path):
        prefix = write_dataset(tmp_path, EXAMPLE6_NVERTS, EXAMPLE6_SIMPLICES)
        out = tmp_path / "s.csv"
        manifest = tmp_path / "custom.json"
        assert main(["centrality", "--method", "uphec", "--p", "2",
                     "--input", prefix, "--out", str(out),
                     "--manifest", str(manifest)]) == 0
        assert json.loads(manifest.read_text())["p"] == 2


class TestCompare:
    def test_small_compare_outputs(self, tmp_path):
        prefix = write_dataset(tmp_path, EXAMPLE6_NVERTS, EXAMPLE6_SIMPLICES)
        out_dir = tmp_path / "cmp"
        code = main(["compare", "--methods", "u2,u3,h3", "--input", prefix,
                     "--out-dir", str(out_dir), "--topk", "3,6"])
        assert code == 0
        heat_lines = (out_dir / "heatmap.csv").read_text().splitlines()
        assert heat_lines[0] == "method,U2,U3,H3"
        diag = [heat_lines[i + 1].split(",")[i + 1] for i in range(3)]
        assert all(v == "1" for v in diag)
        curves = (out_dir / "topk_curves.csv").read_text().splitlines()
        assert curves[0] == "method_a,method_b,K,tau"
        assert len(curves) > 1
        manifest = json.loads((out_dir / "compare_manifest.json").read_text())
        assert manifest["methods"] == ["U2", "U3", "H3"]

    def test_duplicate_tags_give_perfect_correlation(self, tmp_path):
        prefix = write_dataset(tmp_path, EXAMPLE6_NVERTS, EXAMPLE6_SIMPLICES)
        out_dir = tmp_path / "dup"
        code = main(["compare", "--methods", "u2,u2", "--input", prefix,
                     "--out-dir", str(out_dir)])
        assert code == 0
        lines = (out_dir / "heatmap.csv").read_text().splitlines()
        assert lines[1] == "U2,1,1" and lines[2] == "U2,1,1"

    def test_byte_identical_reruns(self, tmp_path):
        prefix = write_dataset(tmp_path, EXAMPLE6_NVERTS, EXAMPLE6_SIMPLICES)
        outs = []
        for name in ("c1", "c2"):
            out_dir = tmp_path / name
            assert main(["compare", "--methods", "u2,a2,h3", "--input", prefix,
                         "--out-dir", str(out_dir)]) == 0
            outs.append((out_dir / "heatmap.csv").read_bytes())
        assert outs[0] == outs[1]

    def test_a2_column_identical_to_u2(self, tmp_path):
        prefix = write_dataset(tmp_path, EXAMPLE6_NVERTS, EXAMPLE6_SIMPLICES)
        out_dir = tmp_path / "a2u2"
        assert main(["compare", "--methods", "u2,a2", "--input", prefix,
                     "--out-dir", str(out_dir)]) == 0
        lines = (out_dir / "heatmap.csv").read_text().splitlines()
        assert lines[1].split(",")[2] == "1"


class TestStats:
    def test_fig1_rows(self, tmp_path):
        prefix = write_dataset(tmp_path, FIG1_NVERTS, FIG1_SIMPLICES)
        out = tmp_path / "stats.csv"
        assert main(["stats", "--input", prefix, "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "order,nodes,hyperedges,lcc_pct"
        assert lines[1].startswith("2,4,2,")
        assert lines[2].startswith("3,3,1,")
        assert lines[3] == "complete,5,3,100"

    def test_empty_hypergraph_succeeds(self, tmp_path):
        prefix = write_dataset(tmp_path, [1, 1], [3, 9])
        out = tmp_path / "stats.csv"
        assert main(["stats", "--input", prefix, "--out", str(out)]) == 0
        lines = out.read_text().splitlines()
        assert lines == ["order,nodes,hyperedges,lcc_pct", "complete,0,0,0"]

    def test_directory_input_resolution(self, tmp_path):
        write_dataset(tmp_path, FIG1_NVERTS, FIG1_SIMPLICES)
        out = tmp_path / "stats.csv"
        assert main(["stats", "--input", str(tmp_path), "--out", str(out)]) == 0
