import json

import pytest

from qemc.cli import main
from qemc.graphs import complete_graph, write_edge_list_file


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4.txt"
    write_edge_list_file(complete_graph(4), path)
    return str(path)


class TestGenerate:
    def test_k4_edge_list(self, tmp_path, capsys):
        out = tmp_path / "g.txt"
        assert main(["generate", "--nodes", "4", "--degree", "3",
                     "--seed", "1", "--out", str(out)]) == 0
        assert len(out.read_text().splitlines()) == 6
        assert "N=4 M=6" in capsys.readouterr().out

    def test_parity_error_exits_1(self, tmp_path, capsys):
        code = main(["generate", "--nodes", "5", "--degree", "3",
                     "--out", str(tmp_path / "g.txt")])
        assert code == 1
        assert "even" in capsys.readouterr().err

    def test_deterministic_files(self, tmp_path):
        a, b = tmp_path / "a.txt", tmp_path / "b.txt"
        main(["generate", "--nodes", "16", "--degree", "9", "--seed", "7",
              "--out", str(a)])
        main(["generate", "--nodes", "16", "--degree", "9", "--seed", "7",
              "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()


class TestSolve:
    def test_k4_reaches_4(self, k4_file, tmp_path, capsys):
        out = tmp_path / "run.json"
        code = main(["solve", "--graph", k4_file, "--layers", "1",
                     "--step-size", "0.99", "--iters", "300", "--seed", "5",
                     "--target", "3.7", "--out", str(out)])
        assert code == 0
        stdout = capsys.readouterr().out
        assert "final best cut: 4" in stdout
        assert "iterations to target 3.7: 1" in stdout
        payload = json.loads(out.read_text())
        assert payload["config"]["optimizer"]["step_size"] == 0.99
        assert payload["version"]

    def test_shots_token_3n2(self, tmp_path):
        graph_path = tmp_path / "g16.txt"
        main(["generate", "--nodes", "16", "--degree", "3", "--seed", "2",
              "--out", str(graph_path)])
        out = tmp_path / "run.json"
        code = main(["solve", "--graph", str(graph_path), "--layers", "1",
                     "--step-size", "0.5", "--iters", "1", "--shots", "3n2",
                     "--out", str(out)])
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["config"]["optimizer"]["shots"] == 768

    def test_blue_zero_exits_1(self, k4_file, tmp_path):
        code = main(["solve", "--graph", k4_file, "--layers", "1",
                     "--step-size", "0.5", "--iters", "2", "--blue", "0",
                     "--out", str(tmp_path / "x.json")])
        assert code == 1

    def test_bad_shots_token_exits_1(self, k4_file, tmp_path):
        code = main(["solve", "--graph", k4_file, "--layers", "1",
                     "--step-size", "0.5", "--iters", "2", "--shots", "lots",
                     "--out", str(tmp_path / "x.json")])
        assert code == 1

    def test_missing_graph_file_exits_2(self, tmp_path):
        code = main(["solve", "--graph", str(tmp_path / "nope.txt"),
                     "--layers", "1", "--step-size", "0.5", "--iters", "2",
                     "--out", str(tmp_path / "x.json")])
        assert code == 2

    def test_rerun_is_bit_identical(self, k4_file, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        args = ["solve", "--graph", k4_file, "--layers", "1", "--step-size",
                "0.9", "--iters", "40", "--seed", "3"]
        main(args + ["--out", str(a)])
        main(args + ["--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_scan_blue(self, k4_file, tmp_path, capsys):
        code = main(["solve", "--graph", k4_file, "--layers", "1",
                     "--step-size", "0.99", "--iters", "150", "--scan-blue",
                     "--out", str(tmp_path / "scan.json")])
        assert code == 0
        assert "scan selected blue_count=2" in capsys.readouterr().out

    def test_svg_emission(self, k4_file, tmp_path):
        svg_path = tmp_path / "curve.svg"
        main(["solve", "--graph", k4_file, "--layers", "1", "--step-size",
              "0.9", "--iters", "20", "--svg", str(svg_path),
              "--out", str(tmp_path / "r.json")])
        assert svg_path.read_text().startswith("<svg")

    def test_env_seed_fallback(self, k4_file, tmp_path, monkeypatch):
        monkeypatch.setenv("QEMC_SEED", "17")
        out = tmp_path / "env.json"
        main(["solve", "--graph", k4_file, "--layers", "1", "--step-size",
              "0.9", "--iters", "5", "--out", str(out)])
        assert json.loads(out.read_text())["seed"] == 17


class TestExhaustive:
    def test_prints_optimum_and_witness(self, k4_file, capsys):
        assert main(["exhaustive", "--graph", k4_file]) == 0
        stdout = capsys.readouterr().out
        assert "optimal cut: 4" in stdout
        assert "blue nodes:" in stdout

    def test_cap_exit(self, k4_file):
        assert main(["exhaustive", "--graph", k4_file, "--cap", "3"]) == 1


class TestGw:
    def test_csv_rows(self, k4_file, tmp_path):
        out = tmp_path / "gw.csv"
        assert main(["gw", "--graph", k4_file, "--trials", "10", "--seed", "1",
                     "--out", str(out)]) == 0
        lines = out.read_text().strip().splitlines()
        comments = [l for l in lines if l.startswith("#")]
        data = [l for l in lines if not l.startswith("#")]
        assert any("version" in c for c in comments)
        assert data[0] == "trial,cut"
        assert len(data) == 11


class TestGrid:
    def test_nine_cells(self, k4_file, tmp_path, capsys):
        out = tmp_path / "grid.csv"
        code = main(["grid", "--graph", k4_file, "--layers", "1,2,3",
                     "--steps", "0.5,0.7,0.9", "--trials", "1", "--iters", "2",
                     "--jobs", "1", "--out", str(out)])
        assert code == 0
        data = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert data[0] == "layers,step_size,trial,final_best_cut"
        assert len(data) == 1 + 9


class TestScaling:
    def test_layers_axis(self, k4_file, tmp_path, capsys):
        out = tmp_path / "scaling.csv"
        code = main(["scaling", "--graph", k4_file, "--target", "3.7",
                     "--axis", "layers", "--values", "1,2", "--step-size",
                     "0.99", "--iters", "150", "--trials", "2", "--jobs", "1",
                     "--out", str(out)])
        assert code == 0
        data = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert data[0] == "num_nodes,axis,minimal_value,reached"
        assert data[1].startswith("4,layers,1")


class TestStudy:
    def test_tiny_study(self, tmp_path, capsys):
        out = tmp_path / "study.csv"
        svg_path = tmp_path / "study.svg"
        code = main(["study", "--instances", "1", "--nodes", "8", "--degree",
                     "3", "--layers", "1", "--step-size", "0.9", "--iters", "5",
                     "--qemc-trials", "1", "--gw-trials", "1", "--jobs", "1",
                     "--svg", str(svg_path), "--out", str(out)])
        assert code == 0
        stdout = capsys.readouterr().out
        assert "avg QEMC" in stdout
        data = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert len(data) == 1 + 4 * 5
        assert svg_path.read_text().startswith("<svg")


class TestUsage:
    def test_unknown_command_exits_1(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["frobnicate"])
        assert info.value.code == 1

    def test_missing_required_exits_1(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["generate", "--nodes", "4"])
        assert info.value.code == 1
