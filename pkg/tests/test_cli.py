import json

import pytest

from wedgespan.cli import main
from wedgespan.io import parse_result


def run(*argv):
    return main(list(argv))


class TestGen:
    def test_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        for out in (a, b):
            assert run("gen", "--generator", "uniform-square", "--n", "60",
                       "--seed", "7", "--out", str(out)) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_collinear_fixture(self, tmp_path):
        out = tmp_path / "c.json"
        assert run("gen", "--generator", "collinear", "--n", "3", "--out", str(out)) == 0
        obj = json.loads(out.read_text())
        assert obj["points"] == [[0, 0], [1, 0], [2, 0]]

    def test_equilateral_center(self, tmp_path):
        out = tmp_path / "e.json"
        assert run("gen", "--generator", "equilateral-center", "--out", str(out)) == 0
        assert len(json.loads(out.read_text())["points"]) == 4

    def test_unknown_generator(self):
        with pytest.raises(SystemExit):
            run("gen", "--generator", "nope")

    def test_csv_format(self, tmp_path):
        out = tmp_path / "c.csv"
        assert run("gen", "--generator", "collinear", "--n", "2", "--format", "csv",
                   "--out", str(out)) == 0
        assert out.read_text() == "0.0,0.0\n1.0,0.0\n"

    def test_square_grid_reduction_fixture(self, tmp_path):
        out = tmp_path / "g.json"
        assert run("gen", "--generator", "square-grid-reduction", "--width", "3",
                   "--height", "1", "--out", str(out)) == 0
        obj = json.loads(out.read_text())
        assert len(obj["points"]) == 6  # three grid vertices plus satellites

    def test_hex_grid_fixture(self, tmp_path):
        out = tmp_path / "h.json"
        assert run("gen", "--generator", "hex-grid", "--rows", "2", "--out", str(out)) == 0
        assert len(json.loads(out.read_text())["points"]) == 10


class TestSolve:
    @pytest.mark.parametrize("alpha,n", [(180, 10), (120, 60), (90, 64)])
    def test_solve_passes(self, tmp_path, alpha, n):
        inst = tmp_path / "i.json"
        res = tmp_path / "r.json"
        assert run("gen", "--generator", "uniform-square", "--n", str(n),
                   "--seed", "3", "--out", str(inst)) == 0
        assert run("solve", "--in", str(inst), "--alpha", str(alpha),
                   "--out", str(res)) == 0
        doc = parse_result(res.read_text())
        assert doc.summary["alpha"] == alpha
        bound = {180: 2.0, 120: 6.0, 90: 16.0}[alpha]
        assert doc.summary["ratio"] <= bound * (1 + 1e-9)
        assert doc.verification["passed"] is True

    def test_collinear_pi_ratio_one(self, tmp_path):
        inst = tmp_path / "i.json"
        res = tmp_path / "r.json"
        run("gen", "--generator", "collinear", "--n", "3", "--out", str(inst))
        assert run("solve", "--in", str(inst), "--alpha", "180", "--out", str(res)) == 0
        assert parse_result(res.read_text()).summary["ratio"] == pytest.approx(1.0)

    def test_svg_output(self, tmp_path):
        inst = tmp_path / "i.json"
        res = tmp_path / "r.json"
        svg = tmp_path / "r.svg"
        run("gen", "--generator", "uniform-square", "--n", "9", "--seed", "1",
            "--out", str(inst))
        assert run("solve", "--in", str(inst), "--alpha", "120", "--out", str(res),
                   "--svg", str(svg)) == 0
        assert svg.read_text().startswith("<?xml")


class TestConvert:
    def test_three_close_points(self, tmp_path):
        inst = tmp_path / "i.json"
        res = tmp_path / "r.json"
        inst.write_text('{"points": [[0, 0], [0.6, 0], [0.3, 0.5]]}')
        assert run("convert", "--in", str(inst), "--out", str(res)) == 0
        doc = parse_result(res.read_text())
        assert doc.summary["hop_stretch"] <= 2
        assert doc.summary["max_edge_len"] <= 7.0 + 1e-9

    def test_disconnected_exit_code(self, tmp_path):
        inst = tmp_path / "i.json"
        inst.write_text('{"points": [[0, 0], [3, 0]]}')
        assert run("convert", "--in", str(inst), "--out", str(tmp_path / "r.json")) == 2


class TestVerify:
    def test_round_trip_passes(self, tmp_path):
        inst = tmp_path / "i.json"
        res = tmp_path / "r.json"
        run("gen", "--generator", "uniform-square", "--n", "12", "--seed", "5",
            "--out", str(inst))
        run("solve", "--in", str(inst), "--alpha", "120", "--out", str(res))
        assert run("verify", "--in", str(inst), "--result", str(res)) == 0

    def test_tampered_result_fails(self, tmp_path):
        inst = tmp_path / "i.json"
        res = tmp_path / "r.json"
        run("gen", "--generator", "uniform-square", "--n", "12", "--seed", "5",
            "--out", str(inst))
        run("solve", "--in", str(inst), "--alpha", "120", "--out", str(res))
        obj = json.loads(res.read_text())
        obj["summary"]["weight"] = obj["summary"]["weight"] * 0.5
        res.write_text(json.dumps(obj))
        assert run("verify", "--in", str(inst), "--result", str(res)) == 1

    def test_spanner_result_verifies(self, tmp_path):
        inst = tmp_path / "i.json"
        res = tmp_path / "r.json"
        inst.write_text('{"points": [[0, 0], [0.6, 0], [0.3, 0.5], [1.1, 0.2]]}')
        assert run("convert", "--in", str(inst), "--out", str(res)) == 0
        assert run("verify", "--in", str(inst), "--result", str(res)) == 0


class TestOracle:
    def test_equilateral_59_reports_absent(self, tmp_path, capsys):
        inst = tmp_path / "i.json"
        out = tmp_path / "o.json"
        run("gen", "--generator", "equilateral", "--out", str(inst))
        assert run("oracle", "--in", str(inst), "--alpha", "59", "--out", str(out)) == 0
        assert "no alpha-ST exists" in capsys.readouterr().out
        assert json.loads(out.read_text())["exists"] is False

    def test_ratio_reported(self, tmp_path):
        inst = tmp_path / "i.json"
        out = tmp_path / "o.json"
        run("gen", "--generator", "equilateral-center", "--out", str(inst))
        assert run("oracle", "--in", str(inst), "--alpha", "200", "--out", str(out)) == 0
        obj = json.loads(out.read_text())
        assert obj["exists"] is True
        assert obj["ratio"] == pytest.approx((2 + 3 ** 0.5) / 3, abs=1e-6)


class TestRender:
    def test_instance_only(self, tmp_path):
        inst = tmp_path / "i.json"
        out = tmp_path / "p.svg"
        run("gen", "--generator", "collinear", "--n", "4", "--out", str(inst))
        assert run("render", "--in", str(inst), "--out", str(out)) == 0
        assert "<svg" in out.read_text()


class TestBench:
    def test_rows_and_ratios(self, tmp_path):
        out = tmp_path / "bench.csv"
        assert run("bench", "--alpha", "120", "--n", "60", "--seeds", "5",
                   "--out", str(out)) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "seed,n,alpha,ratio,runtime_s"
        assert len(lines) == 6
        for row in lines[1:]:
            seed, n, alpha, ratio, runtime = row.split(",")
            assert float(ratio) <= 6.0 + 1e-9
            assert int(n) == 60
