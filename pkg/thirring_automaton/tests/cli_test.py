import json

import pytest

from thirring_automaton.cli import main


class TestCli(object):
    def test_run_builtin_prints_ascii(self, capsys):
        assert main(["run", "scattering"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 25
        assert all(len(line) == 24 for line in lines)

    def test_run_file_writes_outputs(self, tmp_path, capsys):
        scenario = {
            "schema_version": 1,
            "name": "pair",
            "n_x": 4,
            "n_half_steps": 6,
            "initial": {"kind": "sharp", "n_R": [1, 0, 0, 1], "n_I": [0, 0, 0, 0]},
            "outputs": {"trajectory_csv": "pair.csv", "metadata": "pair.json"},
        }
        path = tmp_path / "pair.json"
        path.write_text(json.dumps(scenario))
        out_dir = tmp_path / "out"
        out_dir.mkdir()
        assert main(["run", str(path), "--output-dir", str(out_dir)]) == 0
        assert (out_dir / "pair.csv").exists()
        assert json.loads((out_dir / "pair.json").read_text())["name"] == "pair"
        assert "wrote" in capsys.readouterr().err

    def test_expect(self, capsys):
        assert main(["expect", "soliton"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "t,observable,value,stderr"
        assert lines[1] == "0,particle_count,41,0"

    def test_verify(self, capsys):
        assert main(["verify", "--suite", "equivalence"]) == 0
        out = capsys.readouterr().out
        assert out.count("PASS") == 5
        assert "FAIL" not in out

    def test_extract_interacting(self, capsys):
        assert main(["extract-op", "--model", "interacting", "--parity", "odd"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert "# unique_jump=True" in lines
        assert "# gauge=found" in lines
        assert "# eta=1" in lines
        rows = [line for line in lines if not line.startswith("#")]
        assert len(rows) == 16
        assert all(len(row.split(",")) == 16 for row in rows)

    def test_extract_free_fraction(self, capsys):
        assert main(["extract-op", "--model", "free", "--g", "1/2"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert "# unique_jump=False" in lines
        assert "# gauge=none" in lines
        assert lines[-1] == "0,0,0,-1/2"

    def test_ising_enumerate(self, capsys):
        assert main(["ising", "--enumerate", "--beta", "1.0", "--T", "3"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert "# method=enumeration" in lines
        assert "# boundary=fixed-initial/free-final" in lines
        assert "quantity,value,stderr" in lines
        assert lines[-2].startswith("violation_density,")

    def test_ising_metropolis(self, capsys):
        args = ["ising", "--beta", "2.0", "--T", "3", "--sweeps", "200", "--burn", "20", "--seed", "4"]
        assert main(args) == 0
        lines = capsys.readouterr().out.splitlines()
        assert "# seed=4" in lines
        assert "# generator=numpy.random.Philox" in lines
        assert lines[-1].startswith("acceptance_rate,")

    def test_bench_regression(self, tmp_path, capsys):
        baseline = tmp_path / "baseline.json"
        baseline.write_text(json.dumps({"site_updates_per_s": 1e30}))
        args = ["bench", "--nx", "64", "--batch", "2", "--steps", "2", "--baseline", str(baseline)]
        assert main(args) == 1
        record = json.loads(capsys.readouterr().out)
        assert record["regression"] is True

    def test_bench_record(self, tmp_path, capsys):
        target = tmp_path / "new.json"
        args = ["bench", "--nx", "64", "--batch", "2", "--steps", "2", "--record", str(target)]
        assert main(args) == 0
        assert json.loads(target.read_text())["site_updates_per_s"] > 0

    @pytest.mark.parametrize(
        "args",
        [
            ["run", "does-not-exist.json"],
            ["extract-op", "--model", "free", "--g", "abc"],
            ["ising", "--enumerate", "--nx", "4", "--T", "4"],
            ["ising", "--nx", "3"],
        ],
    )
    def test_invalid_input_exits_2(self, args, capsys):
        assert main(args) == 2
        assert capsys.readouterr().err.startswith("error:")

    def test_site_observable_out_of_range_exits_2(self, tmp_path, capsys):
        scenario = {
            "schema_version": 1,
            "n_x": 4,
            "initial": {"kind": "sharp", "n_R": [1, 0, 0, 0], "n_I": [0, 0, 0, 0]},
            "observables": ["n_R[7]"],
        }
        path = tmp_path / "site.json"
        path.write_text(json.dumps(scenario))
        assert main(["expect", str(path)]) == 2
        err = capsys.readouterr().err
        assert err.startswith("error:")
        assert "n_R[7]" in err
        assert "Traceback" not in err

    def test_argparse_errors(self):
        with pytest.raises(SystemExit):
            main(["verify", "--suite", "speed"])
