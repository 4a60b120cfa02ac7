import json

import pytest

from harmonic_sched import __version__
from harmonic_sched.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_spec(path, pairs, objects=None):
    data = {"classes": [{"time": t, "count": k} for t, k in pairs]}
    if objects is not None:
        data["objects"] = objects
    path.write_text(json.dumps(data))
    return str(path)


class TestPlan:
    def test_euclid_golden(self, capsys):
        code, out, _ = run(capsys, "plan", "--strategy", "euclid", "--r1", "180", "--r2", "53")
        data = json.loads(out)
        assert code == 0
        assert data["halts"] == 17
        assert data["a_sequence"] == [3, 2, 1, 1, 10]
        assert data["stage_lengths"] == [159, 42, 11, 10, 11]
        assert data["H"] == "466/413" and data["H_decimal"] == "1.1283"

    def test_csv_output(self, capsys):
        code, out, _ = run(capsys, "plan", "--strategy", "euclid", "--r1", "8", "--r2", "5",
                           "--agent-order", "type2-first", "--format", "csv")
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "object,1,2,3,4,5,6,7,8,9,10,11,12,13"
        assert lines[8] == "8,8,8,8,8,8,3,3,3,11,11,1,1,13"

    def test_deterministic(self, capsys, tmp_path):
        outs = []
        for name in ("a", "b"):
            run(capsys, "plan", "--strategy", "euclid", "--r1", "21", "--r2", "13",
                "--output-dir", str(tmp_path / name))
            outs.append({p.name: p.read_bytes() for p in sorted((tmp_path / name).iterdir())})
        assert outs[0] == outs[1]
        assert set(outs[0]) == {"matrix.csv", "matrix.csv.json", "spec.json", "summary.json", "types.csv"}

    def test_types_zero_class(self, capsys, tmp_path):
        run(capsys, "plan", "--strategy", "euclid", "--r1", "8", "--r2", "5",
            "--agent-order", "type2-first", "--zero-class", "1", "--output-dir", str(tmp_path))
        first = (tmp_path / "types.csv").read_text().splitlines()[1]
        assert first == "1,0,0,0,0,0,1,1,1,1,1,1,1,1"

    def test_cyclic_with_p(self, capsys, tmp_path):
        spec = write_spec(tmp_path / "s.json", [("1", 1), ("2", 1)], objects=5)
        code, out, _ = run(capsys, "plan", "--strategy", "cyclic", "--spec", spec)
        data = json.loads(out)
        assert code == 0
        assert data["rounds"] == 2 and data["remainder"] == 1
        assert data["halts"] == 1

    def test_reduce_gcd(self, capsys, tmp_path):
        spec = write_spec(tmp_path / "s.json", [("1", 4), ("3", 6)])
        code, out, _ = run(capsys, "plan", "--strategy", "cyclic", "--spec", spec, "--reduce-gcd")
        data = json.loads(out)
        assert code == 0 and data["gcd"] == 2 and data["halts"] == 4


class TestVerify:
    def test_round_trip_matrix(self, capsys, tmp_path):
        run(capsys, "plan", "--strategy", "euclid", "--r1", "8", "--r2", "5", "--output-dir", str(tmp_path))
        code, out, _ = run(capsys, "verify", "--spec", str(tmp_path / "spec.json"),
                           "--matrix", str(tmp_path / "matrix.csv"))
        data = json.loads(out)
        assert code == 0
        assert data["optimal"] and data["uniform"] and data["k_uniform"]
        assert data["halt_count"] == 5

    def test_scheme_json(self, capsys, tmp_path):
        spec = write_spec(tmp_path / "s.json", [("1", 1), ("2", 1)])
        scheme = {"segments": [
            [{"agent": 1, "start": "0", "end": "2/3"}, {"agent": 2, "start": "2/3", "end": "4/3"}],
            [{"agent": 2, "start": "0", "end": "2/3"}, {"agent": 1, "start": "2/3", "end": "4/3"}],
        ]}
        (tmp_path / "x.json").write_text(json.dumps(scheme))
        code, out, _ = run(capsys, "verify", "--spec", spec, "--scheme", str(tmp_path / "x.json"))
        assert code == 0 and json.loads(out)["duration"] == "4/3"

    def test_not_optimal_exits_one(self, capsys, tmp_path):
        spec = write_spec(tmp_path / "s.json", [("1", 1), ("2", 1)])
        (tmp_path / "m.csv").write_text("object,1,2\n1,1,1\n2,2,2\n")
        code, out, _ = run(capsys, "verify", "--spec", spec, "--matrix", str(tmp_path / "m.csv"))
        data = json.loads(out)
        assert code == 1 and not data["optimal"] and not data["k_uniform"]

    def test_bad_matrix(self, capsys, tmp_path):
        spec = write_spec(tmp_path / "s.json", [("1", 1), ("2", 1)])
        (tmp_path / "m.csv").write_text("object,1,2\n1,1,1\n2,1,2\n")
        code, _, err = run(capsys, "verify", "--spec", spec, "--matrix", str(tmp_path / "m.csv"))
        assert code == 2 and "error" in err


class TestAnalysis:
    def test_partition(self, capsys):
        code, out, _ = run(capsys, "partition", "--list", "2,3,4,5,6,7,9,10,12,14,15")
        data = json.loads(out)
        assert code == 0
        assert data["mean"] == "315/58"
        assert len(data["splits"]) == 2

    def test_partition_capacity(self, capsys):
        code, _, err = run(capsys, "partition", "--list", "1,2,3", "--bound", "2")
        assert code == 2 and "bound" in err

    def test_timing(self, capsys):
        code, out, _ = run(capsys, "timing", "--r1", "180", "--r2", "53", "--T", "2",
                           "--epsilon", "1/200", "--strategy", "cyclic")
        data = json.loads(out)
        assert data["total_decimal"] == "2.2933" and data["excess_percent_decimal"] == "103.3"

    def test_timing_equal_types(self, capsys):
        code, _, _ = run(capsys, "timing", "--r1", "3", "--r2", "2", "--T", "1", "--epsilon", "0")
        assert code == 2

    def test_fib(self, capsys):
        code, out, _ = run(capsys, "fib", "--p", "5")
        data = json.loads(out)
        assert (data["r1"], data["r2"], data["h"]) == (8, 5, 5)
        assert data["halts_at"] == [5, 8, 10, 11, 12]

    def test_halt_stats(self, capsys):
        code, out, _ = run(capsys, "halt-stats", "--n", "13")
        assert json.loads(out)["mean"] == "43/6"


class TestErrors:
    def test_non_coprime(self, capsys):
        code, _, err = run(capsys, "plan", "--strategy", "euclid", "--r1", "6", "--r2", "4")
        assert code == 2 and "gcd_reduce" in err

    def test_missing_args(self, capsys):
        code, _, err = run(capsys, "plan", "--strategy", "euclid", "--r1", "6")
        assert code == 2

    def test_argparse_usage(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["plan"])
        assert exc.value.code == 2

    def test_float_rational_rejected(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["timing", "--r1", "3", "--r2", "2", "--T", "abc", "--epsilon", "0"])
        assert exc.value.code == 2

    def test_version(self, capsys):
        with pytest.raises(SystemExit):
            main(["--version"])
        assert __version__ in capsys.readouterr().out
