"""End-to-end tests of the command-line interface via main(argv)."""

import json
import math

import pytest

from hypbilliards.cli import main, parse_dims, parse_floats
from hypbilliards.simplex import build


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_dims():
    assert parse_dims("3") == (3,)
    assert parse_dims("2..5") == (2, 3, 4, 5)
    assert parse_dims("2,4,7") == (2, 4, 7)
    assert parse_dims("1,3..4") == (1, 3, 4)
    for bad in ("5..2", "", ","):
        with pytest.raises(ValueError):
            parse_dims(bad)


def test_parse_floats():
    assert parse_floats("0.5,1,2") == (0.5, 1.0, 2.0)
    with pytest.raises(ValueError):
        parse_floats(",")


def test_simplex_document_on_stdout(capsys):
    code, out, _ = run(capsys, "simplex", "--dim", "2", "--cosh-edge", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 2
    assert doc["edge"] == pytest.approx(math.acosh(2.0), rel=1e-15)
    m = doc["metrics"]
    assert m["expected_cosh_sq_vertex_center"] == pytest.approx(5.0 / 3.0, rel=1e-15)
    assert m["expected_cosh_sq_vertex_facet_center"] == pytest.approx(8.0 / 3.0, rel=1e-15)
    assert m["expected_centroid_weight"] == pytest.approx(math.sqrt(15.0), rel=1e-15)
    # full-precision documents reload bit for bit
    assert json.loads(json.dumps(doc)) == doc


def test_cosh_edge_takes_precedence(capsys):
    code, out, _ = run(capsys, "simplex", "--dim", "2", "--edge", "5",
                       "--cosh-edge", "2")
    assert code == 0
    assert json.loads(out)["edge"] == pytest.approx(math.acosh(2.0), rel=1e-15)


def test_simplex_precision_flag(capsys):
    code, out, _ = run(capsys, "simplex", "--dim", "2", "--edge", "1",
                       "--precision", "3")
    assert code == 0
    w = json.loads(out)["metrics"]["expected_centroid_weight"]
    assert w == float(f"{math.sqrt(3.0 * (2.0 * math.cosh(1.0) + 1.0)):.3g}")


@pytest.mark.parametrize("argv", [
    ("simplex", "--dim", "0", "--edge", "1"),        # dimension too small
    ("simplex", "--dim", "3"),                        # no edge given
    ("simplex", "--dim", "3", "--edge", "-1"),        # negative edge
    ("simplex", "--dim", "3", "--cosh-edge", "0.5"),  # cosh below 1
    ("orbit", "--dim", "1", "--edge", "1"),           # no weight profile below n=2
    ("verify", "--dims", "1..3", "--edges", "1"),     # sweep includes n=1
    ("simplex", "--dim", "3", "--edge", "1", "--precision", "0"),
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err  # some explanation lands on stderr


def test_unknown_flag_exits_two(capsys):
    assert main(["simplex", "--dim", "3", "--no-such-flag"]) == 2
    capsys.readouterr()


def test_missing_subcommand_exits_two(capsys):
    assert main([]) == 2
    capsys.readouterr()


def test_orbit_verifies_and_writes_files(capsys, tmp_path):
    jpath = tmp_path / "orbit.json"
    cpath = tmp_path / "orbit.csv"
    code, out, _ = run(capsys, "orbit", "--dim", "3", "--edge", "1",
                       "--json", str(jpath), "--disk-coords", str(cpath))
    assert code == 0
    assert out == ""
    doc = json.loads(jpath.read_text())
    assert doc["checks"]["passed"] is True
    assert len(doc["orbit"]["points"]) == 4
    assert doc["mass_sequence"]["lambda"] > 2.0
    lines = cpath.read_text().splitlines()
    assert lines[0] == "index,mass,disk0,disk1,disk2"
    assert len(lines) == 5


def test_orbit_impossible_tolerance_fails(capsys):
    code, out, _ = run(capsys, "orbit", "--dim", "3", "--edge", "1",
                       "--tol", "1e-30")
    assert code == 1
    assert json.loads(out)["checks"]["passed"] is False


def test_verify_sweep_report_and_stderr(capsys, tmp_path):
    rpath = tmp_path / "report.json"
    code, out, err = run(capsys, "verify", "--dims", "4,2,3", "--edges", "1",
                         "--report", str(rpath))
    assert code == 0
    assert out == ""
    doc = json.loads(rpath.read_text())
    assert [c["n"] for c in doc["cells"]] == [2, 3, 4]
    assert doc["passed"] is True
    lines = err.strip().splitlines()
    assert lines[0] == "cell n=2 edge=1: pass"
    assert lines[-1] == "sweep over 3 cells: pass"


def test_verify_failure_exit_code(capsys):
    code, out, err = run(capsys, "verify", "--dims", "2", "--edges", "1",
                         "--tol", "1e-30")
    assert code == 1
    assert json.loads(out)["passed"] is False
    assert "FAIL" in err


def test_simulate_retraces_orbit(capsys):
    code, out, err = run(capsys, "simulate", "--dim", "3", "--edge", "1",
                         "--steps", "8")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "step,facet,arclength,disk0,disk1,disk2"
    assert len(lines) == 9
    assert [row.split(",")[1] for row in lines[1:]] == ["1", "2", "3", "0"] * 2
    # the periodic orbit has equal flight lengths
    arcs = [float(row.split(",")[2]) for row in lines[1:]]
    assert max(arcs) - min(arcs) < 1e-12
    assert "8 bounces" in err


def test_simulate_zero_steps_header_only(capsys):
    code, out, _ = run(capsys, "simulate", "--dim", "2", "--edge", "1",
                       "--steps", "0")
    assert code == 0
    assert out.splitlines() == ["step,facet,arclength,disk0,disk1"]


def test_simulate_corner_shot_exits_four(capsys):
    s = build(2, 1.0)
    start = ",".join(repr(float(x)) for x in s.circumcenter.coords)
    aim = ",".join(repr(float(x)) for x in s.vertices[0].coords)
    code, _, err = run(capsys, "simulate", "--dim", "2", "--edge", "1",
                       "--steps", "5", "--start-coords", start,
                       "--dir-coords", aim)
    assert code == 4
    assert "non-smooth" in err


def test_simulate_start_coords_validation(capsys):
    # not on the hyperboloid
    code, _, _ = run(capsys, "simulate", "--dim", "2", "--edge", "1",
                     "--start-coords", "1,1,0,0", "--dir-coords", "0,1,0,0")
    assert code == 2
    # on the hyperboloid but off the simplex slice
    t = 0.25
    start = ",".join(repr(float(x)) for x in (math.cosh(t), math.sinh(t), 0.0, 0.0))
    code, _, err = run(capsys, "simulate", "--dim", "2", "--edge", "1",
                       "--start-coords", start, "--dir-coords", "0,1,0,0")
    assert code == 2
    assert "slice" in err
    # one of the pair alone is rejected
    code, _, _ = run(capsys, "simulate", "--dim", "2", "--edge", "1",
                     "--start-coords", "1,0,0,0")
    assert code == 2


def test_simulate_perturbation_deterministic(capsys):
    args = ("simulate", "--dim", "2", "--edge", "1", "--steps", "12",
            "--perturb", "0.1")
    code1, out1, _ = run(capsys, *args, "--seed", "3")
    code2, out2, _ = run(capsys, *args, "--seed", "3")
    code3, out3, _ = run(capsys, *args, "--seed", "4")
    assert code1 == code2 == code3 == 0
    assert out1 == out2
    assert out1 != out3


def test_verify_default_grid_arguments():
    from hypbilliards.cli import build_parser
    args = build_parser().parse_args(["verify"])
    assert parse_dims(args.dims) == tuple(range(2, 9))
    assert parse_floats(args.edges) == (0.5, 1.0, 2.0)
