import json

import pytest

from thompsonf.cli import run_capture
from thompsonf.plhomeo import PLMap
from thompsonf.words import Marking, standard_marking


@pytest.fixture
def std_file(tmp_path):
    p = tmp_path / "std.json"
    p.write_text(standard_marking(0, 1).to_json())
    return str(p)


def test_gen():
    code, out, _ = run_capture(["gen", "x", "5"])
    data = json.loads(out)
    assert code == 0
    assert data["support"] == [["31/32", "1"]]
    assert PLMap.from_dict(data).to_dict()["breakpoints"] == data["breakpoints"]


def test_eval(std_file):
    code, out, _ = run_capture(["eval", "--marking", std_file, "--word", "B A b a"])
    data = json.loads(out)
    assert code == 0 and data["is_identity"] is False
    code, out, _ = run_capture(["eval", "--marking", std_file, "--word", "b A A b a a B A B a"])
    assert json.loads(out)["is_identity"] is True


def test_girth(std_file):
    code, out, _ = run_capture(["girth", "--marking", std_file, "--max", "10"])
    data = json.loads(out)
    assert code == 0 and data["girth"] == 10


def test_girth_expectation_failure():
    code, out, _ = run_capture(["girth", "--max", "10", "--expect-free", "10"])
    assert code == 1 and json.loads(out)["status"] == "FAIL"


def test_nf_and_support():
    code, out, _ = run_capture(["nf", "--word", "b a"])
    assert code == 0 and json.loads(out)["normal_form"] == "x0 x2"
    code, out, _ = run_capture(["support", "--word", "b A"])
    assert json.loads(out)["support"] == [["0", "3/4"]]


def test_converge_csv():
    code, out, _ = run_capture(["converge", "--family", "xn", "--R", "6", "--n", "4..10", "--format", "csv"])
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert all(r[-2] in ("PASS", "n/a") for r in rows if r[0] != "summary" and len(r) == 5)
    assert "FAIL" not in out


def test_converge_power_text():
    code, out, _ = run_capture(["converge", "--family", "power", "--R", "5", "--n", "6..12", "--format", "text"])
    assert code == 0 and "stabilized from n = 6" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["converge", "--family", "xn", "--n", "5..3"],
        ["converge", "--family", "nope", "--n", "1..3"],
        ["eval", "--word", "a + b"],
        ["gen", "y", "3"],
        ["frobnicate"],
        ["girth", "--jobs", "0"],
        ["eval", "--marking", "/nonexistent.json", "--word", "a"],
    ],
)
def test_usage_errors(argv):
    code, _, err = run_capture(argv)
    assert code == 2 and "usage error" in err


def test_cap_exit_code():
    code, _, err = run_capture(["construct", "--mode", "targeted", "--m", "3", "--cap-breakpoints", "10"])
    assert code == 3 and "cap exceeded" in err


def test_construct_round_trip(tmp_path):
    code, out, _ = run_capture(["construct", "--word", "a b A B", "--epsilon", "1/64"])
    assert code == 0
    m = Marking.from_data(json.loads(out)["maps"])
    assert m.rank == 2
    target = tmp_path / "s.json"
    code, out, _ = run_capture(["construct", "--mode", "targeted", "--m", "2", "--output", str(target)])
    assert code == 0 and json.loads(out)["status"] == "PASS"
    code, out, _ = run_capture(["girth", "--marking", str(target), "--max", "2", "--expect-free", "2"])
    assert code == 0


def test_distance_and_fact():
    code, out, _ = run_capture(["distance", "--marking", "x0,x1,x2", "--marking", "x0,x1,x3"])
    assert json.loads(out) == {"R_star": 3, "R_max": 6, "distance_bound": "e^-3", "witness": "a c A B"}
    code, out, _ = run_capture(["fact", "--max", "3"])
    assert code == 0 and json.loads(out)["status"] == "PASS"


def test_deterministic_output():
    argv = ["converge", "--family", "small", "--R", "3", "--n", "1..4"]
    assert run_capture(argv) == run_capture(argv)
    argv = ["girth", "--marking", "x0,x1,x3", "--max", "5", "--jobs", "2"]
    assert run_capture(argv)[1] == run_capture(argv[:-2])[1]


def test_no_floats_in_output():
    _, out, _ = run_capture(["construct", "--word", "a B a", "--epsilon", "1/32"])
    assert "." not in out
