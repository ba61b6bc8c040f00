import json

import pytest
from pydantic import ValidationError

import db
from main import EXIT_OK, EXIT_USAGE, RunConfig, main

TREFOIL_JONES = "-t^4 + t^3 + t"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_text(capsys):
    code, out, _ = run(capsys, "compute", "--braid", "1 1 1", "--invariant", "jones")
    assert code == EXIT_OK
    assert out.strip() == TREFOIL_JONES


def test_compute_pd_matches_braid(capsys):
    _, out, _ = run(capsys, "compute", "--pd", "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)", "--invariant", "determinant")
    assert out.strip() == "3"


def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", "--braid", "1 1 1", "--invariant", "alexander", "--json")
    payload = json.loads(out)
    assert code == EXIT_OK
    assert payload["schema"] == "skeinlab/1"
    assert payload["invariant"] == "alexander"
    assert payload["input"] == "braid:1 1 1"


def test_arrow_of_a_virtual_knot(capsys):
    code, out, _ = run(capsys, "compute", "--gauss", "O1+O2+U1+U2+", "--invariant", "arrow")
    assert code == EXIT_OK
    assert "K1" in out


def test_braid_only_invariants(capsys):
    _, out, _ = run(capsys, "compute", "--braid", "1", "--invariant", "tl")
    assert out.strip() == "-A^3"
    code, _, err = run(capsys, "compute", "--pd", "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)", "--invariant", "tl")
    assert code == EXIT_USAGE
    assert err.startswith("error: BAD_INDEX")


def test_vassiliev_coefficients(capsys):
    _, out, _ = run(capsys, "compute", "--braid", "1 1 1", "--invariant", "vcoeffs", "--nmax", "2")
    assert out.strip() == "[1, 0, -3]"


def test_file_input(tmp_path, capsys):
    path = tmp_path / "knots.txt"
    path.write_text("# trefoil and figure eight\n1 1 1\n\n1 -2 1 -2\n", encoding="utf-8")
    code, out, _ = run(capsys, "compute", "--file", str(path), "--format", "braid", "--invariant", "knot-determinant",
                       "--threads", "2")
    assert code == EXIT_OK
    assert out.splitlines() == ["braid:1 1 1\t3", "braid:1 -2 1 -2\t5"]


def test_cache_round_trip(tmp_path, capsys):
    cache = str(tmp_path / "cache.db")
    argv = ["compute", "--braid", "1 1 1", "--invariant", "jones", "--cache", cache]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[1] == second[1]
    assert db.count_cached(cache) == 1


@pytest.mark.parametrize(
    "argv,code",
    [
        (["compute"], "USAGE"),
        (["compute", "--pd", "X(1,1,2,2)", "--braid", "1"], "USAGE"),
        (["compute", "--pd", "X(1,5,2"], "PARSE_ERROR"),
        (["compute", "--braid", "1 1 1", "--invariant", "volume"], "USAGE"),
        (["explode"], "USAGE"),
    ],
)
def test_usage_errors(capsys, argv, code):
    status, out, err = run(capsys, *argv)
    assert status == EXIT_USAGE
    assert out == ""
    assert err.startswith(f"error: {code}")


@pytest.mark.parametrize(
    "argv,code",
    [
        (["compute", "--gauss", "O1+O2+U1+U2+", "--invariant", "determinant"], "NON_PLANAR"),
        (["compute", "--gauss", "O1+O2+U1+U2+", "--invariant", "khovanov"], "NON_PLANAR"),
        (["compute", "--gauss", "O1+O2+U1+U2+", "--invariant", "vcoeffs"], "NON_PLANAR"),
        (["compute", "--braid", "1 1", "--invariant", "knot-determinant"], "NON_INTEGRAL_COMPOSITION"),
        (["compute", "--pd", "X(1,2,2,1) X(3,4,4,3)", "--invariant", "jones"], "DISCONNECTED_DIAGRAM"),
        (["compute", "--braid", "1", "--strands", "3"], "DISCONNECTED_DIAGRAM"),
    ],
)
def test_engine_errors_are_reported(capsys, argv, code):
    status, out, err = run(capsys, *argv)
    assert status == EXIT_USAGE
    assert out == ""
    assert err.startswith(f"error: {code}: ")
    assert "Traceback" not in err


def test_crossing_cap(capsys):
    code, _, err = run(capsys, "compute", "--braid", "1 1 1 1 1", "--invariant", "bracket", "--max-crossings", "3")
    assert code == EXIT_USAGE
    assert "TOO_MANY_CROSSINGS" in err


def test_states(capsys):
    code, out, _ = run(capsys, "states", "cube", "--braid", "1 1 1", "--json")
    payload = json.loads(out)
    assert code == EXIT_OK
    assert payload["summary"]["states"] == 8
    code, out, _ = run(capsys, "states", "trails", "--braid", "1 1 1")
    assert code == EXIT_OK
    assert "states=3" in out.splitlines()[-1]


def test_verify_selected_suites(capsys):
    code, out, _ = run(capsys, "verify", "axioms", "--tl", "--frobenius", "--lie")
    assert code == EXIT_OK
    assert out.strip().endswith("PASSED")


def test_verify_fourterm(capsys):
    code, out, _ = run(capsys, "verify", "fourterm", "--degree", "3", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["passed"] is True


def test_verify_fuzz(capsys):
    code, out, _ = run(capsys, "verify", "fuzz", "--fixture", "3_1", "--sequences", "2", "--length", "5")
    assert code == EXIT_OK, out


@pytest.mark.slow
def test_verify_all_axioms(capsys):
    code, out, _ = run(capsys, "verify", "axioms")
    assert code == EXIT_OK, out


def test_search(capsys):
    code, out, _ = run(capsys, "search", "unit-jones", "--max-classical", "2", "--json")
    payload = json.loads(out)
    assert code == EXIT_OK
    assert payload["searched"] == 52
    assert payload["complete"] is True


def test_run_config_validation():
    with pytest.raises(ValidationError):
        RunConfig(command="compute")
    with pytest.raises(ValidationError):
        RunConfig(command="verify", fixtures=["9_99"])
    cfg = RunConfig(command="compute", braid="1 1", max_crossings=5, nmax=4)
    assert (cfg.caps.crossings, cfg.caps.nmax) == (5, 4)
