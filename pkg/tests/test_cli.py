"""Runs the command line on small JSON files and checks the printed results and exit codes.

"""

import json

import pytest

from pyweil.cli import RunConfig, main

DUAL = {"prime": 5, "precision": 20, "jet_order": 1}
CIRCLE = {
    "prime": 5,
    "precision": 20,
    "nvars": 2,
    "equations": [
        {"terms": [{"exponents": [2, 0], "coeff": "1"}, {"exponents": [0, 2], "coeff": "1"},
                   {"exponents": [0, 0], "coeff": "-1"}]}
    ],
}


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


def run(capsys, argv):
    status = main(argv)
    return status, capsys.readouterr().out


def run_json(capsys, argv):
    status, out = run(capsys, argv)
    return status, json.loads(out)


def test_padic_commands(capsys):
    assert run(capsys, ["padic", "add", "--p", "5", "5", "25"]) == (0, "30 (norm 1/5)\n")
    assert run(capsys, ["padic", "norm", "--p", "5", "25"]) == (0, "1/25\n")
    assert run(capsys, ["padic", "digits", "--p", "5", "--N", "4", "1/3"]) == (0, "2 3 1 3\n")
    assert run(capsys, ["padic", "div", "--p", "5", "--", "1", "-4"]) == (0, "-1/4 (norm 1)\n")


def test_padic_input_errors(capsys):
    assert main(["padic", "add", "--p", "4", "1", "2"]) == 2
    assert main(["padic", "add", "--p", "5", "1"]) == 2
    assert main(["padic", "norm", "--p", "5", "0.5"]) == 2
    assert main(["padic", "norm", "1"]) == 2
    assert "pyweil: error" in capsys.readouterr().err


def test_algebra_check(tmp_path, capsys):
    dual = {"prime": 5, "precision": 10, "dim": 2, "structure_constants": [
        {"i": 1, "j": 1, "k": 1, "value": "1"}, {"i": 1, "j": 2, "k": 2, "value": "1"},
        {"i": 2, "j": 1, "k": 2, "value": "1"}]}
    status, payload = run_json(capsys, ["algebra", "check", write(tmp_path, "dual.json", dual)])
    assert status == 0
    assert payload["weil_algebra"] == "pass"
    assert payload["nilpotency_index"] == 2

    dual["structure_constants"].append({"i": 2, "j": 2, "k": 2, "value": "1"})
    status, payload = run_json(capsys, ["algebra", "check", write(tmp_path, "idempotent.json", dual)])
    assert status == 1
    assert payload["error"] == "NilpotencyError"
    assert payload["witness"] == [2, 2]


def test_lift_with_diagram_check(tmp_path, capsys):
    square = write(tmp_path, "square.json", {"prime": 5, "precision": 20, "terms": [{"exponents": [2], "coeff": "1"}]})
    write(tmp_path, "dual.json", DUAL)
    point = write(tmp_path, "point.json", {"algebra": "dual.json", "coords": [["3", "7"]]})
    status, payload = run_json(capsys, ["lift", square, point, "--check-diagram"])
    assert status == 0
    assert payload["coeffs"] == ["9", "42"]
    assert payload["display"] == "9 + 42ε"
    assert payload["diagram"] == "pass"


def test_lift_outside_the_disc(tmp_path, capsys):
    geometric = {"prime": 5, "precision": 20, "polynomial": False,
                 "terms": [{"exponents": [n], "coeff": "1"} for n in range(21)]}
    point = write(tmp_path, "point.json", {"algebra": DUAL, "coords": [["1", "0"]]})
    status, payload = run_json(capsys, ["lift", write(tmp_path, "geometric.json", geometric), point])
    assert status == 1
    assert payload["error"] == "ConvergenceError"
    assert payload["certificate"]["passed"] is False


def test_mahler_commands(tmp_path, capsys):
    samples = write(tmp_path, "samples.json", {"prime": 5, "precision": 20, "samples": ["0", "1", "4", "9", "16"]})
    status, payload = run_json(capsys, ["mahler", "fit", samples])
    assert status == 0
    assert payload["coeffs"] == ["0", "1", "2", "0", "0"]

    coeffs = write(tmp_path, "coeffs.json", {"prime": 5, "precision": 20, "coeffs": ["0", "1", "2"]})
    assert run_json(capsys, ["mahler", "eval", coeffs, "--x", "7"])[1]["value"] == "49"

    ones = write(tmp_path, "ones.json", {"prime": 5, "precision": 20, "coeffs": ["1"] * 10})
    status, payload = run_json(capsys, ["mahler", "check", ones])
    assert status == 1
    assert payload["verdict"] is False


def test_fgl_commands(tmp_path, capsys):
    curve = write(tmp_path, "curve.json", {"prime": 5, "precision": 20, "a1": "1"})
    assert main(["fgl", "build", curve, "--degree", "2"]) == 2
    assert "singular" in capsys.readouterr().err

    argv = ["fgl", "add", curve, "--degree", "2", "--allow-singular", "--x", "5,1", "--y", "10,0"]
    status, payload = run_json(capsys, argv)
    assert status == 0
    assert payload["coeffs"] == ["-35", "-9"]

    curve_37a = write(tmp_path, "37a.json", {"prime": 5, "precision": 20, "a3": "1", "a4": "-1"})
    status, payload = run_json(capsys, ["fgl", "verify", curve_37a, "--degree", "6"])
    assert status == 0
    assert payload["axioms"] == "pass"


def test_dioph_commands(tmp_path, capsys):
    circle = write(tmp_path, "circle.json", CIRCLE)
    status, payload = run_json(capsys, ["dioph", "tangent", circle, "--base", "1,0"])
    assert status == 0
    assert payload["kernel_basis"] == [["0", "1"]]

    status, payload = run_json(capsys, ["dioph", "points", circle, "--base", "1,0"])
    assert status == 0
    assert payload["verifier"] == "pass"
    status, payload = run_json(capsys, ["dioph", "points", circle, "--base", "1,0", "--vector", "1,0"])
    assert status == 1
    assert payload["verifier"] == "fail"

    status, payload = run_json(capsys, ["dioph", "tangent", circle, "--base", "1,1"])
    assert status == 1
    assert payload["error"] == "NotASolutionError"


def test_dioph_hensel(tmp_path, capsys):
    system = {"prime": 5, "precision": 2, "equations": [
        {"terms": [{"exponents": [2], "coeff": "1"}, {"exponents": [0], "coeff": "-6"}]}]}
    path = write(tmp_path, "sqrt6.json", system)
    status, payload = run_json(capsys, ["dioph", "hensel", path, "--seed", "1"])
    assert status == 0
    assert payload["residues"] == ["16"]
    assert payload["modulus"] == "25"
    assert payload["residual"]["solution"] is True

    status, payload = run_json(capsys, ["dioph", "hensel", path, "--seed", "2"])
    assert status == 1
    assert payload["error"] == "NotAnApproximateRootError"


def test_chart_commands(tmp_path, capsys):
    point = write(tmp_path, "point.json", {"algebra": DUAL, "coords": [["3", "7"]]})
    status, payload = run_json(capsys, ["chart", "transit", "p1:0-1", point])
    assert status == 0
    assert payload["coords"] == [["1/3", "-7/9"]]

    status, payload = run_json(capsys, ["chart", "cocycle", "--p", "5", "--N", "12", "--samples", "3"])
    assert status == 0
    assert payload["cocycle"] == "pass"
    assert payload["samples"] == 3


def test_output_file(tmp_path, capsys):
    out = tmp_path / "result.json"
    point = write(tmp_path, "point.json", {"algebra": DUAL, "coords": [["1", "1"]]})
    assert main(["chart", "transit", "p1:0-1", point, "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text(encoding="utf-8"))["coords"] == [["1", "-1"]]


def test_missing_file(tmp_path, capsys):
    assert main(["dioph", "tangent", str(tmp_path / "missing.json"), "--base", "1,0"]) == 2


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig(command="padic", prime=9)
    with pytest.raises(ValueError):
        RunConfig(command="padic", prime=5, precision=0)
    assert RunConfig(command="chart").working_precision == 20
