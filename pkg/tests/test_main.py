import json

import pandas as pd
import pytest

import main
from bellmix import __version__


@pytest.fixture(autouse=True)
def default_tolerance(monkeypatch):
    monkeypatch.delenv("BELLMIX_TOL", raising=False)


def _run(capsys, argv):
    code = main.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_pure_bell_state(capsys):
    code, out, _ = _run(capsys, ["pure", "--z0", "1,0", "--z", "0", "0", "0"])
    assert code == main.EXIT_OK
    payload = json.loads(out)
    assert payload["tool"] == "bellmix"
    assert payload["version"] == __version__
    assert payload["command"] == "pure"
    assert payload["tolerance"] == 1e-10
    assert payload["result"]["concurrence"] == pytest.approx(1.0)
    assert payload["result"]["entanglement"] == pytest.approx(1.0)
    assert payload["result"]["coefficients"][0] == [1.0, 0.0]


def test_pure_random(capsys):
    code, out, _ = _run(capsys, ["pure", "--random", "7"])
    assert code == main.EXIT_OK
    result = json.loads(out)["result"]
    assert 0.0 <= result["concurrence"] <= 1.0
    assert result["route_residual"] < 1e-10


def test_pure_needs_three_coefficients(capsys):
    code, _, err = _run(capsys, ["pure", "--z0", "1,0"])
    assert code == main.EXIT_USAGE
    assert "bellmix: error" in err


def test_werner_pure(capsys):
    code, out, _ = _run(capsys, ["werner", "--m0", "0.75", "--dimv", "3"])
    assert code == main.EXIT_OK
    payload = json.loads(out)
    assert payload["input"]["m0"] == 0.75
    assert payload["result"]["mode"] == "pure"
    assert payload["result"]["entanglement"] == pytest.approx(0.35459, abs=1e-5)
    assert len(payload["result"]["delta_diagonal"]) == 4


def test_werner_domain_error(capsys):
    code, _, err = _run(capsys, ["werner", "--m0", "1.5", "--dimv", "3"])
    assert code == main.EXIT_USAGE
    assert "bellmix: error" in err


def test_missing_argument():
    with pytest.raises(SystemExit) as info:
        main.main(["werner", "--m0", "0.7"])
    assert info.value.code == 2


def test_preconcurrence(capsys):
    code, out, _ = _run(capsys, ["preconcurrence", "--m", "0.6,0.2,0.2"])
    assert code == main.EXIT_OK
    result = json.loads(out)["result"]
    assert result["values"] == pytest.approx([0.2, 0.6, 1.0])
    assert not result["zero_feasible"]
    assert result["minimum"] == pytest.approx(0.2, abs=1e-8)
    assert "zero_witness" not in result


def test_preconcurrence_bad_weights(capsys):
    code, _, _ = _run(capsys, ["preconcurrence", "--m", "0.6,0.6"])
    assert code == main.EXIT_USAGE


def test_scan_frho_to_file(capsys, tmp_path):
    out = tmp_path / "frho.csv"
    code, stdout, _ = _run(
        capsys, ["--quiet", "scan-frho", "--m0", "0.55", "--dimv", "3", "--resolution", "20", "--out", str(out)]
    )
    assert code == main.EXIT_OK
    assert stdout == ""
    frame = pd.read_csv(out)
    assert list(frame.columns) == ["rho", "f"]
    assert len(frame) == 20


def test_scan_to_missing_directory(capsys, tmp_path):
    out = tmp_path / "missing" / "frho.csv"
    code, _, err = _run(capsys, ["--quiet", "scan-frho", "--m0", "0.55", "--dimv", "3", "--out", str(out)])
    assert code == main.EXIT_IO
    assert "bellmix: error" in err


def test_scan_entanglement_points(capsys):
    code, _, _ = _run(capsys, ["--quiet", "scan-entanglement", "--dimv", "3", "--points", "1"])
    assert code == main.EXIT_USAGE


def test_verify_algebra(capsys):
    code, out, _ = _run(capsys, ["verify", "--suite", "algebra", "--samples", "10"])
    assert code == main.EXIT_OK
    result = json.loads(out)["result"]
    assert result["passed"]
    assert result["failures"] == []
    assert set(result["suites"]) == {"algebra"}


def test_to_jsonable():
    assert main.to_jsonable(complex(1.0, -2.0)) == [1.0, -2.0]
    assert main.to_jsonable(float("inf")) == "inf"
    assert main.to_jsonable({"a": (1, float("nan"))}) == {"a": [1, "nan"]}


def test_pure_product_state(capsys):
    code, out, _ = _run(capsys, ["pure", "--z0", "0.7071,0", "--z", "0,0.7071", "0,0", "0,0"])
    assert code == main.EXIT_OK
    result = json.loads(out)["result"]
    assert result["concurrence"] == pytest.approx(0.0, abs=1e-12)
    assert result["entanglement"] == pytest.approx(0.0, abs=1e-12)


def test_werner_mixed_single_axis(capsys):
    code, out, _ = _run(capsys, ["werner", "--m0", "0.7", "--dimv", "1", "--mode", "mixed"])
    assert code == main.EXIT_OK
    result = json.loads(out)["result"]
    assert result["mode"] == "mixed"
    assert result["entanglement"] < result["e_pure"]
    assert len(result["candidates"]) >= 3


def test_scan_lagrangian_stdout(capsys):
    code, out, _ = _run(capsys, ["--quiet", "scan-lagrangian", "--m0", "0.7", "--dimv", "1", "--resolution", "50"])
    assert code == main.EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "Y,lagrangian,entanglement"
    assert len(lines) == 51
