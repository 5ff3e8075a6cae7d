"""End-to-end tests of the command-line interface."""

import json

import pytest

from wyang import SignedPyramid, canonical_json
from wyang.cli import main


RECT_ROWS = [("+", 2, 0), ("-", 2, 0)]
SAMPLE_ROWS = [("+", 2, 1), ("-", 3, 1), ("-", 4, 0)]


def write_pyramid(tmp_path, rows, name="pyr.json"):
    path = tmp_path / name
    path.write_text(canonical_json(SignedPyramid(rows).to_dict()))
    return str(path)


def test_pyramid_info(tmp_path, capsys):
    path = write_pyramid(tmp_path, SAMPLE_ROWS)
    assert main(["pyramid", "info", path]) == 0
    out = capsys.readouterr().out
    assert "gl(2|7)" in out
    assert "level: 4" in out
    assert "centralizer dimension: 23" in out


def test_pyramid_convert_round_trip(tmp_path, capsys):
    path = write_pyramid(tmp_path, SAMPLE_ROWS)
    assert main(["pyramid", "convert", path]) == 0
    spec_blob = capsys.readouterr().out.strip()
    spec = json.loads(spec_blob)
    assert spec["level"] == 4 and "sigma" in spec
    back = tmp_path / "spec.json"
    back.write_text(spec_blob)
    assert main(["pyramid", "convert", str(back)]) == 0
    assert json.loads(capsys.readouterr().out) == json.loads(
        canonical_json(SignedPyramid(SAMPLE_ROWS).to_dict()))


def test_wgen_emits_serialized_element(tmp_path, capsys):
    path = write_pyramid(tmp_path, SAMPLE_ROWS)
    assert main(["wgen", "--pyramid", path, "--mu", "1,1,1",
                 "--family", "D", "--a", "1", "--r", "1"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert isinstance(data, list) and data
    for term in data:
        assert set(term) == {"monomial", "coeff"}
        num, den = term["coeff"].split("/")
        int(num), int(den)
        for name_i, name_j, exp in term["monomial"]:
            assert isinstance(name_i, str) and isinstance(name_j, str)
            assert exp >= 1


def test_wgen_gauss_route_agrees(tmp_path, capsys):
    path = write_pyramid(tmp_path, SAMPLE_ROWS)
    argv = ["wgen", "--pyramid", path, "--mu", "1,1,1",
            "--family", "E", "--a", "1", "--r", "2"]
    assert main(argv + ["--oracle", "brute"]) == 0
    brute = capsys.readouterr().out
    assert main(argv + ["--oracle", "gauss", "--order", "4"]) == 0
    assert capsys.readouterr().out == brute


def test_verify_dims_exit_codes_and_report(tmp_path, capsys):
    path = write_pyramid(tmp_path, SAMPLE_ROWS)
    report = tmp_path / "report.json"
    assert main(["verify", "dims", "--pyramid", path,
                 "--json", str(report)]) == 0
    payload = json.loads(report.read_text())
    assert set(payload) == {"checks"}
    (check,) = payload["checks"]
    assert check["status"] == "pass"
    assert {"id", "status", "instances", "failures", "millis"} <= set(check)


def test_verify_relations_small(tmp_path):
    path = write_pyramid(tmp_path, RECT_ROWS)
    assert main(["verify", "relations", "--pyramid", path, "--rmax", "2"]) == 0


def test_verify_baby_skips_on_rectangle(tmp_path, capsys):
    path = write_pyramid(tmp_path, RECT_ROWS)
    assert main(["verify", "baby", "--pyramid", path, "--rmax", "2",
                 "--side", "R"]) == 0
    assert "skipped" in capsys.readouterr().out


def test_verify_shift_needs_second_pyramid(tmp_path, capsys):
    path = write_pyramid(tmp_path, SAMPLE_ROWS)
    assert main(["verify", "shift", "--pyramid", path]) == 2
    shifted = tmp_path / "shifted.json"
    shifted.write_text(canonical_json(
        SignedPyramid(SAMPLE_ROWS).shift_rows((1, 0, 0)).to_dict()))
    assert main(["verify", "shift", "--pyramid", path,
                 "--shifted", str(shifted)]) == 0


def test_bad_input_file_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{}")
    assert main(["pyramid", "info", str(path)]) == 2
    assert "error" in capsys.readouterr().err
