import csv
import io
import json
import math
import subprocess
import sys

import jsonschema
import pytest

from schneidermf.cli import SPECTRUM_COLUMNS, main

NUMBER_OR_NULL = {"type": ["number", "null"]}
SPECTRUM_SCHEMA = {
    "type": "object",
    "required": ["p", "q", "rows"],
    "properties": {
        "p": {"type": "integer"},
        "rows": {"type": "array", "minItems": 1, "items": {
            "type": "object",
            "required": list(SPECTRUM_COLUMNS),
            "additionalProperties": False,
            "properties": {c: NUMBER_OR_NULL for c in SPECTRUM_COLUMNS},
        }},
    },
}
DIGITS_SCHEMA = {
    "type": "object",
    "required": ["p", "terminated", "trusted_count", "rows"],
    "properties": {
        "terminated": {"enum": ["open", "finite", "exhausted"]},
        "rows": {"type": "array", "items": {
            "type": "object",
            "required": ["i", "a", "b", "trusted", "terminated"],
            "properties": {"a": {"type": "integer", "minimum": 1},
                           "b": {"type": "integer", "minimum": 1},
                           "trusted": {"type": "boolean"}},
        }},
    },
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_digits_example(capsys):
    code, out, _ = run(capsys, "digits", "--p", "2", "--num", "2", "--den", "3", "--n", "10")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(r["a"], r["b"]) for r in rows] == [("1", "1"), ("1", "1")]
    assert all(r["terminated"] == "finite" for r in rows)


def test_digits_json_schema(capsys):
    code, out, _ = run(capsys, "digits", "--p", "3", "--num", "3", "--den", "7",
                       "--n", "5", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    jsonschema.validate(doc, DIGITS_SCHEMA)
    assert len(doc["rows"]) == 5


def test_dimension_record(capsys):
    code, out, _ = run(capsys, "dimension", "--p", "2", "--q", "2", "--beta", repr(math.sqrt(6)))
    assert code == 0
    row = next(csv.DictReader(io.StringIO(out)))
    assert float(row["dimension"]) == pytest.approx(1.0, abs=1e-12)
    assert float(row["lambda"]) == pytest.approx(2 * math.log(2), rel=1e-10)


def test_spectrum_csv_header_and_rows(capsys):
    code, out, _ = run(capsys, "spectrum", "--p", "3", "--q", "0", "--beta-min", "1",
                       "--beta-max", "4", "--steps", "7")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "q,beta,lambda,mean_digit,s_alpha,dimension"
    assert len(lines) == 8
    dims = [float(r["dimension"]) for r in csv.DictReader(io.StringIO(out))]
    assert all(0 <= d <= 1 for d in dims)


def test_spectrum_json_schema(capsys):
    code, out, _ = run(capsys, "spectrum", "--p", "2", "--q", "-1", "--beta-max", "3",
                       "--steps", "4", "--format", "json")
    assert code == 0
    jsonschema.validate(json.loads(out), SPECTRUM_SCHEMA)


def test_spectrum_output_is_byte_identical(tmp_path):
    outs = []
    for name in ("a.csv", "b.csv"):
        path = tmp_path / name
        assert main(["spectrum", "--p", "5", "--q", "0.5", "--beta-max", "9",
                     "--steps", "11", "--output", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert b"\r" not in outs[0]


def test_haar_table(capsys):
    code, out, _ = run(capsys, "haar", "--p", "2", "--q", "-1", "0", "1", "2")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    want = {-1.0: 1 / math.log(2), 1.0: 2.0, 2.0: math.sqrt(6)}
    for r in rows:
        assert float(r["dimension"]) == pytest.approx(1.0, abs=1e-9)
        if float(r["q"]) in want:
            assert float(r["haar_mean"]) == pytest.approx(want[float(r["q"])], rel=1e-12)


def test_montecarlo_record(capsys):
    code, out, _ = run(capsys, "montecarlo", "--p", "3", "--q", "1", "--samples", "300",
                       "--orbit-length", "100", "--seed", "5", "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["mode"] == "digit_model" and rec["seed"] == 5
    assert abs(rec["z_score"]) < 5
    code2, out2, _ = run(capsys, "montecarlo", "--p", "3", "--q", "1", "--samples", "300",
                         "--orbit-length", "100", "--seed", "5", "--format", "json")
    assert out == out2


@pytest.mark.parametrize("argv", [
    ["digits", "--p", "4", "--num", "1"],
    ["digits", "--p", "3", "--num", "1", "--den", "3"],
    ["digits", "--p", "3", "--num", "1"],
    ["dimension", "--p", "2", "--q", "1", "--beta", "0.5"],
    ["spectrum", "--p", "2", "--q", "1", "--beta-min", "3", "--beta-max", "2"],
    ["montecarlo", "--p", "2", "--q", "1", "--seed", "-3"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == 2


def test_numerical_failure_exits_1(capsys):
    code, _, err = run(capsys, "montecarlo", "--p", "2", "--q", "1", "--mode", "orbit",
                       "--samples", "20", "--orbit-length", "200", "--precision", "16")
    assert code == 1
    assert "InsufficientTrustedDigits" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "schneidermf", "dimension", "--p", "3",
                          "--q", "1", "--beta", "1"], capture_output=True, text=True)
    assert res.returncode == 0
    assert float(res.stdout.splitlines()[1].split(",")[-2]) == pytest.approx(
        math.log(2) / math.log(3), abs=1e-15)
