import json
import subprocess
import sys
from pathlib import Path

import pytest

from hyperhodge.cli import main

ROOT = Path(__file__).resolve().parents[1]
SAMPLE = str(ROOT / "samples" / "canonical_cut.json")


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_hodge_json(capsys):
    code, out, _ = run(["hodge", "--n", "2", "--d", "4", "--f", "fermat", "--json"], capsys)
    assert code == 0
    data = json.loads(out)
    assert data["primitive_hodge_numbers"] == [1, 19, 1]
    assert data["schema_version"] == 1
    assert data["betti_numbers"] == [1, 0, 22, 0, 1]
    assert data["consistency"]["passed"] is True
    # parse then re-serialise gives the same bytes
    assert json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n" == out


def test_reduce_exact_example(capsys):
    code, out, _ = run(["reduce", "--n", "1", "--d", "3", "--f", "fermat", "--form", "x0^2*x1^2*x2^2:3", "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "exact"
    assert set(data["normal_form"].values()) == {"0"}


def test_singular_exit_code(capsys):
    code, out, err = run(["hodge", "--n", "1", "--d", "3", "--f", "x0*x1*x2"], capsys)
    assert code == 1 and out == ""
    assert "singular hypersurface" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["hodge", "--n", "1", "--d", "3", "--f", "x0^3+x1"],
        ["hodge", "--n", "1", "--d", "3", "--f", "x0^3 + $"],
        ["hodge", "--n", "1"],
        ["hodge", "--n", "0", "--d", "3"],
        ["reduce", "--n", "1", "--d", "3", "--form", "x0*x1*x2"],
        ["specseq", "--file", "/nonexistent/complex.json"],
        ["frobnicate"],
    ],
)
def test_input_errors_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err.startswith("error:")


@pytest.mark.parametrize(
    "argv",
    [
        ["hodge", "--n", "1", "--d", "3", "--f", "x0^2+x1^2+x2^2"],
        ["reduce", "--n", "1", "--d", "3", "--form", "x0:2"],
        ["reduce", "--n", "1", "--d", "3", "--form", "x0:9"],
    ],
)
def test_domain_errors_exit_1(argv, capsys):
    code, _, _ = run(argv, capsys)
    assert code == 1


def test_f_file(tmp_path, capsys):
    p = tmp_path / "f.txt"
    p.write_text("x0^3 + x1^3 + x2^3 + x0*x1*x2\n")
    code, out, _ = run(["hodge", "--n", "1", "--d", "3", "--f-file", str(p), "--json"], capsys)
    assert code == 0 and json.loads(out)["primitive_hodge_numbers"] == [1, 1]
    code, _, _ = run(["hodge", "--n", "1", "--d", "3", "--f", "fermat", "--f-file", str(p)], capsys)
    assert code == 2


def test_other_commands(capsys):
    code, out, _ = run(["residue", "--n", "1", "--d", "3", "--form", "x0*x1*x2:2", "--json"], capsys)
    data = json.loads(out)
    assert data["components"] == [{"hodge_type": [0, 1], "pole_order": 2, "representative": "x0*x1*x2"}]
    code, out, _ = run(["thm41", "--n", "2", "--d", "4", "--json"], capsys)
    assert json.loads(out)["holds"] is True
    code, out, _ = run(["complement", "--n", "2", "--d", "4", "--json"], capsys)
    data = json.loads(out)
    assert data["dims"]["3"] == 21 and data["weights"]["3"] == {"3": 0, "4": 21}
    code, out, _ = run(["exact", "--n", "1", "--d", "3", "--form", "x0*x1*x2:2", "--json"], capsys)
    data = json.loads(out)
    assert data["exact"] is False and data["second_kind"] is False and data["justification"]
    code, out, _ = run(["specseq", "--file", SAMPLE, "--les", "--json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["long_exact_sequence"]["exact"] is True
    assert data["cohomology"] == {"0": 1, "1": 1, "2": 0}


def test_table_output(capsys):
    code, out, _ = run(["hodge", "--n", "2", "--d", "4"], capsys)
    assert code == 0 and out.startswith("[hodge]")
    assert "primitive_hodge_numbers  1 19 1" in out


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "hyperhodge", "hodge", "--n", "1", "--d", "3", "--json"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(out.stdout)["primitive_hodge_numbers"] == [1, 1]


def test_wide_integers_become_strings():
    from hyperhodge.cli import render

    text = render({"schema_version": 1, "command": "x", "small": [3, True], "big": {"v": -(2**70)}}, True)
    data = json.loads(text)
    assert data["small"] == [3, True]
    assert data["big"]["v"] == str(-(2**70))
    assert json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n" == text
