import json

import pytest

from syslip.cli import (
    EXIT_FALSIFIED,
    EXIT_OK,
    EXIT_PRECONDITION,
    EXIT_USAGE,
    main,
)
from syslip.surfaces import RationalRay
from syslip.twists import TransitionMatrix, base_twist_matrix


def test_matrix_json_round_trip(tmp_path):
    out = tmp_path / "matrix.json"
    rc = main(["matrix", "--ray", "2/3", "-i", "4", "--format", "json", "-o", str(out)])
    assert rc == EXIT_OK
    data = json.loads(out.read_text())
    assert TransitionMatrix.from_json(data).entries == base_twist_matrix(
        RationalRay(2, 3), 4
    ).entries


def test_matrix_lifted_root_dimension(tmp_path):
    out = tmp_path / "root.json"
    rc = main(
        ["matrix", "--ray", "2/3", "-i", "4", "--lifted-root", "--format", "json", "-o", str(out)]
    )
    assert rc == EXIT_OK
    assert json.loads(out.read_text())["dimension"] == 28


def test_matrix_dump_chain(tmp_path):
    out = tmp_path / "matrix.json"
    rc = main(
        ["matrix", "--ray", "1/2", "-i", "2", "--dump-chain", "--format", "json", "-o", str(out)]
    )
    assert rc == EXIT_OK
    data = json.loads(out.read_text())
    assert data["chain"]["curves"] == 4
    assert data["chain"]["adjacent_intersections"] == [2, 1, 1]


def test_table_deterministic_output(tmp_path):
    args = [
        "table", "--ray", "2/3", "--from", "4", "--to", "8",
        "--collar-constant", "2", "--format", "csv",
    ]
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    plot1, plot2 = tmp_path / "a.plot", tmp_path / "b.plot"
    assert main(args + ["-o", str(out1), "--plot", str(plot1)]) == EXIT_OK
    assert main(args + ["-o", str(out2), "--plot", str(plot2)]) == EXIT_OK
    assert out1.read_bytes() == out2.read_bytes()
    assert plot1.read_bytes() == plot2.read_bytes()
    header, *rows, trailing = out1.read_text().split("\n")
    assert header.startswith("genus,punctures")
    assert len(rows) == 5
    assert trailing == ""


def test_table_usage_requires_family():
    assert main(["table", "--from", "4", "--to", "8"]) == EXIT_USAGE
    assert (
        main(["table", "--ray", "2/3", "--genus", "2", "--from", "4", "--to", "8"])
        == EXIT_USAGE
    )


def test_bad_ray_is_usage_error():
    assert main(["matrix", "--ray", "2/4", "-i", "1"]) == EXIT_USAGE


def test_unknown_command_is_usage_error():
    assert main(["frobnicate"]) == EXIT_USAGE


def test_precondition_exit_code():
    rc = main(["matrix", "--ray", "1/1", "-i", "1", "--intersections", "1"])
    assert rc == EXIT_PRECONDITION


def test_falsification_exit_codes(tmp_path, capsys):
    rc = main(
        ["matrix", "--ray", "1/3", "-i", "3", "--intersections", "2,2,2,2",
         "--format", "json", "-o", str(tmp_path / "f.json")]
    )
    assert rc == EXIT_FALSIFIED
    assert "FALSIFICATION" in capsys.readouterr().err
    rc = main(["mixing", "--ray", "1/1", "-i", "2", "--cap", "1"])
    assert rc == EXIT_FALSIFIED


def test_stamp_sidecar(tmp_path):
    out = tmp_path / "m.json"
    rc = main(
        ["matrix", "--ray", "1/1", "-i", "2", "--format", "json", "-o", str(out), "--stamp"]
    )
    assert rc == EXIT_OK
    sidecar = tmp_path / "m.json.stamp.json"
    assert sidecar.exists()
    stamp = json.loads(sidecar.read_text())
    assert "written" in stamp and "version" in stamp
    # the data file itself carries no timestamp
    assert "written" not in out.read_text()


def test_output_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("SYSLIP_OUTPUT_DIR", str(tmp_path))
    rc = main(["matrix", "--ray", "1/1", "-i", "2", "--format", "json", "-o", "env.json"])
    assert rc == EXIT_OK
    assert (tmp_path / "env.json").exists()


def test_bounds_text_output(capsys):
    rc = main(["bounds", "--ray", "2/3", "-i", "4", "--collar-constant", "2"])
    assert rc == EXIT_OK
    captured = capsys.readouterr().out
    assert "S_{8,12}" in captured
    assert "K upper" in captured and "K lower" in captured


def test_bounds_fixed_genus(capsys):
    rc = main(["bounds", "--genus", "2", "-i", "30", "--collar-constant", "2"])
    assert rc == EXIT_OK
    assert "conditional" in capsys.readouterr().out


def test_mixing_text(capsys):
    rc = main(["mixing", "--ray", "1/1", "-i", "2"])
    assert rc == EXIT_OK
    out = capsys.readouterr().out
    assert "mixing number: 5" in out
    assert "1/5" in out


def test_dilatation_falsification_not_triggered_by_defaults(capsys):
    rc = main(["dilatation", "--ray", "1/4", "-i", "2", "--lifted-root"])
    assert rc == EXIT_OK
    assert "certified bound" in capsys.readouterr().out


@pytest.mark.parametrize("fmt", ["csv", "json", "text"])
def test_table_formats(tmp_path, fmt):
    out = tmp_path / f"t.{fmt}"
    rc = main(
        ["table", "--genus", "2", "--from", "5", "--to", "7",
         "--collar-constant", "2", "--format", fmt, "-o", str(out)]
    )
    assert rc == EXIT_OK
    text = out.read_text()
    if fmt == "csv":
        assert text.startswith("genus,")
    elif fmt == "json":
        assert json.loads(text)["rows"][0]["abs_chi"] == 7
    else:
        assert "genus 2" in text
