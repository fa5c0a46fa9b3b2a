from __future__ import annotations

import json

import pytest

from gsf.cli import main


def run(capsys, argv):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_verify_text(capsys) -> None:
    code, out, err = run(capsys, ["verify", "fixtures/s3.sgp", "--no-banner"])
    assert code == 0
    assert out.splitlines() == [
        "ok: good semigroup of N^2",
        "small: (0,0) (1,1) (2,2)",
        "conductor: (2,2)",
        "genus: 2",
    ]
    assert err == ""


def test_verify_json(capsys) -> None:
    code, out, _ = run(capsys, ["verify", "fixtures/s3.sgp", "--format", "json"])
    assert code == 0
    assert json.loads(out) == {
        "ok": True,
        "dim": 2,
        "small": [[0, 0], [1, 1], [2, 2]],
        "conductor": [2, 2],
        "genus": 2,
    }


def test_verify_bad_input_exit_one(capsys, tmp_path) -> None:
    bad = tmp_path / "bad.sgp"
    bad.write_text("0 0\n1 2\n2 1\n")
    code, out, err = run(capsys, ["verify", str(bad)])
    assert code == 1
    assert out == ""
    assert "G1" in err
    assert "witness (1,2) (2,1)" in err
    assert "minimum missing" in err


def test_missing_file_exit_one(capsys) -> None:
    code, out, err = run(capsys, ["verify", "fixtures/no_such_file.sgp"])
    assert code == 1
    assert out == ""
    assert err.startswith("error:")


def test_unknown_verb_exit_two(capsys) -> None:
    code, _, _ = run(capsys, ["frobnicate"])
    assert code == 2


def test_missing_required_option_exit_two(capsys) -> None:
    code, _, _ = run(capsys, ["enumerate"])
    assert code == 2


def test_help_exit_zero(capsys) -> None:
    code, out, _ = run(capsys, ["--help"])
    assert code == 0
    assert "verify" in out and "enumerate" in out


def test_metrics_json_fields(capsys) -> None:
    code, out, _ = run(capsys, ["metrics", "fixtures/s3.sgp", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["length"] == 2
    assert doc["genus"] == 2
    assert doc["conductor_sum"] == 4
    assert doc["type"] == 1
    assert doc["axis_contributions"] == {"length": [2, 0], "genus": [0, 2]}


def test_metrics_four_branch(capsys) -> None:
    code, out, _ = run(capsys, ["metrics", "fixtures/n4_example.sgp", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["length"] == 10
    assert doc["genus"] == 36
    assert doc["conductor_sum"] == 46
    assert doc["type"] is None
    assert doc["axis_contributions"] == {"length": [5, 4, 1, 0], "genus": [3, 6, 9, 18]}


def test_tracks_json(capsys) -> None:
    code, out, _ = run(capsys, ["tracks", "fixtures/root.sgp", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc == [
        {"anchors": [[1, "inf"]], "beyond": True, "favored": True},
        {"anchors": [[1, "inf"], ["inf", 1]], "beyond": True, "favored": True},
        {"anchors": [["inf", 1]], "beyond": True, "favored": True},
    ]


def test_sons_text(capsys) -> None:
    code, out, _ = run(capsys, ["sons", "fixtures/root.sgp", "--no-banner"])
    assert code == 0
    assert out.splitlines() == [
        "small: (0,0) (1,1) (2,2)  genus: 2",
        "small: (0,0) (1,2)  genus: 2",
        "small: (0,0) (2,1)  genus: 2",
    ]


def test_parents_json_round_trip(capsys) -> None:
    code, out, _ = run(capsys, ["parents", "fixtures/s3.sgp", "--format", "json"])
    assert code == 0
    assert json.loads(out) == [
        {"small": [[0, 0], [1, 1]], "track": {"anchors": [[1, "inf"], ["inf", 1]]}}
    ]


def test_wilf_violation_still_exit_zero(capsys) -> None:
    code, out, _ = run(capsys, ["wilf", "fixtures/wilf23.sgp", "--no-banner"])
    assert code == 0
    assert out.splitlines() == [
        "edim: 3",
        "witness: (4,3) (8,inf) (13,11)",
        "conductor sum: 34",
        "length: 11",
        "genus: 23",
        "rhs: 34/11",
        "holds: no",
    ]


def test_wilf_json(capsys) -> None:
    code, out, _ = run(capsys, ["wilf", "fixtures/wilf23.sgp", "--format", "json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["edim"] == 3
    assert doc["witness"] == [[4, 3], [8, "inf"], [13, 11]]
    assert doc["rhs"] == {"num": 34, "den": 11}
    assert doc["holds"] is False


def test_wilf_scan_empty(capsys) -> None:
    code, out, _ = run(capsys, ["wilf-scan", "--max-genus", "3", "--no-banner"])
    assert code == 0
    assert out == "no violations up to genus 3\n"


def test_enumerate_count_only(capsys) -> None:
    code, out, _ = run(
        capsys, ["enumerate", "--max-genus", "4", "--count-only", "--no-banner"]
    )
    assert code == 0
    assert out == "1\n3\n10\n29\n"


def test_enumerate_csv(capsys) -> None:
    code, out, _ = run(capsys, ["enumerate", "--max-genus", "3", "--format", "csv"])
    assert code == 0
    assert out == (
        "genus,count,ratio,ratio_delta\n"
        "1,1,,\n"
        "2,3,3.000000,\n"
        "3,10,3.333333,0.333333\n"
    )


def test_enumerate_checkpoint_and_resume(capsys, tmp_path) -> None:
    code, fresh, _ = run(capsys, ["enumerate", "--max-genus", "5", "--format", "csv"])
    assert code == 0
    code, _, _ = run(
        capsys,
        ["enumerate", "--max-genus", "3", "--format", "csv",
         "--checkpoint", str(tmp_path)],
    )
    assert code == 0
    code, resumed, _ = run(
        capsys,
        ["enumerate", "--max-genus", "5", "--format", "csv",
         "--checkpoint", str(tmp_path), "--resume"],
    )
    assert code == 0
    assert resumed == fresh


def test_banner_only_in_text(capsys) -> None:
    _, out, _ = run(capsys, ["verify", "fixtures/root.sgp"])
    assert out.startswith("# gsf verify ")
    _, out, _ = run(capsys, ["verify", "fixtures/root.sgp", "--no-banner"])
    assert not out.startswith("#")
    _, out, _ = run(capsys, ["verify", "fixtures/root.sgp", "--format", "json"])
    assert not out.startswith("#")
    _, out, _ = run(capsys, ["enumerate", "--max-genus", "2", "--format", "csv"])
    assert not out.startswith("#")


def test_no_banner_on_failure(capsys, tmp_path) -> None:
    bad = tmp_path / "bad.sgp"
    bad.write_text("1 1\n")
    code, out, err = run(capsys, ["verify", str(bad)])
    assert code == 1
    assert out == ""
    assert "zero-missing" in err


def test_repeated_runs_identical(capsys) -> None:
    _, a, _ = run(capsys, ["sons", "fixtures/s1.sgp", "--format", "json"])
    _, b, _ = run(capsys, ["sons", "fixtures/s1.sgp", "--format", "json"])
    assert a == b


def test_audit_verb(capsys) -> None:
    code, out, _ = run(capsys, ["audit", "--max-genus", "3", "--no-banner"])
    assert code == 0
    assert out.splitlines()[-1] == "all checks passed"
    assert "genus 3: 10 semigroups" in out
