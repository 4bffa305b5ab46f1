import json

from liecoh.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_validate_builtin(capsys):
    code, report = run_cli(capsys, "validate", "--builtin", "gl:3")
    assert code == 0
    assert report["result"] == {"valid": True, "dim": 9, "basis": report["result"]["basis"]}
    assert report["inputs"]["algebra"] == "builtin:gl:3"


def test_validate_bad_file_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 2, "brackets": [[0, 1, 0, "1"], [1, 0, 0, "1"]]}))
    code, report = run_cli(capsys, "validate", "--file", str(bad))
    assert code == 2
    assert report["result"]["valid"] is False
    v = report["result"]["violations"][0]
    assert v["type"] == "antisymmetry"
    assert v["indices"] == [0, 1, 0]
    assert v["residual"] == "2"


def test_validate_jacobi_violation(capsys, tmp_path):
    bad = tmp_path / "jac.json"
    bad.write_text(
        json.dumps(
            {"dim": 3, "brackets": [[0, 1, 2, "1"], [1, 2, 0, "1"], [2, 0, 0, "1"]]}
        )
    )
    code, report = run_cli(capsys, "validate", "--file", str(bad))
    assert code == 2
    assert report["result"]["violations"][0]["type"] == "jacobi"


def test_export_round_trip(capsys, tmp_path):
    path = tmp_path / "heis3.json"
    code, report = run_cli(capsys, "export", "--builtin", "heisenberg:3", "-o", str(path))
    assert code == 0
    code, report = run_cli(capsys, "validate", "--file", str(path))
    assert code == 0
    assert report["result"]["valid"] is True
    # computations agree between the builtin and the exported file
    code, by_builtin = run_cli(capsys, "betti", "--builtin", "heisenberg:3")
    code, by_file = run_cli(capsys, "betti", "--file", str(path))
    assert by_builtin["result"] == by_file["result"]


def test_export_to_stdout_is_bare_algebra(capsys):
    code, payload = run_cli(capsys, "export", "--builtin", "so:3")
    assert code == 0
    assert payload["dim"] == 3
    assert payload["basis"] == ["A12", "A13", "A23"]


def test_betti_abelian(capsys):
    code, report = run_cli(capsys, "betti", "--builtin", "abelian:2")
    assert code == 0
    assert report["result"]["betti"] == {"0": 1, "1": 2, "2": 1}


def test_betti_relative_gl3_so3(capsys):
    code, report = run_cli(capsys, "betti", "--builtin", "gl:3", "--relative", "so:3")
    assert code == 0
    assert report["result"]["betti"] == {"0": 1, "1": 1, "5": 1, "6": 1}


def test_betti_sl2(capsys):
    code, report = run_cli(capsys, "betti", "--builtin", "sl:2")
    assert code == 0
    assert report["result"]["betti"] == {"0": 1, "3": 1}


def test_relative_betti_alias_requires_subalgebra(capsys):
    code, report = run_cli(capsys, "relative-betti", "--builtin", "gl:2")
    assert code == 1
    code, report = run_cli(
        capsys, "relative-betti", "--builtin", "gl:2", "--relative", "so:2"
    )
    assert code == 0
    assert report["result"]["betti"] == {"0": 1, "1": 1, "2": 1, "3": 1}


def test_koszul_injective_and_not(capsys):
    code, report = run_cli(capsys, "koszul", "--builtin", "gl:3", "--sub", "so:3")
    assert code == 0
    assert report["result"]["injective"] is True
    code, report = run_cli(
        capsys, "koszul", "--builtin", "gl:2", "--sub", "so:2", "--kernel"
    )
    assert code == 0
    assert report["result"]["injective"] is False
    assert [k["degree"] for k in report["result"]["kernel"]] == [2, 3]


def test_koszul_zero_sub(capsys):
    code, report = run_cli(capsys, "koszul", "--builtin", "gl:2", "--sub", "zero")
    assert code == 0
    assert report["result"]["injective"] is True


def test_koszul_matrix_and_factor_check(capsys):
    code, report = run_cli(
        capsys,
        "koszul", "--builtin", "gl:2", "--sub", "so:2", "--matrix", "--factor-check",
    )
    assert code == 0
    assert report["result"]["factorization"]["holds"] is True
    assert report["result"]["map"]["0"] == [["1"]]
    assert report["result"]["map"]["1"] != [["0"]]


def test_ncz_commands(capsys):
    code, report = run_cli(capsys, "ncz", "--builtin", "so:5", "--sub", "so:3")
    assert code == 0
    assert report["result"]["ncz"] is True
    code, report = run_cli(capsys, "ncz", "--builtin", "gl:2", "--sub", "so:2")
    assert code == 0
    assert report["result"]["ncz"] is False


def test_reductive_command(capsys):
    code, report = run_cli(capsys, "reductive", "--builtin", "gl:3", "--sub", "so:3")
    assert code == 0
    assert report["result"]["reductive"] is True
    assert report["result"]["witness"] == "invariant-complement"
    assert len(report["result"]["complement"]) == 6


def test_classes_command(capsys):
    code, report = run_cli(capsys, "classes", "--builtin", "gl:2", "--sub", "so:2")
    assert code == 0
    gens = report["result"]["generators"]
    assert [(g["degree"], g["label"]) for g in gens] == [(1, "y1"), (2, "y2")]
    assert report["result"]["presentation"] == "exterior-algebra"


def test_functoriality_identity_morphism_file(capsys, tmp_path):
    morphism = {
        "source": {"builtin": "gl:2", "sub": "so:2"},
        "target": {"builtin": "gl:2", "sub": "so:2"},
        "matrix": [["1" if a == b else "0" for b in range(4)] for a in range(4)],
    }
    path = tmp_path / "id_gl2_pair.json"
    path.write_text(json.dumps(morphism))
    code, report = run_cli(capsys, "functoriality", "--morphism", str(path))
    assert code == 0
    assert report["result"]["commutes"] is True


def test_functoriality_command(capsys, tmp_path):
    morphism = {
        "source": {"builtin": "gl:2", "sub": "so:2"},
        "target": {"builtin": "gl:3", "sub": "so:3"},
        "matrix": [
            ["1" if (a, b) in {(0, 0), (1, 1), (3, 2), (4, 3)} else "0" for b in range(4)]
            for a in range(9)
        ],
    }
    path = tmp_path / "block.json"
    path.write_text(json.dumps(morphism))
    code, report = run_cli(capsys, "functoriality", "--morphism", str(path))
    assert code == 0
    assert report["result"]["commutes"] is True


def test_direct_product_command(capsys):
    code, report = run_cli(
        capsys,
        "direct-product-check",
        "--left-builtin", "so:3",
        "--right-builtin", "abelian:2",
    )
    assert code == 0
    assert report["result"]["injective"] is True
    assert report["result"]["formula_holds"] is True
    assert report["result"]["kunneth_holds"] is True


def test_unknown_builtin_exit_1(capsys):
    code, report = run_cli(capsys, "betti", "--builtin", "sp:4")
    assert code == 1
    assert report["error"]["type"] == "UnknownBuiltin"


def test_missing_algebra_exit_1(capsys):
    code, report = run_cli(capsys, "betti")
    assert code == 1


def test_reports_are_deterministic_except_timing(capsys):
    reports = []
    for _ in range(2):
        code, report = run_cli(capsys, "koszul", "--builtin", "gl:2", "--sub", "so:2",
                               "--matrix", "--kernel")
        assert code == 0
        report.pop("timing_seconds")
        reports.append(json.dumps(report, sort_keys=False))
    assert reports[0] == reports[1]


def test_threads_flag_accepted(capsys, monkeypatch):
    code, single = run_cli(capsys, "betti", "--builtin", "gl:3", "--relative", "so:3")
    assert code == 0
    code, a = run_cli(
        capsys, "betti", "--builtin", "gl:3", "--relative", "so:3", "--threads", "4"
    )
    assert code == 0
    monkeypatch.setenv("KOSZUL_THREADS", "4")
    code, b = run_cli(capsys, "betti", "--builtin", "gl:3", "--relative", "so:3")
    assert code == 0
    # thread count never changes the payload
    assert a["result"] == b["result"] == single["result"]


def test_sub_file_input(capsys, tmp_path):
    # the center of heisenberg(3) from a vectors file
    path = tmp_path / "center.json"
    path.write_text(json.dumps({"vectors": [["0", "0", "1"]]}))
    code, report = run_cli(
        capsys, "betti", "--builtin", "heisenberg:3", "--relative-file", str(path)
    )
    assert code == 0
    assert report["result"]["betti"] == {"0": 1, "1": 2, "2": 1}
