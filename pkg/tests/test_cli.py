"""Command line behavior: fixtures, formats, round-trips, exit codes."""

import json
from fractions import Fraction

import pytest

from bchnest import __version__
from bchnest.cli import (
    build_parser,
    main,
    parse_series_json,
    render_series_json,
    series_latex,
    series_text,
)
from bchnest.terms import LieExpr

F = Fraction


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bch_grade_one(capsys):
    code, out, _ = run_cli(capsys, "bch", "--grade", "1")
    assert code == 0
    assert out == "Phi_1 = X + Y\n"


def test_bch_grade_four_text(capsys):
    code, out, _ = run_cli(capsys, "bch", "--grade", "4", "--regime", "none")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "Phi_1 = X + Y"
    assert lines[1] == "Phi_2 = 1/2 [X,Y]"
    assert lines[2] == "Phi_3 = 1/12 [X,[X,Y]] - 1/12 [Y,[X,Y]]"
    assert lines[3] == "Phi_4 = -1/24 [X,[Y,[X,Y]]]"


def test_bch_three_vars(capsys):
    code, out, _ = run_cli(capsys, "bch", "--grade", "2", "--vars", "3")
    assert code == 0
    assert out.splitlines()[1] == "Phi_2 = 1/2 [X,Y] + 1/2 [X,Z] + 1/2 [Y,Z]"


def test_symbch_even_grade_zero(capsys):
    code, out, _ = run_cli(capsys, "symbch", "--grade", "2")
    assert code == 0
    assert out.splitlines()[1] == "Psi_2 = 0"


def test_symbch_grade_three(capsys):
    code, out, _ = run_cli(capsys, "symbch", "--grade", "3")
    assert out.splitlines()[2] == "Psi_3 = -1/24 [X,[X,Y]] - 1/12 [Y,[X,Y]]"


def test_bch_grade6_json_has_four_terms(capsys):
    code, out, _ = run_cli(
        capsys, "bch", "--grade", "6", "--regime", "grade6", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["meta"] == {
        "grade": 6,
        "vars": 2,
        "regime": "grade6",
        "variant": "plain",
        "version": __version__,
    }
    assert len(doc["terms"]) == 4
    for term in doc["terms"]:
        assert set(term) == {"leaves", "coeff"}
        assert "/" in term["coeff"] or term["coeff"].lstrip("-").isdigit()


def test_json_round_trip(capsys):
    _, out, _ = run_cli(
        capsys, "bch", "--grade", "5", "--regime", "full", "--format", "json"
    )
    meta, expr = parse_series_json(out)
    assert meta["grade"] == 5
    assert render_series_json(expr, meta) == out


def test_json_round_trip_unit():
    expr = LieExpr({(0, 1): F(1, 2), (1, 0, 1): F(-3)})
    # Mixed grades are not emitted by the CLI but round-trip regardless.
    meta = {"grade": 0, "vars": 2, "regime": "none", "variant": "plain"}
    parsed_meta, parsed = parse_series_json(render_series_json(expr, meta))
    assert parsed_meta == meta
    assert parsed.terms == expr.terms


def test_identities_grade_four_text(capsys):
    code, out, _ = run_cli(capsys, "identities", "--grade", "4")
    assert code == 0
    assert out == (
        "grade 4: 4 commutators, basis 3, identities 1 "
        "(1 beyond lifts from lower grades)\n"
        "basis:\n"
        "  [X,[X,[X,Y]]]\n"
        "  [X,[Y,[X,Y]]]\n"
        "  [Y,[Y,[X,Y]]]\n"
        "identities:\n"
        "  [Y,[X,[X,Y]]] - [X,[Y,[X,Y]]] = 0\n"
    )


def test_identities_grade_two_empty(capsys):
    code, out, _ = run_cli(capsys, "identities", "--grade", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("grade 2: 1 commutators, basis 1, identities 0")
    assert "  [X,Y]" in lines
    assert lines[-1] == "identities:"


def test_identities_grade_six_header(capsys):
    code, out, _ = run_cli(capsys, "identities", "--grade", "6")
    assert code == 0
    head = out.splitlines()[0]
    assert head == (
        "grade 6: 16 commutators, basis 9, identities 7 "
        "(3 beyond lifts from lower grades)"
    )


def test_identities_json(capsys):
    _, out, _ = run_cli(
        capsys, "identities", "--grade", "4", "--format", "json"
    )
    doc = json.loads(out)
    assert doc["meta"]["grade"] == 4
    assert doc["basis"] == [
        ["X", "X", "X", "Y"], ["X", "Y", "X", "Y"], ["Y", "Y", "X", "Y"]
    ]
    assert doc["novel"] == 1
    assert doc["identities"] == [
        [
            {"leaves": ["Y", "X", "X", "Y"], "coeff": "1"},
            {"leaves": ["X", "Y", "X", "Y"], "coeff": "-1"},
        ]
    ]


def test_latex_nested_and_flat(capsys):
    _, nested, _ = run_cli(capsys, "bch", "--grade", "4", "--format", "latex")
    assert "\\Phi_{4} = -\\frac{1}{24}\\,[X,[Y,[X,Y]]] \\\\" in nested.splitlines()
    _, flat, _ = run_cli(
        capsys, "bch", "--grade", "4", "--format", "latex",
        "--latex-style", "flat",
    )
    assert "\\Phi_{4} = -\\frac{1}{24}\\,[X,Y,X,Y] \\\\" in flat.splitlines()


def test_text_format_ignores_latex_style(capsys):
    _, out, _ = run_cli(
        capsys, "bch", "--grade", "4", "--latex-style", "flat"
    )
    assert out.splitlines()[3] == "Phi_4 = -1/24 [X,[Y,[X,Y]]]"


def test_table_single_row(capsys):
    code, out, _ = run_cli(
        capsys, "table", "--max-grade", "4", "--row", "grade4"
    )
    assert code == 0
    assert "computed 1,2,1" in out
    assert "published 1,2,1" in out
    assert "ok" in out


def test_table_all_rows_match_at_low_grade(capsys):
    code, out, _ = run_cli(capsys, "table", "--max-grade", "6")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "terms per grade, m = 2..6"
    assert len(lines) == 7
    assert all("ok" in line for line in lines[1:])
    assert not any("DIFFERS" in line for line in lines)


def test_table_json(capsys):
    _, out, _ = run_cli(
        capsys, "table", "--max-grade", "5", "--row", "none",
        "--format", "json",
    )
    doc = json.loads(out)
    assert doc["rows"]["none"] == {
        "computed": [1, 2, 1, 8],
        "published": [1, 2, 1, 8],
        "match": True,
    }


def test_output_file_matches_stdout(tmp_path, capsys):
    _, stdout_text, _ = run_cli(capsys, "bch", "--grade", "3")
    path = tmp_path / "out.txt"
    code, out, _ = run_cli(capsys, "bch", "--grade", "3", "--output", str(path))
    assert code == 0
    assert out == ""
    assert path.read_text(encoding="utf-8") == stdout_text


def test_determinism(capsys):
    _, first, _ = run_cli(
        capsys, "bch", "--grade", "6", "--regime", "compact", "--format", "json"
    )
    _, second, _ = run_cli(
        capsys, "bch", "--grade", "6", "--regime", "compact", "--format", "json"
    )
    assert first == second


def test_verify_passes(capsys):
    code, out, err = run_cli(capsys, "bch", "--grade", "3", "--verify")
    assert code == 0
    assert "Phi_3" in out
    assert err == ""


def test_usage_errors_exit_one(capsys):
    for argv in (
        ["bch", "--grade", "0"],
        ["bch", "--grade", "11"],
        ["bch", "--grade", "3", "--vars", "1"],
        ["bch", "--grade", "3", "--vars", "3", "--regime", "grade4"],
        ["identities", "--grade", "1"],
        ["table", "--max-grade", "1"],
        ["nosuchcommand"],
    ):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 1
        capsys.readouterr()


def test_unsafe_grade_flag_allows_and_warns(capsys):
    code, out, err = run_cli(
        capsys, "identities", "--grade", "11", "--unsafe-grade"
    )
    assert code == 0
    assert "warning" in err
    # 2^9 canonical commutators; the grade-11 homogeneous component has
    # dimension (2^11 - 2) / 11 = 186.
    assert out.startswith("grade 11: 512 commutators, basis 186,")


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_renderers_unit():
    e = LieExpr({(0, 1): F(1, 2)})
    assert series_text(e) == "1/2 [X,Y]"
    assert series_latex(e) == "\\frac{1}{2}\\,[X,Y]"
    assert series_text(LieExpr.zero()) == "0"
    two = LieExpr({(0, 0, 1): F(2)})
    assert series_latex(two) == "2\\,[X,[X,Y]]"
    one = LieExpr({(0,): F(1), (1,): F(-1)})
    assert series_text(one) == "X - Y"
