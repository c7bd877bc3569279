"""Tests for the command-line front end: the input grammar, each command's
emissions in all three formats, exit codes, and sweep plumbing."""

import json

import pytest

from helpers import NINE_COL_STANDARD
from qsmt.bases import BasisMatrix, Check, Report, TheoremViolationError
from qsmt.cli import (
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VIOLATION,
    RunConfig,
    UsageError,
    main,
    parse_monomial,
    parse_shape,
    parse_tableau,
    parse_weight,
    shapes_up_to,
    weights_up_to,
)
from qsmt.repmod import ModuleVector
from qsmt.sl3 import expansion_matrix_closed, matrix_from_json_dict
from qsmt.tableaux import RootLatticeWeight, Shape, StandardMonomial, Tableau

# -- input grammar ----------------------------------------------------------


def test_parse_weight():
    assert parse_weight(3, "1,1") == RootLatticeWeight((1, 1))
    assert parse_weight(3, "(2, 0)") == RootLatticeWeight((2, 0))
    assert parse_weight(2, "5") == RootLatticeWeight((5,))
    with pytest.raises(UsageError, match="need 2 coefficients"):
        parse_weight(3, "1")
    with pytest.raises(UsageError, match=">= 0"):
        parse_weight(2, "-1")
    with pytest.raises(UsageError, match="item 2"):
        parse_weight(3, "1,x")


def test_parse_shape():
    assert parse_shape(4, "3,4,2") == Shape(4, (3, 4, 2))
    assert parse_shape(2, "(1)") == Shape(2, (1,))
    with pytest.raises(UsageError, match="multiplicities"):
        parse_shape(3, "1,2,3")


def test_parse_tableau():
    t = parse_tableau(3, "[[2,3],[1,2]]")
    assert t == Tableau.from_columns(3, [[2, 3], [1, 2]])
    with pytest.raises(UsageError, match="position"):
        parse_tableau(3, "[[2,3],[1,2]")
    with pytest.raises(UsageError, match="bracketed list"):
        parse_tableau(3, "7")
    with pytest.raises(UsageError, match="tableau"):
        parse_tableau(2, "[[3]]")  # entry out of range


def test_parse_monomial():
    m = parse_monomial(4, "[[3],[6,3],[7,5,2]]")
    assert m == StandardMonomial.from_lists(4, [[3], [6, 3], [7, 5, 2]])
    with pytest.raises(UsageError, match="monomial"):
        parse_monomial(3, "[[1],[0,2]]")  # level not weakly decreasing


def test_runconfig_invariants():
    with pytest.raises(UsageError, match="--n"):
        RunConfig(command="verify", n=1)
    with pytest.raises(UsageError, match="--jobs"):
        RunConfig(command="verify", n=3, jobs=0)
    with pytest.raises(UsageError, match="--max-mu"):
        RunConfig(command="verify", n=3, max_mu=0)


def test_case_enumerators():
    shapes = shapes_up_to(3, 3)
    assert Shape(3, (0, 0)) in shapes
    assert Shape(3, (1, 1)) in shapes
    assert all(s.num_boxes <= 3 for s in shapes)
    mus = weights_up_to(3, 2)
    assert mus[0] == RootLatticeWeight((0, 0))
    assert len(mus) == 6


# -- expand -----------------------------------------------------------------


def test_expand_trivial_rank1(capsys):
    rc = main(["expand", "--n", "2", "--monomial", "[[1]]", "--lambda", "(1)",
               "--flavor", "divided"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert "v[[2]]" in out


def test_expand_tableau_leading_term_first(capsys):
    cols = json.dumps(NINE_COL_STANDARD.to_lists())
    rc = main(["expand", "--n", "4", "--tableau", cols])
    out = capsys.readouterr().out.splitlines()
    assert rc == EXIT_OK
    # unit leading coefficient: the input tableau's own term comes first
    assert out[1] == f"  v{NINE_COL_STANDARD}"


def test_expand_kashiwara_flags_off_leading(capsys):
    rc = main(["expand", "--n", "3", "--monomial", "[[1],[1,0]]",
               "--flavor", "kashiwara", "--format", "json"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    payload = json.loads(out)
    assert payload["flavor"] == "kashiwara"
    flags = {entry["coeff"]: entry["in_m"] for entry in payload["vector"]["terms"]}
    assert flags["1"] is False
    assert all(flag for coeff, flag in flags.items() if coeff != "1")
    # the vector payload round-trips once the in_m extension is stripped
    vec = ModuleVector.from_json_dict(payload["vector"])
    stripped = dict(payload["vector"])
    stripped["terms"] = [
        {"tableau": e["tableau"], "coeff": e["coeff"]} for e in stripped["terms"]
    ]
    assert vec.to_json_dict() == stripped


def test_expand_pretty_marks_in_m(capsys):
    rc = main(["expand", "--n", "3", "--monomial", "[[1],[1,0]]",
               "--flavor", "kashiwara"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert "[in_m]" in out


def test_expand_csv(capsys):
    rc = main(["expand", "--n", "2", "--monomial", "[[2]]", "--lambda", "2",
               "--format", "csv"])
    out = capsys.readouterr().out.splitlines()
    assert rc == EXIT_OK
    assert out[0] == "tableau,coeff"
    assert len(out) == 2  # single term


def test_expand_usage_errors(capsys):
    assert main(["expand", "--n", "2"]) == EXIT_USAGE
    assert main(["expand", "--n", "2", "--monomial", "[[1]]",
                 "--tableau", "[[1]]"]) == EXIT_USAGE
    # non-standard tableau: rows increase rightwards
    assert main(["expand", "--n", "3", "--tableau", "[[1],[2]]"]) == EXIT_USAGE
    capsys.readouterr()


# -- basis ------------------------------------------------------------------


def test_basis_dual_smt_json_roundtrip(capsys):
    rc = main(["basis", "--n", "3", "--mu", "1,1", "--which", "dual-smt",
               "--format", "json"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    payload = json.loads(out)
    assert payload["matrix"]["entries"] == [["1", "-q"], ["0", "1"]]
    assert payload["report"]["passed"] is True
    back = BasisMatrix.from_json_dict(payload["matrix"])
    assert [[str(x) for x in row] for row in back.entries] == [["1", "-q"], ["0", "1"]]
    assert Report.from_json_dict(payload["report"]).passed


def test_basis_transition_anchor_pretty(capsys):
    rc = main(["basis", "--n", "3", "--mu", "1,1", "--which", "dual-to-canonical"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert "[1, q]" in out and "[0, 1]" in out
    assert "PASS" in out and "FAIL" not in out


def test_basis_rank1_identity_csv(capsys):
    for which in ("dual-smt", "canonical", "dual-to-canonical"):
        rc = main(["basis", "--n", "2", "--mu", "3", "--which", which,
                   "--format", "csv"])
        out = capsys.readouterr().out
        assert rc == EXIT_OK
        assert out == "1\n"


def test_basis_usage_errors(capsys):
    assert main(["basis", "--n", "3", "--mu", "0,0"]) == EXIT_USAGE
    assert main(["basis", "--n", "3", "--mu", "1"]) == EXIT_USAGE
    assert main(["basis", "--n", "3", "--mu", "1,1", "--which", "nope"]) == EXIT_USAGE
    capsys.readouterr()


def test_basis_theorem_violation_exit(monkeypatch, capsys):
    report = Report("forced failure", (Check("forced", False, "witness"),))

    def boom(mu):
        raise TheoremViolationError(report)

    monkeypatch.setattr("qsmt.cli.dual_smt", boom)
    rc = main(["basis", "--n", "3", "--mu", "1,1", "--which", "dual-smt"])
    err = capsys.readouterr().err
    assert rc == EXIT_VIOLATION
    assert "FAIL forced" in err


# -- verify -----------------------------------------------------------------

SMALL_VERIFY = ["verify", "--n", "2", "--max-mu", "3", "--max-boxes", "3",
                "--max-cols", "2"]


def test_verify_small_passes(capsys):
    rc = main(SMALL_VERIFY)
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert out.strip().endswith("PASS overall")


def test_verify_json_roundtrips(capsys):
    rc = main(SMALL_VERIFY + ["--format", "json"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    payload = json.loads(out)
    assert payload["passed"] is True
    for suite in payload["suites"]:
        report = Report.from_json_dict(suite)
        assert report.passed
        assert report.to_json_dict() == suite


def test_verify_parallel_output_matches_serial(capsys):
    rc = main(SMALL_VERIFY + ["--format", "json"])
    serial = capsys.readouterr().out
    assert rc == EXIT_OK
    rc = main(SMALL_VERIFY + ["--format", "json", "--jobs", "3"])
    parallel = capsys.readouterr().out
    assert rc == EXIT_OK
    assert serial == parallel


def test_verify_csv_summary(capsys):
    rc = main(SMALL_VERIFY + ["--format", "csv"])
    out = capsys.readouterr().out.splitlines()
    assert rc == EXIT_OK
    assert out[0] == "suite,check,passed,witness"
    assert all(line.endswith(",True,") for line in out[1:])


def test_verify_sl3_suite(capsys):
    rc = main(["verify", "--n", "3", "--max-mu", "2", "--max-boxes", "2",
               "--max-cols", "2", "--sl3", "--max-bk", "1", "--format", "json"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    payload = json.loads(out)
    titles = [s["title"] for s in payload["suites"]]
    assert any("closed forms" in t for t in titles)


def test_verify_failure_exit_and_fail_fast(monkeypatch, capsys):
    calls = []

    def flaky(args):
        calls.append(args)
        return False, "forced"

    monkeypatch.setattr("qsmt.cli._check_weight_case", flaky)
    rc = main(SMALL_VERIFY)
    out = capsys.readouterr().out
    assert rc == EXIT_VIOLATION
    assert "FAIL" in out
    assert len(calls) == 4  # weights with |mu| <= 3 at n = 2

    calls.clear()
    rc = main(SMALL_VERIFY + ["--fail-fast"])
    capsys.readouterr()
    assert rc == EXIT_VIOLATION
    assert len(calls) == 1


# -- sl3-table --------------------------------------------------------------


def test_sl3_table_closed(capsys):
    rc = main(["sl3-table", "--b", "1", "--k", "1", "--format", "json"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    payload = json.loads(out)
    assert payload["matrix"]["index"] == [[1, 1, 0], [0, 1, 1]]
    assert payload["matrix"]["entries"] == [["1", "0"], ["q", "1"]]
    back = matrix_from_json_dict(payload["matrix"])
    assert back == expansion_matrix_closed(1, 1)
    assert payload["report"]["passed"] is True


def test_sl3_table_inverse(capsys):
    rc = main(["sl3-table", "--b", "1", "--k", "1", "--which", "inverse",
               "--format", "csv"])
    out = capsys.readouterr().out
    assert rc == EXIT_OK
    assert out == "1,0\n-q,1\n"


def test_sl3_table_usage(capsys):
    assert main(["sl3-table", "--b", "-1", "--k", "1"]) == EXIT_USAGE
    capsys.readouterr()


# -- plumbing ---------------------------------------------------------------


def test_out_writes_file(tmp_path):
    target = tmp_path / "table.json"
    rc = main(["sl3-table", "--b", "2", "--k", "1", "--format", "json",
               "--out", str(target)])
    assert rc == EXIT_OK
    payload = json.loads(target.read_text(encoding="utf-8"))
    assert payload["matrix"]["matrix_name"] == "sl3_closed"


def test_no_command_is_usage_error(capsys):
    assert main([]) == EXIT_USAGE
    capsys.readouterr()


def test_help_shows_grammar(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert "exit codes: 0 success, 1 usage error, 2 verification failure" in out
