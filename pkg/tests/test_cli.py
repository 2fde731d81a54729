"""End-to-end tests for the command-line front end."""
import json
import pathlib
import shutil
import subprocess
import sys

import pytest

from bridgecover import cli
from bridgecover.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run(argv, capsys):
    """Invoke the CLI in-process; return (exit_code, stdout, stderr)."""
    try:
        code = main(argv)
    except SystemExit as exc:  # argparse paths (usage errors, --version)
        code = exc.code if isinstance(exc.code, int) else 0
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def err_tail(err):
    return err.strip().splitlines()[-1]


# ---------------------------------------------------------------------------
# fraction
# ---------------------------------------------------------------------------

def test_fraction_names_the_knot_class(capsys):
    code, out, _ = run(["fraction", "--", "-2", "2", "-2", "2"], capsys)
    assert code == 0
    assert out == "-5/4 (knot 5_1 class, det 5)\n"


def test_fraction_det_only_when_uncatalogued(capsys):
    code, out, _ = run(["fraction", "--", "3", "4"], capsys)
    assert code == 0
    assert out == "13/4 (det 13)\n"


def test_fraction_mirror_term_list(capsys):
    code, out, _ = run(["fraction", "--mirror", "--", "-2", "2", "-2", "2"],
                       capsys)
    assert code == 0
    assert out == "[2,-2,2,-2]\n"


def test_fraction_even_form(capsys):
    code, out, _ = run(["fraction", "--even-form", "--", "3", "2"], capsys)
    assert code == 0
    assert out == "[4,-2]\n"


def test_fraction_zero_term_is_a_usage_error(capsys):
    code, out, err = run(["fraction", "--", "2", "0", "2"], capsys)
    assert code == 2
    assert out == ""
    assert err_tail(err) == (
        "bridgecover: error: zero term at index 2 (terms are 1-indexed)")


def test_fraction_without_terms_is_a_usage_error(capsys):
    code, _, err = run(["fraction"], capsys)
    assert code == 2
    assert "no continued-fraction terms given" in err


def test_fraction_rejects_non_integer_terms(capsys):
    code, _, err = run(["fraction", "--", "a", "b"], capsys)
    assert code == 2
    assert "terms must be integers" in err


# ---------------------------------------------------------------------------
# h1
# ---------------------------------------------------------------------------

def test_h1_default_oracle_double_cover(capsys):
    # the double cover of a determinant-5 knot has |H_1| = 5
    code, out, _ = run(["h1", "--", "-2", "2", "-2", "2"], capsys)
    assert code == 0
    assert out == "5\n"


def test_h1_snf_triple_cover(capsys):
    code, out, _ = run(["h1", "--cover", "3", "--method", "snf",
                        "--", "-2", "2", "-2", "4"], capsys)
    assert code == 0
    assert out == "16\n"


def test_h1_infinite_cover_reported(capsys):
    code, out, _ = run(["h1", "--cover", "6", "--", "2", "-2"], capsys)
    assert code == 0
    assert out == "INFINITE\n"


def test_h1_all_methods_agree(capsys):
    # options may follow the term block
    code, out, _ = run(["h1", "--", "-2", "2", "-2", "2",
                        "--cover", "3", "--method", "all"], capsys)
    assert code == 0
    assert out == "1,1,1 AGREE\n"


def test_h1_all_skips_inapplicable_methods(capsys):
    # double cover: the closed-form table only covers n = 3, so two values
    code, out, _ = run(["h1", "--method", "all", "--", "-2", "2", "-2", "4"],
                       capsys)
    assert code == 0
    assert out.endswith(" AGREE\n")
    assert len(out.split()[0].split(",")) == 2


def test_h1_disagreement_exits_nonzero(capsys, monkeypatch):
    monkeypatch.setattr(cli, "_H1_METHODS",
                        (("snf", lambda e, n: 1), ("oracle", lambda e, n: 2)))
    code, out, _ = run(["h1", "--method", "all", "--", "-2", "2"], capsys)
    assert code == 1
    assert out == "1,2 DISAGREE\n"


def test_h1_table_method_needs_triple_cover(capsys):
    code, _, err = run(["h1", "--method", "table", "--", "-2", "2", "-2", "2"],
                       capsys)
    assert code == 2
    assert err_tail(err) == (
        "bridgecover: error: method 'table' not applicable: the closed-form"
        " value is tabulated for the 3-fold cover only")


def test_h1_rejects_two_component_links(capsys):
    code, _, err = run(["h1", "--", "4"], capsys)
    assert code == 2
    assert "numerator 4 is even" in err


def test_h1_rejects_degenerate_cover(capsys):
    code, _, err = run(["h1", "--cover", "1", "--", "-2", "2"], capsys)
    assert code == 2
    assert "--cover must be >= 2" in err


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("suite,summary", [
    ("lemma5.4", "6/6 PASS"),
    ("lemma5.12", "6/6 PASS"),
    ("lemma5.3", "5/5 PASS"),
    ("lemma5.11", "5/5 PASS"),
])
def test_identity_suites_pass(capsys, suite, summary):
    code, out, _ = run(["identities", "--suite", suite], capsys)
    assert code == 0
    assert out.rstrip().splitlines()[-1] == summary


def test_tables_agreement_on_a_grid(capsys):
    code, out, _ = run(["identities", "--suite", "tables", "--grid", "1..2"],
                       capsys)
    assert code == 0
    assert out == (
        "family  params   points  agree\n"
        "A       q,s,t    8       8\n"
        "A(t=1)  q,s      4       4\n"
        "B       q,s,t    8       8\n"
        "L       q,s,t,l  16      16\n"
        "4/4 PASS\n")


def test_identities_json_format(capsys):
    code, out, _ = run(["identities", "--suite", "lemma5.4",
                        "--format", "json"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["passed"] == payload["total"] == 6
    assert all(check["ok"] for check in payload["checks"])


def test_identities_header_records_provenance(capsys):
    _, _, err = run(["identities", "--suite", "lemma5.4"], capsys)
    header = err.strip().splitlines()[0]
    assert header.startswith("# bridgecover 0.1.0 | seed 0 | grid ")
    assert header.endswith("| source Table 3 rows (family A)")


def test_identities_empty_grid_is_a_usage_error(capsys):
    code, _, err = run(["identities", "--suite", "tables", "--grid", "3..1"],
                       capsys)
    assert code == 2
    assert "empty grid range" in err


# ---------------------------------------------------------------------------
# cert
# ---------------------------------------------------------------------------

def test_cert_roundtrip(capsys, tmp_path):
    path = tmp_path / "cert.json"
    code, out, err = run(["cert", "generate", "--family", "L",
                          "--params", "1,1,1,1", "--out", str(path)], capsys)
    assert code == 0
    assert out == ""
    assert f"wrote {path}" in err
    code, out, _ = run(["cert", "verify", "--in", str(path)], capsys)
    assert code == 0
    assert out == "ACCEPT\n"


def test_cert_generate_writes_json_to_stdout(capsys):
    code, out, _ = run(["cert", "generate", "--family", "A",
                        "--params", "1,2,1"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["claim"] == "QUASI_ALTERNATING"
    assert sorted(payload) == ["axioms", "claim", "root"]


def test_cert_tail_params_match_the_option(capsys):
    code, via_tail, _ = run(["cert", "generate", "--family", "A",
                             "--", "1", "2", "1"], capsys)
    assert code == 0
    code, via_option, _ = run(["cert", "generate", "--family", "A",
                               "--params", "1,2,1"], capsys)
    assert code == 0
    assert via_tail == via_option


def test_cert_alternating_base_case(capsys):
    code, out, _ = run(["cert", "generate", "--family", "L",
                        "--params", "-1,1,-1,1"], capsys)
    assert code == 0
    assert json.loads(out)["claim"] == "QUASI_ALTERNATING"


def test_cert_verify_rejects_a_mutated_determinant(capsys, tmp_path):
    run(["cert", "generate", "--family", "L", "--params", "1,1,1,1",
         "--out", str(tmp_path / "c.json")], capsys)
    path = tmp_path / "c.json"
    payload = json.loads(path.read_text())
    payload["root"]["det"] = "999"
    path.write_text(json.dumps(payload))
    code, out, _ = run(["cert", "verify", "--in", str(path)], capsys)
    assert code == 1
    assert out == ("REJECT at root: determinant 999 does not match the"
                   " tabulated value 1 for L(q=1, s=1, t=1, l=1; *,*,*)\n")


def test_cert_verify_rejects_unparseable_input(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("not a certificate")
    code, out, _ = run(["cert", "verify", "--in", str(path)], capsys)
    assert code == 1
    assert out.startswith("REJECT ")


def test_cert_generate_param_count_checked(capsys):
    code, _, err = run(["cert", "generate", "--family", "A",
                        "--params", "1,2"], capsys)
    assert code == 2
    assert "expected 3 parameters, got 2" in err


def test_cert_generate_needs_params(capsys):
    code, _, err = run(["cert", "generate", "--family", "A"], capsys)
    assert code == 2
    assert "generate needs --params" in err


def test_cert_verify_needs_infile(capsys):
    code, _, err = run(["cert", "verify"], capsys)
    assert code == 2
    assert "verify needs --in FILE" in err


def test_cert_outdir_env_var(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTDIR_ENV, str(tmp_path))
    code, _, err = run(["cert", "generate", "--family", "L",
                        "--params", "-1,1,-1,1", "--out", "c.json"], capsys)
    assert code == 0
    assert (tmp_path / "c.json").exists()
    code, out, _ = run(["cert", "verify", "--in", str(tmp_path / "c.json")],
                       capsys)
    assert code == 0
    assert out == "ACCEPT\n"


# ---------------------------------------------------------------------------
# lo-elim
# ---------------------------------------------------------------------------

def test_loelim_table1_matches_the_text_golden(capsys):
    code, out, err = run(["lo-elim", "--family", "genus1", "--table1"], capsys)
    assert code == 0
    assert out == (GOLDEN / "table1.txt").read_text()
    assert err.strip() == ("# bridgecover 0.1.0 | seed 0 | grid"
                           " k>=2,l>=1 symbolic | source Table 1")


def test_loelim_table1_matches_the_csv_golden(capsys):
    code, out, _ = run(["lo-elim", "--family", "genus1", "--table1",
                        "--format", "csv"], capsys)
    assert code == 0
    assert out == (GOLDEN / "table1.csv").read_text()


def test_loelim_table1_json(capsys):
    code, out, _ = run(["lo-elim", "--family", "genus1", "--table1",
                        "--format", "json"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["survivors"] == [3, 4, 7, 8, 10]
    assert payload["orbits"] == [
        {"canonical": "++---", "members": [3, 4, 7, 8, 10]}]


def test_loelim_genus1_requires_table1(capsys):
    code, _, err = run(["lo-elim", "--family", "genus1"], capsys)
    assert code == 2
    assert "--family genus1 needs --table1" in err


def test_loelim_signs_rejected_for_genus1(capsys):
    code, _, err = run(["lo-elim", "--family", "genus1", "--table1",
                        "--signs", "+,+,+,+"], capsys)
    assert code == 2
    assert "--signs applies to --family genus2 only" in err


def test_loelim_genus2_matches_the_goldens(capsys):
    code, out, _ = run(["lo-elim", "--family", "genus2",
                        "--signs", "+,+,+,+"], capsys)
    assert code == 0
    assert out == (GOLDEN / "genus2_class1.txt").read_text()
    code, out, _ = run(["lo-elim", "--family", "genus2",
                        "--signs", "-,+,-,-"], capsys)
    assert code == 0
    assert out == (GOLDEN / "genus2_class6.txt").read_text()


def test_loelim_genus2_json(capsys):
    code, out, _ = run(["lo-elim", "--family", "genus2",
                        "--signs", "+,-,-,-", "--format", "json"], capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload["signs"] == [1, -1, -1, -1]
    assert payload["case"] == "mirror of sign class 5"
    assert payload["canonical"] == "+--"
    assert payload["residual"] == 3
    assert len(payload["subcases"]) == 3


def test_loelim_genus2_has_no_csv_format(capsys):
    code, _, err = run(["lo-elim", "--family", "genus2",
                        "--signs", "+,+,+,+", "--format", "csv"], capsys)
    assert code == 2
    assert "csv output covers the genus1 table only" in err


def test_loelim_genus2_needs_signs(capsys):
    code, _, err = run(["lo-elim", "--family", "genus2"], capsys)
    assert code == 2
    assert "--family genus2 needs --signs" in err


def test_loelim_bad_signs_are_a_usage_error(capsys):
    code, _, err = run(["lo-elim", "--family", "genus2",
                        "--signs", "+,+,x,+"], capsys)
    assert code == 2
    assert "--signs must be four comma-separated + or - entries" in err


def test_loelim_table1_rejected_for_genus2(capsys):
    code, _, err = run(["lo-elim", "--family", "genus2", "--table1",
                        "--signs", "+,+,+,+"], capsys)
    assert code == 2
    assert "--table1 applies to --family genus1 only" in err


# ---------------------------------------------------------------------------
# configuration, headers, entry point
# ---------------------------------------------------------------------------

def test_config_file_and_seed_recorded_in_header(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# narrow run\ngrid = 1..2\nq = 2..2\n")
    code, out, err = run(["--config", str(cfg), "--seed", "7",
                          "identities", "--suite", "tables"], capsys)
    assert code == 0
    assert err.strip() == (
        "# bridgecover 0.1.0 | seed 7 | grid q=2..2 s=1..2 t=1..2 l=1..2"
        " | source Tables 2-5 star rows")
    assert out.rstrip().splitlines()[-1] == "4/4 PASS"


def test_config_unknown_key_is_a_usage_error(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("volume = 1..2\n")
    code, _, err = run(["--config", str(cfg), "identities",
                        "--suite", "tables"], capsys)
    assert code == 2
    assert "unknown key 'volume'" in err


def test_config_malformed_range_is_a_usage_error(capsys, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("q = 5\n")
    code, _, err = run(["--config", str(cfg), "identities",
                        "--suite", "tables"], capsys)
    assert code == 2
    assert "range must look like LO..HI" in err


def test_stdout_is_diff_clean_across_seeds(capsys):
    _, first, _ = run(["--seed", "0", "lo-elim", "--family", "genus1",
                       "--table1"], capsys)
    _, second, _ = run(["--seed", "99", "lo-elim", "--family", "genus1",
                        "--table1"], capsys)
    assert first == second


def test_version_flag(capsys):
    code, out, _ = run(["--version"], capsys)
    assert code == 0
    assert out == "bridgecover 0.1.0\n"


def test_missing_subcommand_is_a_usage_error(capsys):
    code, _, _ = run([], capsys)
    assert code == 2


def test_module_execution():
    result = subprocess.run(
        [sys.executable, "-m", "bridgecover.cli", "fraction",
         "--", "-2", "2", "-2", "2"],
        capture_output=True, text=True)
    assert result.returncode == 0
    assert result.stdout == "-5/4 (knot 5_1 class, det 5)\n"


@pytest.mark.skipif(shutil.which("bridgecover") is None,
                    reason="console script not installed")
def test_installed_entry_point():
    result = subprocess.run(
        ["bridgecover", "h1", "--cover", "3", "--method", "all",
         "--", "-2", "2", "-2", "2"],
        capture_output=True, text=True)
    assert result.returncode == 0
    assert result.stdout == "1,1,1 AGREE\n"
