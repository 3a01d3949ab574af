import json
import subprocess
import sys
from fractions import Fraction

import pytest

from diverse_medians import DEFAULT_LIMITS, ValidationError, cli


def make_config(**kw):
    base = dict(
        input=None,
        format="lines",
        objective="median",
        epsilon=Fraction(0),
        k=1,
        delta=Fraction(1, 4),
        eta=Fraction(1, 2),
        strategy="auto",
        seed=0,
        alphabet=None,
        output=None,
        timing=False,
        t=None,
        sizes=None,
        oracle_op=None,
        limits=DEFAULT_LIMITS,
        max_states=10**7,
    )
    base.update(kw)
    return cli.RunConfig(**base)


@pytest.fixture
def ties_path(tmp_path):
    p = tmp_path / "ties.txt"
    p.write_text("aaaa\nbbbb\ncccc\n")
    return str(p)


# known witness: a single rounding trial overshoots the cost cap (exit 4)
LUMPY_ROWS = "ccb\ncca\naaa\ncca\nbca\ncab\ncab\naca\n"


# --- parsing helpers ---------------------------------------------------------


def test_parse_rational_accepts_fractions_and_decimals():
    assert cli.parse_rational("1/2") == Fraction(1, 2)
    assert cli.parse_rational("0.25") == Fraction(1, 4)
    assert cli.parse_rational("2") == Fraction(2)


def test_parse_rational_rejects_garbage():
    with pytest.raises(ValidationError):
        cli.parse_rational("half")


def test_parse_alphabet_modes():
    assert cli._parse_alphabet("abc") == ("a", "b", "c")
    assert cli._parse_alphabet("a,b,c") == ("a", "b", "c")
    assert cli._parse_alphabet("AC,GT") == ("AC", "GT")


def test_render_word_joins_only_single_char_symbols():
    assert cli._render_word(("a", "b"), True) == "ab"
    assert cli._render_word(("AC", "GT"), False) == ["AC", "GT"]


# --- ingestion ----------------------------------------------------------------


def test_ingest_lines(tmp_path):
    p = tmp_path / "rows.txt"
    p.write_text("ab\n\nab\ncb\n")  # blank line is skipped
    ds = cli.ingest(str(p), "lines")
    assert ds.n == 3 and ds.d == 2
    assert ds.alphabet == ("a", "b", "c")
    assert ds.alphabet_inferred


def test_ingest_lines_ragged_names_the_line(tmp_path):
    p = tmp_path / "rag.txt"
    p.write_text("ab\nabc\n")
    with pytest.raises(ValidationError, match="line 2"):
        cli.ingest(str(p), "lines")


def test_ingest_empty_file_is_an_error(tmp_path):
    p = tmp_path / "empty.txt"
    p.write_text("\n\n")
    with pytest.raises(ValidationError):
        cli.ingest(str(p), "lines")


def test_ingest_fasta_concatenates_wrapped_records(tmp_path):
    p = tmp_path / "x.fasta"
    p.write_text(">r1 some description\nab\nca\n>r2\nbbca\n")
    ds = cli.ingest(str(p), "fasta")
    assert ds.n == 2 and ds.d == 4
    assert ds.strings[0] == ("a", "b", "c", "a")


def test_ingest_fasta_errors_name_the_record(tmp_path):
    p = tmp_path / "bad.fasta"
    p.write_text(">r1\nab\n>r2\nabc\n")
    with pytest.raises(ValidationError, match="r2"):
        cli.ingest(str(p), "fasta")


def test_csv_header_dropped_when_cells_never_reappear(tmp_path):
    p = tmp_path / "h.csv"
    p.write_text("p1,p2\na,b\nb,a\n")
    ds = cli.ingest(str(p), "csv")
    assert ds.n == 2 and ds.strings[0] == ("a", "b")


def test_csv_first_row_kept_when_cells_recur(tmp_path):
    p = tmp_path / "nh.csv"
    p.write_text("a,b\nb,a\na,b\n")
    ds = cli.ingest(str(p), "csv")
    assert ds.n == 3


def test_csv_explicit_alphabet_header_rule(tmp_path):
    p = tmp_path / "e.csv"
    p.write_text("pos1,pos2\na,b\nb,a\n")
    ds = cli.ingest(str(p), "csv", alphabet=("a", "b"))
    assert ds.n == 2  # header cells fall outside the alphabet
    p2 = tmp_path / "e2.csv"
    p2.write_text("a,b\nb,a\n")
    ds2 = cli.ingest(str(p2), "csv", alphabet=("a", "b"))
    assert ds2.n == 2  # first row is data: nothing outside the alphabet


# --- run() documents ----------------------------------------------------------


def test_run_median_document(ties_path):
    doc = cli.run(make_config(input=ties_path, objective="median"))
    assert doc["schema"] == "diverse-medians/1"
    assert doc["w"] == "aaaa"  # every column ties; alphabet order wins
    assert doc["opt"] == doc["objective_value"] == 8
    assert doc["costs"] == [8]
    assert doc["dataset"] == {
        "alphabet": ["a", "b", "c"],
        "alphabet_inferred": True,
        "d": 4,
        "n": 3,
    }


def test_run_diameter_document(ties_path):
    doc = cli.run(make_config(input=ties_path, objective="diameter", k=2))
    assert doc["objective_value"] == 4
    assert doc["branch"] == "exact"
    assert len(doc["strings"]) == 2


def test_run_sum_dispersion_document(ties_path):
    doc = cli.run(make_config(input=ties_path, objective="sum-dispersion", k=3))
    assert doc["objective_value"] == 12
    assert doc["strategy_tag"] == "enumeration"
    assert all(c == 8 for c in doc["costs"])


def test_run_sum_dispersion_exact_construction(ties_path):
    doc = cli.run(
        make_config(
            input=ties_path,
            objective="sum-dispersion",
            k=3,
            strategy="exact-construction",
        )
    )
    assert doc["objective_value"] == 12


def test_run_min_dispersion_document_carries_certificates(ties_path):
    doc = cli.run(make_config(input=ties_path, objective="min-dispersion", k=3))
    assert doc["objective_value"] == 4
    certs = doc["certificates"]
    assert certs["alphabet_sizes"] == [3, 3, 3, 3]
    assert certs["plotkin_sum"] == "8/3"
    assert certs["max_code_size"] == 3
    assert certs["tstar_upper"] == "32/3"


def test_run_min_dispersion_lp_strategy_reports(ties_path):
    doc = cli.run(
        make_config(
            input=ties_path,
            objective="min-dispersion",
            k=3,
            epsilon=Fraction(1, 2),
            strategy="lp",
            seed=4,
        )
    )
    assert doc["strategy_tag"] == "lpround"
    rep = doc["lp_report"]
    assert rep["lp_value"] == pytest.approx(8.0)
    assert rep["trials"] == 1 and rep["kept"] == 1


def test_run_bound_document_needs_no_input():
    doc = cli.run(make_config(objective="bound", sizes=(2, 2, 2, 2), t=3))
    assert doc["objective_value"] == 3
    assert doc["certificates"]["plotkin_sum"] == "2"
    assert "dataset" not in doc


def test_run_oracle_mindp(ties_path):
    doc = cli.run(
        make_config(
            input=ties_path,
            objective="oracle",
            oracle_op="mindp",
            k=2,
            epsilon=Fraction(1, 2),
        )
    )
    assert doc["objective_value"] == 4
    assert doc["pool_size"] == 81


def test_run_oracle_max_code_size_needs_no_input():
    doc = cli.run(
        make_config(objective="oracle", oracle_op="max-code-size", sizes=(2, 2), t=1)
    )
    assert doc["objective_value"] == 4


def test_run_rejects_strategy_objective_mismatch(ties_path):
    with pytest.raises(ValidationError, match="does not apply"):
        cli.run(make_config(input=ties_path, objective="median", strategy="greedy"))


def test_run_rejects_unknown_oracle_op(ties_path):
    with pytest.raises(ValidationError):
        cli.run(make_config(input=ties_path, objective="oracle", oracle_op="median"))


# --- entry point ---------------------------------------------------------------


def run_main(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_main_success_roundtrips_as_json(ties_path, capsys):
    code, out, err = run_main(
        ["--objective", "median", "--input", ties_path], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "diverse-medians/1"
    assert "done in" in err


def test_main_output_is_byte_identical_across_runs(ties_path, capsys):
    argv = [
        "--objective", "min-dispersion", "--input", ties_path,
        "--k", "3", "--epsilon", "1/2", "--strategy", "sample", "--seed", "9",
    ]
    _, out1, _ = run_main(argv, capsys)
    _, out2, _ = run_main(argv, capsys)
    assert out1 == out2
    assert out1.endswith("\n")


def test_main_timing_embeds_wall_time(ties_path, capsys):
    code, out, _ = run_main(
        ["--objective", "median", "--input", ties_path, "--timing"], capsys
    )
    assert code == 0
    assert isinstance(json.loads(out)["wall_time_s"], float)


def test_main_output_flag_writes_file_and_silences_stdout(
    ties_path, tmp_path, capsys
):
    target = tmp_path / "doc.json"
    code, out, _ = run_main(
        ["--objective", "median", "--input", ties_path, "--output", str(target)],
        capsys,
    )
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["w"] == "aaaa"


def test_main_missing_input_exits_2(capsys):
    code, _, err = run_main(
        ["--objective", "median", "--input", "/nonexistent/rows.txt"], capsys
    )
    assert code == 2
    assert err.strip()


def test_main_cap_exceeded_exits_3_with_hint(ties_path, capsys):
    code, _, err = run_main(
        [
            "--objective", "oracle", "--oracle-op", "exact-medians",
            "--input", ties_path, "--max-candidates", "2",
        ],
        capsys,
    )
    assert code == 3
    assert "max-candidates" in err


def test_main_lp_infeasible_exits_4(tmp_path, capsys):
    p = tmp_path / "lumpy.txt"
    p.write_text(LUMPY_ROWS)
    code, _, err = run_main(
        [
            "--objective", "min-dispersion", "--strategy", "lp",
            "--input", str(p), "--epsilon", "1/4", "--delta", "1/8",
            "--eta", "1/2", "--k", "3", "--seed", "2",
        ],
        capsys,
    )
    assert code == 4
    assert "cost cap" in err


def test_main_rejects_oversized_seed(ties_path, capsys):
    code, _, _ = run_main(
        ["--objective", "median", "--input", ties_path, "--seed", str(2**64)],
        capsys,
    )
    assert code == 2


def test_console_script_help_exits_zero():
    proc = subprocess.run(
        [sys.executable, "-m", "diverse_medians.cli", "--help"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "diverse" in proc.stdout
