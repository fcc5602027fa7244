import csv
from pathlib import Path

import pytest

from forbconfig.cli import EXIT_INTERNAL, EXIT_NEGATIVE, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_contain_positive_and_negative(capsys):
    code, out, _ = run(capsys, "contain", "Q9", "I(3) x I(3)")
    assert code == EXIT_OK and out.startswith("CONTAINED")
    code, out, _ = run(capsys, "contain", "Q9", "I(4) x T(4)")
    assert code == EXIT_NEGATIVE and out.startswith("AVOIDED")


def test_forb_md_and_csv(capsys):
    code, out, _ = run(capsys, "forb", "--family", "Q9", "--m", "3..5")
    assert code == EXIT_OK
    for val in ("8", "13", "19"):
        assert val in out
    code, out, _ = run(capsys, "forb", "--family", "Q9,1(3,1)", "--m", "6",
                       "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.reader(out.strip().splitlines()))
    assert rows[0] == ["family_spec", "m", "value", "status", "witness_file"]
    assert rows[1][1:4] == ["6", "12", "exact"]


def test_forb_witness_dir(tmp_path, capsys):
    code, out, _ = run(capsys, "forb", "--family", "131", "--m", "3",
                       "--witness-dir", str(tmp_path))
    assert code == EXIT_OK
    files = list(tmp_path.iterdir())
    assert len(files) == 1
    text = files[0].read_text()
    assert set(text.strip().replace("\n", "")) <= {"0", "1"}


def test_forb_goldens_check_and_regen(tmp_path, capsys):
    golden = tmp_path / "values.csv"
    code, out, _ = run(capsys, "forb", "--family", "Q9", "--m", "3..4",
                       "--goldens", str(golden), "--regen")
    assert code == EXIT_OK and golden.exists()
    code, out, _ = run(capsys, "forb", "--family", "Q9", "--m", "3..4",
                       "--goldens", str(golden))
    assert code == EXIT_OK and "OK" in out
    # corrupt one value: the check must fail loudly
    golden.write_text(golden.read_text().replace("13", "12"))
    code, out, _ = run(capsys, "forb", "--family", "Q9", "--m", "3..4",
                       "--goldens", str(golden))
    assert code == EXIT_NEGATIVE and "MISMATCH" in out


def test_repo_goldens_subset(capsys):
    # spot-check two rows of the shipped golden file
    golden = Path(__file__).resolve().parent.parent / "goldens" / "values.csv"
    assert golden.exists()
    code, out, _ = run(capsys, "forb", "--family", "Q9", "--m", "4..5",
                       "--goldens", str(golden))
    assert code == EXIT_OK and "MISMATCH" not in out


def test_construct_and_params(capsys):
    code, out, _ = run(capsys, "construct", "sec5_counterexample", "--m", "6")
    assert code == EXIT_OK and "columns=13" in out
    code, out, _ = run(capsys, "construct", "f9_ell", "--m", "8",
                       "--params", "k=2,ell=3")
    assert code == EXIT_OK and "columns=12" in out  # (m+2) + (ell-1)


def test_verify_selected_claims(tmp_path, capsys):
    sel = tmp_path / "claims.txt"
    sel.write_text("tab1:Q9\nL-F11\n")
    code, out, _ = run(capsys, "verify", "--claims-file", str(sel))
    assert code == EXIT_OK
    assert "tab1:Q9" in out and "L-F11" in out and "FAIL" not in out


def test_ex_graph_and_hypergraph(capsys):
    code, out, _ = run(capsys, "ex", "--forbid", "K(2,2)", "--m", "5")
    assert code == EXIT_OK and "6" in out
    code, out, _ = run(capsys, "ex", "--forbid", "K3", "--m", "5")
    assert code == EXIT_OK  # triangle-free max edges = 6 on 5 vertices
    assert "6" in out


def test_decompose_both_modes(capsys):
    code, out, _ = run(capsys, "decompose", "induction", "I(4)", "--row", "1")
    assert code == EXIT_OK and "|B|+2|C|+|D|" in out
    code, out, _ = run(capsys, "decompose", "stability", "I(6) x Ic(6)", "--t", "2")
    assert code == EXIT_OK and "ratio=1.000" in out
    code, out, _ = run(capsys, "decompose", "stability", "I(3) x I(3)", "--t", "2")
    assert code == EXIT_NEGATIVE and "CONTAINS-Q3" in out


def test_classify_command(capsys):
    code, out, _ = run(capsys, "classify", "Ic(4)", "--t", "3")
    assert code == EXIT_OK and "type2" in out
    code, out, _ = run(capsys, "classify", "I(3) x I(3)", "--t", "2")
    assert code == EXIT_NEGATIVE and "CONTAINS-Q9" in out


def test_slope_command(capsys):
    code, out, _ = run(capsys, "slope", "--family", "Q9", "--m", "3..6")
    assert code == EXIT_OK and "1.700" in out
    assert "not an asymptotic claim" in out


def test_usage_errors(capsys):
    assert run(capsys, "contain", "NOPE(3)", "I(3)")[0] == EXIT_USAGE
    assert run(capsys, "forb", "--family", "Q9", "--m", "bogus")[0] == EXIT_USAGE
    assert run(capsys, "nosuchcommand")[0] == EXIT_USAGE


def test_table3_smoke(capsys):
    code, out, _ = run(capsys, "table3", "--m-values", "4", "--budget", "2")
    assert code == EXIT_OK
    assert "OPEN" in out  # the recorded open pairing stays open
    assert "3m-2" in out or "m+5" in out
