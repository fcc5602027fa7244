import pytest

from forbconfig.constructions import b01, block, catalog, product, q3t
from forbconfig.matrices import canonicalize, format_matrix_text
from forbconfig.specs import SpecError, normalize_spec, parse_family, parse_matrix_spec


def test_single_factor_forms():
    assert parse_matrix_spec("I(3)") == block("I", 3)
    assert parse_matrix_spec("Ic(2)") == block("Ic", 2)
    assert parse_matrix_spec("T(4)") == block("T", 4)
    assert parse_matrix_spec("1(2,3)") == block("ones", 2, 3)
    assert parse_matrix_spec("0(3,1)") == block("zeros", 3, 1)
    assert parse_matrix_spec("b01") == b01()
    assert parse_matrix_spec("Q9") == catalog("Q9").matrix
    assert parse_matrix_spec("Q3(t=3)") == q3t(3).to_matrix()
    assert parse_matrix_spec("Q3(3)") == q3t(3).to_matrix()


def test_products_and_whitespace():
    want = product(block("I", 2), block("T", 3))
    assert parse_matrix_spec("I(2) x T(3)") == want
    assert parse_matrix_spec("  I(2)   x   T(3) ") == want


def test_literal_files(tmp_path):
    p = tmp_path / "mat.txt"
    p.write_text(format_matrix_text(catalog("F9").matrix))
    got = parse_matrix_spec(f"lit:@{p}")
    assert canonicalize(got) == catalog("F9").config
    with pytest.raises(SpecError):
        parse_matrix_spec("lit:@/nonexistent/file.txt")


def test_normalize_round_trip():
    for spec in ["I(3)", "1(2,2)", "Q3(4)", "I(2) x Ic(2) x T(3)", "Q9"]:
        norm = normalize_spec(spec)
        assert parse_matrix_spec(norm) == parse_matrix_spec(spec)
        assert normalize_spec(norm) == norm


def test_family_parsing_respects_parentheses():
    fam = parse_family("Q9,1(3,1)")
    assert len(fam) == 2
    assert fam[0] == catalog("Q9").matrix
    assert fam[1] == block("ones", 3, 1)
    fam2 = parse_family("I(2) x T(2),131,Q3(t=2)")
    assert len(fam2) == 3


def test_spec_errors_mention_grammar():
    for bad in ["", "I(", "X(3)", "I(2) x", "1(2)", "Q3(1,2)"]:
        with pytest.raises(SpecError) as exc:
            parse_matrix_spec(bad)
        assert "expected" in str(exc.value)
    with pytest.raises(SpecError):
        parse_family("Q9,,131")
