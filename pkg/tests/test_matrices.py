import random

import pytest

from forbconfig.matrices import (
    Configuration,
    Matrix,
    SimpleMatrix,
    canonicalize,
    complement,
    format_matrix_text,
    parse_matrix_text,
    restrict,
    select_by_sum,
    simplify,
)


def test_matrix_basic_accessors():
    M = Matrix(3, (0b101, 0b010))
    assert M.rows == 3 and len(M) == 2 and M.n_cols == 2
    assert M.entry(0, 0) == 1 and M.entry(1, 0) == 0 and M.entry(2, 0) == 1
    assert M.row_sum(1) == 1
    assert M.col_sums() == [2, 1]
    assert M.is_simple()
    assert isinstance(M.to_simple(), SimpleMatrix)


def test_matrix_rejects_out_of_range_columns():
    with pytest.raises(ValueError):
        Matrix(2, (4,))
    with pytest.raises(ValueError):
        Matrix(-1, ())


def test_simple_matrix_rejects_repeats():
    with pytest.raises(ValueError):
        SimpleMatrix(2, (1, 1))
    Matrix(2, (1, 1))  # plain matrices may repeat columns


def test_complement_involution():
    rng = random.Random(1)
    for _ in range(50):
        m = rng.randint(1, 6)
        M = Matrix(m, tuple(rng.getrandbits(m) for _ in range(rng.randint(0, 8))))
        assert complement(complement(M)) == M


def test_simplify_keeps_first_occurrences():
    M = Matrix(2, (1, 3, 1, 0, 3))
    assert simplify(M).cols == (1, 3, 0)


def test_restrict_example():
    # triangular 3x3, rows (2,0), column 1 -> the column (0 1)^T
    T3 = parse_matrix_text("111\n011\n001")
    R = restrict(T3, [2, 0], [1])
    assert R.rows == 2 and R.cols == (0b10,)


def test_restrict_validates_indices():
    M = Matrix(2, (1, 2))
    with pytest.raises(ValueError):
        restrict(M, [0, 0], [0])
    with pytest.raises(ValueError):
        restrict(M, [0], [2])


def test_select_by_sum():
    M = Matrix(3, (0, 1, 3, 7))
    assert select_by_sum(M, lambda s: s >= 2).cols == (3, 7)


def test_canonicalize_permutation_invariance():
    rng = random.Random(2)
    for _ in range(40):
        m = rng.randint(1, 5)
        n = rng.randint(1, 6)
        cols = [rng.getrandbits(m) for _ in range(n)]
        M = Matrix(m, tuple(cols))
        # random row and column permutation of M
        rperm = list(range(m))
        rng.shuffle(rperm)
        pcols = []
        for c in cols:
            v = 0
            for new_r, old_r in enumerate(rperm):
                if (c >> old_r) & 1:
                    v |= 1 << new_r
            pcols.append(v)
        rng.shuffle(pcols)
        assert canonicalize(M) == canonicalize(Matrix(m, tuple(pcols)))


def test_canonicalize_distinguishes_nonisomorphic():
    A = Matrix(2, (1, 2))  # I_2
    B = Matrix(2, (1, 3))  # triangular
    assert canonicalize(A) != canonicalize(B)
    assert isinstance(canonicalize(A), Configuration)


def test_canonicalize_row_limit():
    with pytest.raises(ValueError):
        canonicalize(Matrix(13, (0,)))


def test_parse_format_round_trip():
    rng = random.Random(3)
    for _ in range(30):
        m = rng.randint(1, 7)
        n = rng.randint(1, 9)
        M = Matrix(m, tuple(rng.getrandbits(m) for _ in range(n)))
        assert parse_matrix_text(format_matrix_text(M)) == M


def test_parse_matrix_text_errors():
    with pytest.raises(ValueError):
        parse_matrix_text("")
    with pytest.raises(ValueError):
        parse_matrix_text("01\n0")
    with pytest.raises(ValueError):
        parse_matrix_text("0x")
