"""Shared generators for the randomized suites."""

from __future__ import annotations

import random

from forbconfig.matrices import Matrix, restrict


def random_matrix(rng: random.Random, max_rows: int, max_cols: int) -> Matrix:
    m = rng.randint(1, max_rows)
    n = rng.randint(1, max_cols)
    return Matrix(m, tuple(rng.getrandbits(m) for _ in range(n)))


def random_pair(rng: random.Random) -> tuple[Matrix, Matrix]:
    """A random (F, A) pair with F <= 4x5 and A <= 6x10; half the time F is
    drawn as a genuine submatrix of A so that positive cases are frequent."""
    A = random_matrix(rng, 6, 10)
    k = rng.randint(1, min(4, A.rows))
    n = rng.randint(1, 5)
    if rng.random() < 0.5 and n <= len(A.cols):
        rows = rng.sample(range(A.rows), k)
        cols = rng.sample(range(len(A.cols)), n)
        F = restrict(A, rows, cols)
    else:
        F = Matrix(k, tuple(rng.getrandbits(k) for _ in range(n)))
    return F, A


def random_avoiding_rows_input(rng: random.Random, t: int) -> Matrix | None:
    """A random matrix meeting the avoiding_rows preconditions (every row
    has fewer than t zeros, every column has a zero), or None when the draw
    cannot be repaired."""
    m = rng.randint(2, 8)
    n = rng.randint(1, 10)
    cols = [rng.getrandbits(m) for _ in range(n)]
    full = (1 << m) - 1
    # cap the number of zeros per row at t-1 by flipping surplus zeros to ones
    for r in range(m):
        zero_js = [j for j in range(n) if not (cols[j] >> r) & 1]
        rng.shuffle(zero_js)
        for j in zero_js[t - 1:]:
            cols[j] |= 1 << r
    # every column needs a zero; reopen one in a row that still has slack
    for j in range(n):
        if cols[j] == full:
            slack = [
                r for r in range(m)
                if sum(1 for c in cols if not (c >> r) & 1) < t - 1
            ]
            if not slack:
                return None
            cols[j] &= ~(1 << rng.choice(slack))
    return Matrix(m, tuple(cols))
