"""Bit-level (0,1)-matrix types and elementary transforms.

A column of an m-rowed matrix is stored as a Python int bitmask with bit r
set iff the entry in row r is 1 (row 0 is the top row).  Arbitrary-precision
ints make the representation uniform for any m; everything in this package
works at m of a few dozen rows at most.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

__all__ = [
    "Matrix",
    "SimpleMatrix",
    "Configuration",
    "complement",
    "simplify",
    "restrict",
    "canonicalize",
    "select_by_sum",
    "parse_matrix_text",
    "format_matrix_text",
]

# Refuse canonicalization above this many rows: the permutation search is
# exact and exhaustive, which stops being reasonable for large row counts.
CANON_MAX_ROWS = 12
_CANON_MAX_ARRANGEMENTS = 500_000


@dataclass(frozen=True)
class Matrix:
    """A (0,1)-matrix: row count plus an ordered tuple of column bitmasks."""

    rows: int
    cols: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rows < 0:
            raise ValueError("row count must be nonnegative")
        if not isinstance(self.cols, tuple):
            object.__setattr__(self, "cols", tuple(self.cols))
        limit = 1 << self.rows
        for c in self.cols:
            if not 0 <= c < limit:
                raise ValueError(f"column {c:#x} out of range for {self.rows} rows")

    def __len__(self) -> int:
        return len(self.cols)

    @property
    def n_cols(self) -> int:
        return len(self.cols)

    def entry(self, r: int, j: int) -> int:
        return (self.cols[j] >> r) & 1

    def row_sum(self, r: int) -> int:
        return sum((c >> r) & 1 for c in self.cols)

    def col_sums(self) -> list[int]:
        return [c.bit_count() for c in self.cols]

    def is_simple(self) -> bool:
        return len(set(self.cols)) == len(self.cols)

    def to_simple(self) -> "SimpleMatrix":
        """View this matrix as simple; error if columns repeat."""
        return SimpleMatrix(self.rows, self.cols)


class SimpleMatrix(Matrix):
    """A (0,1)-matrix with pairwise distinct columns."""

    def __post_init__(self) -> None:
        super().__post_init__()
        if len(set(self.cols)) != len(self.cols):
            raise ValueError("SimpleMatrix has repeated columns")


@dataclass(frozen=True)
class Configuration:
    """A matrix considered up to row and column permutation.

    ``cols`` is the canonical representative: the lexicographically least
    sorted column tuple over the admissible row permutations.  Two matrices
    are row/column permutations of each other iff their Configurations are
    equal.  Construct via :func:`canonicalize`.
    """

    rows: int
    cols: tuple[int, ...]

    @property
    def n_cols(self) -> int:
        return len(self.cols)

    @property
    def col_multiset(self) -> Counter:
        return Counter(self.cols)

    @property
    def canon_key(self) -> bytes:
        return repr((self.rows, self.cols)).encode()

    def to_matrix(self) -> Matrix:
        return Matrix(self.rows, self.cols)


def complement(M: Matrix) -> Matrix:
    """Entrywise 0-1 complement."""
    mask = (1 << M.rows) - 1
    cols = tuple(mask & ~c for c in M.cols)
    if isinstance(M, SimpleMatrix):
        return SimpleMatrix(M.rows, cols)
    return Matrix(M.rows, cols)


def simplify(M: Matrix) -> SimpleMatrix:
    """Drop repeated columns, keeping first occurrences in order."""
    seen: set[int] = set()
    cols = []
    for c in M.cols:
        if c not in seen:
            seen.add(c)
            cols.append(c)
    return SimpleMatrix(M.rows, tuple(cols))


def restrict(M: Matrix, row_subset, col_subset) -> Matrix:
    """Submatrix on the given rows (in order) and column indices (in order)."""
    rows = list(row_subset)
    cols_idx = list(col_subset)
    if len(set(rows)) != len(rows):
        raise ValueError("repeated row index in restrict")
    if len(set(cols_idx)) != len(cols_idx):
        raise ValueError("repeated column index in restrict")
    for r in rows:
        if not 0 <= r < M.rows:
            raise ValueError(f"row index {r} out of range")
    for j in cols_idx:
        if not 0 <= j < len(M.cols):
            raise ValueError(f"column index {j} out of range")
    new_cols = []
    for j in cols_idx:
        c = M.cols[j]
        v = 0
        for new_r, old_r in enumerate(rows):
            if (c >> old_r) & 1:
                v |= 1 << new_r
        new_cols.append(v)
    return Matrix(len(rows), tuple(new_cols))


def select_by_sum(A: Matrix, predicate) -> Matrix:
    """Columns whose popcount satisfies ``predicate``, order preserved."""
    cols = tuple(c for c in A.cols if predicate(c.bit_count()))
    if isinstance(A, SimpleMatrix):
        return SimpleMatrix(A.rows, cols)
    return Matrix(A.rows, cols)


def _unique_index_orders(indices: list[int], key) -> list[tuple[int, ...]]:
    """All orderings of ``indices`` distinct under the per-index ``key``."""
    out = []
    seen: set[tuple] = set()
    for perm in itertools.permutations(indices):
        sig = tuple(key(i) for i in perm)
        if sig not in seen:
            seen.add(sig)
            out.append(perm)
    return out


def canonicalize(M: Matrix) -> Configuration:
    """Canonical form under joint row and column permutation.

    Exact: minimizes the sorted column tuple over all row permutations,
    restricted to permutations preserving a row invariant (row sum plus the
    multiset of incident column sums), which every symmetry must preserve.
    """
    k = M.rows
    if k > CANON_MAX_ROWS:
        raise ValueError(f"canonicalize supports at most {CANON_MAX_ROWS} rows, got {k}")
    cols = M.cols
    if k == 0 or not cols:
        return Configuration(k, tuple(sorted(cols)))

    colsums = [c.bit_count() for c in cols]
    nc = len(cols)
    rowvec = [tuple((c >> r) & 1 for c in cols) for r in range(k)]
    sig = []
    for r in range(k):
        hits = tuple(sorted(colsums[j] for j in range(nc) if rowvec[r][j]))
        sig.append((len(hits), hits))

    classes: dict = {}
    for r in range(k):
        classes.setdefault(sig[r], []).append(r)

    class_orders = []
    total = 1
    for s in sorted(classes):
        orders = _unique_index_orders(classes[s], key=lambda i: rowvec[i])
        total *= len(orders)
        if total > _CANON_MAX_ARRANGEMENTS:
            raise ValueError("canonicalize: row symmetry class too large")
        class_orders.append(orders)

    best: tuple[int, ...] | None = None
    for combo in itertools.product(*class_orders):
        order = [r for part in combo for r in part]
        # order[new_r] = old row placed at position new_r
        new_cols = []
        for c in cols:
            v = 0
            for new_r, old_r in enumerate(order):
                if (c >> old_r) & 1:
                    v |= 1 << new_r
            new_cols.append(v)
        cand = tuple(sorted(new_cols))
        if best is None or cand < best:
            best = cand
    assert best is not None
    return Configuration(k, best)


def parse_matrix_text(text: str) -> Matrix:
    """Parse the interchange format: one line of '0'/'1' chars per row."""
    lines = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            if lines:
                break
            continue
        lines.append(line)
    if not lines:
        raise ValueError("empty matrix text")
    width = len(lines[0])
    for line in lines:
        if len(line) != width or set(line) - {"0", "1"}:
            raise ValueError(f"bad matrix line: {line!r}")
    rows = len(lines)
    cols = []
    for j in range(width):
        v = 0
        for r in range(rows):
            if lines[r][j] == "1":
                v |= 1 << r
        cols.append(v)
    return Matrix(rows, tuple(cols))


def format_matrix_text(M: Matrix) -> str:
    """Emit the interchange format (rows as lines of 0/1, top row first)."""
    lines = []
    for r in range(M.rows):
        lines.append("".join("1" if (c >> r) & 1 else "0" for c in M.cols))
    return "\n".join(lines) + "\n"
