"""Named configurations, building blocks, products, and extremal constructions.

Blocks: I_k (identity), I_k^c (its complement), T_k (staircase: column i has
ones in rows 0..i), 1_{k,l} / 0_{k,l} (all-ones / all-zeros), and the 1x2
block [0 1].  Products stack one column from each factor in every possible
combination.  Extremal constructions are families of columns that attain
known lower bounds; each self-verifies its avoidance and size when built.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .containment import contains_any
from .matrices import (
    Configuration,
    Matrix,
    SimpleMatrix,
    canonicalize,
    complement,
    parse_matrix_text,
)

__all__ = [
    "block",
    "b01",
    "product",
    "graph_product",
    "q3t",
    "q3t0",
    "t_identity",
    "CatalogEntry",
    "catalog",
    "catalog_names",
    "extremal_construction",
    "construction_family",
    "incidence_matrix",
    "c4_free_bipartite_edges",
]

PRODUCT_COLUMN_CAP = 1 << 20


def _identity(k: int) -> SimpleMatrix:
    return SimpleMatrix(k, tuple(1 << r for r in range(k)))


def _triangular(k: int) -> SimpleMatrix:
    return SimpleMatrix(k, tuple((1 << (i + 1)) - 1 for i in range(k)))


def block(kind: str, k: int, l: int = 1) -> Matrix:
    """Building block by kind: "I", "Ic", "T", "ones" (1_{k,l}), "zeros"."""
    if k < 1:
        raise ValueError("block size must be >= 1")
    if kind == "I":
        return _identity(k)
    if kind == "Ic":
        return complement(_identity(k))
    if kind == "T":
        return _triangular(k)
    if l < 1:
        raise ValueError("block width must be >= 1")
    if kind == "ones":
        return Matrix(k, ((1 << k) - 1,) * l)
    if kind == "zeros":
        return Matrix(k, (0,) * l)
    raise ValueError(f"unknown block kind {kind!r}")


def b01() -> SimpleMatrix:
    """The 1x2 block with columns (0) and (1)."""
    return SimpleMatrix(1, (0, 1))


def product(*factors: Matrix, max_columns: int = PRODUCT_COLUMN_CAP) -> Matrix:
    """p-fold product: rows add, columns are all stackings of factor columns.

    Column order is lexicographic over factor column indices (first factor
    most significant).  Simple when every factor is simple.
    """
    if not factors:
        raise ValueError("product needs at least one factor")
    total = 1
    for f in factors:
        total *= len(f.cols)
    if total > max_columns:
        raise ValueError(f"product would have {total} columns (cap {max_columns})")
    cols = [0]
    rows = 0
    for f in factors:
        cols = [c | (fc << rows) for c in cols for fc in f.cols]
        rows += f.rows
    if all(isinstance(f, SimpleMatrix) or f.is_simple() for f in factors):
        return SimpleMatrix(rows, tuple(cols))
    return Matrix(rows, tuple(cols))


def graph_product(A: SimpleMatrix, B: SimpleMatrix, edges) -> SimpleMatrix:
    """Product restricted to column pairs (i, j) joined by a bipartite edge.

    ``edges`` is an iterable of (i, j) index pairs into A's and B's columns;
    the result has one column per edge, in edge order.
    """
    edge_list = list(edges)
    if len(set(edge_list)) != len(edge_list):
        raise ValueError("repeated edge in graph product")
    cols = []
    for i, j in edge_list:
        if not (0 <= i < len(A.cols) and 0 <= j < len(B.cols)):
            raise ValueError(f"edge ({i},{j}) out of range")
        cols.append(A.cols[i] | (B.cols[j] << A.rows))
    return SimpleMatrix(A.rows + B.rows, tuple(cols))


def q3t(t: int) -> Configuration:
    """2-rowed configuration: one (00), t x (10), t x (01), one (11)."""
    if t < 2:
        raise ValueError("q3t requires t >= 2")
    return canonicalize(Matrix(2, (0,) + (1,) * t + (2,) * t + (3,)))


def q3t0(t: int) -> Configuration:
    """q3t without its column of ones."""
    if t < 2:
        raise ValueError("q3t0 requires t >= 2")
    return canonicalize(Matrix(2, (0,) + (1,) * t + (2,) * t))


def t_identity(t: int, k: int) -> Matrix:
    """Each column of I_k repeated t times (k*t columns on k rows)."""
    if t < 1 or k < 0:
        raise ValueError("t_identity requires t >= 1, k >= 0")
    cols = tuple(1 << r for r in range(k) for _ in range(t))
    return Matrix(k, cols)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    matrix: Matrix
    config: Configuration
    source: str


_CATALOG_TEXT: dict[str, tuple[str, str]] = {
    # name -> (matrix text, source tag)
    "131": ("1\n1\n1", "blocks"),
    "122": ("11\n11", "blocks"),
    "141": ("1\n1\n1\n1", "blocks"),
    "041": ("0\n0\n0\n0", "blocks"),
    "I3": ("100\n010\n001", "quadratic-minimal"),
    "Q3": ("000111\n011001", "quadratic-minimal"),
    "Q8": ("0011\n1010\n0101", "quadratic-minimal"),
    "Q9": ("10\n10\n01\n01", "quadratic-minimal"),
    "F9": ("100\n010\n001\n001", "cubic-4row"),
    "F10": ("100\n010\n001\n000", "cubic-4row"),
    "F11": ("1010\n1001\n0110\n0101", "cubic-4row"),
    "F12": ("1001\n0101\n0011\n1110", "cubic-4row"),
    "F13": ("1100\n0110\n0101\n0011", "cubic-4row"),
    "F14": ("10\n10\n10\n01\n01\n01", "cubic-6row"),
    "F15": ("100\n010\n001\n011\n101\n110", "cubic-6row"),
    "F16": ("111\n111\n100\n010\n001\n000", "cubic-6row"),
    "F17": ("111\n110\n100\n010\n001\n001", "cubic-6row"),
}
_COMPLEMENT_NAMES = ("F9c", "F10c", "F12c", "F16c", "F17c")


def catalog_names() -> list[str]:
    return list(_CATALOG_TEXT) + list(_COMPLEMENT_NAMES)


def catalog(name: str) -> CatalogEntry:
    """Named configuration from the built-in catalog."""
    if name in _CATALOG_TEXT:
        text, source = _CATALOG_TEXT[name]
        M = parse_matrix_text(text)
    elif name in _COMPLEMENT_NAMES:
        base = catalog(name[:-1])
        M = complement(base.matrix)
        source = base.source
    else:
        raise ValueError(f"unknown catalog name {name!r}; known: {', '.join(catalog_names())}")
    return CatalogEntry(name, M, canonicalize(M), source)


def c4_free_bipartite_edges(a: int, b: int) -> list[tuple[int, int]]:
    """Deterministic K_{2,2}-free bipartite edge set with balanced degrees.

    Circulant construction: edges (i, (i+s) mod n) for s in a greedy Sidon
    set mod n (all ordered pairwise differences distinct), which rules out
    two left vertices sharing two right neighbours.
    """
    n = max(a, b)
    sidon: list[int] = []
    diffs: set[int] = set()
    for s in range(n):
        new = set()
        ok = True
        for s2 in sidon:
            for d in ((s - s2) % n, (s2 - s) % n):
                if d in diffs or d in new:
                    ok = False
                    break
                new.add(d)
            if not ok:
                break
        if ok:
            sidon.append(s)
            diffs |= new
    edges = []
    for i in range(a):
        for s in sidon:
            j = (i + s) % n
            if j < b:
                edges.append((i, j))
    return edges


def incidence_matrix(n_vertices: int, edges) -> SimpleMatrix:
    """Vertex-edge incidence matrix of a hypergraph (edges = vertex sets)."""
    edge_sets = [frozenset(e) for e in edges]
    if len(set(edge_sets)) != len(edge_sets):
        raise ValueError("repeated edge in hypergraph")
    cols = []
    for e in edge_sets:
        v = 0
        for vert in e:
            if not 0 <= vert < n_vertices:
                raise ValueError(f"vertex {vert} out of range")
            v |= 1 << vert
        cols.append(v)
    return SimpleMatrix(n_vertices, tuple(cols))


# ---------------------------------------------------------------------------
# Extremal lower-bound constructions.  Each builder returns (matrix, family,
# expected size); extremal_construction() verifies both before returning.
# ---------------------------------------------------------------------------


def _ones_cfg(k: int, l: int) -> Configuration:
    return canonicalize(block("ones", k, l))


def _cols_of_sum_le(m: int, rows: tuple[int, ...], cap: int) -> list[int]:
    """All columns supported on ``rows`` with popcount <= cap, sorted."""
    out = set()
    for r in range(cap + 1):
        for sub in itertools.combinations(rows, r):
            v = 0
            for x in sub:
                v |= 1 << x
            out.add(v)
    return sorted(out, key=lambda c: (c.bit_count(), c))


def _build_c2(m: int):
    if m < 1:
        raise ValueError("c2 requires m >= 1")
    cols = [0] + [1 << r for r in range(m)]
    family = [_ones_cfg(2, 1), catalog("F9").config]
    return cols, family, m + 1


def _build_c3(m: int):
    if m < 2:
        raise ValueError("c3 requires m >= 2")
    cols = [0, 1, 2] + [1 | (1 << j) for j in range(1, m)]
    family = [_ones_cfg(3, 1), catalog("F9").config]
    return cols, family, m + 2


def _build_c4(m: int):
    if m < 3:
        raise ValueError("c4 requires m >= 3")
    cols = _cols_of_sum_le(m, (0, 1, 2), 2)
    cols += [3 | (1 << j) for j in range(2, m)]
    family = [_ones_cfg(4, 1), catalog("F9").config]
    return cols, family, m + 5


def _build_f9_ell(m: int, k: int, ell: int):
    if k not in (2, 3):
        raise ValueError("f9_ell supports k in {2, 3}")
    if ell < 2:
        raise ValueError("f9_ell requires ell >= 2")
    if m < max(5, k + 2, ell + 1):
        raise ValueError(f"f9_ell requires m >= {max(5, k + 2, ell + 1)}")
    base_cols, _, base_size = (_build_c3 if k == 2 else _build_c4)(m)
    full = (1 << m) - 1
    cols = base_cols + [full & ~(1 << i) for i in range(ell - 1)]
    family = [_ones_cfg(k, ell), catalog("F9").config]
    return cols, family, base_size + ell - 1


def _q9_smallt_cols(m: int, k: int) -> list[int]:
    cols = [0] + [1 << r for r in range(m)]
    for t in range(2, k):
        prefix = (1 << (t - 1)) - 1
        cols += [prefix | (1 << j) for j in range(t - 1, m)]
    return cols


def _build_q9_smallt(m: int, k: int):
    if k < 2:
        raise ValueError("q9_smallt requires k >= 2")
    if m < 2 * k:
        raise ValueError("q9_smallt requires m >= 2k")
    cols = _q9_smallt_cols(m, k)
    family = [catalog("Q9").config, _ones_cfg(k, 1)]
    size = 1 + (k - 1) * m - (k - 1) * (k - 2) // 2
    return cols, family, size


def _build_q9_l2(m: int, k: int):
    if k < 2:
        raise ValueError("q9_l2 requires k >= 2")
    if m < 2 * (k + 1):
        raise ValueError("q9_l2 requires m >= 2(k+1)")
    cols = _q9_smallt_cols(m, k + 1)
    full = (1 << m) - 1
    cols.append(full & ~1)
    family = [catalog("Q9").config, _ones_cfg(k, 2)]
    size = 1 + k * m - k * (k - 1) // 2 + 1
    return cols, family, size


def _build_q9_lgeq3(m: int, k: int, ell: int):
    if k < 2 or ell < 3:
        raise ValueError("q9_lgeq3 requires k >= 2 and ell >= 3")
    if m < max(2 * (k + 1), k + 2 * ell - 3):
        raise ValueError(f"q9_lgeq3 requires m >= {max(2 * (k + 1), k + 2 * ell - 3)}")
    cols = _q9_smallt_cols(m, k + 1)
    lead_k = (1 << k) - 1  # rows 0..k-1
    for i in range(ell - 2):
        cols.append(lead_k | (1 << (k + i)))
    # sum (k+ell-2) columns: rows 0..k+ell-3 except k-1, plus one below
    trunk = ((1 << (k + ell - 2)) - 1) & ~(1 << (k - 1))
    for i in range(ell - 3):
        cols.append(trunk | (1 << (k + ell - 2 + i)))
    family = [catalog("Q9").config, _ones_cfg(k, ell)]
    size = 1 + k * m - k * (k - 1) // 2 + 2 * ell - 5
    return cols, family, size


def _build_sec5(m: int):
    if m < 3:
        raise ValueError("sec5_counterexample requires m >= 3")
    full = (1 << m) - 1
    cols = [0] + [1 << r for r in range(m)]
    cols += [1 | (1 << j) for j in range(1, m)]
    cols.append(full & ~1)
    family = [_ones_cfg(2, 2), catalog("Q9").config]
    return cols, family, 2 * m + 1


_BUILDERS = {
    "c2": _build_c2,
    "c3": _build_c3,
    "c4": _build_c4,
    "f9_ell": _build_f9_ell,
    "q9_smallt": _build_q9_smallt,
    "q9_l2": _build_q9_l2,
    "q9_lgeq3": _build_q9_lgeq3,
    "sec5_counterexample": _build_sec5,
}


def construction_family(name: str, m: int, **params) -> list[Configuration]:
    """The family the named construction avoids."""
    if name not in _BUILDERS:
        raise ValueError(f"unknown construction {name!r}; known: {', '.join(_BUILDERS)}")
    _, family, _ = _BUILDERS[name](m, **params)
    return family


def extremal_construction(name: str, m: int, *, verify: bool = True, **params) -> SimpleMatrix:
    """Build a named lower-bound construction, self-verifying by default.

    Verification checks both that the column count equals the documented
    size formula and that the result avoids the associated family.
    """
    if name not in _BUILDERS:
        raise ValueError(f"unknown construction {name!r}; known: {', '.join(_BUILDERS)}")
    cols, family, size = _BUILDERS[name](m, **params)
    A = SimpleMatrix(m, tuple(cols))
    if len(A.cols) != size:
        raise AssertionError(f"{name}(m={m}): built {len(A.cols)} columns, expected {size}")
    if verify:
        hit = contains_any(family, A)
        if hit is not None:
            raise AssertionError(f"{name}(m={m}): construction contains family member {hit[0]}")
    return A
