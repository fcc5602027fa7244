import pytest

from forbconfig.constructions import (
    b01,
    block,
    c4_free_bipartite_edges,
    catalog,
    catalog_names,
    construction_family,
    extremal_construction,
    graph_product,
    incidence_matrix,
    product,
    q3t,
    q3t0,
    t_identity,
)
from forbconfig.containment import contains, contains_any
from forbconfig.matrices import Matrix, canonicalize, complement


def test_blocks():
    assert block("I", 3).cols == (1, 2, 4)
    assert block("Ic", 3).cols == (6, 5, 3)
    assert block("T", 3).cols == (7, 3, 1) or sorted(block("T", 3).col_sums()) == [1, 2, 3]
    assert block("ones", 2, 3).cols == (3, 3, 3)
    assert block("zeros", 2, 2).cols == (0, 0)
    assert b01().rows == 1 and sorted(b01().cols) == [0, 1]


def test_product_shapes_and_entries():
    A = block("I", 2)
    B = block("T", 3)
    P = product(A, B)
    assert P.rows == 5 and len(P.cols) == 6
    # first factor occupies the top rows
    assert P.cols[0] == A.cols[0] | (B.cols[0] << 2)


def test_product_factor_swap_is_row_permutation():
    A = block("I", 3)
    B = block("Ic", 3)
    assert canonicalize(product(A, B)) == canonicalize(product(B, A))


def test_graph_product_subset_of_full_product():
    A = block("I", 3).to_simple()
    B = block("Ic", 3).to_simple()
    G = graph_product(A, B, [(0, 0), (1, 2)])
    assert G.rows == 6 and len(G.cols) == 2
    assert set(G.cols) <= set(product(A, B).cols)
    with pytest.raises(ValueError):
        graph_product(A, B, [(0, 0), (0, 0)])
    with pytest.raises(ValueError):
        graph_product(A, B, [(3, 0)])


def test_q3t_family():
    assert q3t(2) == catalog("Q3").config
    assert q3t(3).n_cols == 8
    assert q3t0(3).n_cols == 7
    M = t_identity(2, 3)
    assert M.rows == 3 and len(M.cols) == 6
    with pytest.raises(ValueError):
        q3t(1)


def test_catalog_contents():
    names = catalog_names()
    assert {"131", "122", "141", "I3", "Q3", "Q8", "Q9", "F9", "F13", "F15"} <= set(names)
    q9 = catalog("Q9")
    assert q9.matrix.rows == 4 and len(q9.matrix.cols) == 2
    # complement entries really are complements
    assert canonicalize(catalog("F9c").matrix) == canonicalize(complement(catalog("F9").matrix))
    with pytest.raises(ValueError):
        catalog("nope")


def test_c4_free_bipartite_edges():
    for a, b in [(6, 6), (8, 8), (6, 10)]:
        edges = c4_free_bipartite_edges(a, b)
        assert len(edges) == len(set(edges))
        # K_{2,2}-free: no two left vertices share two right neighbours
        nb = {}
        for i, j in edges:
            nb.setdefault(i, set()).add(j)
        lefts = sorted(nb)
        for x in range(len(lefts)):
            for y in range(x + 1, len(lefts)):
                assert len(nb[lefts[x]] & nb[lefts[y]]) <= 1


def test_incidence_matrix():
    M = incidence_matrix(4, [(0, 1), (2, 3)])
    assert M.rows == 4 and sorted(M.cols) == [3, 12]
    with pytest.raises(ValueError):
        incidence_matrix(2, [(0, 1), (1, 0)])


@pytest.mark.parametrize(
    "name,kwargs,size_of_m",
    [
        ("c2", {}, lambda m: m + 1),
        ("c3", {}, lambda m: m + 2),
        ("c4", {}, lambda m: m + 5),
        ("f9_ell", {"k": 2, "ell": 2}, lambda m: m + 3),
        ("f9_ell", {"k": 3, "ell": 2}, lambda m: m + 6),
        ("q9_smallt", {"k": 4}, lambda m: 1 + 3 * m - 3),
        ("q9_l2", {"k": 2}, lambda m: 2 + 2 * m - 1),
        ("q9_lgeq3", {"k": 2, "ell": 3}, lambda m: 2 * m + 1),
        ("sec5_counterexample", {}, lambda m: 2 * m + 1),
    ],
)
def test_extremal_constructions_sizes_and_avoidance(name, kwargs, size_of_m):
    for m in (10, 25):
        A = extremal_construction(name, m, **kwargs)  # self-verifying
        assert A.rows == m and len(A.cols) == size_of_m(m)
        family = construction_family(name, m, **kwargs)
        assert contains_any(family, A) is None


def test_extremal_construction_rejects_bad_input():
    with pytest.raises(ValueError):
        extremal_construction("unknown", 10)
    with pytest.raises(ValueError):
        extremal_construction("q9_smallt", 5, k=4)  # m < 2k


def test_known_product_avoidances():
    # the classical product avoidance facts used throughout
    I, Ic, T = block("I", 4), block("Ic", 4), block("T", 4)
    assert contains(catalog("131").config, product(I, I)) is None
    assert contains(catalog("Q3").config, product(I, Ic)) is None
    assert contains(catalog("Q9").config, product(I, T)) is None
    assert contains(catalog("Q9").config, product(Ic, T)) is None
    assert contains(catalog("Q9").config, product(I, Ic)) is not None
