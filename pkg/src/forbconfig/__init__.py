"""Exact computation and verification for forbidden configurations of (0,1)-matrices."""

from .matrices import (
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
from .containment import (
    Certificate,
    contains,
    contains_any,
    contains_incremental,
    naive_contains,
)
from .constructions import (
    CatalogEntry,
    b01,
    block,
    catalog,
    catalog_names,
    extremal_construction,
    graph_product,
    incidence_matrix,
    product,
    q3t,
    q3t0,
    t_identity,
)
from .search import (
    SearchOptions,
    SearchResult,
    SlopeReport,
    ex_graph,
    ex_hypergraph,
    forb_exact,
    forb_restricted,
    induction_decompose,
    slope_estimate,
)
from .analysis import (
    AvoidingRows,
    Q3ContainedError,
    Q9TypePartition,
    RowClass,
    StabilityDecomposition,
    StabilityLayer,
    TIkWitness,
    avoiding_rows,
    classify_rows,
    find_tIk,
    q3_stability_decompose,
    q9_classify,
)

__version__ = "0.1.0"
