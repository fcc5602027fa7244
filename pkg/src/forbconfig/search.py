"""Exact forb(m, family) by branch-and-bound, plus Turán-number oracles.

The engine compiles the family into *constraints*: for each member F and
each row injection of F into the m rows (deduplicated over F's equal rows),
one constraint listing, per distinct restricted column pattern of F, the
set of universe columns realizing that pattern and the demanded count.
A column set contains a family member iff some constraint is fully met, so
the search maintains per-constraint deficits incrementally and never adds a
column that would complete a constraint.

The same maximum-subset kernel answers graph and hypergraph Turán problems
(items are edges; constraints come from vertex injections of the forbidden
(hyper)graph).
"""

from __future__ import annotations

import itertools
import math
import statistics
import time
from collections import Counter
from dataclasses import dataclass, field

from .containment import contains_any
from .matrices import Configuration, Matrix, SimpleMatrix

__all__ = [
    "SearchOptions",
    "SearchResult",
    "forb_exact",
    "forb_restricted",
    "ex_graph",
    "ex_hypergraph",
    "induction_decompose",
    "SlopeReport",
    "slope_estimate",
]


@dataclass(frozen=True)
class SearchOptions:
    """Knobs for forb_exact.

    column_filter: predicate on the column bitmask restricting the universe.
    filter_symmetric: declare the filter invariant under row permutation
        (true for sum-based filters); enables first-branch orbit pruning.
    time_budget: seconds; on expiry the best known value is returned with
        status "timeout".
    symmetry_pruning: restrict the first included column to the least
        member of its orbit under row permutations (sound when the universe
        is row-symmetric).
    initial_lower_bound: a known avoiding matrix used to seed the bound.
    """

    column_filter: object = None
    filter_symmetric: bool = True
    time_budget: float | None = None
    symmetry_pruning: bool = True
    initial_lower_bound: SimpleMatrix | None = None


@dataclass(frozen=True)
class SearchResult:
    value: int
    witness: SimpleMatrix
    status: str  # "exact", "lower_bound_only", or "timeout"
    nodes: int
    elapsed: float


class _Timeout(Exception):
    pass


def _as_matrix(F) -> Matrix:
    return F.to_matrix() if isinstance(F, Configuration) else F


def _row_injections(F: Matrix, m: int):
    """Ordered row injections of F into range(m), deduped over equal F rows."""
    k = F.rows
    rowvec = [tuple((c >> i) & 1 for c in F.cols) for i in range(k)]
    eq_groups: dict[tuple, list[int]] = {}
    for i in range(k):
        eq_groups.setdefault(rowvec[i], []).append(i)
    for perm in itertools.permutations(range(m), k):
        ok = True
        for grp in eq_groups.values():
            for a, b in zip(grp, grp[1:]):
                if perm[a] > perm[b]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield perm


def compile_constraints(family, universe: list[int], m: int):
    """Constraints as lists of (column-index-mask, demanded count) pairs.

    A constraint "fires" when, for every pair, at least `demand` of the
    masked columns are selected; firing is equivalent to containing the
    corresponding family member via the corresponding row injection.
    """
    constraints: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    seen: set[frozenset] = set()
    for F in family:
        F = _as_matrix(F)
        k = F.rows
        if k > m or len(F.cols) > len(universe):
            continue
        if len(F.cols) == 0:
            raise ValueError("family member with zero columns is contained in everything")
        demand = Counter(F.cols)  # F-row d of the injection is pattern bit d
        for inj in _row_injections(F, m):
            # group universe columns by their restricted pattern
            by_pattern: dict[int, int] = {}
            for j, u in enumerate(universe):
                q = 0
                for d, r in enumerate(inj):
                    if (u >> r) & 1:
                        q |= 1 << d
                if q in demand:
                    by_pattern[q] = by_pattern.get(q, 0) | (1 << j)
            pairs = []
            feasible = True
            for p, cnt in sorted(demand.items()):
                mask = by_pattern.get(p, 0)
                if mask.bit_count() < cnt:
                    feasible = False
                    break
                pairs.append((mask, cnt))
            if not feasible:
                continue
            key = frozenset(pairs)
            if key not in seen:
                seen.add(key)
                constraints.append(tuple(pairs))
    return constraints


def _max_subset(
    n_items: int,
    constraints,
    *,
    time_budget: float | None = None,
    initial: list[int] | None = None,
    first_item_allowed: int | None = None,
    use_coloring: bool | None = None,
):
    """Largest subset of range(n_items) meeting no constraint in full.

    Returns (best_size, best_items, nodes, timed_out).  Deterministic:
    branches on items in ascending order.
    """
    start = time.monotonic()
    nc = len(constraints)

    # per-item incidence: (constraint index, pattern index) pairs
    item_entries: list[list[tuple[int, int]]] = [[] for _ in range(n_items)]
    needs: list[list[int]] = []
    masks: list[list[int]] = []
    for ci, pairs in enumerate(constraints):
        needs.append([cnt for _, cnt in pairs])
        masks.append([mask for mask, _ in pairs])
        for pi, (mask, _) in enumerate(pairs):
            mm = mask
            while mm:
                lsb = mm & -mm
                item_entries[lsb.bit_length() - 1].append((ci, pi))
                mm ^= lsb

    counts = [[0] * len(needs[ci]) for ci in range(nc)]
    deficit = [sum(1 for x in needs[ci] if x > 0) for ci in range(nc)]
    # critical constraint -> mask of items that would complete it
    critical: dict[int, int] = {}

    def crit_mask(ci: int) -> int:
        # assumes deficit[ci] == 1: the one unmet pattern
        for pi, need in enumerate(needs[ci]):
            if counts[ci][pi] < need:
                if counts[ci][pi] == need - 1:
                    return masks[ci][pi]
                return 0
        return 0

    for ci in range(nc):
        if deficit[ci] == 1:
            cm = crit_mask(ci)
            if cm:
                critical[ci] = cm
        elif deficit[ci] == 0:
            raise ValueError("constraint already satisfied by the empty set")

    def dead_mask() -> int:
        dm = 0
        for cm in critical.values():
            dm |= cm
        return dm

    def add_item(j: int, undo: list):
        for ci, pi in item_entries[j]:
            counts[ci][pi] += 1
            if counts[ci][pi] == needs[ci][pi]:
                deficit[ci] -= 1
            was = critical.get(ci)
            if deficit[ci] == 1:
                cm = crit_mask(ci)
                now = cm if cm else None
            else:
                now = None
            if was != now:
                undo.append((ci, was))
                if now is None:
                    critical.pop(ci, None)
                else:
                    critical[ci] = now

    def undo_item(j: int, undo: list):
        for ci, was in reversed(undo):
            if was is None:
                critical.pop(ci, None)
            else:
                critical[ci] = was
        for ci, pi in item_entries[j]:
            if counts[ci][pi] == needs[ci][pi]:
                deficit[ci] += 1
            counts[ci][pi] -= 1

    # pairwise conflicts (for the greedy-coloring bound): i,j conflict if
    # {i,j} alone completes some constraint — exact for families whose
    # constraints demand at most two columns, a sound subset otherwise
    pairwise_complete = all(sum(n for n in needs[ci]) <= 2 for ci in range(nc))
    if use_coloring is None:
        use_coloring = pairwise_complete
    conflict = [0] * n_items
    if use_coloring:
        for ci in range(nc):
            total = sum(needs[ci])
            if total == 2:
                if len(needs[ci]) == 1:
                    mm = masks[ci][0]
                    items = []
                    m2 = mm
                    while m2:
                        lsb = m2 & -m2
                        items.append(lsb.bit_length() - 1)
                        m2 ^= lsb
                    for a in items:
                        conflict[a] |= mm & ~(1 << a)
                else:
                    m0, m1 = masks[ci][0], masks[ci][1]
                    m2 = m0
                    while m2:
                        lsb = m2 & -m2
                        a = lsb.bit_length() - 1
                        conflict[a] |= m1 & ~(1 << a)
                        m2 ^= lsb
                    m2 = m1
                    while m2:
                        lsb = m2 & -m2
                        a = lsb.bit_length() - 1
                        conflict[a] |= m0 & ~(1 << a)
                        m2 ^= lsb

    best_items: list[int] = list(initial) if initial else []
    best = len(best_items)
    nodes = 0
    timed_out = False
    check_every = 2048

    root_cands = ((1 << n_items) - 1) & ~dead_mask()
    if first_item_allowed is None:
        first_item_allowed = (1 << n_items) - 1

    cur: list[int] = []

    def clique_cover_bound(cands: int) -> int:
        # greedy clique cover of the conflict graph restricted to cands: a
        # selectable set meets each clique at most once, so the number of
        # cliques bounds what remains
        cliques: list[int] = []
        mm = cands
        while mm:
            lsb = mm & -mm
            j = lsb.bit_length() - 1
            mm ^= lsb
            cj = conflict[j]
            for idx in range(len(cliques)):
                if not (cliques[idx] & ~cj):
                    cliques[idx] |= lsb
                    break
            else:
                cliques.append(lsb)
        return len(cliques)

    def dfs(cands: int, first_mask: int):
        # enumerate subsets in ascending item order; cands holds only items
        # that are individually addable in the current state.  first_mask
        # limits which item may open the subset (symmetry pruning at the
        # root); it is full once any item has been included.
        nonlocal best, best_items, nodes, timed_out
        nodes += 1
        if time_budget is not None and nodes % check_every == 0:
            if time.monotonic() - start > time_budget:
                raise _Timeout
        if len(cur) > best:
            best = len(cur)
            best_items = cur.copy()
        if not cands:
            return
        if len(cur) + cands.bit_count() <= best:
            return
        if use_coloring and cands.bit_count() > 4:
            if len(cur) + clique_cover_bound(cands) <= best:
                return
        mm = cands
        full = (1 << n_items) - 1
        while mm:
            if len(cur) + mm.bit_count() <= best:
                return
            lsb = mm & -mm
            j = lsb.bit_length() - 1
            mm ^= lsb
            if not (first_mask >> j) & 1:
                continue
            undo: list = []
            add_item(j, undo)
            cur.append(j)
            nxt = mm & ~dead_mask()
            if use_coloring:
                nxt &= ~conflict[j]
            dfs(nxt, full)
            cur.pop()
            undo_item(j, undo)

    try:
        dfs(root_cands, first_item_allowed)
    except _Timeout:
        timed_out = True

    elapsed = time.monotonic() - start
    return best, sorted(best_items), nodes, timed_out, elapsed


def _search_universe(m: int, opts: SearchOptions) -> list[int]:
    filt = opts.column_filter
    cols = [c for c in range(1 << m) if filt is None or filt(c)]
    cols.sort(key=lambda c: (c.bit_count(), c))
    return cols


def forb_exact(m: int, family, opts: SearchOptions | None = None) -> SearchResult:
    """Exact forb(m, family): the largest simple matrix avoiding the family."""
    if m < 1:
        raise ValueError("m must be >= 1")
    opts = opts or SearchOptions()
    universe = _search_universe(m, opts)
    start = time.monotonic()
    if not family:
        witness = SimpleMatrix(m, tuple(universe))
        return SearchResult(len(universe), witness, "exact", 0, time.monotonic() - start)

    constraints = compile_constraints(family, universe, m)

    # drop columns contained as single-column configurations
    dead0 = 0
    for pairs in constraints:
        if sum(cnt for _, cnt in pairs) == 1:
            dead0 |= pairs[0][0]
    keep = [j for j in range(len(universe)) if not (dead0 >> j) & 1]
    if len(keep) != len(universe):
        remap = {old: new for new, old in enumerate(keep)}
        universe = [universe[j] for j in keep]
        constraints = compile_constraints(family, universe, m)

    n = len(universe)

    initial = None
    if opts.initial_lower_bound is not None:
        seed = opts.initial_lower_bound
        pos = {u: j for j, u in enumerate(universe)}
        initial = [pos[c] for c in seed.cols if c in pos]
        if len(initial) != len(seed.cols):
            raise ValueError("initial_lower_bound uses columns outside the universe")

    first_allowed = None
    if opts.symmetry_pruning and opts.filter_symmetric:
        # first included column: least value within its popcount class
        # (popcount classes are the orbits of row permutations)
        first_allowed = 0
        seen_pc: set[int] = set()
        for j, u in enumerate(universe):
            pc = u.bit_count()
            if pc not in seen_pc:
                seen_pc.add(pc)
                first_allowed |= 1 << j

    best, items, nodes, timed_out, elapsed = _max_subset(
        n,
        constraints,
        time_budget=opts.time_budget,
        initial=initial,
        first_item_allowed=first_allowed,
    )
    witness = SimpleMatrix(m, tuple(universe[j] for j in items))
    if contains_any(family, witness) is not None:
        raise AssertionError("search witness fails avoidance re-check")
    status = "timeout" if timed_out else "exact"
    return SearchResult(best, witness, status, nodes, elapsed)


def forb_restricted(m: int, family, sum_predicate, opts: SearchOptions | None = None) -> SearchResult:
    """forb over matrices whose columns all satisfy the sum predicate."""
    base = opts or SearchOptions()
    outer = base.column_filter
    filt = (lambda c: sum_predicate(c.bit_count()) and (outer is None or outer(c)))
    merged = SearchOptions(
        column_filter=filt,
        filter_symmetric=base.filter_symmetric,
        time_budget=base.time_budget,
        symmetry_pruning=base.symmetry_pruning,
        initial_lower_bound=base.initial_lower_bound,
    )
    return forb_exact(m, family, merged)


# ---------------------------------------------------------------------------
# Turán oracles
# ---------------------------------------------------------------------------


def _normalize_edges(edges, k: int):
    out = []
    seen = set()
    for e in edges:
        t = tuple(sorted(e))
        if len(set(t)) != k:
            raise ValueError(f"edge {e} is not a {k}-set")
        if t in seen:
            raise ValueError(f"repeated edge {e}")
        seen.add(t)
        out.append(t)
    return out


def _ex_subset(m: int, k: int, forbidden_vertices: int, forbidden_edges, time_budget=None):
    items = list(itertools.combinations(range(m), k))
    index = {e: j for j, e in enumerate(items)}
    constraints = []
    seen = set()
    for inj in itertools.permutations(range(m), forbidden_vertices):
        idxs = set()
        ok = True
        for e in forbidden_edges:
            mapped = tuple(sorted(inj[v] for v in e))
            if mapped not in index:
                ok = False
                break
            idxs.add(index[mapped])
        if not ok:
            continue
        key = frozenset(idxs)
        if key in seen:
            continue
        seen.add(key)
        mask = 0
        for j in idxs:
            mask |= 1 << j
        constraints.append(((mask, len(idxs)),))
    best, chosen, nodes, timed_out, elapsed = _max_subset(
        len(items), constraints, time_budget=time_budget
    )
    if timed_out:
        raise TimeoutError("Turán search exceeded its time budget")
    return best, [items[j] for j in chosen]


def ex_graph(m: int, forbidden_edges, n_vertices: int | None = None):
    """Maximum edges of an m-vertex graph with no copy of the forbidden graph.

    ``forbidden_edges``: iterable of 2-element vertex pairs; vertex count is
    inferred (or given explicitly for isolated vertices).
    """
    edges = _normalize_edges(forbidden_edges, 2)
    if not edges:
        raise ValueError("forbidden graph needs at least one edge")
    nv = n_vertices or (max(max(e) for e in edges) + 1)
    if m > 10:
        raise ValueError("ex_graph exact mode supports m <= 10")
    if nv > m:
        return m * (m - 1) // 2, list(itertools.combinations(range(m), 2))
    return _ex_subset(m, 2, nv, edges)


def ex_hypergraph(m: int, k: int, forbidden_edges, n_vertices: int | None = None):
    """Maximum edges of a k-uniform m-vertex hypergraph avoiding the pattern."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if m > 8 or k > 3:
        raise ValueError("ex_hypergraph exact mode supports m <= 8, k <= 3")
    edges = _normalize_edges(forbidden_edges, k)
    if not edges:
        raise ValueError("forbidden hypergraph needs at least one edge")
    nv = n_vertices or (max(max(e) for e in edges) + 1)
    if nv > m:
        all_edges = list(itertools.combinations(range(m), k))
        return len(all_edges), all_edges
    return _ex_subset(m, k, nv, edges)


# ---------------------------------------------------------------------------
# Induction decomposition and slope reporting
# ---------------------------------------------------------------------------


def induction_decompose(A: SimpleMatrix, r: int):
    """Split A at row r into (B, C, D) on m-1 rows.

    With row r deleted, C holds the column values appearing under both a 0
    and a 1 in row r (one copy), B those only under 0, D those only under 1.
    |A| = |B| + 2|C| + |D| and [B C D] is simple.
    """
    if not 0 <= r < A.rows:
        raise ValueError("row index out of range")

    def drop_bit(c: int) -> int:
        low = c & ((1 << r) - 1)
        high = c >> (r + 1)
        return low | (high << r)

    under0: dict[int, None] = {}
    under1: dict[int, None] = {}
    for c in A.cols:
        v = drop_bit(c)
        if (c >> r) & 1:
            under1.setdefault(v)
        else:
            under0.setdefault(v)
    rows = A.rows - 1
    b = tuple(v for v in under0 if v not in under1)
    cc = tuple(v for v in under0 if v in under1)
    d = tuple(v for v in under1 if v not in under0)
    return (SimpleMatrix(rows, b), SimpleMatrix(rows, cc), SimpleMatrix(rows, d))


@dataclass(frozen=True)
class SlopeReport:
    slope: float
    intercept: float
    points: tuple[tuple[int, int], ...]  # (m, value)
    residuals: tuple[float, ...]
    label: str = "finite-m trend, not an asymptotic claim"


def slope_estimate(family, m_range, opts: SearchOptions | None = None) -> SlopeReport:
    """Least-squares slope of log(forb) vs log(m) over the range."""
    ms = list(m_range)
    if len(ms) < 3:
        raise ValueError("slope_estimate needs at least 3 points")
    points = []
    for m in ms:
        res = forb_exact(m, family, opts)
        if res.status != "exact":
            raise TimeoutError(f"forb_exact(m={m}) did not finish exactly")
        points.append((m, res.value))
    xs = [math.log(m) for m, _ in points]
    ys = [math.log(max(v, 1)) for _, v in points]
    fit = statistics.linear_regression(xs, ys)
    residuals = tuple(y - (fit.slope * x + fit.intercept) for x, y in zip(xs, ys))
    return SlopeReport(fit.slope, fit.intercept, tuple(points), residuals)
