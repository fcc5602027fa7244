"""Acceptance gate: ten end-to-end criteria, one test (and one printed
pass/fail line) per criterion.  Every assertion here is exact; trend-only
quantities (growth ratios) are reported, never asserted."""

import math
import random
import time
from math import comb

import pytest

from conftest import random_avoiding_rows_input, random_pair

from forbconfig.analysis import avoiding_rows, q3_stability_decompose
from forbconfig.claims import run_builtin_claims
from forbconfig.constructions import (
    block,
    catalog,
    catalog_names,
    construction_family,
    extremal_construction,
    graph_product,
    product,
)
from forbconfig.containment import contains, contains_any, naive_contains
from forbconfig.matrices import complement
from forbconfig.search import SearchOptions, ex_graph, forb_exact


def _report(n, ok, detail=""):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


def test_criterion_01_containment_oracle_equivalence():
    rng = random.Random(2024)
    start = time.monotonic()
    disagreements = 0
    for _ in range(10_000):
        F, A = random_pair(rng)
        fast = contains(F, A)
        slow = naive_contains(F, A)
        if (fast is None) != (slow is None):
            disagreements += 1
        elif fast is not None and not fast.verify(F, A):
            disagreements += 1
    elapsed = time.monotonic() - start
    _report(1, disagreements == 0 and elapsed < 60,
            f"10000 pairs, {disagreements} disagreements, {elapsed:.1f}s")


def test_criterion_02_complement_duality_catalog():
    start = time.monotonic()
    bad = []
    for name in catalog_names():
        F = catalog(name).matrix
        for m in (4, 5):
            a = forb_exact(m, [F])
            b = forb_exact(m, [complement(F)])
            if not (a.status == b.status == "exact" and a.value == b.value):
                bad.append((name, m, a.value, b.value))
    elapsed = time.monotonic() - start
    _report(2, not bad and elapsed < 600,
            f"{len(catalog_names())} configurations, m=4,5, {elapsed:.1f}s"
            + (f", mismatches {bad}" if bad else ""))


def test_criterion_03_q9_exact_law():
    got = {}
    ok = True
    for m in (3, 4, 5):
        res = forb_exact(m, [catalog("Q9").config])
        got[m] = res.value
        ok = ok and res.status == "exact" and res.value == comb(m, 2) + 2 * m - 1
    _report(3, ok, f"forb(m,Q9)={got}, formula C(m,2)+2m-1")


def test_criterion_04_q9_ones_exact_values():
    start = time.monotonic()
    r6 = forb_exact(6, [catalog("Q9").config, block("ones", 3, 1)])
    seed = extremal_construction("q9_smallt", 8, k=4)
    r8 = forb_exact(
        8,
        [catalog("Q9").config, block("ones", 4, 1)],
        SearchOptions(initial_lower_bound=seed),
    )
    elapsed = time.monotonic() - start
    ok = (r6.status == r8.status == "exact" and r6.value == 12 and r8.value == 22
          and elapsed < 1800)
    _report(4, ok, f"forb(6)={r6.value}, forb(8)={r8.value}, {elapsed:.1f}s")


def test_criterion_05_f9_pair_laws_and_constructions():
    start = time.monotonic()
    m = 7  # largest m completing comfortably inside the budget
    r1 = forb_exact(m, [catalog("131").config, catalog("F9").config])
    r2 = forb_exact(m, [catalog("122").config, catalog("F9").config])
    ok = (r1.status == r2.status == "exact"
          and r1.value == m + 2 and r2.value == m + 3)
    # lower-bound constructions at m=100, self-verified avoidance included
    sizes_ok = True
    for name, kwargs, want in [
        ("c3", {}, 102),
        ("f9_ell", {"k": 2, "ell": 2}, 103),
    ]:
        A = extremal_construction(name, 100, **kwargs)
        family = construction_family(name, 100, **kwargs)
        sizes_ok = sizes_ok and len(A.cols) == want and contains_any(family, A) is None
    elapsed = time.monotonic() - start
    _report(5, ok and sizes_ok and elapsed < 600,
            f"m={m}: {r1.value}=m+2, {r2.value}=m+3; m=100 constructions OK; "
            f"{elapsed:.1f}s")


def test_criterion_06_turan_bridge():
    k22 = [(0, 2), (0, 3), (1, 2), (1, 3)]
    family = [catalog("131").config, catalog("F11").config]
    results = {}
    ok = True
    for m in range(4, 8):
        ex_value, _ = ex_graph(m, k22)
        res = forb_exact(m, family)
        results[m] = (ex_value, res.value)
        ok = ok and res.status == "exact" and res.value == 1 + m + ex_value
    _report(6, ok, f"(ex, forb) by m: {results}; forb = 1+m+ex pointwise")


def test_criterion_07_claims_suite():
    start = time.monotonic()
    results = run_builtin_claims(time_budget=240.0)
    elapsed = time.monotonic() - start
    failed = [r.claim_id for r in results if r.status == "FAIL"]
    skipped = [r.claim_id for r in results if r.status.startswith("SKIPPED")]
    # only the deliberately expensive formula entry may be skipped
    ok = not failed and set(skipped) <= {"form:141F9"} and elapsed < 300
    _report(7, ok,
            f"{len(results)} claims, {len(failed)} failed, skipped={skipped}, "
            f"{elapsed:.1f}s")


def test_criterion_08_avoiding_rows_property_suite():
    rng = random.Random(77)
    checked = 0
    failures = 0
    while checked < 1000:
        t = rng.choice((2, 3, 4))
        B = random_avoiding_rows_input(rng, t)
        if B is None:
            continue
        checked += 1
        try:
            out = avoiding_rows(B, t)
        except AssertionError:
            failures += 1
            continue
        if not out.verify(B) or len(out.rows) < (2.0 ** (2 - t)) * len(B.cols):
            failures += 1
    _report(8, failures == 0, f"{checked} valid inputs, {failures} failures")


def _stability_conditions_hold(A, t, dec):
    m = A.rows
    if len(dec.layers) > int(math.log2(m)) + 1:
        return False
    for prev, nxt in zip(dec.layers, dec.layers[1:]):
        if nxt.k > prev.k // 2:
            return False
    for layer in dec.layers:
        rmask = sum(1 << r for r in layer.identity_rows)
        for gr, gcols in layer.groups:
            for j in gcols:
                if A.cols[j] & rmask != 1 << gr:
                    return False
            if not gcols:
                continue
            sparse = []
            for r in layer.support_rows:
                if r in layer.identity_rows:
                    continue
                ones = sum((A.cols[j] >> r) & 1 for j in gcols)
                zeros = len(gcols) - ones
                if ones >= 1 and zeros >= t:
                    return False
                if ones > 0 and 0 < zeros < t:
                    sparse.append(r)
            for j in gcols:
                if not any(not (A.cols[j] >> r) & 1 for r in sparse):
                    return False
    return True


def test_criterion_09_stability_decomposition_suite():
    rng = random.Random(99)
    ratios = []
    ok = True
    for m in (12, 16):
        half = m // 2
        left = block("I", half).to_simple()
        right = complement(block("I", half)).to_simple()
        cases = [[(i, j) for i in range(half) for j in range(half)]]  # full
        for _ in range(5):
            cases.append([
                (i, j)
                for i in range(half)
                for j in range(half)
                if rng.random() < 0.75
            ])
        for edges in cases:
            A = graph_product(left, right, edges)
            dec = q3_stability_decompose(A, 2)
            ok = ok and _stability_conditions_hold(A, 2, dec)
            ratios.append(round(dec.ratio, 3))
    # the growth-rate ratio (condition 4) is reported only, never asserted
    _report(9, ok, f"m=12,16 graph products; conditions 1-3 hold; "
            f"ratios reported: {ratios}")


def test_criterion_10_counterexample_and_2m_law():
    ok = True
    for m in range(5, 21):
        A = extremal_construction("sec5_counterexample", m)  # self-verifying
        family = construction_family("sec5_counterexample", m)
        ok = ok and len(A.cols) == 2 * m + 1 and contains_any(family, A) is None
    res = forb_exact(5, [catalog("131").config, catalog("Q9").config])
    ok = ok and res.status == "exact" and res.value == 10
    _report(10, ok, f"2m+1 columns for m=5..20; forb(5,{{131,Q9}})={res.value}=2m")
