"""Command-line interface.

Subcommands: contain, forb, construct, verify, table3, ex, decompose,
classify, slope.  Exit codes: 0 success/contained, 1 negative-but-valid
(avoided, claim failure, golden mismatch), 2 usage error, 3 internal
invariant violation.

The environment variable FORBCONFIG_TIME_BUDGET (seconds) sets the default
search time budget when --budget is not given.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import os
import re
import sys
from pathlib import Path

from .analysis import Q3ContainedError, q3_stability_decompose, q9_classify
from .claims import builtin_claims, run_claims
from .constructions import (
    _BUILDERS,
    block,
    c4_free_bipartite_edges,
    catalog,
    extremal_construction,
    graph_product,
    product,
)
from .containment import Certificate, contains
from .matrices import SimpleMatrix, format_matrix_text, simplify
from .search import (
    SearchOptions,
    ex_graph,
    ex_hypergraph,
    forb_exact,
    induction_decompose,
    slope_estimate,
)
from .specs import SpecError, normalize_spec, parse_family, parse_matrix_spec

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


def _default_budget() -> float | None:
    raw = os.environ.get("FORBCONFIG_TIME_BUDGET")
    if not raw:
        return None
    try:
        return float(raw)
    except ValueError:
        raise SpecError(f"FORBCONFIG_TIME_BUDGET must be a number, got {raw!r}")


def _parse_m_range(text: str) -> list[int]:
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text.strip())
    if not m:
        raise SpecError(f"bad m range {text!r}; expected N or N..M")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo or lo < 1:
        raise SpecError(f"bad m range {text!r}")
    return list(range(lo, hi + 1))


def _opts(args) -> SearchOptions:
    budget = getattr(args, "budget", None)
    if budget is None:
        budget = _default_budget()
    return SearchOptions(time_budget=budget)


# ---------------------------------------------------------------------------
# contain
# ---------------------------------------------------------------------------


def cmd_contain(args) -> int:
    F = parse_matrix_spec(args.f_spec)
    A = parse_matrix_spec(args.a_spec)
    cert = contains(F, A)
    if cert is not None:
        if not cert.verify(F, A):
            raise AssertionError("containment witness failed re-verification")
        print("CONTAINED")
        print(cert.to_text(), end="")
        return EXIT_OK
    print("AVOIDED")
    print(f"checked: all row/column injections of {normalize_spec(args.f_spec)} "
          f"into {normalize_spec(args.a_spec)}")
    return EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# forb (+ goldens)
# ---------------------------------------------------------------------------


def _forb_rows(args):
    family_text = args.family
    family = parse_family(family_text)
    spec_norm = ",".join(normalize_spec(s) for s in _split_family_text(family_text))
    opts = _opts(args)
    rows = []
    for m in _parse_m_range(args.m):
        res = forb_exact(m, family, opts)
        rows.append((spec_norm, m, res.value, res.status, res.witness))
    return rows


def _split_family_text(text: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def _witness_filename(spec: str, m: int) -> str:
    safe = re.sub(r"[^A-Za-z0-9]+", "_", spec).strip("_")
    return f"{safe}_m{m}.txt"


def cmd_forb(args) -> int:
    rows = _forb_rows(args)
    witness_dir = Path(args.witness_dir) if args.witness_dir else None
    out_rows = []
    for spec, m, value, status, witness in rows:
        wfile = ""
        if witness_dir is not None:
            witness_dir.mkdir(parents=True, exist_ok=True)
            wfile = _witness_filename(spec, m)
            (witness_dir / wfile).write_text(format_matrix_text(witness))
        out_rows.append((spec, m, value, status, wfile))

    if args.goldens:
        return _handle_goldens(args, out_rows)

    if args.format == "csv":
        w = csv.writer(sys.stdout)
        w.writerow(["family_spec", "m", "value", "status", "witness_file"])
        w.writerows(out_rows)
    else:
        print("| m | value | status | witness |")
        print("|---|-------|--------|---------|")
        for spec, m, value, status, wfile in out_rows:
            print(f"| {m} | {value} | {status} | {wfile} |")
    return EXIT_OK


def _handle_goldens(args, out_rows) -> int:
    path = Path(args.goldens)
    if args.regen or not path.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
        exists = path.exists()
        old = {}
        if exists:
            with path.open() as fh:
                for rec in csv.DictReader(fh):
                    old[(rec["family_spec"], int(rec["m"]))] = rec
        for spec, m, value, status, wfile in out_rows:
            old[(spec, m)] = {
                "family_spec": spec, "m": str(m), "value": str(value),
                "status": status, "witness_file": wfile,
            }
        with path.open("w", newline="") as fh:
            w = csv.DictWriter(fh, ["family_spec", "m", "value", "status", "witness_file"])
            w.writeheader()
            for key in sorted(old, key=lambda k: (k[0], k[1])):
                w.writerow(old[key])
        print(f"goldens written: {path} ({len(old)} rows)")
        return EXIT_OK

    golden = {}
    with path.open() as fh:
        for rec in csv.DictReader(fh):
            golden[(rec["family_spec"], int(rec["m"]))] = rec
    bad = 0
    for spec, m, value, status, _ in out_rows:
        rec = golden.get((spec, m))
        if rec is None:
            print(f"MISSING  {spec} m={m}: no golden row")
            bad += 1
        elif int(rec["value"]) != value or rec["status"] != status:
            print(f"MISMATCH {spec} m={m}: got {value}/{status}, "
                  f"golden {rec['value']}/{rec['status']}")
            bad += 1
        else:
            print(f"OK       {spec} m={m}: {value} ({status})")
    return EXIT_NEGATIVE if bad else EXIT_OK


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------


def cmd_construct(args) -> int:
    params = {}
    if args.params:
        for piece in args.params.split(","):
            k, _, v = piece.partition("=")
            if not v:
                raise SpecError(f"bad --params piece {piece!r}; expected key=value")
            params[k.strip()] = int(v)
    try:
        A = extremal_construction(args.name, args.m_value, **params)
    except ValueError as exc:
        raise SpecError(str(exc)) from exc
    print(f"# {args.name} m={args.m_value} columns={len(A.cols)}")
    print(format_matrix_text(A), end="")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    claims = builtin_claims()
    if args.claims_file:
        wanted = [
            ln.strip() for ln in Path(args.claims_file).read_text().splitlines()
            if ln.strip() and not ln.strip().startswith("#")
        ]
        known = {c.claim_id for c in claims}
        unknown = [w for w in wanted if w not in known]
        if unknown:
            raise SpecError(f"unknown claim ids: {', '.join(unknown)}")
        claims = [c for c in claims if c.claim_id in wanted]
    budget = args.budget if args.budget is not None else (_default_budget() or 120.0)
    results = run_claims(claims, time_budget=budget)
    failed = 0
    for res in results:
        print(res.line())
        if res.status == "FAIL":
            failed += 1
    print(f"{len(results)} claims: "
          f"{sum(r.status == 'PASS' for r in results)} pass, {failed} fail, "
          f"{sum(r.status.startswith('SKIPPED') for r in results)} skipped")
    return EXIT_NEGATIVE if failed else EXIT_OK


# ---------------------------------------------------------------------------
# table3
# ---------------------------------------------------------------------------

_T3_QROWS = ["131", "122", "I3", "Q3", "Q8", "Q9"]
_T3_CROWS = ["141", "F9", "F10", "F11", "F12", "F13"]
_T3_COLS = ["141", "F9", "F10", "F11", "F12", "F13",
            "041", "F9c", "F10c", "F12c", "F14", "F15"]

# claimed asymptotic orders; "exact:" prefix marks closed forms
_T3_CLAIMS: dict[tuple[str, str], str] = {}


def _t3_fill():
    def put(r, c, v):
        _T3_CLAIMS[(r, c)] = v

    for r in ("131", "122"):
        ex = "exact:m+2" if r == "131" else "exact:m+3"
        vals = {"141": "Theta(m^2)", "F9": ex, "F10": "Theta(1)",
                "F11": "Theta(m^3/2)", "F12": "Theta(m^2)", "F13": "Theta(m^2)",
                "041": "Theta(1)", "F9c": "Theta(m^2)", "F10c": "Theta(m^2)",
                "F12c": "Theta(m^2)", "F14": "Theta(m^2)", "F15": "Theta(m^2)"}
        for c, v in vals.items():
            put(r, c, v)
    for c in _T3_COLS:
        put("I3", c, "Theta(1)" if c == "141" else "Theta(m^2)")
    q3 = {"141": "Theta(m)", "F9": "Theta(m)", "F10": "Theta(m)",
          "F11": "Theta(m^3/2)", "F12": "Theta(m^2)", "F13": "Theta(m^2)",
          "041": "Theta(m)", "F9c": "Theta(m)", "F10c": "Theta(m)",
          "F12c": "Theta(m^2)", "F14": "Theta(m^2)", "F15": "Theta(m^2)"}
    for c, v in q3.items():
        put("Q3", c, v)
    for c in _T3_COLS:
        if c == "F14":
            put("Q8", c, "OPEN")
        elif c in ("141", "041"):
            put("Q8", c, "Theta(m)")
        else:
            put("Q8", c, "Theta(m^2)")
    for c in _T3_COLS:
        if c in ("141", "041"):
            put("Q9", c, "exact:3m-2")
        else:
            put("Q9", c, "Theta(m^2)")
    cubic = {
        ("141", "F9"): "exact:m+5", ("141", "F10"): "Theta(1)",
        ("141", "F11"): "Theta(m^3/2)", ("141", "F12"): "Theta(m^3)",
        ("141", "F13"): "Theta(m^2)", ("141", "041"): "Theta(1)",
        ("141", "F9c"): "Theta(m^3)", ("141", "F10c"): "Theta(m^3)",
        ("141", "F12c"): "Theta(m^3)",
        ("F9", "F10"): "Theta(m^3)", ("F9", "F11"): "Theta(m^2)",
        ("F9", "F12"): "Theta(m^3)", ("F9", "F13"): "Theta(m^2)",
        ("F9", "041"): "Theta(m^3)", ("F9", "F9c"): "Theta(m^2)",
        ("F9", "F10c"): "Theta(m^2)", ("F9", "F12c"): "Theta(m^3)",
        ("F10", "F11"): "Theta(m^2)", ("F10", "F12"): "Theta(m^3)",
        ("F10", "F13"): "Theta(m^2)", ("F10", "041"): "Theta(m^3)",
        ("F10", "F9c"): "Theta(m^2)", ("F10", "F10c"): "Theta(m^2)",
        ("F10", "F12c"): "Theta(m^3)",
        ("F11", "F12"): "Theta(m^3)", ("F11", "F13"): "Theta(m^3)",
        ("F11", "041"): "Theta(m^3/2)", ("F11", "F9c"): "Theta(m^2)",
        ("F11", "F10c"): "Theta(m^2)", ("F11", "F12c"): "Theta(m^3)",
        ("F12", "F13"): "Theta(m^3)", ("F12", "041"): "Theta(m^3)",
        ("F12", "F9c"): "Theta(m^3)", ("F12", "F10c"): "Theta(m^3)",
        ("F12", "F12c"): "Theta(m^3)",
        ("F13", "041"): "Theta(m^2)", ("F13", "F9c"): "Theta(m^2)",
        ("F13", "F10c"): "Theta(m^2)", ("F13", "F12c"): "Theta(m^3)",
    }
    _T3_CLAIMS.update(cubic)


_t3_fill()


def _shared_product_evidence(F, G, order: str) -> str:
    """Largest verified p-fold product avoiding both configurations."""
    p = 3 if order == "Theta(m^3)" else 2
    for names in itertools.combinations_with_replacement(("I", "Ic", "T"), p):
        ok = True
        cols = 0
        for s in (3, 4):
            A = product(*(block(n, s) for n in names))
            if contains(F, A) is not None or contains(G, A) is not None:
                ok = False
                break
            cols = len(A.cols)
        if ok:
            return f"{'x'.join(names)} ({cols} cols @4)"
    return "no shared product found"


def _graph_product_evidence() -> str:
    sizes = []
    for m in (12, 16):
        edges = c4_free_bipartite_edges(m // 2, m // 2)
        A = graph_product(block("I", m // 2), block("Ic", m // 2), edges)
        sizes.append(f"m={m}:{len(A.cols)}")
    return "graph_product " + " ".join(sizes)


def cmd_table3(args) -> int:
    m_values = [int(x) for x in args.m_values.split(",")]
    cell_budget = args.budget if args.budget is not None else 5.0
    print("| pair | claimed | evidence |")
    print("|------|---------|----------|")
    for r in _T3_QROWS + _T3_CROWS:
        for c in _T3_COLS:
            claim = _T3_CLAIMS.get((r, c))
            if claim is None:
                continue
            F = catalog(r).config
            G = catalog(c).config
            if claim == "OPEN":
                print(f"| ({r},{c}) | OPEN | question left open |")
                continue
            vals = []
            for m in m_values:
                res = forb_exact(m, [F, G], SearchOptions(time_budget=cell_budget))
                vals.append(f"forb({m})={res.value}" if res.status == "exact"
                            else f"forb({m})=t/o")
            evidence = " ".join(vals)
            if claim.startswith("exact:"):
                label = claim[6:]
            else:
                label = claim + " (trend only)"
                if claim in ("Theta(m^2)", "Theta(m^3)"):
                    evidence += "; " + _shared_product_evidence(F, G, claim)
                elif claim == "Theta(m^3/2)":
                    evidence += "; " + _graph_product_evidence()
            print(f"| ({r},{c}) | {label} | {evidence} |")
    return EXIT_OK


# ---------------------------------------------------------------------------
# ex
# ---------------------------------------------------------------------------


def _parse_forbidden_graph(text: str):
    m = re.fullmatch(r"K\((\d+(?:,\d+)*)\)|K(\d+)", text.strip())
    if not m:
        raise SpecError(f"bad forbidden graph {text!r}; expected Kn or K(s1,s2[,s3])")
    if m.group(2):
        n = int(m.group(2))
        return 2, [(i, j) for i in range(n) for j in range(i + 1, n)]
    parts = [int(x) for x in m.group(1).split(",")]
    if len(parts) == 1:
        n = parts[0]
        return 2, [(i, j) for i in range(n) for j in range(i + 1, n)]
    offs = [0]
    for p in parts:
        offs.append(offs[-1] + p)
    k = len(parts)
    groups = [range(offs[i], offs[i + 1]) for i in range(k)]
    return k, [tuple(v) for v in itertools.product(*groups)]


def cmd_ex(args) -> int:
    k, edges = _parse_forbidden_graph(args.forbid)
    if args.uniformity is not None and args.uniformity != k:
        raise SpecError(f"--k {args.uniformity} does not match forbidden pattern arity {k}")
    print("| m | ex | edges |")
    print("|---|----|-------|")
    for m in _parse_m_range(args.m):
        if k == 2:
            value, witness = ex_graph(m, edges)
        else:
            value, witness = ex_hypergraph(m, k, edges)
        shown = " ".join("-".join(map(str, e)) for e in witness[:12])
        if len(witness) > 12:
            shown += " ..."
        print(f"| {m} | {value} | {shown} |")
    return EXIT_OK


# ---------------------------------------------------------------------------
# decompose / classify / slope
# ---------------------------------------------------------------------------


def _simple_from_spec(spec: str) -> SimpleMatrix:
    A = parse_matrix_spec(spec)
    if not isinstance(A, SimpleMatrix):
        A = simplify(A)
    return A


def cmd_decompose(args) -> int:
    A = _simple_from_spec(args.a_spec)
    if args.mode == "induction":
        if args.row is None:
            raise SpecError("decompose induction requires --row")
        B, C, D = induction_decompose(A, args.row)
        print(f"# induction at row {args.row}: |A|={len(A.cols)} = "
              f"|B|+2|C|+|D| = {len(B.cols)}+2*{len(C.cols)}+{len(D.cols)}")
        for name, M in (("B", B), ("C", C), ("D", D)):
            print(f"[{name}]")
            print(format_matrix_text(M), end="")
        return EXIT_OK
    try:
        dec = q3_stability_decompose(A, args.t)
    except Q3ContainedError as exc:
        print("CONTAINS-Q3")
        print(exc.certificate.to_text(), end="")
        return EXIT_NEGATIVE
    print(dec.report(), end="")
    return EXIT_OK


def cmd_classify(args) -> int:
    A = _simple_from_spec(args.a_spec)
    result = q9_classify(A, args.t)
    if isinstance(result, Certificate):
        print("CONTAINS-Q9")
        print(result.to_text(), end="")
        return EXIT_NEGATIVE
    print(f"type={result.type} t={result.t}")
    print(f"A_rows={list(result.A_rows)}")
    print(f"B_rows={list(result.B_rows)}")
    print(f"C_rows={list(result.C_rows)}")
    print(f"t_columns={list(result.tcol_indices)}")
    return EXIT_OK


def cmd_slope(args) -> int:
    family = parse_family(args.family)
    ms = _parse_m_range(args.m)
    report = slope_estimate(family, ms, _opts(args))
    pts = " ".join(f"({m},{v})" for m, v in report.points)
    print(f"slope={report.slope:.3f} intercept={report.intercept:.3f} ({report.label})")
    print(f"points: {pts}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser / main
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="forbconfig",
        description="Exact computation and verification for forbidden "
                    "configurations of (0,1)-matrices.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("contain", help="decide whether F occurs in A as a configuration")
    p.add_argument("f_spec")
    p.add_argument("a_spec")
    p.set_defaults(fn=cmd_contain)

    p = sub.add_parser("forb", help="exact forb values for a family")
    p.add_argument("--family", required=True)
    p.add_argument("--m", required=True, help="N or N..M")
    p.add_argument("--format", choices=("md", "csv"), default="md")
    p.add_argument("--budget", type=float)
    p.add_argument("--witness-dir")
    p.add_argument("--goldens", help="golden CSV to check against (or write with --regen)")
    p.add_argument("--regen", action="store_true")
    p.set_defaults(fn=cmd_forb)

    p = sub.add_parser("construct", help="build a named extremal construction")
    p.add_argument("name", choices=sorted(_BUILDERS))
    p.add_argument("--m", dest="m_value", type=int, required=True)
    p.add_argument("--params", help="comma-separated key=value, e.g. k=2,ell=3")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("verify", help="run the built-in claim suite")
    p.add_argument("--claims-file", help="file with one claim id per line")
    p.add_argument("--budget", type=float)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("table3", help="pairwise results table with desk-scale evidence")
    p.add_argument("--m-values", default="4,5")
    p.add_argument("--budget", type=float, help="per-cell search budget (seconds)")
    p.set_defaults(fn=cmd_table3)

    p = sub.add_parser("ex", help="exact Turan numbers for graphs/3-uniform hypergraphs")
    p.add_argument("--forbid", required=True, help="Kn, K(a,b) or K(a,b,c)")
    p.add_argument("--m", required=True)
    p.add_argument("--k", dest="uniformity", type=int)
    p.set_defaults(fn=cmd_ex)

    p = sub.add_parser("decompose", help="induction split or layered stability decomposition")
    p.add_argument("mode", choices=("induction", "stability"))
    p.add_argument("a_spec")
    p.add_argument("--row", type=int)
    p.add_argument("--t", type=int, default=2)
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("classify", help="classify the t-columns of a Q9-avoiding matrix")
    p.add_argument("a_spec")
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("slope", help="log-log growth trend of forb over an m range")
    p.add_argument("--family", required=True)
    p.add_argument("--m", required=True)
    p.add_argument("--budget", type=float)
    p.set_defaults(fn=cmd_slope)

    return ap


def main(argv=None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
