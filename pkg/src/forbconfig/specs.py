"""Text grammar for naming matrices and families on the command line.

Grammar
-------
  spec    := factor (" x " factor)*
  factor  := "I(k)" | "Ic(k)" | "T(k)" | "1(k,l)" | "0(k,l)" | "b01"
           | "Q3(t=N)" | "Q3(N)" | catalog name (F9, Q9, 131, ...)
           | "lit:@path"  (matrix text file: lines of 0/1 characters)
  family  := spec ("," spec)*   (commas inside parentheses do not split)

A multi-factor spec denotes the product matrix with the first factor in the
top rows.
"""

from __future__ import annotations

import re
from pathlib import Path

from .constructions import b01, block, catalog, catalog_names, product, q3t
from .matrices import Matrix, parse_matrix_text

__all__ = ["SpecError", "parse_matrix_spec", "parse_family", "normalize_spec"]

_GRAMMAR_HINT = (
    "expected: I(k), Ic(k), T(k), 1(k,l), 0(k,l), b01, Q3(t=N), "
    "a catalog name (" + ", ".join(catalog_names()[:6]) + ", ...), or lit:@path; "
    "factors joined with ' x ', family members with ','"
)


class SpecError(ValueError):
    pass


def _parse_factor(tok: str) -> tuple[Matrix, str]:
    tok = tok.strip()
    if not tok:
        raise SpecError(f"empty factor in spec ({_GRAMMAR_HINT})")
    if tok == "b01":
        return b01(), "b01"
    if tok.startswith("lit:@"):
        path = Path(tok[5:])
        try:
            text = path.read_text()
        except OSError as exc:
            raise SpecError(f"cannot read matrix literal {path}: {exc}") from exc
        return parse_matrix_text(text), tok
    m = re.fullmatch(r"(I|Ic|T)\((\d+)\)", tok)
    if m:
        return block(m.group(1), int(m.group(2))), f"{m.group(1)}({int(m.group(2))})"
    m = re.fullmatch(r"([01])\((\d+),(\d+)\)", tok)
    if m:
        kind = "ones" if m.group(1) == "1" else "zeros"
        k, l = int(m.group(2)), int(m.group(3))
        return block(kind, k, l), f"{m.group(1)}({k},{l})"
    m = re.fullmatch(r"Q3\((?:t=)?(\d+)\)", tok)
    if m:
        t = int(m.group(1))
        return q3t(t).to_matrix(), f"Q3(t={t})"
    if tok in catalog_names():
        return catalog(tok).matrix, tok
    raise SpecError(f"cannot parse factor {tok!r} ({_GRAMMAR_HINT})")


def parse_matrix_spec(spec: str) -> Matrix:
    """Matrix denoted by a spec string (product of its factors)."""
    matrix, _ = _parse_with_text(spec)
    return matrix


def normalize_spec(spec: str) -> str:
    """Canonical text for a spec; parse(normalize(s)) == parse(s)."""
    _, text = _parse_with_text(spec)
    return text


def _parse_with_text(spec: str) -> tuple[Matrix, str]:
    parts = re.split(r"\s+x\s+", spec.strip())
    parsed = [_parse_factor(p) for p in parts]
    texts = [t for _, t in parsed]
    if len(parsed) == 1:
        return parsed[0][0], texts[0]
    return product(*(mtx for mtx, _ in parsed)), " x ".join(texts)


def parse_family(text: str) -> list[Matrix]:
    """Comma-separated family of specs (commas inside parentheses kept)."""
    members = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            members.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    members.append("".join(cur))
    if any(not s.strip() for s in members):
        raise SpecError(f"empty family member in {text!r} ({_GRAMMAR_HINT})")
    return [parse_matrix_spec(s) for s in members]
