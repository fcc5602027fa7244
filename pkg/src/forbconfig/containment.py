"""Exact configuration containment: decide F ≺ A with witnesses.

F ≺ A means some submatrix of A is a row and column permutation of F.
Equivalently there is an injection of F's rows into A's rows and of F's
columns into A's columns matching entrywise.

Key observation used by :func:`contains`: once the row injection is fixed,
every A-column restricts to exactly one pattern, so F's column demands are
matched per-pattern by simple counting (the pattern classes are disjoint —
no bipartite matching is needed).  A dual strategy fixes the column
injection and counts row patterns instead; it is chosen when A has many
rows but few columns (e.g. verifying tall constructions).
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .matrices import Configuration, Matrix

__all__ = [
    "Certificate",
    "contains",
    "contains_any",
    "contains_incremental",
    "naive_contains",
]


@dataclass(frozen=True)
class Certificate:
    """A containment witness or an avoidance attestation.

    For ``kind == "containment"``, ``row_map[i]`` / ``col_map[j]`` give the
    A-row / A-column that F-row i / F-column j maps to.
    """

    kind: str
    row_map: tuple[int, ...] | None = None
    col_map: tuple[int, ...] | None = None
    checked_universe: str | None = None

    def verify(self, F: Matrix, A: Matrix) -> bool:
        """Entrywise re-check of a containment certificate."""
        if self.kind != "containment":
            return False
        F = _as_matrix(F)
        A = _as_matrix(A)
        rm, cm = self.row_map, self.col_map
        if rm is None or cm is None:
            return False
        if len(rm) != F.rows or len(cm) != len(F.cols):
            return False
        if len(set(rm)) != len(rm) or len(set(cm)) != len(cm):
            return False
        for i in range(F.rows):
            for j in range(len(F.cols)):
                if F.entry(i, j) != A.entry(rm[i], cm[j]):
                    return False
        return True

    def to_text(self) -> str:
        if self.kind == "containment":
            rows = " ".join(f"{i}->{r}" for i, r in enumerate(self.row_map))
            cols = " ".join(f"{j}->{c}" for j, c in enumerate(self.col_map))
            return f"row_map: {rows}\ncol_map: {cols}\n"
        note = self.checked_universe or "exhaustive search"
        return f"avoidance: {note}\n"


def _as_matrix(F) -> Matrix:
    if isinstance(F, Configuration):
        return F.to_matrix()
    return F


def _falling(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
        if out > 1 << 60:
            return out
    return out


def contains(F, A) -> Certificate | None:
    """Return a containment Certificate if F ≺ A, else None.

    Deterministic: a fixed search order yields a reproducible witness.
    """
    F = _as_matrix(F)
    A = _as_matrix(A)
    kF, nF = F.rows, len(F.cols)
    mA, nA = A.rows, len(A.cols)
    if kF > mA or nF > nA:
        return None
    if nF == 0:
        return Certificate("containment", tuple(range(kF)), ())
    if kF == 0:
        return Certificate("containment", (), tuple(range(nF)))
    if _falling(mA, kF) <= _falling(nA, nF):
        return _contains_row_first(F, A)
    return _contains_col_first(F, A)


def _iter_bits(mask: int):
    while mask:
        lsb = mask & -mask
        yield lsb.bit_length() - 1
        mask ^= lsb


def _contains_row_first(F: Matrix, A: Matrix) -> Certificate | None:
    kF, nF = F.rows, len(F.cols)
    mA, nA = A.rows, len(A.cols)

    frowsum = [F.row_sum(i) for i in range(kF)]
    frowvec = [tuple((c >> i) & 1 for c in F.cols) for i in range(kF)]
    forder = sorted(range(kF), key=lambda i: (-frowsum[i], frowvec[i]))
    # fpat[j]: F column j re-read in forder (bit d = entry at forder[d])
    fpat = []
    for c in F.cols:
        v = 0
        for d, i in enumerate(forder):
            if (c >> i) & 1:
                v |= 1 << d
        fpat.append(v)
    # equal adjacent F rows (in forder): force increasing A-row indices
    eq_prev = [False] * kF
    for d in range(1, kF):
        eq_prev[d] = frowvec[forder[d]] == frowvec[forder[d - 1]]
    # demanded per-pattern counts after d rows are fixed
    demands = []
    for d in range(kF + 1):
        mask = (1 << d) - 1
        demands.append(Counter(p & mask for p in fpat))

    # row_word[r]: bitmask over A-column indices with a 1 in row r
    row_word = [0] * mA
    for j, c in enumerate(A.cols):
        for r in _iter_bits(c):
            row_word[r] |= 1 << j

    chosen: list[int] = []
    all_cols_mask = (1 << nA) - 1

    # classes: partial F-row-pattern -> bitmask of matching A-column indices
    def rec(d: int, classes: dict[int, int]) -> bool:
        if d == kF:
            return True
        need = demands[d + 1]
        lo = chosen[-1] + 1 if eq_prev[d] and chosen else 0
        for r in range(lo, mA):
            if r in chosen:
                continue
            rw = row_word[r]
            split: dict[int, int] = {}
            for p, mask in classes.items():
                z = mask & ~rw
                o = mask & rw
                if z:
                    split[p] = z
                if o:
                    split[p | (1 << d)] = o
            if all(split.get(p, 0).bit_count() >= cnt for p, cnt in need.items()):
                chosen.append(r)
                if rec(d + 1, split):
                    return True
                chosen.pop()
        return False

    if not rec(0, {0: all_cols_mask}):
        return None

    # greedy deterministic column assignment within disjoint pattern classes
    classes_full: dict[int, list[int]] = {}
    for j in range(nA):
        c = A.cols[j]
        v = 0
        for d, r in enumerate(chosen):
            if (c >> r) & 1:
                v |= 1 << d
        classes_full.setdefault(v, []).append(j)
    col_map = [-1] * nF
    cursor: dict[int, int] = {}
    for j in range(nF):
        p = fpat[j]
        k = cursor.get(p, 0)
        col_map[j] = classes_full[p][k]
        cursor[p] = k + 1
    row_map = [-1] * kF
    for d, i in enumerate(forder):
        row_map[i] = chosen[d]
    return Certificate("containment", tuple(row_map), tuple(col_map))


def _contains_col_first(F: Matrix, A: Matrix) -> Certificate | None:
    kF, nF = F.rows, len(F.cols)
    mA, nA = A.rows, len(A.cols)

    fcolsum = [c.bit_count() for c in F.cols]
    corder = sorted(range(nF), key=lambda j: (-fcolsum[j], F.cols[j]))
    eq_prev = [False] * nF
    for d in range(1, nF):
        eq_prev[d] = F.cols[corder[d]] == F.cols[corder[d - 1]]
    # frpat[i]: F row i re-read across corder (bit d = entry in col corder[d])
    frpat = []
    for i in range(kF):
        v = 0
        for d, j in enumerate(corder):
            if (F.cols[j] >> i) & 1:
                v |= 1 << d
        frpat.append(v)
    demands = []
    for d in range(nF + 1):
        mask = (1 << d) - 1
        demands.append(Counter(p & mask for p in frpat))

    chosen: list[int] = []
    all_rows_mask = (1 << mA) - 1

    # classes: partial row-pattern -> bitmask of matching A-row indices;
    # domination per class is necessary at every depth, sufficient in full
    def rec(d: int, classes: dict[int, int]) -> bool:
        if d == nF:
            return True
        need = demands[d + 1]
        lo = chosen[-1] + 1 if eq_prev[d] and chosen else 0
        for jA in range(lo, nA):
            if jA in chosen:
                continue
            cA = A.cols[jA]
            split: dict[int, int] = {}
            for p, mask in classes.items():
                z = mask & ~cA
                o = mask & cA
                if z:
                    split[p] = z
                if o:
                    split[p | (1 << d)] = o
            if all(split.get(p, 0).bit_count() >= cnt for p, cnt in need.items()):
                chosen.append(jA)
                if rec(d + 1, split):
                    return True
                chosen.pop()
        return False

    if not rec(0, {0: all_rows_mask}):
        return None

    # assign rows greedily: F row i needs an A row matching frpat[i]
    classes_full: dict[int, list[int]] = {}
    for r in range(mA):
        v = 0
        for d, jA in enumerate(chosen):
            if (A.cols[jA] >> r) & 1:
                v |= 1 << d
        classes_full.setdefault(v, []).append(r)
    row_map = [-1] * kF
    cursor: dict[int, int] = {}
    for i in range(kF):
        p = frpat[i]
        k = cursor.get(p, 0)
        row_map[i] = classes_full[p][k]
        cursor[p] = k + 1
    col_map = [-1] * nF
    for d, j in enumerate(corder):
        col_map[j] = chosen[d]
    return Certificate("containment", tuple(row_map), tuple(col_map))


def contains_any(family, A) -> tuple[int, Certificate] | None:
    """First family member contained in A, by family order."""
    for idx, F in enumerate(family):
        cert = contains(F, A)
        if cert is not None:
            return idx, cert
    return None


def contains_incremental(family, A: Matrix, c: int) -> tuple[int, Certificate] | None:
    """Does appending column ``c`` to family-avoiding A create a containment?

    Caller guarantees A avoids the family, so any witness necessarily uses
    the new column.
    """
    if c in A.cols:
        raise ValueError("column already present in A")
    extended = Matrix(A.rows, A.cols + (c,))
    return contains_any(family, extended)


def naive_contains(F, A) -> Certificate | None:
    """Unpruned reference oracle: enumerate all row and column injections."""
    F = _as_matrix(F)
    A = _as_matrix(A)
    kF, nF = F.rows, len(F.cols)
    mA, nA = A.rows, len(A.cols)
    if kF > mA or nF > nA:
        return None

    for rowsel in itertools.permutations(range(mA), kF):
        col_map = [-1] * nF
        used = [False] * nA

        def bt(j: int) -> bool:
            if j == nF:
                return True
            for jA in range(nA):
                if used[jA]:
                    continue
                ok = True
                for i in range(kF):
                    if F.entry(i, j) != A.entry(rowsel[i], jA):
                        ok = False
                        break
                if ok:
                    used[jA] = True
                    col_map[j] = jA
                    if bt(j + 1):
                        return True
                    used[jA] = False
            return False

        if bt(0):
            return Certificate("containment", tuple(rowsel), tuple(col_map))
    return None
