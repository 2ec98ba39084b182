"""Exact rational linear algebra.

Everything here works over ``fractions.Fraction``.  Matrices are stored
sparsely and elimination is done fraction-free on integer rows, with the
content (gcd of the entries) divided out after every row operation so the
entries stay small.  The reduced row echelon form of a matrix is unique, so
the kernel bases returned by :func:`kernel_basis` do not depend on the order
in which the rows were supplied or on the pivot choices made along the way.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "RationalMatrix",
    "SparseEchelon",
    "kernel_basis",
    "rank",
    "in_span",
    "rref",
    "solve",
    "as_rational",
    "format_rational",
    "parse_rational",
]


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_rational(x)
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s.strip())


class RationalMatrix:
    """Sparse ``rows x cols`` matrix; absent entries are zero."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], object] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        self._entries: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside a {rows}x{cols} matrix")
            v = as_rational(v)
            if v:
                self._entries[(i, j)] = v

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[object]], cols: int | None = None) -> "RationalMatrix":
        if cols is None:
            cols = len(rows[0]) if rows else 0
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                entries[(i, j)] = v
        return cls(len(rows), cols, entries)

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[Mapping[int, object]], cols: int) -> "RationalMatrix":
        entries = {}
        for i, row in enumerate(rows):
            for j, v in row.items():
                entries[(i, j)] = v
        return cls(len(rows), cols, entries)

    @property
    def entries(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._entries)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self._entries.get(ij, Fraction(0))

    def sparse_rows(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [dict() for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def to_rows(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def mul_vector(self, v: Sequence[object]) -> list[Fraction]:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        out = [Fraction(0)] * self.rows
        for (i, j), a in self._entries.items():
            if v[j]:
                out[i] += a * v[j]
        return out

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._entries) == (other.rows, other.cols, other._entries)

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={len(self._entries)})"


# ---------------------------------------------------------------------------
# integer row helpers

def _integer_row(row: Mapping[int, object]) -> dict[int, int]:
    """Scale a rational sparse row to a primitive integer row."""
    vals = {j: as_rational(v) for j, v in row.items()}
    vals = {j: v for j, v in vals.items() if v}
    if not vals:
        return {}
    den = lcm(*(v.denominator for v in vals.values()))
    ints = {j: v.numerator * (den // v.denominator) for j, v in vals.items()}
    return _primitive(ints)


def _primitive(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {j: v // g for j, v in row.items()}
    return row


def _combine(a: int, r: dict[int, int], b: int, p: dict[int, int]) -> dict[int, int]:
    """Return the primitive part of a*r - b*p, dropping zeros."""
    out = {j: a * v for j, v in r.items()} if a != 1 else dict(r)
    for j, v in p.items():
        w = out.get(j, 0) - b * v
        if w:
            out[j] = w
        else:
            out.pop(j, None)
    return _primitive(out)


def _echelon(rows: Iterable[Mapping[int, object]], ncols: int) -> list[tuple[int, dict[int, int]]]:
    """Forward elimination, column by column.

    Among the rows that still have an entry in the current column the pivot is
    the one whose entry has the fewest bits (ties: shortest row, then lowest
    row id).  Returns ``(pivot_col, row)`` pairs in increasing column order;
    each row has no entries left of its pivot.
    """
    active: dict[int, dict[int, int]] = {}
    colidx: dict[int, set[int]] = defaultdict(set)
    rid = 0
    for row in rows:
        r = _integer_row(row)
        if not r:
            continue
        for j in r:
            if not 0 <= j < ncols:
                raise IndexError(f"column {j} out of range for {ncols} columns")
        active[rid] = r
        for j in r:
            colidx[j].add(rid)
        rid += 1

    pivots: list[tuple[int, dict[int, int]]] = []
    for col in range(ncols):
        cand = colidx.pop(col, None)
        if not cand:
            continue
        prid = min(cand, key=lambda k: (abs(active[k][col]).bit_length(), len(active[k]), k))
        prow = active.pop(prid)
        for j in prow:
            if j != col:
                colidx[j].discard(prid)
        pv = prow[col]
        for k in cand:
            if k == prid:
                continue
            r = active[k]
            a = r[col]
            g = gcd(pv, a)
            new = _combine(pv // g, r, a // g, prow)
            old_cols = r.keys() - new.keys()
            for j in old_cols:
                if j != col:
                    colidx[j].discard(k)
            for j in new.keys() - r.keys():
                colidx[j].add(k)
            if new:
                active[k] = new
            else:
                del active[k]
        pivots.append((col, prow))
    return pivots


def _reduce_back(pivots: list[tuple[int, dict[int, int]]]) -> list[tuple[int, dict[int, Fraction]]]:
    """Back substitution: turn an echelon form into the reduced one (pivots = 1)."""
    done: list[tuple[int, dict[int, int]]] = []
    for col, row in reversed(pivots):
        for pcol, prow in done:
            a = row.get(pcol)
            if a:
                pv = prow[pcol]
                g = gcd(pv, a)
                row = _combine(pv // g, row, a // g, prow)
        done.append((col, row))
    out = []
    for col, row in reversed(done):
        pv = row[col]
        out.append((col, {j: Fraction(v, pv) for j, v in row.items()}))
    return out


def rref(m: RationalMatrix) -> list[tuple[int, dict[int, Fraction]]]:
    """Reduced row echelon form as ``(pivot_col, sparse_row)`` pairs."""
    return _reduce_back(_echelon(m.sparse_rows(), m.cols))


def rank(m: RationalMatrix) -> int:
    return len(_echelon(m.sparse_rows(), m.cols))


def _clear(vec: dict[int, Fraction], lead: int) -> dict[int, int]:
    den = lcm(*(v.denominator for v in vec.values()))
    ints = {j: v.numerator * (den // v.denominator) for j, v in vec.items()}
    ints = _primitive(ints)
    if ints[lead] < 0:
        ints = {j: -v for j, v in ints.items()}
    return ints


def sparse_kernel_basis(rows: Iterable[Mapping[int, object]], ncols: int) -> list[dict[int, int]]:
    """Kernel basis for sparse rows, as sparse primitive integer vectors.

    The vector attached to free column ``f`` has a positive entry at ``f``,
    zero at every other free column, and is otherwise supported on pivot
    columns smaller than ``f``.
    """
    red = _reduce_back(_echelon(rows, ncols))
    pivot_cols = {c for c, _ in red}
    by_free: dict[int, dict[int, Fraction]] = defaultdict(dict)
    for c, row in red:
        for j, v in row.items():
            if j != c:
                by_free[j][c] = -v
    out = []
    for f in range(ncols):
        if f in pivot_cols:
            continue
        vec = dict(by_free.get(f, {}))
        vec[f] = Fraction(1)
        out.append(_clear(vec, f))
    return out


def kernel_basis(m: RationalMatrix) -> list[tuple[int, ...]]:
    """Basis of ``{v : m v = 0}`` as coprime integer vectors, ordered by free column."""
    out = []
    for vec in sparse_kernel_basis(m.sparse_rows(), m.cols):
        dense = [0] * m.cols
        for j, v in vec.items():
            dense[j] = v
        out.append(tuple(dense))
    return out


def in_span(v: Sequence[object], basis: Sequence[Sequence[object]]) -> tuple[bool, list[Fraction] | None]:
    """Decide whether ``v`` is a rational combination of ``basis``.

    Returns ``(True, coefficients)`` or ``(False, None)``.  For a dependent
    basis the coefficients are the ones with zeros on redundant vectors.
    """
    dim = len(v)
    for b in basis:
        if len(b) != dim:
            raise ValueError(f"dimension mismatch: vector of length {len(b)} vs {dim}")
    k = len(basis)
    # columns: basis vectors, then v
    rows = []
    for i in range(dim):
        row = {}
        for j, b in enumerate(basis):
            x = as_rational(b[i])
            if x:
                row[j] = x
        x = as_rational(v[i])
        if x:
            row[k] = x
        if row:
            rows.append(row)
    red = _reduce_back(_echelon(rows, k + 1))
    if any(c == k for c, _ in red):
        return False, None
    coeffs = [Fraction(0)] * k
    for c, row in red:
        coeffs[c] = row.get(k, Fraction(0))
    return True, coeffs


def solve(m: RationalMatrix, rhs: Sequence[object]) -> list[Fraction] | None:
    """One solution of ``m x = rhs`` (free variables set to zero), or None."""
    if len(rhs) != m.rows:
        raise ValueError("dimension mismatch")
    rows = m.sparse_rows()
    for i, r in enumerate(rhs):
        r = as_rational(r)
        if r:
            rows[i][m.cols] = r
    red = _reduce_back(_echelon(rows, m.cols + 1))
    if any(c == m.cols for c, _ in red):
        return None
    x = [Fraction(0)] * m.cols
    for c, row in red:
        x[c] = row.get(m.cols, Fraction(0))
    return x


class SparseEchelon:
    """Incrementally built echelon basis of a subspace of sparse vectors.

    Vectors are dicts keyed by arbitrary hashable, orderable coordinates.
    ``add`` returns False when the vector is already in the span.
    """

    def __init__(self):
        self._rows: dict[object, dict[object, Fraction]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, vec: Mapping[object, object]) -> dict[object, Fraction]:
        r = {k: as_rational(v) for k, v in vec.items() if v}
        while r:
            hit = None
            for k in r:
                if k in self._rows:
                    hit = k
                    break
            if hit is None:
                return r
            c = r[hit]
            for k, v in self._rows[hit].items():
                w = r.get(k, 0) - c * v
                if w:
                    r[k] = w
                else:
                    r.pop(k, None)
        return r

    def add(self, vec: Mapping[object, object]) -> bool:
        r = self.reduce(vec)
        if not r:
            return False
        lead = min(r)
        c = r[lead]
        r = {k: v / c for k, v in r.items()}
        # keep existing rows reduced with respect to the new pivot
        for key, row in self._rows.items():
            a = row.get(lead)
            if a:
                for k, v in r.items():
                    w = row.get(k, 0) - a * v
                    if w:
                        row[k] = w
                    else:
                        row.pop(k, None)
        self._rows[lead] = r
        return True

    def contains(self, vec: Mapping[object, object]) -> bool:
        return not self.reduce(vec)

    def same_span(self, other: "SparseEchelon") -> bool:
        if self.rank != other.rank:
            return False
        return all(self.contains(row) for row in other._rows.values())
