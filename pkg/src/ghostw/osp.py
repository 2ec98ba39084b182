"""The Lie superalgebra osp(1|2n) realized inside gl(1|2n).

Matrices are indexed by ``0, 1, ..., n, -1, ..., -n``; index 0 spans the even
line and ``±i`` the odd 2n-dimensional block.  An element has the block shape

    [ 0 | y^t  -x^t ]
    [ x |  a     b  ]        b = b^t,  c = c^t
    [ y |  c   -a^t ]

Root vector conventions (fixed once, everything downstream depends on them):

    h_i            = e(i,i) - e(-i,-i)
    u(e_i)         = e(i,0) - e(0,-i)           odd
    u(-e_i)        = e(-i,0) + e(0,i)           odd
    u(e_i - e_j)   = e(i,j) - e(-j,-i)          i != j
    u(e_i + e_j)   = e(i,-j) + e(j,-i)          i < j
    u(2e_i)        = e(i,-i)
    u(-e_i - e_j)  = e(-i,j) + e(-j,i)          i < j
    u(-2e_i)       = t * e(-i,i)

with ``t = 1`` except for ``i = n``, where ``t`` is chosen so that
``chi([u(e_n), u(e_n)]) = 2`` (``chi = (f_prin | .)``).  With this scale the
Clifford generator attached to ``u(e_n)`` squares to 1.

Good-grading degrees are stored doubled so that they are integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .exactmath import format_rational

EVEN, ODD = 0, 1


def _root_label(coeffs: Sequence[int]) -> str:
    parts = []
    for i, c in enumerate(coeffs, start=1):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        parts.append(f"{sign}{mag}e{i}")
    s = "".join(parts)
    if s.startswith("+"):
        s = s[1:]
    return f"u({s})"


def positive_roots(n: int) -> list[tuple[int, ...]]:
    """Positive roots in epsilon coordinates."""
    roots = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        roots.append(tuple(e))
        e = [0] * n
        e[i] = 2
        roots.append(tuple(e))
    for i in range(n):
        for j in range(i + 1, n):
            e = [0] * n
            e[i], e[j] = 1, -1
            roots.append(tuple(e))
            e = [0] * n
            e[i], e[j] = 1, 1
            roots.append(tuple(e))
    return roots


def simple_coordinates(root: Sequence[int]) -> tuple[int, ...]:
    """Coefficients of a root over alpha_1..alpha_n (alpha_n = e_n)."""
    out, acc = [], 0
    for c in root:
        acc += c
        out.append(acc)
    return tuple(out)


def is_odd_root(root: Sequence[int]) -> bool:
    return sum(abs(c) for c in root) == 1


class MatrixRealization:
    """Supermatrices of size 2n+1, stored sparsely as {(row, col): Fraction}."""

    def __init__(self, n: int):
        self.n = n
        self.indices = [0] + list(range(1, n + 1)) + [-i for i in range(1, n + 1)]

    @staticmethod
    def index_parity(i: int) -> int:
        return 0 if i == 0 else 1

    def entry_parity(self, r: int, c: int) -> int:
        return (self.index_parity(r) + self.index_parity(c)) % 2

    @staticmethod
    def mul(a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        for (r, k), x in a.items():
            for (k2, c), y in b.items():
                if k == k2:
                    out[(r, c)] = out.get((r, c), 0) + x * y
        return {k: v for k, v in out.items() if v}

    def supercommutator(self, a: Mapping, pa: int, b: Mapping, pb: int) -> dict:
        ab = self.mul(a, b)
        ba = self.mul(b, a)
        sign = -1 if (pa and pb) else 1
        out = dict(ab)
        for k, v in ba.items():
            out[k] = out.get(k, 0) - sign * v
        return {k: v for k, v in out.items() if v}

    def supertrace(self, a: Mapping) -> Fraction:
        s = Fraction(0)
        for (r, c), v in a.items():
            if r == c:
                s += v if self.index_parity(r) == 0 else -v
        return s


@dataclass(frozen=True)
class LieElement:
    """Element of osp(1|2n) as coordinates over the fixed ordered basis."""

    algebra: "OspAlgebra" = field(repr=False, compare=False)
    coords: tuple[tuple[int, Fraction], ...]

    @classmethod
    def from_dict(cls, algebra: "OspAlgebra", coords: Mapping[int, object]) -> "LieElement":
        items = tuple(sorted((i, Fraction(v)) for i, v in coords.items() if v))
        return cls(algebra, items)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.coords)

    @property
    def parity(self) -> int | None:
        ps = {self.algebra.parity[i] for i, _ in self.coords}
        if not ps:
            return EVEN
        return ps.pop() if len(ps) == 1 else None

    @property
    def degree2(self) -> int | None:
        """Doubled good-grading degree, or None when mixed."""
        ds = {self.algebra.deg2[i] for i, _ in self.coords}
        if not ds:
            return 0
        return ds.pop() if len(ds) == 1 else None

    @property
    def degree(self) -> Fraction | None:
        d = self.degree2
        return None if d is None else Fraction(d, 2)

    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other: "LieElement") -> "LieElement":
        d = self.as_dict()
        for i, v in other.coords:
            d[i] = d.get(i, 0) + v
        return LieElement.from_dict(self.algebra, d)

    def __neg__(self) -> "LieElement":
        return LieElement.from_dict(self.algebra, {i: -v for i, v in self.coords})

    def __sub__(self, other: "LieElement") -> "LieElement":
        return self + (-other)

    def __rmul__(self, scalar) -> "LieElement":
        s = Fraction(scalar)
        return LieElement.from_dict(self.algebra, {i: s * v for i, v in self.coords})

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __str__(self) -> str:
        if not self.coords:
            return "0"
        return " + ".join(f"{format_rational(v)}*{self.algebra.labels[i]}" for i, v in self.coords)


class OspAlgebra:
    """Immutable datum for osp(1|2n): basis, brackets, form, roots, grading."""

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"n must be a positive integer, got {n!r}")
        self.n = n
        self.real = MatrixRealization(n)
        self._build_basis()
        self._normalize_chi()
        self._build_tables()

    # -- construction -----------------------------------------------------

    def _root_matrix(self, root: tuple[int, ...]) -> dict:
        nz = [(i + 1, c) for i, c in enumerate(root) if c]
        one = Fraction(1)
        if len(nz) == 1:
            i, c = nz[0]
            if c == 1:
                return {(i, 0): one, (0, -i): -one}
            if c == -1:
                return {(-i, 0): one, (0, i): one}
            if c == 2:
                return {(i, -i): one}
            if c == -2:
                return {(-i, i): one}
        (i, ci), (j, cj) = nz
        if ci == 1 and cj == -1:
            return {(i, j): one, (-j, -i): -one}
        if ci == -1 and cj == 1:
            return {(j, i): one, (-i, -j): -one}
        if ci == 1 and cj == 1:
            return {(i, -j): one, (j, -i): one}
        if ci == -1 and cj == -1:
            return {(-i, j): one, (-j, i): one}
        raise ValueError(f"not a root: {root}")

    def _build_basis(self) -> None:
        n = self.n
        pos = positive_roots(n)

        def height_key(r):
            s = simple_coordinates(r)
            return (sum(s), tuple(-x for x in s))

        pos_sorted = sorted(pos, key=height_key)
        alpha_n = tuple([0] * (n - 1) + [1])
        neg = [tuple(-c for c in r) for r in pos_sorted]
        rest = [r for r in pos_sorted if r != alpha_n]

        labels, parity, weight, mats, roots = [], [], [], [], []
        for r in neg:
            labels.append(_root_label(r))
            parity.append(ODD if is_odd_root(r) else EVEN)
            weight.append(r)
            roots.append(r)
            mats.append(self._root_matrix(r))
        for i in range(1, n + 1):
            labels.append(f"h{i}")
            parity.append(EVEN)
            weight.append(tuple([0] * n))
            roots.append(None)
            mats.append({(i, i): Fraction(1), (-i, -i): Fraction(-1)})
        for r in [alpha_n] + rest:
            labels.append(_root_label(r))
            parity.append(ODD if is_odd_root(r) else EVEN)
            weight.append(r)
            roots.append(r)
            mats.append(self._root_matrix(r))

        self.labels: tuple[str, ...] = tuple(labels)
        self.parity: tuple[int, ...] = tuple(parity)
        self.weight: tuple[tuple[int, ...], ...] = tuple(weight)
        self.root: tuple = tuple(roots)
        self.dim = len(labels)
        self.index = {lab: k for k, lab in enumerate(labels)}
        self.root_index = {r: k for k, r in enumerate(roots) if r is not None}
        self.cartan = tuple(range(len(neg), len(neg) + n))
        self.negative = tuple(range(len(neg)))
        self.positive = tuple(range(len(neg) + n, self.dim))
        self.alpha_n_index = len(neg) + n
        deg2 = []
        for r in roots:
            if r is None:
                deg2.append(0)
            else:
                s = simple_coordinates(r)
                deg2.append(2 * sum(s[:-1]) + s[-1])
        self.deg2: tuple[int, ...] = tuple(deg2)
        self._mats = mats

    def _normalize_chi(self) -> None:
        n = self.n
        un = self.alpha_n_index
        two = tuple([0] * (n - 1) + [2])
        m2 = self.root_index[tuple(-c for c in two)]
        p2 = self.root_index[two]
        sq = self.real.supercommutator(self._mats[un], ODD, self._mats[un], ODD)
        # sq is a multiple of u(2e_n); f pairs with it only through u(-2e_n)
        coeff = self._coordinate(sq)[p2]
        pairing = -self.real.supertrace(self.real.mul(self._mats[m2], self._mats[p2]))
        t = Fraction(2) / (coeff * pairing)
        self._mats[m2] = {k: t * v for k, v in self._mats[m2].items()}
        self.rescale_negative_2en = t

    def _coordinate(self, mat: Mapping) -> dict[int, Fraction]:
        """Coordinates of a supermatrix in the basis; raises if it is not in osp."""
        coords: dict[int, Fraction] = {}
        for k, bm in enumerate(self._mats):
            # every basis matrix owns its first entry exclusively
            key = min(bm)
            v = mat.get(key, 0)
            if v:
                coords[k] = Fraction(v) / bm[key]
        rebuilt: dict = {}
        for k, c in coords.items():
            for rc, v in self._mats[k].items():
                rebuilt[rc] = rebuilt.get(rc, 0) + c * v
        rebuilt = {k: v for k, v in rebuilt.items() if v}
        clean = {k: Fraction(v) for k, v in mat.items() if v}
        if rebuilt != clean:
            raise ValueError("matrix does not lie in osp(1|2n)")
        return coords

    def _build_tables(self) -> None:
        br: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}
        for a in range(self.dim):
            for b in range(self.dim):
                m = self.real.supercommutator(self._mats[a], self.parity[a], self._mats[b], self.parity[b])
                co = self._coordinate(m)
                if co:
                    br[(a, b)] = tuple(sorted(co.items()))
        self._bracket = br
        form: dict[tuple[int, int], Fraction] = {}
        for a in range(self.dim):
            for b in range(self.dim):
                v = -self.real.supertrace(self.real.mul(self._mats[a], self._mats[b]))
                if v:
                    form[(a, b)] = v
        self._form = form

    # -- basic access -----------------------------------------------------

    def matrix(self, k: int) -> dict:
        return dict(self._mats[k])

    def bracket_basis(self, a: int, b: int) -> tuple[tuple[int, Fraction], ...]:
        """[e_a, e_b] as ((index, coefficient), ...)."""
        return self._bracket.get((a, b), ())

    def form_basis(self, a: int, b: int) -> Fraction:
        return self._form.get((a, b), Fraction(0))

    def basis_element(self, k: int | str) -> LieElement:
        if isinstance(k, str):
            k = self.index[k]
        return LieElement.from_dict(self, {k: 1})

    def element(self, coords: Mapping[int | str, object]) -> LieElement:
        return LieElement.from_dict(self, {(self.index[k] if isinstance(k, str) else k): v for k, v in coords.items()})

    def root_vector(self, root: Sequence[int]) -> int:
        return self.root_index[tuple(root)]

    def h(self, i: int) -> int:
        return self.cartan[i - 1]

    def weight_of(self, k: int) -> tuple[int, ...]:
        return self.weight[k]

    # -- brackets and form on elements -------------------------------------

    def bracket(self, u: LieElement, v: LieElement) -> LieElement:
        if u.parity is None or v.parity is None:
            raise ValueError("bracket needs parity-homogeneous arguments")
        out: dict[int, Fraction] = {}
        for a, x in u.coords:
            for b, y in v.coords:
                for k, c in self._bracket.get((a, b), ()):
                    out[k] = out.get(k, 0) + x * y * c
        return LieElement.from_dict(self, out)

    def form(self, u: LieElement, v: LieElement) -> Fraction:
        s = Fraction(0)
        for a, x in u.coords:
            for b, y in v.coords:
                c = self._form.get((a, b))
                if c:
                    s += x * y * c
        return s

    # -- grading, f_prin, chi, rho --------------------------------------------

    def good_grading(self) -> dict[str, Fraction]:
        return {lab: Fraction(d, 2) for lab, d in zip(self.labels, self.deg2)}

    def simple_roots(self) -> list[tuple[int, ...]]:
        n = self.n
        out = []
        for i in range(n - 1):
            e = [0] * n
            e[i], e[i + 1] = 1, -1
            out.append(tuple(e))
        e = [0] * n
        e[n - 1] = 1
        out.append(tuple(e))
        return out

    @cached_property
    def f_prin(self) -> LieElement:
        n = self.n
        coords = {}
        for r in self.simple_roots()[:-1]:
            coords[self.root_index[tuple(-c for c in r)]] = 1
        coords[self.root_index[tuple([0] * (n - 1) + [-2])]] = 1
        return LieElement.from_dict(self, coords)

    def principal_nilpotent(self) -> LieElement:
        return self.f_prin

    @cached_property
    def chi_table(self) -> tuple[Fraction, ...]:
        f = self.f_prin
        return tuple(self.form(f, self.basis_element(k)) for k in range(self.dim))

    def chi(self, u: LieElement) -> Fraction:
        return sum((x * self.chi_table[a] for a, x in u.coords), Fraction(0))

    def rho_osp(self) -> tuple[Fraction, ...]:
        """rho = 1/2 sum_{positive} (-1)^p(alpha) alpha, in epsilon coordinates."""
        acc = [Fraction(0)] * self.n
        for r in positive_roots(self.n):
            s = -1 if is_odd_root(r) else 1
            for i, c in enumerate(r):
                acc[i] += Fraction(s * c, 2)
        return tuple(acc)

    def form_weights(self, lam: Sequence[object], mu: Sequence[object]) -> Fraction:
        """Induced form on h*: (e_i | e_j) = delta_ij / 2, derived from the Cartan block."""
        s = Fraction(0)
        for i in range(self.n):
            for j in range(self.n):
                # (e_i|e_j) = ((h_i|h_j) inverse Gram)_{ij}
                g = self._hstar_gram[i][j]
                if g:
                    s += Fraction(lam[i]) * Fraction(mu[j]) * g
        return s

    @cached_property
    def _hstar_gram(self) -> list[list[Fraction]]:
        from .exactmath import RationalMatrix, solve

        n = self.n
        gram = RationalMatrix.from_rows([[self.form_basis(self.h(i), self.h(j)) for j in range(1, n + 1)] for i in range(1, n + 1)])
        inv_cols = []
        for j in range(n):
            e = [0] * n
            e[j] = 1
            inv_cols.append(solve(gram, e))
        return [[inv_cols[j][i] for j in range(n)] for i in range(n)]

    def degree_part(self, deg2: int) -> list[int]:
        return [k for k in range(self.dim) if self.deg2[k] == deg2]

    def to_json(self) -> dict:
        bracket = []
        for (a, b), co in sorted(self._bracket.items()):
            bracket.append([a, b, {self.labels[k]: format_rational(c) for k, c in co}])
        return {
            "n": self.n,
            "basis": list(self.labels),
            "parity": list(self.parity),
            "degree2": list(self.deg2),
            "bracket": bracket,
        }

    def __repr__(self) -> str:
        return f"OspAlgebra(n={self.n}, dim={self.dim})"


_CACHE: dict[int, OspAlgebra] = {}


def build_osp(n: int) -> OspAlgebra:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if n not in _CACHE:
        _CACHE[n] = OspAlgebra(n)
    return _CACHE[n]


def centralizer_dimension(alg: OspAlgebra, x: LieElement) -> int:
    """dim of {y : [x, y] = 0}, by an exact kernel solve."""
    from .exactmath import RationalMatrix, rank

    cols = []
    for k in range(alg.dim):
        y = alg.basis_element(k)
        cols.append(alg.bracket(x, y).as_dict())
    m = RationalMatrix(alg.dim, alg.dim, {(i, j): v for j, c in enumerate(cols) for i, v in c.items()})
    return alg.dim - rank(m)


def dump_json(alg: OspAlgebra) -> str:
    return json.dumps(alg.to_json(), sort_keys=True)
