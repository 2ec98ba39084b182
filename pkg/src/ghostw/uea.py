"""PBW normal forms in U(osp(1|2n)).

A PBW monomial is stored as a non-decreasing tuple of basis indices (an even
generator may repeat, an odd one may not).  Elements are finitely supported
dicts ``monomial -> Fraction``.  Products are computed by right-multiplying a
normal-ordered monomial by one generator at a time; that step is memoized on
``(monomial, generator)`` and is the only place where rewriting happens.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .exactmath import format_rational, parse_rational
from .osp import EVEN, ODD, LieElement, OspAlgebra

Monomial = tuple[int, ...]


class UEAElement:
    """Element of U(g) in PBW normal form.  Treat as immutable."""

    __slots__ = ("uea", "_terms", "_hash")

    def __init__(self, uea: "UEA", terms: Mapping[Monomial, object] | None = None):
        self.uea = uea
        self._terms: dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self._terms[m] = c
        self._hash = None

    @classmethod
    def _raw(cls, uea: "UEA", terms: dict[Monomial, Fraction]) -> "UEAElement":
        obj = cls.__new__(cls)
        obj.uea = uea
        obj._terms = terms
        obj._hash = None
        return obj

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(mono, Fraction(0))

    @property
    def parity(self) -> int | None:
        """Parity, or None for a mixed-parity element (zero counts as even)."""
        par = self.uea.alg.parity
        ps = {sum(par[g] for g in m) % 2 for m in self._terms}
        if not ps:
            return EVEN
        return ps.pop() if len(ps) == 1 else None

    @property
    def degree(self) -> int:
        """PBW filtration degree; -1 for zero."""
        return max((len(m) for m in self._terms), default=-1)

    def weight(self) -> tuple[int, ...] | None:
        ws = {self.uea.monomial_weight(m) for m in self._terms}
        if not ws:
            return tuple([0] * self.uea.alg.n)
        return ws.pop() if len(ws) == 1 else None

    def __add__(self, other):
        if not isinstance(other, UEAElement):
            other = self.uea.scalar(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return UEAElement._raw(self.uea, out)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement._raw(self.uea, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, UEAElement):
            other = self.uea.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, UEAElement):
            return self.uea.multiply(self, other)
        s = Fraction(other)
        if not s:
            return UEAElement._raw(self.uea, {})
        return UEAElement._raw(self.uea, {m: s * c for m, c in self._terms.items()})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        out = self.uea.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, UEAElement):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == self.uea.scalar(other)._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def to_json(self) -> list[dict]:
        return self.uea.element_to_json(self)

    def __str__(self) -> str:
        return self.uea.format(self)

    def __repr__(self) -> str:
        return f"UEAElement({self.uea.format(self)})"


class UEA:
    """Universal enveloping algebra of an :class:`OspAlgebra`."""

    def __init__(self, alg: OspAlgebra):
        self.alg = alg
        self._cache: dict[tuple[Monomial, int], dict[Monomial, Fraction]] = {}
        self._half_square: dict[int, tuple[tuple[int, Fraction], ...]] = {}
        for g in range(alg.dim):
            if alg.parity[g] == ODD:
                self._half_square[g] = tuple((k, c / 2) for k, c in alg.bracket_basis(g, g))

    # -- constructors ---------------------------------------------------------

    def one(self) -> UEAElement:
        return UEAElement._raw(self, {(): Fraction(1)})

    def zero(self) -> UEAElement:
        return UEAElement._raw(self, {})

    def scalar(self, c) -> UEAElement:
        c = Fraction(c)
        return UEAElement._raw(self, {(): c} if c else {})

    def gen(self, g: int | str) -> UEAElement:
        if isinstance(g, str):
            g = self.alg.index[g]
        return UEAElement._raw(self, {(g,): Fraction(1)})

    def embed(self, x: LieElement) -> UEAElement:
        return UEAElement._raw(self, {(i,): c for i, c in x.coords})

    def element(self, terms: Mapping[Monomial, object]) -> UEAElement:
        """Build an element from monomials that are already in PBW order."""
        for m in terms:
            if not self.is_pbw(m):
                raise ValueError(f"{m} is not a PBW monomial; use normal_order")
        return UEAElement(self, terms)

    def is_pbw(self, m: Sequence[int]) -> bool:
        par = self.alg.parity
        for a, b in zip(m, m[1:]):
            if a > b or (a == b and par[a] == ODD):
                return False
        return all(0 <= g < self.alg.dim for g in m)

    # -- rewriting ------------------------------------------------------------

    def _mono_gen(self, mono: Monomial, g: int) -> dict[Monomial, Fraction]:
        key = (mono, g)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        par = self.alg.parity
        if not mono or mono[-1] < g or (mono[-1] == g and par[g] == EVEN):
            res = {mono + (g,): Fraction(1)}
        elif mono[-1] == g:
            # odd square: x x = 1/2 [x, x]
            rest = mono[:-1]
            res = {}
            for k, c in self._half_square[g]:
                for m2, c2 in self._mono_gen(rest, k).items():
                    _acc(res, m2, c * c2)
        else:
            last = mono[-1]
            rest = mono[:-1]
            sign = -1 if (par[last] and par[g]) else 1
            res = {}
            # rest * last * g = sign * (rest * g) * last + rest * [last, g]
            for m2, c2 in self._mono_gen(rest, g).items():
                for m3, c3 in self._mono_gen(m2, last).items():
                    _acc(res, m3, sign * c2 * c3)
            for k, c in self.alg.bracket_basis(last, g):
                for m2, c2 in self._mono_gen(rest, k).items():
                    _acc(res, m2, c * c2)
        self._cache[key] = res
        return res

    def _times_word(self, terms: Mapping[Monomial, Fraction], word: Sequence[int]) -> dict[Monomial, Fraction]:
        cur = dict(terms)
        for g in word:
            nxt: dict[Monomial, Fraction] = {}
            for m, c in cur.items():
                for m2, c2 in self._mono_gen(m, g).items():
                    _acc(nxt, m2, c * c2)
            cur = nxt
        return cur

    def normal_order(self, word: Sequence[int | str], scalar=1) -> UEAElement:
        """Normal form of ``scalar * w_1 w_2 ... w_k`` for basis labels/indices ``w_i``."""
        idx = [self.alg.index[w] if isinstance(w, str) else w for w in word]
        s = Fraction(scalar)
        if not s:
            return self.zero()
        return UEAElement._raw(self, self._times_word({(): s}, idx))

    def multiply(self, a: UEAElement, b: UEAElement) -> UEAElement:
        out: dict[Monomial, Fraction] = {}
        for mb, cb in b._terms.items():
            part = self._times_word(a._terms, mb)
            for m, c in part.items():
                _acc(out, m, c * cb)
        return UEAElement._raw(self, out)

    def supercommutator(self, a: UEAElement, b: UEAElement) -> UEAElement:
        pa, pb = a.parity, b.parity
        if pa is None or pb is None:
            raise ValueError("supercommutator needs parity-homogeneous arguments")
        ab = self.multiply(a, b)
        ba = self.multiply(b, a)
        return ab + ba if (pa and pb) else ab - ba

    def adjoint(self, x: LieElement | UEAElement, a: UEAElement) -> UEAElement:
        if isinstance(x, LieElement):
            if x.parity is None:
                raise ValueError("adjoint needs a parity-homogeneous Lie element")
            x = self.embed(x)
        return self.supercommutator(x, a)

    def twisted_adjoint(self, x: LieElement | UEAElement, a: UEAElement) -> UEAElement:
        """x a - (-1)^{p(x)(p(a)+1)} a x."""
        if isinstance(x, LieElement):
            if x.parity is None:
                raise ValueError("twisted_adjoint needs a parity-homogeneous Lie element")
            x = self.embed(x)
        px, pa = x.parity, a.parity
        if px is None or pa is None:
            raise ValueError("twisted_adjoint needs parity-homogeneous arguments")
        xa = self.multiply(x, a)
        ax = self.multiply(a, x)
        return xa + ax if (px and not pa) else xa - ax

    def adjoint_gen(self, g: int, a: UEAElement, twisted: bool = False) -> UEAElement:
        """(Twisted) adjoint action of the basis generator ``g`` on ``a``."""
        return self.twisted_adjoint(self.gen(g), a) if twisted else self.adjoint(self.gen(g), a)

    # -- bookkeeping ----------------------------------------------------------

    def monomial_weight(self, m: Monomial) -> tuple[int, ...]:
        n = self.alg.n
        w = [0] * n
        for g in m:
            for i, c in enumerate(self.alg.weight[g]):
                w[i] += c
        return tuple(w)

    def monomial_parity(self, m: Monomial) -> int:
        return sum(self.alg.parity[g] for g in m) % 2

    def enumerate_pbw(
        self,
        degree: int,
        weight: Sequence[int] | None = None,
        generators: Sequence[int] | None = None,
        predicate: Callable[[Monomial], bool] | None = None,
    ) -> list[Monomial]:
        """All PBW monomials of length <= degree, ordered by (length, lexicographic).

        ``weight`` keeps only monomials of that ad(h)-weight; ``generators``
        restricts the letters that may occur.
        """
        if degree < 0:
            raise ValueError("degree must be non-negative")
        gens = sorted(range(self.alg.dim) if generators is None else generators)
        par = self.alg.parity
        out: list[Monomial] = []

        def rec(start: int, prefix: list[int], left: int) -> Iterator[Monomial]:
            yield tuple(prefix)
            if left == 0:
                return
            for pos in range(start, len(gens)):
                g = gens[pos]
                prefix.append(g)
                nxt = pos + 1 if par[g] == ODD else pos
                yield from rec(nxt, prefix, left - 1)
                prefix.pop()

        target = None if weight is None else tuple(weight)
        for m in rec(0, [], degree):
            if target is not None and self.monomial_weight(m) != target:
                continue
            if predicate is not None and not predicate(m):
                continue
            out.append(m)
        out.sort(key=lambda m: (len(m), m))
        return out

    # -- output ---------------------------------------------------------------

    def monomial_pairs(self, m: Monomial) -> list[list]:
        out: list[list] = []
        for g in m:
            lab = self.alg.labels[g]
            if out and out[-1][0] == lab:
                out[-1][1] += 1
            else:
                out.append([lab, 1])
        return out

    def monomial_from_pairs(self, pairs: Iterable[Sequence]) -> Monomial:
        m: list[int] = []
        for lab, e in pairs:
            m.extend([self.alg.index[lab]] * int(e))
        m_t = tuple(m)
        if not self.is_pbw(m_t):
            raise ValueError(f"{pairs} is not a PBW monomial")
        return m_t

    def element_to_json(self, a: UEAElement) -> list[dict]:
        return [
            {"monomial": self.monomial_pairs(m), "coeff": format_rational(c)}
            for m, c in sorted(a._terms.items(), key=lambda t: (len(t[0]), t[0]))
        ]

    def element_from_json(self, data: Iterable[Mapping]) -> UEAElement:
        terms: dict[Monomial, Fraction] = {}
        for item in data:
            _acc(terms, self.monomial_from_pairs(item["monomial"]), parse_rational(item["coeff"]))
        return UEAElement._raw(self, terms)

    def format_monomial(self, m: Monomial) -> str:
        if not m:
            return "1"
        return "*".join(lab if e == 1 else f"{lab}^{e}" for lab, e in self.monomial_pairs(m))

    def format(self, a: UEAElement) -> str:
        if not a._terms:
            return "0"
        parts = []
        for m, c in sorted(a._terms.items(), key=lambda t: (-len(t[0]), t[0])):
            cs = format_rational(c)
            if not m:
                parts.append(cs)
            elif c == 1:
                parts.append(self.format_monomial(m))
            elif c == -1:
                parts.append("-" + self.format_monomial(m))
            else:
                parts.append(f"{cs}*{self.format_monomial(m)}")
        return " + ".join(parts).replace("+ -", "- ")

    def cache_size(self) -> int:
        return len(self._cache)


def _acc(d: dict, k, v) -> None:
    w = d.get(k, 0) + v
    if w:
        d[k] = w
    else:
        d.pop(k, None)


_UEA_CACHE: dict[int, UEA] = {}


def uea_for(alg: OspAlgebra) -> UEA:
    """Shared engine per algebra so the rewriting memo is reused."""
    key = id(alg)
    if key not in _UEA_CACHE:
        _UEA_CACHE[key] = UEA(alg)
    return _UEA_CACHE[key]


def dumps(a: UEAElement) -> str:
    return json.dumps(a.to_json())
