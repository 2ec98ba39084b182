"""Harish-Chandra projection, rho-shift, Weyl group and central characters.

Polynomials on h* live in U(h) = C[h_1, ..., h_n].  A weight is given by its
epsilon coordinates ``(c_1, ..., c_n)``; since ``eps_i(h_j) = delta_ij`` the
evaluation of ``h_i`` at that weight is ``c_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterator, Mapping, Sequence

from .exactmath import format_rational, parse_rational
from .osp import OspAlgebra, is_odd_root, positive_roots
from .uea import UEAElement

Exponent = tuple[int, ...]


class HCPolynomial:
    """Polynomial in h_1..h_n with rational coefficients."""

    __slots__ = ("n", "_terms")

    def __init__(self, n: int, terms: Mapping[Exponent, object] | None = None):
        self.n = n
        self._terms: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            if len(e) != n:
                raise ValueError(f"exponent {e} has wrong length for n={n}")
            c = Fraction(c)
            if c:
                self._terms[tuple(e)] = self._terms.get(tuple(e), 0) + c
        self._terms = {e: c for e, c in self._terms.items() if c}

    @classmethod
    def constant(cls, n: int, c=1) -> "HCPolynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "HCPolynomial":
        e = [0] * n
        e[i - 1] = 1
        return cls(n, {tuple(e): 1})

    @classmethod
    def product_of_variables(cls, n: int, power: int = 1) -> "HCPolynomial":
        return cls(n, {(power,) * n: 1})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def __add__(self, other):
        if not isinstance(other, HCPolynomial):
            other = HCPolynomial.constant(self.n, other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return HCPolynomial(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return HCPolynomial(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, HCPolynomial):
            other = HCPolynomial.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, HCPolynomial):
            s = Fraction(other)
            return HCPolynomial(self.n, {e: s * c for e, c in self._terms.items()})
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return HCPolynomial(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = HCPolynomial.constant(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, HCPolynomial):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == HCPolynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self._terms.items())))

    def evaluate(self, values: Sequence[object]) -> Fraction:
        vals = [Fraction(v) for v in values]
        s = Fraction(0)
        for e, c in self._terms.items():
            t = c
            for v, k in zip(vals, e):
                if k:
                    t *= v**k
            s += t
        return s

    def substitute(self, images: Sequence["HCPolynomial"]) -> "HCPolynomial":
        """Replace h_i by ``images[i-1]``."""
        out = HCPolynomial(self.n)
        powers: dict[tuple[int, int], HCPolynomial] = {}
        for e, c in self._terms.items():
            t = HCPolynomial.constant(self.n, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = images[i] ** k
                    t = t * powers[(i, k)]
            out = out + t
        return out

    def shift(self, offsets: Sequence[object]) -> "HCPolynomial":
        """Substitute h_i -> h_i + offsets[i]."""
        imgs = [HCPolynomial.variable(self.n, i + 1) + Fraction(offsets[i]) for i in range(self.n)]
        return self.substitute(imgs)

    def to_json(self) -> dict[str, str]:
        return {",".join(map(str, e)): format_rational(c) for e, c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, n: int, data: Mapping[str, str]) -> "HCPolynomial":
        return cls(n, {tuple(int(x) for x in k.split(",")): parse_rational(v) for k, v in data.items()})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0]))):
            mono = "*".join(
                (f"h{i + 1}" if k == 1 else f"h{i + 1}^{k}") for i, k in enumerate(e) if k
            )
            cs = format_rational(c)
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __repr__ = __str__


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation: acts on h by h_i -> signs[i] * h_{perm[i]}."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.signs) != n or any(s not in (1, -1) for s in self.signs):
            raise ValueError("not a signed permutation")

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(tuple(range(n)), (1,) * n)

    def compose(self, other: "WeylElement") -> "WeylElement":
        """(self * other)(v) = self(other(v)) on coordinate vectors."""
        n = len(self.perm)
        # other: v -> w with w[perm[i]] = signs[i] * v[i]
        perm = tuple(self.perm[other.perm[i]] for i in range(n))
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(n))
        return WeylElement(perm, signs)

    def act_vector(self, v: Sequence[object]) -> tuple[Fraction, ...]:
        n = len(self.perm)
        out = [Fraction(0)] * n
        for i in range(n):
            out[self.perm[i]] = self.signs[i] * Fraction(v[i])
        return tuple(out)

    def inverse(self) -> "WeylElement":
        n = len(self.perm)
        perm = [0] * n
        signs = [1] * n
        for i in range(n):
            perm[self.perm[i]] = i
            signs[self.perm[i]] = self.signs[i]
        return WeylElement(tuple(perm), tuple(signs))


def weyl_generators(n: int) -> list[WeylElement]:
    """Adjacent transpositions and the sign flip of the last coordinate."""
    gens = []
    for i in range(n - 1):
        p = list(range(n))
        p[i], p[i + 1] = p[i + 1], p[i]
        gens.append(WeylElement(tuple(p), (1,) * n))
    signs = [1] * n
    signs[-1] = -1
    gens.append(WeylElement(tuple(range(n)), tuple(signs)))
    return gens


def weyl_group(n: int) -> list[WeylElement]:
    return [WeylElement(p, s) for p in permutations(range(n)) for s in product((1, -1), repeat=n)]


def weyl_act(w: WeylElement, f: HCPolynomial) -> HCPolynomial:
    n = f.n
    imgs = [HCPolynomial.variable(n, w.perm[i] + 1) * w.signs[i] for i in range(n)]
    return f.substitute(imgs)


def is_invariant(f: HCPolynomial) -> bool:
    return all(weyl_act(w, f) == f for w in weyl_generators(f.n))


def reynolds(f: HCPolynomial) -> HCPolynomial:
    """Average over the full Weyl group."""
    group = weyl_group(f.n)
    acc = HCPolynomial(f.n)
    for w in group:
        acc = acc + weyl_act(w, f)
    return acc * Fraction(1, len(group))


def invariant_basis(n: int, degree: int) -> list[HCPolynomial]:
    """Basis of W-invariant polynomials of degree <= degree (Reynolds images of monomials)."""
    from .exactmath import SparseEchelon

    ech = SparseEchelon()
    out = []
    for exps in _exponents(n, degree):
        r = reynolds(HCPolynomial(n, {exps: 1}))
        if r.is_zero():
            continue
        if ech.add(r.terms):
            out.append(r)
    return out


def _exponents(n: int, degree: int) -> Iterator[Exponent]:
    for total in range(degree + 1):
        yield from _compositions(total, n)


def _compositions(total: int, parts: int) -> Iterator[Exponent]:
    if parts == 1:
        yield (total,)
        return
    for k in range(total, -1, -1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


# -- the projection and the shift -----------------------------------------------

def eta(a: UEAElement) -> HCPolynomial:
    """Keep the pure-Cartan part of a normal-ordered element.

    Valid because the basis order puts negative root vectors first and positive
    ones last: any other PBW monomial lies in n_- U(g) + U(g) n.
    """
    alg = a.uea.alg
    n = alg.n
    cart = {g: i for i, g in enumerate(alg.cartan)}
    out: dict[Exponent, Fraction] = {}
    for m, c in a.items():
        if all(g in cart for g in m):
            e = [0] * n
            for g in m:
                e[cart[g]] += 1
            e_t = tuple(e)
            out[e_t] = out.get(e_t, 0) + c
    return HCPolynomial(n, out)


def sigma(alg: OspAlgebra, f: HCPolynomial) -> HCPolynomial:
    """lambda -> f(lambda - rho): substitute h_i -> h_i - rho(h_i)."""
    rho = alg.rho_osp()
    return f.shift([-r for r in rho])


def sigma_inverse(alg: OspAlgebra, f: HCPolynomial) -> HCPolynomial:
    return f.shift(alg.rho_osp())


def harish_chandra(a: UEAElement) -> HCPolynomial:
    """sigma(eta(a))."""
    return sigma(a.uea.alg, eta(a))


def central_character(lam: Sequence[object], z: UEAElement) -> Fraction:
    """eta(z) evaluated at the weight with epsilon coordinates ``lam``."""
    if len(lam) != z.uea.alg.n:
        raise ValueError("weight has wrong length")
    return eta(z).evaluate(lam)


def odd_roots(n: int, positive_only: bool = False) -> list[tuple[int, ...]]:
    pos = [r for r in positive_roots(n) if is_odd_root(r)]
    if positive_only:
        return pos
    return pos + [tuple(-c for c in r) for r in pos]


def odd_root_product(alg: OspAlgebra, lam: Sequence[object], positive_only: bool = False) -> Fraction:
    rho = alg.rho_osp()
    shifted = [Fraction(l) + r for l, r in zip(lam, rho)]
    p = Fraction(1)
    for r in odd_roots(alg.n, positive_only):
        p *= alg.form_weights(shifted, r)
    return p


def in_D(alg: OspAlgebra, lam: Sequence[object]) -> bool:
    """Product over all odd roots of (lambda + rho | alpha) vanishes."""
    return odd_root_product(alg, lam) == 0


def in_D_positive(alg: OspAlgebra, lam: Sequence[object]) -> bool:
    return odd_root_product(alg, lam, positive_only=True) == 0


def ghost_square_character(alg: OspAlgebra, lam: Sequence[object]) -> Fraction:
    """prod over positive odd roots of (lambda + rho | 2 alpha)^2."""
    rho = alg.rho_osp()
    shifted = [Fraction(l) + r for l, r in zip(lam, rho)]
    p = Fraction(1)
    for r in odd_roots(alg.n, positive_only=True):
        p *= (2 * alg.form_weights(shifted, r)) ** 2
    return p


def dot_action(alg: OspAlgebra, w: WeylElement, lam: Sequence[object]) -> tuple[Fraction, ...]:
    """w(lambda + rho) - rho."""
    rho = alg.rho_osp()
    moved = w.act_vector([Fraction(l) + r for l, r in zip(lam, rho)])
    return tuple(m - r for m, r in zip(moved, rho))
