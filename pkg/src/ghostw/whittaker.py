"""Whittaker model M = U(g)/I_{-chi}, its ad(n)-invariants, the Miura map and
the ghost-center comparison map.

With the basis order (negative roots, Cartan, u(alpha_n), other positive
roots) every generator after ``u(alpha_n)`` lies in g_{>=1}, so a normal
ordered monomial reduces modulo the left ideal simply by replacing its
trailing g_{>=1} letters ``v`` with ``-chi(v)``.  The reduced monomials
(negative roots, Cartan, at most one trailing ``u(alpha_n)``) form a basis of
M, and the canonical lift of a vector is the element of U(g) with the same
monomials.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .centers import CenterSolver, VerificationFailure, solver_for
from .exactmath import SparseEchelon, format_rational, sparse_kernel_basis
from .hc import (
    HCPolynomial,
    ghost_square_character,
    in_D,
    sigma,
    sigma_inverse,
)
from .osp import EVEN, ODD, LieElement, OspAlgebra
from .uea import UEA, Monomial, UEAElement, uea_for

log = logging.getLogger(__name__)


class ContractViolation(ValueError):
    """An argument did not satisfy the documented precondition."""


class WhittakerVector:
    """Vector of M in reduced-monomial coordinates.  Treat as immutable."""

    __slots__ = ("model", "_terms")

    def __init__(self, model: "WhittakerModel", terms: Mapping[Monomial, object] | None = None):
        self.model = model
        self._terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def parity(self) -> int | None:
        U = self.model.uea
        ps = {U.monomial_parity(m) for m in self._terms}
        if not ps:
            return EVEN
        return ps.pop() if len(ps) == 1 else None

    @property
    def degree(self) -> int:
        return max((len(m) for m in self._terms), default=-1)

    def lift(self) -> UEAElement:
        return UEAElement._raw(self.model.uea, dict(self._terms))

    def __add__(self, other: "WhittakerVector") -> "WhittakerVector":
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return WhittakerVector(self.model, out)

    def __neg__(self):
        return WhittakerVector(self.model, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        s = Fraction(s)
        return WhittakerVector(self.model, {m: s * c for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, WhittakerVector):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def to_json(self) -> list[dict]:
        return self.model.uea.element_to_json(self.lift())

    def __str__(self) -> str:
        return self.model.uea.format(self.lift())

    __repr__ = __str__


@dataclass(frozen=True)
class MiuraImage:
    """f_1 (x) 1 + f_2 (x) Phi with Phi^2 = 1."""

    even: HCPolynomial
    odd: HCPolynomial

    def __mul__(self, other: "MiuraImage") -> "MiuraImage":
        return MiuraImage(self.even * other.even + self.odd * other.odd, self.even * other.odd + self.odd * other.even)

    def shifted(self, alg: OspAlgebra) -> "MiuraImage":
        """Apply sigma to both components."""
        return MiuraImage(sigma(alg, self.even), sigma(alg, self.odd))

    def to_json(self) -> dict:
        return {"one": self.even.to_json(), "phi": self.odd.to_json()}

    def __str__(self) -> str:
        return f"({self.even}) (x) 1 + ({self.odd}) (x) Phi"


@dataclass(frozen=True)
class GhostElement:
    """z + a with z central and a anticentral; the product respects Z·A ⊆ A, A·A ⊆ Z."""

    z: UEAElement
    a: UEAElement

    def __mul__(self, other: "GhostElement") -> "GhostElement":
        return GhostElement(self.z * other.z + self.a * other.a, self.z * other.a + self.a * other.z)

    def __add__(self, other: "GhostElement") -> "GhostElement":
        return GhostElement(self.z + other.z, self.a + other.a)

    def scale(self, c) -> "GhostElement":
        return GhostElement(self.z * c, self.a * c)

    @property
    def degree(self) -> int:
        return max(self.z.degree, self.a.degree)

    def total(self) -> UEAElement:
        return self.z + self.a


class WhittakerModel:
    def __init__(self, alg: OspAlgebra, uea: UEA | None = None, centers: CenterSolver | None = None):
        self.alg = alg
        self.uea = uea or uea_for(alg)
        self.centers = centers or solver_for(alg)
        self.alpha_n = alg.alpha_n_index
        self.first_high = alg.alpha_n_index + 1
        for g in range(self.first_high, alg.dim):
            if alg.deg2[g] < 2:
                raise VerificationFailure("basis order does not put g_{>=1} last")
        self.chi = alg.chi_table
        self.reduced_generators = tuple(range(self.first_high))
        self.positive = tuple(k for k in range(alg.dim) if alg.deg2[k] > 0)
        self.simple = tuple(alg.root_index[r] for r in alg.simple_roots())
        self._w_bases: dict[tuple[int, str], list[WhittakerVector]] = {}

    # -- reduction ------------------------------------------------------------

    def reduce(self, a: UEAElement) -> WhittakerVector:
        out: dict[Monomial, Fraction] = {}
        fh = self.first_high
        chi = self.chi
        for m, c in a.items():
            k = len(m)
            while k and m[k - 1] >= fh:
                k -= 1
            for g in m[k:]:
                c = -c * chi[g]
                if not c:
                    break
            if c:
                p = m[:k]
                out[p] = out.get(p, 0) + c
        return WhittakerVector(self, out)

    def vector(self, terms: Mapping[Monomial, object]) -> WhittakerVector:
        for m in terms:
            if m and m[-1] >= self.first_high:
                raise ValueError(f"{m} is not a reduced monomial")
        return WhittakerVector(self, terms)

    def one(self) -> WhittakerVector:
        return WhittakerVector(self, {(): 1})

    # -- ad(g_{>0}) -----------------------------------------------------------

    def ad_quotient(self, x: LieElement | int, m: WhittakerVector) -> WhittakerVector:
        if isinstance(x, int):
            x = self.alg.basis_element(x)
        if any(self.alg.deg2[i] <= 0 for i, _ in x.coords):
            raise ContractViolation("ad_quotient is only defined for x in g_{>0}")
        if x.parity is None or m.parity is None:
            raise ContractViolation("ad_quotient needs parity-homogeneous arguments")
        return self.reduce(self.uea.supercommutator(self.uea.embed(x), m.lift()))

    def is_invariant(self, m: WhittakerVector, generators: Sequence[int] | None = None) -> bool:
        gens = self.positive if generators is None else generators
        if m.parity is None:
            return self.is_invariant(self._part(m, EVEN), gens) and self.is_invariant(self._part(m, ODD), gens)
        return all(self.ad_quotient(g, m).is_zero() for g in gens)

    def _part(self, m: WhittakerVector, parity: int) -> WhittakerVector:
        U = self.uea
        return WhittakerVector(self, {k: c for k, c in m.items() if U.monomial_parity(k) == parity})

    def reduced_monomials(self, d: int) -> list[Monomial]:
        return self.uea.enumerate_pbw(d, generators=self.reduced_generators)

    def finite_w_basis(self, d: int, parity: int | None = None, generators: str = "positive") -> list[WhittakerVector]:
        """Echelon basis of (M ∩ F_d)^{ad g_{>0}} (or of ad g_{>=1} with generators='high')."""
        out = []
        for p in ((EVEN, ODD) if parity is None else (parity,)):
            out.extend(self._w_basis(d, p, generators))
        return out

    def _w_basis(self, d: int, parity: int, generators: str) -> list[WhittakerVector]:
        key = (d, parity, generators)
        if key in self._w_bases:
            return self._w_bases[key]
        U = self.uea
        if generators == "positive":
            # simple root vectors generate n
            gens = self.simple
            full = self.positive
        elif generators == "high":
            gens = full = tuple(k for k in range(self.alg.dim) if self.alg.deg2[k] >= 2)
        else:
            raise ValueError(generators)
        unknowns = [m for m in self.reduced_monomials(d) if U.monomial_parity(m) == parity]
        rowkey: dict[tuple[int, Monomial], int] = {}
        rows: list[dict[int, Fraction]] = []
        for j, m in enumerate(unknowns):
            vec = WhittakerVector(self, {m: 1})
            for g in gens:
                img = self.ad_quotient(g, vec)
                for m2, c in img.items():
                    r = rowkey.setdefault((g, m2), len(rows))
                    if r == len(rows):
                        rows.append({})
                    rows[r][j] = c
        kern = sparse_kernel_basis(rows, len(unknowns))
        basis = [WhittakerVector(self, {unknowns[j]: c for j, c in v.items()}) for v in kern]
        for b in basis:
            if not self.is_invariant(b, full):
                raise VerificationFailure(f"invariant fails the full check: {b}")
        log.info("finite W n=%d d=%d parity=%d: %d unknowns, %d equations, dim %d",
                 self.alg.n, d, parity, len(unknowns), len(rows), len(basis))
        self._w_bases[key] = basis
        return basis

    # -- algebra structure ----------------------------------------------------

    def w_multiply(self, m1: WhittakerVector, m2: WhittakerVector, check: bool = True) -> WhittakerVector:
        if check and not (self.is_invariant(m1) and self.is_invariant(m2)):
            raise ContractViolation("w_multiply is defined on ad(g_{>0})-invariant vectors only")
        return self.reduce(self.uea.multiply(m1.lift(), m2.lift()))

    def miura(self, m: WhittakerVector) -> MiuraImage:
        """Drop monomials with negative-root letters; u(alpha_n) becomes Phi."""
        n = self.alg.n
        cart = {g: i for i, g in enumerate(self.alg.cartan)}
        even: dict[tuple[int, ...], Fraction] = {}
        odd: dict[tuple[int, ...], Fraction] = {}
        for mono, c in m.items():
            target = even
            letters = mono
            if letters and letters[-1] == self.alpha_n:
                target = odd
                letters = letters[:-1]
            if not all(g in cart for g in letters):
                continue
            e = [0] * n
            for g in letters:
                e[cart[g]] += 1
            e_t = tuple(e)
            target[e_t] = target.get(e_t, 0) + c
        return MiuraImage(HCPolynomial(n, even), HCPolynomial(n, odd))

    # -- the comparison map -----------------------------------------------------

    def xi_map(self, z: UEAElement, a: UEAElement) -> UEAElement:
        return z + a * self.uea.gen(self.alpha_n)

    def ghost_to_whittaker(self, x: GhostElement, certified: bool = False) -> WhittakerVector:
        """q_1(z + a u(alpha_n)) for x = z + a in Z ⊕ A."""
        if not certified:
            if not self.centers.is_central(x.z):
                raise ContractViolation("z is not central")
            if not self.centers.is_anticentral(x.a):
                raise ContractViolation("a is not anticentral")
        return self.reduce(self.xi_map(x.z, x.a))

    def ghost_basis(self, d: int) -> list[GhostElement]:
        U = self.uea
        zs = [GhostElement(z, U.zero()) for z in self.centers.compute_center(d).elements]
        ans = [GhostElement(U.zero(), a) for a in self.centers.compute_anticenter(d).elements]
        return zs + ans

    def G(self) -> WhittakerVector:
        T = self.centers.casimir_ghost()
        return self.ghost_to_whittaker(GhostElement(self.uea.zero(), T), certified=True)


_MODELS: dict[int, WhittakerModel] = {}


def model_for(alg: OspAlgebra) -> WhittakerModel:
    if id(alg) not in _MODELS:
        _MODELS[id(alg)] = WhittakerModel(alg)
    return _MODELS[id(alg)]


def expected_miura_of_G(alg: OspAlgebra) -> HCPolynomial:
    """prod_i (h_i + n - i + 1/2), the expected Phi-coefficient of mu(G)."""
    n = alg.n
    p = HCPolynomial.constant(n)
    for i in range(1, n + 1):
        p = p * (HCPolynomial.variable(n, i) + Fraction(2 * (n - i) + 1, 2))
    return p


def span_of(vectors: Iterable[WhittakerVector | UEAElement]) -> SparseEchelon:
    ech = SparseEchelon()
    for v in vectors:
        ech.add(v.terms)
    return ech


def top_space_dimension(alg: OspAlgebra, lam: Sequence[object]) -> int:
    return 1 if in_D(alg, lam) else 2


def _assertion(name: str, ok: bool, witness=None) -> dict:
    out = {"name": name, "status": "pass" if ok else "fail"}
    if witness is not None:
        out["witness"] = witness
    return out


def verify_ghost_isomorphism(alg: OspAlgebra, d: int) -> dict:
    """Check the ghost-center/finite-W comparison on the degree-<=d pieces."""
    W = model_for(alg)
    S = W.centers
    n = alg.n
    basis = W.ghost_basis(d)
    images = [W.ghost_to_whittaker(b, certified=True) for b in basis]
    inv = W.finite_w_basis(d)
    assertions = []

    # (i) injectivity on the basis of Z~ ∩ F_d
    img_span = span_of(images)
    assertions.append(_assertion("injective", img_span.rank == len(basis),
                                 {"basis": len(basis), "rank": img_span.rank}))

    # (ii) image = invariants ∩ F_d
    inv_span = span_of(inv)
    assertions.append(_assertion("image_equals_invariants", img_span.same_span(inv_span),
                                 {"image_rank": img_span.rank, "invariants": inv_span.rank}))

    # (iii) multiplicativity within the degree budget
    pairs = 0
    bad = []
    for i, b1 in enumerate(basis):
        for j, b2 in enumerate(basis):
            if b1.degree + b2.degree > d:
                continue
            pairs += 1
            lhs = W.ghost_to_whittaker(b1 * b2, certified=True)
            rhs = W.w_multiply(images[i], images[j], check=False)
            if lhs != rhs:
                bad.append([i, j])
    assertions.append(_assertion("multiplicative", not bad, {"pairs": pairs, "failures": bad}))

    # (iv) mu(G)^2 = mu(q1(T^2)) = sigma^{-1}(h_1^2...h_n^2)
    T = S.casimir_ghost()
    G = W.ghost_to_whittaker(GhostElement(W.uea.zero(), T), certified=True)
    muG = W.miura(G)
    T2 = T * T
    mu_T2 = W.miura(W.ghost_to_whittaker(GhostElement(T2, W.uea.zero()), certified=True))
    target = sigma_inverse(alg, HCPolynomial.product_of_variables(n, 2))
    mu_GG = W.miura(W.w_multiply(G, G, check=False))
    sq = muG * muG
    ok = sq.odd.is_zero() and mu_T2.odd.is_zero() and sq.even == target and mu_T2.even == target and mu_GG == mu_T2
    assertions.append(_assertion("ghost_square", ok, {
        "mu_G_squared": sq.to_json(),
        "mu_T_squared": mu_T2.to_json(),
        "mu_G_times_G": mu_GG.to_json(),
    }))

    even_inv = [v for v in inv if v.parity == EVEN]
    odd_inv = [v for v in inv if v.parity == ODD]
    return {
        "n": n,
        "degree": d,
        "assertions": assertions,
        "dimensions": {
            "center": S.compute_center(d).dimension,
            "anticenter": S.compute_anticenter(d).dimension,
            "invariants_even": len(even_inv),
            "invariants_odd": len(odd_inv),
        },
    }


def filtered_comparison(alg: OspAlgebra, d: int) -> dict:
    """Even invariants vs Z and odd invariants vs A, degree by degree, plus parity transport."""
    W = model_for(alg)
    S = W.centers
    U = W.uea
    inv = W.finite_w_basis(d)
    even_dims = [sum(1 for v in inv if v.parity == EVEN and v.degree <= k) for k in range(d + 1)]
    odd_dims = [sum(1 for v in inv if v.parity == ODD and v.degree <= k) for k in range(d + 1)]
    center_dims = S.compute_center(d).filtered_dimensions()
    anticenter_dims = S.compute_anticenter(d).filtered_dimensions()
    z_even = all(W.ghost_to_whittaker(GhostElement(z, U.zero()), certified=True).parity == EVEN
                 for z in S.compute_center(d).elements)
    a_odd = all(W.ghost_to_whittaker(GhostElement(U.zero(), a), certified=True).parity == ODD
                for a in S.compute_anticenter(d).elements)
    return {
        "invariants_even": even_dims,
        "invariants_odd": odd_dims,
        "center": center_dims,
        "anticenter": anticenter_dims,
        "even_matches_center": even_dims == center_dims,
        "center_to_even": z_even,
        "anticenter_to_odd": a_odd,
    }


def miura_injective(alg: OspAlgebra, d: int) -> bool:
    W = model_for(alg)
    ech = SparseEchelon()
    for v in W.finite_w_basis(d):
        mu = W.miura(v)
        vec = {(0,) + k: c for k, c in mu.even.terms.items()}
        vec.update({(1,) + k: c for k, c in mu.odd.terms.items()})
        if not ech.add(vec):
            return False
    return True


def miura_report(alg: OspAlgebra) -> dict:
    W = model_for(alg)
    G = W.G()
    mu = W.miura(G)
    expected = expected_miura_of_G(alg)
    shifted = mu.shifted(alg)
    return {
        "mu_G": mu.to_json(),
        "expected_phi": expected.to_json(),
        "matches_expected": mu.even.is_zero() and mu.odd == expected,
        "shifted_is_product": shifted.even.is_zero() and shifted.odd == HCPolynomial.product_of_variables(alg.n),
        "G_invariant": W.is_invariant(G),
        "G_degree": G.degree,
    }


def module_check(alg: OspAlgebra, weights: Sequence[Sequence[object]]) -> dict:
    """top-space dimension 1 <=> lambda in D <=> chi_lambda(T^2) = 0, on the given weights."""
    from .hc import central_character

    S = solver_for(alg)
    T = S.casimir_ghost()
    T2 = T * T
    mismatches = []
    for lam in weights:
        dim = top_space_dimension(alg, lam)
        d_flag = in_D(alg, lam)
        val = central_character(lam, T2)
        formula = ghost_square_character(alg, lam)
        if not ((dim == 1) == d_flag == (val == 0)) or val != formula:
            mismatches.append([format_rational(x) for x in lam])
    return {"weights": len(weights), "mismatches": mismatches}
