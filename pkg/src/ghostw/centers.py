"""Center, anticenter and ghost center of U(osp(1|2n)), degree by degree.

``Z ∩ F_d`` and ``A ∩ F_d`` are exact kernels: unknowns are the weight-zero
PBW monomials of length <= d, and there is one block of equations per
Chevalley generator ``u(±alpha_i)`` (these generate the algebra, and both the
adjoint and the twisted adjoint action are representations, so that is
enough).  Every solution is re-checked against the whole basis afterwards.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactmath import RationalMatrix, SparseEchelon, in_span, solve, sparse_kernel_basis
from .hc import HCPolynomial, harish_chandra
from .osp import EVEN, OspAlgebra
from .uea import UEA, Monomial, UEAElement, uea_for

log = logging.getLogger(__name__)


class VerificationFailure(AssertionError):
    """An identity that the construction guarantees did not hold."""


@dataclass
class CenterBasis:
    kind: str  # "center" or "anticenter"
    n: int
    degree: int
    elements: list[UEAElement] = field(default_factory=list)

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def filtered_dimensions(self) -> list[int]:
        """dim of the span of basis elements of degree <= k, for k = 0..degree."""
        return [sum(1 for e in self.elements if e.degree <= k) for k in range(self.degree + 1)]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "degree": self.degree,
            "dimension": self.dimension,
            "elements": [e.to_json() for e in self.elements],
        }


def chevalley_generators(alg: OspAlgebra) -> list[int]:
    out = []
    for r in alg.simple_roots():
        out.append(alg.root_index[r])
        out.append(alg.root_index[tuple(-c for c in r)])
    return out


def gram_dual(alg: OspAlgebra, indices: Sequence[int]) -> list[dict[int, Fraction]]:
    """Dual basis of ``indices`` w.r.t. the restricted form: (e_a | e^b) = delta_ab."""
    k = len(indices)
    gram = RationalMatrix.from_rows([[alg.form_basis(a, b) for b in indices] for a in indices])
    out = []
    for j in range(k):
        e = [0] * k
        e[j] = 1
        col = solve(gram, e)
        if col is None:
            raise VerificationFailure("restricted form is degenerate")
        out.append({indices[i]: c for i, c in enumerate(col) if c})
    return out


class CenterSolver:
    """Degree-bounded invariant solves in U(g), with caching per degree."""

    def __init__(self, alg: OspAlgebra, uea: UEA | None = None):
        self.alg = alg
        self.uea = uea or uea_for(alg)
        self._solves: dict[tuple[str, int, bool], CenterBasis] = {}
        self._ghost: UEAElement | None = None

    # -- Casimirs -------------------------------------------------------------

    def _casimir_over(self, indices: Sequence[int]) -> UEAElement:
        U = self.uea
        dual = gram_dual(self.alg, indices)
        acc = U.zero()
        for a, d in zip(indices, dual):
            acc = acc + U.element({(c,): v for c, v in d.items()}) * U.gen(a)
        return acc

    def casimir(self) -> UEAElement:
        """sum_a u^a u_a over dual bases of osp(1|2n)."""
        return self._casimir_over(range(self.alg.dim))

    def casimir_even(self) -> UEAElement:
        """The same construction for the even subalgebra sp(2n)."""
        even = [k for k in range(self.alg.dim) if self.alg.parity[k] == EVEN]
        return self._casimir_over(even)

    # -- invariance predicates ----------------------------------------------

    def is_central(self, z: UEAElement, generators: Sequence[int] | None = None) -> bool:
        gens = range(self.alg.dim) if generators is None else generators
        return all(self.uea.adjoint_gen(g, z).is_zero() for g in gens)

    def is_anticentral(self, a: UEAElement, generators: Sequence[int] | None = None) -> bool:
        gens = range(self.alg.dim) if generators is None else generators
        return all(self.uea.adjoint_gen(g, a, twisted=True).is_zero() for g in gens)

    # -- solves ---------------------------------------------------------------

    def _solve(self, kind: str, d: int, weight_zero: bool = True) -> CenterBasis:
        key = (kind, d, weight_zero)
        if key in self._solves:
            return self._solves[key]
        if d < 0:
            raise ValueError("degree must be non-negative")
        U = self.uea
        twisted = kind == "anticenter"
        gens = chevalley_generators(self.alg)
        weight = (0,) * self.alg.n if weight_zero else None
        monos = U.enumerate_pbw(d, weight=weight)
        elements: list[UEAElement] = []
        for parity in (0, 1):
            unknowns = [m for m in monos if U.monomial_parity(m) == parity]
            if not unknowns:
                continue
            if weight_zero and parity == 1:
                raise VerificationFailure("odd weight-zero monomial encountered")
            vecs = self._kernel(unknowns, gens, twisted)
            for v in vecs:
                elements.append(U.element({unknowns[j]: c for j, c in v.items()}))
        elements.sort(key=lambda e: (e.degree, min((len(m), m) for m, _ in e.items())))
        check = self.is_anticentral if twisted else self.is_central
        for e in elements:
            if not check(e):
                raise VerificationFailure(f"{kind} element fails the full-basis check: {e}")
        basis = CenterBasis(kind, self.alg.n, d, elements)
        log.info("%s n=%d d=%d: %d unknowns, dimension %d", kind, self.alg.n, d, len(monos), len(elements))
        self._solves[key] = basis
        return basis

    def _kernel(self, unknowns: list[Monomial], gens: Sequence[int], twisted: bool) -> list[dict[int, int]]:
        U = self.uea
        rowkey: dict[tuple[int, Monomial], int] = {}
        rows: list[dict[int, Fraction]] = []
        for j, m in enumerate(unknowns):
            mono = U.element({m: 1})
            for g in gens:
                img = U.adjoint_gen(g, mono, twisted=twisted)
                for m2, c in img.items():
                    r = rowkey.setdefault((g, m2), len(rows))
                    if r == len(rows):
                        rows.append({})
                    rows[r][j] = c
        return sparse_kernel_basis(rows, len(unknowns))

    def compute_center(self, d: int, weight_zero: bool = True) -> CenterBasis:
        return self._solve("center", d, weight_zero)

    def compute_anticenter(self, d: int, weight_zero: bool = True) -> CenterBasis:
        return self._solve("anticenter", d, weight_zero)

    # -- the Casimir ghost ----------------------------------------------------

    def casimir_ghost(self) -> UEAElement:
        """The unique T in A ∩ F_2n whose shifted Harish-Chandra image is h_1...h_n."""
        if self._ghost is not None:
            return self._ghost
        n = self.alg.n
        basis = self.compute_anticenter(2 * n).elements
        images = [harish_chandra(a) for a in basis]
        target = HCPolynomial.product_of_variables(n)
        keys = sorted({e for p in images + [target] for e in p.terms})
        vecs = [[p.terms.get(k, 0) for k in keys] for p in images]
        ok, coeffs = in_span([target.terms.get(k, 0) for k in keys], vecs)
        if not ok:
            raise VerificationFailure("no anticentral element of degree <= 2n has image h_1...h_n")
        ech = SparseEchelon()
        if not all(ech.add(p.terms) for p in images):
            raise VerificationFailure("Casimir ghost is not unique at degree 2n")
        T = self.uea.zero()
        for c, a in zip(coeffs, basis):
            if c:
                T = T + a * c
        self._ghost = T
        return T

    def ghost_center_basis(self, d: int) -> list[UEAElement]:
        return self.compute_center(d).elements + self.compute_anticenter(d).elements

    def anticenter_equals_center_times_ghost(self, d: int) -> bool:
        """A ∩ F_d equals span{z T : z in Z ∩ F_d} ∩ F_d."""
        T = self.casimir_ghost()
        prods = [z * T for z in self.compute_center(d).elements]
        high = sorted({m for p in prods for m, _ in p.items() if len(m) > d})
        hrow = {m: i for i, m in enumerate(high)}
        rows: list[dict[int, Fraction]] = [dict() for _ in high]
        for j, p in enumerate(prods):
            for m, c in p.items():
                if m in hrow:
                    rows[hrow[m]][j] = c
        combos = sparse_kernel_basis(rows, len(prods))
        lhs = SparseEchelon()
        for v in combos:
            acc: dict[Monomial, Fraction] = {}
            for j, c in v.items():
                for m, x in prods[j].items():
                    acc[m] = acc.get(m, 0) + c * x
            lhs.add(acc)
        rhs = SparseEchelon()
        for a in self.compute_anticenter(d).elements:
            rhs.add(a.terms)
        return lhs.same_span(rhs)

    def express(self, target: UEAElement, spanning: Sequence[UEAElement]) -> list[Fraction] | None:
        """Coefficients writing ``target`` in terms of ``spanning`` (None if impossible)."""
        keys = sorted({m for e in list(spanning) + [target] for m, _ in e.items()}, key=lambda m: (len(m), m))
        vecs = [[e.coefficient(k) for k in keys] for e in spanning]
        ok, coeffs = in_span([target.coefficient(k) for k in keys], vecs)
        return coeffs if ok else None


_SOLVERS: dict[int, CenterSolver] = {}


def solver_for(alg: OspAlgebra) -> CenterSolver:
    if id(alg) not in _SOLVERS:
        _SOLVERS[id(alg)] = CenterSolver(alg)
    return _SOLVERS[id(alg)]


def pinczon_constants(solver: CenterSolver) -> dict[str, Fraction]:
    """n = 1: T = a Q + b C + c and T^2 = p C + q, solved exactly."""
    if solver.alg.n != 1:
        raise ValueError("the Pinczon identity is an n = 1 statement")
    U = solver.uea
    T = solver.casimir_ghost()
    C = solver.casimir()
    Q = solver.casimir_even()
    lin = solver.express(T, [Q, C, U.one()])
    sq = solver.express(T * T, [C, U.one()])
    if lin is None or sq is None:
        raise VerificationFailure("T is not in span{Q, C, 1} or T^2 not in span{C, 1}")
    return {"T_Q": lin[0], "T_C": lin[1], "T_1": lin[2], "T2_C": sq[0], "T2_1": sq[1]}
