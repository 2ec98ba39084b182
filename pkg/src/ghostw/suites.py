"""Verification suites.  Each returns a list of assertion records

    {"name": ..., "status": "pass" | "fail", "witness": ...}

with JSON-ready witnesses only (no timings), so reports are reproducible.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable

from .centers import VerificationFailure, pinczon_constants, solver_for
from .exactmath import RationalMatrix, SparseEchelon, format_rational, rank
from .hc import (
    HCPolynomial,
    central_character,
    dot_action,
    harish_chandra,
    in_D,
    invariant_basis,
    is_invariant,
    weyl_group,
)
from .osp import EVEN, ODD, OspAlgebra, centralizer_dimension
from .uea import uea_for
from .whittaker import (
    filtered_comparison,
    miura_injective,
    miura_report,
    model_for,
    module_check,
    verify_ghost_isomorphism,
)


def record(name: str, ok: bool | None, witness=None) -> dict:
    """ok=None marks a check that does not apply."""
    out = {"name": name, "status": "skipped" if ok is None else ("pass" if ok else "fail")}
    if witness is not None:
        out["witness"] = witness
    return out


def _sign(p: int, q: int) -> int:
    return -1 if p and q else 1


def _triples(alg: OspAlgebra, rng: random.Random, samples: int):
    idx = range(alg.dim)
    if alg.n == 1:
        return list(itertools.product(idx, repeat=3))
    return [(rng.randrange(alg.dim), rng.randrange(alg.dim), rng.randrange(alg.dim)) for _ in range(samples)]


# -- structure -----------------------------------------------------------------

def structure_suite(alg: OspAlgebra, rng: random.Random, samples: int = 500) -> list[dict]:
    out = []
    P = alg.parity
    e = alg.basis_element
    br = alg.bracket
    triples = _triples(alg, rng, samples)

    bad = []
    for a, b, c in triples:
        lhs = br(e(a), br(e(b), e(c)))
        rhs = br(br(e(a), e(b)), e(c)) + _sign(P[a], P[b]) * br(e(b), br(e(a), e(c)))
        if lhs != rhs:
            bad.append([a, b, c])
    out.append(record("super_jacobi", not bad, {"triples": len(triples), "failures": bad[:10]}))

    bad = [[a, b, c] for a, b, c in triples if alg.form(br(e(a), e(b)), e(c)) != alg.form(e(a), br(e(b), e(c)))]
    out.append(record("form_invariance", not bad, {"triples": len(triples), "failures": bad[:10]}))

    bad = []
    for a in range(alg.dim):
        for b in range(alg.dim):
            f = alg.form_basis(a, b)
            if f and P[a] != P[b]:
                bad.append([a, b])
            elif f != _sign(P[a], P[b]) * alg.form_basis(b, a):
                bad.append([a, b])
    out.append(record("form_even_supersymmetric", not bad, {"failures": bad[:10]}))

    # (1) degrees add under the bracket
    bad = []
    for a in range(alg.dim):
        for b in range(alg.dim):
            for k, _ in alg.bracket_basis(a, b):
                if alg.deg2[k] != alg.deg2[a] + alg.deg2[b]:
                    bad.append([a, b])
    out.append(record("grading_bracket_additive", not bad, {"failures": bad[:10]}))

    f = alg.f_prin
    out.append(record("grading_f_in_degree_minus_one", f.degree2 == -2 and f.parity == EVEN))

    # (3) ad f: g_j -> g_{j-1} injective for j >= 1/2, surjective for j <= 1/2
    degs = sorted(set(alg.deg2))
    ranks = {}
    ok3 = True
    for d2 in degs:
        src = alg.degree_part(d2)
        tgt = alg.degree_part(d2 - 2)
        ents = {}
        for j, s in enumerate(src):
            for k, v in br(f, e(s)).coords:
                if alg.deg2[k] != d2 - 2:
                    ok3 = False
                ents[(tgt.index(k), j)] = v
        r = rank(RationalMatrix(len(tgt), len(src), ents)) if tgt and src else 0
        ranks[str(Fraction(d2, 2))] = r
        if d2 >= 1 and r != len(src):
            ok3 = False
        if d2 <= 1 and r != len(tgt):
            ok3 = False
    out.append(record("grading_ad_f_inj_surj", ok3, {"ranks": ranks}))

    bad = [[a, b] for a in range(alg.dim) for b in range(alg.dim)
           if alg.form_basis(a, b) and alg.deg2[a] + alg.deg2[b] != 0]
    out.append(record("grading_form_pairs_opposite_degrees", not bad, {"failures": bad[:10]}))

    dim_gf = centralizer_dimension(alg, f)
    rhs = len(alg.degree_part(0)) + len(alg.degree_part(1))
    out.append(record("grading_centralizer_dimension", dim_gf == rhs == alg.n + 1,
                      {"dim_g_f": dim_gf, "dim_g0_plus_g_half": rhs}))

    half = alg.degree_part(1)
    gram = RationalMatrix.from_rows([[alg.chi(br(e(a), e(b))) for b in half] for a in half])
    chi_u = alg.chi(br(e(alg.alpha_n_index), e(alg.alpha_n_index)))
    out.append(record("chi_nondegenerate_on_g_half", rank(gram) == len(half) == 1,
                      {"chi_bracket_u_alpha_n": format_rational(chi_u)}))
    out.append(record("chi_normalization", chi_u == 2))

    rho = alg.rho_osp()
    expected = tuple(Fraction(2 * (alg.n - i) + 1, 2) for i in range(1, alg.n + 1))
    out.append(record("rho_values", rho == expected, [format_rational(x) for x in rho]))
    return out


# -- PBW engine ----------------------------------------------------------------

def pbw_suite(alg: OspAlgebra, rng: random.Random, samples: int = 30) -> list[dict]:
    U = uea_for(alg)
    out = []

    def rand_elem(deg: int):
        acc = U.zero()
        for _ in range(3):
            word = [rng.randrange(alg.dim) for _ in range(rng.randint(0, deg))]
            acc = acc + U.normal_order(word, rng.randint(-3, 3))
        return acc

    bad = 0
    for _ in range(samples):
        a, b, c = rand_elem(2), rand_elem(2), rand_elem(2)
        if (a * b) * c != a * (b * c):
            bad += 1
    out.append(record("associativity", bad == 0, {"samples": samples, "failures": bad}))

    bad = 0
    for _ in range(samples):
        a, b = rand_elem(3), rand_elem(3)
        if (a * b).degree > max(a.degree, 0) + max(b.degree, 0):
            bad += 1
    out.append(record("filtration", bad == 0, {"samples": samples, "failures": bad}))

    bad = []
    for x in range(alg.dim):
        for y in range(alg.dim):
            lhs = U.supercommutator(U.gen(x), U.gen(y))
            rhs = U.embed(alg.bracket(alg.basis_element(x), alg.basis_element(y)))
            if lhs != rhs:
                bad.append([x, y])
    out.append(record("generators_bracket", not bad, {"failures": bad[:10]}))

    bad = []
    for x in range(alg.dim):
        if alg.parity[x] == ODD:
            sq = U.normal_order([x, x])
            half = U.embed(alg.bracket(alg.basis_element(x), alg.basis_element(x))) * Fraction(1, 2)
            if sq != half:
                bad.append(x)
    out.append(record("odd_square", not bad, {"failures": bad}))

    # weight-zero truncation agrees with the unrestricted solve at small degree
    if alg.n == 1:
        S = solver_for(alg)
        agree = True
        for kind in ("center", "anticenter"):
            for d in range(4):
                full = S._solve(kind, d, weight_zero=False).elements
                restricted = S._solve(kind, d, weight_zero=True).elements
                e1, e2 = SparseEchelon(), SparseEchelon()
                for v in full:
                    e1.add(v.terms)
                for v in restricted:
                    e2.add(v.terms)
                agree = agree and e1.same_span(e2)
        out.append(record("weight_truncation_sound", agree, {"max_degree": 3}))
    return out


# -- Harish-Chandra and the Casimir ghost ----------------------------------------

def hc_suite(alg: OspAlgebra, d: int) -> list[dict]:
    S = solver_for(alg)
    n = alg.n
    out = []
    centre = S.compute_center(d)
    anti = S.compute_anticenter(d)
    images = [harish_chandra(z) for z in centre.elements]

    out.append(record("casimir_central", S.is_central(S.casimir())))
    out.append(record("hc_weyl_invariant", all(is_invariant(p) for p in images),
                      {"elements": len(images)}))

    ech = SparseEchelon()
    inj = all(ech.add(p.terms) for p in images)
    out.append(record("hc_injective", inj, {"dimension": centre.dimension}))

    inv = SparseEchelon()
    for p in invariant_basis(n, d):
        inv.add(p.terms)
    out.append(record("hc_onto_invariants", ech.same_span(inv), {"invariants": inv.rank, "image": ech.rank}))

    try:
        T = S.casimir_ghost()
    except VerificationFailure as exc:
        out.append(record("casimir_ghost_exists_unique", False, str(exc)))
        return out
    out.append(record("casimir_ghost_exists_unique", True,
                      {"degree": T.degree, "terms": len(T), "hc": harish_chandra(T).to_json()}))
    out.append(record("casimir_ghost_anticentral", S.is_anticentral(T)))
    T2 = T * T
    out.append(record("ghost_square_central", S.is_central(T2), {"degree": T2.degree}))
    out.append(record("ghost_square_hc", harish_chandra(T2) == HCPolynomial.product_of_variables(n, 2),
                      harish_chandra(T2).to_json()))
    out.append(record("anticenter_is_center_times_ghost", S.anticenter_equals_center_times_ghost(d),
                      {"degree": d, "center": centre.filtered_dimensions(), "anticenter": anti.filtered_dimensions()}))
    return out


def pinczon_suite(alg: OspAlgebra) -> list[dict]:
    if alg.n != 1:
        return [record("pinczon_identity", None, "only defined for n = 1")]
    c = pinczon_constants(solver_for(alg))
    w = {k: format_rational(v) for k, v in c.items()}
    return [
        record("ghost_linear_in_casimirs", (c["T_Q"], c["T_C"], c["T_1"]) == (2, -2, Fraction(1, 2)), w),
        record("ghost_square_in_casimir", (c["T2_C"], c["T2_1"]) == (2, Fraction(1, 4)), w),
    ]


# -- finite W-algebra --------------------------------------------------------------

def isomorphism_suite(alg: OspAlgebra, d: int) -> tuple[list[dict], dict]:
    rep = verify_ghost_isomorphism(alg, d)
    out = list(rep["assertions"])
    mu = miura_report(alg)
    out.append(record("miura_of_G", mu["matches_expected"], {"mu_G": mu["mu_G"], "degree": mu["G_degree"]}))
    out.append(record("shifted_miura_of_G", mu["shifted_is_product"]))
    out.append(record("G_invariant", mu["G_invariant"]))
    fc = filtered_comparison(alg, d)
    out.append(record("even_invariants_match_center", fc["even_matches_center"],
                      {"invariants_even": fc["invariants_even"], "center": fc["center"]}))
    out.append(record("parity_transport", fc["center_to_even"] and fc["anticenter_to_odd"],
                      {"invariants_odd": fc["invariants_odd"], "anticenter": fc["anticenter"]}))
    out.append(record("miura_injective", miura_injective(alg, d)))
    W = model_for(alg)
    inv = W.finite_w_basis(d)
    closed = True
    for a in inv:
        for b in inv:
            if a.degree + b.degree <= d and not W.is_invariant(W.w_multiply(a, b, check=False)):
                closed = False
    out.append(record("w_product_closed", closed))
    return out, rep["dimensions"]


# -- modules -----------------------------------------------------------------------

def random_weights(alg: OspAlgebra, rng: random.Random, count: int) -> list[list[Fraction]]:
    """Half generic, half placed on a hyperplane (lambda + rho | e_i) = 0."""
    rho = alg.rho_osp()
    out = []
    for k in range(count):
        lam = [Fraction(rng.randint(-12, 12), rng.randint(1, 6)) for _ in range(alg.n)]
        if k % 2:
            i = rng.randrange(alg.n)
            lam[i] = -rho[i]
        out.append(lam)
    return out


def modules_suite(alg: OspAlgebra, rng: random.Random, count: int = 100) -> list[dict]:
    out = []
    weights = random_weights(alg, rng, count)
    res = module_check(alg, weights)
    hits = sum(1 for lam in weights if in_D(alg, lam))
    out.append(record("top_space_vs_D_vs_ghost_square", not res["mismatches"],
                      {"weights": count, "in_D": hits, "mismatches": res["mismatches"]}))
    group = weyl_group(alg.n)
    bad = []
    for lam in weights:
        w = group[rng.randrange(len(group))]
        if in_D(alg, dot_action(alg, w, lam)) != in_D(alg, lam):
            bad.append([format_rational(x) for x in lam])
    out.append(record("D_weyl_linkage_invariant", not bad, {"failures": bad}))
    # central characters are linkage invariant as well (Harish-Chandra)
    S = solver_for(alg)
    zs = S.compute_center(2 * alg.n).elements
    bad = 0
    for lam in weights[:20]:
        w = group[rng.randrange(len(group))]
        mu = dot_action(alg, w, lam)
        if any(central_character(lam, z) != central_character(mu, z) for z in zs):
            bad += 1
    out.append(record("central_character_linkage_invariant", bad == 0, {"samples": 20}))
    return out


SUITES: dict[str, Callable] = {
    "grading": structure_suite,
    "pbw": pbw_suite,
    "hc": hc_suite,
    "pinczon": pinczon_suite,
    "isomorphism": isomorphism_suite,
    "modules": modules_suite,
}
