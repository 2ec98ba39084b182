from fractions import Fraction

import pytest

from ghostw.centers import CenterSolver, gram_dual, pinczon_constants, solver_for
from ghostw.hc import HCPolynomial, harish_chandra, invariant_basis
from ghostw.osp import build_osp


def test_casimir_n1(osp1):
    S = solver_for(osp1)
    C = S.casimir()
    assert S.is_central(C)
    assert C.degree == 2 and C.weight() == (0,)
    h = HCPolynomial.variable(1, 1)
    # chi_lambda(C) = x(x+1)/2, shifted by sigma
    assert harish_chandra(C) == (h * h) * Fraction(1, 2) - Fraction(1, 8)


def test_gram_dual(osp2):
    idx = list(range(osp2.dim))
    dual = gram_dual(osp2, idx)
    for a, d in zip(idx, dual):
        for b in idx:
            val = sum(c * osp2.form_basis(b, k) for k, c in d.items())
            assert val == (1 if a == b else 0)


def test_small_degrees_n1(osp1):
    S = CenterSolver(osp1)
    assert S.compute_center(0).dimension == 1
    assert S.compute_anticenter(0).dimension == 0
    assert S.compute_center(2).dimension == 2
    assert S.compute_anticenter(2).dimension == 1
    assert len(S.ghost_center_basis(2)) == 3


@pytest.mark.parametrize("n,center,anti", [
    (1, [1, 1, 2, 2, 3], [0, 0, 1, 1, 2]),
    (2, [1, 1, 2, 2, 4], [0, 0, 0, 0, 1]),
])
def test_filtered_dimensions(n, center, anti):
    """Oracle: HC is a filtered bijection onto W-invariants, and A = Z T with deg T = 2n."""
    alg = build_osp(n)
    S = solver_for(alg)
    inv = [len(invariant_basis(n, d)) for d in range(5)]
    assert center == inv
    assert anti == [inv[d - 2 * n] if d >= 2 * n else 0 for d in range(5)]
    assert S.compute_center(4).filtered_dimensions() == center
    assert S.compute_anticenter(4).filtered_dimensions() == anti


@pytest.mark.parametrize("n", [1, 2])
def test_casimir_ghost(n):
    alg = build_osp(n)
    S = solver_for(alg)
    T = S.casimir_ghost()
    assert T.degree == 2 * n
    assert S.is_anticentral(T)
    assert not S.is_central(T)
    assert harish_chandra(T) == HCPolynomial.product_of_variables(n)
    T2 = T * T
    assert S.is_central(T2)
    assert harish_chandra(T2) == HCPolynomial.product_of_variables(n, 2)
    assert S.express(T2, S.compute_center(4).elements) is not None
    for z in S.compute_center(2).elements:
        assert S.is_anticentral(z * T)
    assert S.anticenter_equals_center_times_ghost(4)


def test_ghost_n1_explicit(osp1):
    S = solver_for(osp1)
    U = S.uea
    T = S.casimir_ghost()
    expected = U.normal_order(["u(-e1)", "u(e1)"], -2) + U.gen("h1") + U.scalar(Fraction(1, 2))
    assert T == expected


def test_pinczon_constants(osp1):
    """Oracle: HC(C) = h^2/2 - 1/8, HC(Q) = (h^2 + h - 3/4)/2, HC(T) = h solve to these scalars."""
    c = pinczon_constants(solver_for(osp1))
    assert (c["T_Q"], c["T_C"], c["T_1"]) == (2, -2, Fraction(1, 2))
    assert (c["T2_C"], c["T2_1"]) == (2, Fraction(1, 4))
    S = solver_for(osp1)
    h = HCPolynomial.variable(1, 1)
    assert harish_chandra(S.casimir_even()) == (h * h + h - Fraction(3, 4)) * Fraction(1, 2)


def test_pinczon_rejects_n2(osp2):
    with pytest.raises(ValueError):
        pinczon_constants(solver_for(osp2))


def test_negative_degree(osp1):
    with pytest.raises(ValueError):
        CenterSolver(osp1).compute_center(-1)


def test_unrestricted_solve_agrees_n1(osp1):
    S = CenterSolver(osp1)
    for kind in ("center", "anticenter"):
        for d in range(4):
            a = S._solve(kind, d, weight_zero=False).elements
            b = S._solve(kind, d, weight_zero=True).elements
            assert len(a) == len(b)
            for e in a:
                assert S.express(e, b) is not None
