import itertools
import random
from fractions import Fraction

import pytest
import sympy

from ghostw.osp import EVEN, ODD, build_osp, centralizer_dimension, dump_json, positive_roots


def _bilinear(i, j):
    """Invariant form on C^{1|2n}: symmetric on index 0, symplectic on +-i."""
    if i == 0 and j == 0:
        return 1
    if i > 0 and j == -i:
        return 1
    if i < 0 and j == -i:
        return -1
    return 0


def _preserves_form(mat, parity, indices):
    def act(k):
        return {r: v for (r, c), v in mat.items() if c == k}

    for u in indices:
        for v in indices:
            pu = 0 if u == 0 else 1
            lhs = sum(x * _bilinear(r, v) for r, x in act(u).items())
            lhs += (-1) ** (parity * pu) * sum(x * _bilinear(u, r) for r, x in act(v).items())
            if lhs:
                return False
    return True


@pytest.mark.parametrize("n", [1, 2, 3])
def test_dimensions(n):
    alg = build_osp(n)
    assert alg.dim == 2 * n * n + 3 * n
    assert len(positive_roots(n)) == n * n + n
    assert sum(1 for p in alg.parity if p == ODD) == 2 * n


@pytest.mark.parametrize("n", [1, 2])
def test_basis_spans_form_preserving_matrices(n):
    """Oracle: solve the osp condition on all supermatrices with sympy."""
    alg = build_osp(n)
    idx = alg.real.indices
    cells = list(itertools.product(idx, idx))
    total = 0
    for parity in (EVEN, ODD):
        mine = [c for c in cells if alg.real.entry_parity(*c) == parity]
        syms = sympy.symbols(f"x0:{len(mine)}")
        eqs = []
        for u in idx:
            for v in idx:
                pu = 0 if u == 0 else 1
                e = 0
                for (r, c), s in zip(mine, syms):
                    if c == u:
                        e += s * _bilinear(r, v)
                    if c == v:
                        e += (-1) ** (parity * pu) * s * _bilinear(u, r)
                if e != 0:
                    eqs.append(e)
        A, _ = sympy.linear_eq_to_matrix(eqs, syms)
        total += len(syms) - A.rank()
    assert total == alg.dim
    for k in range(alg.dim):
        assert _preserves_form(alg.matrix(k), alg.parity[k], idx)


def test_build_rejects_bad_n():
    for bad in (0, -1, True, 1.5):
        with pytest.raises(ValueError):
            build_osp(bad)


def test_simple_roots_n1(osp1):
    assert osp1.simple_roots() == [(1,)]
    assert osp1.parity[osp1.root_index[(1,)]] == ODD


def test_cartan_brackets(osp2):
    h1, h2 = osp2.basis_element("h1"), osp2.basis_element("h2")
    assert osp2.bracket(h1, h2).is_zero()
    for k in range(osp2.dim):
        r = osp2.root[k]
        if r is None:
            continue
        for i, h in enumerate((h1, h2)):
            assert osp2.bracket(h, osp2.basis_element(k)) == r[i] * osp2.basis_element(k)


@pytest.mark.parametrize("n", [1, 2])
def test_odd_square_is_multiple_of_long_root(n):
    alg = build_osp(n)
    u = alg.basis_element(alg.alpha_n_index)
    sq = alg.bracket(u, u)
    two = tuple([0] * (n - 1) + [2])
    assert set(sq.as_dict()) == {alg.root_index[two]}


def test_bracket_rejects_mixed(osp1):
    mixed = osp1.basis_element("h1") + osp1.basis_element("u(e1)")
    with pytest.raises(ValueError):
        osp1.bracket(mixed, osp1.basis_element("h1"))


def test_form_values(osp2):
    h1, h2 = osp2.basis_element("h1"), osp2.basis_element("h2")
    assert osp2.form(h1, h1) == 2
    assert osp2.form(h1, h2) == 0
    u = osp2.basis_element(osp2.alpha_n_index)
    assert osp2.form(u, u) == 0
    assert osp2.form_weights((1, 0), (1, 0)) == Fraction(1, 2)
    assert osp2.form_weights((1, 0), (0, 1)) == 0


def _jacobi_ok(alg, a, b, c):
    e, br, P = alg.basis_element, alg.bracket, alg.parity
    s = -1 if P[a] and P[b] else 1
    return br(e(a), br(e(b), e(c))) == br(br(e(a), e(b)), e(c)) + s * br(e(b), br(e(a), e(c)))


def test_jacobi_and_invariance_exhaustive_n1(osp1):
    for a, b, c in itertools.product(range(osp1.dim), repeat=3):
        assert _jacobi_ok(osp1, a, b, c)
        e, br = osp1.basis_element, osp1.bracket
        assert osp1.form(br(e(a), e(b)), e(c)) == osp1.form(e(a), br(e(b), e(c)))


def test_jacobi_and_invariance_sampled_n2(osp2):
    rng = random.Random(7)
    e, br = osp2.basis_element, osp2.bracket
    for _ in range(600):
        a, b, c = (rng.randrange(osp2.dim) for _ in range(3))
        assert _jacobi_ok(osp2, a, b, c)
        assert osp2.form(br(e(a), e(b)), e(c)) == osp2.form(e(a), br(e(b), e(c)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_grading(n):
    alg = build_osp(n)
    g = alg.good_grading()
    assert all(g[f"h{i}"] == 0 for i in range(1, n + 1))
    half = [lab for lab, d in g.items() if d == Fraction(1, 2)]
    assert half == [alg.labels[alg.alpha_n_index]]
    two_e1 = tuple([2] + [0] * (n - 1))
    assert g[alg.labels[alg.root_index[two_e1]]] == 2 * n - 1
    a1 = alg.simple_roots()[0]
    if n > 1:
        assert g[alg.labels[alg.root_index[tuple(-c for c in a1)]]] == -1
    # positive roots sit in positive degree
    assert all(alg.deg2[k] > 0 for k in alg.positive)


def test_principal_nilpotent(osp1, osp2):
    assert set(osp1.f_prin.as_dict()) == {osp1.index["u(-2e1)"]}
    labels = {osp2.labels[k] for k in osp2.f_prin.as_dict()}
    assert labels == {"u(-e1+e2)", "u(-2e2)"}
    for alg in (osp1, osp2):
        assert alg.f_prin.degree == -1 and alg.f_prin.parity == EVEN


@pytest.mark.parametrize("n", [1, 2, 3])
def test_centralizer_dimension(n):
    alg = build_osp(n)
    assert centralizer_dimension(alg, alg.f_prin) == n + 1


@pytest.mark.parametrize("n", [1, 2, 3])
def test_chi(n):
    alg = build_osp(n)
    u = alg.basis_element(alg.alpha_n_index)
    assert alg.chi(u) == 0
    assert alg.chi(alg.bracket(u, u)) == 2
    for k in range(alg.dim):
        if alg.deg2[k] != 2:
            assert alg.chi_table[k] == 0
    two = tuple([0] * (n - 1) + [2])
    assert alg.chi_table[alg.root_index[two]] != 0


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rho(n):
    alg = build_osp(n)
    assert alg.rho_osp() == tuple(Fraction(2 * (n - i) + 1, 2) for i in range(1, n + 1))


def test_json_roundtrip(osp1):
    import json

    data = json.loads(dump_json(osp1))
    assert data["n"] == 1 and len(data["basis"]) == 5
    assert data["degree2"] == list(osp1.deg2)
    assert dump_json(osp1) == dump_json(build_osp(1))
