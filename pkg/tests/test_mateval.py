import numpy as np
import pytest

from ncfun import (
    INV,
    GenPoly,
    MatTuple,
    NCPoly,
    TracePoly,
    centralizer,
    conjugate,
    direct_sum,
    eval_genpoly,
    eval_ncpoly,
    eval_tracepoly,
    eval_word,
    generated_algebra,
    orthonormalize,
    parse_word,
    random_group_element,
    random_mattuple,
    subspace_residual,
    sym_matrix_function,
)
from ncfun.mateval import matrix_units


def e(n, i, j):
    m = np.zeros((n, n))
    m[i - 1, j - 1] = 1.0
    return m


def test_eval_word_examples():
    X = MatTuple([e(2, 1, 2)])
    assert np.array_equal(eval_word((), X), np.eye(2))
    assert np.array_equal(eval_word(parse_word("x1 x1*"), X), e(2, 1, 1))
    Y = MatTuple([e(3, 1, 2), e(3, 2, 3)])
    assert np.array_equal(eval_word(parse_word("x1 x2"), Y), e(3, 1, 3))


def test_eval_word_multiplicative():
    rng = np.random.default_rng(0)
    from ncfun.words import words_of_degree

    X = random_mattuple(2, 3, rng)
    ws = list(words_of_degree(2, 2, True))
    for u in ws[:6]:
        for v in ws[6:12]:
            lhs = eval_word(u + v, X)
            rhs = eval_word(u, X) @ eval_word(v, X)
            assert np.linalg.norm(lhs - rhs) <= 1e-10 * max(1, np.linalg.norm(rhs))


def test_eval_word_involution_transpose():
    rng = np.random.default_rng(1)
    from ncfun.words import word_involution, words_of_degree

    X = random_mattuple(2, 3, rng)
    Z = random_mattuple(2, 3, rng, field="complex")
    for w in list(words_of_degree(2, 3, True))[:20]:
        assert np.linalg.norm(eval_word(word_involution(w), X) - eval_word(w, X).T) < 1e-12
        assert np.linalg.norm(eval_word(word_involution(w), Z) - eval_word(w, Z).conj().T) < 1e-12


def test_eval_ncpoly_examples():
    p = TracePoly({((parse_word("x1"),), ()): 1})
    X = MatTuple([np.diag([1.0, 2.0])])
    assert np.allclose(eval_tracepoly(p, X), 3 * np.eye(2))
    comm = NCPoly.variable(1) * NCPoly.variable(2) - NCPoly.variable(2) * NCPoly.variable(1)
    Y = MatTuple([np.diag([1.0, 2.0]), np.diag([3.0, -1.0])])
    assert np.allclose(eval_ncpoly(comm, Y), 0)
    q = TracePoly({((parse_word("x1 x1*"),), parse_word("x1")): 1}, INV)
    Z = MatTuple([e(2, 1, 2)])
    assert np.allclose(eval_tracepoly(q, Z), e(2, 1, 2))


def test_eval_similarity_covariance():
    rng = np.random.default_rng(2)
    p_free = NCPoly.variable(1) * NCPoly.variable(2) + NCPoly.variable(2).scale(0.5)
    p_inv = NCPoly.variable(1, mode=INV) * NCPoly.variable(1, True) - NCPoly.variable(2, mode=INV)
    for _ in range(10):
        X = random_mattuple(2, 3, rng)
        s_gl = random_group_element("GL", 3, rng)
        lhs = eval_ncpoly(p_free, conjugate(X, s_gl))
        rhs = s_gl @ eval_ncpoly(p_free, X) @ np.linalg.inv(s_gl)
        assert np.linalg.norm(lhs - rhs) < 1e-8 * max(1, np.linalg.norm(rhs))
        s_o = random_group_element("O", 3, rng)
        lhs = eval_ncpoly(p_inv, conjugate(X, s_o, group="O"))
        rhs = s_o @ eval_ncpoly(p_inv, X) @ s_o.T
        assert np.linalg.norm(lhs - rhs) < 1e-8


def test_direct_sum_multiplicativity_and_trace_failure():
    rng = np.random.default_rng(3)
    p = NCPoly.variable(1) * NCPoly.variable(1) + NCPoly.variable(1).scale(2.0)
    X, Y = random_mattuple(1, 2, rng), random_mattuple(1, 3, rng)
    lhs = eval_ncpoly(p, direct_sum(X, Y))
    rhs = np.zeros((5, 5))
    rhs[:2, :2] = eval_ncpoly(p, X)
    rhs[2:, 2:] = eval_ncpoly(p, Y)
    assert np.linalg.norm(lhs - rhs) < 1e-12
    # trace polynomials are NOT direct-sum compatible: tr doubles under
    # block stacking, which is why free maps correspond to free
    # polynomials rather than trace polynomials
    t = TracePoly({((parse_word("x1"),), ()): 1})
    tl = eval_tracepoly(t, direct_sum(X, X))
    tr_ = np.zeros((4, 4))
    tr_[:2, :2] = eval_tracepoly(t, X)
    tr_[2:, 2:] = eval_tracepoly(t, X)
    assert np.linalg.norm(tl - tr_) > 0.1 * abs(np.trace(X.mats[0]))


def test_eval_genpoly_worked_block_example():
    rng = np.random.default_rng(4)
    A, B = rng.standard_normal((4, 4)), rng.standard_normal((4, 4))
    p = GenPoly.monomial([e(2, 1, 1), e(2, 1, 2), e(2, 2, 2)], parse_word("x1 x2"))
    val = eval_genpoly(p, MatTuple([A, B]))
    # the displayed block computation: e_12 tensor A_11 B_22
    want = np.kron(e(2, 1, 2), A[:2, :2] @ B[2:, 2:])
    assert np.allclose(val, want)


def test_eval_genpoly_scalar_coefficients():
    rng = np.random.default_rng(5)
    X = random_mattuple(2, 4, rng)
    p = GenPoly.from_ncpoly(NCPoly.variable(1) * NCPoly.variable(2), 2).scale(1.5)
    assert np.allclose(eval_genpoly(p, X), 1.5 * X.mats[0] @ X.mats[1])


def test_eval_genpoly_uniqueness_oracle():
    rng = np.random.default_rng(6)
    mats = [rng.standard_normal((2, 2)) for _ in range(3)]
    p = GenPoly.monomial(mats, parse_word("x1 x1"))
    split = GenPoly.monomial([mats[0], 0.25 * mats[1], mats[2]], parse_word("x1 x1")) + \
        GenPoly.monomial([mats[0], 0.75 * mats[1], mats[2]], parse_word("x1 x1"))
    assert p.max_basis_diff(split) < 1e-12
    s = p.degree() + 1
    for _ in range(10):
        X = random_mattuple(1, 2 * s, rng)
        assert np.linalg.norm(eval_genpoly(p, X) - eval_genpoly(split, X)) < 1e-10


def test_direct_sum_and_conjugate_basics():
    rng = np.random.default_rng(7)
    X, Y = random_mattuple(2, 2, rng), random_mattuple(2, 3, rng)
    Z = direct_sum(X, Y)
    assert Z.n == 5 and Z.g == 2
    assert conjugate(X, np.eye(2)).max_diff(X) == 0
    P = np.zeros((3, 3))
    perm = [2, 0, 1]
    for i, j in enumerate(perm):
        P[i, j] = 1.0
    W = conjugate(Y, P, group="O")
    for k in range(2):
        for i in range(3):
            for j in range(3):
                assert W.mats[k][i, j] == pytest.approx(Y.mats[k][perm[i], perm[j]])


def test_conjugate_group_guards():
    X = random_mattuple(1, 2, 0)
    with pytest.raises(ValueError):
        conjugate(X, np.array([[1.0, 1.0], [0.0, 1.0]]), group="O")
    with pytest.raises(ValueError):
        conjugate(X, np.zeros((2, 2)))


def test_random_group_elements():
    for n in (1, 3, 5):
        q = random_group_element("O", n, seed=n)
        assert np.linalg.norm(q @ q.T - np.eye(n)) < 1e-12
        u = random_group_element("U", n, seed=n)
        assert np.linalg.norm(u @ u.conj().T - np.eye(n)) < 1e-12
        g = random_group_element("GL", n, seed=n)
        assert abs(np.linalg.det(g)) > 0
        assert np.isfinite(np.linalg.cond(g))
    a = random_group_element("O", 4, seed=42)
    b = random_group_element("O", 4, seed=42)
    assert np.array_equal(a, b)


def test_sym_matrix_function_values():
    # S = (pi/2)(e_1k + e_k1) satisfies S^3 = (pi/2)^2 S, so sin(S) = e_1k + e_k1
    for k in (2, 3):
        S = (np.pi / 2) * (e(3, 1, k) + e(3, k, 1))
        assert np.allclose(sym_matrix_function("sin", S), e(3, 1, k) + e(3, k, 1), atol=1e-12)
    assert np.allclose(sym_matrix_function(("pow", 0.5), np.diag([4.0, 9.0])), np.diag([2.0, 3.0]))
    assert np.allclose(sym_matrix_function("cos", np.zeros((3, 3))), np.eye(3))


def test_sym_matrix_function_guards():
    with pytest.raises(ValueError):
        sym_matrix_function("sin", np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        sym_matrix_function(("pow",  0.5), np.diag([1.0, -1.0]))
    herm = np.array([[1.0, 1j], [-1j, 2.0]])
    out = sym_matrix_function(("pow", 2.0), herm)
    assert np.allclose(out, herm @ herm)


def test_centralizer_examples():
    assert centralizer([], 3).dim == 9
    assert centralizer(matrix_units(2), 2).dim == 1
    c = centralizer([np.diag([1.0, 2.0])], 2)
    assert c.dim == 2
    assert c.residual(np.diag([3.0, -1.0])) < 1e-12
    assert c.residual(e(2, 1, 2)) == pytest.approx(1.0)


def test_generated_algebra_examples():
    A = MatTuple([e(2, 1, 2)])
    assert generated_algebra(A, with_involution=False).dim == 2
    assert generated_algebra(A, with_involution=True).dim == 4
    Z = MatTuple([np.zeros((3, 3))])
    alg = generated_algebra(Z, with_involution=True)
    assert alg.dim == 1
    assert alg.residual(np.eye(3)) < 1e-12


def test_subspace_residual_values():
    V = orthonormalize([e(2, 1, 1), e(2, 1, 2)], 2)
    assert subspace_residual(e(2, 1, 1), V) < 1e-12
    M = e(2, 2, 1).__mul__(2.0)
    assert subspace_residual(M, V) == pytest.approx(np.linalg.norm(M))
    with pytest.raises(ValueError):
        V.residual(np.zeros((3, 3)))


def test_double_centralizer_tautology():
    rng = np.random.default_rng(8)
    for n in (2, 3):
        A = random_mattuple(2, n, rng)
        alg = generated_algebra(A, with_involution=False)
        cc = centralizer(centralizer(alg.mats, n).mats, n)
        for m in A.mats:
            assert cc.residual(m) < 1e-10


def test_centralizer_inclusion_reversing():
    rng = np.random.default_rng(9)
    n = 3
    b1 = [rng.standard_normal((n, n))]
    b2 = b1 + [rng.standard_normal((n, n))]
    c1, c2 = centralizer(b1, n), centralizer(b2, n)
    for m in c2.mats:
        assert c1.residual(m) < 1e-10


def test_precento_double_centralizer_identity():
    # for a *-closed unital algebra B, C(C(B)) = B
    rng = np.random.default_rng(10)
    for n in (2, 3, 4, 5):
        A = random_mattuple(1 + n % 2, n, rng)
        B = generated_algebra(A, with_involution=True)
        cc = centralizer(centralizer(B.mats, n).mats, n)
        assert cc.dim == B.dim
        for m in cc.mats:
            assert B.residual(m) < 1e-8
        for m in B.mats:
            assert cc.residual(m) < 1e-8


def test_mattuple_guards():
    with pytest.raises(ValueError):
        MatTuple([np.zeros((2, 3))])
    with pytest.raises(ValueError):
        MatTuple([np.zeros((2, 2)), np.zeros((3, 3))])
    with pytest.raises(ValueError):
        MatTuple([np.array([[np.inf, 0], [0, 0]])])
    with pytest.raises(ValueError):
        MatTuple([np.eye(2) * 1j], field="real")
    with pytest.raises(ValueError):
        eval_word(parse_word("x3"), MatTuple([np.eye(2)]))
