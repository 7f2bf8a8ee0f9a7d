import math

import numpy as np
import pytest

from ncfun import (
    INV,
    DomainError,
    FreeMapOracle,
    MatTuple,
    NCPoly,
    builtin_map,
    check_commutator_identity,
    check_did_block,
    check_direct_sums,
    check_similarity,
    check_triangular_identity,
    directional_derivative,
    oracle_from_ncpoly,
    random_mattuple,
    symbolic_directional_derivative,
)
from ncfun.oracle import DEFAULT_LEVELS, random_ncpoly


def e(n, i, j):
    m = np.zeros((n, n))
    m[i - 1, j - 1] = 1.0
    return m


def ivar(k, starred=False):
    return NCPoly.variable(k, starred, mode=INV)


def test_oracle_from_ncpoly_basics():
    ident = oracle_from_ncpoly(NCPoly.variable(1))
    assert ident.group == "GL" and ident.smoothness == ("polynomial", 1)
    X = random_mattuple(1, 3, 0)
    assert ident(X).max_diff(X) == 0

    f = oracle_from_ncpoly(ivar(1) * ivar(1, True))
    assert f.group == "O"
    assert np.allclose(f(MatTuple([e(2, 1, 2)])).mats[0], e(2, 1, 1))

    comm = oracle_from_ncpoly(
        NCPoly.variable(1) * NCPoly.variable(2) - NCPoly.variable(2) * NCPoly.variable(1)
    )
    assert np.allclose(comm(MatTuple([np.array([[2.0]]), np.array([[-3.0]])])).mats[0], 0)


def test_builtin_values():
    p = builtin_map("pow_xxt", alpha=0.5)
    assert np.allclose(p(MatTuple([np.array([[-3.0]])])).mats[0], 3.0)
    s = builtin_map("sinxxt")
    X = MatTuple([np.diag([np.sqrt(np.pi / 2), 0.0])])
    assert np.allclose(s(X).mats[0], np.diag([1.0, 0.0]), atol=1e-12)
    assert builtin_map("pow_xxt", m=3).smoothness == "continuous"
    assert builtin_map("pow_xxt", alpha=1.5).smoothness == ("Ck", 1)
    assert builtin_map("pow_xxt", alpha=2.0).smoothness == ("polynomial", 4)
    with pytest.raises(ValueError):
        builtin_map("pow_xxt", m=1)
    with pytest.raises(ValueError):
        builtin_map("nope")


def test_check_direct_sums():
    f = oracle_from_ncpoly(random_ncpoly(2, 3, INV, seed=1))
    rep = check_direct_sums(f, trials=10, tol=1e-10, seed=0)
    assert rep.passed and rep.max_violation < 1e-10

    def trace_eval(X):
        return MatTuple([np.trace(X.mats[0]) * np.eye(X.n)], X.field)

    tr_oracle = FreeMapOracle(1, 1, trace_eval, group="GL", smoothness=("polynomial", 1))
    rep2 = check_direct_sums(tr_oracle, trials=10, tol=1e-8, seed=0)
    assert not rep2.passed and rep2.witnesses
    # violation magnitude matches |tr Y| on a hand-checked witness
    X = MatTuple([np.eye(1)])
    Y = MatTuple([2 * np.eye(1)])
    from ncfun.mateval import direct_sum

    lhs = tr_oracle(direct_sum(X, Y)).mats[0]
    rhs = np.diag([1.0, 2.0])
    assert np.linalg.norm(lhs - rhs, 2) == pytest.approx(2.0)  # tr doubles

    rep3 = check_direct_sums(builtin_map("pow_xxt", m=3), trials=10, tol=1e-8, seed=0)
    assert rep3.passed


def test_check_similarity_groups():
    f = oracle_from_ncpoly(ivar(1) * ivar(1, True))
    assert check_similarity(f, "O", trials=10, tol=1e-8, seed=0).passed
    rep = check_similarity(f, "GL", trials=25, tol=1e-8, seed=0)
    assert not rep.passed
    assert rep.max_violation > 0.01  # transpose covariance breaks under GL
    g = oracle_from_ncpoly(NCPoly.variable(1) * NCPoly.variable(2))
    assert check_similarity(g, "GL", trials=10, tol=1e-8, seed=0).passed


def test_directional_derivative_values():
    rng = np.random.default_rng(2)
    X = random_mattuple(1, 3, rng)
    H = random_mattuple(1, 3, rng)
    f = oracle_from_ncpoly(NCPoly.variable(1) ** 2)
    want = X.mats[0] @ H.mats[0] + H.mats[0] @ X.mats[0]
    sym = symbolic_directional_derivative(f, X, H)
    assert np.linalg.norm(sym.mats[0] - want) < 1e-13
    est, err = directional_derivative(f, X, H)
    assert np.linalg.norm(est.mats[0] - want) < 1e-8 and err < 1e-6

    const = oracle_from_ncpoly(NCPoly.one().scale(3.0))
    assert symbolic_directional_derivative(const, X, H).max_diff(
        MatTuple([np.zeros((3, 3))])
    ) == 0

    g = oracle_from_ncpoly(ivar(1) * ivar(1, True))
    want2 = X.mats[0] @ H.mats[0].T + H.mats[0] @ X.mats[0].T
    assert np.linalg.norm(symbolic_directional_derivative(g, X, H).mats[0] - want2) < 1e-13
    est2, _ = directional_derivative(g, X, H)
    assert np.linalg.norm(est2.mats[0] - want2) < 1e-8


def test_triangular_identity():
    rng = np.random.default_rng(3)
    X = random_mattuple(1, 2, rng)
    H = random_mattuple(1, 2, rng)
    assert check_triangular_identity(oracle_from_ncpoly(NCPoly.variable(1) ** 2), X, H).passed
    # f = x1: the (1,2) block is exactly H
    f1 = oracle_from_ncpoly(NCPoly.variable(1))
    from ncfun.oracle import _block_upper

    val = f1(_block_upper(X, H)).mats[0]
    assert np.array_equal(val[:2, 2:], H.mats[0])
    # f = x1^3 with H = I: derivative block is 3 X^2
    f3 = oracle_from_ncpoly(NCPoly.variable(1) ** 3)
    I = MatTuple([np.eye(2)])
    val3 = f3(_block_upper(X, I)).mats[0]
    assert np.linalg.norm(val3[:2, 2:] - 3 * np.linalg.matrix_power(X.mats[0], 2)) < 1e-12


def test_commutator_identity():
    rng = np.random.default_rng(4)
    X = random_mattuple(1, 3, rng)
    a = rng.standard_normal((3, 3))
    a = a - a.T
    f = oracle_from_ncpoly(ivar(1) * ivar(1, True))
    assert check_commutator_identity(f, X, a).passed
    assert check_commutator_identity(f, X, np.zeros((3, 3))).max_violation < 1e-14
    with pytest.raises(ValueError):
        check_commutator_identity(f, X, np.eye(3))
    # block instance with X1 = X2: off-diagonals vanish
    assert check_did_block(f, X, X).max_violation < 1e-10
    Y = random_mattuple(1, 3, rng)
    assert check_did_block(f, X, Y).passed


def test_every_builtin_passes_axioms():
    builtins = [
        builtin_map("pow_xxt", m=3),
        builtin_map("pow_xxt", alpha=1.5),
        builtin_map("sinxxt"),
        builtin_map("smooth_nonanalytic", J=20),
        builtin_map("nonuniform"),
    ]
    for f in builtins:
        assert check_direct_sums(f, DEFAULT_LEVELS, trials=25, tol=1e-7, seed=0).passed, f.name
        assert check_similarity(f, "O", levels=(1, 2, 3), trials=25, tol=1e-7, seed=0).passed, f.name


def test_pow_nondifferentiability_at_zero():
    # (x x^t)^(1/3): |f(h)|/h = h^(-1/3) grows through six decades
    f = builtin_map("pow_xxt", m=3)
    quots = []
    for k in range(1, 7):
        h = 10.0 ** (-k)
        quots.append(float(np.linalg.norm(f(MatTuple([np.array([[h]])])).mats[0], 2)) / h)
    assert all(b > a for a, b in zip(quots, quots[1:]))
    assert quots[-1] > 50


def test_pow_three_halves_quotient_scalings():
    # true behavior of (x x^t)^{3/2} = |x|^3 on scalar slices: first
    # quotients vanish, second quotients vanish (the map is C^{1,1}; its
    # failure to be C^2 is a derivative discontinuity, not a blow-up),
    # and only the fourth-order quotient diverges, like 8/h
    f = builtin_map("pow_xxt", alpha=1.5)

    def val(t):
        return float(f(MatTuple([np.array([[t]])])).mats[0][0, 0])

    first, second, fourth = [], [], []
    for k in range(1, 7):
        h = 10.0 ** (-k)
        first.append(abs(val(h) - val(0)) / h)
        second.append(abs(val(h) - 2 * val(0) + val(-h)) / h**2)
        fourth.append(
            abs(val(2 * h) - 4 * val(h) + 6 * val(0) - 4 * val(-h) + val(-2 * h)) / h**4
        )
    assert max(first) < 1.0
    assert all(b < a for a, b in zip(second, second[1:]))  # converges to 0
    assert all(b > a for a, b in zip(fourth, fourth[1:]))  # diverges
    assert fourth[0] == pytest.approx(8.0 / 0.1, rel=1e-6)


def test_smooth_nonanalytic_growth_sequence():
    vals = [
        math.exp(-math.sqrt(n) + n * math.log(n) - math.lgamma(n + 1)) for n in (4, 9, 16, 25)
    ]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_domain_radius_enforced():
    f = FreeMapOracle(
        1, 1, lambda X: X, group="GL", smoothness="analytic", radius=0.5
    )
    with pytest.raises(DomainError):
        f(MatTuple([np.eye(2)]))
    assert f(MatTuple([0.1 * np.eye(2)])).max_diff(MatTuple([0.1 * np.eye(2)])) == 0


def test_arity_guard():
    f = oracle_from_ncpoly(NCPoly.variable(1) * NCPoly.variable(2))
    with pytest.raises(ValueError):
        f(MatTuple([np.eye(2)]))


def test_unitary_mode_oracle():
    # complex scalars with conjugate-transpose involution: x1 x1^* is a
    # U-free map and passes the U-similarity check
    p = ivar(1) * ivar(1, True)
    f = oracle_from_ncpoly(p, field="complex")
    assert f.group == "U"
    rep = check_similarity(f, "U", levels=(1, 2, 3), trials=15, tol=1e-8, seed=0)
    assert rep.passed
    assert check_direct_sums(f, trials=10, tol=1e-10, seed=1).passed
    Z = random_mattuple(1, 2, 3, field="complex")
    val = f(Z).mats[0]
    assert np.allclose(val, Z.mats[0] @ Z.mats[0].conj().T)


def test_second_order_directional_derivative():
    # d^2/dt^2 (X + tH)^3 at t=0 equals 2(XHH + HXH + HHX)
    rng = np.random.default_rng(6)
    X = random_mattuple(1, 3, rng)
    H = random_mattuple(1, 3, rng)
    f = oracle_from_ncpoly(NCPoly.variable(1) ** 3)
    est, err = directional_derivative(f, X, H, order=2)
    x, h = X.mats[0], H.mats[0]
    want = 2 * (x @ h @ h + h @ x @ h + h @ h @ x)
    assert np.linalg.norm(est.mats[0] - want) < 1e-6 * max(1, np.linalg.norm(want))
    assert err < 1e-4
    with pytest.raises(ValueError):
        directional_derivative(f, X, H, order=3)
