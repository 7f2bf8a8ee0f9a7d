"""Standard polynomials, randomized identity testing, and the
alternating-sum machinery behind the nonuniform-convergence example.

The standard polynomial S_2k vanishes identically on M_n iff k >= n
(Amitsur-Levitzki); matrix evaluation uses a subset dynamic program
rather than expanding the (2k)! terms, and works with exact integer or
Fraction entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .mateval import MatTuple, eval_poly, eye_like, _rng
from .poly import FREE, NCPoly, TracePoly
from .words import Word


def _perm_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def standard_polynomial(k: int, mode: str = FREE) -> NCPoly:
    """S_2k as an NCPoly in 2k variables: the signed sum over all
    (2k)! orders of x_1 ... x_2k.  Capped at k <= 6."""
    if not 1 <= k <= 6:
        raise ValueError("standard_polynomial supports 1 <= k <= 6")
    coeffs = {}
    for perm in permutations(range(2 * k)):
        w: Word = tuple((i + 1, False) for i in perm)
        coeffs[w] = _perm_sign(perm)
    return NCPoly(coeffs, mode)


def eval_standard(mats: Sequence[np.ndarray]) -> np.ndarray:
    """Evaluate S_m(A_1..A_m) by dynamic programming over subsets.

    P(S) = sum over orders of the subset S, signed; the recursion peels
    the leading factor: P(S) = sum_p (-1)^(p-1) A_{s_p} P(S - s_p).
    Exact for object-dtype inputs.
    """
    m = len(mats)
    mats = [np.asarray(a) for a in mats]
    n = mats[0].shape[0]
    zero = np.zeros((n, n), dtype=mats[0].dtype if mats[0].dtype == object else None)
    prev = {(): eye_like(n, mats[0])}
    for size in range(1, m + 1):
        cur = {}
        for S in combinations(range(m), size):
            acc = zero.copy()
            for p, i in enumerate(S):
                rest = tuple(x for x in S if x != i)
                term = mats[i].dot(prev[rest])
                acc = acc + term if p % 2 == 0 else acc - term
            cur[S] = acc
        prev = cur
    return prev[tuple(range(m))]


# -- randomized identity testing -------------------------------------


@dataclass
class IdentityReport:
    is_identity: bool
    trials: int
    level: int
    witness: Optional[MatTuple] = None
    max_residual: float = 0.0

    @property
    def verdict(self) -> str:
        return "IDENTITY" if self.is_identity else "NON-IDENTITY"


def random_int_tuple(g: int, n: int, rng, lo: int = -3, hi: int = 3) -> MatTuple:
    """Integer-entry tuple as an object array (exact arithmetic)."""
    mats = []
    for _ in range(g):
        m = rng.integers(lo, hi + 1, size=(n, n))
        mats.append(np.array([[int(v) for v in row] for row in m], dtype=object))
    return MatTuple(mats, "real")


def is_identity(
    p: NCPoly | TracePoly,
    n: int,
    trials: int = 100,
    seed=0,
    exact: bool = True,
    tol: float = 1e-9,
) -> IdentityReport:
    """Randomized test whether p vanishes identically on M_n.

    With ``exact`` the evaluations run on random integer tuples in
    exact arithmetic, so a zero verdict has no round-off caveat (a
    nonzero value is always a correct non-identity witness; the
    identity verdict is Monte Carlo).
    """
    rng = _rng(seed)
    g = p.num_vars() if isinstance(p, NCPoly) else _tracepoly_vars(p)
    g = max(g, 1)
    worst = 0.0
    for _ in range(trials):
        if exact:
            X = random_int_tuple(g, n, rng)
        else:
            from .mateval import random_mattuple

            X = random_mattuple(g, n, rng)
        val = eval_poly(p, X)
        if exact:
            nonzero = any(val[i, j] != 0 for i in range(n) for j in range(n))
            mag = float(max((abs(v) for row in val for v in row), default=0))
        else:
            mag = float(np.linalg.norm(val))
            nonzero = mag > tol
        worst = max(worst, mag)
        if nonzero:
            return IdentityReport(False, trials, n, witness=X, max_residual=worst)
    return IdentityReport(True, trials, n, max_residual=worst)


def _tracepoly_vars(p: TracePoly) -> int:
    out = 0
    for (pure, tail) in p.coeffs:
        for w in pure:
            out = max(out, max((k for (k, _) in w), default=0))
        out = max(out, max((k for (k, _) in tail), default=0))
    return out


def find_nonidentity_witness(
    p: NCPoly, n: int, trials: int = 50, seed=0
) -> Optional[MatTuple]:
    """Random integer tuple on which p does not vanish, or None."""
    rep = is_identity(p, n, trials=trials, seed=seed, exact=True)
    return rep.witness


# -- the nonuniform-convergence example -------------------------------


def z_poly(i: int, j: int) -> NCPoly:
    """z_ij = x3^2 x2^(i-1) x1^(j-1) - x2^i x1^j, homogeneous of degree i+j."""
    x1 = NCPoly.variable(1)
    x2 = NCPoly.variable(2)
    x3 = NCPoly.variable(3)
    return x3 * x3 * x2 ** (i - 1) * x1 ** (j - 1) - x2**i * x1**j


def hk_arg_indices(k: int) -> List[Tuple[int, int]]:
    """Index pairs of the 2k arguments fed to S_2k."""
    args = [(1, 1)]
    for j in range(2, k + 1):
        args.append((j, j))
        args.append((j - 1, j))
    args.append((k + 1, k + 1))
    return args


def hk_degree(k: int) -> int:
    """Degree of h_k: the sum of the argument degrees deg z_ij = i + j,
    since each monomial of S_2k uses every argument exactly once."""
    return sum(i + j for (i, j) in hk_arg_indices(k))


def hk_poly(k: int) -> NCPoly:
    """h_k = S_2k(z_11, z_22, z_12, ..., z_kk, z_{k-1,k}, z_{k+1,k+1}),
    expanded symbolically.  Feasible for k <= 3."""
    if k > 3:
        raise ValueError("symbolic h_k expansion is only supported for k <= 3")
    args = [z_poly(i, j) for (i, j) in hk_arg_indices(k)]
    out = NCPoly.zero(FREE)
    for perm in permutations(range(2 * k)):
        term = NCPoly.one(FREE)
        for idx in perm:
            term = term * args[idx]
        out = out + (term if _perm_sign(perm) > 0 else -term)
    return out


def hk_eval(k: int, X: MatTuple) -> np.ndarray:
    """Evaluate h_k on a 3-tuple without symbolic expansion."""
    if X.g != 3:
        raise ValueError("h_k takes a 3-tuple")
    zs = [eval_poly(z_poly(i, j), X) for (i, j) in hk_arg_indices(k)]
    return eval_standard(zs)


def nonuniform_witness(n: int, exact: bool = True) -> MatTuple:
    """The (n+1) x (n+1) witness tuple for the nonuniform example:
    x1 the up-shift, x2 the down-shift, x3 = I + (1/2) e_{n,n+1}.

    The half coefficient makes x3^2 = I + e_{n,n+1} hold exactly, which
    is what the example's evaluations z_ii = e_ii + e_{n,n+1} and
    h_n = (-1)^(n-1) (n+1) e_{1,n+1} require.
    """
    N = n + 1
    if exact:
        x1 = np.zeros((N, N), dtype=object)
        x2 = np.zeros((N, N), dtype=object)
        x3 = np.zeros((N, N), dtype=object)
        for i in range(N):
            x3[i, i] = Fraction(1)
        for i in range(n):
            x1[i, i + 1] = Fraction(1)
            x2[i + 1, i] = Fraction(1)
        x3[n - 1, n] = x3[n - 1, n] + Fraction(1, 2)
        return MatTuple([x1, x2, x3], "real")
    x1 = np.diag(np.ones(n), 1)
    x2 = np.diag(np.ones(n), -1)
    x3 = np.eye(N)
    x3[n - 1, n] += 0.5
    return MatTuple([x1, x2, x3], "real")


def nonuniform_scale(n: int) -> float:
    """Half-radius r'/2 with (n+1)! (r'/2)^(deg h_n) = pi/2."""
    d = hk_degree(n)
    target = np.pi / 2.0
    logv = (np.log(target) - sum(np.log(np.arange(2, n + 2)))) / d
    return float(np.exp(logv))
