"""Black-box free maps: a level-indexed evaluator with metadata, the
built-in example maps, and checkers for the free-map axioms and the
derivative identities.

Oracles are pure callables on :class:`~ncfun.mateval.MatTuple` inputs;
declared metadata (group, smoothness, radius) is advisory and verified
by the checkers, never assumed.  Out-of-domain evaluation raises
:class:`DomainError` rather than extrapolating.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from . import identities
from .mateval import (
    DEFAULT_TOL,
    MatTuple,
    _rng,
    adjoint,
    conjugate,
    direct_sum,
    eval_ncpoly,
    random_group_element,
    random_mattuple,
    sym_matrix_function,
)
from .poly import FREE, INV, NCPoly
from .words import word_has_star


class DomainError(ValueError):
    """Evaluation outside the declared per-level radius."""


Smoothness = object  # "continuous" | ("Ck", k) | "smooth" | "analytic" | ("polynomial", d)


@dataclass
class FreeMapOracle:
    g: int
    gprime: int
    evaluator: Callable[[MatTuple], MatTuple]
    field: str = "real"
    group: str = "GL"
    smoothness: Smoothness = "analytic"
    radius: object = math.inf  # float or callable level -> float
    name: str = ""
    polys: Optional[Tuple[NCPoly, ...]] = None  # symbolic backing, if any

    def radius_at(self, n: int) -> float:
        if callable(self.radius):
            return float(self.radius(n))
        return float(self.radius)

    def is_polynomial(self) -> bool:
        return isinstance(self.smoothness, tuple) and self.smoothness[0] == "polynomial"

    def poly_degree(self) -> Optional[int]:
        return self.smoothness[1] if self.is_polynomial() else None

    def __call__(self, X: MatTuple) -> MatTuple:
        if not isinstance(X, MatTuple):
            X = MatTuple(X, self.field)
        if X.g != self.g:
            raise ValueError(f"oracle expects {self.g} components, got {X.g}")
        r = self.radius_at(X.n)
        if math.isfinite(r) and X.mats[0].dtype != object and X.norm() >= r:
            raise DomainError(f"input norm {X.norm():.3g} outside radius {r:.3g} at level {X.n}")
        out = self.evaluator(X)
        if not isinstance(out, MatTuple):
            out = MatTuple(out if isinstance(out, (tuple, list)) else [out], self.field)
        return out

    def eval_component(self, X: MatTuple, j: int = 0) -> np.ndarray:
        return self(X).mats[j]


# -- constructors -----------------------------------------------------


def oracle_from_ncpoly(
    p: NCPoly | Sequence[NCPoly], field: str = "real", name: str = ""
) -> FreeMapOracle:
    """Polynomial free map; group GL when involution-free, else O/U."""
    polys = tuple(p) if isinstance(p, (tuple, list)) else (p,)
    modes = {q.mode for q in polys}
    starred = any(word_has_star(w) for q in polys for w in q.coeffs)
    if INV in modes or starred:
        group = "U" if field == "complex" else "O"
    else:
        group = "GL"
    g = max((q.num_vars() for q in polys), default=1) or 1
    d = max(q.degree() for q in polys)

    def evaluator(X: MatTuple) -> MatTuple:
        vals = [eval_ncpoly(q, X) for q in polys]
        out_field = "complex" if any(np.iscomplexobj(v) for v in vals) else X.field
        return MatTuple(vals, out_field)

    return FreeMapOracle(
        g=g,
        gprime=len(polys),
        evaluator=evaluator,
        field=field,
        group=group,
        smoothness=("polynomial", max(d, 0)),
        radius=math.inf,
        name=name or "poly",
        polys=polys,
    )


def _pow_smoothness(alpha: float) -> Smoothness:
    if alpha == int(alpha):
        return ("polynomial", 2 * int(alpha))
    if (2 * alpha) == int(2 * alpha) and alpha > 1:
        return ("Ck", int(alpha - 0.5))
    return "continuous"


def builtin_map(name: str, **params) -> FreeMapOracle:
    """Registry of the example maps.

    pow_xxt(alpha)          (x x^t)^alpha by spectral calculus
    sinxxt                  sin(x x^t)
    smooth_nonanalytic(J)   sum_j e^{-sqrt(2^j)} cos(2^j (x + x^t))
    nonuniform              sin(sum_k k! (h_k + h_k^t)), level-n sum
                            truncated at k < n (Amitsur-Levitzki)
    """
    if name == "pow_xxt":
        alpha = params.get("alpha")
        if alpha is None:
            m = params.get("m")
            if m is None or m < 2:
                raise ValueError("pow_xxt needs alpha or integer m >= 2")
            alpha = 1.0 / m
        if alpha <= 0:
            raise ValueError("pow_xxt exponent must be positive")

        def ev_pow(X: MatTuple) -> MatTuple:
            x = X.mats[0]
            return MatTuple([sym_matrix_function(("pow", alpha), x @ adjoint(x, X.field))], X.field)

        return FreeMapOracle(
            1, 1, ev_pow, group="O", smoothness=_pow_smoothness(alpha),
            name=f"pow_xxt({alpha})",
        )

    if name == "sinxxt":

        def ev_sin(X: MatTuple) -> MatTuple:
            x = X.mats[0]
            return MatTuple([sym_matrix_function("sin", x @ adjoint(x, X.field))], X.field)

        return FreeMapOracle(1, 1, ev_sin, group="O", smoothness="analytic", name="sinxxt")

    if name == "smooth_nonanalytic":
        J = params.get("J", 40)
        if J < 0:
            raise ValueError("J must be >= 0")
        weights = [(j, math.exp(-math.sqrt(2.0**j))) for j in range(J + 1)]
        weights = [(j, w) for (j, w) in weights if w > 0.0]

        def ev_smooth(X: MatTuple) -> MatTuple:
            s = X.mats[0] + adjoint(X.mats[0], X.field)
            out = np.zeros_like(np.asarray(s, dtype=float if X.field == "real" else complex))
            for j, w in weights:
                out = out + w * sym_matrix_function("cos", (2.0**j) * s)
            return MatTuple([out], X.field)

        return FreeMapOracle(
            1, 1, ev_smooth, group="O", smoothness="smooth", name=f"smooth_nonanalytic({J})"
        )

    if name == "nonuniform":

        def ev_nonuniform(X: MatTuple) -> MatTuple:
            n = X.n
            acc = np.zeros((n, n))
            for k in range(1, n):  # h_k = 0 on M_n for k >= n
                hk = np.asarray(identities.hk_eval(k, X), dtype=float)
                acc = acc + math.factorial(k) * (hk + hk.T)
            return MatTuple([sym_matrix_function("sin", acc)], X.field)

        return FreeMapOracle(3, 1, ev_nonuniform, group="O", smoothness="analytic", name="nonuniform")

    raise ValueError(f"unknown builtin map {name!r}")


def random_ncpoly(
    g: int,
    deg: int,
    mode: str = FREE,
    seed=0,
    n_terms: int = 6,
    field: str = "real",
) -> NCPoly:
    """Random sparse polynomial with coefficients in [-1, 1]."""
    rng = _rng(seed)
    from .words import words_of_degree

    coeffs = {}
    for _ in range(n_terms):
        m = int(rng.integers(0, deg + 1))
        choices = list(words_of_degree(g, m, mode == INV))
        w = choices[int(rng.integers(0, len(choices)))]
        c = rng.uniform(-1, 1)
        if field == "complex":
            c = complex(c, rng.uniform(-1, 1))
        coeffs[w] = coeffs.get(w, 0) + c
    p = NCPoly(coeffs, mode)
    if p.is_zero():
        p = NCPoly.variable(1, mode=mode)
    return p


# -- check reports ----------------------------------------------------


@dataclass
class CheckReport:
    name: str
    trials: int
    tol: float
    max_violation: float = 0.0
    witnesses: List[tuple] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tol

    def record(self, residual: float, info) -> None:
        self.max_violation = max(self.max_violation, residual)
        if residual > self.tol:
            self.witnesses.append((info, residual))

    def __repr__(self):
        status = "pass" if self.passed else "FAIL"
        return (
            f"CheckReport({self.name}: {status}, trials={self.trials}, "
            f"max_violation={self.max_violation:.3g}, tol={self.tol:.3g})"
        )


DEFAULT_LEVELS = ((1, 1), (1, 2), (2, 2), (2, 3))


def _sample_radius(f: FreeMapOracle, *ns: int) -> float:
    r = min([f.radius_at(n) for n in ns] + [2.0])
    return r / 2.0


def check_direct_sums(
    f: FreeMapOracle,
    levels: Sequence[Tuple[int, int]] = DEFAULT_LEVELS,
    trials: int = 25,
    tol: float = DEFAULT_TOL,
    seed=0,
) -> CheckReport:
    """Residuals of f(X+Y block diag) - f(X)+f(Y) block diag."""
    rng = _rng(seed)
    report = CheckReport("direct_sums", trials * len(levels), tol)
    for (m, n) in levels:
        r = _sample_radius(f, m, n, m + n)
        for _ in range(trials):
            X = random_mattuple(f.g, m, rng, f.field, norm=r * rng.uniform(0.05, 1))
            Y = random_mattuple(f.g, n, rng, f.field, norm=r * rng.uniform(0.05, 1))
            try:
                lhs = f(direct_sum(X, Y))
                rhs = direct_sum(f(X), f(Y))
                res = lhs.max_diff(rhs)
            except (ValueError, ArithmeticError, np.linalg.LinAlgError) as e:
                # evaluator failure is a recorded witness, not fatal
                report.record(math.inf, ((m, n), repr(e)))
                continue
            report.record(res, ((m, n), X, Y))
    return report


def check_similarity(
    f: FreeMapOracle,
    group: str | None = None,
    levels: Sequence[int] = (1, 2, 3),
    trials: int = 25,
    tol: float = DEFAULT_TOL,
    seed=0,
) -> CheckReport:
    """Residuals of f(s X s^-1) - s f(X) s^-1 for s sampled in the group."""
    group = group or f.group
    rng = _rng(seed)
    report = CheckReport(f"similarity[{group}]", trials * len(levels), tol)
    for n in levels:
        for _ in range(trials):
            sigma = random_group_element(group, n, rng, field=f.field)
            cond = float(np.linalg.cond(sigma))
            r = _sample_radius(f, n) / max(1.0, cond)
            X = random_mattuple(f.g, n, rng, f.field, norm=r * rng.uniform(0.05, 1))
            try:
                lhs = f(conjugate(X, sigma))
                rhs = conjugate(f(X), sigma)
                res = lhs.max_diff(rhs)
            except (ValueError, ArithmeticError, np.linalg.LinAlgError) as e:
                report.record(math.inf, ((n,), repr(e)))
                continue
            report.record(res, (n, X, sigma))
    return report


# -- derivatives ------------------------------------------------------


def _tuple_comb(a: MatTuple, b: MatTuple, ca: float, cb: float) -> MatTuple:
    return MatTuple([ca * x + cb * y for x, y in zip(a.mats, b.mats)], a.field)


def directional_derivative(
    f: FreeMapOracle,
    X: MatTuple,
    H: MatTuple,
    order: int = 1,
    h0: float | None = None,
    richardson_steps: int = 3,
) -> Tuple[MatTuple, float]:
    """Central-difference Gateaux derivative with Richardson refinement.

    Returns (estimate, error indicator); the indicator is the max
    difference between the last two extrapolants.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if h0 is None:
        h0 = 1e-3 * (1.0 + X.norm())
    ests: List[MatTuple] = []
    fX = f(X) if order == 2 else None
    for j in range(richardson_steps + 1):
        h = h0 / 2**j
        fp = f(_tuple_comb(X, H, 1.0, h))
        fm = f(_tuple_comb(X, H, 1.0, -h))
        if order == 1:
            est = MatTuple([(a - b) / (2 * h) for a, b in zip(fp.mats, fm.mats)], fp.field)
        else:
            est = MatTuple(
                [(a - 2 * c + b) / h**2 for a, b, c in zip(fp.mats, fm.mats, fX.mats)],
                fp.field,
            )
        for m in est.mats:
            if not np.all(np.isfinite(np.asarray(m, dtype=complex))):
                raise ValueError("non-finite evaluation in directional derivative")
        ests.append(est)
    # Richardson in h^2 (central differences have even error expansions)
    tab = ests
    tops = [ests[0]]
    for k in range(1, len(ests)):
        fac = 4.0**k
        tab = [
            MatTuple(
                [(fac * b - a) / (fac - 1.0) for a, b in zip(tab[i].mats, tab[i + 1].mats)],
                tab[i].field,
            )
            for i in range(len(tab) - 1)
        ]
        tops.append(tab[0])
    err = tops[-1].max_diff(tops[-2]) if len(tops) > 1 else math.inf
    return tops[-1], err


def symbolic_directional_derivative(f: FreeMapOracle, X: MatTuple, H: MatTuple) -> MatTuple:
    """Exact product-rule derivative for polynomial-backed oracles."""
    if not f.polys:
        raise ValueError("oracle has no symbolic backing")
    outs = []
    for p in f.polys:
        acc = np.zeros((X.n, X.n), dtype=complex if X.field == "complex" else float)
        for w, c in p.coeffs.items():
            for pos in range(len(w)):
                cur = None
                for i, (k, starred) in enumerate(w):
                    src = H if i == pos else X
                    m = adjoint(src.mats[k - 1], X.field) if starred else src.mats[k - 1]
                    cur = m if cur is None else cur @ m
                if cur is not None:
                    acc = acc + c * cur
        outs.append(acc.real if X.field == "real" else acc)
    return MatTuple(outs, X.field)


def derivative(f: FreeMapOracle, X: MatTuple, H: MatTuple, **kw) -> MatTuple:
    """Directional derivative; exact symbolic path for polynomial oracles."""
    if f.polys is not None:
        return symbolic_directional_derivative(f, X, H)
    est, _ = directional_derivative(f, X, H, **kw)
    return est


# -- derivative identities --------------------------------------------


def _block_upper(X: MatTuple, H: MatTuple) -> MatTuple:
    mats = []
    for a, b in zip(X.mats, H.mats):
        n = a.shape[0]
        m = np.zeros((2 * n, 2 * n), dtype=np.result_type(a, b))
        m[:n, :n] = a
        m[:n, n:] = b
        m[n:, n:] = a
        mats.append(m)
    return MatTuple(mats, X.field)


def check_triangular_identity(
    f: FreeMapOracle, X: MatTuple, H: MatTuple, tol: float = 1e-6
) -> CheckReport:
    """Upper-triangular derivative identity for GL-free maps:
    f([[X,H],[0,X]]) = [[f(X), Df(X)(H)], [0, f(X)]]."""
    report = CheckReport("triangular_identity", 1, tol)
    n = X.n
    val = f(_block_upper(X, H))
    fX = f(X)
    dF = derivative(f, X, H)
    res = 0.0
    for j in range(f.gprime):
        blk = val.mats[j]
        res = max(res, float(np.linalg.norm(blk[:n, :n] - fX.mats[j], 2)))
        res = max(res, float(np.linalg.norm(blk[n:, n:] - fX.mats[j], 2)))
        res = max(res, float(np.linalg.norm(blk[n:, :n], 2)))
        res = max(res, float(np.linalg.norm(blk[:n, n:] - dF.mats[j], 2)))
    report.record(res, (X, H))
    return report


def commutator_tuple(a: np.ndarray, X: MatTuple) -> MatTuple:
    return MatTuple([a @ m - m @ a for m in X.mats], X.field)


def check_commutator_identity(
    f: FreeMapOracle, X: MatTuple, a: np.ndarray, tol: float = 1e-6
) -> CheckReport:
    """Skew-direction identity for differentiable O-free maps:
    Df(X)([a, X]) = [a, f(X)] for a^t = -a."""
    a = np.asarray(a)
    if np.linalg.norm(a + adjoint(a, f.field)) > 1e-12 * max(1.0, np.linalg.norm(a)):
        raise ValueError("direction a must be skew-symmetric")
    report = CheckReport("commutator_identity", 1, tol)
    lhs = derivative(f, X, commutator_tuple(a, X))
    rhs = commutator_tuple(a, f(X))
    report.record(lhs.max_diff(rhs), (X, a))
    return report


def check_did_block(
    f: FreeMapOracle, X1: MatTuple, X2: MatTuple, tol: float = 1e-6
) -> CheckReport:
    """Block instance of the commutator identity with a = [[0,I],[-I,0]]:
    Df(X1 + X2 block diag) applied to the off-diagonal direction built
    from X1 - X2 equals the off-diagonal of f(X1) - f(X2)."""
    report = CheckReport("did_block", 1, tol)
    n = X1.n
    Z = direct_sum(X1, X2)
    hmats = []
    for a, b in zip(X1.mats, X2.mats):
        m = np.zeros((2 * n, 2 * n), dtype=np.result_type(a, b))
        m[:n, n:] = a - b
        m[n:, :n] = a - b
        hmats.append(m)
    H = MatTuple(hmats, X1.field)
    lhs = derivative(f, Z, H)
    f1, f2 = f(X1), f(X2)
    res = 0.0
    for j in range(f.gprime):
        blk = lhs.mats[j]
        d = f1.mats[j] - f2.mats[j]
        res = max(res, float(np.linalg.norm(blk[:n, n:] - d, 2)))
        res = max(res, float(np.linalg.norm(blk[n:, :n] - d, 2)))
        res = max(res, float(np.linalg.norm(blk[:n, :n], 2)))
        res = max(res, float(np.linalg.norm(blk[n:, n:], 2)))
    report.record(res, (X1, X2))
    return report
