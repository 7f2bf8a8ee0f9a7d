"""Free inverse and implicit function computation.

Two routes: degree-graded formal inversion of tuple power series, and
levelwise Newton iteration on the black-box map.  The two agree to the
truncation order on small targets; both inherit the free property
(G-equivariance) of the input map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .mateval import MatTuple
from .oracle import FreeMapOracle, derivative
from .poly import FREE, INV, NCPoly
from .recon import taylor_at_zero
from .series import FormalSeries, compose_tuple, series_compose

DET_CUTOFF = 1e-10


class SingularLinearPartError(ValueError):
    pass


@dataclass
class LinearPart:
    """Action of the degree-1 coefficients on the letter space.

    The matrix has shape g x g (involution-free) or 2g x 2g, ordered as
    (x_1..x_g, x_1^t..x_g^t); the 2g form is [[A, B], [conj B, conj A]],
    which commutes with the letter involution by construction, and this
    structure is closed under inversion.
    """

    matrix: np.ndarray
    mode: str
    g: int

    def is_invertible(self) -> bool:
        return abs(np.linalg.det(self.matrix)) > DET_CUTOFF

    def inverse_rows(self) -> np.ndarray:
        """First g rows of matrix^{-1}: the substitution y -> L^{-1} y."""
        if not self.is_invertible():
            raise SingularLinearPartError(
                f"linear part is singular (|det| = {abs(np.linalg.det(self.matrix)):.3g})"
            )
        return np.linalg.inv(self.matrix)[: self.g]


def linear_part(F: Sequence[FormalSeries]) -> LinearPart:
    g = len(F)
    mode = F[0].mode
    if mode == FREE:
        L = np.zeros((g, g))
        cplx = False
        for i, s in enumerate(F):
            for j in range(1, g + 1):
                c = s.parts[1].coefficient(((j, False),))
                if isinstance(c, complex):
                    cplx = True
                L[i, j - 1] = c.real if isinstance(c, complex) else c
        if cplx:
            raise ValueError("complex coefficients in free-mode linear part are unsupported")
        return LinearPart(L, mode, g)
    A = np.zeros((g, g), dtype=complex)
    B = np.zeros((g, g), dtype=complex)
    for i, s in enumerate(F):
        for j in range(1, g + 1):
            A[i, j - 1] = s.parts[1].coefficient(((j, False),))
            B[i, j - 1] = s.parts[1].coefficient(((j, True),))
    L = np.block([[A, B], [B.conj(), A.conj()]])
    if np.allclose(L.imag, 0):
        L = L.real
    return LinearPart(L, mode, g)


def _linear_series(rows: np.ndarray, g: int, D: int, mode: str) -> Tuple[FormalSeries, ...]:
    """Tuple of degree-1 series with the given letter coefficients."""
    out = []
    for i in range(rows.shape[0]):
        coeffs = {}
        for j in range(g):
            c = rows[i, j]
            c = c.real if isinstance(c, complex) and c.imag == 0 else c
            if c != 0:
                coeffs[((j + 1, False),)] = c
        if mode == INV:
            for j in range(g):
                c = rows[i, g + j]
                c = c.real if isinstance(c, complex) and c.imag == 0 else c
                if c != 0:
                    coeffs[((j + 1, True),)] = c
        out.append(FormalSeries.from_ncpoly(NCPoly(coeffs, mode), D))
    return tuple(out)


def formal_inverse(F: Sequence[FormalSeries], D: int | None = None) -> Tuple[FormalSeries, ...]:
    """Compositional inverse of a series tuple with zero constant part
    and invertible linear part: both compositions equal the identity up
    to degree D.

    Solves H = y - sum_{m>=2} Fbar_m(H) degree by degree after
    normalizing the linear part to the identity, then restores it.
    """
    F = tuple(F)
    g = len(F)
    if D is None:
        D = min(s.order for s in F)
    for s in F:
        if s.constant_part() != 0:
            raise ValueError("formal inverse needs zero constant part")
    mode = F[0].mode
    lp = linear_part(F)
    rows = lp.inverse_rows()  # raises when singular

    # normalize: Fbar_i = sum_j C_ij F_j + D_ij involution(F_j)
    Fbar: List[FormalSeries] = []
    for i in range(g):
        acc = FormalSeries.zero(D, mode)
        for j in range(g):
            c = rows[i, j]
            if c != 0:
                acc = acc + F[j].truncate(D).scale(c.real if getattr(c, "imag", 0) == 0 else c)
            if mode == INV:
                d = rows[i, g + j]
                if d != 0:
                    acc = acc + F[j].truncate(D).involution().scale(
                        d.real if getattr(d, "imag", 0) == 0 else d
                    )
        Fbar.append(acc)

    # tail G = Fbar - identity (degrees >= 2 by construction)
    ident = FormalSeries.identity_tuple(g, D, mode)
    G = [fb - idn for fb, idn in zip(Fbar, ident)]
    for gg in G:
        if not gg.parts[0].is_zero() or not gg.parts[1].is_zero():
            raise AssertionError("normalization failed to produce identity linear part")

    H = list(ident)
    for d in range(2, D + 1):
        K = [series_compose(gg, H) for gg in G]
        for i in range(g):
            newparts = list(H[i].parts)
            newparts[d] = -K[i].parts[d]
            H[i] = FormalSeries(newparts, D, mode)

    # restore the linear part: H_full = Hbar o (L^{-1} y)
    lam = _linear_series(rows, g, D, mode)
    return compose_tuple(H, lam)


def composition_residual(F: Sequence[FormalSeries], H: Sequence[FormalSeries]) -> float:
    """Max coefficient deviation of F o H and H o F from the identity."""
    D = min(min(s.order for s in F), min(s.order for s in H))
    ident = FormalSeries.identity_tuple(len(F), D, F[0].mode)
    out = 0.0
    for comp in (compose_tuple(F, H), compose_tuple(H, F)):
        for s, idn in zip(comp, ident):
            out = max(out, s.max_coeff_diff(idn))
    return out


# -- Newton inversion --------------------------------------------------


class NewtonError(RuntimeError):
    pass


@dataclass
class NewtonTrace:
    iterates: List[Tuple[float, float]] = dc_field(default_factory=list)  # (residual, step)
    converged: bool = False
    X: Optional[MatTuple] = None
    cond: float = math.nan
    contraction: float = math.nan

    def __repr__(self):
        tail = self.iterates[-1][0] if self.iterates else math.nan
        return f"NewtonTrace(converged={self.converged}, iters={len(self.iterates)}, final_res={tail:.3g})"


def _unit_directions(g: int, n: int, field: str):
    """Structural coordinate directions: g n^2 matrix units, and for
    complex maps additionally their i-multiples.  Maps built from
    conjugate transposes are only R-linear, so the complex case works in
    the real embedding with 2 g n^2 real coordinates."""
    dt = complex if field == "complex" else float
    scales = (1.0,) if field == "real" else (1.0, 1.0j)
    for s in scales:
        for k in range(g):
            for i in range(n):
                for j in range(n):
                    mats = [np.zeros((n, n), dtype=dt) for _ in range(g)]
                    mats[k][i, j] = s
                    yield MatTuple(mats, field)


def _vec(X: MatTuple) -> np.ndarray:
    flat = np.concatenate([np.asarray(m, dtype=complex if X.field == "complex" else float).ravel()
                           for m in X.mats])
    if X.field == "complex":
        return np.concatenate([flat.real, flat.imag])
    return flat


def _unvec(v: np.ndarray, g: int, n: int, field: str) -> MatTuple:
    N = g * n * n
    flat = v[:N] + 1j * v[N:] if field == "complex" else v
    mats = []
    for k in range(g):
        m = flat[k * n * n : (k + 1) * n * n].reshape(n, n)
        mats.append(m.real if field == "real" else m)
    return MatTuple(mats, field)


def assemble_jacobian(f: FreeMapOracle, X: MatTuple) -> np.ndarray:
    """Frechet derivative at X over the structural coordinate
    directions: a real (g' n^2) x (g n^2) matrix in real mode, the real
    embedding of size (2 g' n^2) x (2 g n^2) in complex mode.  Columns
    come from the exact product rule for polynomial-backed oracles and
    from finite differences otherwise."""
    cols = [_vec(derivative(f, X, E)) for E in _unit_directions(f.g, X.n, f.field)]
    return np.stack(cols, axis=1)


def newton_invert(
    f: FreeMapOracle,
    Y: MatTuple,
    X0: MatTuple | None = None,
    tol: float = 1e-12,
    maxit: int = 50,
    max_halvings: int = 20,
) -> NewtonTrace:
    """Solve f(X) = Y levelwise by damped Newton iteration."""
    if f.g != f.gprime:
        raise ValueError("newton inversion needs matching input/output arity")
    n = Y.n
    X = X0 if X0 is not None else MatTuple.zeros(f.g, n, f.field)
    trace = NewtonTrace()

    def resid(Z: MatTuple) -> float:
        return f(Z).max_diff(Y)

    res = resid(X)
    for _ in range(maxit):
        if res < tol:
            break
        J = assemble_jacobian(f, X)
        cond = float(np.linalg.cond(J))
        trace.cond = cond
        if not np.isfinite(cond) or cond > 1e14:
            raise NewtonError(f"singular derivative (condition estimate {cond:.3g})")
        rhs = _vec(f(X)) - _vec(Y)
        delta = np.linalg.solve(J, rhs)
        step = 1.0
        for _ in range(max_halvings):
            Xn = X - _unvec(step * delta, f.g, n, f.field)
            rn = resid(Xn)
            if rn < res or rn < tol:
                break
            step /= 2.0
        X = X - _unvec(step * delta, f.g, n, f.field)
        new_res = resid(X)
        trace.iterates.append((new_res, float(step * np.linalg.norm(delta))))
        res = new_res
    trace.converged = res < tol
    trace.X = X
    if trace.converged:
        J = assemble_jacobian(f, X)
        trace.contraction = float(np.linalg.norm(np.eye(J.shape[0]) - J, 2))
    return trace


# -- implicit function -------------------------------------------------


def implicit_formal(
    f: FreeMapOracle, g1: int, D: int, tol: float = 1e-8
) -> Tuple[FormalSeries, ...]:
    """Series h with f(x, h(x)) = O(degree D+1), from the inverse of the
    augmented map (x, y) -> (x, f(x, y)).  Requires f(0,0) = 0 and
    invertible partial derivative in the y block."""
    g2 = f.g - g1
    if g2 != f.gprime:
        raise ValueError("implicit solve expects g' = g - g1 outputs")
    if f.polys is not None:
        Fser = tuple(FormalSeries.from_ncpoly(p, D) for p in f.polys)
        mode = f.polys[0].mode
    else:
        tay = taylor_at_zero(f, D, tol=tol)
        Fser = tay.series
        mode = Fser[0].mode
    for s in Fser:
        if abs(s.constant_part()) > tol:
            raise ValueError("implicit solve needs f(0,0) = 0")
    Fser = tuple(
        FormalSeries([NCPoly.zero(mode)] + list(s.parts[1:]), D, mode) for s in Fser
    )
    ident = FormalSeries.identity_tuple(f.g, D, mode)
    aug = tuple(ident[:g1]) + Fser
    Haug = formal_inverse(aug, D)
    # h(x) = last g2 components at (x_1..x_g1, 0..0)
    zero = FormalSeries.zero(D, mode)
    subs = tuple(ident[:g1]) + tuple(zero for _ in range(g2))
    return tuple(series_compose(Haug[g1 + j], subs) for j in range(g2))


def implicit_residual(f: FreeMapOracle, g1: int, h: Sequence[FormalSeries]) -> float:
    """Max coefficient of f(x, h(x)) up to the truncation order."""
    if f.polys is None:
        raise ValueError("residual check needs a symbolic oracle")
    D = min(s.order for s in h)
    mode = h[0].mode
    ident = FormalSeries.identity_tuple(g1, D, mode)
    subs = tuple(ident) + tuple(h)
    worst = 0.0
    for p in f.polys:
        comp = series_compose(FormalSeries.from_ncpoly(p, D), subs)
        worst = max(worst, comp.max_coeff_diff(FormalSeries.zero(D, mode)))
    return worst


def implicit_numeric(
    f: FreeMapOracle,
    g1: int,
    xhat: MatTuple,
    y0: MatTuple | None = None,
    tol: float = 1e-12,
    maxit: int = 50,
) -> NewtonTrace:
    """Solve f(xhat, y) = 0 for y by Newton at a concrete point."""
    g2 = f.g - g1
    n = xhat.n

    def ev(Y: MatTuple) -> MatTuple:
        return f(MatTuple(tuple(xhat.mats) + tuple(Y.mats), f.field))

    sub = FreeMapOracle(
        g=g2, gprime=f.gprime, evaluator=ev, field=f.field, group=f.group,
        smoothness=f.smoothness, radius=f.radius, name=f"{f.name}|x fixed",
    )
    target = MatTuple.zeros(f.gprime, n, f.field)
    return newton_invert(sub, target, X0=y0, tol=tol, maxit=maxit)


# -- injectivity obstruction ------------------------------------------


@dataclass
class InjectivityReport:
    values_equal: bool
    value_gap: float
    offdiag_image_norm: Optional[float] = None
    min_singular_value: Optional[float] = None
    note: str = ""


def injectivity_check(
    f: FreeMapOracle, X1: MatTuple, X2: MatTuple, tol: float = 1e-8
) -> InjectivityReport:
    """When f(X1) = f(X2), the derivative at X1 + X2 (block diag) kills
    the off-diagonal direction built from X1 - X2; a near-zero smallest
    singular value of the assembled derivative certifies the
    obstruction (equal values force a singular derivative)."""
    from .mateval import direct_sum

    gap = f(X1).max_diff(f(X2))
    if gap >= tol:
        return InjectivityReport(False, gap, note="values differ; no obstruction test applicable")
    Z = direct_sum(X1, X2)
    n = X1.n
    hmats = []
    for a, b in zip(X1.mats, X2.mats):
        m = np.zeros((2 * n, 2 * n), dtype=np.result_type(a, b))
        m[:n, n:] = a - b
        m[n:, :n] = a - b
        hmats.append(m)
    H = MatTuple(hmats, X1.field)
    img = derivative(f, Z, H)
    img_norm = max(float(np.linalg.norm(np.asarray(m), 2)) for m in img.mats)
    J = assemble_jacobian(f, Z)
    smin = float(np.linalg.svd(J, compute_uv=False)[-1])
    return InjectivityReport(
        True,
        gap,
        offdiag_image_norm=img_norm,
        min_singular_value=smin,
        note="equal values: derivative at the direct sum is singular along the off-diagonal direction",
    )
