"""Sparse noncommutative polynomials and trace polynomials.

Two coefficient-map flavors live here:

* :class:`NCPoly` -- elements of the free algebra in x_1..x_g, or of the
  free algebra with involution in x_1, x_1^t, ..., stored as a map
  word -> coefficient.
* :class:`TracePoly` -- noncommutative polynomials over the commutative
  algebra of formal traces tr(w), stored as a map
  (multiset of trace words, tail word) -> coefficient.

Coefficients are arbitrary Python scalars (float, complex, int,
Fraction); zero coefficients are pruned exactly on construction.
Numeric cleanup with a tolerance is a separate explicit operation.
"""

from __future__ import annotations

from typing import Dict, Iterable, Mapping, Tuple

from .words import (
    Word,
    EMPTY_WORD,
    cyclic_canonical,
    graded_lex_key,
    word_has_star,
    word_involution,
    word_str,
    max_var,
)

FREE = "free"
INV = "involution"

TraceMonomial = Tuple[Tuple[Word, ...], Word]  # (sorted pure factors, tail)


def _conj(c):
    return c.conjugate()


def _check_mode(mode: str) -> str:
    if mode not in (FREE, INV):
        raise ValueError(f"mode must be {FREE!r} or {INV!r}, got {mode!r}")
    return mode


class NCPoly:
    """Sparse free noncommutative polynomial."""

    __slots__ = ("coeffs", "mode")

    def __init__(self, coeffs: Mapping[Word, object] | None = None, mode: str = FREE):
        self.mode = _check_mode(mode)
        clean: Dict[Word, object] = {}
        for w, c in (coeffs or {}).items():
            if c == 0:
                continue
            if self.mode == FREE and word_has_star(w):
                raise ValueError(f"starred letters not allowed in {FREE} mode: {word_str(w)}")
            clean[tuple(w)] = c
        self.coeffs = clean

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, mode: str = FREE) -> "NCPoly":
        return cls({}, mode)

    @classmethod
    def one(cls, mode: str = FREE) -> "NCPoly":
        return cls({EMPTY_WORD: 1}, mode)

    @classmethod
    def variable(cls, k: int, starred: bool = False, mode: str | None = None) -> "NCPoly":
        if mode is None:
            mode = INV if starred else FREE
        return cls({((k, bool(starred)),): 1}, mode)

    @classmethod
    def from_word(cls, w: Word, coeff=1, mode: str | None = None) -> "NCPoly":
        if mode is None:
            mode = INV if word_has_star(w) else FREE
        return cls({tuple(w): coeff}, mode)

    # -- structure ---------------------------------------------------

    def degree(self) -> int:
        """Max word length; -1 for the zero polynomial."""
        return max((len(w) for w in self.coeffs), default=-1)

    def num_vars(self) -> int:
        return max((max_var(w) for w in self.coeffs), default=0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.coeffs}) <= 1

    def homogeneous_part(self, m: int) -> "NCPoly":
        return NCPoly({w: c for w, c in self.coeffs.items() if len(w) == m}, self.mode)

    def cleanup(self, tol: float) -> "NCPoly":
        """Drop coefficients with magnitude <= tol."""
        return NCPoly({w: c for w, c in self.coeffs.items() if abs(c) > tol}, self.mode)

    def coefficient(self, w: Word):
        return self.coeffs.get(tuple(w), 0)

    def max_coeff_diff(self, other: "NCPoly") -> float:
        words = set(self.coeffs) | set(other.coeffs)
        return max((abs(self.coefficient(w) - other.coefficient(w)) for w in words), default=0.0)

    # -- arithmetic --------------------------------------------------

    def _coerce_mode(self, other: "NCPoly") -> str:
        if self.mode != other.mode:
            raise ValueError(f"mode mismatch: {self.mode} vs {other.mode}")
        return self.mode

    def __add__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        mode = self._coerce_mode(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            out[w] = out.get(w, 0) + c
        return NCPoly(out, mode)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return NCPoly({w: -c for w, c in self.coeffs.items()}, self.mode)

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            return self.scale(other)
        mode = self._coerce_mode(other)
        out: Dict[Word, object] = {}
        for u, a in self.coeffs.items():
            for v, b in other.coeffs.items():
                w = u + v
                out[w] = out.get(w, 0) + a * b
        return NCPoly(out, mode)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "NCPoly":
        return NCPoly({w: c * a for w, a in self.coeffs.items()}, self.mode)

    def __pow__(self, k: int) -> "NCPoly":
        if k < 0:
            raise ValueError("negative power")
        out = NCPoly.one(self.mode)
        for _ in range(k):
            out = out * self
        return out

    def involution(self) -> "NCPoly":
        """Word-wise involution with conjugated coefficients."""
        if self.mode != INV:
            raise ValueError("involution requires with-involution mode")
        return NCPoly({word_involution(w): _conj(c) for w, c in self.coeffs.items()}, INV)

    def with_mode(self, mode: str) -> "NCPoly":
        return NCPoly(self.coeffs, mode)

    # -- misc --------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, NCPoly)
            and self.mode == other.mode
            and self.coeffs == other.coeffs
        )

    def __call__(self, X):
        from . import mateval

        return mateval.eval_ncpoly(self, X)

    def sorted_terms(self):
        return sorted(self.coeffs.items(), key=lambda wc: graded_lex_key(wc[0]))

    def __repr__(self):
        if not self.coeffs:
            return "NCPoly(0)"
        parts = [f"{c}*{word_str(w)}" for w, c in self.sorted_terms()]
        return "NCPoly(" + " + ".join(parts) + ")"


def nc_zero_like(p: NCPoly) -> NCPoly:
    return NCPoly.zero(p.mode)


class TracePoly:
    """Noncommutative polynomial with pure-trace coefficients.

    Monomials are pairs (pure, tail): ``pure`` is a sorted tuple of
    canonical cyclic-class representatives (the formal factors tr(w)),
    ``tail`` a plain word.  In real with-involution mode trace words
    canonicalize over star-cyclic classes (tr(w^t) = tr(w) on real
    matrices); in complex mode only cyclic rotation is used, since
    tr(w^*) = conj(tr(w)) is a different quantity.
    """

    __slots__ = ("coeffs", "mode", "field")

    def __init__(
        self,
        coeffs: Mapping[TraceMonomial, object] | None = None,
        mode: str = FREE,
        field: str = "real",
    ):
        self.mode = _check_mode(mode)
        if field not in ("real", "complex"):
            raise ValueError(f"field must be 'real' or 'complex', got {field!r}")
        self.field = field
        clean: Dict[TraceMonomial, object] = {}
        for (pure, tail), c in (coeffs or {}).items():
            if c == 0:
                continue
            key = (self._canon_pure(pure), tuple(tail))
            if self.mode == FREE:
                if word_has_star(key[1]) or any(word_has_star(w) for w in key[0]):
                    raise ValueError("starred letters not allowed in free mode")
            clean[key] = clean.get(key, 0) + c
        self.coeffs = {k: c for k, c in clean.items() if c != 0}

    def _star_classes(self) -> bool:
        return self.mode == INV and self.field == "real"

    def _canon_pure(self, pure: Iterable[Word]) -> Tuple[Word, ...]:
        star = self._star_classes()
        return tuple(sorted(cyclic_canonical(tuple(w), star) for w in pure))

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, mode: str = FREE, field: str = "real") -> "TracePoly":
        return cls({}, mode, field)

    @classmethod
    def from_ncpoly(cls, p: NCPoly, field: str = "real") -> "TracePoly":
        return cls({((), w): c for w, c in p.coeffs.items()}, p.mode, field)

    @classmethod
    def trace_of_word(cls, w: Word, mode: str | None = None, field: str = "real") -> "TracePoly":
        if mode is None:
            mode = INV if word_has_star(w) else FREE
        return cls({((tuple(w),), EMPTY_WORD): 1}, mode, field)

    # -- structure ---------------------------------------------------

    def degree(self) -> int:
        return max(
            (len(tail) + sum(len(w) for w in pure) for (pure, tail) in self.coeffs),
            default=-1,
        )

    def is_pure(self) -> bool:
        return all(tail == EMPTY_WORD for (_, tail) in self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def cleanup(self, tol: float) -> "TracePoly":
        return TracePoly(
            {k: c for k, c in self.coeffs.items() if abs(c) > tol}, self.mode, self.field
        )

    # -- arithmetic --------------------------------------------------

    def _coerce(self, other: "TracePoly"):
        if self.mode != other.mode or self.field != other.field:
            raise ValueError("mode/field mismatch")

    def __add__(self, other):
        if not isinstance(other, TracePoly):
            return NotImplemented
        self._coerce(other)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return TracePoly(out, self.mode, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TracePoly({k: -c for k, c in self.coeffs.items()}, self.mode, self.field)

    def __mul__(self, other):
        if not isinstance(other, TracePoly):
            return self.scale(other)
        self._coerce(other)
        out: Dict[TraceMonomial, object] = {}
        for (p1, t1), a in self.coeffs.items():
            for (p2, t2), b in other.coeffs.items():
                key = (tuple(sorted(p1 + p2)), t1 + t2)
                out[key] = out.get(key, 0) + a * b
        return TracePoly(out, self.mode, self.field)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "TracePoly":
        return TracePoly({k: c * a for k, a in self.coeffs.items()}, self.mode, self.field)

    def __eq__(self, other):
        return (
            isinstance(other, TracePoly)
            and self.mode == other.mode
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __call__(self, X):
        from . import mateval

        return mateval.eval_tracepoly(self, X)

    def __repr__(self):
        if not self.coeffs:
            return "TracePoly(0)"
        parts = []
        for (pure, tail), c in sorted(
            self.coeffs.items(), key=lambda kc: (graded_lex_key(kc[0][1]), kc[0][0])
        ):
            toks = [f"tr({word_str(w)})" for w in pure]
            toks.append(word_str(tail))
            parts.append(f"{c}*" + " ".join(toks))
        return "TracePoly(" + " + ".join(parts) + ")"
