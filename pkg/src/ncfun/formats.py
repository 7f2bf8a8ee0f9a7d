"""Line-oriented text formats: NCPOLY1, TRPOLY1, GENPOLY1, MTX1.

All four are deterministic (terms sorted graded-lexicographically,
shortest round-trip float formatting) so identical data prints to
byte-identical files.  Complex entries use a+bi / a-bi literals.
Parse errors carry 1-based line and column numbers.
"""

from __future__ import annotations

import re
from typing import List, Sequence, Tuple

import numpy as np

from .genpoly import GenPoly, GenTerm
from .mateval import MatTuple
from .poly import FREE, NCPoly, TracePoly
from .words import Word, parse_word, word_str

_LETTER_RE = re.compile(r"^x\d+\*?$")


class FormatError(ValueError):
    def __init__(self, msg: str, line: int, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


def _fmt_scalar(c) -> str:
    if isinstance(c, np.generic):
        c = c.item()
    if isinstance(c, complex):
        re_, im = float(c.real), float(c.imag)
        sign = "+" if im >= 0 else "-"
        return f"{re_!r}{sign}{abs(im)!r}i"
    if isinstance(c, float):
        return repr(float(c))
    return str(c)


def _parse_scalar(tok: str, line: int, col: int = 1):
    t = tok.strip()
    try:
        if t.endswith("i"):
            return complex(t[:-1].replace(" ", "") + "j")
        if "/" in t:
            from fractions import Fraction

            return Fraction(t)
        if re.fullmatch(r"[+-]?\d+", t):
            return int(t)
        return float(t)
    except ValueError:
        raise FormatError(f"bad numeric literal {tok!r}", line, col) from None


def _header_fields(line_text: str, lineno: int) -> dict:
    fields = {}
    for tok in line_text.split()[1:]:
        if "=" not in tok:
            raise FormatError(f"bad header field {tok!r}", lineno)
        k, v = tok.split("=", 1)
        fields[k] = v
    return fields


# -- NCPOLY1 ----------------------------------------------------------


def dump_ncpolys(polys: Sequence[NCPoly]) -> str:
    polys = list(polys)
    mode = polys[0].mode if polys else FREE
    lines = [f"NCPOLY1 mode={mode} polys={len(polys)}"]
    for p in polys:
        terms = p.sorted_terms()
        lines.append(f"terms={len(terms)}")
        for w, c in terms:
            lines.append(f"{_fmt_scalar(c)} : {word_str(w)}")
    return "\n".join(lines) + "\n"


def load_ncpolys(text: str) -> List[NCPoly]:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("NCPOLY1"):
        raise FormatError("missing NCPOLY1 header", 1)
    hdr = _header_fields(lines[0], 1)
    mode = hdr.get("mode", FREE)
    count = int(hdr.get("polys", "1"))
    polys = []
    i = 1
    for _ in range(count):
        if i >= len(lines):
            raise FormatError("unexpected end of file", len(lines) + 1)
        m = re.fullmatch(r"terms=(\d+)", lines[i].strip())
        if not m:
            raise FormatError(f"expected terms=<count>, got {lines[i]!r}", i + 1)
        nterms = int(m.group(1))
        i += 1
        coeffs = {}
        for _ in range(nterms):
            if i >= len(lines):
                raise FormatError("unexpected end of file", len(lines) + 1)
            raw = lines[i]
            if ":" not in raw:
                raise FormatError("term line needs '<coeff> : <word>'", i + 1, 1)
            cpart, wpart = raw.split(":", 1)
            c = _parse_scalar(cpart, i + 1)
            try:
                w = parse_word(wpart)
            except ValueError as e:
                raise FormatError(str(e), i + 1, len(cpart) + 2) from None
            coeffs[w] = coeffs.get(w, 0) + c
            i += 1
        polys.append(NCPoly(coeffs, mode))
    return polys


# -- TRPOLY1 ----------------------------------------------------------


def dump_tracepoly(p: TracePoly) -> str:
    lines = [f"TRPOLY1 mode={p.mode} field={p.field}"]
    keys = sorted(p.coeffs.items(), key=lambda kc: ((len(kc[0][1]), kc[0][1]), kc[0][0]))
    for (pure, tail), c in keys:
        toks = [f"tr({word_str(w)})" for w in pure] + [word_str(tail)]
        lines.append(f"{_fmt_scalar(c)} : " + " ".join(toks))
    return "\n".join(lines) + "\n"


_TR_RE = re.compile(r"tr\(([^)]*)\)")


def load_tracepoly(text: str) -> TracePoly:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("TRPOLY1"):
        raise FormatError("missing TRPOLY1 header", 1)
    hdr = _header_fields(lines[0], 1)
    mode = hdr.get("mode", FREE)
    field = hdr.get("field", "real")
    coeffs = {}
    for i, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        if ":" not in raw:
            raise FormatError("term line needs '<coeff> : <factors>'", i)
        cpart, rest = raw.split(":", 1)
        c = _parse_scalar(cpart, i)
        pure = tuple(parse_word(m.group(1)) for m in _TR_RE.finditer(rest))
        tail_text = _TR_RE.sub("", rest).strip()
        try:
            tail = parse_word(tail_text) if tail_text else ()
        except ValueError as e:
            raise FormatError(str(e), i, len(cpart) + 2) from None
        key = (pure, tail)
        coeffs[key] = coeffs.get(key, 0) + c
    return TracePoly(coeffs, mode, field)


# -- MTX1 -------------------------------------------------------------


def dump_mattuple(X: MatTuple) -> str:
    lines = [f"MTX1 n={X.n} g={X.g} field={X.field}"]
    for m in X.mats:
        arr = np.asarray(m)
        for i in range(X.n):
            if X.field == "complex":
                lines.append(" ".join(_fmt_scalar(complex(arr[i, j])) for j in range(X.n)))
            else:
                lines.append(" ".join(_fmt_scalar(_plain(arr[i, j])) for j in range(X.n)))
    return "\n".join(lines) + "\n"


def _plain(v):
    if isinstance(v, np.generic):
        return v.item()
    return v  # python and exact scalars (Fraction, int) pass through


def load_mattuple(text: str) -> MatTuple:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("MTX1"):
        raise FormatError("missing MTX1 header", 1)
    hdr = _header_fields(lines[0], 1)
    try:
        n, g = int(hdr["n"]), int(hdr["g"])
        field = hdr.get("field", "real")
    except (KeyError, ValueError):
        raise FormatError("MTX1 header needs n=<n> g=<g> field=real|complex", 1) from None
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != g * n:
        raise FormatError(f"expected {g * n} matrix rows, found {len(body)}", len(lines))
    mats = []
    exact = False
    rows_all = []
    for idx, raw in enumerate(body):
        toks = raw.split()
        if len(toks) != n:
            raise FormatError(f"expected {n} entries, found {len(toks)}", idx + 2)
        row = [_parse_scalar(t, idx + 2) for t in toks]
        exact = exact or any(not isinstance(v, (float, complex)) for v in row)
        rows_all.append(row)
    for k in range(g):
        rows = rows_all[k * n : (k + 1) * n]
        if exact:
            mats.append(np.array(rows, dtype=object))
        elif field == "complex":
            mats.append(np.array(rows, dtype=complex))
        else:
            mats.append(np.array(rows, dtype=float))
    return MatTuple(mats, field)


# -- GENPOLY1 ---------------------------------------------------------


def _fmt_matrix(m: np.ndarray) -> str:
    arr = np.asarray(m)
    rows = []
    for i in range(arr.shape[0]):
        rows.append(" ".join(_fmt_scalar(_plain(arr[i, j])) for j in range(arr.shape[1])))
    return "; ".join(rows)


def dump_genpoly(p: GenPoly) -> str:
    lines = [f"GENPOLY1 n={p.n} mode={p.mode} terms={len(p.terms)}"]
    for t in p.terms:
        toks = [_fmt_matrix(t.mats[0])]
        for let, m in zip(t.letters, t.mats[1:]):
            toks.append(word_str((let,)))
            toks.append(_fmt_matrix(m))
        lines.append(f"deg={t.degree()} " + " ".join(toks))
    return "\n".join(lines) + "\n"


def _parse_matrix(chunk: str, n: int, lineno: int) -> np.ndarray:
    rows = [r for r in chunk.split(";") if r.strip()]
    if len(rows) != n:
        raise FormatError(f"matrix needs {n} rows, found {len(rows)}", lineno)
    out = []
    for r in rows:
        toks = r.split()
        if len(toks) != n:
            raise FormatError(f"matrix row needs {n} entries, found {len(toks)}", lineno)
        out.append([_parse_scalar(t, lineno) for t in toks])
    if any(not isinstance(v, (float, complex, int)) for row in out for v in row):
        return np.array(out, dtype=object)
    if any(isinstance(v, complex) for row in out for v in row):
        return np.array(out, dtype=complex)
    return np.array(out, dtype=float)


def load_genpoly(text: str) -> GenPoly:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("GENPOLY1"):
        raise FormatError("missing GENPOLY1 header", 1)
    hdr = _header_fields(lines[0], 1)
    n = int(hdr["n"])
    mode = hdr.get("mode", FREE)
    nterms = int(hdr.get("terms", "0"))
    terms = []
    body = [ln for ln in lines[1:] if ln.strip()]
    if len(body) != nterms:
        raise FormatError(f"expected {nterms} term lines, found {len(body)}", len(lines))
    for idx, raw in enumerate(body):
        lineno = idx + 2
        m = re.match(r"\s*deg=(\d+)\s*(.*)$", raw)
        if not m:
            raise FormatError("term line must start with deg=<l>", lineno)
        ell = int(m.group(1))
        toks = m.group(2).split()
        # split the token stream at letter tokens
        chunks: List[str] = []
        letters: List[str] = []
        cur: List[str] = []
        for tok in toks:
            if _LETTER_RE.match(tok):
                chunks.append(" ".join(cur))
                letters.append(tok)
                cur = []
            else:
                cur.append(tok)
        chunks.append(" ".join(cur))
        if len(letters) != ell or len(chunks) != ell + 1:
            raise FormatError(
                f"term of degree {ell} needs {ell} letters and {ell + 1} matrices", lineno
            )
        mats = [_parse_matrix(c, n, lineno) for c in chunks]
        w: Word = parse_word(" ".join(letters))
        terms.append(GenTerm(mats, w))
    return GenPoly(n, terms, mode)
