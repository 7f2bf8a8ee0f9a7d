"""Words, involution, cyclic canonical forms, and the three polynomial
flavors, evaluated on concrete matrix tuples.

Run: python demos/01_words_and_polynomials.py
"""

import numpy as np

from ncfun import (
    INV,
    GenPoly,
    MatTuple,
    NCPoly,
    TracePoly,
    cyclic_canonical,
    eval_genpoly,
    eval_ncpoly,
    eval_tracepoly,
    parse_word,
    word_involution,
    word_str,
)

# -- words ------------------------------------------------------------
# A word is a product of letters x_k and their transposes x_k^t
# (written x1, x1* in the text format).  The involution reverses the
# word and stars/unstars every letter.
w = parse_word("x1 x2 x1*")
print("w           =", word_str(w))
print("w^t         =", word_str(word_involution(w)))

# Trace variables are indexed by cyclic classes: rotations of a word
# (and, with involution, rotations of its transpose) share a canonical
# representative.
print("canon(x2 x1)        =", word_str(cyclic_canonical(parse_word("x2 x1"))))
print("canon*(x1 x2*)      =", word_str(cyclic_canonical(parse_word("x1 x2*"), star_mode=True)))
print("canon*(x2 x1*)      =", word_str(cyclic_canonical(parse_word("x2 x1*"), star_mode=True)))

# -- free polynomials --------------------------------------------------
x1 = NCPoly.variable(1, mode=INV)
x1t = NCPoly.variable(1, True)
p = x1 * x1t - x1t * x1  # x1 x1^t - x1^t x1
print("\np =", p)

X = MatTuple([np.array([[0.0, 1.0], [0.0, 0.0]])])  # the nilpotent e12
print("p(e12) =\n", eval_ncpoly(p, X))  # e11 - e22

# -- trace polynomials -------------------------------------------------
# tr(x1 x1^t) x1 evaluated at e12: the trace factor is a scalar 1
t = TracePoly({((parse_word("x1 x1*"),), parse_word("x1")): 1}, INV)
print("\ntr(x1 x1*) x1 at e12 =\n", eval_tracepoly(t, X))

# Trace polynomials are NOT free maps: the trace doubles under direct
# sums.  Compare tr(x1) at X and at X + X (block diag):
s = TracePoly({((parse_word("x1"),), ()): 1})
Xd = MatTuple([np.diag([1.0, 2.0])])
from ncfun import direct_sum

print("tr at X:", np.diag(eval_tracepoly(s, Xd)))
print("tr at X+X (block):", np.diag(eval_tracepoly(s, direct_sum(Xd, Xd))))

# -- generalized polynomials -------------------------------------------
# Matrix coefficients interleave with letters; at level ns a coefficient
# a acts as kron(a, I_s).  The block evaluation of e11 x1 e12 x2 e22 on
# M_4 picks out A_11 B_22 in the (1,2) block.
e = lambda i, j: np.eye(2)[:, [i - 1]] @ np.eye(2)[[j - 1], :]
gp = GenPoly.monomial([e(1, 1), e(1, 2), e(2, 2)], parse_word("x1 x2"))
rng = np.random.default_rng(0)
A, B = rng.standard_normal((4, 4)), rng.standard_normal((4, 4))
val = eval_genpoly(gp, MatTuple([A, B]))
print("\nblock evaluation matches kron(e12, A11 B22):",
      np.allclose(val, np.kron(e(1, 2), A[:2, :2] @ B[2:, 2:])))

# Its coefficients over the matrix-unit basis monomials are unique:
print("basis expansion:", gp.expand_basis())
