"""Black-box free maps: the direct-sum and similarity axioms, and the
two derivative identities that distinguish GL-free from O-free maps.

Run: python demos/02_free_map_axioms.py
"""

import numpy as np

from ncfun import (
    INV,
    NCPoly,
    builtin_map,
    check_commutator_identity,
    check_did_block,
    check_direct_sums,
    check_similarity,
    check_triangular_identity,
    oracle_from_ncpoly,
    random_mattuple,
)

# A polynomial in x only is GL-free; one using x^t is only O-free.
gl_map = oracle_from_ncpoly(NCPoly.variable(1) * NCPoly.variable(2))
o_map = oracle_from_ncpoly(
    NCPoly.variable(1, mode=INV) * NCPoly.variable(1, True)
)  # x1 x1^t

print("x1 x2   under GL similarity:", check_similarity(gl_map, "GL", trials=10))
print("x1 x1^t under O  similarity:", check_similarity(o_map, "O", trials=10))
# conjugating by a non-orthogonal matrix breaks transpose covariance:
print("x1 x1^t under GL similarity:", check_similarity(o_map, "GL", trials=10))

print("\ndirect sums for sin(x x^t):", check_direct_sums(builtin_map("sinxxt"), trials=10))

# -- the upper-triangular identity (GL-free, differentiable) -----------
#   f([[X, H], [0, X]]) = [[f(X), Df(X)(H)], [0, f(X)]]
rng = np.random.default_rng(1)
X = random_mattuple(2, 3, rng, norm=0.8)
H = random_mattuple(2, 3, rng, norm=0.8)
print("\ntriangular identity for x1 x2:", check_triangular_identity(gl_map, X, H))

# -- the commutator identity (O-free, differentiable) ------------------
#   Df(X)([a, X]) = [a, f(X)] for skew a, and its block instance
X1 = random_mattuple(1, 3, rng, norm=0.8)
a = rng.standard_normal((3, 3))
a = a - a.T
print("commutator identity for x1 x1^t:", check_commutator_identity(o_map, X1, a))
X2 = random_mattuple(1, 3, rng, norm=0.8)
print("block instance at (X1, X2):   ", check_did_block(o_map, X1, X2))

# The same machinery exposes non-free maps: X -> tr(X) I fails the
# direct-sum axiom (the trace doubles on the diagonal blocks).
from ncfun.oracle import FreeMapOracle
from ncfun import MatTuple

trace_map = FreeMapOracle(
    1, 1, lambda X: MatTuple([np.trace(X.mats[0]) * np.eye(X.n)], X.field),
    group="GL", smoothness=("polynomial", 1), name="tr",
)
rep = check_direct_sums(trace_map, trials=10)
print("\ntr(X) I direct-sum check:", rep)
print("first witness residual:", rep.witnesses[0][1] if rep.witnesses else None)
