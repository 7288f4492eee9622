"""
Affine varieties over a finite structure
========================================

A constraint set with variables cuts a set of rational points out of
the ambient structure.  The points determine a constraint set of their
own; comparing it with the radical is the equality-of-ideals question,
and homs between structures can be tested for preserving that geometry.
"""

from quasivar import (Context, Scope, make_atype, make_hom, parse_atom,
                      rational_points, check_nullstellensatz,
                      is_geometrically_closed_hom, is_immersion)
from quasivar.syntax import Var
from quasivar.zoo import chain_poset, zmod

# the solution set of add(x, x) = zero inside Z/4: {0, 2}
A = zmod(4)
x = Var("x", "r")
pi = make_atype(A, (x,), [parse_atom("add(x, x) = zero", A.sig,
                                     variables={"x": "r"})])
V = rational_points(pi)
print("points of {add(x, x) = zero} in z4:", V.points)

# relative to K = {Z/2, Z/3} the vanishing constraints of those points
# exceed the radical: mul(x, x) = x holds at 0 and 2 but is not forced
ctx = Context([zmod(2), zmod(3)], size_bound=4, depth=2)
out = check_nullstellensatz(pi, ctx)
print("nullstellensatz verdict:", out["verdict"])
print("  satisfied by the points only:", out["points_only"][:3])

# on the chain the same question shows why the two sides can differ at
# all: the point side evaluates parameters in place, while primes range
# over every hom into K, and poset elements are not pinned by constants
C = chain_poset(3)
pctx = Context([chain_poset(2), chain_poset(3)], size_bound=4, depth=2)
qi = make_atype(C, (Var("x", "p"),),
                [parse_atom("leq(x, c1)", C.sig, variables={"x": "p"},
                            params=C.param_sorts())])
out2 = check_nullstellensatz(qi, pctx)
print("points of {leq(x, c1)} in chain3:", rational_points(qi).points)
print("nullstellensatz verdict:", out2["verdict"],
      "- points only:", out2["points_only"])
# leq(c0, x) survives at both points, but a hom shifting c0 upward
# gives a prime avoiding it, so it is not radical-forced

# scoped geometry of homs: the inclusion of the 2-chain at the bottom
# of the 3-chain preserves quasi-algebraic truths, the top embedding
# does too, but a collapse map does not reflect failing atoms
scope = Scope(max_premise=2, depth=1, max_vars=2)
bottom = make_hom(chain_poset(2), C, {"c0": "c0", "c1": "c1"})
print("bottom inclusion geometrically closed:",
      is_geometrically_closed_hom(bottom, scope)["verdict"],
      "| immersion:", is_immersion(bottom, scope)["verdict"])
spread = make_hom(chain_poset(2), C, {"c0": "c0", "c1": "c2"})
print("endpoint inclusion geometrically closed:",
      is_geometrically_closed_hom(spread, scope)["verdict"],
      "| immersion:", is_immersion(spread, scope)["verdict"])
