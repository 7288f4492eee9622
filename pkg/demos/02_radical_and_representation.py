"""
Primes, radicals, and subdirect representation
==============================================

Relative to a finite generator class K, a prime constraint set is one
whose quotient lands inside a member of K; the radical is the
intersection of all primes above a constraint set.  A structure whose
empty constraint set is radical embeds subdirectly into a product of
its prime quotients.
"""

from quasivar import (Context, make_atype, parse_atom, close, radical,
                      is_radical, represent)
from quasivar.zoo import chain_poset, zmod

# the mod-4 ring against the class K = {Z/2, Z/3}
A = zmod(4)
ctx = Context([zmod(2), zmod(3)], size_bound=4, depth=2)

# the zero constraint set: is Z/4 itself a subdirect product of images
# inside K?  Reduction mod 2 is the only hom, so 0 and 2 can never be
# told apart and the answer is no
pi = make_atype(A)
out = radical(pi, ctx)
print("primes above the empty set:", len(out.primes_used))
print("radical classes:", [sorted(str(t) for t in cls)
                           for cls in out.radical.classes()])
d = is_radical(pi, ctx)
print("is the empty set radical?", d.value, "-", d.detail)

rep = represent(A, ctx)
print("representation embeds:", rep["embedding"])

# chains relative to K = {2-chain, 3-chain} go the other way
C = chain_poset(3)
pctx = Context([chain_poset(2), chain_poset(3)], size_bound=4, depth=2)
rep = represent(C, pctx)
print("chain3: primes", rep["n_primes"], "factors", rep["n_factors"],
      "embeds", rep["embedding"], "subdirect", rep["subdirect"])

# the demo-01 cliffhanger: leq(c2, c0) is not derivable equationally,
# but every chain satisfies antisymmetry, so the radical collapses the
# whole order interval between c0 and c2
bad = parse_atom("leq(c2, c0)", C.sig, params=C.param_sorts())
pi2 = make_atype(C, (), [bad])
print("closure classes:", len(close(pi2).classes()),
      "radical classes:", len(radical(pi2, pctx).radical.classes()))
