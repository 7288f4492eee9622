"""
Complement expansions and group-based algebras
==============================================

Adding a complement relation per relation symbol turns embeddings into
plain homs, carrying universal-class questions into quasivariety ones.
On algebras with a group reduct whose operations fix the unit, ideals
play the role of congruences and the radical machinery transports to
ideal arithmetic.
"""

from quasivar import (Context, as_gba, enumerate_ideals, ideal_closure,
                      ideal_radical, gba_nullstellensatz, morleyize_signature,
                      star_expand, check_star_transfer, in_universal_class,
                      in_quasivariety)
from quasivar.zoo import antichain, chain_poset, zmod

# the poset signature gains leq*; expansions interpret it as the
# complement of leq
star = morleyize_signature(chain_poset(2).sig)
print("expanded relations:", sorted(star.sig.relations))

# an antichain embeds into no chain, and after expansion it is not even
# a quasivariety member of the expanded chains
K = [chain_poset(2), chain_poset(3)]
A = antichain(2)
print("antichain2 in the universal class of chains:",
      in_universal_class(A, K).holds)
print("antichain2* in the quasivariety of expanded chains:",
      in_quasivariety(star_expand(A), [star_expand(M) for M in K]).holds)

# the transfer holds on both sides of the biconditional, checked whole
ctx = Context(K, size_bound=4, depth=2)
print("transfer verdict for chain3:",
      check_star_transfer(chain_poset(3), ctx)["verdict"])

# group-based algebras: Z/4 as a ring, ideals enumerated directly
G = as_gba(zmod(4))
print("ideals of z4:", [sorted(I) for I in enumerate_ideals(G)])
print("ideal generated by {2}:", sorted(ideal_closure({"2"}, G)))

# the radical of the zero ideal relative to K = {Z/2, Z/3}: only the
# mod-2 kernel survives, and the a-type engine agrees (transport is
# hard-asserted inside)
rctx = Context([zmod(2), zmod(3)], size_bound=4, depth=2)
out = ideal_radical(frozenset({"0"}), G, rctx)
print("radical of (0) in z4:", out["radical"],
      "via primes", out["primes"])

# polynomial form: add(x, x) on Z/2 has the whole line as zero set and
# the vanishing ideal matches the radical on the nose
nsat = gba_nullstellensatz(["add(x, x)"], as_gba(zmod(2)),
                           Context([zmod(2)], size_bound=4, depth=2))
print("z2 nullstellensatz:", nsat["verdict"], "route:", nsat["route"])

# on Z/4 the same polynomial leaves a gap witnessed by mul(x, x)
nsat4 = gba_nullstellensatz(["add(x, x)"], G, rctx)
print("z4 nullstellensatz:", nsat4["verdict"],
      "separators:", nsat4["only_in_vanishing"][:2])
