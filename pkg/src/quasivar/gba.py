"""Group-based algebras: groups with extra operations fixing the unit.

The ideal calculus mirrors ring theory: ideals are normal subgroups
absorbing every operation and its commutators, they correspond one to one
with ground closed a-types (congruences), and prime/radical ideals are
kernels of homomorphisms into a finite generator class.  The
Nullstellensatz checker compares the vanishing ideal of a zero set with
the radical of the generated ideal over a depth-bounded polynomial
universe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence

from .errors import TheoremViolation, ValidationError
from .atypes import (close, enumerate_congruences, make_atype,
                     resolve_constants, term_universe)
from .radical import Context, enumerate_prime_witnesses, radical
from .structures import FinStructure, enumerate_homs
from .syntax import Const, Eq, Var, term_vars

# symbol trios tried in order when none are named explicitly
_GROUP_NAMES = (("op", "inv", "e"), ("add", "neg", "zero"))


def _designations(sig, star, inv, unit):
    named = [x for x in (star, inv, unit) if x is not None]
    if named and len(named) < 3:
        raise ValidationError("name all three group symbols or none")
    if named:
        trios = ((star, inv, unit),)
    else:
        trios = _GROUP_NAMES
    for s, i, u in trios:
        if s in sig.functions and i in sig.functions and u in sig.constants:
            break
    else:
        raise ValidationError("no group operations found; name star/inv/unit "
                              "explicitly")
    sort = sig.sorts[0]
    if sig.functions[s] != ((sort, sort), sort):
        raise ValidationError(f"{s!r} is not a binary operation on {sort!r}")
    if sig.functions[i] != ((sort,), sort):
        raise ValidationError(f"{i!r} is not a unary operation on {sort!r}")
    return s, i, u


@dataclass
class GBAlgebra:
    """A structure with designated group symbols; the certificate records
    whether the group-based axioms were checked and hold."""
    structure: FinStructure
    star: str
    inv: str
    unit: str
    certificate: dict = field(default_factory=dict)

    @property
    def e(self) -> str:
        return self.structure.constants[self.unit]

    @property
    def sort(self) -> str:
        return self.structure.sig.sorts[0]

    def carrier(self) -> List[str]:
        return list(self.structure.carriers[self.sort])

    def mul(self, a: str, b: str) -> str:
        return self.structure.apply(self.star, (a, b))

    def invert(self, a: str) -> str:
        return self.structure.apply(self.inv, (a,))


def _check_shape(A: FinStructure):
    if len(A.sig.sorts) != 1:
        raise ValidationError("group-based algebras are one-sorted")
    if A.sig.relations:
        raise ValidationError("group-based algebras live in equational "
                              "signatures; relations present")


def gba_view(A: FinStructure, star=None, inv=None, unit=None) -> GBAlgebra:
    """Designate the group symbols without certifying the axioms.  The
    mechanical ideal calculus only needs the tables; use as_gba when the
    axioms themselves matter."""
    _check_shape(A)
    s, i, u = _designations(A.sig, star, inv, unit)
    return GBAlgebra(A, s, i, u, {"valid": None})


def validate_gba(A: FinStructure, star=None, inv=None, unit=None) -> dict:
    """Group axioms for the designated symbols plus F(e,...,e) = e for
    every function symbol; first failure is reported with a witness.
    There is no condition on constants."""
    G = gba_view(A, star, inv, unit)
    xs = sorted(G.carrier())
    e = G.e
    violation = None
    for a in xs:
        if violation:
            break
        if G.mul(e, a) != a or G.mul(a, e) != a:
            violation = {"axiom": "identity", "witness": (a,)}
            break
        if G.mul(a, G.invert(a)) != e or G.mul(G.invert(a), a) != e:
            violation = {"axiom": "inverse", "witness": (a,)}
            break
        for b in xs:
            if violation:
                break
            for c in xs:
                if G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)):
                    violation = {"axiom": "associativity", "witness": (a, b, c)}
                    break
    if violation is None:
        for f, (argsorts, _res) in A.sig.functions.items():
            args = (e,) * len(argsorts)
            if A.apply(f, args) != e:
                violation = {"axiom": "unit-fixed", "witness": (f,) + args}
                break
    return {
        "claim": "group-based-algebra",
        "designations": {"star": G.star, "inv": G.inv, "unit": G.unit},
        "valid": violation is None,
        "violation": violation,
    }


def as_gba(A: FinStructure, star=None, inv=None, unit=None) -> GBAlgebra:
    """Certified constructor; raises when an axiom fails."""
    cert = validate_gba(A, star, inv, unit)
    if not cert["valid"]:
        raise ValidationError(f"not a group-based algebra: {cert['violation']}")
    G = gba_view(A, star, inv, unit)
    G.certificate = cert
    return G


# ---------------------------------------------------------------------------
# the ideal calculus


def _commutator(G: GBAlgebra, f: str, abar, bbar) -> str:
    fa = G.structure.apply(f, abar)
    fb = G.structure.apply(f, bbar)
    fab = G.structure.apply(f, tuple(G.mul(a, b) for a, b in zip(abar, bbar)))
    return G.mul(G.mul(G.invert(fa), G.invert(fb)), fab)


def is_ideal(S, G: GBAlgebra) -> dict:
    """Normal subgroup closed under every operation on its own tuples and
    absorbing all commutators."""
    S = frozenset(S)
    carrier = G.carrier()
    stray = sorted(S - set(carrier))
    if stray:
        raise ValidationError(f"elements outside the carrier: {stray}")
    members = sorted(S)
    if G.e not in S:
        return {"holds": False, "reason": "unit missing", "witness": G.e}
    for a in members:
        if G.invert(a) not in S:
            return {"holds": False, "reason": "not inverse-closed", "witness": a}
        for b in members:
            if G.mul(a, b) not in S:
                return {"holds": False, "reason": "not product-closed",
                        "witness": (a, b)}
    for g in sorted(carrier):
        gi = G.invert(g)
        for a in members:
            if G.mul(G.mul(gi, a), g) not in S:
                return {"holds": False, "reason": "not normal", "witness": (g, a)}
    for f, (argsorts, _res) in G.structure.sig.functions.items():
        n = len(argsorts)
        for abar in itertools.product(members, repeat=n):
            if G.structure.apply(f, abar) not in S:
                return {"holds": False, "reason": "not operation-closed",
                        "witness": (f,) + abar}
            for bbar in itertools.product(sorted(carrier), repeat=n):
                if _commutator(G, f, abar, bbar) not in S:
                    return {"holds": False, "reason": "commutator escapes",
                            "witness": (f, abar, bbar)}
    return {"holds": True, "reason": "", "witness": None}


def ideal_closure(S, G: GBAlgebra) -> FrozenSet[str]:
    """Least ideal containing S: normal closure, operation images, and
    commutator absorption to a fixpoint."""
    carrier = sorted(G.carrier())
    stray = sorted(set(S) - set(carrier))
    if stray:
        raise ValidationError(f"elements outside the carrier: {stray}")
    cur = {G.e} | set(S)
    while True:
        new = set()
        for a in sorted(cur):
            new.add(G.invert(a))
            for b in sorted(cur):
                new.add(G.mul(a, b))
            for g in carrier:
                new.add(G.mul(G.mul(G.invert(g), a), g))
        for f, (argsorts, _res) in G.structure.sig.functions.items():
            n = len(argsorts)
            for abar in itertools.product(sorted(cur), repeat=n):
                new.add(G.structure.apply(f, abar))
                for bbar in itertools.product(carrier, repeat=n):
                    new.add(_commutator(G, f, abar, bbar))
        if new <= cur:
            return frozenset(cur)
        cur |= new


def _group_closure(G: GBAlgebra, seed) -> FrozenSet[str]:
    cur = {G.e} | set(seed)
    while True:
        new = {G.invert(a) for a in cur}
        new |= {G.mul(a, b) for a in cur for b in cur}
        if new <= cur:
            return frozenset(cur)
        cur |= new


def enumerate_subgroups(G: GBAlgebra) -> List[FrozenSet[str]]:
    """Generated-subgroup walk: grow each known subgroup by one element."""
    first = _group_closure(G, ())
    found = {first}
    queue = [first]
    while queue:
        H = queue.pop()
        for g in sorted(set(G.carrier()) - H):
            H2 = _group_closure(G, H | {g})
            if H2 not in found:
                found.add(H2)
                queue.append(H2)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def enumerate_ideals(G: GBAlgebra) -> List[FrozenSet[str]]:
    """Normal subgroups first, then the operation and commutator filters."""
    out = []
    for H in enumerate_subgroups(G):
        if is_ideal(H, G)["holds"]:
            out.append(H)
    return out


def kernel_of_hom(h, G: GBAlgebra, target_unit: str) -> FrozenSet[str]:
    m = h.as_dict()
    return frozenset(a for a in G.carrier() if m[a] == target_unit)


# ---------------------------------------------------------------------------
# ideals against closed a-types


def _congruence_kernel(rep: Dict[str, str], G: GBAlgebra) -> FrozenSet[str]:
    return frozenset(a for a in G.carrier() if rep[a] == rep[G.e])


def ideal_atype_bijection(G: GBAlgebra) -> dict:
    """Ground closed a-types (congruences, the signature is equational)
    correspond one to one with ideals: forward by taking the kernel of
    the projection, backward by closing the unit identifications;
    any mismatch is a hard error."""
    A = G.structure
    ideals = enumerate_ideals(G)
    congruences = enumerate_congruences(A)
    kernels = []
    for rep in congruences:
        ker = _congruence_kernel(rep, G)
        verdict = is_ideal(ker, G)
        if not verdict["holds"]:
            raise TheoremViolation(
                f"projection kernel is not an ideal: {verdict['reason']} "
                f"at {verdict['witness']}")
        kernels.append(ker)
    if len(set(kernels)) != len(kernels):
        raise TheoremViolation("two congruences share a kernel")
    if set(kernels) != set(ideals):
        raise TheoremViolation("kernels and ideals are not the same family")
    # backward: the closure engine must rebuild each congruence from its
    # ideal's unit identifications
    sort = G.sort
    by_kernel = {ker: rep for ker, rep in zip(kernels, congruences)}
    pairs = []
    for I in ideals:
        pi = make_atype(A, (), [Eq(Const(a, sort), Const(G.e, sort))
                                for a in sorted(I)])
        c = close(pi)
        terms = c.universe.terms
        rebuilt = {t.name: terms[c.class_of[t]].name for t in terms}
        # normalize representatives to least member, as the enumerator does
        blocks: Dict[str, List[str]] = {}
        for e2, r in rebuilt.items():
            blocks.setdefault(r, []).append(e2)
        rebuilt = {e2: min(block) for block in blocks.values() for e2 in block}
        if rebuilt != by_kernel[I]:
            raise TheoremViolation(
                f"closure of the unit identifications of {sorted(I)} is not "
                "the matching congruence")
        pairs.append({"ideal": sorted(I),
                      "classes": len(set(by_kernel[I].values()))})
    return {
        "claim": "ideal-atype-bijection",
        "n_ideals": len(ideals),
        "n_closed_atypes": len(congruences),
        "pairs": pairs,
        "verdict": "bijective",
    }


# ---------------------------------------------------------------------------
# prime and radical ideals relative to a generator class


def ideal_radical(I, G: GBAlgebra, ctx: Context) -> dict:
    """Prime ideals are kernels of homs into members containing I; the
    radical is their intersection, and it must agree with the radical
    engine run on the corresponding a-type."""
    A = G.structure
    if ctx.signature != A.sig:
        raise ValidationError("context signature differs from the algebra")
    for M in ctx.K:
        as_gba(M, G.star, G.inv, G.unit)
    I = frozenset(I)
    verdict = is_ideal(I, G)
    if not verdict["holds"]:
        raise ValidationError(f"not an ideal: {verdict['reason']} at "
                              f"{verdict['witness']}")
    primes = []
    for M in ctx.K:
        e_M = M.constants[G.unit]
        for h in enumerate_homs(A, M):
            ker = kernel_of_hom(h, G, e_M)
            if I <= ker and ker not in primes:
                primes.append(ker)
    primes.sort(key=lambda s: (len(s), sorted(s)))
    degenerate = not primes
    if degenerate:
        rad = frozenset(G.carrier())
    else:
        rad = frozenset.intersection(*primes)
    # transport: the radical engine on the a-type {a = e : a in I}
    sort = G.sort
    pi = make_atype(A, (), [Eq(Const(a, sort), Const(G.e, sort))
                            for a in sorted(I)])
    r = radical(pi, ctx)
    unit_cls = r.radical.class_id(Const(G.e, sort))
    transported = frozenset(a for a in G.carrier()
                            if r.radical.class_id(Const(a, sort)) == unit_cls)
    if transported != rad or r.degenerate != degenerate:
        raise TheoremViolation(
            "ideal radical and the radical engine disagree on "
            f"{sorted(I)}: {sorted(rad)} vs {sorted(transported)}")
    return {
        "claim": "ideal-radical",
        "ideal": sorted(I),
        "primes": [sorted(p) for p in primes],
        "radical": sorted(rad),
        "degenerate": degenerate,
        "input_is_prime": I in primes,
        "input_is_radical": I == rad,
        "transport_agrees": True,
        "verdict": "computed",
    }


# ---------------------------------------------------------------------------
# the Nullstellensatz in ideal language


def _assignments(variables, M: FinStructure):
    pools = [M.carriers[v.sort] for v in variables]
    for combo in itertools.product(*pools):
        yield dict(zip([v.name for v in variables], combo))


def _eval_term(M: FinStructure, t, elem_map, asg):
    # elem_map carries base elements into M; None means M is the base itself
    if isinstance(t, Var):
        return asg[t.name]
    if isinstance(t, Const):
        if t.name in M.sig.constants:
            return M.constants[t.name]
        return t.name if elem_map is None else elem_map[t.name]
    return M.apply(t.func, tuple(_eval_term(M, a, elem_map, asg)
                                 for a in t.args))


def gba_nullstellensatz(generators: Sequence, G: GBAlgebra, ctx: Context,
                        depth: Optional[int] = None,
                        variables: Optional[Sequence[Var]] = None) -> dict:
    """Vanishing ideal of the zero set against the radical of the
    generated ideal.

    Ground generators (no variables) quotient the algebra itself and run
    the full ideal calculus there.  With variables, polynomials are the
    diagram-closure classes of the depth-d term universe; the radical is
    computed twice, by the radical engine and by direct evaluation
    kernels, and the two routes must agree.
    """
    A = G.structure
    if ctx.signature != A.sig:
        raise ValidationError("context signature differs from the algebra")
    gens = [resolve_constants(t, A) for t in generators]
    if variables is None:
        names = sorted({v.name for t in gens for v in term_vars(t)})
        variables = tuple(Var(n, G.sort) for n in names)
    else:
        variables = tuple(variables)
    d = ctx.depth if depth is None else depth
    sort = G.sort
    e = G.e
    if not variables:
        return _ground_nullstellensatz(gens, G, ctx)
    ctx2 = ctx if d == ctx.depth else Context(ctx.K, ctx.size_bound, d,
                                              signature=ctx.signature)
    uni = term_universe(A.sig, variables, d, base=A)
    missing = [t for t in gens if t not in uni]
    if missing:
        raise ValidationError(f"generators outside the depth-{d} universe: "
                              f"{[str(t) for t in missing]}")
    free = close(make_atype(A, variables, []), uni)
    class_ids = sorted(set(free.class_of.values()))
    rep_term = {cid: uni.terms[cid] for cid in class_ids}
    # zero set: points of A where every generator vanishes
    zero_set = []
    for asg in _assignments(variables, A):
        if all(_eval_term(A, t, None, asg) == e for t in gens):
            zero_set.append(tuple(asg[v.name] for v in variables))
    # vanishing classes: polynomials null on the whole zero set
    if zero_set:
        vanish = set()
        for cid in class_ids:
            t = rep_term[cid]
            if all(_eval_term(A, t, None,
                              dict(zip([v.name for v in variables], pt))) == e
                   for pt in zero_set):
                vanish.add(cid)
    else:
        vanish = set(class_ids)
    # radical, engine route
    pi = make_atype(A, variables, [Eq(t, Const(e, sort)) for t in gens])
    unit_term = Const(e, sort)
    witnesses = enumerate_prime_witnesses(pi, ctx2, uni)
    primes_engine = set()
    for w in witnesses:
        u_cls = w.closed.class_of[unit_term]
        primes_engine.add(frozenset(
            cid for cid in class_ids
            if w.closed.class_of[rep_term[cid]] == u_cls))
    # radical, evaluation route
    primes_eval = set()
    for M in ctx2.K:
        e_M = M.constants[G.unit]
        for h in enumerate_homs(A, M):
            m = h.as_dict()
            for asg in _assignments(variables, M):
                if not all(_eval_term(M, t, m, asg) == e_M for t in gens):
                    continue
                primes_eval.add(frozenset(
                    cid for cid in class_ids
                    if _eval_term(M, rep_term[cid], m, asg) == e_M))
    if primes_engine != primes_eval:
        raise TheoremViolation("prime kernels from the radical engine and "
                               "from direct evaluation differ")
    degenerate = not primes_engine
    rad = (set(class_ids) if degenerate
           else set(frozenset.intersection(*primes_engine)))
    names = {cid: str(rep_term[cid]) for cid in class_ids}
    return {
        "claim": "nullstellensatz-ideal-form",
        "route": "classes",
        "scope": {"depth": d, "size_bound": ctx2.size_bound},
        "n_polynomials": len(class_ids),
        "generators": [str(t) for t in gens],
        "zero_set": zero_set,
        "zero_set_exhaustive": True,
        "vanishing_size": len(vanish),
        "radical_size": len(rad),
        "equal": vanish == rad,
        "only_in_vanishing": sorted(names[c] for c in vanish - rad),
        "only_in_radical": sorted(names[c] for c in rad - vanish),
        "degenerate_zero_set": not zero_set,
        "degenerate_primes": degenerate,
        "n_primes": len(primes_engine),
        "exactness": f"bounded(depth={d})",
        "verdict": "equal" if vanish == rad else "differs",
    }


def _ground_nullstellensatz(gens, G: GBAlgebra, ctx: Context) -> dict:
    """No variables: the polynomial algebra is the algebra itself."""
    A = G.structure
    e = G.e
    values = [_eval_term(A, t, None, {}) for t in gens]
    I = ideal_closure(values, G)
    zero_set = [()] if all(v == e for v in values) else []
    # a constant polynomial vanishes at the empty point iff it is the unit
    vanish = {e} if zero_set else set(G.carrier())
    rad_report = ideal_radical(I, G, ctx)
    rad = set(rad_report["radical"])
    return {
        "claim": "nullstellensatz-ideal-form",
        "route": "quotient",
        "scope": {"depth": 0, "size_bound": ctx.size_bound},
        "n_polynomials": len(G.carrier()),
        "generators": [str(t) for t in gens],
        "zero_set": zero_set,
        "zero_set_exhaustive": True,
        "vanishing_size": len(vanish),
        "radical_size": len(rad),
        "equal": vanish == rad,
        "only_in_vanishing": sorted(vanish - rad),
        "only_in_radical": sorted(rad - vanish),
        "degenerate_zero_set": not zero_set,
        "degenerate_primes": rad_report["degenerate"],
        "n_primes": len(rad_report["primes"]),
        "exactness": "exact",
        "verdict": "equal" if vanish == rad else "differs",
    }
