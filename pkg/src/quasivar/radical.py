"""Prime and radical a-types relative to a finite generator class.

The generator class K stands in for the model class of a theory: membership
questions become embedding search (universal reading) or separation of
false atoms through homs (quasivariety reading).  Primes of an a-type are
exactly the a-types of evaluations into members of K that satisfy it, so
enumeration over (hom, assignment) pairs is complete at this scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ScopeError, TheoremViolation, ValidationError
from .atypes import (AType, AtomUniverse, ClosedAType, atype_of,
                     atype_of_eval, close, element_universe, full_closed,
                     intersect_closed, make_atype, quotient, term_universe)
from .structures import (FinStructure, Hom, enumerate_homs, in_quasivariety,
                         in_universal_class, is_embedding, make_hom, product)
from .syntax import App, Const, Eq, Signature, Var, atom_vars, check_atom


@dataclass
class Context:
    """Finite stand-in for a theory: generators, and the search bounds."""
    K: list
    size_bound: int
    depth: int
    signature: Optional[Signature] = None
    warnings: list = field(default_factory=list)

    def __post_init__(self):
        if self.signature is None:
            if not self.K:
                raise ValidationError("a context needs members or an explicit signature")
            self.signature = self.K[0].sig
        for M in self.K:
            if M.sig != self.signature:
                raise ValidationError("context members must share the signature")
        if self.depth < 1:
            raise ValidationError("depth bound must be >= 1")
        biggest = max((M.size() for M in self.K), default=0)
        if self.size_bound < biggest:
            self.warnings.append(
                f"size bound {self.size_bound} is below the largest member "
                f"size {biggest}; quotients into K may exceed it")


@dataclass
class PrimeWitness:
    closed: ClosedAType
    member_index: int
    hom: Optional[Hom]          # base hom into the member (None when no base)
    assignment: Optional[dict]  # variable values in the member


@dataclass
class RadicalResult:
    radical: ClosedAType
    primes_used: List[PrimeWitness]
    exactness: str   # "exact" or "bounded(depth=d)"
    degenerate: bool
    universe: AtomUniverse


def _assignments(variables, M: FinStructure):
    pools = [M.carriers[v.sort] for v in variables]
    for combo in itertools.product(*pools):
        yield dict(zip((v.name for v in variables), combo))


def _check_vars_fresh(pi: AType, ctx: Context):
    taken = set(ctx.signature.constants)
    if pi.base is not None:
        taken |= set(pi.base.elem_sort)
    for v in pi.variables:
        if v.name in taken:
            raise ValidationError(f"variable {v.name!r} collides with a parameter name")


def enumerate_prime_witnesses(pi: AType, ctx: Context,
                              universe: Optional[AtomUniverse] = None,
                              embeddings_only: bool = False) -> List[PrimeWitness]:
    """All a-types of evaluations into members of K satisfying pi, deduped,
    in canonical order."""
    _check_vars_fresh(pi, ctx)
    A = pi.base
    if universe is None:
        universe = (element_universe(A) if pi.is_ground() and A is not None
                    else term_universe(ctx.signature, pi.variables, ctx.depth, base=A))
    out: List[PrimeWitness] = []
    seen = set()
    for i, M in enumerate(ctx.K):
        if A is not None:
            mode = "embedding" if embeddings_only else "hom"
            base_homs = enumerate_homs(A, M, mode=mode)
        else:
            base_homs = [None]
        for h in base_homs:
            for asg in _assignments(pi.variables, M):
                tp = atype_of_eval(universe, M, assignment=asg, hom=h)
                if not tp.contains_atype(pi):
                    continue
                if tp not in seen:
                    seen.add(tp)
                    out.append(PrimeWitness(tp, i, h, asg or None))
    return out


def radical(pi: AType, ctx: Context,
            universe: Optional[AtomUniverse] = None,
            embeddings_only: bool = False) -> RadicalResult:
    """Intersection of the a-types of all satisfying evaluations into K."""
    A = pi.base
    if universe is None:
        universe = (element_universe(A) if pi.is_ground() and A is not None
                    else term_universe(ctx.signature, pi.variables, ctx.depth, base=A))
    witnesses = enumerate_prime_witnesses(pi, ctx, universe,
                                          embeddings_only=embeddings_only)
    exact = pi.is_ground() and A is not None
    exactness = "exact" if exact else f"bounded(depth={ctx.depth})"
    if not witnesses:
        return RadicalResult(full_closed(universe), [], exactness,
                             degenerate=True, universe=universe)
    meet = intersect_closed([w.closed for w in witnesses])
    return RadicalResult(meet, witnesses, exactness, degenerate=False,
                         universe=universe)


def strong_radical(pi: AType, ctx: Context,
                   universe: Optional[AtomUniverse] = None) -> RadicalResult:
    """Radical over strongly prime a-types only: evaluations whose base hom
    is an embedding.  Defined only for a-types with variables."""
    if pi.is_ground():
        raise ValidationError("the strong radical is defined for a-types in "
                              "term algebras; declare variables")
    if pi.base is None:
        raise ValidationError("the strong radical needs a base structure")
    return radical(pi, ctx, universe, embeddings_only=True)


# ---------------------------------------------------------------------------
# term-algebra quotients, materialized up to the depth bound


@dataclass
class TermQuotient:
    structure: Optional[FinStructure]
    var_map: Dict[str, str]   # variable -> carrier element of the quotient
    elem_map: Dict[str, str]  # base element -> carrier element
    status: str               # "exact" or "undetermined"
    detail: str = ""


def materialize_term_quotient(source, ctx: Context, name: str = "presented",
                              variables=(), base=None) -> TermQuotient:
    """Quotient of the depth-bounded term algebra by an a-type's closure.

    Two passes: classes over the depth-d universe first, then the universe
    is extended by one application layer over class representatives only.
    If every such application falls back into a depth-d class, the result
    is the exact quotient (deeper terms collapse inductively); otherwise
    the carrier is incomplete and the status is undetermined.

    source is an AType, or a callable universe -> ClosedAType for closures
    that are not generated syntactically (radical intersections).
    """
    if isinstance(source, AType):
        pi = source
        _check_vars_fresh(pi, ctx)
        variables, base = pi.variables, pi.base
        closure_at = lambda uni: close(pi, uni)
    else:
        closure_at = source
    sig = ctx.signature
    uni_d = term_universe(sig, variables, ctx.depth, base=base)
    c_d = closure_at(uni_d)
    # inner terms come in canonical order, so the first member is the rep
    reps: Dict[int, object] = {}
    for t in uni_d.terms:
        reps.setdefault(c_d.class_of[t], t)
    rep_terms = [reps[cls] for cls in sorted(reps)]
    ext = set(uni_d.terms)
    by_sort: Dict[str, list] = {}
    for t in rep_terms:
        by_sort.setdefault(t.sort, []).append(t)
    for f, (argsorts, result) in sig.functions.items():
        for args in itertools.product(*(by_sort.get(s, []) for s in argsorts)):
            ext.add(App(f, tuple(args), result))
    uni_e = AtomUniverse(sig, ext, variables=tuple(variables), base=base,
                         depth=(ctx.depth or 0) + 1)
    c = closure_at(uni_e)
    # conservativity: the depth-d partition must not change
    emap: Dict[int, int] = {}
    for t in uni_d.terms:
        old, new = c_d.class_of[t], c.class_of[t]
        if emap.setdefault(old, new) != new:
            raise TheoremViolation("congruence closure is not conservative "
                                   "under universe extension")
    cls_reps: Dict[int, object] = {}
    for t in uni_d.terms:
        cls_reps.setdefault(c.class_of[t], t)
    name_of = {cls: str(t) for cls, t in cls_reps.items()}
    if len(set(name_of.values())) != len(name_of):
        raise ValidationError("distinct classes share a printed representative")
    carriers: Dict[str, list] = {s: [] for s in sig.sorts}
    for cls, t in sorted(cls_reps.items()):
        carriers[t.sort].append(name_of[cls])
    rep_ids = {s: [cls for cls, t in sorted(cls_reps.items()) if t.sort == s]
               for s in sig.sorts}
    functions = {}
    for f, (argsorts, result) in sig.functions.items():
        table = {}
        for ids in itertools.product(*(rep_ids[s] for s in argsorts)):
            t = App(f, tuple(cls_reps[i] for i in ids), result)
            cls = c.class_id(t)
            if cls not in cls_reps:
                return TermQuotient(None, {}, {}, "undetermined",
                                    f"application {t} escapes the depth bound")
            table[tuple(name_of[i] for i in ids)] = name_of[cls]
        functions[f] = table
    relations = {}
    for r in sig.relations:
        tuples = set()
        for rr, cls_tuple in c.rel_atoms:
            if rr == r and all(i in cls_reps for i in cls_tuple):
                tuples.add(tuple(name_of[i] for i in cls_tuple))
        relations[r] = tuples
    constants = {}
    for cname, sort in sig.constants.items():
        t = (Const(base.constants[cname], sort) if base is not None
             else Const(cname, sort))
        constants[cname] = name_of[c.class_id(t)]
    Q = FinStructure(sig, carriers, functions, relations, constants, name=name)
    var_map = {v.name: name_of[c.class_id(v)] for v in variables}
    elem_map = {}
    if base is not None:
        elem_map = {e: name_of[c.class_id(Const(e, s))]
                    for s in base.sig.sorts for e in base.carriers[s]}
    detail = ""
    if Q.size() > ctx.size_bound:
        detail = f"carrier exceeds the size bound {ctx.size_bound}"
    return TermQuotient(Q, var_map, elem_map, "exact", detail)


# ---------------------------------------------------------------------------
# primality and radicality decisions


@dataclass
class Decision:
    value: Optional[bool]   # None when undetermined
    status: str             # "decided" or "undetermined"
    detail: str
    witness: object = None


def is_prime(pi: AType, ctx: Context) -> Decision:
    """Closed with a quotient that embeds into some member of K."""
    if pi.is_ground():
        qr = quotient(close(pi))
        membership = in_universal_class(qr.quotient, ctx.K)
        if membership.holds:
            return Decision(True, "decided",
                            f"quotient embeds into member {membership.member_index}",
                            witness=membership.witness)
        return Decision(False, "decided", "quotient embeds into no member")
    tq = materialize_term_quotient(pi, ctx)
    if tq.status == "undetermined":
        return Decision(None, "undetermined", tq.detail)
    membership = in_universal_class(tq.structure, ctx.K)
    if membership.holds:
        return Decision(True, "decided",
                        f"term quotient embeds into member {membership.member_index}",
                        witness=membership.witness)
    return Decision(False, "decided", "term quotient embeds into no member")


def is_strongly_prime(pi: AType, ctx: Context) -> Decision:
    """Prime, and the base maps into the term quotient by an embedding."""
    if pi.is_ground():
        raise ValidationError("strong primality is defined for a-types in "
                              "term algebras; declare variables")
    if pi.base is None:
        raise ValidationError("strong primality needs a base structure")
    primality = is_prime(pi, ctx)
    if primality.value is not True:
        return primality
    tq = materialize_term_quotient(pi, ctx)
    A = pi.base
    try:
        comp = make_hom(A, tq.structure, tq.elem_map)
    except ValidationError as exc:
        return Decision(False, "decided", f"base map fails: {exc}")
    if is_embedding(comp):
        return Decision(True, "decided", "base embeds into the term quotient",
                        witness=comp)
    return Decision(False, "decided", "base map is not an embedding")


def is_radical(pi: AType, ctx: Context) -> Decision:
    """pi equals its radical; cross-checked against quasivariety membership
    of the quotient.  The two routes disagreeing is a hard error."""
    if pi.is_ground():
        c = close(pi)
        rad = radical(pi, ctx)
        syntactic = (c == rad.radical)
        qr = quotient(c)
        semantic = in_quasivariety(qr.quotient, ctx.K).holds
        if syntactic != semantic:
            raise TheoremViolation(
                "radical fixed point and quasivariety membership disagree "
                f"on {pi}")
        detail = "radical fixed point" if syntactic else "proper radical growth"
        return Decision(syntactic, "decided", detail + "; both routes agree")
    uni = term_universe(ctx.signature, pi.variables, ctx.depth, base=pi.base)
    c = close(pi, uni)
    rad = radical(pi, ctx, uni)
    syntactic = (c == rad.radical)
    tq = materialize_term_quotient(pi, ctx)
    if tq.status == "undetermined":
        return Decision(syntactic, "undetermined",
                        f"fixed-point route only; quotient {tq.detail}")
    semantic = in_quasivariety(tq.structure, ctx.K).holds
    if syntactic != semantic:
        raise TheoremViolation(
            "radical fixed point and quasivariety membership disagree "
            f"on an a-type with variables")
    detail = "radical fixed point" if syntactic else "proper radical growth"
    return Decision(syntactic, "decided", detail + "; both routes agree")


# ---------------------------------------------------------------------------
# representation and presentation


def represent(A: FinStructure, ctx: Context) -> dict:
    """Product of the quotients by the minimal primes of A, with the
    canonical map; reports whether the map is an embedding and the product
    subdirect.

    Every prime contains a minimal one and containment preserves the
    atoms a prime avoids, so dropping non-minimal primes never changes
    the embedding verdict; it keeps the product from blowing up when
    many homs into K share few kernels.
    """
    pi0 = make_atype(A)
    everything = enumerate_prime_witnesses(pi0, ctx)
    witnesses = [w for w in everything
                 if not any(v.closed.le(w.closed) and v.closed != w.closed
                            for v in everything)]
    quotients = [quotient(w.closed) for w in witnesses]
    n_all = len(everything)
    if quotients:
        P = product([q.quotient for q in quotients],
                    name="represent(" + A.name + ")")
        mapping = {}
        for e in A.elements():
            parts = [q.class_map[e] for q in quotients]
            mapping[e] = "(" + ",".join(parts) + ")"
    else:
        P = product([], sig=A.sig, name="represent(" + A.name + ")")
        mapping = {e: f"*{A.elem_sort[e]}" for e in A.elements()}
    try:
        f = make_hom(A, P, mapping)
    except ValidationError as exc:
        raise TheoremViolation(f"representation map is not a hom: {exc}")
    embedding = is_embedding(f)
    subdirect = []
    for i, q in enumerate(quotients):
        images = {q.class_map[e] for e in A.elements()}
        carrier = set(q.quotient.elements())
        subdirect.append(images == carrier)
    return {
        "n_primes": n_all,
        "primes": everything,
        "n_factors": len(witnesses),
        "factors": witnesses,
        "product": P,
        "map": f,
        "embedding": embedding,
        "subdirect": all(subdirect),
        "factors_subdirect": subdirect,
    }


def present(variables: Sequence[Var], atoms, ctx: Context) -> dict:
    """Initial model of the atom set in the quasivariety: depth-bounded term
    algebra modulo the radical, with the universal property checked against
    every satisfying valuation in K."""
    variables = tuple(variables)
    atoms = frozenset(atoms)
    declared = {v.name: v for v in variables}
    if len(declared) != len(variables):
        raise ValidationError("duplicate variable name")
    for a in atoms:
        check_atom(a, ctx.signature)
        for v in atom_vars(a):
            if declared.get(v.name) != v:
                raise ValidationError(f"atom uses undeclared variable {v.name!r}")
    for v in variables:
        if v.name in ctx.signature.constants:
            raise ValidationError(f"variable {v.name!r} collides with a constant")
    uni = term_universe(ctx.signature, variables, ctx.depth, base=None)
    witnesses: List[PrimeWitness] = []
    seen = set()
    for i, M in enumerate(ctx.K):
        for asg in _assignments(variables, M):
            tp = atype_of_eval(uni, M, assignment=asg, hom=None)
            if not all(tp.contains(a) for a in atoms):
                continue
            if tp not in seen:
                seen.add(tp)
                witnesses.append(PrimeWitness(tp, i, None, asg or None))
    degenerate = not witnesses

    def closure_at(universe):
        if degenerate:
            return full_closed(universe)
        return intersect_closed([
            atype_of_eval(universe, ctx.K[w.member_index],
                          assignment=w.assignment or {}, hom=w.hom)
            for w in witnesses])

    tq = materialize_term_quotient(closure_at, ctx, name="presented",
                                   variables=variables, base=None)
    report = {
        "structure": tq.structure,
        "var_map": tq.var_map,
        "status": tq.status,
        "degenerate": degenerate,
        "n_valuations": len(witnesses),
        "universal_property": None,
        "detail": tq.detail,
    }
    if tq.status != "exact":
        return report
    Q = tq.structure
    checked = 0
    for i, M in enumerate(ctx.K):
        candidate = enumerate_homs(Q, M)
        for asg in _assignments(variables, M):
            ok = all(
                (M.eval_term(a.left, asg) == M.eval_term(a.right, asg))
                if isinstance(a, Eq)
                else M.holds(a.rel, [M.eval_term(t, asg) for t in a.args])
                for a in atoms)
            if not ok:
                continue
            checked += 1
            matches = [h for h in candidate
                       if all(h.as_dict()[tq.var_map[v.name]] == asg[v.name]
                              for v in variables)]
            if len(matches) != 1:
                report["universal_property"] = {
                    "holds": False, "checked": checked,
                    "detail": f"{len(matches)} extensions for valuation {asg} "
                              f"in member {i}"}
                return report
    report["universal_property"] = {"holds": True, "checked": checked,
                                    "detail": ""}
    return report
