"""Atomic Morleyization: complement relations, canonical expansions, and
instance checks for the embedding-to-homomorphism transfer.

Adding a complement partner R* for every relation symbol turns embeddings
into plain homomorphisms of the expanded structures.  The checks here pin
the finite consequences of that move: expansions admit no one-point full
substructure, homs between expansions are embeddings, membership
transfers between the embedding reading of the base side and the
separation reading of the star side, strongly prime a-types correspond to
star-side primes, and existential closedness of a structure matches
geometric closedness of its expansion, embedding by embedding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .errors import TheoremViolation, ValidationError
from .atypes import (AType, AtomUniverse, ClosedAType, make_atype,
                     term_universe)
from .geometry import Scope, ScopedChecker
from .radical import Context, enumerate_prime_witnesses
from .structures import (FinStructure, enumerate_homs, find_isomorphism,
                         in_quasivariety, in_universal_class, is_embedding,
                         make_hom, product, trivial_embeds,
                         trivial_structure)
from .syntax import (Clause, Rel, Sentence, Signature, Theory, Var,
                     is_universal_shape, print_atom, print_sentence)

STAR_SUFFIX = "*"


# ---------------------------------------------------------------------------
# the starred language and its structures


@dataclass
class StarSignature:
    """A signature together with a complement partner for each relation."""
    base: Signature
    sig: Signature
    star_of: Dict[str, str]  # relation -> its complement partner


def morleyize_signature(L: Signature) -> StarSignature:
    """Fresh complement relation per relation symbol, same sorting;
    functions and constants are untouched."""
    star_of = {}
    taken = L.symbol_names() | set(L.sorts)
    relations = list(L.relations.items())
    for r, argsorts in L.relations.items():
        name = r + STAR_SUFFIX
        if name in taken:
            raise ValidationError(
                f"complement name {name!r} collides with an existing symbol")
        star_of[r] = name
        relations.append((name, argsorts))
    sig = Signature(L.sorts, L.functions, relations, L.constants)
    return StarSignature(L, sig, star_of)


def star_view(sig: Signature) -> StarSignature:
    """Recover the base/complement split of a signature that already
    carries its partners, by the naming convention."""
    star_of = {}
    for r, argsorts in sig.relations.items():
        if r.endswith(STAR_SUFFIX):
            continue
        partner = r + STAR_SUFFIX
        if sig.relations.get(partner) == argsorts:
            star_of[r] = partner
    starred = set(star_of.values())
    base_rels = [(r, a) for r, a in sig.relations.items() if r not in starred]
    base = Signature(sig.sorts, sig.functions, base_rels, sig.constants)
    return StarSignature(base, sig, star_of)


def star_expand(A: FinStructure, star: Optional[StarSignature] = None) -> FinStructure:
    """Canonical expansion: each partner is interpreted as the complement
    of its relation's table."""
    if star is None:
        star = morleyize_signature(A.sig)
    elif A.sig != star.base:
        raise ValidationError("structure signature differs from the star base")
    relations = {r: set(ts) for r, ts in A.relations.items()}
    for r, rs in star.star_of.items():
        argsorts = star.base.relations[r]
        space = set(itertools.product(*(A.carriers[s] for s in argsorts)))
        relations[rs] = space - A.relations[r]
    return FinStructure(star.sig,
                        {s: list(A.carriers[s]) for s in star.sig.sorts},
                        functions={f: dict(t) for f, t in A.functions.items()},
                        relations=relations,
                        constants=dict(A.constants),
                        name=A.name + STAR_SUFFIX)


def star_reduct(B: FinStructure, star: StarSignature) -> FinStructure:
    """Forget the complement tables."""
    if B.sig != star.sig:
        raise ValidationError("structure signature differs from the star signature")
    relations = {r: set(B.relations[r]) for r in star.base.relations}
    return FinStructure(star.base,
                        {s: list(B.carriers[s]) for s in star.base.sorts},
                        functions={f: dict(t) for f, t in B.functions.items()},
                        relations=relations,
                        constants=dict(B.constants),
                        name=B.name + "|base")


def is_regular(B: FinStructure, star: Optional[StarSignature] = None) -> bool:
    """Every partner table is exactly the complement of its relation."""
    if star is None:
        star = star_view(B.sig)
    elif B.sig != star.sig:
        raise ValidationError("structure signature differs from the star signature")
    for r, rs in star.star_of.items():
        argsorts = star.base.relations[r]
        for tup in itertools.product(*(B.carriers[s] for s in argsorts)):
            if B.holds(r, tup) == B.holds(rs, tup):
                return False
    return True


# ---------------------------------------------------------------------------
# the starred theory and strictness


def complement_axioms(star: StarSignature, r: str):
    """The universal pair for one relation: never both, always one."""
    argsorts = star.base.relations[r]
    xs = tuple(Var(f"x{i}", s) for i, s in enumerate(argsorts))
    both = (Rel(r, xs), Rel(star.star_of[r], xs))
    disjoint = Sentence(xs, Clause(both, ()))
    covering = Sentence(xs, Clause((), both))
    return disjoint, covering


@dataclass
class StarTheory:
    """A base theory plus the complement axiom pair for every relation."""
    base: Theory
    star: StarSignature
    pairs: Dict[str, tuple]

    @property
    def axioms(self) -> tuple:
        out = []
        for r in sorted(self.pairs):
            out.extend(self.pairs[r])
        return tuple(out)

    @property
    def theory(self) -> Theory:
        return Theory(self.base.name + STAR_SUFFIX, self.star.sig,
                      self.base.sentences + self.axioms)


def morleyize_theory(T: Theory, star: Optional[StarSignature] = None) -> StarTheory:
    if star is None:
        star = morleyize_signature(T.signature)
    elif T.signature != star.base:
        raise ValidationError("theory signature differs from the star base")
    pairs = {r: complement_axioms(star, r) for r in star.star_of}
    return StarTheory(T, star, pairs)


def is_strict(subject) -> dict:
    """No model admits an embedded one-point full structure.

    Theory route: evaluate the universal-shaped axioms in the one-point
    structure (other shapes hold there anyway); assumes the h-universal
    consequences are among the explicit axioms.  Context route: search
    every member for a one-point full substructure.
    """
    if isinstance(subject, StarTheory):
        subject = subject.theory
    if isinstance(subject, Theory):
        one = trivial_structure(subject.signature)
        for s in subject.sentences:
            if not is_universal_shape(s):
                continue
            if not one.satisfies(s):
                return {"claim": "strict", "route": "axioms", "strict": True,
                        "witness": print_sentence(s)}
        return {"claim": "strict", "route": "axioms", "strict": False,
                "witness": None}
    if isinstance(subject, Context):
        for i, M in enumerate(subject.K):
            point = trivial_embeds(M)
            if point is not None:
                return {"claim": "strict", "route": "members", "strict": False,
                        "witness": {"member_index": i, "point": point}}
        return {"claim": "strict", "route": "members", "strict": True,
                "witness": None}
    raise ValidationError("is_strict expects a theory or a context")


# ---------------------------------------------------------------------------
# laws of the canonical expansion


def check_canexp(bases: Sequence[FinStructure],
                 star: Optional[StarSignature] = None) -> dict:
    """Homs between canonical expansions are embeddings, their base maps
    are embeddings, and they are exactly the base embeddings; hard law."""
    bases = list(bases)
    if not bases:
        raise ValidationError("the check needs at least one structure")
    if star is None:
        star = morleyize_signature(bases[0].sig)
    expanded = [(B, star_expand(B, star)) for B in bases]
    checked = 0
    for B, Bs in expanded:
        for C, Cs in expanded:
            homs = enumerate_homs(Bs, Cs)
            for h in homs:
                checked += 1
                if not is_embedding(h):
                    raise TheoremViolation(
                        f"hom {Bs.name} -> {Cs.name} between canonical "
                        "expansions is not an embedding")
                try:
                    base_map = make_hom(B, C, h.as_dict())
                except ValidationError as exc:
                    raise TheoremViolation(
                        f"base map of a star hom is not a hom: {exc}")
                if not is_embedding(base_map):
                    raise TheoremViolation(
                        f"base map of a star hom {Bs.name} -> {Cs.name} "
                        "is not an embedding")
            base_embeddings = enumerate_homs(B, C, mode="embedding")
            if {h.mapping for h in homs} != {f.mapping for f in base_embeddings}:
                raise TheoremViolation(
                    f"star homs {Bs.name} -> {Cs.name} and base embeddings "
                    "are not the same maps")
    return {"claim": "expansion-homs-are-embeddings", "checked": checked,
            "verdict": "holds"}


def check_stex(bases: Sequence[FinStructure],
               star: Optional[StarSignature] = None) -> dict:
    """The one-point structure embeds into no canonical expansion: a full
    point would satisfy a relation and its complement at once."""
    bases = list(bases)
    if not bases:
        raise ValidationError("the check needs at least one structure")
    if star is None:
        star = morleyize_signature(bases[0].sig)
    if not star.star_of:
        raise ValidationError("the check needs at least one relation symbol")
    for B in bases:
        point = trivial_embeds(star_expand(B, star))
        if point is not None:
            raise TheoremViolation(
                f"one-point full substructure {point} inside the expansion "
                f"of {B.name}")
    return {"claim": "no-point-in-expansions", "checked": len(bases),
            "verdict": "holds"}


# ---------------------------------------------------------------------------
# membership transfer


def in_star_quasivariety(B: FinStructure, K_star: Sequence[FinStructure],
                         star: StarSignature) -> dict:
    """Membership on the star side.  The trivial structure is a member no
    matter what (the empty product); anything else that belongs embeds
    into a single member, so both routes are reported."""
    trivial = find_isomorphism(B, trivial_structure(star.sig)) is not None
    separation = in_quasivariety(B, K_star)
    embeds = trivial or in_universal_class(B, K_star).holds
    return {"holds": separation.holds or trivial,
            "separation": separation.holds,
            "embeds": embeds,
            "trivial": trivial}


def check_star_transfer(A: FinStructure, ctx: Context,
                        scope: Optional[Scope] = None) -> dict:
    """Universal-class membership of A matches quasivariety membership of
    its canonical expansion relative to the expanded generators; the
    expansion laws are asserted along the way.  With a scope, the
    existential-closedness bridge is checked too."""
    if A.sig != ctx.signature:
        raise ValidationError("structure signature differs from the context")
    star = morleyize_signature(ctx.signature)
    if not star.star_of:
        raise ValidationError("the transfer needs at least one relation symbol")
    A_star = star_expand(A, star)
    K_star = [star_expand(M, star) for M in ctx.K]
    u_side = in_universal_class(A, ctx.K)
    w_side = in_star_quasivariety(A_star, K_star, star)
    if u_side.holds != w_side["holds"]:
        raise TheoremViolation(
            f"membership transfer failed on {A.name}: universal class "
            f"{u_side.holds}, star quasivariety {w_side['holds']}")
    canexp = check_canexp([A] + list(ctx.K), star)
    stex = check_stex([A] + list(ctx.K), star)
    report = {
        "claim": "star-transfer",
        "exactness": "exact",
        "in_universal_class": u_side.holds,
        "member_index": u_side.member_index,
        "star_in_quasivariety": w_side["holds"],
        "star_routes_agree": w_side["separation"] == w_side["embeds"],
        "expansion_homs_checked": canexp["checked"],
        "expansions_without_point": stex["checked"],
        "verdict": "holds",
        "ec_bridge": None,
    }
    if scope is not None:
        report["scope"] = scope.as_dict()
        report["ec_bridge"] = check_ec_transfer(A, ctx, scope)
    return report


# ---------------------------------------------------------------------------
# strongly prime a-types against star-side primes


def _star_of_closed(p: ClosedAType, star: StarSignature,
                    uni_star: AtomUniverse) -> ClosedAType:
    """p plus the starred forms of the relation atoms absent from p, same
    term partition, over the star universe."""
    terms = p.universe.terms
    reps = sorted(set(p.class_of.values()))
    rels = set(p.rel_atoms)
    for r, argsorts in star.base.relations.items():
        pools = [[i for i in reps if terms[i].sort == s] for s in argsorts]
        for combo in itertools.product(*pools):
            if (r, combo) not in p.rel_atoms:
                rels.add((star.star_of[r], combo))
    return ClosedAType(uni_star, dict(p.class_of), rels)


def star_prime_bijection(pi: AType, ctx: Context,
                         depth: Optional[int] = None) -> dict:
    """Strongly prime a-types over the base language correspond one to one
    with star-side primes of the expanded term algebra, by adjoining the
    complements of the missing relation atoms; mismatch is a hard error."""
    A = pi.base
    if A is None or pi.is_ground():
        raise ValidationError("the bijection needs a base structure and variables")
    if A.sig != ctx.signature:
        raise ValidationError("base signature differs from the context")
    star = morleyize_signature(ctx.signature)
    if not star.star_of:
        raise ValidationError("the bijection needs at least one relation symbol")
    d = ctx.depth if depth is None else depth
    uni = term_universe(ctx.signature, pi.variables, d, base=A)
    strong = enumerate_prime_witnesses(pi, ctx, uni, embeddings_only=True)
    A_star = star_expand(A, star)
    K_star = [star_expand(M, star) for M in ctx.K]
    ctx_star = Context(K_star, ctx.size_bound, d, signature=star.sig)
    uni_star = term_universe(star.sig, pi.variables, d, base=A_star)
    pi_star = make_atype(A_star, pi.variables, pi.atoms)
    primes_star = enumerate_prime_witnesses(pi_star, ctx_star, uni_star)
    image = [_star_of_closed(w.closed, star, uni_star) for w in strong]
    if len(set(image)) != len(image):
        raise TheoremViolation("starring collapsed two strongly prime a-types")
    star_list = [w.closed for w in primes_star]
    if set(image) != set(star_list):
        raise TheoremViolation(
            "strongly prime a-types and star-side primes do not correspond")
    position = {c: i for i, c in enumerate(star_list)}
    pairs = [{"strong": i, "star": position[c]} for i, c in enumerate(image)]
    return {
        "claim": "star-prime-bijection",
        "scope": {"depth": d},
        "n_strongly_prime": len(strong),
        "n_star_prime": len(star_list),
        "pairs": pairs,
        "verdict": "bijective",
    }


# ---------------------------------------------------------------------------
# existential closedness against star-side geometric closedness


def _extension_targets(ctx: Context) -> List[FinStructure]:
    """Members plus pairwise products within the size bound: the finite
    stand-ins for extensions."""
    out = list(ctx.K)
    for i in range(len(ctx.K)):
        for j in range(i, len(ctx.K)):
            P = product([ctx.K[i], ctx.K[j]], sig=ctx.signature)
            if P.size() <= ctx.size_bound:
                out.append(P)
    return out


def _literal_text(atoms, lit) -> str:
    i, positive = lit
    text = print_atom(atoms[i])
    return text if positive else "not " + text


def _scoped_primitive_reflection(ch: ScopedChecker) -> dict:
    """Reflection of scoped primitive sentences along the base map, in the
    fragment the starred language can see: conjunctions of relation
    literals of either sign and positive equalities, plus at most one
    extra literal of any kind.  Shapes mirror the geometric-closedness
    loop so the two computations are comparable one for one.
    """
    atoms = ch.atoms
    full_a = (1 << ch.n_asg_a) - 1
    full_b = (1 << ch.n_asg_b) - 1
    all_atoms = (1 << len(atoms)) - 1
    lits = [(ch.masks_a[i], ch.masks_b[i], (i, True))
            for i in range(len(atoms))]
    for i, a in enumerate(atoms):
        if isinstance(a, Rel):
            lits.append((ch.masks_a[i] ^ full_a, ch.masks_b[i] ^ full_b,
                         (i, False)))
    rel_idx = [i for i, a in enumerate(atoms) if isinstance(a, Rel)]
    for size in range(ch.scope.max_premise + 1):
        for combo in itertools.combinations(range(len(lits)), size):
            mask_a = full_a
            mask_b = full_b
            for j in combo:
                mask_a &= lits[j][0]
                mask_b &= lits[j][1]
            # an atom forced by the premises at the source but not at the
            # target: the target satisfies premises plus its negation
            valid_a = all_atoms
            bits = mask_a
            while bits and valid_a:
                low = bits & -bits
                valid_a &= ch.true_a[low.bit_length() - 1]
                bits ^= low
            valid_b = all_atoms
            bits = mask_b
            while bits:
                low = bits & -bits
                valid_b &= ch.true_b[low.bit_length() - 1]
                bits ^= low
            bad = valid_a & ~valid_b
            if bad:
                j = (bad & -bad).bit_length() - 1
                return {"holds": False, "counterexample": {
                    "kind": "forced-atom",
                    "premises": [_literal_text(atoms, lits[k][2]) for k in combo],
                    "conclusion": print_atom(atoms[j])}}
            if mask_b == 0:
                continue
            # premises plus one more relation atom: jointly unsatisfiable
            # at the source, satisfiable at the target
            for i in rel_idx:
                if mask_a & ch.masks_a[i] == 0 and mask_b & ch.masks_b[i]:
                    conj = [_literal_text(atoms, lits[k][2]) for k in combo]
                    conj.append(print_atom(atoms[i]))
                    return {"holds": False, "counterexample": {
                        "kind": "new-solution", "literals": conj}}
    return {"holds": True, "counterexample": None}


def check_ec_transfer(A: FinStructure, ctx: Context, scope: Scope) -> dict:
    """Existential closedness of A against members and pairwise products
    matches scoped geometric closedness of its canonical expansion,
    embedding by embedding; disagreement is a hard error."""
    if A.sig != ctx.signature:
        raise ValidationError("structure signature differs from the context")
    star = morleyize_signature(ctx.signature)
    if not star.star_of:
        raise ValidationError("the bridge needs at least one relation symbol")
    A_star = star_expand(A, star)
    maps = []
    reflective = True
    closed = True
    for B in _extension_targets(ctx):
        B_star = star_expand(B, star)
        for f in enumerate_homs(A, B, mode="embedding"):
            refl = _scoped_primitive_reflection(ScopedChecker(f, scope))
            try:
                f_star = make_hom(A_star, B_star, f.as_dict())
            except ValidationError as exc:
                raise TheoremViolation(
                    f"an embedding into {B.name} does not lift to the "
                    f"expansions: {exc}")
            gc = ScopedChecker(f_star, scope).check_geometric_closedness()
            if refl["holds"] != gc["holds"]:
                raise TheoremViolation(
                    "primitive reflection and star geometric closedness "
                    f"disagree on an embedding into {B.name}")
            reflective = reflective and refl["holds"]
            closed = closed and gc["holds"]
            maps.append({
                "target": B.name,
                "map": f.as_dict(),
                "reflects_primitives": refl["holds"],
                "star_geometrically_closed": gc["holds"],
                "counterexample": refl["counterexample"] or gc["counterexample"],
            })
    return {
        "claim": "existential-closedness-transfer",
        "scope": scope.as_dict(),
        "ambient_in_universal_class": in_universal_class(A, ctx.K).holds,
        "n_embeddings": len(maps),
        "existentially_closed": reflective,
        "star_geometrically_closed": closed,
        "maps": maps,
        "verdict": "holds",
    }


# ---------------------------------------------------------------------------
# bounded search around the open separation question


def search_pec_gc_gap(candidates: Sequence[FinStructure], ctx: Context,
                      scope: Scope) -> dict:
    """Bounded search for a non-trivial quasivariety member that is
    positively existentially closed (every hom into the target family is
    a scoped immersion) yet not scoped geometrically closed.  Finding
    nothing decides nothing, and a hit is bounded raw material to study,
    never a verdict on the general question."""
    targets = _extension_targets(ctx)
    one = trivial_structure(ctx.signature)
    hits = []
    examined = []
    for A in candidates:
        if A.sig != ctx.signature:
            raise ValidationError(f"candidate {A.name!r} is over the wrong signature")
        note = {"name": A.name, "in_quasivariety": None, "trivial": False,
                "pos_ec": None, "geometrically_closed": None}
        examined.append(note)
        if not in_quasivariety(A, ctx.K).holds:
            note["in_quasivariety"] = False
            continue
        note["in_quasivariety"] = True
        if find_isomorphism(A, one) is not None:
            note["trivial"] = True
            continue
        pos_ec = True
        closed = True
        for B in targets:
            for f in enumerate_homs(A, B):
                checker = ScopedChecker(f, scope)
                if not checker.check_immersion()["holds"]:
                    pos_ec = False
                    break
                if closed and not checker.check_geometric_closedness()["holds"]:
                    closed = False
            if not pos_ec:
                break
        note["pos_ec"] = pos_ec
        if not pos_ec:
            continue
        note["geometrically_closed"] = closed
        if not closed:
            hits.append(note["name"])
    return {
        "claim": "open-question-search",
        "scope": scope.as_dict(),
        "strict_context": is_strict(ctx)["strict"],
        "n_candidates": len(examined),
        "hits": hits,
        "examined": examined,
        "verdict": "candidate-found" if hits else "no-candidate-found",
        "note": "bounded instance search; neither outcome settles the question",
    }
