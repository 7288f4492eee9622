"""Affine geometry over a finite base: varieties, scoped quasi-algebraic
diagram checks, variety morphisms, coordinate algebras, and the duality
instance checker.

Scoped checks never materialize the quasi-algebraic diagram.  Atoms within
the scope get one bitmask over all variable assignments per side of a hom;
a universal implication holds exactly when the premise mask is covered by
the conclusion mask, so sentence enumeration reduces to subset iteration
over the atom pool.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

from .errors import ScopeError, TheoremViolation, ValidationError
from .atypes import (AType, AtomUniverse, ClosedAType, atype_of_eval,
                     eval_atom_in, eval_term_in, full_closed,
                     intersect_closed, make_atype, term_universe)
from .radical import Context, materialize_term_quotient, radical
from .structures import (FinStructure, Hom, enumerate_homs, find_isomorphism,
                         in_quasivariety, make_hom, trivial_embeds)
from .syntax import (App, Atom, Const, Eq, Implication, Negation, Rel,
                     Sentence, Var, atom_vars, parse_term, print_atom,
                     print_sentence, substitute, substitute_atom)

ATOM_POOL_GUARD = 4000


@dataclass(frozen=True)
class Scope:
    """Bounds for quasi-algebraic diagram queries: premise count, term
    depth, and universal variables per sort."""
    max_premise: int
    depth: int
    max_vars: int = 2

    def as_dict(self):
        return {"max_premise": self.max_premise, "depth": self.depth,
                "max_vars": self.max_vars}


# ---------------------------------------------------------------------------
# varieties and their a-types


@dataclass(frozen=True)
class Variety:
    pi: AType
    points: tuple  # tuples of elements, one per variable, canonical order
    name: str = "V"

    @property
    def ambient(self) -> FinStructure:
        return self.pi.base

    @property
    def variables(self) -> tuple:
        return self.pi.variables

    def point_dicts(self):
        names = [v.name for v in self.variables]
        return [dict(zip(names, p)) for p in self.points]

    def __repr__(self):
        return f"Variety({self.name!r}, {len(self.points)} points)"


def rational_points(pi: AType, name: str = "V") -> Variety:
    """Exhaustive evaluation of the defining atoms over the ambient."""
    A = pi.base
    if A is None:
        raise ValidationError("a variety needs an ambient structure")
    names = [v.name for v in pi.variables]
    pools = [A.carriers[v.sort] for v in pi.variables]
    points = []
    for combo in itertools.product(*pools):
        asg = dict(zip(names, combo))
        if all(eval_atom_in(A, a, None, asg) for a in pi.atoms):
            points.append(tuple(combo))
    return Variety(pi, tuple(points), name=name)


@dataclass
class PointsAType:
    closed: ClosedAType
    degenerate: bool  # empty point set: full universe by convention


def atype_of_points(V: Variety, universe: Optional[AtomUniverse] = None,
                    depth: int = 1) -> PointsAType:
    """Intersection of the evaluation a-types of the variety's points."""
    A = V.ambient
    if universe is None:
        universe = term_universe(A.sig, V.variables, depth, base=A)
    points = V.point_dicts()
    if not points:
        return PointsAType(full_closed(universe), True)
    tps = [atype_of_eval(universe, A, assignment=p) for p in points]
    return PointsAType(intersect_closed(tps), False)


def _closed_diff_samples(big: ClosedAType, small: ClosedAType, limit: int = 3):
    """Atoms holding in big but missing from small, up to the limit."""
    out = []
    terms = big.universe.terms
    for i, t in enumerate(terms):
        if len(out) >= limit:
            return out
        for u in terms[i + 1:]:
            if t.sort != u.sort:
                continue
            if big.class_of[t] == big.class_of[u] and \
                    small.class_of[t] != small.class_of[u]:
                out.append(Eq(t, u))
                break
    for r, cls in sorted(big.rel_atoms):
        if len(out) >= limit:
            return out
        atom = Rel(r, tuple(terms[c] for c in cls))
        if not small.contains(atom):
            out.append(atom)
    return out


def check_nullstellensatz(pi: AType, ctx: Context) -> dict:
    """a-type of the rational points versus the radical, both computed over
    one shared depth-bounded term universe."""
    A = pi.base
    if A is None:
        raise ValidationError("the query needs an ambient structure")
    if A.sig != ctx.signature:
        raise ValidationError("ambient signature differs from the context")
    uni = term_universe(ctx.signature, pi.variables, ctx.depth, base=A)
    V = rational_points(pi)
    lhs = atype_of_points(V, universe=uni)
    rhs = radical(pi, ctx, uni)
    equal = lhs.closed == rhs.radical
    ambient_in_w = in_quasivariety(A, ctx.K).holds
    if ambient_in_w and not rhs.radical.le(lhs.closed):
        raise TheoremViolation(
            "radical not contained in the point a-type although the ambient "
            "is in the quasivariety")
    report = {
        "claim": "nullstellensatz",
        "scope": {"depth": ctx.depth},
        "verdict": "equal" if equal else "unequal",
        "n_points": len(V.points),
        "degenerate_variety": lhs.degenerate,
        "radical_degenerate": rhs.degenerate,
        "ambient_in_quasivariety": ambient_in_w,
        "exactness": rhs.exactness,
        "points_only": [], "radical_only": [],
    }
    if not equal:
        report["points_only"] = [print_atom(a) for a in
                                 _closed_diff_samples(lhs.closed, rhs.radical)]
        report["radical_only"] = [print_atom(a) for a in
                                  _closed_diff_samples(rhs.radical, lhs.closed)]
    return report


# ---------------------------------------------------------------------------
# scoped quasi-algebraic diagram checks


class ScopedChecker:
    """Masks for every scoped atom on both sides of a hom.

    Assignment masks are integers with one bit per variable assignment;
    an implication holds on a side exactly when its premise mask stays
    inside the conclusion mask.
    """

    def __init__(self, f: Hom, scope: Scope):
        self.f = f
        self.scope = scope
        A, B = f.source, f.target
        sig = A.sig
        self.variables = tuple(Var(f"v{i}_{s}", s)
                               for s in sig.sorts
                               for i in range(scope.max_vars))
        self.universe = term_universe(sig, self.variables, scope.depth, base=A)
        terms = self.universe.terms
        atoms: List[Atom] = []
        for s in sig.sorts:
            members = [t for t in terms if t.sort == s]
            for i, t in enumerate(members):
                for u in members[i + 1:]:
                    atoms.append(Eq(t, u))
        for r, argsorts in sorted(sig.relations.items()):
            pools = [[t for t in terms if t.sort == s] for s in argsorts]
            for combo in itertools.product(*pools):
                atoms.append(Rel(r, combo))
        if len(atoms) > ATOM_POOL_GUARD:
            raise ScopeError(f"scoped atom pool has {len(atoms)} atoms; "
                             "reduce the scope")
        self.atoms = atoms
        names = [v.name for v in self.variables]
        self.masks_a, self.true_a, self.n_asg_a = self._side(A, names, None)
        self.masks_b, self.true_b, self.n_asg_b = self._side(B, names,
                                                             f.as_dict())

    def _side(self, M: FinStructure, names, elem_map):
        pools = [M.carriers[v.sort] for v in self.variables]
        masks = [0] * len(self.atoms)
        true_atoms = []
        count = 0
        for combo in itertools.product(*pools):
            asg = dict(zip(names, combo))
            bits = 0
            for j, a in enumerate(self.atoms):
                if eval_atom_in(M, a, elem_map, asg):
                    masks[j] |= 1 << count
                    bits |= 1 << j
            true_atoms.append(bits)
            count += 1
        return masks, true_atoms, count

    def _premise_sets(self):
        for size in range(self.scope.max_premise + 1):
            yield from itertools.combinations(range(len(self.atoms)), size)

    def _sentence(self, premise_idx, conclusion_idx=None) -> Sentence:
        premises = tuple(self.atoms[i] for i in premise_idx)
        used = set()
        for a in premises:
            used |= atom_vars(a)
        if conclusion_idx is None:
            matrix = Negation(premises)
        else:
            conclusion = self.atoms[conclusion_idx]
            matrix = Implication(premises, conclusion)
            used |= atom_vars(conclusion)
        prefix = tuple(v for v in self.variables if v in used)
        return Sentence(prefix, matrix)

    def check_geometric_closedness(self) -> dict:
        all_atoms = (1 << len(self.atoms)) - 1
        full_a = (1 << self.n_asg_a) - 1
        full_b = (1 << self.n_asg_b) - 1
        for combo in self._premise_sets():
            mask_a = full_a
            mask_b = full_b
            for i in combo:
                mask_a &= self.masks_a[i]
                mask_b &= self.masks_b[i]
            valid_a = all_atoms
            bits = mask_a
            while bits and valid_a:
                low = bits & -bits
                valid_a &= self.true_a[low.bit_length() - 1]
                bits ^= low
            if not valid_a:
                continue
            valid_b = all_atoms
            bits = mask_b
            while bits:
                low = bits & -bits
                valid_b &= self.true_b[low.bit_length() - 1]
                bits ^= low
            bad = valid_a & ~valid_b
            if bad:
                j = (bad & -bad).bit_length() - 1
                s = self._sentence(combo, j)
                return {"holds": False, "counterexample": print_sentence(s),
                        "scope": self.scope.as_dict()}
        return {"holds": True, "counterexample": None,
                "scope": self.scope.as_dict()}

    def check_immersion(self) -> dict:
        for combo in self._premise_sets():
            if not combo:
                continue
            mask_a = self.masks_a[combo[0]]
            mask_b = self.masks_b[combo[0]]
            for i in combo[1:]:
                mask_a &= self.masks_a[i]
                mask_b &= self.masks_b[i]
            if mask_a == 0 and mask_b != 0:
                s = self._sentence(combo)
                return {"holds": False, "counterexample": print_sentence(s),
                        "scope": self.scope.as_dict()}
        return {"holds": True, "counterexample": None,
                "scope": self.scope.as_dict()}


def is_geometrically_closed_hom(f: Hom, scope: Scope) -> dict:
    """Scoped check: every quasi-algebraic sentence with source parameters
    that holds in the source still holds in the target through f."""
    report = ScopedChecker(f, scope).check_geometric_closedness()
    report["claim"] = "geometrically-closed"
    report["verdict"] = "holds" if report["holds"] else "fails"
    return report


def is_immersion(f: Hom, scope: Scope) -> dict:
    """Scoped check: h-universal sentences with source parameters are
    preserved through f."""
    report = ScopedChecker(f, scope).check_immersion()
    report["claim"] = "immersion"
    report["verdict"] = "holds" if report["holds"] else "fails"
    return report


def check_gcim(f: Hom, scope: Scope) -> dict:
    """Geometrically closed into a target with no one-point full
    substructure forces immersion; hard check of the scoped instance.

    The scoped form is still a theorem: a premise set refutable in the
    source makes every implication from it hold vacuously, so closedness
    pushes every scoped atom onto the target assignments satisfying the
    premises; an assignment satisfying all scoped atoms collapses to a
    one-point full substructure.  Depth >= 1 keeps the closure atoms in
    the pool when function symbols exist.
    """
    if f.source.sig.functions and scope.depth < 1:
        raise ScopeError("the implication needs depth >= 1 when the "
                         "signature has function symbols")
    checker = ScopedChecker(f, scope)
    gc = checker.check_geometric_closedness()
    im = checker.check_immersion()
    point = trivial_embeds(f.target)
    applicable = gc["holds"] and point is None
    if applicable and not im["holds"]:
        raise TheoremViolation(
            "geometrically closed into a target without a one-point full "
            f"substructure, yet not an immersion: {im['counterexample']}")
    return {
        "claim": "gc-implies-immersion",
        "scope": scope.as_dict(),
        "geometrically_closed": gc["holds"],
        "gc_counterexample": gc["counterexample"],
        "one_point_in_target": point,
        "immersion": im["holds"],
        "immersion_counterexample": im["counterexample"],
        "antecedent_holds": applicable,
        "verdict": "checked" if applicable else "vacuous",
    }


# ---------------------------------------------------------------------------
# side conditions relative to the generator class


def _atoms_params(atoms, sig):
    """Parameter constants occurring in the atoms, canonically ordered;
    signature constants are pinned by the structures and excluded."""
    seen = {}
    for a in sorted(atoms, key=str):
        stack = list(a.args) if isinstance(a, Rel) else [a.left, a.right]
        while stack:
            t = stack.pop()
            if isinstance(t, Const) and t.name not in sig.constants:
                seen.setdefault(t.name, t.sort)
            elif isinstance(t, App):
                stack.extend(t.args)
    return sorted(seen.items())


def _holds_in_all_members(ctx: Context, variables, check, params):
    """Run a pointwise predicate in every member of K, quantifying both the
    variables and the parameter names universally."""
    for M in ctx.K:
        par_pools = [M.carriers[s] for _, s in params]
        names = [n for n, _ in params]
        var_pools = [M.carriers[v.sort] for v in variables]
        var_names = [v.name for v in variables]
        for pvals in itertools.product(*par_pools):
            pmap = dict(zip(names, pvals))
            for vvals in itertools.product(*var_pools):
                asg = dict(zip(var_names, vvals))
                if not check(M, pmap, asg):
                    return False, (M, pmap, asg)
    return True, None


def _eval_conj(M, atoms, elem_map, asg) -> bool:
    return all(eval_atom_in(M, a, elem_map, asg) for a in atoms)


def _exists_extension(M, atoms, elem_map, asg, exvars) -> bool:
    names = [v.name for v in exvars]
    for combo in itertools.product(*(M.carriers[v.sort] for v in exvars)):
        if _eval_conj(M, atoms, elem_map, {**asg, **dict(zip(names, combo))}):
            return True
    return False


# ---------------------------------------------------------------------------
# variety morphisms


@dataclass
class VarietyMorphism:
    source: Variety
    target: Variety
    formula: tuple            # conjunction of atoms over source + target vars
    graph: dict               # source point tuple -> target point tuple
    witness_terms: Optional[tuple] = None

    def __call__(self, point):
        return self.graph[tuple(point)]

    def same_graph(self, other: "VarietyMorphism") -> bool:
        return self.graph == other.graph

    def __repr__(self):
        return (f"VarietyMorphism({self.source.name} -> {self.target.name}, "
                f"{len(self.graph)} points)")


def make_morphism(V: Variety, W: Variety, formula, ctx: Context) -> VarietyMorphism:
    """Validate the defining conditions of a morphism and build its graph.

    Functionality, domain equivalence and codomain containment are checked
    in every member of K under all assignments of the parameters, a sound
    strengthening of the theory-relative conditions; the graph is then read
    off pointwise in the ambient.
    """
    A = V.ambient
    if W.ambient != A:
        raise ValidationError("morphism endpoints must share the ambient")
    formula = tuple(formula)
    xs, ys = V.variables, W.variables
    if {v.name for v in xs} & {v.name for v in ys}:
        raise ValidationError("source and target variables must be disjoint")
    allowed = {v.name: v for v in xs + ys}
    for a in formula:
        for v in atom_vars(a):
            if allowed.get(v.name) != v:
                raise ValidationError(f"formula uses unknown variable {v.name!r}")
    params = _atoms_params(list(formula) + list(V.pi.atoms)
                           + list(W.pi.atoms), ctx.signature)

    ys2 = tuple(Var(v.name + "__2", v.sort) for v in ys)
    formula2 = [substitute_atom(a, dict(zip(ys, ys2))) for a in formula]

    def functional(M, pmap, asg):
        if not _eval_conj(M, formula, pmap, asg):
            return True
        if not _eval_conj(M, formula2, pmap, asg):
            return True
        return all(asg[v.name] == asg[w.name] for v, w in zip(ys, ys2))

    ok, bad = _holds_in_all_members(ctx, xs + ys + ys2, functional, params)
    if not ok:
        raise ValidationError("formula is not functional in the target "
                              f"variables (member {bad[0].name})")

    def domain(M, pmap, asg):
        lhs = _exists_extension(M, formula, pmap, asg, ys)
        return lhs == _eval_conj(M, V.pi.atoms, pmap, asg)

    ok, bad = _holds_in_all_members(ctx, xs, domain, params)
    if not ok:
        raise ValidationError("domain of the formula does not match the "
                              f"source variety (member {bad[0].name})")

    def codomain(M, pmap, asg):
        if not _eval_conj(M, formula, pmap, asg):
            return True
        return _eval_conj(M, W.pi.atoms, pmap, asg)

    ok, bad = _holds_in_all_members(ctx, xs + ys, codomain, params)
    if not ok:
        raise ValidationError("formula does not land in the target variety "
                              f"(member {bad[0].name})")

    graph = {}
    xnames = [v.name for v in xs]
    ynames = [v.name for v in ys]
    for p in V.points:
        asg = dict(zip(xnames, p))
        images = []
        for combo in itertools.product(*(A.carriers[y.sort] for y in ys)):
            if _eval_conj(A, formula, None, {**asg, **dict(zip(ynames, combo))}):
                images.append(tuple(combo))
        if len(images) != 1:
            raise ValidationError(f"point {p} has {len(images)} images in "
                                  "the ambient; the graph is not a function")
        if images[0] not in W.points:
            raise ValidationError(f"image of {p} lies outside the target")
        graph[tuple(p)] = images[0]
    return VarietyMorphism(V, W, formula, graph)


def identity_morphism(V: Variety, ctx: Context) -> VarietyMorphism:
    fresh = tuple(Var(v.name + "__t", v.sort) for v in V.variables)
    ren = dict(zip(V.variables, fresh))
    W = Variety(make_atype(V.ambient, fresh,
                           [substitute_atom(a, ren) for a in V.pi.atoms]),
                tuple(V.points), name=V.name)
    formula = list(V.pi.atoms) + [Eq(y, x) for x, y in zip(V.variables, fresh)]
    m = make_morphism(V, W, formula, ctx)
    m.witness_terms = tuple(V.variables)
    return m


def extract_witness_terms(phi, theta, source_vars, target_vars, ctx: Context,
                          depth: int, base: Optional[FinStructure] = None) -> dict:
    """Terms t(x) with phi(x, t(x)) following from theta(x) in every member
    of K; the first tuple in canonical order wins.

    Preconditions checked first: phi functional in the target variables
    across K, and theta equivalent to the target-projection of phi.
    """
    phi, theta = tuple(phi), tuple(theta)
    xs, ys = tuple(source_vars), tuple(target_vars)
    params = _atoms_params(list(phi) + list(theta), ctx.signature)

    ys2 = tuple(Var(v.name + "__2", v.sort) for v in ys)
    phi2 = [substitute_atom(a, dict(zip(ys, ys2))) for a in phi]

    def functional(M, pmap, asg):
        if not _eval_conj(M, phi, pmap, asg):
            return True
        if not _eval_conj(M, phi2, pmap, asg):
            return True
        return all(asg[v.name] == asg[w.name] for v, w in zip(ys, ys2))

    ok, _ = _holds_in_all_members(ctx, xs + ys + ys2, functional, params)
    if not ok:
        raise ValidationError("the formula is not functional in the target "
                              "variables across the class")

    def equivalent(M, pmap, asg):
        return _exists_extension(M, phi, pmap, asg, ys) == \
            _eval_conj(M, theta, pmap, asg)

    ok, _ = _holds_in_all_members(ctx, xs, equivalent, params)
    if not ok:
        raise ValidationError("the premise is not equivalent to the "
                              "projection of the formula across the class")

    uni = term_universe(ctx.signature, xs, depth, base=base)
    pools = {s: [t for t in uni.terms if t.sort == s]
             for s in ctx.signature.sorts}

    def works(terms_tuple):
        # parameters the candidate itself introduces are quantified too
        own = dict(params)
        stack = list(terms_tuple)
        while stack:
            t = stack.pop()
            if isinstance(t, Const) and t.name not in ctx.signature.constants:
                own.setdefault(t.name, t.sort)
            elif isinstance(t, App):
                stack.extend(t.args)
        all_params = sorted(own.items())

        def entails(M, pmap, asg):
            if not _eval_conj(M, theta, pmap, asg):
                return True
            full = dict(asg)
            for y, t in zip(ys, terms_tuple):
                full[y.name] = eval_term_in(M, t, pmap, asg)
            return _eval_conj(M, phi, pmap, full)
        ok, _ = _holds_in_all_members(ctx, xs, entails, all_params)
        return ok

    for combo in itertools.product(*(pools[y.sort] for y in ys)):
        if works(combo):
            return {"found": True, "terms": combo, "depth": depth}
    return {"found": False, "terms": None, "depth": depth}


def morphism_witness_terms(m: VarietyMorphism, ctx: Context,
                           depth: int) -> dict:
    """Witness terms for a validated morphism, also verified pointwise."""
    out = extract_witness_terms(m.formula, m.source.pi.atoms,
                                m.source.variables, m.target.variables,
                                ctx, depth, base=m.source.ambient)
    if not out["found"]:
        return out
    A = m.source.ambient
    xnames = [v.name for v in m.source.variables]
    for p, q in m.graph.items():
        asg = dict(zip(xnames, p))
        value = tuple(eval_term_in(A, t, None, asg) for t in out["terms"])
        if value != q:
            raise TheoremViolation("witness terms disagree with the graph "
                                   f"at point {p}")
    return out


def compose_morphisms(g: VarietyMorphism, f: VarietyMorphism, ctx: Context,
                      depth: int) -> VarietyMorphism:
    """g after f via witness-term substitution; the composite graph must
    agree with the pointwise composition."""
    if f.target.pi != g.source.pi:
        raise ValidationError("morphisms do not share the middle variety")
    wf = f.witness_terms
    if wf is None:
        wf = morphism_witness_terms(f, ctx, depth).get("terms")
    if wf is None:
        raise ValidationError("no witness terms for the first morphism "
                              "within the depth bound")
    sub = dict(zip(g.source.variables, wf))
    formula = list(f.source.pi.atoms)
    formula += [substitute_atom(a, sub) for a in g.formula]
    composed = make_morphism(f.source, g.target, formula, ctx)
    for p in f.source.points:
        if composed.graph[tuple(p)] != g.graph[f.graph[tuple(p)]]:
            raise TheoremViolation("composite graph disagrees with the "
                                   f"pointwise composition at {p}")
    if g.witness_terms is not None:
        composed.witness_terms = tuple(substitute(t, sub)
                                       for t in g.witness_terms)
    return composed


# ---------------------------------------------------------------------------
# coordinate algebras


def coordinate_algebra(V: Variety, ctx: Context,
                       name: Optional[str] = None) -> dict:
    """Quotient of the term algebra over the ambient by the a-type of the
    variety's points, with the evaluation-product factorization checked
    componentwise."""
    A = V.ambient
    degenerate = not V.points
    points = V.point_dicts()

    def closure_at(uni):
        if degenerate:
            return full_closed(uni)
        return intersect_closed([atype_of_eval(uni, A, assignment=p)
                                 for p in points])

    tq = materialize_term_quotient(closure_at, ctx,
                                   name=name or f"alg({V.name})",
                                   variables=V.variables, base=A)
    report = {
        "algebra": tq.structure,
        "status": tq.status,
        "degenerate": degenerate,
        "var_map": tq.var_map,
        "elem_map": tq.elem_map,
        "factorization": None,
        "detail": tq.detail,
    }
    if tq.status != "exact" or degenerate:
        return report
    # carrier names are representative terms; their point evaluations are
    # the components of the map into the product of |V| copies of the
    # ambient, checked without materializing that product
    Q = tq.structure
    sig = ctx.signature
    var_sorts = {v.name: v.sort for v in V.variables}
    psorts = A.param_sorts()
    profiles: Dict[str, tuple] = {}
    for s in sig.sorts:
        for nm in Q.carriers[s]:
            t = parse_term(nm, sig, variables=var_sorts, params=psorts)
            profiles[nm] = tuple(eval_term_in(A, t, None, p) for p in points)
    injective = True
    by_profile = {}
    for s in sig.sorts:
        for nm in Q.carriers[s]:
            key = (s, profiles[nm])
            if key in by_profile:
                injective = False
            by_profile[key] = nm
    reflects = True
    for r, argsorts in sorted(sig.relations.items()):
        for combo in itertools.product(*(Q.carriers[s] for s in argsorts)):
            everywhere = all(
                A.holds(r, [profiles[nm][i] for nm in combo])
                for i in range(len(points)))
            if everywhere and not Q.holds(r, combo):
                reflects = False
    report["factorization"] = {
        "injective": injective,
        "reflects_relations": reflects,
        "embedding": injective and reflects,
        "n_points": len(points),
    }
    if not (injective and reflects):
        raise TheoremViolation("coordinate algebra does not embed into the "
                               "evaluation product")
    return report


# ---------------------------------------------------------------------------
# term-defined morphisms and the duality instance


def term_defined_morphisms(V: Variety, W: Variety, ctx: Context,
                           depth: int) -> List[VarietyMorphism]:
    """All morphisms V -> W given by term tuples up to the depth bound,
    deduplicated by graph, in canonical term order."""
    A = V.ambient
    uni = term_universe(ctx.signature, V.variables, depth, base=A)
    pools = [[t for t in uni.terms if t.sort == y.sort] for y in W.variables]
    xnames = [v.name for v in V.variables]
    wpoints = set(W.points)
    out = []
    seen = set()
    for combo in itertools.product(*pools):
        graph = {}
        ok = True
        for p in V.points:
            asg = dict(zip(xnames, p))
            q = tuple(eval_term_in(A, t, None, asg) for t in combo)
            if q not in wpoints:
                ok = False
                break
            graph[tuple(p)] = q
        if not ok:
            continue
        key = tuple(sorted(graph.items()))
        if key in seen:
            continue
        seen.add(key)
        out.append(VarietyMorphism(V, W, formula=(), graph=graph,
                                   witness_terms=combo))
    return out


def algebra_map_of_morphism(m: VarietyMorphism, alg_source: dict,
                            alg_target: dict, ctx: Context) -> dict:
    """The contravariant action on coordinate algebras: substitute the
    morphism's witness terms for the target variables and evaluate inside
    the source algebra.

    The result must be a structure hom fixing the ambient-element classes;
    anything else is a theorem violation.
    """
    if m.witness_terms is None:
        raise ValidationError("the morphism carries no witness terms")
    V, W = m.source, m.target
    A = V.ambient
    sig = ctx.signature
    QV, QW = alg_source["algebra"], alg_target["algebra"]
    emap_v, emap_w = alg_source["elem_map"], alg_target["elem_map"]
    vmap_v = alg_source["var_map"]
    psorts = A.param_sorts()
    # classes of the substituted target variables inside the source algebra
    y_images = {}
    for y, t in zip(W.variables, m.witness_terms):
        y_images[y.name] = eval_term_in(QV, t, emap_v, vmap_v)
    mapping = {}
    w_sorts = {v.name: v.sort for v in W.variables}
    for s in sig.sorts:
        for nm in QW.carriers[s]:
            t = parse_term(nm, sig, variables=w_sorts, params=psorts)
            mapping[nm] = eval_term_in(QV, t, emap_v, y_images)
    try:
        make_hom(QW, QV, mapping)
    except ValidationError as exc:
        raise TheoremViolation("morphism pullback is not a structure hom "
                               f"between the coordinate algebras: {exc}")
    for e, cls in emap_w.items():
        if mapping[cls] != emap_v[e]:
            raise TheoremViolation("morphism pullback moves an ambient "
                                   "element class")
    return mapping


def algebra_homs(alg_target: dict, alg_source: dict) -> List[dict]:
    """Structure homs between coordinate algebras that fix the classes of
    the ambient elements (the algebra maps over the ambient)."""
    QW, QV = alg_target["algebra"], alg_source["algebra"]
    fixed = {alg_target["elem_map"][e]: alg_source["elem_map"][e]
             for e in alg_target["elem_map"]}
    out = []
    for h in enumerate_homs(QW, QV):
        d = h.as_dict()
        if all(d[k] == v for k, v in fixed.items()):
            out.append(d)
    return out


def check_duality_instance(A: FinStructure, ctx: Context,
                           samples: Sequence[AType]) -> dict:
    """Instance check of the contravariant equivalence between varieties
    with term-defined morphisms and their coordinate algebras.

    Premise: every sampled a-type passes the Nullstellensatz comparison.
    With the premises in place, functor laws and faithfulness are hard
    theorem checks; fullness is reported per pair and can only fail soft
    since witness terms live below the depth bound.
    """
    ns_reports = [check_nullstellensatz(pi, ctx) for pi in samples]
    premises = all(r["verdict"] == "equal" for r in ns_reports)
    report = {
        "claim": "duality-instance",
        "scope": {"depth": ctx.depth},
        "nullstellensatz_ok": premises,
        "n_samples": len(samples),
        "pairs": [],
        "faithful": True,
        "full": True,
        "functorial": True,
        "essentially_surjective": True,
        "verdict": "premises-failed",
    }
    if not premises:
        return report
    varieties = [rational_points(pi, name=f"V{i}")
                 for i, pi in enumerate(samples)]
    algebras = [coordinate_algebra(V, ctx) for V in varieties]
    for V, alg in zip(varieties, algebras):
        if alg["status"] != "exact" or alg["degenerate"]:
            report["verdict"] = "degenerate-sample"
            return report
        # sampled essential surjectivity: the radical quotient of the
        # sampled presentation is realized by the coordinate algebra
        tq = materialize_term_quotient(
            lambda uni: radical(V.pi, ctx, uni).radical,
            ctx, variables=V.pi.variables, base=A)
        if tq.status == "exact" and \
                find_isomorphism(tq.structure, alg["algebra"]) is None:
            report["essentially_surjective"] = False
    morphs = {}
    amaps = {}
    for i, V in enumerate(varieties):
        for j, W in enumerate(varieties):
            ms = term_defined_morphisms(V, W, ctx, ctx.depth)
            morphs[i, j] = ms
            amaps[i, j] = [algebra_map_of_morphism(m, algebras[i],
                                                   algebras[j], ctx)
                           for m in ms]
            distinct_maps = {tuple(sorted(d.items())) for d in amaps[i, j]}
            if len(distinct_maps) != len(ms):
                report["faithful"] = False
                raise TheoremViolation("distinct morphisms share an "
                                       "algebra map")
            targets = algebra_homs(algebras[j], algebras[i])
            unmatched = [h for h in targets if h not in amaps[i, j]]
            full_here = not unmatched
            if not full_here:
                report["full"] = False
            report["pairs"].append({
                "source": V.name, "target": W.name,
                "n_morphisms": len(ms),
                "n_algebra_maps": len(targets),
                "full": full_here,
            })
            if i == j:
                ident = {tuple(p): tuple(p) for p in V.points}
                idx = next((k for k, m in enumerate(ms)
                            if m.graph == ident), None)
                identity_map = {nm: nm
                                for s in ctx.signature.sorts
                                for nm in algebras[i]["algebra"].carriers[s]}
                if idx is None or amaps[i, j][idx] != identity_map:
                    report["functorial"] = False
                    raise TheoremViolation("identity morphism does not pull "
                                           "back to the identity map")
    for i, V in enumerate(varieties):
        for j, W in enumerate(varieties):
            for k, U in enumerate(varieties):
                for m1 in morphs[i, j][:3]:
                    for m2 in morphs[j, k][:3]:
                        comp_graph = {p: m2.graph[m1.graph[p]]
                                      for p in m1.graph}
                        sub = dict(zip(m2.source.variables, m1.witness_terms))
                        comp = VarietyMorphism(
                            V, U, (), comp_graph,
                            witness_terms=tuple(substitute(t, sub)
                                                for t in m2.witness_terms))
                        am1 = algebra_map_of_morphism(m1, algebras[i],
                                                      algebras[j], ctx)
                        am2 = algebra_map_of_morphism(m2, algebras[j],
                                                      algebras[k], ctx)
                        am = algebra_map_of_morphism(comp, algebras[i],
                                                     algebras[k], ctx)
                        if am != {nm: am1[am2[nm]] for nm in am2}:
                            report["functorial"] = False
                            raise TheoremViolation(
                                "pullback of a composite differs from the "
                                "composite of pullbacks")
    if not report["essentially_surjective"]:
        report["verdict"] = "failed"
    elif report["full"]:
        report["verdict"] = "verified"
    else:
        report["verdict"] = "verified-up-to-depth"
    return report
