"""A-types over a finite base: diagram-entailment closure, quotients, and
the induced-map isomorphism check.

A closed a-type is stored structurally: a partition of the atom universe's
terms (the congruence classes) plus relation atoms at class level.  Class
ids are the smallest universe index in the class, so every derived object
is canonical and reproducible.

Ground terms over a base are normalized to the elements they denote, which
keeps variable-free universes at element level; universes with variables
carry depth-bounded term sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ScopeError, ValidationError
from .structures import (FinStructure, Hom, enumerate_homs, image_substructure,
                         is_embedding, make_hom)
from .syntax import (App, Atom, Const, Eq, Rel, Signature, Var, atom_vars,
                     check_atom, substitute, term_depth, term_key, term_vars)

REL_EXPANSION_GUARD = 500_000


def resolve_constants(t, A: FinStructure):
    """Replace signature constants by the elements they denote in A."""
    if isinstance(t, Const) and t.name in A.sig.constants:
        return Const(A.constants[t.name], t.sort)
    if isinstance(t, App):
        return App(t.func, tuple(resolve_constants(a, A) for a in t.args), t.sort)
    return t


def resolve_atom_constants(a: Atom, A: FinStructure) -> Atom:
    if isinstance(a, Eq):
        return Eq(resolve_constants(a.left, A), resolve_constants(a.right, A))
    return Rel(a.rel, tuple(resolve_constants(t, A) for t in a.args))


# ---------------------------------------------------------------------------
# atom universes


class AtomUniverse:
    """The finite term set over which atoms are considered."""

    def __init__(self, sig: Signature, terms, variables=(), base=None, depth=None):
        self.sig = sig
        self.terms = tuple(sorted(set(terms), key=term_key))
        self.index = {t: i for i, t in enumerate(self.terms)}
        self.variables = tuple(variables)
        self.base = base
        self.depth = depth

    def __len__(self):
        return len(self.terms)

    def __contains__(self, t):
        return t in self.index

    def same_terms(self, other: "AtomUniverse") -> bool:
        return self.terms == other.terms

    def sort_members(self, sort: str):
        return [i for i, t in enumerate(self.terms) if t.sort == sort]

    def __repr__(self):
        return (f"AtomUniverse({len(self.terms)} terms, vars={len(self.variables)}, "
                f"depth={self.depth})")


def element_universe(A: FinStructure) -> AtomUniverse:
    terms = [Const(e, s) for s in A.sig.sorts for e in A.carriers[s]]
    return AtomUniverse(A.sig, terms, base=A, depth=0)


def term_universe(sig: Signature, variables: Sequence[Var], depth: int,
                  base: Optional[FinStructure] = None,
                  max_terms: int = 20_000) -> AtomUniverse:
    """All terms of depth <= depth over variables, base elements (or the
    signature constants when no base is given), and the function symbols.
    """
    if depth < 0:
        raise ScopeError("term depth must be >= 0")
    names = {v.name for v in variables}
    if len(names) != len(variables):
        raise ValidationError("duplicate variable name")
    level0: List = list(variables)
    if base is not None:
        level0 += [Const(e, s) for s in sig.sorts for e in base.carriers[s]]
    else:
        level0 += [Const(c, s) for c, s in sig.constants.items()]
    terms = set(level0)
    frontier = set(level0)
    for _ in range(depth):
        by_sort: Dict[str, list] = {}
        for t in terms:
            by_sort.setdefault(t.sort, []).append(t)
        new = set()
        for f, (argsorts, result) in sig.functions.items():
            pools = [by_sort.get(s, []) for s in argsorts]
            for args in itertools.product(*pools):
                if not any(a in frontier for a in args):
                    continue  # already built on an earlier round
                t = App(f, tuple(args), result)
                if t not in terms:
                    new.add(t)
        terms |= new
        if len(terms) > max_terms:
            raise ScopeError(f"term universe exceeds {max_terms} terms; "
                             "lower the depth bound")
        frontier = new
        if not new:
            break
    return AtomUniverse(sig, terms, variables=tuple(variables), base=base, depth=depth)


def subterm_closure(atoms) -> set:
    out = set()

    def walk(t):
        if t in out:
            return
        out.add(t)
        if isinstance(t, App):
            for a in t.args:
                walk(a)

    for a in atoms:
        if isinstance(a, Eq):
            walk(a.left)
            walk(a.right)
        else:
            for t in a.args:
                walk(t)
    return out


# ---------------------------------------------------------------------------
# a-types


@dataclass(frozen=True)
class AType:
    """A set of atomic formulas over the base's elements and the variables."""
    base: FinStructure
    variables: tuple  # of Var
    atoms: frozenset

    def __post_init__(self):
        A = self.base
        declared = {v.name: v for v in self.variables}
        if len(declared) != len(self.variables):
            raise ValidationError("duplicate variable name in a-type")
        for a in self.atoms:
            check_atom(a, A.sig)
            for v in atom_vars(a):
                if declared.get(v.name) != v:
                    raise ValidationError(f"atom uses undeclared variable {v.name!r}")
            for t in _atom_consts(a):
                if t.name not in A.sig.constants and t.name not in A.elem_sort:
                    raise ValidationError(
                        f"parameter {t.name!r} is not an element of the base")

    def is_ground(self) -> bool:
        return not self.variables


def _atom_consts(a: Atom):
    stack = list(a.args) if isinstance(a, Rel) else [a.left, a.right]
    while stack:
        t = stack.pop()
        if isinstance(t, Const):
            yield t
        elif isinstance(t, App):
            stack.extend(t.args)


def make_atype(base: FinStructure, variables=(), atoms=()) -> AType:
    return AType(base, tuple(variables), frozenset(atoms))


# ---------------------------------------------------------------------------
# union-find with smallest-index representatives


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        p = self.parent
        root = i
        while p[root] != root:
            root = p[root]
        while p[i] != root:
            p[i], i = root, p[i]
        return root

    def union(self, i: int, j: int) -> bool:
        ri, rj = self.find(i), self.find(j)
        if ri == rj:
            return False
        if rj < ri:
            ri, rj = rj, ri
        self.parent[rj] = ri
        return True


# ---------------------------------------------------------------------------
# closure


def _element_congruence(A: FinStructure, pairs) -> Dict[str, str]:
    """Congruence on A generated by the element pairs; returns elem -> rep."""
    elems = [e for s in A.sig.sorts for e in A.carriers[s]]
    idx = {e: i for i, e in enumerate(elems)}
    uf = _UnionFind(len(elems))
    for a, b in pairs:
        uf.union(idx[a], idx[b])
    changed = True
    while changed:
        changed = False
        for f, table in A.functions.items():
            seen: Dict[tuple, int] = {}
            for args, val in table.items():
                key = tuple(uf.find(idx[a]) for a in args)
                prev = seen.get(key)
                if prev is None:
                    seen[key] = uf.find(idx[val])
                elif uf.union(prev, idx[val]):
                    changed = True
    return {e: elems[uf.find(idx[e])] for e in elems}


def _term_congruence(universe: AtomUniverse, pairs) -> _UnionFind:
    """Ground congruence closure over the universe's term nodes.

    Seeds: the given equal pairs (term indices) and, when the universe has
    a base, every variable-free term merged with the element it denotes.
    Propagation via a signature table over application nodes.
    """
    terms = universe.terms
    uf = _UnionFind(len(terms))
    base = universe.base
    if base is not None:
        for i, t in enumerate(terms):
            if not term_vars(t):
                val = base.eval_term(t)
                uf.union(i, universe.index[Const(val, t.sort)])
    for i, j in pairs:
        uf.union(i, j)
    apps = [(i, t) for i, t in enumerate(terms) if isinstance(t, App)]
    changed = True
    while changed:
        changed = False
        seen: Dict[tuple, int] = {}
        for i, t in apps:
            key = (t.func, tuple(uf.find(universe.index[c]) for c in t.args))
            prev = seen.get(key)
            if prev is None:
                seen[key] = i
            elif uf.union(prev, i):
                changed = True
    return uf


class ClosedAType:
    """Closure of an a-type: term partition plus class-level relation atoms."""

    def __init__(self, universe: AtomUniverse, class_of: Dict, rel_atoms):
        self.universe = universe
        self.class_of = class_of            # term -> smallest index in its class
        self.rel_atoms = frozenset(rel_atoms)  # (rel name, tuple of class ids)

    @property
    def base(self):
        return self.universe.base

    @property
    def variables(self):
        return self.universe.variables

    def class_id(self, t) -> int:
        if t not in self.class_of:
            base = self.universe.base
            if base is not None and not term_vars(t):
                t = Const(base.eval_term(resolve_constants(t, base)), t.sort)
                if t in self.class_of:
                    return self.class_of[t]
            raise ValidationError(f"term {t} is outside the atom universe")
        return self.class_of[t]

    def classes(self) -> List[List]:
        groups: Dict[int, list] = {}
        for t in self.universe.terms:
            groups.setdefault(self.class_of[t], []).append(t)
        return [sorted(g, key=lambda t: self.universe.index[t])
                for _, g in sorted(groups.items())]

    def contains(self, a: Atom) -> bool:
        if isinstance(a, Eq):
            return self.class_id(a.left) == self.class_id(a.right)
        return (a.rel, tuple(self.class_id(t) for t in a.args)) in self.rel_atoms

    def contains_atype(self, pi: AType) -> bool:
        return all(self.contains(a) for a in pi.atoms)

    def le(self, other: "ClosedAType") -> bool:
        """Atom-set inclusion of closures over the same universe."""
        if not self.universe.same_terms(other.universe):
            raise ValidationError("comparing a-types over different atom universes")
        remap: Dict[int, int] = {}
        for t in self.universe.terms:
            mine = self.class_of[t]
            theirs = other.class_of[t]
            if mine in remap:
                if remap[mine] != theirs:
                    return False
            else:
                remap[mine] = theirs
        for r, cls in self.rel_atoms:
            if (r, tuple(remap[c] for c in cls)) not in other.rel_atoms:
                return False
        return True

    def __eq__(self, other):
        return (isinstance(other, ClosedAType)
                and self.universe.same_terms(other.universe)
                and self.class_of == other.class_of
                and self.rel_atoms == other.rel_atoms)

    def __hash__(self):
        return hash((self.universe.terms,
                     tuple(sorted((str(t), c) for t, c in self.class_of.items())),
                     self.rel_atoms))

    def equalities(self) -> List[Eq]:
        out = []
        for group in self.classes():
            rep = group[0]
            out.extend(Eq(rep, t) for t in group[1:])
        return out

    def relation_atoms(self) -> List[Rel]:
        terms = self.universe.terms
        out = [Rel(r, tuple(terms[c] for c in cls))
               for r, cls in self.rel_atoms]
        out.sort(key=lambda a: str(a))
        return out

    def atoms(self) -> List[Atom]:
        """Canonical finite presentation: one equality per merged term plus
        the class-level relation atoms on representatives."""
        return self.equalities() + self.relation_atoms()

    def as_atype(self) -> AType:
        if self.universe.base is None:
            raise ValidationError("a-type views need a base structure")
        return make_atype(self.universe.base, self.universe.variables, self.atoms())

    def n_classes(self) -> int:
        return len(set(self.class_of.values()))

    def __repr__(self):
        return (f"ClosedAType({self.n_classes()} classes over "
                f"{len(self.universe)} terms, {len(self.rel_atoms)} relation atoms)")


def close(pi: AType, universe: Optional[AtomUniverse] = None) -> ClosedAType:
    """Deductive closure of pi under the base's positive diagram: ground
    congruence closure plus relational saturation, restricted to the atom
    universe."""
    A = pi.base
    atoms = [resolve_atom_constants(a, A) for a in pi.atoms]
    if pi.is_ground() and universe is None:
        pairs = []
        rel_seeds = []
        for a in atoms:
            if isinstance(a, Eq):
                pairs.append((A.eval_term(a.left), A.eval_term(a.right)))
            else:
                rel_seeds.append((a.rel, tuple(A.eval_term(t) for t in a.args)))
        rep = _element_congruence(A, pairs)
        uni = element_universe(A)
        class_of = {t: uni.index[Const(rep[t.name], t.sort)] for t in uni.terms}
        rels = set()
        for r, tuples in A.relations.items():
            argsorts = A.sig.relations[r]
            for tup in tuples:
                rels.add((r, tuple(class_of[Const(e, s)]
                                   for e, s in zip(tup, argsorts))))
        for r, tup in rel_seeds:
            argsorts = A.sig.relations[r]
            rels.add((r, tuple(class_of[Const(e, s)]
                               for e, s in zip(tup, argsorts))))
        return ClosedAType(uni, class_of, rels)

    if universe is None:
        # minimal complete node set: subterms of pi, the elements and
        # variables, and every ground depth-1 application (the diagram's
        # own subterms, needed for congruence propagation)
        terms = subterm_closure(atoms)
        terms.update(Const(e, s) for s in A.sig.sorts for e in A.carriers[s])
        terms.update(pi.variables)
        for f, (argsorts, result) in A.sig.functions.items():
            for args in itertools.product(*(A.carriers[s] for s in argsorts)):
                terms.add(App(f, tuple(Const(e, s) for e, s in zip(args, argsorts)),
                              result))
        universe = AtomUniverse(A.sig, terms, variables=pi.variables, base=A)
    else:
        for a in atoms:
            for t in subterm_closure([a]):
                if t not in universe:
                    raise ScopeError(f"atom term {t} is outside the atom universe; "
                                     "raise the depth bound")
    pairs = []
    rel_seeds = []
    for a in atoms:
        if isinstance(a, Eq):
            pairs.append((universe.index[a.left], universe.index[a.right]))
        else:
            rel_seeds.append((a.rel, tuple(universe.index[t] for t in a.args)))
    uf = _term_congruence(universe, pairs)
    class_of = {t: uf.find(i) for i, t in enumerate(universe.terms)}
    rels = set()
    if universe.base is not None:
        for r, tuples in A.relations.items():
            argsorts = A.sig.relations[r]
            for tup in tuples:
                rels.add((r, tuple(class_of[Const(e, s)]
                                   for e, s in zip(tup, argsorts))))
    for r, idxs in rel_seeds:
        rels.add((r, tuple(uf.find(i) for i in idxs)))
    return ClosedAType(universe, class_of, rels)


def full_closed(universe: AtomUniverse) -> ClosedAType:
    """The degenerate a-type holding every atom in the universe: one class
    per sort, all relation atoms."""
    class_of = {}
    sort_rep: Dict[str, int] = {}
    for i, t in enumerate(universe.terms):
        sort_rep.setdefault(t.sort, i)
        class_of[t] = sort_rep[t.sort]
    rels = set()
    for r, argsorts in universe.sig.relations.items():
        if all(s in sort_rep for s in argsorts):
            rels.add((r, tuple(sort_rep[s] for s in argsorts)))
    return ClosedAType(universe, class_of, rels)


def intersect_closed(cs: Sequence[ClosedAType]) -> ClosedAType:
    """Intersection of closed a-types over a shared universe."""
    cs = list(cs)
    if not cs:
        raise ValidationError("intersection of an empty family is the full "
                              "universe; handle that case explicitly")
    first = cs[0]
    for c in cs[1:]:
        if not first.universe.same_terms(c.universe):
            raise ValidationError("intersecting a-types over different universes")
    universe = first.universe
    keymap: Dict[tuple, int] = {}
    class_of = {}
    for i, t in enumerate(universe.terms):
        key = tuple(c.class_of[t] for c in cs)
        if key not in keymap:
            keymap[key] = i
        class_of[t] = keymap[key]
    class_members: Dict[int, object] = {}
    for t in universe.terms:
        class_members.setdefault(class_of[t], t)
    rels = set()
    for r, argsorts in universe.sig.relations.items():
        ids_per_sort = []
        for s in argsorts:
            ids_per_sort.append(sorted({class_of[t] for t in universe.terms
                                        if t.sort == s}))
        count = 1
        for ids in ids_per_sort:
            count *= max(1, len(ids))
        if count > REL_EXPANSION_GUARD:
            raise ScopeError(f"relation expansion for {r!r} exceeds the guard")
        for combo in itertools.product(*ids_per_sort):
            reps = tuple(class_members[c] for c in combo)
            if all(c.contains(Rel(r, reps)) for c in cs):
                rels.add((r, combo))
    return ClosedAType(universe, class_of, rels)


# ---------------------------------------------------------------------------
# quotients


@dataclass
class QuotientResult:
    quotient: FinStructure
    projection: Hom
    class_map: Dict[str, str]  # base element -> representative element


def quotient(pi) -> QuotientResult:
    """Quotient of the base by the a-type's closure (variable-free only)."""
    c = close(pi) if isinstance(pi, AType) else pi
    if c.variables:
        raise ValidationError("quotient needs a variable-free a-type; "
                              "term-algebra quotients are handled separately")
    A = c.base
    if A is None:
        raise ValidationError("quotient needs a base structure")
    if c.universe.depth != 0:
        c = restrict_to_elements(c)
    terms = c.universe.terms
    class_map = {t.name: terms[c.class_of[t]].name for t in terms}
    carriers = {s: sorted({class_map[e] for e in A.carriers[s]}, key=str)
                for s in A.sig.sorts}
    functions = {}
    for f, (argsorts, result) in A.sig.functions.items():
        table = {}
        for args in itertools.product(*(carriers[s] for s in argsorts)):
            table[args] = class_map[A.apply(f, args)]
        functions[f] = table
    relations = {}
    for r, argsorts in A.sig.relations.items():
        relations[r] = {tuple(terms[i].name for i in cls)
                        for (rr, cls) in c.rel_atoms if rr == r}
    constants = {k: class_map[v] for k, v in A.constants.items()}
    Q = FinStructure(A.sig, carriers, functions, relations, constants,
                     name=f"{A.name}/~")
    proj = make_hom(A, Q, class_map)
    return QuotientResult(Q, proj, class_map)


def restrict_to_elements(c: ClosedAType) -> ClosedAType:
    """Project a ground closure onto the element-level universe."""
    A = c.base
    uni = element_universe(A)
    class_of = {}
    seen: Dict[int, int] = {}
    for t in uni.terms:
        old = c.class_id(t)
        if old not in seen:
            seen[old] = uni.index[t]
        class_of[t] = seen[old]
    rels = {(r, tuple(seen[i] for i in cls)) for r, cls in c.rel_atoms
            if all(i in seen for i in cls)}
    return ClosedAType(uni, class_of, rels)


# ---------------------------------------------------------------------------
# a-types of homomorphisms


def atype_of(f: Hom) -> ClosedAType:
    """All atomic facts about the source's elements made true through f."""
    A, B = f.source, f.target
    m = f.as_dict()
    uni = element_universe(A)
    class_of = {}
    seen: Dict[tuple, int] = {}
    for i, t in enumerate(uni.terms):
        key = (t.sort, m[t.name])
        if key not in seen:
            seen[key] = i
        class_of[t] = seen[key]
    reps = sorted(set(class_of.values()))
    rels = set()
    for r, argsorts in A.sig.relations.items():
        pools = [[i for i in reps if uni.terms[i].sort == s] for s in argsorts]
        for combo in itertools.product(*pools):
            if B.holds(r, [m[uni.terms[i].name] for i in combo]):
                rels.add((r, combo))
    return ClosedAType(uni, class_of, rels)


def eval_term_in(target: FinStructure, t, elem_map=None, assignment=None) -> str:
    """Evaluate a term whose constants name source elements (mapped through
    elem_map) or signature constants, with variables from assignment."""
    if isinstance(t, Var):
        if assignment is None or t.name not in assignment:
            raise ValidationError(f"unassigned variable {t.name!r}")
        return assignment[t.name]
    if isinstance(t, Const):
        if elem_map is not None and t.name in elem_map:
            return elem_map[t.name]
        if t.name in target.sig.constants:
            return target.constants[t.name]
        if elem_map is None and t.name in target.elem_sort:
            return t.name
        raise ValidationError(f"cannot evaluate parameter {t.name!r} in the target")
    return target.apply(t.func, [eval_term_in(target, a, elem_map, assignment)
                                 for a in t.args])


def eval_atom_in(target: FinStructure, a: Atom, elem_map=None, assignment=None) -> bool:
    if isinstance(a, Eq):
        return (eval_term_in(target, a.left, elem_map, assignment)
                == eval_term_in(target, a.right, elem_map, assignment))
    return target.holds(a.rel, [eval_term_in(target, t, elem_map, assignment)
                                for t in a.args])


def satisfies_atype(f: Hom, pi: AType, assignment=None) -> bool:
    m = f.as_dict()
    return all(eval_atom_in(f.target, a, m, assignment) for a in pi.atoms)


def atype_of_eval(universe: AtomUniverse, target: FinStructure,
                  assignment=None, hom: Optional[Hom] = None) -> ClosedAType:
    """The a-type of an evaluation: terms of the universe interpreted in the
    target through the base hom (for element constants) and the variable
    assignment."""
    elem_map = hom.as_dict() if hom is not None else None
    values = {}
    # canonical order means subterms are evaluated before their parents
    for t in universe.terms:
        if isinstance(t, Var):
            if assignment is None or t.name not in assignment:
                raise ValidationError(f"unassigned variable {t.name!r}")
            values[t] = assignment[t.name]
        elif isinstance(t, Const):
            if elem_map is not None and t.name in elem_map:
                values[t] = elem_map[t.name]
            elif t.name in target.sig.constants:
                values[t] = target.constants[t.name]
            elif elem_map is None and t.name in target.elem_sort:
                values[t] = t.name
            else:
                raise ValidationError(f"cannot evaluate parameter {t.name!r}")
        else:
            values[t] = target.apply(t.func, [values[a] for a in t.args])
    class_of = {}
    seen: Dict[tuple, int] = {}
    for i, t in enumerate(universe.terms):
        key = (t.sort, values[t])
        if key not in seen:
            seen[key] = i
        class_of[t] = seen[key]
    reps = sorted(set(class_of.values()))
    rep_val = {i: values[universe.terms[i]] for i in reps}
    rels = set()
    for r, argsorts in universe.sig.relations.items():
        pools = [[i for i in reps if universe.terms[i].sort == s] for s in argsorts]
        count = 1
        for p in pools:
            count *= max(1, len(p))
        if count > REL_EXPANSION_GUARD:
            raise ScopeError(f"relation expansion for {r!r} exceeds the guard")
        for combo in itertools.product(*pools):
            if target.holds(r, [rep_val[i] for i in combo]):
                rels.add((r, combo))
    return ClosedAType(universe, class_of, rels)


# ---------------------------------------------------------------------------
# theorem checks


def check_iso_theorem(f: Hom) -> dict:
    """Quotient by tp(f) versus the image substructure: the two must be
    isomorphic via the induced map."""
    qr = quotient(atype_of(f))
    im = image_substructure(f)
    m = f.as_dict()
    induced = {class_rep: m[elem] for elem, class_rep in qr.class_map.items()}
    report = {"holds": False, "quotient": qr.quotient, "image": im,
              "induced_map": induced, "detail": ""}
    try:
        g = make_hom(qr.quotient, im, induced)
    except ValidationError as exc:
        report["detail"] = f"induced map is not a homomorphism: {exc}"
        return report
    if any(len(qr.quotient.carriers[s]) != len(im.carriers[s])
           for s in im.sig.sorts):
        report["detail"] = "carrier sizes differ"
        return report
    if not is_embedding(g):
        report["detail"] = "induced map is not an embedding"
        return report
    try:
        make_hom(im, qr.quotient, {v: k for k, v in induced.items()})
    except ValidationError as exc:
        report["detail"] = f"inverse is not a homomorphism: {exc}"
        return report
    report["holds"] = True
    report["detail"] = "quotient is isomorphic to the image"
    return report


def check_universal_property(pi: AType, B: FinStructure,
                             qr: Optional[QuotientResult] = None,
                             candidate_homs=None) -> dict:
    """For every hom f from the base to B satisfying pi there must be
    exactly one hom g off the quotient with g after the projection = f."""
    if qr is None:
        qr = quotient(pi)
    A = pi.base
    if candidate_homs is None:
        candidate_homs = enumerate_homs(qr.quotient, B)
    checked = 0
    for f in enumerate_homs(A, B):
        if not satisfies_atype(f, pi):
            continue
        checked += 1
        m = f.as_dict()
        matches = [g for g in candidate_homs
                   if all(g.as_dict()[qr.class_map[e]] == m[e] for e in m)]
        if len(matches) != 1:
            return {"holds": False, "checked": checked,
                    "detail": f"{len(matches)} factorizations for {f}"}
    return {"holds": True, "checked": checked, "detail": ""}


# ---------------------------------------------------------------------------
# exhaustive enumeration of ground closed a-types (desk scale)

CLOSED_ATYPE_GUARD = 200_000


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [first]] + part[i + 1:]
        yield [[first]] + part


def enumerate_congruences(A: FinStructure) -> List[Dict[str, str]]:
    """Every carrier partition compatible with the function tables, as
    element -> representative maps (representative = least member name).
    Exponential in carrier size; meant for small structures only."""
    per_sort = [list(_set_partitions(list(A.carriers[s]))) for s in A.sig.sorts]
    out = []
    for combo in itertools.product(*per_sort):
        rep = {}
        for part in combo:
            for block in part:
                r = min(block)
                for e in block:
                    rep[e] = r
        ok = True
        for f, (argsorts, _res) in A.sig.functions.items():
            seen: Dict[tuple, str] = {}
            for args in itertools.product(*(A.carriers[s] for s in argsorts)):
                key = tuple(rep[a] for a in args)
                val = rep[A.apply(f, args)]
                if seen.setdefault(key, val) != val:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(rep)
    out.sort(key=lambda m: (len(set(m.values())), sorted(m.items())))
    return out


def enumerate_closed_atypes(A: FinStructure,
                            guard: int = CLOSED_ATYPE_GUARD) -> List[ClosedAType]:
    """All ground closed a-types of A over the element universe: a
    congruence together with any class-level relation set containing the
    projected tables (relations never force new equalities, so every such
    pair is its own closure)."""
    uni = element_universe(A)
    congruences = enumerate_congruences(A)
    out = []
    for rep in congruences:
        members: Dict[str, List[int]] = {}
        for i, t in enumerate(uni.terms):
            members.setdefault(rep[t.name], []).append(i)
        cid = {r: min(idx) for r, idx in members.items()}
        class_of = {t: cid[rep[t.name]] for t in uni.terms}
        class_sort = {cid[r]: uni.terms[cid[r]].sort for r in cid}
        core = set()
        for r, tuples in A.relations.items():
            for tup in tuples:
                core.add((r, tuple(cid[rep[e]] for e in tup)))
        slots = []
        for r, argsorts in A.sig.relations.items():
            pools = [[c for c in sorted(set(cid.values())) if class_sort[c] == s]
                     for s in argsorts]
            for combo in itertools.product(*pools):
                if (r, combo) not in core:
                    slots.append((r, combo))
        if len(out) + (1 << len(slots)) > guard:
            raise ScopeError(f"closed a-type space exceeds the guard ({guard})")
        for k in range(len(slots) + 1):
            for extra in itertools.combinations(slots, k):
                out.append(ClosedAType(uni, dict(class_of), core | set(extra)))
    return out
