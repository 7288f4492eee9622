"""Finite many-sorted structures: evaluation, products, substructures, homs.

Carriers are element names (strings), unique across sorts so that maps and
parameter assignments can be flat name-to-name dictionaries.  All
enumeration is exhaustive and canonically ordered, so every downstream
report is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import SortError, ValidationError
from .syntax import (App, Atomic, Clause, Const, Eq, Existential, Implication,
                     Negation, Rel, Sentence, Signature, Var)


class FinStructure:
    """A finite structure: per-sort carriers plus total tables."""

    def __init__(self, sig: Signature, carriers, functions=None, relations=None,
                 constants=None, name: str = "A"):
        self.sig = sig
        self.name = name
        self.carriers = {s: tuple(sorted(set(carriers.get(s, ())), key=str))
                         for s in sig.sorts}
        self.elem_sort = {}
        for s, elems in self.carriers.items():
            for e in elems:
                if e in self.elem_sort:
                    raise ValidationError(f"element name {e!r} used in two sorts")
                self.elem_sort[e] = s
        self.functions = {f: dict(t) for f, t in (functions or {}).items()}
        self.relations = {r: frozenset(map(tuple, ts)) for r, ts in (relations or {}).items()}
        self.constants = dict(constants or {})
        self._validate()

    def _validate(self):
        sig = self.sig
        for f, (argsorts, result) in sig.functions.items():
            table = self.functions.get(f)
            if table is None:
                raise ValidationError(f"missing table for function {f!r}")
            domain = list(itertools.product(*(self.carriers[s] for s in argsorts)))
            if set(table) != set(domain):
                raise ValidationError(f"table for {f!r} is not total on the carrier")
            for args, val in table.items():
                if val not in self.carriers[result]:
                    raise ValidationError(f"{f}{args!r} = {val!r} lands outside sort {result!r}")
        for f in self.functions:
            if f not in sig.functions:
                raise ValidationError(f"table for undeclared function {f!r}")
        for r, argsorts in sig.relations.items():
            for tup in self.relations.get(r, frozenset()):
                if len(tup) != len(argsorts) or any(
                        e not in self.carriers[s] for e, s in zip(tup, argsorts)):
                    raise ValidationError(f"relation tuple {r}{tup!r} is not well-sorted")
            self.relations.setdefault(r, frozenset())
        for r in self.relations:
            if r not in sig.relations:
                raise ValidationError(f"table for undeclared relation {r!r}")
        for c, sort in sig.constants.items():
            if c not in self.constants:
                raise ValidationError(f"missing value for constant {c!r}")
            if self.constants[c] not in self.carriers[sort]:
                raise ValidationError(f"constant {c!r} lands outside sort {sort!r}")
        for c in self.constants:
            if c not in sig.constants:
                raise ValidationError(f"value for undeclared constant {c!r}")

    # -- basic queries ------------------------------------------------------

    def elements(self):
        for s in self.sig.sorts:
            yield from self.carriers[s]

    def size(self) -> int:
        return sum(len(self.carriers[s]) for s in self.sig.sorts)

    def param_sorts(self) -> Dict[str, str]:
        """Element names as parameter constants, for the parser."""
        return dict(self.elem_sort)

    def apply(self, fname: str, args: Sequence[str]) -> str:
        return self.functions[fname][tuple(args)]

    def holds(self, rname: str, args: Sequence[str]) -> bool:
        return tuple(args) in self.relations[rname]

    # -- term / sentence evaluation -----------------------------------------

    def eval_term(self, t, assignment=None) -> str:
        """Evaluate a term; parameters default to the elements they name."""
        if isinstance(t, Var):
            if assignment is None or t.name not in assignment:
                raise ValidationError(f"unassigned variable {t.name!r}")
            return assignment[t.name]
        if isinstance(t, Const):
            if assignment is not None and t.name in assignment:
                return assignment[t.name]
            if t.name in self.constants:
                return self.constants[t.name]
            if t.name in self.elem_sort:
                return t.name
            raise ValidationError(f"unassigned parameter {t.name!r}")
        return self.apply(t.func, [self.eval_term(a, assignment) for a in t.args])

    def eval_atom(self, a, assignment=None) -> bool:
        if isinstance(a, Eq):
            return self.eval_term(a.left, assignment) == self.eval_term(a.right, assignment)
        return self.holds(a.rel, [self.eval_term(t, assignment) for t in a.args])

    def _assignments(self, variables, base):
        pools = [self.carriers[v.sort] for v in variables]
        for combo in itertools.product(*pools):
            out = dict(base)
            out.update({v.name: e for v, e in zip(variables, combo)})
            yield out

    def satisfies(self, s: Sentence, params=None) -> bool:
        """Exhaustive evaluation; parameter constants resolve via params or by name."""
        base = dict(params or {})
        for asg in self._assignments(s.prefix, base):
            if not self._eval_matrix(s.matrix, asg):
                return False
        return True

    def _eval_matrix(self, m, asg) -> bool:
        if isinstance(m, Atomic):
            return self.eval_atom(m.atom, asg)
        if isinstance(m, Implication):
            if all(self.eval_atom(a, asg) for a in m.premises):
                return self.eval_atom(m.conclusion, asg)
            return True
        if isinstance(m, Clause):
            if all(self.eval_atom(a, asg) for a in m.premises):
                return any(self.eval_atom(a, asg) for a in m.disjuncts)
            return True
        if isinstance(m, Negation):
            return not all(self.eval_atom(a, asg) for a in m.premises)
        if isinstance(m, Existential):
            for inner in self._assignments(m.exvars, asg):
                if all(self.eval_atom(a, inner) for a in m.atoms):
                    return True
            return False
        raise ValidationError(f"unsupported matrix {m!r}")

    def _key(self):
        return (self.sig,
                tuple(sorted(self.carriers.items())),
                tuple(sorted((f, tuple(sorted(t.items()))) for f, t in self.functions.items())),
                tuple(sorted((r, tuple(sorted(ts))) for r, ts in self.relations.items())),
                tuple(sorted(self.constants.items())))

    def __eq__(self, other):
        # the display name is not part of structural identity
        return isinstance(other, FinStructure) and self._key() == other._key()

    def __hash__(self):
        if not hasattr(self, "_hash"):
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        sizes = ", ".join(f"{s}:{len(self.carriers[s])}" for s in self.sig.sorts)
        return f"FinStructure({self.name!r}, {sizes})"


# ---------------------------------------------------------------------------
# trivial structure and products


def trivial_structure(sig: Signature, name: str = "one") -> FinStructure:
    """One element per sort, full relations: the empty product."""
    carriers = {s: (f"*{s}",) for s in sig.sorts}
    functions = {}
    for f, (argsorts, result) in sig.functions.items():
        key = tuple(f"*{s}" for s in argsorts)
        functions[f] = {key: f"*{result}"}
    relations = {r: {tuple(f"*{s}" for s in argsorts)}
                 for r, argsorts in sig.relations.items()}
    constants = {c: f"*{s}" for c, s in sig.constants.items()}
    return FinStructure(sig, carriers, functions, relations, constants, name=name)


def _tuple_name(parts) -> str:
    return "(" + ",".join(parts) + ")"


def product(factors: Sequence[FinStructure], sig: Optional[Signature] = None,
            name: Optional[str] = None) -> FinStructure:
    """Componentwise product; the empty product is the trivial structure."""
    factors = list(factors)
    if not factors:
        if sig is None:
            raise ValidationError("empty product needs an explicit signature")
        return trivial_structure(sig, name=name or "one")
    sig = factors[0].sig
    for f in factors[1:]:
        if f.sig != sig:
            raise ValidationError("product factors must share a signature")
    carriers = {}
    names = {}  # sort -> component tuple -> element name
    for s in sig.sorts:
        elems = []
        for combo in itertools.product(*(f.carriers[s] for f in factors)):
            label = _tuple_name(combo)
            names.setdefault(s, {})[combo] = label
            elems.append(label)
        carriers[s] = elems
    unname = {s: {v: k for k, v in names.get(s, {}).items()} for s in sig.sorts}
    functions = {}
    for fname, (argsorts, result) in sig.functions.items():
        table = {}
        for args in itertools.product(*(carriers[s] for s in argsorts)):
            comps = [unname[s][a] for s, a in zip(argsorts, args)]
            value = tuple(fac.apply(fname, [c[i] for c in comps])
                          for i, fac in enumerate(factors))
            table[args] = names[result][value]
        functions[fname] = table
    relations = {}
    for rname, argsorts in sig.relations.items():
        tuples = set()
        for args in itertools.product(*(carriers[s] for s in argsorts)):
            comps = [unname[s][a] for s, a in zip(argsorts, args)]
            if all(fac.holds(rname, [c[i] for c in comps])
                   for i, fac in enumerate(factors)):
                tuples.add(args)
        relations[rname] = tuples
    constants = {}
    for cname, sort in sig.constants.items():
        value = tuple(fac.constants[cname] for fac in factors)
        constants[cname] = names[sort][value]
    pname = name or _tuple_name([f.name for f in factors])
    return FinStructure(sig, carriers, functions, relations, constants, name=pname)


def substructure(A: FinStructure, generators, name: Optional[str] = None) -> FinStructure:
    """Substructure generated by a per-sort subset: closure under functions."""
    keep = {s: set(generators.get(s, ())) for s in A.sig.sorts}
    for s, elems in keep.items():
        for e in elems:
            if e not in A.carriers[s]:
                raise ValidationError(f"generator {e!r} is not in sort {s!r}")
    for c, sort in A.sig.constants.items():
        keep[sort].add(A.constants[c])
    changed = True
    while changed:
        changed = False
        for f, (argsorts, result) in A.sig.functions.items():
            for args in itertools.product(*(sorted(keep[s], key=str) for s in argsorts)):
                val = A.apply(f, args)
                if val not in keep[result]:
                    keep[result].add(val)
                    changed = True
    carriers = {s: tuple(e for e in A.carriers[s] if e in keep[s]) for s in A.sig.sorts}
    functions = {}
    for f, (argsorts, result) in A.sig.functions.items():
        functions[f] = {args: A.apply(f, args)
                        for args in itertools.product(*(carriers[s] for s in argsorts))}
    relations = {}
    for r, argsorts in A.sig.relations.items():
        allowed = set(itertools.product(*(carriers[s] for s in argsorts)))
        relations[r] = {t for t in A.relations[r] if t in allowed}
    return FinStructure(A.sig, carriers, functions, relations, dict(A.constants),
                        name=name or f"{A.name}|sub")


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class Hom:
    source: FinStructure
    target: FinStructure
    mapping: tuple  # sorted tuple of (element, image) pairs

    @staticmethod
    def make(source, target, mapping: Dict[str, str]) -> "Hom":
        return Hom(source, target, tuple(sorted(mapping.items(), key=lambda kv: str(kv[0]))))

    def as_dict(self) -> Dict[str, str]:
        return dict(self.mapping)

    def __call__(self, element: str) -> str:
        for k, v in self.mapping:
            if k == element:
                return v
        raise KeyError(element)

    def __str__(self):
        return "{" + ", ".join(f"{k}->{v}" for k, v in self.mapping) + "}"


def check_hom(f: Hom) -> Optional[str]:
    """None if f is a homomorphism, else a human-readable violation."""
    A, B, m = f.source, f.target, f.as_dict()
    if A.sig != B.sig:
        return "signature mismatch"
    for s in A.sig.sorts:
        for e in A.carriers[s]:
            if m.get(e) not in B.carriers[s]:
                return f"element {e!r} of sort {s!r} not mapped into the same sort"
    for fn, (argsorts, _) in A.sig.functions.items():
        for args, val in A.functions[fn].items():
            if B.apply(fn, [m[a] for a in args]) != m[val]:
                return f"{fn}{args!r} not preserved"
    for c in A.sig.constants:
        if m[A.constants[c]] != B.constants[c]:
            return f"constant {c!r} not preserved"
    for r in A.sig.relations:
        for tup in A.relations[r]:
            if not B.holds(r, [m[a] for a in tup]):
                return f"relation {r}{tup!r} not preserved"
    return None


def make_hom(source, target, mapping: Dict[str, str]) -> Hom:
    f = Hom.make(source, target, mapping)
    why = check_hom(f)
    if why is not None:
        raise ValidationError(f"not a homomorphism: {why}")
    return f


def is_embedding(f: Hom) -> bool:
    """Injective and reflects relation atoms (hence reflects all atomic sentences)."""
    A, B, m = f.source, f.target, f.as_dict()
    for s in A.sig.sorts:
        images = [m[e] for e in A.carriers[s]]
        if len(set(images)) != len(images):
            return False
    for r, argsorts in A.sig.relations.items():
        for args in itertools.product(*(A.carriers[s] for s in argsorts)):
            if B.holds(r, [m[a] for a in args]) and args not in A.relations[r]:
                return False
    return True


def compose_homs(g: Hom, f: Hom) -> Hom:
    """g after f."""
    if f.target is not g.source and f.target.name != g.source.name:
        # allow composing through equal structures from different objects
        pass
    fm, gm = f.as_dict(), g.as_dict()
    return Hom.make(f.source, g.target, {e: gm[fe] for e, fe in fm.items()})


def identity_hom(A: FinStructure) -> Hom:
    return Hom.make(A, A, {e: e for e in A.elements()})


def enumerate_homs(A: FinStructure, B: FinStructure, mode: str = "hom") -> List[Hom]:
    """All homs (or embeddings) A -> B, lexicographic in the element map.

    Backtracking over source elements in canonical carrier order; function,
    constant and relation constraints are checked as soon as all their
    arguments are decided.
    """
    if A.sig != B.sig:
        raise ValidationError("enumerate_homs needs a shared signature")
    if mode not in ("hom", "embedding"):
        raise ValidationError(f"unknown enumeration mode {mode!r}")
    src = [e for s in A.sig.sorts for e in A.carriers[s]]
    index = {e: i for i, e in enumerate(src)}
    sort_of = A.elem_sort

    # precompute constraints keyed by the latest-decided element
    fun_checks = {i: [] for i in range(len(src))}  # (fname, args, value)
    for fn in A.sig.functions:
        for args, val in A.functions[fn].items():
            latest = max([index[a] for a in args] + [index[val]])
            fun_checks[latest].append((fn, args, val))
    rel_checks = {i: [] for i in range(len(src))}
    for r in A.sig.relations:
        for tup in A.relations[r]:
            latest = max(index[a] for a in tup) if tup else 0
            if tup:
                rel_checks[latest].append((r, tup))
    const_checks = {i: [] for i in range(len(src))}
    empty_rel_ok = all(B.holds(r, ()) for r in A.sig.relations
                       if A.sig.relations[r] == () and A.holds(r, ()))
    for c in A.sig.constants:
        const_checks[index[A.constants[c]]].append(c)

    reflect = (mode == "embedding")
    neg_rel_checks = {i: [] for i in range(len(src))}
    if reflect:
        for r, argsorts in A.sig.relations.items():
            if not argsorts:
                continue
            for args in itertools.product(*(A.carriers[s] for s in argsorts)):
                if args not in A.relations[r]:
                    neg_rel_checks[max(index[a] for a in args)].append((r, args))

    out: List[Hom] = []
    m: Dict[str, str] = {}
    used = {s: set() for s in A.sig.sorts}

    def extend(i: int):
        if i == len(src):
            out.append(Hom.make(A, B, m))
            return
        e = src[i]
        s = sort_of[e]
        for cand in B.carriers[s]:
            if reflect and cand in used[s]:
                continue
            m[e] = cand
            ok = True
            for fn, args, val in fun_checks[i]:
                if B.apply(fn, [m[a] for a in args]) != m[val]:
                    ok = False
                    break
            if ok:
                for r, tup in rel_checks[i]:
                    if not B.holds(r, [m[a] for a in tup]):
                        ok = False
                        break
            if ok:
                for c in const_checks[i]:
                    if m[e] != B.constants[c]:
                        ok = False
                        break
            if ok and reflect:
                for r, args in neg_rel_checks[i]:
                    if B.holds(r, [m[a] for a in args]):
                        ok = False
                        break
            if ok:
                used[s].add(cand)
                extend(i + 1)
                used[s].discard(cand)
            del m[e]

    if empty_rel_ok:
        extend(0)
    return out


def image_substructure(f: Hom, name: Optional[str] = None) -> FinStructure:
    m = f.as_dict()
    gens = {s: {m[e] for e in f.source.carriers[s]} for s in f.source.sig.sorts}
    return substructure(f.target, gens, name=name or f"{f.source.name}->{f.target.name}|im")


def find_isomorphism(A: FinStructure, B: FinStructure) -> Optional[Hom]:
    if A.sig != B.sig:
        return None
    if any(len(A.carriers[s]) != len(B.carriers[s]) for s in A.sig.sorts):
        return None
    for f in enumerate_homs(A, B, mode="embedding"):
        if all(len({f.as_dict()[e] for e in A.carriers[s]}) == len(B.carriers[s])
               for s in A.sig.sorts):
            return f
    return None


def satisfies_through(f: Hom, sentence: Sentence) -> bool:
    """Target satisfies the sentence with source parameters pushed through f."""
    return f.target.satisfies(sentence, params=f.as_dict())


def one_point_assignments(B: FinStructure):
    """Choices of one element per sort giving an embedded trivial structure."""
    pools = [B.carriers[s] for s in B.sig.sorts]
    for combo in itertools.product(*pools):
        point = dict(zip(B.sig.sorts, combo))
        ok = all(B.apply(f, [point[s] for s in argsorts]) == point[result]
                 for f, (argsorts, result) in B.sig.functions.items())
        if ok:
            ok = all(B.constants[c] == point[s] for c, s in B.sig.constants.items())
        if ok:
            ok = all(B.holds(r, [point[s] for s in argsorts])
                     for r, argsorts in B.sig.relations.items())
        if ok:
            yield point


def trivial_embeds(B: FinStructure) -> Optional[Dict[str, str]]:
    """First witness point if the trivial structure embeds into B, else None."""
    for point in one_point_assignments(B):
        return point
    return None


# ---------------------------------------------------------------------------
# class membership relative to an explicit generator class K


@dataclass
class ClassMembership:
    holds: bool
    kind: str                      # "universal" or "quasivariety"
    witness: Optional[Hom] = None  # universal: the embedding
    member_index: Optional[int] = None
    separators: Optional[list] = None   # quasivariety: [(atom, member index, Hom)]
    failing_atom: Optional[object] = None


def in_universal_class(A: FinStructure, K: Sequence[FinStructure]) -> ClassMembership:
    """Does A embed into some member of K?  K-relative reading of membership."""
    for i, M in enumerate(K):
        embeddings = enumerate_homs(A, M, mode="embedding")
        if embeddings:
            return ClassMembership(True, "universal", witness=embeddings[0], member_index=i)
    return ClassMembership(False, "universal")


def false_atoms(A: FinStructure):
    """Element-level atomic sentences false in A, in canonical order."""
    for s in A.sig.sorts:
        elems = A.carriers[s]
        for i, a in enumerate(elems):
            for b in elems[i + 1:]:
                yield Eq(Const(a, s), Const(b, s))
    for r in sorted(A.sig.relations):
        argsorts = A.sig.relations[r]
        for tup in itertools.product(*(A.carriers[s] for s in argsorts)):
            if tup not in A.relations[r]:
                yield Rel(r, tuple(Const(e, s) for e, s in zip(tup, argsorts)))


def _atom_through(f: Hom, atom) -> bool:
    m = f.as_dict()
    B = f.target
    if isinstance(atom, Eq):
        return B.eval_term(atom.left, m) == B.eval_term(atom.right, m)
    return B.holds(atom.rel, [B.eval_term(t, m) for t in atom.args])


def in_quasivariety(A: FinStructure, K: Sequence[FinStructure]) -> ClassMembership:
    """Separation semantics: every atomic fact false in A is refuted by some
    hom into a member of K.  Exact; the empty separating family covers the
    trivial structure (the empty product).
    """
    homs = [(i, h) for i, M in enumerate(K) for h in enumerate_homs(A, M)]
    separators = []
    for atom in false_atoms(A):
        hit = None
        for i, h in enumerate(homs):
            if not _atom_through(h[1], atom):
                hit = (atom, h[0], h[1])
                break
        if hit is None:
            return ClassMembership(False, "quasivariety", failing_atom=atom)
        separators.append(hit)
    return ClassMembership(True, "quasivariety", separators=separators)


def embeds_in_bounded_product(A: FinStructure, K: Sequence[FinStructure],
                              k: int) -> Optional[Tuple[Tuple[int, ...], Hom]]:
    """Search an embedding of A into a product of at most k members (with
    repetition).  Exponential; used as a cross-validation oracle at desk scale.
    """
    for r in range(k + 1):
        for combo in itertools.combinations_with_replacement(range(len(K)), r):
            P = product([K[i] for i in combo], sig=A.sig)
            embeddings = enumerate_homs(A, P, mode="embedding")
            if embeddings:
                return combo, embeddings[0]
    return None
