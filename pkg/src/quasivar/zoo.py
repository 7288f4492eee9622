"""Stock signatures and small instance families.

Everything is generated in a fixed canonical order so that the same call
always yields the same structures with the same element names.
"""

from __future__ import annotations

import itertools
from typing import Dict, List, Optional, Sequence

from .errors import ValidationError
from .structures import FinStructure, product
from .syntax import Signature


# ---------------------------------------------------------------------------
# signatures


def poset_signature() -> Signature:
    return Signature(sorts=("p",), relations={"leq": ("p", "p")})


def strict_poset_signature() -> Signature:
    return Signature(sorts=("p",), relations={"lt": ("p", "p")})


def semilattice_signature() -> Signature:
    return Signature(sorts=("p",), functions={"meet": (("p", "p"), "p")})


def ring_signature() -> Signature:
    return Signature(
        sorts=("r",),
        functions={
            "add": (("r", "r"), "r"),
            "mul": (("r", "r"), "r"),
            "neg": (("r",), "r"),
        },
        constants={"zero": "r", "one": "r"},
    )


def rng_signature() -> Signature:
    # no unit constant: extra ops then all fix zero, the group-based shape
    return Signature(
        sorts=("r",),
        functions={
            "add": (("r", "r"), "r"),
            "mul": (("r", "r"), "r"),
            "neg": (("r",), "r"),
        },
        constants={"zero": "r"},
    )


def diff_ring_signature() -> Signature:
    """Ring operations plus a unary derivation symbol."""
    return Signature(
        sorts=("r",),
        functions={
            "add": (("r", "r"), "r"),
            "mul": (("r", "r"), "r"),
            "neg": (("r",), "r"),
            "d": (("r",), "r"),
        },
        constants={"zero": "r", "one": "r"},
    )


def difference_ring_signature() -> Signature:
    """Ring operations plus a unary endomorphism symbol."""
    return Signature(
        sorts=("r",),
        functions={
            "add": (("r", "r"), "r"),
            "mul": (("r", "r"), "r"),
            "neg": (("r",), "r"),
            "sigma": (("r",), "r"),
        },
        constants={"zero": "r", "one": "r"},
    )


def group_signature() -> Signature:
    return Signature(
        sorts=("g",),
        functions={"op": (("g", "g"), "g"), "inv": (("g",), "g")},
        constants={"e": "g"},
    )


def gba_signature(extra: Dict[str, int]) -> Signature:
    """Group ops plus extra function symbols of the given arities."""
    functions = {"op": (("g", "g"), "g"), "inv": (("g",), "g")}
    for name, arity in extra.items():
        if arity < 1:
            raise ValidationError("extra gba operations need arity >= 1")
        functions[name] = (("g",) * arity, "g")
    return Signature(sorts=("g",), functions=functions, constants={"e": "g"})


# ---------------------------------------------------------------------------
# posets


def _transitive_closure(elems, pairs):
    rel = set(pairs)
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(rel), list(rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return rel


def poset_from_order(elems: Sequence[str], below, name: str) -> FinStructure:
    """Poset from a list of (x, y) meaning x <= y; closure is taken."""
    rel = _transitive_closure(elems, below) | {(e, e) for e in elems}
    for a, b in rel:
        if a != b and (b, a) in rel:
            raise ValidationError(f"order on {name!r} is not antisymmetric: {a}, {b}")
    return FinStructure(poset_signature(), {"p": elems}, relations={"leq": rel}, name=name)


def chain_poset(n: int, name: Optional[str] = None) -> FinStructure:
    elems = [f"c{i}" for i in range(n)]
    rel = {(elems[i], elems[j]) for i in range(n) for j in range(i, n)}
    return FinStructure(poset_signature(), {"p": elems}, relations={"leq": rel},
                        name=name or f"chain{n}")


def antichain(n: int, name: Optional[str] = None) -> FinStructure:
    elems = [f"a{i}" for i in range(n)]
    rel = {(e, e) for e in elems}
    return FinStructure(poset_signature(), {"p": elems}, relations={"leq": rel},
                        name=name or f"antichain{n}")


def vee_poset() -> FinStructure:
    # bottom below two incomparable tops
    return poset_from_order(["a0", "a1", "a2"], [("a0", "a1"), ("a0", "a2")], "vee")


def wedge_poset() -> FinStructure:
    # two incomparable bottoms below one top
    return poset_from_order(["a0", "a1", "a2"], [("a0", "a2"), ("a1", "a2")], "wedge")


def strict_chain(n: int, name: Optional[str] = None) -> FinStructure:
    elems = [f"c{i}" for i in range(n)]
    rel = {(elems[i], elems[j]) for i in range(n) for j in range(i + 1, n)}
    return FinStructure(strict_poset_signature(), {"p": elems}, relations={"lt": rel},
                        name=name or f"schain{n}")


def all_posets(max_size: int) -> List[FinStructure]:
    """All labeled posets with 1..max_size elements, canonical order."""
    out = []
    for n in range(1, max_size + 1):
        elems = [f"a{i}" for i in range(n)]
        offdiag = [(a, b) for a in elems for b in elems if a != b]
        for bits in itertools.product((0, 1), repeat=len(offdiag)):
            rel = {p for p, bit in zip(offdiag, bits) if bit}
            rel |= {(e, e) for e in elems}
            if any((a, b) in rel and (b, a) in rel and a != b for a, b in offdiag):
                continue
            if _transitive_closure(elems, rel) != rel:
                continue
            out.append(FinStructure(poset_signature(), {"p": elems},
                                    relations={"leq": rel},
                                    name=f"poset{n}_{len(out)}"))
    return out


def all_strict_posets(max_size: int) -> List[FinStructure]:
    """All labeled strict orders (irreflexive, transitive) with 1..max_size elements."""
    out = []
    for n in range(1, max_size + 1):
        elems = [f"a{i}" for i in range(n)]
        offdiag = [(a, b) for a in elems for b in elems if a != b]
        for bits in itertools.product((0, 1), repeat=len(offdiag)):
            rel = {p for p, bit in zip(offdiag, bits) if bit}
            if any((a, b) in rel and (b, a) in rel for a, b in offdiag):
                continue
            if _transitive_closure(elems, rel) != rel:
                continue
            out.append(FinStructure(strict_poset_signature(), {"p": elems},
                                    relations={"lt": rel},
                                    name=f"sposet{n}_{len(out)}"))
    return out


# ---------------------------------------------------------------------------
# meet-semilattices


def meet_chain(n: int, name: Optional[str] = None) -> FinStructure:
    elems = [f"c{i}" for i in range(n)]
    table = {(a, b): min(a, b) for a in elems for b in elems}
    return FinStructure(semilattice_signature(), {"p": elems},
                        functions={"meet": table}, name=name or f"mchain{n}")


def all_semilattices(max_size: int) -> List[FinStructure]:
    """All labeled meet-semilattices with 1..max_size elements.

    Brute force over binary tables filtered by idempotence, commutativity
    and associativity; fine for size <= 3.
    """
    out = []
    for n in range(1, max_size + 1):
        elems = [f"a{i}" for i in range(n)]
        keys = [(a, b) for a in elems for b in elems]
        for values in itertools.product(elems, repeat=len(keys)):
            table = dict(zip(keys, values))
            if any(table[(e, e)] != e for e in elems):
                continue
            if any(table[(a, b)] != table[(b, a)] for a in elems for b in elems):
                continue
            if any(table[(table[(a, b)], c)] != table[(a, table[(b, c)])]
                   for a in elems for b in elems for c in elems):
                continue
            out.append(FinStructure(semilattice_signature(), {"p": elems},
                                    functions={"meet": table},
                                    name=f"slat{n}_{len(out)}"))
    return out


# ---------------------------------------------------------------------------
# rings and groups


def zmod(n: int, name: Optional[str] = None) -> FinStructure:
    """The ring of integers mod n; zmod(1) is the one-element ring."""
    if n < 1:
        raise ValidationError("zmod needs n >= 1")
    elems = [str(i) for i in range(n)]
    add = {(a, b): str((int(a) + int(b)) % n) for a in elems for b in elems}
    mul = {(a, b): str((int(a) * int(b)) % n) for a in elems for b in elems}
    neg = {(a,): str((-int(a)) % n) for a in elems}
    return FinStructure(ring_signature(), {"r": elems},
                        functions={"add": add, "mul": mul, "neg": neg},
                        constants={"zero": "0", "one": "0" if n == 1 else "1"},
                        name=name or f"z{n}")


def zmod_rng(n: int, name: Optional[str] = None) -> FinStructure:
    """zmod without the unit constant, the group-based-algebra view."""
    base = zmod(n)
    return FinStructure(rng_signature(), {"r": base.carriers["r"]},
                        functions={f: dict(t) for f, t in base.functions.items()},
                        constants={"zero": "0"}, name=name or f"z{n}rng")


def zmod_diff(n: int, name: Optional[str] = None) -> FinStructure:
    """zmod with the zero map as derivation (d(ab) = a d(b) + d(a) b holds)."""
    base = zmod(n)
    functions = {f: dict(t) for f, t in base.functions.items()}
    functions["d"] = {(a,): "0" for a in base.carriers["r"]}
    return FinStructure(diff_ring_signature(), {"r": base.carriers["r"]},
                        functions=functions, constants=dict(base.constants),
                        name=name or f"z{n}diff")


def zmod_difference(n: int, name: Optional[str] = None) -> FinStructure:
    """zmod with the identity endomorphism."""
    base = zmod(n)
    functions = {f: dict(t) for f, t in base.functions.items()}
    functions["sigma"] = {(a,): a for a in base.carriers["r"]}
    return FinStructure(difference_ring_signature(), {"r": base.carriers["r"]},
                        functions=functions, constants=dict(base.constants),
                        name=name or f"z{n}sigma")


def cyclic_group(n: int, name: Optional[str] = None) -> FinStructure:
    if n < 1:
        raise ValidationError("cyclic_group needs n >= 1")
    elems = [str(i) for i in range(n)]
    op = {(a, b): str((int(a) + int(b)) % n) for a in elems for b in elems}
    inv = {(a,): str((-int(a)) % n) for a in elems}
    return FinStructure(group_signature(), {"g": elems},
                        functions={"op": op, "inv": inv}, constants={"e": "0"},
                        name=name or f"c{n}")


def _perm_name(p) -> str:
    return "p" + "".join(str(i) for i in p)


def sym_group(n: int, name: Optional[str] = None) -> FinStructure:
    """Symmetric group on n letters; elements named by one-line notation."""
    perms = sorted(itertools.permutations(range(n)))
    names = {p: _perm_name(p) for p in perms}
    elems = [names[p] for p in perms]
    op = {}
    for a in perms:
        for b in perms:
            # apply b first, then a
            op[(names[a], names[b])] = names[tuple(a[b[i]] for i in range(n))]
    inv = {}
    for a in perms:
        ia = [0] * n
        for i, v in enumerate(a):
            ia[v] = i
        inv[(names[a],)] = names[tuple(ia)]
    return FinStructure(group_signature(), {"g": elems},
                        functions={"op": op, "inv": inv},
                        constants={"e": names[tuple(range(n))]},
                        name=name or f"sym{n}")


def klein_group(name: str = "klein") -> FinStructure:
    return product([cyclic_group(2), cyclic_group(2)], name=name)


def ring_family(max_mod: int = 3) -> List[FinStructure]:
    return [zmod(n) for n in range(1, max_mod + 1)]


def rng_family(max_mod: int = 3) -> List[FinStructure]:
    return [zmod_rng(n) for n in range(1, max_mod + 1)]
