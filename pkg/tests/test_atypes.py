import itertools
import random

import pytest

from quasivar.atypes import (AtomUniverse, atype_of, atype_of_eval,
                             check_iso_theorem, check_universal_property,
                             close, element_universe, enumerate_closed_atypes,
                             enumerate_congruences, full_closed,
                             intersect_closed, make_atype, quotient,
                             satisfies_atype, term_universe)
from quasivar.errors import ScopeError, ValidationError
from quasivar.structures import (enumerate_homs, find_isomorphism,
                                 identity_hom, make_hom, trivial_structure)
from quasivar.syntax import App, Const, Eq, Rel, Var, parse_atom, term_vars
from quasivar.zoo import (antichain, chain_poset, klein_group, meet_chain,
                          poset_signature, semilattice_signature, vee_poset,
                          zmod)


def ring_atom(A, text, variables=None):
    return parse_atom(text, A.sig, variables=variables or {}, params=A.param_sorts())


def diagram_universe(A):
    # elements plus every depth-1 ground application: the diagram's subterms
    terms = [Const(e, s) for s in A.sig.sorts for e in A.carriers[s]]
    for f, (argsorts, result) in A.sig.functions.items():
        for args in itertools.product(*(A.carriers[s] for s in argsorts)):
            terms.append(App(f, tuple(Const(e, s) for e, s in zip(args, argsorts)),
                             result))
    return AtomUniverse(A.sig, terms, base=A)


def naive_closure(universe, atoms):
    """Fixpoint saturation of the congruence rules; the independent oracle."""
    terms = universe.terms
    n = len(terms)
    idx = universe.index
    eq = {(i, i) for i in range(n)}
    base = universe.base
    if base is not None:
        vals = {i: base.eval_term(t) for i, t in enumerate(terms)
                if not term_vars(t)}
        for i, vi in vals.items():
            for j, vj in vals.items():
                if vi == vj and terms[i].sort == terms[j].sort:
                    eq.add((i, j))
    rels = set()
    if base is not None:
        for r, tuples in base.relations.items():
            argsorts = base.sig.relations[r]
            for tup in tuples:
                rels.add((r, tuple(idx[Const(e, s)] for e, s in zip(tup, argsorts))))
    for a in atoms:
        if isinstance(a, Eq):
            eq.add((idx[a.left], idx[a.right]))
        else:
            rels.add((a.rel, tuple(idx[t] for t in a.args)))
    apps = [(i, t) for i, t in enumerate(terms) if hasattr(t, "func")]
    changed = True
    while changed:
        changed = False
        for i, j in list(eq):
            if (j, i) not in eq:
                eq.add((j, i))
                changed = True
        for (i, j), (k, l) in itertools.product(list(eq), list(eq)):
            if j == k and (i, l) not in eq:
                eq.add((i, l))
                changed = True
        for (i, t), (j, u) in itertools.combinations(apps, 2):
            if t.func == u.func and (i, j) not in eq:
                if all((idx[a], idx[b]) in eq for a, b in zip(t.args, u.args)):
                    eq.add((i, j))
                    changed = True
    changed = True
    while changed:
        changed = False
        for r, tup in list(rels):
            pools = [[j for j in range(n) if (i, j) in eq] for i in tup]
            for combo in itertools.product(*pools):
                if (r, combo) not in rels:
                    rels.add((r, combo))
                    changed = True
    return eq, rels


def assert_matches_oracle(A, atoms):
    uni = diagram_universe(A)
    eq, rels = naive_closure(uni, atoms)
    c = close(make_atype(A, (), atoms))
    for s in A.sig.sorts:
        for a, b in itertools.product(A.carriers[s], repeat=2):
            oracle = (uni.index[Const(a, s)], uni.index[Const(b, s)]) in eq
            assert c.contains(Eq(Const(a, s), Const(b, s))) == oracle
    for r, argsorts in A.sig.relations.items():
        for tup in itertools.product(*(A.carriers[s] for s in argsorts)):
            atom = Rel(r, tuple(Const(e, s) for e, s in zip(tup, argsorts)))
            key = (r, tuple(uni.index[t] for t in atom.args))
            assert c.contains(atom) == (key in rels)


def test_closure_z4_two_equals_zero():
    z4 = zmod(4)
    pi = make_atype(z4, (), [ring_atom(z4, "2 = 0")])
    c = close(pi)
    assert c.contains(ring_atom(z4, "3 = 1"))
    assert not c.contains(ring_atom(z4, "1 = 0"))
    assert c.n_classes() == 2
    assert_matches_oracle(z4, pi.atoms)


def test_closure_of_empty_is_diagram():
    z4 = zmod(4)
    c = close(make_atype(z4))
    assert c.n_classes() == 4
    qr = quotient(c)
    assert find_isomorphism(qr.quotient, z4) is not None
    A = chain_poset(2)
    c2 = close(make_atype(A))
    assert c2.contains(parse_atom("leq(c0, c1)", A.sig, params=A.param_sorts()))
    assert not c2.contains(parse_atom("leq(c1, c0)", A.sig, params=A.param_sorts()))


def test_closure_is_idempotent_and_monotone():
    z4 = zmod(4)
    rng = random.Random(11)
    pool = [ring_atom(z4, t) for t in
            ["2 = 0", "3 = 1", "1 = 0", "add(1, 1) = 2", "mul(2, 2) = 0",
             "neg(1) = 3", "2 = 1", "3 = 0"]]
    for _ in range(12):
        sub = frozenset(rng.sample(pool, rng.randint(0, 4)))
        sup = sub | frozenset(rng.sample(pool, rng.randint(0, 3)))
        c_sub = close(make_atype(z4, (), sub))
        c_sup = close(make_atype(z4, (), sup))
        assert c_sub.contains_atype(make_atype(z4, (), sub))
        assert c_sub.le(c_sup)
        again = close(c_sub.as_atype())
        assert again == c_sub
        assert_matches_oracle(z4, sub)


def test_ground_application_atoms_normalize():
    z4 = zmod(4)
    # mul(3, 3) = 1 already holds, so the closure is just the diagram
    pi = make_atype(z4, (), [ring_atom(z4, "mul(3, 3) = 1")])
    assert close(pi) == close(make_atype(z4))


def test_quotient_z4_by_two_equals_zero():
    z4 = zmod(4)
    qr = quotient(make_atype(z4, (), [ring_atom(z4, "2 = 0")]))
    assert qr.quotient.size() == 2
    assert find_isomorphism(qr.quotient, zmod(2)) is not None
    assert qr.projection.as_dict() == {"0": "0", "1": "1", "2": "0", "3": "1"}


def test_quotient_by_everything_collapses():
    A = chain_poset(2)
    pi = make_atype(A, (), [parse_atom("c0 = c1", A.sig, params=A.param_sorts())])
    qr = quotient(pi)
    assert qr.quotient.size() == 1
    # saturation carries the order relation onto the collapsed point
    assert qr.quotient.holds("leq", ("c0", "c0"))
    one = trivial_structure(A.sig)
    assert find_isomorphism(qr.quotient, one) is not None


def test_quotient_preserves_poset_relations():
    A = vee_poset()  # a0 below a1 and a2
    pi = make_atype(A, (), [parse_atom("a1 = a2", A.sig, params=A.param_sorts())])
    qr = quotient(pi)
    assert qr.quotient.size() == 2
    assert qr.quotient.holds("leq", ("a0", "a1"))


def test_atype_of_identity_is_diagram_closure():
    for A in [zmod(4), chain_poset(3)]:
        assert atype_of(identity_hom(A)) == close(make_atype(A))


def test_atype_of_canonical_ring_hom():
    z4, z2 = zmod(4), zmod(2)
    f = make_hom(z4, z2, {"0": "0", "1": "1", "2": "0", "3": "1"})
    c = atype_of(f)
    assert c.contains(ring_atom(z4, "2 = 0"))
    assert c.contains(ring_atom(z4, "3 = 1"))
    assert not c.contains(ring_atom(z4, "1 = 0"))
    # a-types of homs are already closed
    assert close(c.as_atype()) == c


def test_atype_of_collapse_to_point_is_full():
    A = chain_poset(2)
    one = trivial_structure(A.sig)
    f = make_hom(A, one, {"c0": "*p", "c1": "*p"})
    assert atype_of(f) == full_closed(element_universe(A))


def test_iso_theorem_instances():
    z4, z2 = zmod(4), zmod(2)
    f = make_hom(z4, z2, {"0": "0", "1": "1", "2": "0", "3": "1"})
    assert check_iso_theorem(f)["holds"]
    assert check_iso_theorem(identity_hom(z4))["holds"]
    emb = make_hom(chain_poset(2), chain_poset(3), {"c0": "c0", "c1": "c2"})
    assert check_iso_theorem(emb)["holds"]
    for g in enumerate_homs(chain_poset(3), chain_poset(2)):
        assert check_iso_theorem(g)["holds"]


def test_universal_property_small():
    z4 = zmod(4)
    pi = make_atype(z4, (), [ring_atom(z4, "2 = 0")])
    assert check_universal_property(pi, zmod(2))["holds"]
    A = chain_poset(3)
    pi2 = make_atype(A, (), [parse_atom("c0 = c1", A.sig, params=A.param_sorts())])
    rep = check_universal_property(pi2, chain_poset(2))
    assert rep["holds"]
    assert rep["checked"] == 3


def test_closure_with_variables_propagates():
    z4 = zmod(4)
    x = Var("x", "r")
    uni = term_universe(z4.sig, (x,), depth=1, base=z4)
    pi = make_atype(z4, (x,), [Eq(x, Const("2", "r"))])
    c = close(pi, uni)
    want = Eq(App("add", (x, x), "r"), Const("0", "r"))
    assert c.contains(want)
    assert c.contains(Eq(App("mul", (x, x), "r"), Const("0", "r")))
    assert not c.contains(Eq(x, Const("0", "r")))


def test_closure_with_variables_matches_naive():
    S = meet_chain(2)
    x = Var("x", "p")
    uni = term_universe(S.sig, (x,), depth=1, base=S)
    pi_atoms = [Eq(App("meet", (x, Const("c1", "p")), "p"), Const("c0", "p"))]
    c = close(make_atype(S, (x,), pi_atoms), uni)
    eq, _ = naive_closure(uni, pi_atoms)
    for i, t in enumerate(uni.terms):
        for j, u in enumerate(uni.terms):
            if t.sort == u.sort:
                assert c.contains(Eq(t, u)) == ((i, j) in eq)
    # the constraint does not force a value for x itself
    assert not c.contains(Eq(x, Const("c0", "p")))
    assert not c.contains(Eq(x, Const("c1", "p")))


def test_atype_of_eval_over_terms():
    S = meet_chain(2)
    x = Var("x", "p")
    uni = term_universe(S.sig, (x,), depth=1, base=S)
    f = identity_hom(S)
    c = atype_of_eval(uni, S, assignment={"x": "c0"}, hom=f)
    assert c.contains(Eq(x, Const("c0", "p")))
    assert c.contains(Eq(App("meet", (x, Const("c1", "p")), "p"), x))
    pi = make_atype(S, (x,), [Eq(App("meet", (x, Const("c1", "p")), "p"), x)])
    assert c.contains_atype(pi)
    assert satisfies_atype(f, pi, assignment={"x": "c0"})
    assert satisfies_atype(f, pi, assignment={"x": "c1"})


def test_intersection_of_closed_atypes():
    z4 = zmod(4)
    a = close(make_atype(z4, (), [ring_atom(z4, "2 = 0")]))
    b = close(make_atype(z4, (), [ring_atom(z4, "1 = 0")]))
    both = intersect_closed([a, b])
    assert both.contains(ring_atom(z4, "2 = 0"))  # 1=0 forces 2=0 too
    assert not both.contains(ring_atom(z4, "1 = 0"))
    assert both == a  # a is contained in b, so the meet is a
    assert intersect_closed([a]) == a


def test_intersection_relations():
    A = chain_poset(2)
    one = trivial_structure(A.sig)
    collapse = atype_of(make_hom(A, one, {"c0": "*p", "c1": "*p"}))
    diag = close(make_atype(A))
    both = intersect_closed([collapse, diag])
    assert both == diag
    assert not both.contains(parse_atom("leq(c1, c0)", A.sig, params=A.param_sorts()))


def test_full_closed_is_top():
    A = chain_poset(2)
    top = full_closed(element_universe(A))
    assert top.contains(parse_atom("c0 = c1", A.sig, params=A.param_sorts()))
    assert top.contains(parse_atom("leq(c1, c0)", A.sig, params=A.param_sorts()))
    assert close(make_atype(A)).le(top)


def test_atype_validation():
    z4 = zmod(4)
    with pytest.raises(ValidationError):
        make_atype(z4, (), [Eq(Const("7", "r"), Const("0", "r"))])
    with pytest.raises(ValidationError):
        make_atype(z4, (), [Eq(Var("x", "r"), Const("0", "r"))])


def test_term_universe_sizes():
    sig = semilattice_signature()
    x = Var("x", "p")
    uni0 = term_universe(sig, (x,), depth=0, base=meet_chain(2))
    assert len(uni0) == 3
    uni1 = term_universe(sig, (x,), depth=1, base=meet_chain(2))
    assert len(uni1) == 3 + 9
    uni_free = term_universe(poset_signature(), (x,), depth=2)
    assert len(uni_free) == 1  # no functions, no constants


# --- exhaustive enumeration of ground closed a-types ---

def brute_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in brute_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [head]] + part[i + 1:]
        yield [[head]] + part


def brute_congruences(A):
    # every partition of the carrier whose blocks respect the tables
    sort = A.sig.sorts[0]
    out = []
    for part in brute_partitions(A.carriers[sort]):
        rep = {e: min(block) for block in part for e in block}
        ok = True
        for f, tbl in A.functions.items():
            seen = {}
            for args, val in tbl.items():
                key = tuple(rep[a] for a in args)
                if seen.setdefault(key, rep[val]) != rep[val]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(rep)
    return {frozenset(r.items()) for r in out}


def test_congruence_enumeration_matches_the_partition_filter():
    for A, n in [(zmod(4), 3), (klein_group(), 5), (zmod(1), 1),
                 (chain_poset(2), 2), (antichain(3), 5)]:
        got = enumerate_congruences(A)
        assert len(got) == n, A.name
        assert {frozenset(r.items()) for r in got} == brute_congruences(A)


def test_closed_atype_enumeration_is_exhaustive():
    # oracle: close every subset of the full ground atom pool and dedup
    for A, n in [(chain_poset(2), 3), (antichain(2), 5)]:
        elems = A.carriers["p"]
        pool = [Eq(Const(a, "p"), Const(b, "p"))
                for a, b in itertools.combinations(elems, 2)]
        pool += [Rel("leq", (Const(a, "p"), Const(b, "p")))
                 for a in elems for b in elems]
        closures = set()
        for r in range(len(pool) + 1):
            for combo in itertools.combinations(pool, r):
                closures.add(close(make_atype(A, (), combo)))
        got = enumerate_closed_atypes(A)
        assert len(got) == n
        assert set(got) == closures


def test_closed_atype_enumeration_guard():
    with pytest.raises(ScopeError):
        enumerate_closed_atypes(antichain(2), guard=1)
