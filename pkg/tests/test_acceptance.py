"""Acceptance runs.

Closure laws on random a-types, agreement with a naive saturation oracle,
exhaustive small-catalog checks of the quotient, representation, and
expansion theorems, witness extraction re-evaluated pointwise, the
group-based-algebra bijections, and byte-identical CLI reruns.  One
printed line per criterion; runtime budgets asserted where stated.
"""

import itertools
import json
import random
import subprocess
import sys
import time

import pytest

from quasivar.atypes import (close, enumerate_closed_atypes, make_atype,
                             check_universal_property, quotient, term_universe)
from quasivar.errors import TheoremViolation
from quasivar.files import save_signature, save_structure
from quasivar.gba import (as_gba, enumerate_ideals, ideal_closure,
                          ideal_radical, ideal_atype_bijection)
from quasivar.geometry import (Scope, atype_of_points, check_gcim,
                               extract_witness_terms, rational_points)
from quasivar.morley import star_expand, star_prime_bijection
from quasivar.radical import Context, is_radical, radical, represent
from quasivar.structures import (FinStructure, enumerate_homs, in_quasivariety,
                                 in_universal_class, is_embedding,
                                 trivial_embeds, product)
from quasivar.syntax import App, Const, Eq, Rel, Var
from quasivar.zoo import (all_posets, all_semilattices, all_strict_posets,
                          antichain, chain_poset, cyclic_group, meet_chain,
                          poset_signature, ring_signature, sym_group,
                          vee_poset, wedge_poset, zmod)


def _line(name, t0, detail, budget=None):
    dt = time.monotonic() - t0
    if budget is not None:
        assert dt < budget, f"{name} took {dt:.1f}s, budget {budget}s"
    print(f"{name}: PASS ({detail}, {dt:.1f}s)")


def _pick(uni, rng, sort):
    return uni.terms[rng.choice(uni.sort_members(sort))]


def _random_atoms(uni, A, rng, k):
    out = []
    for _ in range(k):
        if A.sig.relations and rng.random() < 0.4:
            r, argsorts = rng.choice(sorted(A.sig.relations.items()))
            out.append(Rel(r, tuple(_pick(uni, rng, s) for s in argsorts)))
        else:
            t1 = rng.choice(uni.terms)
            out.append(Eq(t1, _pick(uni, rng, t1.sort)))
    return out


def test_closure_operators_obey_closure_laws():
    # extensivity, monotonicity, idempotence for all three closure engines
    rng = random.Random(20260815)
    fams = {
        "poset": [chain_poset(2), chain_poset(3), chain_poset(4),
                  antichain(2), antichain(3), vee_poset(), wedge_poset()],
        "slat": [meet_chain(2), meet_chain(3), meet_chain(4)]
                + all_semilattices(3)[-3:],
        "ring": [zmod(1), zmod(2), zmod(3), zmod(4)],
    }
    ctxs = {
        "poset": Context([chain_poset(2), chain_poset(3)], 4, 1),
        "slat": Context([meet_chain(2), meet_chain(3)], 4, 1),
        "ring": Context([zmod(2), zmod(3)], 4, 1),
    }
    t0 = time.monotonic()
    names = ("poset", "slat", "ring")
    for i in range(200):
        fam = names[i % 3]
        A = rng.choice(fams[fam])
        ctx = ctxs[fam]
        sort = A.sig.sorts[0]
        vs = tuple(Var(n, sort) for n in ("x", "y")[:rng.randrange(3)])
        uni = term_universe(A.sig, vs, 1, base=A)
        pi = make_atype(A, vs, _random_atoms(uni, A, rng, rng.randrange(4)))
        pi2 = make_atype(A, vs, list(pi.atoms)
                         + _random_atoms(uni, A, rng, rng.randrange(3)))
        c, c2 = close(pi, uni), close(pi2, uni)
        assert c.contains_atype(pi)
        assert c.le(c2)
        assert close(c.as_atype(), uni) == c
        r, r2 = radical(pi, ctx, uni), radical(pi2, ctx, uni)
        assert c.le(r.radical)
        assert r.radical.le(r2.radical)
        assert radical(r.radical.as_atype(), ctx, uni).radical == r.radical
        if fam == "ring":
            G = as_gba(A)
            elems = sorted(A.elements())
            S = set(rng.sample(elems, rng.randrange(1 + A.size())))
            S2 = S | set(rng.sample(elems, rng.randrange(1 + A.size())))
            I, I2 = ideal_closure(S, G), ideal_closure(S2, G)
            assert S <= I and I <= I2
            assert ideal_closure(I, G) == I
    _line("closure-laws", t0, "200 random a-types, 3 signatures", budget=60)


def _saturate(A, uni, atoms):
    # naive oracle: merge by rule application until nothing changes
    n = len(uni.terms)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    byval = {}
    for i, t in enumerate(uni.terms):
        v = A.eval_term(t)
        if v in byval:
            union(byval[v], i)
        else:
            byval[v] = i
    rels = set()
    for r, tuples in A.relations.items():
        argsorts = A.sig.relations[r]
        for tup in tuples:
            rels.add((r, tuple(uni.index[Const(e, s)]
                               for e, s in zip(tup, argsorts))))
    for a in atoms:
        if isinstance(a, Eq):
            union(uni.index[a.left], uni.index[a.right])
        else:
            rels.add((a.rel, tuple(uni.index[t] for t in a.args)))
    apps = [(i, t) for i, t in enumerate(uni.terms) if isinstance(t, App)]
    changed = True
    while changed:
        changed = False
        for (i, t), (j, u) in itertools.combinations(apps, 2):
            if t.func == u.func and find(i) != find(j):
                if all(find(uni.index[a]) == find(uni.index[b])
                       for a, b in zip(t.args, u.args)):
                    union(i, j)
                    changed = True
        canon = {(r, tuple(find(k) for k in tup)) for r, tup in rels}
        if canon != rels:
            rels = canon
            changed = True
    blocks = {}
    for i in range(n):
        blocks.setdefault(find(i), set()).add(i)
    return frozenset(frozenset(b) for b in blocks.values()), rels, find


def test_congruence_closure_matches_naive_saturation():
    rng = random.Random(7)
    from quasivar.zoo import zmod_rng
    pool = [zmod(1), zmod(2), zmod_rng(2), meet_chain(2), meet_chain(3),
            meet_chain(4), chain_poset(2), chain_poset(3), chain_poset(4),
            antichain(3), vee_poset(), wedge_poset(), cyclic_group(2)]
    t0 = time.monotonic()
    for i in range(100):
        A = rng.choice(pool)
        uni = term_universe(A.sig, (), 1, base=A)
        assert len(uni.terms) <= 20, (A.name, len(uni.terms))
        atoms = _random_atoms(uni, A, rng, rng.randrange(4))
        part, rels, find = _saturate(A, uni, atoms)
        c = close(make_atype(A, (), atoms), uni)
        got_part = frozenset(frozenset(uni.index[t] for t in cls)
                             for cls in c.classes())
        assert got_part == part, (A.name, i)
        got_rels = {(r, tuple(find(k) for k in tup)) for r, tup in c.rel_atoms}
        assert got_rels == rels, (A.name, i)
    _line("congruence-oracle", t0,
          "100 random instances, <= 20 ground terms", budget=30)


def test_quotients_have_the_universal_property():
    posets, slats = all_posets(3), all_semilattices(3)
    t0 = time.monotonic()
    n = 0
    for fam in (posets, slats):
        for A in fam:
            for c in enumerate_closed_atypes(A):
                pi = c.as_atype()
                qr = quotient(c)
                for B in fam:
                    out = check_universal_property(pi, B, qr=qr)
                    assert out["holds"], (A.name, B.name, out)
                    n += 1
    _line("universal-property", t0,
          f"{n} (a-type, target) pairs, exhaustive at size <= 3", budget=120)


def test_radicality_routes_agree_exhaustively():
    # syntactic fixpoint route against quasivariety membership of the
    # quotient, over every ground closed a-type of the catalogs
    t0 = time.monotonic()
    runs = (
        (all_posets(3), [chain_poset(2), chain_poset(3)]),
        ([zmod(1), zmod(2), zmod(3)], [zmod(2), zmod(3)]),
    )
    n = 0
    for fam, K in runs:
        ctx = Context(K, 3, 2)
        for A in fam:
            for c in enumerate_closed_atypes(A):
                d = is_radical(c.as_atype(), ctx)
                sem = in_quasivariety(quotient(c).quotient, K).holds
                assert d.status == "decided"
                assert d.value == sem, (A.name, d.detail)
                n += 1
    _line("radical-route-agreement", t0,
          f"{n} closed a-types, poset and ring catalogs", budget=300)


def _non_members():
    sig = poset_signature()
    cyc = FinStructure(sig, {"p": ["a", "b"]},
                       relations={"leq": {("a", "a"), ("b", "b"),
                                          ("a", "b"), ("b", "a")}},
                       name="twocycle")
    irr = FinStructure(sig, {"p": ["a"]}, relations={"leq": set()},
                       name="irreflexive")
    rsig = ring_signature()
    bad = FinStructure(rsig, {"r": ["0", "1"]},
                       functions={"add": {("0", "0"): "0", ("0", "1"): "1",
                                          ("1", "0"): "1", ("1", "1"): "0"},
                                  "mul": {("0", "0"): "1", ("0", "1"): "1",
                                          ("1", "0"): "1", ("1", "1"): "1"},
                                  "neg": {("0",): "0", ("1",): "1"}},
                       constants={"zero": "0", "one": "1"}, name="badring")
    return cyc, irr, bad


def test_members_are_subdirect_products_and_nothing_else_embeds():
    cyc, irr, bad = _non_members()
    t0 = time.monotonic()
    members = non_members = 0
    runs = (
        (all_posets(3) + [cyc, irr], [chain_poset(2), chain_poset(3)]),
        ([zmod(1), zmod(2), zmod(3), bad], [zmod(2), zmod(3)]),
    )
    for fam, K in runs:
        ctx = Context(K, 3, 2)
        for A in fam:
            mem = in_quasivariety(A, K).holds
            rep = represent(A, ctx)
            assert rep["embedding"] == mem, A.name
            if mem:
                assert rep["subdirect"], A.name
                members += 1
            else:
                non_members += 1
    assert non_members == 3
    _line("subdirect-representation", t0,
          f"{members} members embed subdirectly, {non_members} rejected")


def test_point_atypes_contain_the_radical():
    rng = random.Random(41)
    runs = (
        ([chain_poset(2), chain_poset(3), vee_poset(), wedge_poset()],
         Context([chain_poset(2), chain_poset(3)], 3, 2)),
        ([zmod(2), zmod(3)], Context([zmod(2), zmod(3)], 3, 2)),
    )
    t0 = time.monotonic()
    for i in range(100):
        fam, ctx = runs[i % 2]
        A = rng.choice(fam)
        assert in_quasivariety(A, ctx.K).holds
        sort = A.sig.sorts[0]
        vs = tuple(Var(n, sort) for n in ("x", "y")[:1 + rng.randrange(2)])
        shallow = term_universe(A.sig, vs, 1, base=A)
        pi = make_atype(A, vs, _random_atoms(shallow, A, rng,
                                             rng.randrange(3)))
        uni = term_universe(A.sig, vs, 2, base=A)
        rad = radical(pi, ctx, uni)
        pts = atype_of_points(rational_points(pi), universe=uni)
        assert rad.radical.le(pts.closed), (A.name, i)
    _line("radical-in-point-atype", t0,
          "100 random a-types, 1-2 variables, depth 2")


def test_geometrically_closed_homs_are_immersions():
    # irreflexive catalog: no target admits a one-point full substructure
    fam = all_strict_posets(3)
    scope = Scope(2, 1, max_vars=2)
    t0 = time.monotonic()
    homs = checked = 0
    for A in fam:
        for B in fam:
            assert trivial_embeds(B) is None
            for f in enumerate_homs(A, B):
                out = check_gcim(f, scope)
                homs += 1
                if out["verdict"] == "checked":
                    checked += 1
    assert checked > 0
    _line("gc-implies-immersion", t0,
          f"{homs} homs exhaustively, {checked} with the antecedent")


def _biconditional_everywhere(K, phi, theta, xs, ys, terms):
    for M in K:
        for xvals in itertools.product(*[M.carriers[v.sort] for v in xs]):
            asg = {v.name: e for v, e in zip(xs, xvals)}
            if not all(M.eval_atom(a, asg) for a in theta):
                continue
            tvals = [M.eval_term(t, asg) for t in terms]
            for yvals in itertools.product(*[M.carriers[v.sort] for v in ys]):
                full = dict(asg)
                full.update({v.name: e for v, e in zip(ys, yvals)})
                lhs = all(M.eval_atom(a, full) for a in phi)
                if lhs != (list(yvals) == tvals):
                    return False
    return True


def test_extracted_witness_terms_satisfy_the_biconditional():
    def meet(a, b):
        return App("meet", (a, b), "p")

    def op(a, b):
        return App("op", (a, b), "g")

    def inv(a):
        return App("inv", (a,), "g")

    x, y, z = Var("x", "p"), Var("y", "p"), Var("z", "p")
    x1, x2 = Var("x1", "p"), Var("x2", "p")
    gx, gy = Var("x", "g"), Var("y", "g")
    g1, g2 = Var("x1", "g"), Var("x2", "g")
    e = Const("e", "g")
    sl = Context([meet_chain(2), meet_chain(3)], 3, 2)
    gr = Context([cyclic_group(2), cyclic_group(3)], 3, 2)
    cases = [
        (sl, [Eq(y, meet(x1, x2))], [], (x1, x2), (y,)),
        (sl, [Eq(y, meet(x, x))], [], (x,), (y,)),
        (sl, [Eq(y, meet(meet(x1, x2), x1))], [], (x1, x2), (y,)),
        (sl, [Eq(y, meet(x1, x2)), Eq(z, meet(x2, x2))], [], (x1, x2), (y, z)),
        (sl, [Eq(y, meet(x1, x2)), Eq(meet(x1, x2), x1)],
         [Eq(meet(x1, x2), x1)], (x1, x2), (y,)),
        (gr, [Eq(op(gy, gx), e)], [], (gx,), (gy,)),
        (gr, [Eq(gy, op(gx, gx))], [], (gx,), (gy,)),
        (gr, [Eq(op(gx, gy), gx)], [], (gx,), (gy,)),
        (gr, [Eq(gy, inv(inv(gx)))], [], (gx,), (gy,)),
        (gr, [Eq(gy, op(g1, inv(g2)))], [], (g1, g2), (gy,)),
    ]
    t0 = time.monotonic()
    for i, (ctx, phi, theta, xs, ys) in enumerate(cases):
        out = extract_witness_terms(phi, theta, xs, ys, ctx, 2)
        assert out["found"], i
        assert _biconditional_everywhere(ctx.K, phi, theta, xs, ys,
                                         out["terms"]), i
    _line("witness-terms", t0, "10 functional conjunctions re-evaluated")


def test_star_expansion_suite():
    posets = all_posets(3)
    stars = [star_expand(A) for A in posets]
    t0 = time.monotonic()
    homs = 0
    for SA in stars:
        for SB in stars:
            for f in enumerate_homs(SA, SB):
                assert is_embedding(f), (SA.name, SB.name)
                homs += 1
    for SA in stars:
        assert trivial_embeds(SA) is None

    cyc, irr, _ = _non_members()
    K = [chain_poset(2), chain_poset(3)]
    Kstar = [star_expand(M) for M in K]
    for A in posets + [cyc, irr]:
        u = in_universal_class(A, K).holds
        w = in_quasivariety(star_expand(A), Kstar).holds
        assert u == w, A.name

    ctx = Context(K, 3, 1)
    vx = Var("x", "p")
    instances = 0
    for A in K + [vee_poset()]:
        low = Const(sorted(A.carriers["p"])[0], "p")
        for atoms in ([], [Rel("leq", (vx, low))]):
            out = star_prime_bijection(make_atype(A, (vx,), atoms), ctx,
                                       depth=1)
            assert out["verdict"] == "bijective"
            assert out["n_strongly_prime"] == out["n_star_prime"]
            assert sorted(p["strong"] for p in out["pairs"]) == \
                list(range(out["n_strongly_prime"]))
            assert sorted(p["star"] for p in out["pairs"]) == \
                list(range(out["n_star_prime"]))
            instances += 1
    _line("star-expansion-suite", t0,
          f"{homs} expansion homs, 25 transfer checks, "
          f"{instances} prime bijections", budget=300)


def test_gba_bijection_and_radical_transport():
    t0 = time.monotonic()
    zz = product([zmod(2), zmod(2)], name="z2xz2")
    for A in (zmod(4), zz, cyclic_group(2), sym_group(3)):
        out = ideal_atype_bijection(as_gba(A))
        assert out["verdict"] == "bijective"
        assert out["n_ideals"] == out["n_closed_atypes"]
    G = as_gba(zmod(4))
    ctx = Context([zmod(2), zmod(3)], 4, 2)
    n = 0
    for I in enumerate_ideals(G):
        out = ideal_radical(I, G, ctx)
        assert out["transport_agrees"] is True
        assert out["verdict"] == "computed"
        n += 1
    assert n == 3
    _line("gba-suite", t0,
          f"4 bijections, radical transport on {n} ideals")


@pytest.fixture
def cli_ws(tmp_path):
    save_signature(poset_signature(), tmp_path / "poset.sig")
    save_signature(zmod(2).sig, tmp_path / "ring.sig")
    for n in (2, 3):
        save_structure(chain_poset(n), tmp_path / f"chain{n}.struct",
                       "poset.sig")
    for n in (2, 3, 4):
        save_structure(zmod(n), tmp_path / f"z{n}.struct", "ring.sig")
    (tmp_path / "empty.atype").write_text("atype over z4.struct\n")
    (tmp_path / "v.atype").write_text(
        "atype over chain3.struct vars x:p\nleq(x, c1)\n")
    (tmp_path / "w.atype").write_text(
        "atype over chain3.struct vars y:p\nleq(y, c1)\n")
    (tmp_path / "m.morph").write_text(
        'morphism from v.atype to w.atype formula "y = x & leq(x, c1)"\n')
    (tmp_path / "strict.thy").write_text(
        "theory nopoint over poset.sig\nforall x:p . leq(x, x) -> false\n")
    return tmp_path


def test_cli_runs_are_byte_identical(cli_ws):
    bounds = ["--class", "z2.struct,z3.struct", "--size-bound", "4",
              "--depth", "2"]
    pbounds = ["--class", "chain2.struct,chain3.struct", "--size-bound", "4",
               "--depth", "2"]
    commands = [
        ["is-radical", "--structure", "z4.struct", "--atype", "empty.atype"]
        + bounds,
        ["radical", "--atype", "empty.atype"] + bounds,
        ["close", "--atype", "v.atype"],
        ["represent", "--structure", "chain3.struct"] + pbounds,
        ["nullstellensatz", "--atype", "v.atype"] + pbounds,
        ["witness-terms", "--morphism", "m.morph"] + pbounds,
        ["gcim-check", "--source", "chain2.struct", "--target",
         "chain3.struct", "--map", "c0=c0,c1=c2",
         "--premise-bound", "2", "--depth", "1"],
        ["star-transfer", "--structure", "chain3.struct"] + pbounds,
        ["star-bijection", "--atype", "v.atype", "--star-depth", "1"]
        + pbounds,
        ["strict", "--theory", "strict.thy"],
        ["morleyize", "--sig", "poset.sig"],
        ["gba-ideals", "--structure", "z4.struct"],
        ["gba-radical", "--structure", "z4.struct", "--ideal", "0"] + bounds,
        ["gba-nullstellensatz", "--structure", "z2.struct", "--gen",
         "add(x, x)", "--vars", "x:r", "--class", "z2.struct",
         "--size-bound", "4", "--depth", "2"],
    ]
    t0 = time.monotonic()
    for cmd in commands:
        outs = []
        for _ in range(2):
            r = subprocess.run([sys.executable, "-m", "quasivar"] + cmd,
                               cwd=cli_ws, capture_output=True)
            assert r.returncode == 0, (cmd, r.stderr.decode())
            outs.append(r.stdout)
        assert outs[0] == outs[1], cmd
        json.loads(outs[0])  # stdout stays a single report document
    _line("cli-determinism", t0,
          f"{len(commands)} subcommands, two fresh interpreters each")
