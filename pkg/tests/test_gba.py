"""Ideal calculus on group-based algebras, checked against subset oracles."""

import itertools

import pytest

from quasivar.atypes import check_iso_theorem, close, make_atype
from quasivar.errors import TheoremViolation, ValidationError
from quasivar.gba import (as_gba, enumerate_ideals, enumerate_subgroups,
                          gba_nullstellensatz, gba_view, ideal_atype_bijection,
                          ideal_closure, ideal_radical, is_ideal,
                          kernel_of_hom, validate_gba)
from quasivar.radical import Context
from quasivar.structures import FinStructure, enumerate_homs, product
from quasivar.syntax import App, Const, Eq, Var
from quasivar.zoo import (chain_poset, cyclic_group, sym_group, zmod,
                          zmod_diff, zmod_difference)

Z2, Z3, Z4, Z6 = zmod(2), zmod(3), zmod(4), zmod(6)
ZZ = product([zmod(2), zmod(2)], name="z2xz2")
S3 = sym_group(3)
C2 = cyclic_group(2)


# --- oracle: ideal predicate straight off the tables, no library calls ---

def brute_is_ideal(S, A, star, inv, unit):
    S = set(S)
    sort = A.sig.sorts[0]
    elems = A.carriers[sort]
    mul = lambda a, b: A.functions[star][(a, b)]
    iv = lambda a: A.functions[inv][(a,)]
    e = A.constants[unit]
    if e not in S:
        return False
    for a in S:
        if iv(a) not in S:
            return False
        for b in S:
            if mul(a, b) not in S:
                return False
    for g in elems:
        for a in S:
            if mul(mul(iv(g), a), g) not in S:
                return False
    for f, (argsorts, _res) in A.sig.functions.items():
        n = len(argsorts)
        for abar in itertools.product(sorted(S), repeat=n):
            fa = A.functions[f][abar]
            if fa not in S:
                return False
            for bbar in itertools.product(elems, repeat=n):
                fb = A.functions[f][bbar]
                fab = A.functions[f][tuple(mul(x, y) for x, y in zip(abar, bbar))]
                if mul(mul(iv(fa), iv(fb)), fab) not in S:
                    return False
    return True


def brute_ideals(A):
    G = gba_view(A)
    elems = A.carriers[G.sort]
    out = []
    for r in range(len(elems) + 1):
        for combo in itertools.combinations(sorted(elems), r):
            if brute_is_ideal(combo, A, G.star, G.inv, G.unit):
                out.append(frozenset(combo))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def rebuilt(A, patch):
    # copy A with one function table entry overridden
    functions = {f: dict(tbl) for f, tbl in A.functions.items()}
    for (f, args), val in patch.items():
        functions[f][args] = val
    return FinStructure(A.sig, A.carriers, functions, A.relations,
                        A.constants, name=A.name + "'")


# --- validation ---

def test_validate_accepts_the_zoo():
    for A in [C2, Z4, S3, ZZ, zmod(1), zmod_diff(4), zmod_difference(4)]:
        report = validate_gba(A)
        assert report["valid"], (A.name, report["violation"])
    assert validate_gba(Z4)["designations"] == {
        "star": "add", "inv": "neg", "unit": "zero"}
    assert validate_gba(C2)["designations"] == {
        "star": "op", "inv": "inv", "unit": "e"}


def test_validate_catches_a_unit_violation():
    # mul must fix the unit tuple: break mul(0, 0)
    bad = rebuilt(Z2, {("mul", ("0", "0")): "1"})
    report = validate_gba(bad)
    assert not report["valid"]
    assert report["violation"] == {"axiom": "unit-fixed",
                                   "witness": ("mul", "0", "0")}
    with pytest.raises(ValidationError):
        as_gba(bad)


def test_validate_catches_a_group_violation():
    bad = rebuilt(Z2, {("add", ("1", "1")): "1"})
    report = validate_gba(bad)
    assert not report["valid"]
    assert report["violation"]["axiom"] == "inverse"
    assert report["violation"]["witness"] == ("1",)


def test_relational_signatures_rejected():
    with pytest.raises(ValidationError):
        gba_view(chain_poset(2))


def test_designations_are_all_or_none():
    with pytest.raises(ValidationError):
        gba_view(Z4, star="add")
    # designation only fixes the symbols; certification is as_gba's job
    with pytest.raises(ValidationError):
        as_gba(Z4, star="mul", inv="neg", unit="zero")  # mul has no inverses
    as_gba(Z4, star="add", inv="neg", unit="zero")


# --- ideals against the subset oracle ---

def test_ideal_enumeration_matches_the_subset_oracle():
    for A in [Z2, Z4, Z6, ZZ, C2, cyclic_group(4), S3,
              zmod_diff(4), zmod_difference(4)]:
        G = gba_view(A)
        assert enumerate_ideals(G) == brute_ideals(A), A.name


def test_frozen_ideal_counts():
    counts = {}
    for A in [zmod(1), Z2, Z4, Z6, ZZ, C2, S3,
              zmod_diff(4), zmod_difference(4)]:
        counts[A.name] = len(enumerate_ideals(gba_view(A)))
    assert counts == {"z1": 1, "z2": 2, "z4": 3, "z6": 4,
                      "z2xz2": 4, "c2": 2, "sym3": 3,
                      "z4diff": 3, "z4sigma": 3}


def test_subgroups_need_not_be_ideals():
    G = as_gba(S3)
    subs = enumerate_subgroups(G)
    assert len(subs) == 6
    assert len(enumerate_ideals(G)) == 3
    verdict = is_ideal({"p012", "p102"}, G)   # e and one transposition
    assert not verdict["holds"]
    assert verdict["reason"] == "not normal"


def test_non_ideal_witnesses():
    G = as_gba(Z4)
    assert is_ideal({"0", "1"}, G) == {
        "holds": False, "reason": "not inverse-closed", "witness": "1"}
    # with inverses present the product check fires instead
    assert is_ideal({"0", "1", "3"}, G) == {
        "holds": False, "reason": "not product-closed", "witness": ("1", "1")}
    assert is_ideal({"1"}, G)["reason"] == "unit missing"
    with pytest.raises(ValidationError):
        is_ideal({"7"}, G)


def test_ideal_closure_laws():
    for A in [Z4, Z6, S3, ZZ]:
        G = gba_view(A)
        ideals = brute_ideals(A)
        elems = sorted(A.carriers[G.sort])
        for r in range(3):
            for seed in itertools.combinations(elems, r):
                got = ideal_closure(seed, G)
                assert brute_is_ideal(got, A, G.star, G.inv, G.unit)
                assert set(seed) <= got and G.e in got
                assert ideal_closure(got, G) == got
                # least ideal containing the seed
                assert got == min((I for I in ideals if set(seed) <= I), key=len)


def test_frozen_closures():
    G4 = as_gba(Z4)
    assert ideal_closure((), G4) == frozenset({"0"})
    assert ideal_closure({"2"}, G4) == frozenset({"0", "2"})
    assert ideal_closure({"3"}, G4) == frozenset({"0", "1", "2", "3"})
    # simple algebras: any nontrivial generator gives the whole carrier
    assert ideal_closure({"1"}, as_gba(Z3)) == frozenset({"0", "1", "2"})
    G3 = as_gba(S3)
    assert ideal_closure({"p102"}, G3) == frozenset(S3.carriers["g"])


def test_hom_kernels_are_ideals_and_the_iso_theorem_holds():
    pairs = [(Z4, Z2), (Z6, Z3), (S3, C2), (cyclic_group(4), C2)]
    seen = 0
    for A, M in pairs:
        G = gba_view(A)
        unit_elem = M.constants[G.unit]
        for h in enumerate_homs(A, M):
            ker = kernel_of_hom(h, G, unit_elem)
            assert is_ideal(ker, G)["holds"]
            check_iso_theorem(h)
            seen += 1
    # z4->z2 and z6->z3 are forced by one; the group pairs each allow
    # the trivial map and one surjection
    assert seen == 6


# --- the bijection with ground closed a-types ---

def test_bijection_reports():
    for A, n in [(zmod(1), 1), (C2, 2), (Z4, 3), (S3, 3), (ZZ, 4),
                 (zmod_diff(4), 3), (zmod_difference(4), 3)]:
        report = ideal_atype_bijection(gba_view(A))
        assert report["verdict"] == "bijective"
        assert report["n_ideals"] == n and report["n_closed_atypes"] == n
    z4_pairs = ideal_atype_bijection(gba_view(Z4))["pairs"]
    assert [p["classes"] for p in z4_pairs] == [4, 2, 1]


def test_closure_engines_agree_on_joins():
    # closing the union of two unit a-types = joining the two ideals
    for A in [Z4, Z6, ZZ]:
        G = gba_view(A)
        sort = G.sort
        ideals = enumerate_ideals(G)
        for I, J in itertools.product(ideals, repeat=2):
            pi = make_atype(A, (), [Eq(Const(a, sort), Const(G.e, sort))
                                    for a in sorted(I | J)])
            c = close(pi)
            unit_cls = c.class_id(Const(G.e, sort))
            ker = frozenset(a for a in G.carrier()
                            if c.class_id(Const(a, sort)) == unit_cls)
            assert ker == ideal_closure(I | J, G)


# --- prime and radical ideals ---

RING_CTX = Context([Z2, Z3], 4, 2)


def test_radical_of_zero_in_z4():
    G = as_gba(Z4)
    report = ideal_radical({"0"}, G, RING_CTX)
    # no ring hom z4 -> z3 exists, so only the mod-2 kernel shows up
    assert report["primes"] == [["0", "2"]]
    assert report["radical"] == ["0", "2"]
    assert not report["input_is_prime"] and not report["input_is_radical"]
    assert not report["degenerate"]
    assert report["transport_agrees"]


def test_prime_ideals_are_radical_fixed_points():
    G = as_gba(Z4)
    report = ideal_radical({"0", "2"}, G, RING_CTX)
    assert report["input_is_prime"] and report["input_is_radical"]
    assert report["radical"] == ["0", "2"]
    whole = ideal_radical(set(G.carrier()), G, RING_CTX)
    assert whole["degenerate"] and whole["input_is_radical"]
    assert whole["radical"] == sorted(G.carrier())


def test_radical_against_an_empty_generator_class():
    G = as_gba(Z4)
    ctx = Context([], 4, 2, signature=Z4.sig)
    report = ideal_radical({"0"}, G, ctx)
    assert report["degenerate"]
    assert report["radical"] == ["0", "1", "2", "3"]


def test_radical_over_z6_splits_into_its_prime_factors():
    G = as_gba(Z6)
    report = ideal_radical({"0"}, G, RING_CTX)
    assert report["primes"] == [["0", "3"], ["0", "2", "4"]]
    assert report["radical"] == ["0"]
    assert report["input_is_radical"] and not report["input_is_prime"]


def test_radical_rejects_bad_inputs():
    G = as_gba(Z4)
    with pytest.raises(ValidationError):
        ideal_radical({"0", "1"}, G, RING_CTX)      # not an ideal
    with pytest.raises(ValidationError):
        ideal_radical({"0"}, G, Context([C2], 4, 2))  # wrong signature


# --- the Nullstellensatz in ideal language ---

def xvar():
    return Var("x", "r")


def test_nullstellensatz_equality_on_z2():
    x = xvar()
    report = gba_nullstellensatz([App("add", (x, x), "r")], as_gba(Z2),
                                 Context([Z2], 4, 2))
    assert report["verdict"] == "equal"
    assert report["route"] == "classes"
    assert report["zero_set"] == [("0",), ("1",)]
    assert report["n_primes"] == 2
    assert report["exactness"] == "bounded(depth=2)"
    assert report["only_in_vanishing"] == [] and report["only_in_radical"] == []


def test_nullstellensatz_gap_on_z4():
    # x + x vanishes on {0, 2} but x * x separates the vanishing ideal
    # from the mod-2 radical
    x = xvar()
    report = gba_nullstellensatz([App("add", (x, x), "r")], as_gba(Z4),
                                 Context([Z2], 4, 2))
    assert report["verdict"] == "differs"
    assert report["zero_set"] == [("0",), ("2",)]
    assert "mul(x, x)" in report["only_in_vanishing"]
    assert not report["degenerate_primes"]


def test_nullstellensatz_ground_routes():
    G = as_gba(Z2)
    ctx = Context([Z2], 4, 2)
    empty = gba_nullstellensatz([Const("one", "r")], G, ctx)
    assert empty["route"] == "quotient"
    assert empty["degenerate_zero_set"] and empty["degenerate_primes"]
    assert empty["vanishing_size"] == 2 and empty["radical_size"] == 2
    assert empty["verdict"] == "equal"
    unit = gba_nullstellensatz([Const("zero", "r")], G, ctx)
    assert unit["zero_set"] == [()]
    assert unit["vanishing_size"] == 1 and unit["radical_size"] == 1
    assert unit["verdict"] == "equal"


def test_nullstellensatz_two_variables_shallow():
    x, y = Var("x", "r"), Var("y", "r")
    report = gba_nullstellensatz([App("add", (x, y), "r")], as_gba(Z2),
                                 Context([Z2], 4, 2), depth=1)
    assert report["verdict"] == "equal"
    assert report["zero_set"] == [("0", "0"), ("1", "1")]
    assert report["scope"]["depth"] == 1


def test_nullstellensatz_rejects_deep_generators():
    x = xvar()
    deep = App("add", (App("add", (x, x), "r"), x), "r")
    with pytest.raises(ValidationError):
        gba_nullstellensatz([deep], as_gba(Z2), Context([Z2], 4, 2), depth=1)
