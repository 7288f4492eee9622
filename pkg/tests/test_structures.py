import itertools
import random

import pytest

from quasivar.errors import ValidationError
from quasivar.structures import (FinStructure, Hom, check_hom, compose_homs,
                                 embeds_in_bounded_product, enumerate_homs,
                                 false_atoms, find_isomorphism, identity_hom,
                                 image_substructure, in_quasivariety,
                                 in_universal_class, is_embedding, make_hom,
                                 product, substructure, trivial_embeds,
                                 trivial_structure)
from quasivar.syntax import Eq, parse_sentence
from quasivar.zoo import (all_posets, all_semilattices, antichain, chain_poset,
                          cyclic_group, meet_chain, poset_signature,
                          strict_chain, sym_group, vee_poset, wedge_poset,
                          zmod, zmod_rng)

POSET = poset_signature()


def brute_monotone_maps(A, B):
    # independent oracle: all maps, filtered on relation preservation
    src = list(A.carriers["p"])
    out = []
    for images in itertools.product(B.carriers["p"], repeat=len(src)):
        m = dict(zip(src, images))
        if all((m[a], m[b]) in B.relations["leq"] for (a, b) in A.relations["leq"]):
            out.append(m)
    return out


def test_structure_validation():
    with pytest.raises(ValidationError):
        FinStructure(POSET, {"p": ["a"]}, relations={"leq": {("a", "b")}})
    with pytest.raises(ValidationError):
        FinStructure(zmod(2).sig, {"r": ["0", "1"]},
                     functions={"add": {("0", "0"): "0"}},
                     constants={"zero": "0", "one": "1"})


def test_sentence_evaluation():
    antisym = parse_sentence("forall x:p, y:p . leq(x, y) & leq(y, x) -> x = y", POSET)
    total = parse_sentence("forall x:p, y:p . true -> leq(x, y) | leq(y, x)", POSET)
    assert chain_poset(2).satisfies(antisym)
    assert chain_poset(2).satisfies(total)
    assert vee_poset().satisfies(antisym)
    assert not vee_poset().satisfies(total)
    ex = parse_sentence("forall x:p . exists y:p . leq(x, y)", POSET)
    assert chain_poset(3).satisfies(ex)
    neg = parse_sentence("forall x:p . not leq(x, x)", POSET)
    assert not chain_poset(2).satisfies(neg)
    assert strict_chain(2).satisfies(
        parse_sentence("forall x:p . not lt(x, x)", strict_chain(2).sig))


def test_evaluation_with_params():
    s = parse_sentence("leq(u, v)", POSET, params={"u": "p", "v": "p"})
    A = chain_poset(2)
    assert A.satisfies(s, params={"u": "c0", "v": "c1"})
    assert not A.satisfies(s, params={"u": "c1", "v": "c0"})
    # parameters named directly after elements resolve by name
    t = parse_sentence("leq(c0, c1)", POSET, params=A.param_sorts())
    assert A.satisfies(t)


def test_ring_evaluation():
    z6 = zmod(6)
    s = parse_sentence("forall x:r . mul(x, one) = x", z6.sig)
    assert z6.satisfies(s)
    s2 = parse_sentence("forall x:r, y:r . mul(x, y) = mul(y, x)", z6.sig)
    assert z6.satisfies(s2)
    s3 = parse_sentence("forall x:r . mul(x, x) = x", z6.sig)
    assert not z6.satisfies(s3)
    assert zmod(2).satisfies(s3)


def test_hom_counts_match_brute_force():
    cases = [
        (chain_poset(2), chain_poset(2), 3),
        (chain_poset(3), chain_poset(2), 4),
        (chain_poset(2), chain_poset(3), 6),
        (antichain(2), chain_poset(2), 4),
        (vee_poset(), chain_poset(2), 5),
    ]
    for A, B, expected in cases:
        oracle = brute_monotone_maps(A, B)
        got = enumerate_homs(A, B)
        assert len(oracle) == expected
        assert len(got) == expected
        assert [h.as_dict() for h in got] == sorted(
            oracle, key=lambda m: tuple(sorted(m.items())))


def test_embedding_counts():
    assert len(enumerate_homs(chain_poset(2), chain_poset(2), mode="embedding")) == 1
    assert len(enumerate_homs(chain_poset(2), chain_poset(3), mode="embedding")) == 3
    assert len(enumerate_homs(antichain(2), chain_poset(2), mode="embedding")) == 0
    for f in enumerate_homs(chain_poset(2), chain_poset(3), mode="embedding"):
        assert is_embedding(f)


def test_hom_enumeration_is_canonical():
    homs = enumerate_homs(chain_poset(2), chain_poset(2))
    again = enumerate_homs(chain_poset(2), chain_poset(2))
    assert homs == again
    assert homs[0].mapping == (("c0", "c0"), ("c1", "c0"))


def test_group_hom_counts():
    c2, c4 = cyclic_group(2), cyclic_group(4)
    assert len(enumerate_homs(c2, c4)) == 2  # 0 and 2
    assert len(enumerate_homs(c4, c2)) == 2
    s3 = sym_group(3)
    # homs c2 -> s3: identity plus one per involution
    assert len(enumerate_homs(c2, s3)) == 4


def test_make_hom_rejects_non_hom():
    A = chain_poset(2)
    with pytest.raises(ValidationError):
        make_hom(A, A, {"c0": "c1", "c1": "c0"})
    f = make_hom(A, A, {"c0": "c0", "c1": "c0"})
    assert check_hom(f) is None


def test_compose_and_identity():
    A, B = chain_poset(2), chain_poset(3)
    f = make_hom(A, B, {"c0": "c0", "c1": "c2"})
    g = compose_homs(identity_hom(B), f)
    assert g.as_dict() == f.as_dict()
    h = compose_homs(f, identity_hom(A))
    assert h.as_dict() == f.as_dict()


def test_product_and_trivial():
    one = trivial_structure(POSET)
    assert one.size() == 1
    assert one.holds("leq", ("*p", "*p"))
    sq = product([chain_poset(2), chain_poset(2)])
    assert sq.size() == 4
    assert len(sq.relations["leq"]) == 9
    assert "(c0,c1)" in sq.carriers["p"]
    empty = product([], sig=POSET)
    assert empty.size() == 1
    z6_like = product([zmod(2), zmod(3)])
    assert z6_like.constants["one"] == "(1,1)"


def test_chinese_remainder_iso():
    iso = find_isomorphism(product([zmod(2), zmod(3)]), zmod(6))
    assert iso is not None
    assert iso.as_dict()["(0,0)"] == "0"
    assert iso.as_dict()["(1,1)"] == "1"
    assert find_isomorphism(zmod(4), product([zmod(2), zmod(2)])) is None
    assert find_isomorphism(chain_poset(2), antichain(2)) is None


def test_substructure_generation():
    sub = substructure(meet_chain(3), {"p": {"c0", "c2"}})
    assert sub.carriers["p"] == ("c0", "c2")
    g = substructure(cyclic_group(4), {"g": {"2"}})
    assert g.carriers["g"] == ("0", "2")
    # ring constants force the full prime subring
    z = substructure(zmod(5), {"r": set()})
    assert z.size() == 5


def test_image_substructure():
    f = make_hom(chain_poset(2), chain_poset(3), {"c0": "c0", "c1": "c2"})
    im = image_substructure(f)
    assert im.carriers["p"] == ("c0", "c2")
    assert ("c0", "c2") in im.relations["leq"]
    assert ("c2", "c0") not in im.relations["leq"]


def test_trivial_embeds():
    assert trivial_embeds(chain_poset(2)) == {"p": "c0"}
    assert trivial_embeds(strict_chain(2)) is None
    assert trivial_embeds(zmod(2)) is None
    assert trivial_embeds(zmod(1)) == {"r": "0"}
    assert trivial_embeds(meet_chain(2)) == {"p": "c0"}


def test_universal_class_membership():
    r = in_universal_class(chain_poset(2), [chain_poset(3)])
    assert r.holds and r.member_index == 0
    assert is_embedding(r.witness)
    assert not in_universal_class(antichain(2), [chain_poset(2)]).holds
    assert not in_universal_class(zmod(1), [zmod(2)]).holds  # one != zero there


def test_false_atoms_order():
    atoms = list(false_atoms(chain_poset(2)))
    assert str(atoms[0]) == "c0 = c1"
    assert str(atoms[1]) == "leq(c1, c0)"
    assert len(atoms) == 2
    assert list(false_atoms(zmod(1))) == []


def test_quasivariety_membership():
    assert in_quasivariety(vee_poset(), [chain_poset(2)]).holds
    assert in_quasivariety(wedge_poset(), [chain_poset(2)]).holds
    assert in_quasivariety(antichain(3), [chain_poset(2)]).holds
    r = in_quasivariety(chain_poset(2), [antichain(2)])
    assert not r.holds
    assert isinstance(r.failing_atom, Eq)
    # the one-element ring is the empty product, in every quasivariety
    assert in_quasivariety(zmod(1), [zmod(2)]).holds
    assert not in_universal_class(zmod(1), [zmod(2)]).holds
    # z4 maps onto z2 but never separates 1 from 3
    assert not in_quasivariety(zmod(4), [zmod(2), zmod(3)]).holds


def test_separation_agrees_with_bounded_products():
    K = [chain_poset(2)]
    for A in all_posets(3):
        sep = in_quasivariety(A, K)
        emb = embeds_in_bounded_product(A, K, 3)
        assert sep.holds
        assert emb is not None
    bad = embeds_in_bounded_product(chain_poset(2), [antichain(2)], 2)
    assert bad is None


def test_family_sizes():
    assert len(all_posets(3)) == 23
    assert len(all_semilattices(3)) == 12
    names = [A.name for A in all_posets(2)]
    assert names == ["poset1_0", "poset2_1", "poset2_2", "poset2_3"]


def test_random_posets_in_chain_quasivariety():
    rng = random.Random(7)
    elems = ["a0", "a1", "a2", "a3"]
    seen = 0
    while seen < 10:
        pairs = {(a, b) for a in elems for b in elems
                 if a != b and rng.random() < 0.3}
        closed = set(pairs)
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(closed), list(closed)):
                if b == c and (a, d) not in closed:
                    closed.add((a, d))
                    changed = True
        if any((b, a) in closed for (a, b) in closed):
            continue
        closed |= {(e, e) for e in elems}
        A = FinStructure(POSET, {"p": elems}, relations={"leq": closed}, name="rnd")
        assert in_quasivariety(A, [chain_poset(2)]).holds
        seen += 1
