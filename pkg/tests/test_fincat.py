from fracture_cat import fincat, zoo
from fracture_cat.errors import CapExceeded
from fracture_cat.fincat import (
    CatOverBase,
    FinCat,
    FinFunctor,
    NatTrans,
    aut_group,
    check_equivalence,
    comma,
    compose_functors,
    constant_functor,
    coproduct,
    core,
    enumerate_functors,
    enumerate_nat_trans,
    identity_functor,
    iso_classes,
    opposite,
    product,
    product_projections,
    search_iso_over_base,
    validate,
    validate_functor,
    validate_nat_trans,
)

import pytest


STANDARD = [zoo.terminal(), zoo.simplex(1), zoo.simplex(2), zoo.cyclic_group(2),
            zoo.walking_iso(), zoo.parallel_pair(), zoo.discrete("pq")]


def test_standard_shapes_valid():
    for C in STANDARD:
        report = validate(C)
        assert report.ok, (C.name, report.violations)


def test_validate_terminal():
    assert validate(zoo.terminal()).ok


def test_validate_reports_broken_composite():
    # [2] with the long composite rerouted to a wrong-endpoint morphism
    C = zoo.simplex(2)
    table = dict(C.table)
    table[("a12", "a01")] = "a01"
    broken = FinCat(C.name, C.objects, C.morphisms, C.src, C.tgt, C.identity, table)
    report = validate(broken)
    assert not report.ok
    assert any("wrong endpoints" in v for v in report.violations)


def test_validate_reports_broken_identity_law():
    # mutate a valid 4-object poset table so an identity law fails
    C = zoo.poset("wxyz", lambda a, b: a <= b)
    assert validate(C).ok
    table = dict(C.table)
    table[("le_w_x", "id_w")] = "le_w_y"  # wrong endpoints AND identity law
    broken = FinCat(C.name, C.objects, C.morphisms, C.src, C.tgt, C.identity, table)
    report = validate(broken)
    assert not report.ok


def test_validate_reports_associativity():
    # chain 0 -> 1 -> 2 -> 3 with a spare parallel morphism k: 0 -> 3 and the
    # triple (h, g, f) rerouted so (h.g).f != h.(g.f)
    C = zoo.simplex(3)
    morphisms = C.morphisms + ("k",)
    src = dict(C.src) | {"k": "0"}
    tgt = dict(C.tgt) | {"k": "3"}
    table = dict(C.table)
    table[("k", "id0")] = "k"
    table[("id3", "k")] = "k"
    table[("a23", "a02")] = "k"  # h.(g.f) becomes k, (h.g).f stays a03
    cat = FinCat("broken", C.objects, morphisms, src, tgt, C.identity, table)
    report = validate(cat)
    assert not report.ok
    assert any("associativity" in v for v in report.violations)


def test_opposite_involution():
    for C in STANDARD:
        CC = opposite(opposite(C))
        assert CC.objects == C.objects
        assert CC.morphisms == C.morphisms
        assert CC.src == C.src and CC.tgt == C.tgt
        assert CC.table == C.table
        assert validate(opposite(C)).ok


def test_opposite_bz2_same_table():
    C = zoo.cyclic_group(2)
    assert opposite(C).table == C.table


def test_product_with_terminal():
    C = zoo.simplex(2)
    P, fst, snd = product_projections(zoo.terminal(), C)
    assert validate(P).ok
    assert len(P.objects) == len(C.objects)
    assert len(P.morphisms) == len(C.morphisms)
    w = check_equivalence(snd)
    assert isinstance(w, fincat.EquivalenceWitness)


def test_coproduct_valid():
    D = coproduct(zoo.simplex(1), zoo.cyclic_group(2))
    assert validate(D).ok
    assert len(D.objects) == 3
    assert len(D.morphisms) == 5


def test_comma_identity_constant_is_slice():
    # comma(id_C, const_X) has objects = morphisms into X
    C = zoo.simplex(2)
    cm = comma(identity_functor(C), constant_functor(zoo.terminal(), C, "2"))
    assert validate(cm.cat).ok
    assert len(cm.cat.objects) == len([m for m in C.morphisms if C.tgt[m] == "2"])


def test_comma_over_interval_counts():
    # comma of {0} -> [1] over id: objects = morphisms 0 -> x = 2 ([1] baseline)
    I = zoo.simplex(1)
    incl = zoo.simplex_inclusion((0,), 1)
    cm = comma(incl, identity_functor(I))
    # objects: (0, x, f: 0 -> x): f in hom(0,0) + hom(0,1) = id0, a01
    assert len(cm.cat.objects) == 2
    # no heteromorphisms into 0: comma of {0}-inclusion and the inclusion of 0
    cm2 = comma(zoo.simplex_inclusion((0,), 1), zoo.simplex_inclusion((0,), 1))
    assert len(cm2.cat.objects) == 1


def test_iso_classes_poset_all_singletons():
    C = zoo.poset("abc", lambda x, y: x <= y)
    part = iso_classes(C)
    assert all(len(b) == 1 for b in part.blocks)
    for x in C.objects:
        assert aut_group(C, x).carrier == (C.identity[x],)


def test_iso_classes_walking_iso():
    I = zoo.walking_iso()
    part = iso_classes(I)
    assert part.blocks == (("x", "y"),)
    u, v = part.witness[("x", "y")]
    assert I.table[(v, u)] == "idx"
    assert I.table[(u, v)] == "idy"
    assert aut_group(I, "x").carrier == ("idx",)


def test_aut_group_bz2():
    G = zoo.cyclic_group(2)
    ag = aut_group(G, "*")
    assert set(ag.carrier) == {"g0", "g1"}
    assert ag.inverse["g1"] == "g1"
    assert ag.table[("g1", "g1")] == "g0"


def test_core_is_max_subgroupoid():
    for C in STANDARD:
        K = core(C)
        assert validate(K).ok
        assert set(K.morphisms) == {m for m in C.morphisms if C.is_iso(m)}
        # iso classes agree with the core's
        assert iso_classes(K).blocks == iso_classes(C).blocks


def test_enumerate_functors_interval_to_interval():
    fs = enumerate_functors(zoo.simplex(1), zoo.simplex(1))
    assert len(fs) == 3
    sigs = {f.signature() for f in fs}
    assert len(sigs) == 3
    for f in fs:
        assert validate_functor(f).ok


def test_enumerate_functors_terminal_cases():
    C = zoo.simplex(2)
    assert len(enumerate_functors(C, zoo.terminal())) == 1
    assert len(enumerate_functors(zoo.terminal(), C)) == len(C.objects)


def test_enumerate_functors_bz2_to_bz2():
    fs = enumerate_functors(zoo.cyclic_group(2), zoo.cyclic_group(2))
    # group homs Z2 -> Z2: trivial and identity
    assert len(fs) == 2


def test_enumerate_functors_cap():
    with pytest.raises(CapExceeded):
        enumerate_functors(zoo.discrete("abc"), zoo.simplex(2), cap=2)


def test_functor_closure_under_composition():
    C, D, E = zoo.simplex(1), zoo.cyclic_group(2), zoo.walking_iso()
    cd = enumerate_functors(C, D)
    de = enumerate_functors(D, E)
    ce = {f.signature() for f in enumerate_functors(C, E)}
    for f in cd:
        for g in de:
            assert compose_functors(g, f).signature() in ce


def test_check_equivalence_identity():
    for C in STANDARD:
        w = check_equivalence(identity_functor(C))
        assert isinstance(w, fincat.EquivalenceWitness)


def test_check_equivalence_collapse_walking_iso():
    I, T = zoo.walking_iso(), zoo.terminal()
    F = FinFunctor(I, T, {"x": "*", "y": "*"}, {m: "id*" for m in I.morphisms})
    assert validate_functor(F).ok
    assert isinstance(check_equivalence(F), fincat.EquivalenceWitness)


def test_check_equivalence_constant_not_full():
    I1 = zoo.simplex(1)
    F = constant_functor(I1, I1, "0")
    res = check_equivalence(F)
    assert isinstance(res, fincat.NotEquivalence)


def test_equivalence_cross_check_by_inverse_search():
    # accepted iff some G with natural isos GF ~ id, FG ~ id exists
    cats = [zoo.terminal(), zoo.simplex(1), zoo.walking_iso(), zoo.cyclic_group(2)]
    for C in cats:
        for D in cats:
            for F in enumerate_functors(C, D, cap=200):
                verdict = isinstance(check_equivalence(F), fincat.EquivalenceWitness)
                found = False
                for G in enumerate_functors(D, C, cap=200):
                    gf = compose_functors(G, F)
                    fg = compose_functors(F, G)
                    if any(
                        all(C.is_iso(c) for c in eta.components.values())
                        for eta in enumerate_nat_trans(gf, identity_functor(C))
                    ) and any(
                        all(D.is_iso(c) for c in eta.components.values())
                        for eta in enumerate_nat_trans(fg, identity_functor(D))
                    ):
                        found = True
                        break
                assert verdict == found, (C.name, D.name, F.obj_map)


def test_nat_trans_validation():
    I1 = zoo.simplex(1)
    F = constant_functor(I1, I1, "0")
    G = constant_functor(I1, I1, "1")
    eta = NatTrans(F, G, {"0": "a01", "1": "a01"})
    assert validate_nat_trans(eta).ok
    bad = NatTrans(G, F, {"0": "a01", "1": "a01"})
    assert not validate_nat_trans(bad).ok


def test_search_iso_over_base_self():
    C = zoo.simplex(1)
    P, fst, _ = product_projections(C, zoo.cyclic_group(2))
    p = CatOverBase(P, C, fst)
    w = search_iso_over_base(p, p)
    assert w is not None
    assert w.obj_map == {o: o for o in P.objects}


def test_search_iso_over_base_mismatched_fibers():
    base = zoo.simplex(1)
    P1, fst1, _ = product_projections(base, zoo.discrete("ab"))
    P2, fst2, _ = product_projections(base, zoo.discrete("abc"))
    assert search_iso_over_base(
        CatOverBase(P1, base, fst1), CatOverBase(P2, base, fst2)
    ) is None


def test_search_iso_finds_nontrivial_relabelling():
    base = zoo.terminal()
    D1 = zoo.discrete("ab")
    D2 = zoo.discrete("uv")
    P1, f1, _ = product_projections(base, D1)
    P2, f2, _ = product_projections(base, D2)
    w = search_iso_over_base(CatOverBase(P1, base, f1), CatOverBase(P2, base, f2))
    assert w is not None
    assert validate_functor(w).ok
    assert sorted(w.obj_map.values()) == sorted(P2.objects)
