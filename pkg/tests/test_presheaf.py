from itertools import product as iproduct

from fracture_cat import zoo
from fracture_cat.fincat import (
    FinFunctor,
    constant_functor,
    identity_functor,
    opposite,
    validate,
)
from fracture_cat.presheaf import (
    EMPTY,
    FinSet,
    Presheaf,
    SetValuedDiagram,
    colimit_of_presheaf,
    colimit_set_valued,
    constant_presheaf,
    direct_sum,
    empty_presheaf,
    find_presheaf_iso,
    left_kan,
    left_kan_with_unit,
    limit_set_valued,
    presheaf_hom,
    presheaf_morphisms,
    restrict,
    validate_diagram,
    validate_presheaf,
    yoneda,
)

import pytest


def corpus_presheaves(C):
    """Sums of representables plus degenerate cases, all valid by construction."""
    ys = [yoneda(C, X) for X in C.objects]
    out = list(ys)
    if len(ys) >= 2:
        out.append(direct_sum([ys[0], ys[-1]]))
    out.append(direct_sum([ys[0], ys[0]]))
    out.append(constant_presheaf(C, FinSet(("s",))))
    out.append(empty_presheaf(C))
    return out


CORPUS_CATS = [zoo.terminal(), zoo.simplex(1), zoo.simplex(2), zoo.cyclic_group(2),
               zoo.walking_iso(), zoo.parallel_pair()]


def test_yoneda_terminal():
    P = yoneda(zoo.terminal(), "*")
    assert validate_presheaf(P) == []
    assert len(P.at["*"]) == 1


def test_yoneda_interval():
    P = yoneda(zoo.simplex(1), "1")
    assert len(P.at["0"]) == 1 and len(P.at["1"]) == 1


def test_yoneda_bz2_free_action():
    G = zoo.cyclic_group(2)
    P = yoneda(G, "*")
    assert len(P.at["*"]) == 2
    g = P.action["g1"]
    assert g["g0"] == "g1" and g["g1"] == "g0"


def test_corpus_presheaves_valid():
    for C in CORPUS_CATS:
        for P in corpus_presheaves(C):
            assert validate_presheaf(P) == [], C.name


def test_limit_constant_singleton():
    C = zoo.simplex(2)
    D = SetValuedDiagram(
        C, {x: FinSet(("s",)) for x in C.objects},
        {m: {"s": "s"} for m in C.morphisms},
    )
    assert len(limit_set_valued(D).apex) == 1


def test_limit_discrete_product():
    C = zoo.discrete("xy")
    D = SetValuedDiagram(
        C,
        {"x": FinSet(("a", "b")), "y": FinSet(("c", "d", "e"))},
        {"id_x": {"a": "a", "b": "b"}, "id_y": {"c": "c", "d": "d", "e": "e"}},
    )
    res = limit_set_valued(D)
    assert len(res.apex) == 6
    # projections really project
    for el in res.apex:
        assert res.projections["x"][el] in ("a", "b")
        assert res.projections["y"][el] in ("c", "d", "e")


def test_limit_cospan_is_pullback():
    # cospan x -> z <- y with injective maps; oracle: direct pair scan
    shape = zoo.poset("abc", lambda p, q: p == q or q == "c")
    sx = FinSet(("x1", "x2"))
    sy = FinSet(("y1", "y2"))
    sz = FinSet(("z1", "z2", "z3"))
    f = {"x1": "z1", "x2": "z2"}
    g = {"y1": "z2", "y2": "z3"}
    D = SetValuedDiagram(
        shape,
        {"a": sx, "b": sy, "c": sz},
        {
            "id_a": {e: e for e in sx},
            "id_b": {e: e for e in sy},
            "id_c": {e: e for e in sz},
            "le_a_c": f,
            "le_b_c": g,
        },
    )
    assert validate_diagram(D) == []
    res = limit_set_valued(D)
    brute = [(x, y) for x in sx for y in sy if f[x] == g[y]]
    assert len(res.apex) == len(brute)
    got = {(res.projections["a"][e], res.projections["b"][e]) for e in res.apex}
    assert got == set(brute)


def test_limit_empty_diagram_is_singleton():
    C = zoo.discrete(())
    res = limit_set_valued(SetValuedDiagram(C, {}, {}))
    assert len(res.apex) == 1


def test_colimit_constant_singleton_connected():
    C = zoo.simplex(2)
    D = SetValuedDiagram(
        C, {x: FinSet(("s",)) for x in C.objects},
        {m: {"s": "s"} for m in C.morphisms},
    )
    assert len(colimit_set_valued(D).coapex) == 1


def test_colimit_discrete_disjoint_union():
    C = zoo.discrete("xy")
    D = SetValuedDiagram(
        C,
        {"x": FinSet(("a",)), "y": FinSet(("c", "d"))},
        {"id_x": {"a": "a"}, "id_y": {"c": "c", "d": "d"}},
    )
    assert len(colimit_set_valued(D).coapex) == 3


def test_colimit_bz2_free_orbit():
    G = zoo.cyclic_group(2)
    D = SetValuedDiagram(
        G, {"*": FinSet(("p", "q"))},
        {"g0": {"p": "p", "q": "q"}, "g1": {"p": "q", "q": "p"}},
    )
    assert len(colimit_set_valued(D).coapex) == 1


def test_colimit_cocone_factorization():
    # every cocone factors uniquely through the colimit (small instances)
    G = zoo.cyclic_group(2)
    D = SetValuedDiagram(
        G, {"*": FinSet(("p", "q", "r"))},
        {"g0": {e: e for e in "pqr"}, "g1": {"p": "q", "q": "p", "r": "r"}},
    )
    res = colimit_set_valued(D)
    assert len(res.coapex) == 2
    # cocones to a 2-element set: maps from the value constant on orbits
    target = ["u", "v"]
    cocones = []
    for assign in iproduct(target, repeat=3):
        fn = dict(zip("pqr", assign))
        if all(fn[e] == fn[D.action[m][e]] for m in G.morphisms for e in "pqr"):
            cocones.append(fn)
    for fn in cocones:
        factor = {}
        ok = True
        for e in "pqr":
            cls = res.injections["*"][e]
            if cls in factor and factor[cls] != fn[e]:
                ok = False
            factor[cls] = fn[e]
        assert ok  # factors
        assert len(factor) == len(res.coapex)  # unique (defined on every class)


def test_presheaf_hom_yoneda_lemma():
    for C in CORPUS_CATS:
        for X in C.objects:
            yX = yoneda(C, X)
            for Q in corpus_presheaves(C):
                homset = presheaf_morphisms(yX, Q)
                assert len(homset) == len(Q.at[X]), (C.name, X)
                # the Yoneda bijection: eta -> eta_X(id_X)
                images = {fam[X][C.identity[X]] for fam in homset}
                assert images == set(Q.at[X].elements)


def test_presheaf_hom_yoneda_naturality():
    # the Yoneda bijection commutes with the contravariant action in X:
    # for m: a -> b, eta at y_b pulled back along y_m corresponds to Q(m)
    C = zoo.simplex(1)
    Q = direct_sum([yoneda(C, "0"), yoneda(C, "1")])
    m = "a01"
    a, b = "0", "1"
    for fam in presheaf_morphisms(yoneda(C, b), Q):
        e = fam[b][C.identity[b]]
        # pulling back along y_m then evaluating at id_a hits fam at m itself
        assert fam[a][m] == Q.action[m][e]


def test_presheaf_hom_terminal_and_empty():
    for C in CORPUS_CATS:
        one = constant_presheaf(C, FinSet(("s",)))
        empty = empty_presheaf(C)
        for P in corpus_presheaves(C):
            assert len(presheaf_hom(P, one)) == 1
            assert len(presheaf_hom(empty, P)) == 1


def test_restrict_identity_and_constant():
    C = zoo.simplex(1)
    P = yoneda(C, "1")
    R = restrict(identity_functor(C), P)
    assert R.at == P.at and R.action == P.action
    T = zoo.terminal()
    Rc = restrict(constant_functor(T, C, "1"), P)
    assert Rc.at["*"].elements == P.at["1"].elements


def test_restrict_along_point_inclusion():
    C = zoo.simplex(1)
    F = zoo.simplex_inclusion((0,), 1)
    P = yoneda(C, "1")
    R = restrict(FinFunctor(zoo.terminal(), C, {"*": "0"}, {"id*": "id0"}), P)
    assert len(R.at["*"]) == 1
    assert validate_presheaf(R) == []
    del F


def test_left_kan_identity_iso():
    for C in CORPUS_CATS:
        for P in corpus_presheaves(C):
            L = left_kan(identity_functor(C), P)
            assert validate_presheaf(L) == []
            assert find_presheaf_iso(L, P) is not None, C.name


def test_left_kan_preserves_representables():
    pairs = [
        (zoo.simplex_inclusion((0,), 1), "0"),
        (zoo.simplex_inclusion((0, 2), 2), "1"),
        (FinFunctor(zoo.walking_iso(), zoo.terminal(),
                    {"x": "*", "y": "*"},
                    {m: "id*" for m in zoo.walking_iso().morphisms}), "x"),
        (constant_functor(zoo.cyclic_group(2), zoo.terminal(), "*"), "*"),
    ]
    for F, X in pairs:
        L = left_kan(F, yoneda(F.dom, X))
        assert validate_presheaf(L) == []
        assert find_presheaf_iso(L, yoneda(F.cod, F.obj_map[X])) is not None


def test_left_kan_along_terminal_is_colimit():
    for C in CORPUS_CATS:
        to_pt = constant_functor(C, zoo.terminal(), "*")
        for P in corpus_presheaves(C):
            L = left_kan(to_pt, P)
            assert len(L.at["*"]) == len(colimit_of_presheaf(P))


def test_left_kan_restriction_adjunction():
    # |hom(Lan_F P, Q)| == |hom(P, F*Q)| with the unit-induced bijection
    cases = [
        (zoo.simplex_inclusion((0,), 1),),
        (zoo.simplex_inclusion((0, 1), 2),),
        (constant_functor(zoo.cyclic_group(2), zoo.terminal(), "*"),),
    ]
    for (F,) in cases:
        C, D = F.dom, F.cod
        for P in corpus_presheaves(C)[:3]:
            for Q in corpus_presheaves(D)[:3]:
                kan = left_kan_with_unit(F, P)
                lhs = presheaf_morphisms(kan.presheaf, Q)
                rhs = presheaf_morphisms(P, restrict(F, Q))
                assert len(lhs) == len(rhs), (C.name, D.name)
                # the unit-induced map LHS -> RHS must be a bijection
                images = set()
                for fam in lhs:
                    induced = {
                        c: {e: fam[F.obj_map[c]][kan.unit[c][e]] for e in P.at[c]}
                        for c in C.objects
                    }
                    images.add(_fam_sig(induced))
                assert images == {_fam_sig(fam) for fam in rhs}


def _fam_sig(fam):
    return tuple(sorted((a, tuple(sorted(fn.items()))) for a, fn in fam.items()))
