from fracture_cat import zoo
from fracture_cat.errors import NotLocallyCartesian
from fracture_cat.fincat import (
    CatOverBase,
    FinCat,
    FinFunctor,
    comma,
    constant_functor,
    identity_functor,
    pair_tag,
    product_projections,
    search_cat_iso,
    triple_tag,
    validate,
    validate_functor,
    validate_nat_trans,
)
from fracture_cat.fibrations import (
    StrictCatDiagram,
    classify,
    env_fibration,
    fiber,
    grothendieck_strict,
    het_morphisms,
    is_cartesian_morphism,
    is_cocartesian_morphism,
    is_exponential_coend,
    is_exponential_lifting,
    straighten_locally_cartesian,
    transport_presheaf,
    validate_strict_diagram,
)
from fracture_cat.presheaf import (
    FinSet,
    Presheaf,
    constant_presheaf,
    find_presheaf_iso,
    left_kan,
    restrict,
    validate_presheaf,
    yoneda,
)
from fracture_cat.twisted import twisted_arrow

import pytest


def over_functor(F: FinFunctor) -> CatOverBase:
    return CatOverBase(F.dom, F.cod, F)


def product_over(C: FinCat, D: FinCat) -> CatOverBase:
    P, fst, _snd = product_projections(C, D)
    return CatOverBase(P, C, fst)


def two_het_collage() -> CatOverBase:
    """Trivial fibers, two heteromorphisms; hand-built."""
    I = zoo.interval()
    total = FinCat(
        "2het", ("c", "d"), ("idc", "idd", "h1", "h2"),
        {"idc": "c", "idd": "d", "h1": "c", "h2": "c"},
        {"idc": "c", "idd": "d", "h1": "d", "h2": "d"},
        {"c": "idc", "d": "idd"},
        {
            ("idc", "idc"): "idc", ("idd", "idd"): "idd",
            ("h1", "idc"): "h1", ("idd", "h1"): "h1",
            ("h2", "idc"): "h2", ("idd", "h2"): "h2",
        },
    )
    assert validate(total).ok
    proj = FinFunctor(total, I, {"c": "0", "d": "1"},
                      {"idc": "id0", "idd": "id1", "h1": "a01", "h2": "a01"})
    assert validate_functor(proj).ok
    return CatOverBase(total, I, proj)


def test_identity_morphisms_always_cartesian():
    p = two_het_collage()
    for o in p.total.objects:
        m = p.total.identity[o]
        assert is_cartesian_morphism(p, m)
        assert is_cocartesian_morphism(p, m)


def test_arrow_category_source_evaluation_cartesian_squares():
    C = zoo.simplex(2)
    cm = comma(identity_functor(C), identity_functor(C))
    p = CatOverBase(cm.cat, C, cm.proj_left)  # evaluation at the source
    for m in cm.cat.morphisms:
        u, v = cm.proj_left.mor_map[m], cm.proj_right.mor_map[m]
        if C.is_identity(v):
            assert is_cartesian_morphism(p, m), (u, v)


def test_two_het_collage_no_cartesian_heteromorphism():
    p = two_het_collage()
    for m in ("h1", "h2"):
        assert not is_cartesian_morphism(p, m)
        assert not is_cocartesian_morphism(p, m)
    cls = classify(p)
    assert not cls.is_cartesian.ok and not cls.is_cocartesian.ok
    assert cls.is_exponential.ok  # base [1]


def test_classify_product_projection():
    p = product_over(zoo.simplex(1), zoo.cyclic_group(2))
    cls = classify(p)
    assert cls.is_cocartesian.ok and cls.is_cartesian.ok and cls.is_exponential.ok
    assert cls.is_locally_cartesian.ok and cls.is_locally_cocartesian.ok


def test_classify_twisted_arrow_is_left_fibration():
    for C in [zoo.simplex(1), zoo.simplex(2), zoo.cyclic_group(2)]:
        tw = twisted_arrow(C)
        p = CatOverBase(tw.cat, tw.proj.cod, tw.proj)
        cls = classify(p, with_exponential=False)
        assert cls.is_left.ok
        assert cls.is_cocartesian.ok and cls.is_locally_cocartesian.ok


def test_outer_coface_not_exponential():
    p = over_functor(zoo.simplex_inclusion((0, 2), 2))
    lift = is_exponential_lifting(p)
    coend = is_exponential_coend(p)
    assert not lift.ok and not coend.ok
    assert lift.detail["factorization"] == ["a01", "a12"]


def test_inert_inclusions_exponential():
    cases = []
    for n in range(0, 4):
        for m in range(n, 4):
            if n + m > 5:
                continue
            for start in range(0, m - n + 1):
                cases.append(tuple(range(start, start + n + 1)) + (m,))
    for case in cases:
        points, m = case[:-1], case[-1]
        p = over_functor(zoo.simplex_inclusion(points, m))
        assert is_exponential_lifting(p).ok, (points, m)
        assert is_exponential_coend(p).ok, (points, m)


def test_everything_over_interval_exponential():
    examples = [
        two_het_collage(),
        product_over(zoo.interval(), zoo.cyclic_group(2)),
        over_functor(constant_functor(zoo.walking_iso(), zoo.interval(), "0")),
        over_functor(zoo.simplex_inclusion((0, 1), 1)),
    ]
    # reinterpret those whose base is not [1]
    for p in examples:
        if p.base.name == "[1]":
            assert is_exponential_lifting(p).ok
            assert is_exponential_coend(p).ok


def test_criteria_agree_on_probes():
    probes = [
        over_functor(zoo.simplex_inclusion((0, 2), 2)),
        over_functor(zoo.simplex_inclusion((0, 1), 2)),
        two_het_collage(),
        product_over(zoo.simplex(2), zoo.walking_iso()),
        over_functor(constant_functor(zoo.cyclic_group(2), zoo.simplex(1), "0")),
    ]
    for p in probes:
        assert is_exponential_lifting(p).ok == is_exponential_coend(p).ok


def test_env_fibration_identity_base():
    A = zoo.simplex(1)
    env = env_fibration(over_functor(identity_functor(A)))
    # Env(id_A) is the arrow category of A over A via the target
    cm = comma(identity_functor(A), identity_functor(A))
    assert search_cat_iso(env.over.total, cm.cat) is not None
    assert len(env.over.total.objects) == len(A.morphisms)


def test_env_fibration_terminal_base():
    C = zoo.walking_iso()
    T = zoo.terminal()
    env = env_fibration(over_functor(constant_functor(C, T, "*")))
    assert search_cat_iso(env.over.total, C) is not None


def test_env_fibration_discrete_over_interval():
    # discrete 2-point category over [1], both points over 0: the Env fiber
    # over 1 gains one object per object over 0
    D = zoo.discrete("ab")
    I = zoo.interval()
    p = over_functor(constant_functor(D, I, "0"))
    env = env_fibration(p)
    f1 = fiber(env.over, "1")
    assert len(f1.objects) == 2
    f0 = fiber(env.over, "0")
    assert len(f0.objects) == 2


def test_grothendieck_constant_diagram():
    C = zoo.simplex(1)
    D = zoo.cyclic_group(2)
    Phi = StrictCatDiagram(
        C, {x: D for x in C.objects},
        {m: identity_functor(D) for m in C.morphisms},
    )
    assert validate_strict_diagram(Phi) == []
    res = grothendieck_strict(Phi)
    assert validate(res.over.total).ok
    q = product_over(C, D)
    # same fibers and een het counts as the product projection
    assert search_cat_iso(res.over.total, q.total) is not None


def test_grothendieck_over_interval_classifies_functor():
    # base [1], act the nontrivial functor BZ2 -> BZ2: het homs are
    # hom(c, G d)
    G2 = zoo.cyclic_group(2)
    Phi = StrictCatDiagram(
        zoo.interval(),
        {"0": G2, "1": G2},
        {
            "id0": identity_functor(G2),
            "id1": identity_functor(G2),
            "a01": identity_functor(G2),
        },
    )
    res = grothendieck_strict(Phi)
    hets = het_morphisms(res.over, "a01", pair_tag("0", "*"), pair_tag("1", "*"))
    assert len(hets) == len(G2.hom("*", "*"))


def test_grothendieck_singleton_fibers():
    C = zoo.simplex(2)
    T = zoo.terminal()
    Phi = StrictCatDiagram(
        C, {x: T for x in C.objects}, {m: identity_functor(T) for m in C.morphisms}
    )
    res = grothendieck_strict(Phi)
    assert search_cat_iso(res.over.total, C) is not None


def _bz2_action_diagram():
    """BZ2 acting on the discrete two-point category by the swap."""
    G = zoo.cyclic_group(2)
    D = zoo.discrete("ab")
    swap = FinFunctor(D, D, {"a": "b", "b": "a"}, {"id_a": "id_b", "id_b": "id_a"})
    return StrictCatDiagram(G, {"*": D}, {"g0": identity_functor(D), "g1": swap})


def test_grothendieck_group_action_total_is_walking_iso_like():
    Phi = _bz2_action_diagram()
    assert validate_strict_diagram(Phi) == []
    res = grothendieck_strict(Phi)
    # total category: 2 objects, morphisms = 2 identities + 2 crossing isos
    assert len(res.over.total.objects) == 2
    assert len(res.over.total.morphisms) == 4
    cls = classify(res.over, with_exponential=False)
    assert cls.is_cartesian.ok and cls.is_cocartesian.ok


def test_straighten_roundtrip_strict_diagrams():
    diagrams = [
        _bz2_action_diagram(),
        StrictCatDiagram(
            zoo.interval(), {"0": zoo.cyclic_group(2), "1": zoo.cyclic_group(2)},
            {m: identity_functor(zoo.cyclic_group(2)) for m in zoo.interval().morphisms},
        ),
    ]
    for Phi in diagrams:
        res = grothendieck_strict(Phi)
        st = straighten_locally_cartesian(res.over, cleavage=res.cleavage)
        assert st.all_alpha_iso
        # under the canonical cleavage every comparison component is an identity
        for (f, g), eta in st.alpha.items():
            for e, c in eta.components.items():
                assert st.fibers[Phi.base.src[f]].is_identity(c), (f, g, e)
            assert validate_nat_trans(eta).ok
        # transports match the input diagram through the object tagging
        for f in Phi.base.morphisms:
            X, Y = Phi.base.src[f], Phi.base.tgt[f]
            T = st.transport[f]
            for b in Phi.at[Y].objects:
                assert T.obj_map[pair_tag(Y, b)] == pair_tag(X, Phi.act[f].obj_map[b])
            for psi in Phi.at[Y].morphisms:
                got = T.mor_map[triple_tag(Phi.base.identity[Y], psi, Phi.at[Y].tgt[psi])]
                want = triple_tag(
                    Phi.base.identity[X],
                    Phi.act[f].mor_map[psi],
                    Phi.act[f].obj_map[Phi.at[Y].tgt[psi]],
                )
                assert got == want


def test_straighten_base_interval_single_transport():
    # a cartesian fibration over [1]: one real transport, every composable
    # pair involves an identity, so all comparisons are identities
    C2 = zoo.cyclic_group(2)
    I = zoo.interval()
    P, _fst, snd = product_projections(C2, I)
    p = CatOverBase(P, I, snd)
    st = straighten_locally_cartesian(p)
    assert set(st.transport) == set(p.base.morphisms)
    assert st.all_alpha_iso
    for (f, g), eta in st.alpha.items():
        assert p.base.is_identity(f) or p.base.is_identity(g)


def test_straighten_requires_locally_cartesian():
    # parallel pair over [1] collapsing both arrows: lifts of a01 at b do not
    # exist (no morphism over a01 into the fiber object)
    I = zoo.interval()
    D = zoo.discrete("ab")
    proj = FinFunctor(D, I, {"a": "0", "b": "1"}, {"id_a": "id0", "id_b": "id1"})
    p = CatOverBase(D, I, proj)
    with pytest.raises(NotLocallyCartesian):
        straighten_locally_cartesian(p)


def locally_cartesian_not_cartesian() -> CatOverBase:
    """Over [2]: fiber at 0 is the walking arrow e: p -> q, fibers at 1 and 2
    are points; transports along a01 and a12 land at p, along a02 at q, and
    the comparison is the non-invertible e."""
    C = zoo.simplex(2)
    total = FinCat(
        "lc", ("p", "q", "m", "n"),
        ("idp", "idq", "idm", "idn", "e", "u", "v", "wp", "wq"),
        {"idp": "p", "idq": "q", "idm": "m", "idn": "n",
         "e": "p", "u": "p", "v": "m", "wp": "p", "wq": "q"},
        {"idp": "p", "idq": "q", "idm": "m", "idn": "n",
         "e": "q", "u": "m", "v": "n", "wp": "n", "wq": "n"},
        {"p": "idp", "q": "idq", "m": "idm", "n": "idn"},
        {
            ("idp", "idp"): "idp", ("idq", "idq"): "idq",
            ("idm", "idm"): "idm", ("idn", "idn"): "idn",
            ("e", "idp"): "e", ("idq", "e"): "e",
            ("u", "idp"): "u", ("idm", "u"): "u",
            ("v", "idm"): "v", ("idn", "v"): "v",
            ("wp", "idp"): "wp", ("idn", "wp"): "wp",
            ("wq", "idq"): "wq", ("idn", "wq"): "wq",
            ("v", "u"): "wp",
            ("wq", "e"): "wp",
        },
    )
    assert validate(total).ok
    proj = FinFunctor(
        total, C,
        {"p": "0", "q": "0", "m": "1", "n": "2"},
        {"idp": "id0", "idq": "id0", "idm": "id1", "idn": "id2",
         "e": "id0", "u": "a01", "v": "a12", "wp": "a02", "wq": "a02"},
    )
    assert validate_functor(proj).ok
    return CatOverBase(total, C, proj)


def test_straighten_locally_cartesian_not_cartesian_has_noninvertible_alpha():
    p = locally_cartesian_not_cartesian()
    cls = classify(p, with_exponential=False)
    assert cls.is_locally_cartesian.ok and not cls.is_cartesian.ok
    st = straighten_locally_cartesian(p)
    assert not st.all_alpha_iso
    comp = st.alpha[("a01", "a12")].components["n"]
    assert comp == "e"
    assert not is_exponential_lifting(p).ok
    assert not is_exponential_coend(p).ok


def test_transport_presheaf_cylinder_is_identity():
    C = zoo.cyclic_group(2)
    I = zoo.interval()
    P, _fst, snd = product_projections(C, I)
    p = CatOverBase(P, I, snd)
    E1 = fiber(p, "1")
    E0 = fiber(p, "0")
    # P over the fiber at 1: the regular representation presheaf
    sheaf = yoneda(E1, E1.objects[0])
    out = transport_presheaf(p, "a01", sheaf)
    assert validate_presheaf(out) == []
    # fibers are isomorphic via relabel; transported presheaf must be iso to
    # the original through it
    relabel = FinFunctor(
        E0, E1,
        {o: o.replace(",0)", ",1)") for o in E0.objects},
        {m: m.replace(",id0)", ",id1)") for m in E0.morphisms},
    )
    assert validate_functor(relabel).ok
    assert find_presheaf_iso(out, restrict(relabel, sheaf)) is not None


def test_transport_presheaf_two_het_points():
    p = two_het_collage()
    E1 = fiber(p, "1")
    sheaf = constant_presheaf(E1, FinSet(("s",)))
    out = transport_presheaf(p, "a01", sheaf)
    assert len(out.at["c"]) == 2


def test_transport_presheaf_representable_gives_het():
    p = two_het_collage()
    E1 = fiber(p, "1")
    out = transport_presheaf(p, "a01", yoneda(E1, "d"))
    assert len(out.at["c"]) == len(het_morphisms(p, "a01", "c", "d"))


def test_transport_presheaf_agrees_with_env_route():
    """Dual route: transport equals restrict(point-inclusion, left_kan(theta, P))
    through the enveloping fibration."""
    cases = []
    C2 = zoo.cyclic_group(2)
    I = zoo.interval()
    P, _f, snd = product_projections(C2, I)
    cases.append((CatOverBase(P, I, snd), "a01"))
    cases.append((two_het_collage(), "a01"))
    for p, f in cases:
        X, Y = p.base.src[f], p.base.tgt[f]
        EX, EY = fiber(p, X), fiber(p, Y)
        env = env_fibration(p)
        EnvY = fiber(env.over, Y)
        theta_fib = FinFunctor(
            EY, EnvY,
            {c: env.embed.obj_map[c] for c in EY.objects},
            {m: env.embed.mor_map[m] for m in EY.morphisms},
        )
        assert validate_functor(theta_fib).ok
        iota = FinFunctor(
            EX, EnvY,
            {a: triple_tag(a, Y, f) for a in EX.objects},
            {u: f"({u},{p.base.identity[Y]})@" + triple_tag(EX.src[u], Y, f)
             for u in EX.morphisms},
        )
        assert validate_functor(iota).ok
        for source in [yoneda(EY, EY.objects[0]), constant_presheaf(EY, FinSet(("s",)))]:
            via_env = restrict(iota, left_kan(theta_fib, source))
            direct = transport_presheaf(p, f, source)
            assert find_presheaf_iso(direct, via_env) is not None
