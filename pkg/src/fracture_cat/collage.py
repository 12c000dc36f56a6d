"""Profunctors, collages over the walking arrow, profunctor extraction and
composition, and internal homs over [1] with the twisted-arrow hom formula.

A profunctor H between C and D assigns a finite set H(c, d) to each pair of
objects, with a left action by precomposition with C-morphisms and a right
action by postcomposition with D-morphisms. Its collage is the category over
[1] whose fibers are C and D and whose heteromorphisms are the H-values.
Internal homs are materialized only over [1], where every functor to the
base is exponentiable; the hom formula computes heteromorphism sets as
limits over the het twisted arrow category.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceeded, MiddleMismatch
from .fincat import (
    CatOverBase,
    FinCat,
    FinFunctor,
    NatTrans,
    compose_functors,
    enumerate_functors,
    enumerate_functors_over_base,
    enumerate_nat_trans,
    opposite,
    pair_tag,
    product,
    pullback_cat,
    same_cat,
    validate_functor,
)
from .presheaf import FinSet, SetValuedDiagram, limit_set_valued
from .twisted import coend_of, het_twisted
from .fibrations import fiber
from .zoo import interval


@dataclass(frozen=True, eq=False)
class Profunctor:
    left: FinCat   # C
    right: FinCat  # D
    at: dict[tuple[str, str], FinSet]
    # lact[(u, d)]: H(c, d) -> H(c', d) for u: c' -> c, precomposition
    lact: dict[tuple[str, str], dict[str, str]]
    # ract[(v, c)]: H(c, d) -> H(c, d') for v: d -> d', postcomposition
    ract: dict[tuple[str, str], dict[str, str]]


def validate_profunctor(H: Profunctor) -> list[str]:
    bad = []
    C, D = H.left, H.right
    for c in C.objects:
        for d in D.objects:
            if (c, d) not in H.at:
                bad.append(f"no value at ({c}, {d})")
    if bad:
        return bad
    for u in C.morphisms:
        for d in D.objects:
            fn = H.lact.get((u, d))
            if fn is None or set(fn) != set(H.at[(C.tgt[u], d)].elements):
                bad.append(f"left action missing or misdomained at ({u}, {d})")
            elif not set(fn.values()) <= set(H.at[(C.src[u], d)].elements):
                bad.append(f"left action at ({u}, {d}) lands outside its value")
    for v in D.morphisms:
        for c in C.objects:
            fn = H.ract.get((v, c))
            if fn is None or set(fn) != set(H.at[(c, D.src[v])].elements):
                bad.append(f"right action missing or misdomained at ({v}, {c})")
            elif not set(fn.values()) <= set(H.at[(c, D.tgt[v])].elements):
                bad.append(f"right action at ({v}, {c}) lands outside its value")
    if bad:
        return bad
    for c in C.objects:
        for d in D.objects:
            idc, idd = C.identity[c], D.identity[d]
            if any(H.lact[(idc, d)][e] != e for e in H.at[(c, d)]):
                bad.append(f"left unit fails at ({c}, {d})")
            if any(H.ract[(idd, c)][e] != e for e in H.at[(c, d)]):
                bad.append(f"right unit fails at ({c}, {d})")
    for (u2, u1), u in C.table.items():  # u = u2 . u1, u1: c1 -> c2, u2: c2 -> c3
        for d in D.objects:
            c3 = C.tgt[u2]
            for e in H.at[(c3, d)]:
                if H.lact[(u1, d)][H.lact[(u2, d)][e]] != H.lact[(u, d)][e]:
                    bad.append(f"left action not functorial at ({u2}, {u1}, {d})")
                    break
    for (v2, v1), v in D.table.items():
        for c in C.objects:
            d1 = D.src[v1]
            for e in H.at[(c, d1)]:
                if H.ract[(v2, c)][H.ract[(v1, c)][e]] != H.ract[(v, c)][e]:
                    bad.append(f"right action not functorial at ({v2}, {v1}, {c})")
                    break
    for u in C.morphisms:
        for v in D.morphisms:
            c, d = C.tgt[u], D.src[v]
            for e in H.at[(c, d)]:
                if (
                    H.ract[(v, C.src[u])][H.lact[(u, d)][e]]
                    != H.lact[(u, D.tgt[v])][H.ract[(v, c)][e]]
                ):
                    bad.append(f"actions do not commute at ({u}, {v})")
                    break
    return bad


def hom_profunctor(C: FinCat) -> Profunctor:
    at = {(a, b): FinSet(C.hom(a, b)) for a in C.objects for b in C.objects}
    lact = {
        (u, d): {e: C.table[(e, u)] for e in at[(C.tgt[u], d)]}
        for u in C.morphisms
        for d in C.objects
    }
    ract = {
        (v, c): {e: C.table[(v, e)] for e in at[(c, C.src[v])]}
        for v in C.morphisms
        for c in C.objects
    }
    return Profunctor(C, C, at, lact, ract)


def empty_profunctor(C: FinCat, D: FinCat) -> Profunctor:
    at = {(c, d): FinSet(()) for c in C.objects for d in D.objects}
    return Profunctor(
        C, D, at,
        {(u, d): {} for u in C.morphisms for d in D.objects},
        {(v, c): {} for v in D.morphisms for c in C.objects},
    )


def functor_profunctor(F: FinFunctor) -> Profunctor:
    """The profunctor (c, d) -> hom_D(F c, d) classified by a functor F: C -> D."""
    C, D = F.dom, F.cod
    at = {(c, d): FinSet(D.hom(F.obj_map[c], d)) for c in C.objects for d in D.objects}
    lact = {
        (u, d): {e: D.table[(e, F.mor_map[u])] for e in at[(C.tgt[u], d)]}
        for u in C.morphisms
        for d in D.objects
    }
    ract = {
        (v, c): {e: D.table[(v, e)] for e in at[(c, D.src[v])]}
        for v in D.morphisms
        for c in C.objects
    }
    return Profunctor(C, D, at, lact, ract)


# ---------------------------------------------------------------------------
# collage and extraction


def _obj0(c):
    return f"0.{c}"


def _obj1(d):
    return f"1.{d}"


def _het(c, d, e):
    return f"h({c},{d},{e})"


@dataclass(frozen=True, eq=False)
class CollageResult:
    over: CatOverBase
    fiber0: FinCat
    fiber1: FinCat


def collage(H: Profunctor) -> CollageResult:
    """The category over [1] with fibers C, D and heteromorphisms H(c, d);
    composition with fiber morphisms is the two-sided action."""
    C, D = H.left, H.right
    I = interval()
    objects = tuple(_obj0(c) for c in C.objects) + tuple(_obj1(d) for d in D.objects)
    morphisms = (
        [f"0.{m}" for m in C.morphisms]
        + [f"1.{m}" for m in D.morphisms]
        + [_het(c, d, e) for c in C.objects for d in D.objects for e in H.at[(c, d)]]
    )
    src = {}
    tgt = {}
    for m in C.morphisms:
        src[f"0.{m}"] = _obj0(C.src[m])
        tgt[f"0.{m}"] = _obj0(C.tgt[m])
    for m in D.morphisms:
        src[f"1.{m}"] = _obj1(D.src[m])
        tgt[f"1.{m}"] = _obj1(D.tgt[m])
    for c in C.objects:
        for d in D.objects:
            for e in H.at[(c, d)]:
                src[_het(c, d, e)] = _obj0(c)
                tgt[_het(c, d, e)] = _obj1(d)
    identity = {_obj0(c): f"0.{C.identity[c]}" for c in C.objects} | {
        _obj1(d): f"1.{D.identity[d]}" for d in D.objects
    }
    table = {}
    for (g, f), h in C.table.items():
        table[(f"0.{g}", f"0.{f}")] = f"0.{h}"
    for (g, f), h in D.table.items():
        table[(f"1.{g}", f"1.{f}")] = f"1.{h}"
    for c in C.objects:
        for d in D.objects:
            for e in H.at[(c, d)]:
                het = _het(c, d, e)
                for u in C.morphisms:  # precompose: het . 0.u
                    if C.tgt[u] == c:
                        table[(het, f"0.{u}")] = _het(C.src[u], d, H.lact[(u, d)][e])
                for v in D.morphisms:  # postcompose: 1.v . het
                    if D.src[v] == d:
                        table[(f"1.{v}", het)] = _het(c, D.tgt[v], H.ract[(v, c)][e])
    total = FinCat(f"coll({C.name},{D.name})", objects, tuple(morphisms), src, tgt, identity, table)
    proj = FinFunctor(
        total, I,
        {o: "0" if o.startswith("0.") else "1" for o in objects},
        {
            m: ("id0" if m.startswith("0.") else "id1") if not m.startswith("h(") else "a01"
            for m in morphisms
        },
    )
    over = CatOverBase(total, I, proj)
    return CollageResult(over, fiber(over, "0"), fiber(over, "1"))


def extract_profunctor(M: CatOverBase) -> Profunctor:
    """The heteromorphism profunctor of a category over [1], with actions by
    composition in the total category."""
    E = M.total
    arrow = _the_arrow(M.base)
    C = fiber(M, M.base.src[arrow])
    D = fiber(M, M.base.tgt[arrow])
    hets = [m for m in E.morphisms if M.proj.mor_map[m] == arrow]
    at = {
        (c, d): FinSet(tuple(m for m in hets if E.src[m] == c and E.tgt[m] == d))
        for c in C.objects
        for d in D.objects
    }
    lact = {
        (u, d): {
            e: E.table[(e, u)] for e in at[(C.tgt[u], d)]
        }
        for u in C.morphisms
        for d in D.objects
    }
    ract = {
        (v, c): {
            e: E.table[(v, e)] for e in at[(c, D.src[v])]
        }
        for v in D.morphisms
        for c in C.objects
    }
    return Profunctor(C, D, at, lact, ract)


def _the_arrow(base: FinCat) -> str:
    non_id = [m for m in base.morphisms if not base.is_identity(m)]
    assert len(base.objects) == 2 and len(non_id) == 1, "base must be the walking arrow"
    return non_id[0]


# ---------------------------------------------------------------------------
# profunctor composition


@dataclass(frozen=True)
class ComposedProfunctor:
    prof: Profunctor
    # (c, e) -> raw-pair -> class element: ((d, x, y) -> element of prof.at[(c, e)])
    classes: dict[tuple[str, str], dict[tuple[str, str, str], str]]


def compose_profunctors(H: Profunctor, K: Profunctor) -> ComposedProfunctor:
    """Coend over the middle category: classes of pairs (x in H(c, d),
    y in K(d, e)) under sliding D-morphisms across the pair."""
    if not same_cat(H.right, K.left):
        raise MiddleMismatch(f"{H.right.name} vs {K.left.name}")
    C, D, E = H.left, H.right, K.right
    shape = product(opposite(D), D)
    at_out: dict[tuple[str, str], FinSet] = {}
    classes: dict[tuple[str, str], dict[tuple[str, str, str], str]] = {}
    for c in C.objects:
        for e in E.objects:
            at = {}
            for u in D.objects:
                for v in D.objects:
                    at[pair_tag(u, v)] = FinSet(tuple(
                        pair_tag(x, y) for x in H.at[(c, v)] for y in K.at[(u, e)]
                    ))
            action = {}
            for w1 in D.morphisms:
                for w2 in D.morphisms:
                    u, v = D.tgt[w1], D.src[w2]
                    fn = {}
                    for el in at[pair_tag(u, v)]:
                        x, y = _split(el)
                        fn[el] = pair_tag(H.ract[(w2, c)][x], K.lact[(w1, e)][y])
                    action[pair_tag(w1, w2)] = fn
            colim = coend_of(D, SetValuedDiagram(shape, at, action))
            at_out[(c, e)] = colim.coapex
            cl = {}
            for d in D.objects:
                for el in at[pair_tag(d, d)]:
                    x, y = _split(el)
                    cl[(d, x, y)] = colim.injections[d][el]
            classes[(c, e)] = cl

    reps: dict[tuple[str, str], dict[str, tuple[str, str, str]]] = {}
    for key, cl in classes.items():
        reps[key] = {}
        for raw, cls in sorted(cl.items()):
            reps[key].setdefault(cls, raw)
    lact = {}
    for u in C.morphisms:
        for e in E.objects:
            c1, c2 = C.src[u], C.tgt[u]
            fn = {}
            for cls, (d, x, y) in reps[(c2, e)].items():
                fn[cls] = classes[(c1, e)][(d, H.lact[(u, d)][x], y)]
            lact[(u, e)] = fn
    ract = {}
    for v in E.morphisms:
        for c in C.objects:
            e1, e2 = E.src[v], E.tgt[v]
            fn = {}
            for cls, (d, x, y) in reps[(c, e1)].items():
                fn[cls] = classes[(c, e2)][(d, x, K.ract[(v, d)][y])]
            ract[(v, c)] = fn
    return ComposedProfunctor(Profunctor(C, E, at_out, lact, ract), classes)


def _split(tag):
    from .fincat import _split_pair

    return _split_pair(tag)


@dataclass(frozen=True)
class ProfIso:
    """A profunctor isomorphism: per-(c,d) bijections commuting with both actions."""

    maps: dict[tuple[str, str], dict[str, str]]


def find_profunctor_iso(H: Profunctor, K: Profunctor) -> ProfIso | None:
    """Exhaustive search for an isomorphism of profunctors; None is exhaustive."""
    if not (same_cat(H.left, K.left) and same_cat(H.right, K.right)):
        return None
    C, D = H.left, H.right
    cells = [(c, d) for c in C.objects for d in D.objects]
    for cell in cells:
        if len(H.at[cell]) != len(K.at[cell]):
            return None

    from itertools import permutations

    def natural_so_far(maps):
        for u in C.morphisms:
            for d in D.objects:
                cell1, cell2 = (C.tgt[u], d), (C.src[u], d)
                if cell1 in maps and cell2 in maps:
                    for e in H.at[cell1]:
                        if maps[cell2][H.lact[(u, d)][e]] != K.lact[(u, d)][maps[cell1][e]]:
                            return False
        for v in D.morphisms:
            for c in C.objects:
                cell1, cell2 = (c, D.src[v]), (c, D.tgt[v])
                if cell1 in maps and cell2 in maps:
                    for e in H.at[cell1]:
                        if maps[cell2][H.ract[(v, c)][e]] != K.ract[(v, c)][maps[cell1][e]]:
                            return False
        return True

    def rec(maps, i):
        if i == len(cells):
            return ProfIso({k: dict(v) for k, v in maps.items()})
        cell = cells[i]
        dom = list(H.at[cell])
        for perm in permutations(K.at[cell].elements):
            maps[cell] = dict(zip(dom, perm))
            if natural_so_far(maps):
                res = rec(maps, i + 1)
                if res is not None:
                    return res
            del maps[cell]
        return None

    return rec({}, 0)


# ---------------------------------------------------------------------------
# internal hom over the interval


@dataclass(frozen=True, eq=False)
class FunctorFiber:
    cat: FinCat
    objects_to_functors: dict[str, FinFunctor]
    morphisms_to_transformations: dict[str, NatTrans]


def functor_category(C: FinCat, D: FinCat, cap: int = 10000) -> FunctorFiber:
    """The category of functors C -> D and natural transformations, with
    deterministic object/morphism naming."""
    functors = enumerate_functors(C, D, cap=cap)
    obj_names = {i: f"F{i}" for i in range(len(functors))}
    objects = tuple(obj_names[i] for i in range(len(functors)))
    to_fun = {obj_names[i]: functors[i] for i in range(len(functors))}
    morphisms = []
    src: dict[str, str] = {}
    tgt: dict[str, str] = {}
    to_nat: dict[str, NatTrans] = {}
    comp_index: dict[tuple[str, tuple], str] = {}
    for i, F in enumerate(functors):
        for j, G in enumerate(functors):
            for k, eta in enumerate(enumerate_nat_trans(F, G)):
                name = f"n{i}-{j}-{k}"
                morphisms.append(name)
                src[name] = obj_names[i]
                tgt[name] = obj_names[j]
                to_nat[name] = eta
                comp_index[(obj_names[i], obj_names[j], eta.signature())] = name
    identity = {}
    for i, F in enumerate(functors):
        comps = {a: D.identity[F.obj_map[a]] for a in C.objects}
        identity[obj_names[i]] = comp_index[
            (obj_names[i], obj_names[i], tuple(sorted(comps.items())))
        ]
    table = {}
    for m1 in morphisms:
        for m2 in morphisms:
            if tgt[m1] != src[m2]:
                continue
            comps = {
                a: D.table[(to_nat[m2].components[a], to_nat[m1].components[a])]
                for a in C.objects
            }
            table[(m2, m1)] = comp_index[
                (src[m1], tgt[m2], tuple(sorted(comps.items())))
            ]
    cat = FinCat(
        f"Fun({C.name},{D.name})", objects, tuple(morphisms), src, tgt, identity, table
    )
    return FunctorFiber(cat, to_fun, to_nat)


def hom_set_over_interval(
    M: CatOverBase, N: CatOverBase, F: FinFunctor, G: FinFunctor
):
    """Heteromorphisms F -> G of the internal hom: the limit over the het
    twisted arrow category of M of the het-set diagram of N. Elements decode
    to families (het m of M) -> (het of N)."""
    arrowM = _the_arrow(M.base)
    arrowN = _the_arrow(N.base)
    M0, M1 = fiber(M, M.base.src[arrowM]), fiber(M, M.base.tgt[arrowM])
    N0, N1 = fiber(N, N.base.src[arrowN]), fiber(N, N.base.tgt[arrowN])
    assert same_cat(F.dom, M0) and same_cat(F.cod, N0)
    assert same_cat(G.dom, M1) and same_cat(G.cod, N1)
    ht = het_twisted(M, M0, M1)
    E = N.total
    at = {}
    for m in ht.cat.objects:
        m0, m1 = M.total.src[m], M.total.tgt[m]
        at[m] = FinSet(tuple(
            n for n in E.hom(F.obj_map[m0], G.obj_map[m1])
            if N.proj.mor_map[n] == arrowN
        ))
    action = {}
    for t in ht.cat.morphisms:
        m = ht.cat.src[t]
        uv = t.split("@", 1)[0]
        u, v = _split(uv)
        fn = {}
        for n in at[m]:
            fn[n] = E.table[(G.mor_map[v], E.table[(n, F.mor_map[u])])]
        action[t] = fn
    diagram = SetValuedDiagram(ht.cat, at, action)
    res = limit_set_valued(diagram)
    families = {}
    for el in res.apex:
        families[el] = {m: res.projections[m][el] for m in ht.cat.objects}
    return res.apex, families


@dataclass(frozen=True, eq=False)
class InternalHom:
    over: CatOverBase
    fiber0: FunctorFiber
    fiber1: FunctorFiber
    het_families: dict[str, dict[str, str]]  # het morphism -> (het of M -> het of N)


def internal_hom_over_interval(M: CatOverBase, N: CatOverBase, cap: int = 10000) -> InternalHom:
    """Fibers are the functor categories Fun(M_i, N_i); the heteromorphisms
    from F to G are the twisted-arrow hom sets, composed with natural
    transformations by pre/post-whiskering of families."""
    arrowM = _the_arrow(M.base)
    M0, M1 = fiber(M, M.base.src[arrowM]), fiber(M, M.base.tgt[arrowM])
    N0, N1 = (
        fiber(N, N.base.src[_the_arrow(N.base)]),
        fiber(N, N.base.tgt[_the_arrow(N.base)]),
    )
    fib0 = functor_category(M0, N0, cap=cap)
    fib1 = functor_category(M1, N1, cap=cap)
    I = interval()
    E = N.total

    objects = tuple(_obj0(o) for o in fib0.cat.objects) + tuple(
        _obj1(o) for o in fib1.cat.objects
    )
    morphisms = [f"0.{m}" for m in fib0.cat.morphisms] + [
        f"1.{m}" for m in fib1.cat.morphisms
    ]
    src = {}
    tgt = {}
    for m in fib0.cat.morphisms:
        src[f"0.{m}"] = _obj0(fib0.cat.src[m])
        tgt[f"0.{m}"] = _obj0(fib0.cat.tgt[m])
    for m in fib1.cat.morphisms:
        src[f"1.{m}"] = _obj1(fib1.cat.src[m])
        tgt[f"1.{m}"] = _obj1(fib1.cat.tgt[m])

    het_families: dict[str, dict[str, str]] = {}
    fam_index: dict[tuple[str, str, tuple], str] = {}
    for o0 in fib0.cat.objects:
        F = fib0.objects_to_functors[o0]
        for o1 in fib1.cat.objects:
            G = fib1.objects_to_functors[o1]
            apex, families = hom_set_over_interval(M, N, F, G)
            for el in apex:
                name = _het(o0, o1, el)
                morphisms.append(name)
                src[name] = _obj0(o0)
                tgt[name] = _obj1(o1)
                het_families[name] = families[el]
                fam_index[(o0, o1, tuple(sorted(families[el].items())))] = name

    identity = {_obj0(o): f"0.{fib0.cat.identity[o]}" for o in fib0.cat.objects} | {
        _obj1(o): f"1.{fib1.cat.identity[o]}" for o in fib1.cat.objects
    }
    table = {}
    for (g, f), h in fib0.cat.table.items():
        table[(f"0.{g}", f"0.{f}")] = f"0.{h}"
    for (g, f), h in fib1.cat.table.items():
        table[(f"1.{g}", f"1.{f}")] = f"1.{h}"
    for name, fam in het_families.items():
        o0 = src[name][2:]
        o1 = tgt[name][2:]
        # precompose with a 0-fiber transformation eta: F' -> F
        for m in fib0.cat.morphisms:
            if fib0.cat.tgt[m] != o0:
                continue
            eta = fib0.morphisms_to_transformations[m]
            new_fam = {
                het: E.table[(fam[het], eta.components[M.total.src[het]])]
                for het in fam
            }
            key = (fib0.cat.src[m], o1, tuple(sorted(new_fam.items())))
            table[(name, f"0.{m}")] = fam_index[key]
        # postcompose with a 1-fiber transformation theta: G -> G'
        for m in fib1.cat.morphisms:
            if fib1.cat.src[m] != o1:
                continue
            theta = fib1.morphisms_to_transformations[m]
            new_fam = {
                het: E.table[(theta.components[M.total.tgt[het]], fam[het])]
                for het in fam
            }
            key = (o0, fib1.cat.tgt[m], tuple(sorted(new_fam.items())))
            table[(f"1.{m}", name)] = fam_index[key]

    total = FinCat("IH", objects, tuple(morphisms), src, tgt, identity, table)
    proj = FinFunctor(
        total, I,
        {o: "0" if o.startswith("0.") else "1" for o in objects},
        {
            m: ("id0" if m.startswith("0.") else "id1")
            if not m.startswith("h(")
            else "a01"
            for m in morphisms
        },
    )
    return InternalHom(CatOverBase(total, I, proj), fib0, fib1, het_families)


# ---------------------------------------------------------------------------
# exponential law


@dataclass(frozen=True)
class BijectionWitness:
    ok: bool
    pairs: list[tuple[tuple, tuple]]
    failure: dict | None


def exponential_law_check(A: CatOverBase, M: CatOverBase, N: CatOverBase, cap: int = 10000) -> BijectionWitness:
    """Currying over [1]: maps A x_[1] M -> N over [1] against maps
    A -> Fun^[1](M, N) over [1], as an explicit bijection."""
    I = interval()
    for over in (A, M, N):
        _the_arrow(over.base)

    pb, to_a, to_m = pullback_cat(A.proj, M.proj)
    pb_over = CatOverBase(pb, I, compose_functors(A.proj, to_a))
    lhs = enumerate_functors_over_base(pb_over, N, cap=cap)

    ih = internal_hom_over_interval(M, N, cap=cap)
    rhs = enumerate_functors_over_base(A, ih.over, cap=cap)
    rhs_sigs = {T.signature(): T for T in rhs}

    arrowM = _the_arrow(M.base)
    M0 = fiber(M, M.base.src[arrowM])
    M1 = fiber(M, M.base.tgt[arrowM])
    fib0_by_sig = {
        ih.fiber0.objects_to_functors[o].signature(): o for o in ih.fiber0.cat.objects
    }
    fib1_by_sig = {
        ih.fiber1.objects_to_functors[o].signature(): o for o in ih.fiber1.cat.objects
    }
    nat0_by_sig = {
        (ih.fiber0.cat.src[m], ih.fiber0.cat.tgt[m],
         ih.fiber0.morphisms_to_transformations[m].signature()): m
        for m in ih.fiber0.cat.morphisms
    }
    nat1_by_sig = {
        (ih.fiber1.cat.src[m], ih.fiber1.cat.tgt[m],
         ih.fiber1.morphisms_to_transformations[m].signature()): m
        for m in ih.fiber1.cat.morphisms
    }
    het_by_fam = {
        (ih.over.total.src[h], ih.over.total.tgt[h], tuple(sorted(fam.items()))): h
        for h, fam in ih.het_families.items()
    }

    pairs = []
    used = set()
    for T in lhs:
        curried = _curry(
            T, A, M, ih, M0, M1,
            fib0_by_sig, fib1_by_sig, nat0_by_sig, nat1_by_sig, het_by_fam,
        )
        if curried is None:
            return BijectionWitness(False, pairs, {"lhs": T.signature(), "reason": "currying failed"})
        sig = curried.signature()
        if sig not in rhs_sigs:
            return BijectionWitness(False, pairs, {"lhs": T.signature(), "reason": "image not a map over [1]"})
        if sig in used:
            return BijectionWitness(False, pairs, {"lhs": T.signature(), "reason": "not injective"})
        used.add(sig)
        pairs.append((T.signature(), sig))
    if len(used) != len(rhs):
        missing = next(s for s in rhs_sigs if s not in used)
        return BijectionWitness(False, pairs, {"rhs": missing, "reason": "not surjective"})
    return BijectionWitness(True, pairs, None)


def _curry(T, A, M, ih, M0, M1,
           fib0_by_sig, fib1_by_sig, nat0_by_sig, nat1_by_sig, het_by_fam):
    """Transpose T: A x_[1] M -> N to a functor A -> IH(M, N) over [1]."""
    arrowA = _the_arrow(A.base)
    obj_map = {}
    for a in A.total.objects:
        if A.proj.obj_map[a] == A.base.src[arrowA]:
            Mi, fib_by_sig, side = M0, fib0_by_sig, "0."
        else:
            Mi, fib_by_sig, side = M1, fib1_by_sig, "1."
        o_map = {m: T.obj_map[pair_tag(a, m)] for m in Mi.objects}
        m_map = {
            mm: T.mor_map[pair_tag(A.total.identity[a], mm)] for mm in Mi.morphisms
        }
        sig = (tuple(sorted(o_map.items())), tuple(sorted(m_map.items())))
        key = fib_by_sig.get(sig)
        if key is None:
            return None
        obj_map[a] = side + key

    mor_map = {}
    for alpha in A.total.morphisms:
        base_img = A.proj.mor_map[alpha]
        a_src, a_tgt = A.total.src[alpha], A.total.tgt[alpha]
        if A.base.is_identity(base_img):
            if A.proj.obj_map[a_src] == A.base.src[arrowA]:
                Mi, nat_by_sig, side = M0, nat0_by_sig, "0."
            else:
                Mi, nat_by_sig, side = M1, nat1_by_sig, "1."
            comps = {m: T.mor_map[pair_tag(alpha, Mi.identity[m])] for m in Mi.objects}
            key = nat_by_sig.get(
                (obj_map[a_src][2:], obj_map[a_tgt][2:], tuple(sorted(comps.items())))
            )
            if key is None:
                return None
            mor_map[alpha] = side + key
        else:
            fam = {}
            for het in _hets_of(M):
                fam[het] = T.mor_map[pair_tag(alpha, het)]
            key = het_by_fam.get((obj_map[a_src], obj_map[a_tgt], tuple(sorted(fam.items()))))
            if key is None:
                return None
            mor_map[alpha] = key
    return FinFunctor(A.total, ih.over.total, obj_map, mor_map)


def _hets_of(M: CatOverBase):
    arrow = _the_arrow(M.base)
    return [m for m in M.total.morphisms if M.proj.mor_map[m] == arrow]
