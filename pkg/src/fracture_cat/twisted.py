"""Twisted arrow categories, ends and coends, and the end formula for
natural-transformation sets, with an independent brute-force oracle.

Ends are computed as the limit over the twisted arrow category, literally;
wedge elements decode to component families. Coends are the quotient of the
diagonal values by the usual zig-zag relation.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ShapeMismatch
from .fincat import (
    CatOverBase,
    FinCat,
    FinFunctor,
    NatTrans,
    opposite,
    pair_tag,
    product,
    same_cat,
    subcategory,
)
from .presheaf import (
    ColimitResult,
    FinSet,
    SetValuedDiagram,
    colimit_set_valued,
    limit_set_valued,
    restrict_diagram,
)


@dataclass(frozen=True, eq=False)
class TwistedArrowCat:
    cat: FinCat
    proj: FinFunctor  # to opposite(C) x C


def _tw_mor(f: str, u: str, v: str) -> str:
    return f"({u},{v})@{f}"


def twisted_arrow(C: FinCat) -> TwistedArrowCat:
    """Objects are the morphisms of C; a morphism f -> f' is a pair
    (u: a' -> a, v: b -> b') with f' = v.f.u. The projection to C^op x C is a
    discrete opfibration (unique lifts), asserted here.
    """
    objects = tuple(C.morphisms)
    morphisms = []
    src: dict[str, str] = {}
    tgt: dict[str, str] = {}
    data: dict[str, tuple[str, str, str]] = {}
    for f in C.morphisms:
        a, b = C.src[f], C.tgt[f]
        for u in C.morphisms:
            if C.tgt[u] != a:
                continue
            for v in C.morphisms:
                if C.src[v] != b:
                    continue
                fp = C.table[(C.table[(v, f)], u)]
                mid = _tw_mor(f, u, v)
                morphisms.append(mid)
                src[mid] = f
                tgt[mid] = fp
                data[mid] = (f, u, v)
    identity = {f: _tw_mor(f, C.identity[C.src[f]], C.identity[C.tgt[f]]) for f in C.morphisms}
    table = {}
    for m1 in morphisms:
        f1, u1, v1 = data[m1]
        for m2 in morphisms:
            f2, u2, v2 = data[m2]
            if tgt[m1] != f2:
                continue
            table[(m2, m1)] = _tw_mor(f1, C.table[(u1, u2)], C.table[(v2, v1)])
    cat = FinCat(f"Tw({C.name})", objects, tuple(morphisms), src, tgt, identity, table)
    Cop = opposite(C)
    base = product(Cop, C)
    proj = FinFunctor(
        cat,
        base,
        {f: pair_tag(C.src[f], C.tgt[f]) for f in C.morphisms},
        {m: pair_tag(data[m][1], data[m][2]) for m in morphisms},
    )
    assert _has_unique_lifts(cat, proj, base), "twisted arrow projection must be a discrete opfibration"
    return TwistedArrowCat(cat, proj)


def _has_unique_lifts(E: FinCat, proj: FinFunctor, base: FinCat) -> bool:
    """Discrete opfibration: unique lift of every base arrow at every object."""
    out_by_src: dict[str, list[str]] = {o: [] for o in E.objects}
    for m in E.morphisms:
        out_by_src[E.src[m]].append(m)
    for t in E.objects:
        x = proj.obj_map[t]
        for g in base.morphisms:
            if base.src[g] != x:
                continue
            lifts = [m for m in out_by_src[t] if proj.mor_map[m] == g]
            if len(lifts) != 1:
                return False
    return True


@dataclass(frozen=True, eq=False)
class HetTwisted:
    cat: FinCat
    proj: FinFunctor  # to opposite(M_0) x M_1
    objects_are: dict[str, str]  # het-twisted object -> morphism of total(M)


def het_twisted(M: CatOverBase, fiber0: FinCat, fiber1: FinCat) -> HetTwisted:
    """Full subcategory of Tw(total M) on the morphisms crossing from the
    fiber over 0 to the fiber over 1, projecting to fiber0^op x fiber1.
    """
    E = M.total
    arrow = _interval_arrow(M.base)
    hets = [m for m in E.morphisms if M.proj.mor_map[m] == arrow]
    tw = twisted_arrow(E)
    cat = subcategory(
        tw.cat,
        hets,
        [m for m in tw.cat.morphisms if tw.cat.src[m] in set(hets) and tw.cat.tgt[m] in set(hets)],
        name=f"Tw~({E.name})",
    )
    base = product(opposite(fiber0), fiber1)
    obj_map = {f: pair_tag(E.src[f], E.tgt[f]) for f in hets}
    mor_map = {}
    for m in cat.morphisms:
        # morphism tag is (u,v)@f; u lies in fiber0, v in fiber1
        uv = m.split("@", 1)[0]
        mor_map[m] = uv
    proj = FinFunctor(cat, base, obj_map, mor_map)
    return HetTwisted(cat, proj, {f: f for f in hets})


def _interval_arrow(base: FinCat) -> str:
    non_id = [m for m in base.morphisms if not base.is_identity(m)]
    assert len(base.objects) == 2 and len(non_id) == 1, "base must be the walking arrow"
    return non_id[0]


# ---------------------------------------------------------------------------
# ends and coends


def _check_shape(C: FinCat, T: SetValuedDiagram) -> FinCat:
    expected = product(opposite(C), C)
    if not same_cat(T.shape, expected):
        raise ShapeMismatch(f"diagram shape is not op({C.name}) x {C.name}")
    return expected


def end_of(C: FinCat, T: SetValuedDiagram):
    """The end of T: C^op x C -> FinSet as the limit over Tw(C)."""
    _check_shape(C, T)
    tw = twisted_arrow(C)
    return limit_set_valued(restrict_diagram(T, tw.proj))


def coend_of(C: FinCat, T: SetValuedDiagram) -> ColimitResult:
    """The coend of T: quotient of the diagonal values T(x, x) by
    T(f, 1)(t) ~ T(1, f)(t) for f: x -> y, t in T(y, x)."""
    _check_shape(C, T)
    # assemble the transition graph directly as a colimit over a discrete-ish
    # shape: nodes (x, t in T(x,x)); use a scratch category with one object
    # per C-object and freely added edges would be heavier than a plain
    # union-find, so quotient by hand here.
    nodes = [(x, t) for x in C.objects for t in T.at[pair_tag(x, x)]]
    parent = {n: n for n in nodes}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for f in C.morphisms:
        x, y = C.src[f], C.tgt[f]
        idx, idy = C.identity[x], C.identity[y]
        left = T.action[pair_tag(f, idx)]   # T(y,x) -> T(x,x)
        right = T.action[pair_tag(idy, f)]  # T(y,x) -> T(y,y)
        for t in T.at[pair_tag(y, x)]:
            union((x, left[t]), (y, right[t]))

    reps = sorted({find(n) for n in nodes})
    coapex = FinSet(tuple(f"[{x}.{t}]" for x, t in reps))
    injections = {
        x: {t: f"[{find((x, t))[0]}.{find((x, t))[1]}]" for t in T.at[pair_tag(x, x)]}
        for x in C.objects
    }
    return ColimitResult(coapex, injections)


# ---------------------------------------------------------------------------
# hom diagrams and natural-transformation sets


def hom_diagram(C: FinCat, D: FinCat, F: FinFunctor, G: FinFunctor) -> SetValuedDiagram:
    """(a, b) -> hom_D(F a, G b) over C^op x C, acting by G(v) . phi . F(u)."""
    shape = product(opposite(C), C)
    at = {}
    for a in C.objects:
        for b in C.objects:
            at[pair_tag(a, b)] = FinSet(D.hom(F.obj_map[a], G.obj_map[b]))
    action = {}
    for u in C.morphisms:      # u: a' -> a in C appears as a -> a' in C^op
        for v in C.morphisms:  # v: b -> b'
            key = pair_tag(u, v)
            a = C.tgt[u]
            b = C.src[v]
            fn = {}
            for phi in at[pair_tag(a, b)]:
                fn[phi] = D.table[(G.mor_map[v], D.table[(phi, F.mor_map[u])])]
            action[key] = fn
    return SetValuedDiagram(shape, at, action)


def hom_functor(C: FinCat) -> SetValuedDiagram:
    from .fincat import identity_functor

    i = identity_functor(C)
    return hom_diagram(C, C, i, i)


@dataclass(frozen=True)
class NatSet:
    elements: FinSet
    families: dict[str, dict[str, str]]  # element -> (object -> component)


def _nat_tag(C: FinCat, family: dict[str, str]) -> str:
    return "{" + "|".join(f"{a}={family[a]}" for a in C.objects) + "}"


def nat_set_via_end(F: FinFunctor, G: FinFunctor) -> NatSet:
    """Natural transformations F -> G as the end of hom_D(F-, G-); wedge
    elements decode to component families via the identity components."""
    C = F.dom
    res = end_of(C, hom_diagram(C, F.cod, F, G))
    families = {}
    for el in res.apex:
        fam = {a: res.projections[C.identity[a]][el] for a in C.objects}
        families[_nat_tag(C, fam)] = fam
    elements = FinSet(tuple(sorted(families)))
    return NatSet(elements, families)


def brute_nat_set(F: FinFunctor, G: FinFunctor) -> NatSet:
    """Independent oracle: exhaustive component families checked against the
    full composition table."""
    C, D = F.dom, F.cod
    objs = list(C.objects)
    found: list[dict[str, str]] = []

    def rec(family, i):
        if i == len(objs):
            found.append(dict(family))
            return
        a = objs[i]
        for c in D.hom(F.obj_map[a], G.obj_map[a]):
            family[a] = c
            if all(
                D.table[(G.mor_map[m], family[C.src[m]])]
                == D.table[(family[C.tgt[m]], F.mor_map[m])]
                for m in C.morphisms
                if C.src[m] in family and C.tgt[m] in family
            ):
                rec(family, i + 1)
            del family[a]

    rec({}, 0)
    families = {_nat_tag(C, fam): fam for fam in found}
    return NatSet(FinSet(tuple(sorted(families))), families)


def nat_set_to_transformations(F: FinFunctor, G: FinFunctor, ns: NatSet) -> list[NatTrans]:
    return [NatTrans(F, G, dict(fam)) for _el, fam in sorted(ns.families.items())]
