"""Finite-set-valued presheaves and diagrams: limits, colimits, hom-sets,
restriction, and left Kan extension.

Presheaf categories are never materialized; individual presheaves are handled
one at a time. Computed sets carry structured element tags (origin object,
original element) flattened to strings, and colimit classes are named by the
minimal node of their component, so serialized output is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnknownObject
from .fincat import FinCat, FinFunctor, comma, constant_functor, opposite, same_cat
from .zoo import terminal


@dataclass(frozen=True)
class FinSet:
    elements: tuple[str, ...]

    def __post_init__(self):
        assert len(set(self.elements)) == len(self.elements), "duplicate elements"

    def __len__(self):
        return len(self.elements)

    def __contains__(self, e):
        return e in set(self.elements)

    def __iter__(self):
        return iter(self.elements)


EMPTY = FinSet(())


@dataclass(frozen=True, eq=False)
class Presheaf:
    """Contravariant FinSet-valued functor: action[m] maps at(tgt m) -> at(src m)."""

    base: FinCat
    at: dict[str, FinSet]
    action: dict[str, dict[str, str]]


@dataclass(frozen=True, eq=False)
class SetValuedDiagram:
    """Covariant FinSet-valued functor: action[m] maps at(src m) -> at(tgt m)."""

    shape: FinCat
    at: dict[str, FinSet]
    action: dict[str, dict[str, str]]


def _check_functorial(cat: FinCat, at, action, contravariant: bool) -> list[str]:
    bad = []
    for x in cat.objects:
        if x not in at:
            bad.append(f"no value at {x}")
    for m in cat.morphisms:
        a, b = cat.src[m], cat.tgt[m]
        dom, cod = (b, a) if contravariant else (a, b)
        fn = action.get(m)
        if fn is None:
            bad.append(f"no action at {m}")
            continue
        if set(fn) != set(at[dom].elements):
            bad.append(f"action at {m} not defined on exactly the value at {dom}")
            continue
        if not set(fn.values()) <= set(at[cod].elements):
            bad.append(f"action at {m} does not land in the value at {cod}")
    if bad:
        return bad
    for x in cat.objects:
        i = cat.identity[x]
        if any(action[i][e] != e for e in at[x]):
            bad.append(f"action at id_{x} is not the identity")
    for (g, f), h in cat.table.items():
        if contravariant:
            for e in at[cat.tgt[g]]:
                if action[f][action[g][e]] != action[h][e]:
                    bad.append(f"contravariance fails at ({g}, {f})")
                    break
        else:
            for e in at[cat.src[f]]:
                if action[g][action[f][e]] != action[h][e]:
                    bad.append(f"covariance fails at ({g}, {f})")
                    break
    return bad


def validate_presheaf(P: Presheaf):
    return _check_functorial(P.base, P.at, P.action, contravariant=True)


def validate_diagram(D: SetValuedDiagram):
    return _check_functorial(D.shape, D.at, D.action, contravariant=False)


# ---------------------------------------------------------------------------
# basic constructions


def yoneda(C: FinCat, X: str) -> Presheaf:
    """hom(-, X) with action by precomposition."""
    if X not in set(C.objects):
        raise UnknownObject(X)
    at = {a: FinSet(C.hom(a, X)) for a in C.objects}
    action = {
        m: {e: C.table[(e, m)] for e in at[C.tgt[m]]} for m in C.morphisms
    }
    return Presheaf(C, at, action)


def constant_presheaf(C: FinCat, S: FinSet) -> Presheaf:
    return Presheaf(
        C,
        {a: S for a in C.objects},
        {m: {e: e for e in S} for m in C.morphisms},
    )


def corepresentable_diagram(C: FinCat, X: str) -> SetValuedDiagram:
    """hom(X, -) with action by postcomposition."""
    if X not in set(C.objects):
        raise UnknownObject(X)
    at = {a: FinSet(C.hom(X, a)) for a in C.objects}
    action = {m: {e: C.table[(m, e)] for e in at[C.src[m]]} for m in C.morphisms}
    return SetValuedDiagram(C, at, action)


# ---------------------------------------------------------------------------
# limits and colimits


@dataclass(frozen=True)
class LimitResult:
    apex: FinSet
    projections: dict[str, dict[str, str]]  # object -> (apex element -> value)


@dataclass(frozen=True)
class ColimitResult:
    coapex: FinSet
    injections: dict[str, dict[str, str]]  # object -> (element -> class)


def _family_tag(shape_objects, family) -> str:
    return "{" + "|".join(f"{x}={family[x]}" for x in shape_objects) + "}"


def limit_set_valued(D: SetValuedDiagram) -> LimitResult:
    """Compatible families, by backtracking with forward propagation along
    the diagram's action maps. The empty diagram has a singleton limit.
    """
    shape = D.shape
    objs = list(shape.objects)
    out_mor: dict[str, list[str]] = {x: [] for x in objs}
    for m in shape.morphisms:
        out_mor[shape.src[m]].append(m)

    families: list[dict[str, str]] = []

    def consistent(family, x) -> bool:
        # all constraints whose endpoints are both assigned and involve x
        for m in shape.morphisms:
            s, t = shape.src[m], shape.tgt[m]
            if (s == x or t == x) and s in family and t in family:
                if D.action[m][family[s]] != family[t]:
                    return False
        return True

    def propagate(family, x):
        """Force values along morphisms out of x; returns assigned keys or
        None on conflict."""
        added = []
        queue = [x]
        while queue:
            s = queue.pop()
            for m in out_mor[s]:
                t = shape.tgt[m]
                v = D.action[m][family[s]]
                if t in family:
                    if family[t] != v:
                        for k in added:
                            del family[k]
                        return None
                else:
                    family[t] = v
                    added.append(t)
                    if not consistent(family, t):
                        for k in added:
                            del family[k]
                        return None
                    queue.append(t)
        return added

    def rec(family, i):
        while i < len(objs) and objs[i] in family:
            i += 1
        if i == len(objs):
            families.append(dict(family))
            return
        x = objs[i]
        for e in D.at[x]:
            family[x] = e
            if consistent(family, x):
                added = propagate(family, x)
                if added is not None:
                    rec(family, i + 1)
                    for k in added:
                        del family[k]
            del family[x]

    rec({}, 0)
    families.sort(key=lambda fam: tuple(fam[x] for x in objs))
    apex = FinSet(tuple(_family_tag(objs, fam) for fam in families))
    projections = {
        x: {_family_tag(objs, fam): fam[x] for fam in families} for x in objs
    }
    return LimitResult(apex, projections)


def _class_tag(node) -> str:
    return f"[{node[0]}.{node[1]}]"


def colimit_set_valued(D: SetValuedDiagram) -> ColimitResult:
    """Disjoint union of the values modulo e ~ action(m)(e), computed as
    connected components of the element-transition graph."""
    shape = D.shape
    nodes = [(x, e) for x in shape.objects for e in D.at[x]]
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

    for m in shape.morphisms:
        s = shape.src[m]
        for e in D.at[s]:
            union((s, e), (shape.tgt[m], D.action[m][e]))

    reps = sorted({find(n) for n in nodes})
    coapex = FinSet(tuple(_class_tag(r) for r in reps))
    injections = {
        x: {e: _class_tag(find((x, e))) for e in D.at[x]} for x in shape.objects
    }
    return ColimitResult(coapex, injections)


# ---------------------------------------------------------------------------
# presheaf morphisms


def presheaf_morphisms(P: Presheaf, Q: Presheaf) -> list[dict[str, dict[str, str]]]:
    """All families of functions P(a) -> Q(a) commuting with the actions,
    by exhaustive construction with pruning."""
    assert same_cat(P.base, Q.base)
    C = P.base
    objs = list(C.objects)
    out: list[dict[str, dict[str, str]]] = []

    def candidates(a):
        dom = list(P.at[a])
        cods = list(Q.at[a])
        if not dom:
            yield {}
            return
        if not cods:
            return
        idx = [0] * len(dom)
        while True:
            yield {dom[i]: cods[idx[i]] for i in range(len(dom))}
            j = len(dom) - 1
            while j >= 0:
                idx[j] += 1
                if idx[j] < len(cods):
                    break
                idx[j] = 0
                j -= 1
            if j < 0:
                return

    def natural_so_far(fam):
        for m in C.morphisms:
            a, b = C.src[m], C.tgt[m]  # action: at(b) -> at(a)
            if a in fam and b in fam:
                for e in P.at[b]:
                    if fam[a][P.action[m][e]] != Q.action[m][fam[b][e]]:
                        return False
        return True

    def rec(fam, i):
        if i == len(objs):
            out.append({a: dict(fn) for a, fn in fam.items()})
            return
        a = objs[i]
        for fn in candidates(a):
            fam[a] = fn
            if natural_so_far(fam):
                rec(fam, i + 1)
            del fam[a]

    rec({}, 0)
    return out


def _morphism_tag(C, fam) -> str:
    parts = []
    for a in C.objects:
        inner = ",".join(f"{e}>{fam[a][e]}" for e in sorted(fam[a]))
        parts.append(f"{a}:{inner}")
    return "{" + "|".join(parts) + "}"


def presheaf_hom(P: Presheaf, Q: Presheaf) -> FinSet:
    fams = presheaf_morphisms(P, Q)
    return FinSet(tuple(sorted(_morphism_tag(P.base, fam) for fam in fams)))


def find_presheaf_iso(P: Presheaf, Q: Presheaf):
    """An isomorphism of presheaves (bijections commuting with actions), or
    None; exhaustive backtracking per object."""
    assert same_cat(P.base, Q.base)
    C = P.base
    for a in C.objects:
        if len(P.at[a]) != len(Q.at[a]):
            return None
    objs = list(C.objects)

    def bijections(a):
        dom = list(P.at[a])
        cods = list(Q.at[a])
        from itertools import permutations

        for perm in permutations(cods):
            yield dict(zip(dom, perm))

    def natural_so_far(fam):
        for m in C.morphisms:
            a, b = C.src[m], C.tgt[m]
            if a in fam and b in fam:
                for e in P.at[b]:
                    if fam[a][P.action[m][e]] != Q.action[m][fam[b][e]]:
                        return False
        return True

    def rec(fam, i):
        if i == len(objs):
            return {a: dict(fn) for a, fn in fam.items()}
        a = objs[i]
        for fn in bijections(a):
            fam[a] = fn
            if natural_so_far(fam):
                res = rec(fam, i + 1)
                if res is not None:
                    return res
            del fam[a]
        return None

    return rec({}, 0)


# ---------------------------------------------------------------------------
# restriction and left Kan extension


def restrict(F: FinFunctor, P: Presheaf) -> Presheaf:
    """Restriction along F: value at c is P(F c)."""
    assert same_cat(F.cod, P.base)
    C = F.dom
    return Presheaf(
        C,
        {c: P.at[F.obj_map[c]] for c in C.objects},
        {m: dict(P.action[F.mor_map[m]]) for m in C.morphisms},
    )


def restrict_diagram(D: SetValuedDiagram, F: FinFunctor) -> SetValuedDiagram:
    """Precompose a covariant diagram with a functor into its shape."""
    assert same_cat(F.cod, D.shape)
    C = F.dom
    return SetValuedDiagram(
        C,
        {c: D.at[F.obj_map[c]] for c in C.objects},
        {m: dict(D.action[F.mor_map[m]]) for m in C.morphisms},
    )


@dataclass(frozen=True)
class LeftKanResult:
    presheaf: Presheaf
    # unit of the adjunction: c -> (e in P(c) -> class element at F(c))
    unit: dict[str, dict[str, str]]


def left_kan(F: FinFunctor, P: Presheaf) -> Presheaf:
    return left_kan_with_unit(F, P).presheaf


def left_kan_with_unit(F: FinFunctor, P: Presheaf) -> LeftKanResult:
    """Left Kan extension of P along F, pointwise: the value at d is the
    colimit over the comma category (d down F) of the P-values, i.e. classes
    of pairs (alpha: d -> F c, e in P(c)) under the zig-zag closure of
    (alpha, P(u)(e')) ~ (F(u) . alpha, e').
    """
    assert same_cat(F.dom, P.base)
    C, D = F.dom, F.cod
    T = terminal()

    value: dict[str, FinSet] = {}
    # d -> (c, alpha, e) -> class; keyed by c as well since F need not be
    # injective on objects
    classify: dict[str, dict[tuple[str, str, str], str]] = {}
    for d in D.objects:
        cm = comma(constant_functor(T, D, d), F)
        # comma objects are tagged (*, c, alpha); build the covariant diagram
        # on the opposite comma with values P(c)
        shape = opposite(cm.cat)
        at = {o: P.at[cm.proj_right.obj_map[o]] for o in shape.objects}
        action = {}
        for m in shape.morphisms:
            u = cm.proj_right.mor_map[m]  # u: c -> c' in C for the comma arrow
            action[m] = dict(P.action[u])
        colim = colimit_set_valued(SetValuedDiagram(shape, at, action))
        value[d] = colim.coapex
        cl = {}
        for o in shape.objects:
            c = cm.proj_right.obj_map[o]
            alpha = _comma_arrow(o)
            for e in P.at[c]:
                cl[(c, alpha, e)] = colim.injections[o][e]
        classify[d] = cl

    action: dict[str, dict[str, str]] = {}
    # pick one (c, alpha, e) representative per class to transport along v
    reps: dict[str, dict[str, tuple[str, str, str]]] = {}
    for d in D.objects:
        reps[d] = {}
        for key, cls in sorted(classify[d].items()):
            reps[d].setdefault(cls, key)
    for v in D.morphisms:
        d1, d2 = D.src[v], D.tgt[v]  # action maps value[d2] -> value[d1]
        fn = {}
        for cls, (c, alpha, e) in reps[d2].items():
            fn[cls] = classify[d1][(c, D.table[(alpha, v)], e)]
        action[v] = fn
    unit = {
        c: {
            e: classify[F.obj_map[c]][(c, D.identity[F.obj_map[c]], e)]
            for e in P.at[c]
        }
        for c in C.objects
    }
    return LeftKanResult(Presheaf(D, value, action), unit)


def _comma_arrow(comma_obj_tag: str) -> str:
    """Extract the arrow component from a comma object tag (a,b,f)."""
    body = comma_obj_tag[1:-1]
    depth = 0
    cuts = []
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            cuts.append(i)
    assert len(cuts) == 2, comma_obj_tag
    return body[cuts[1] + 1 :]


def direct_sum(presheaves: list[Presheaf]) -> Presheaf:
    """Pointwise disjoint union, elements tagged by summand index. Always a
    valid presheaf; sums of representables are the test corpus workhorse."""
    assert presheaves
    C = presheaves[0].base
    assert all(same_cat(P.base, C) for P in presheaves)

    def tagd(i, e):
        return f"{i}#{e}"

    at = {
        x: FinSet(tuple(tagd(i, e) for i, P in enumerate(presheaves) for e in P.at[x]))
        for x in C.objects
    }
    action = {}
    for m in C.morphisms:
        fn = {}
        for i, P in enumerate(presheaves):
            for e in P.at[C.tgt[m]]:
                fn[tagd(i, e)] = tagd(i, P.action[m][e])
        action[m] = fn
    return Presheaf(C, at, action)


def empty_presheaf(C: FinCat) -> Presheaf:
    return Presheaf(C, {x: EMPTY for x in C.objects}, {m: {} for m in C.morphisms})


def colimit_of_presheaf(P: Presheaf) -> FinSet:
    """The coend of a presheaf: components of all elements under the actions."""
    # reuse the colimit machinery over the opposite base
    D = SetValuedDiagram(
        opposite(P.base),
        {x: P.at[x] for x in P.base.objects},
        {m: dict(P.action[m]) for m in P.base.morphisms},
    )
    return colimit_set_valued(D).coapex
