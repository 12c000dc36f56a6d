"""Finite categories given by total composition tables, and the exhaustive
search utilities (functor enumeration, equivalence checks, iso search over a
base) that every other module leans on.

Identifiers are opaque strings; every constructed category derives its ids
from its inputs' ids, so witnesses stay readable and golden files stable.
All values are immutable after construction and every operation is a pure
function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .errors import CapExceeded


# ---------------------------------------------------------------------------
# core types


@dataclass(frozen=True, eq=False)
class FinCat:
    """A finite category: object ids, morphism ids with endpoints, a named
    identity per object, and a total composition table on composable pairs.

    ``table[(g, f)]`` is g after f, defined exactly when tgt(f) = src(g).
    """

    name: str
    objects: tuple[str, ...]
    morphisms: tuple[str, ...]
    src: dict[str, str]
    tgt: dict[str, str]
    identity: dict[str, str]
    table: dict[tuple[str, str], str]

    def compose(self, g: str, f: str) -> str:
        return self.table[(g, f)]

    def is_identity(self, m: str) -> bool:
        return self.identity.get(self.src[m]) == m

    @cached_property
    def hom_table(self) -> dict[tuple[str, str], tuple[str, ...]]:
        homs: dict[tuple[str, str], list[str]] = {
            (a, b): [] for a in self.objects for b in self.objects
        }
        for m in self.morphisms:
            homs[(self.src[m], self.tgt[m])].append(m)
        return {k: tuple(v) for k, v in homs.items()}

    def hom(self, a: str, b: str) -> tuple[str, ...]:
        return self.hom_table[(a, b)]

    @cached_property
    def inverse_table(self) -> dict[str, str]:
        """m -> two-sided inverse, for the morphisms that have one."""
        inv = {}
        for m in self.morphisms:
            a, b = self.src[m], self.tgt[m]
            for w in self.hom(b, a):
                if (
                    self.table.get((w, m)) == self.identity[a]
                    and self.table.get((m, w)) == self.identity[b]
                ):
                    inv[m] = w
                    break
        return inv

    def is_iso(self, m: str) -> bool:
        return m in self.inverse_table

    def __repr__(self):
        return f"FinCat({self.name!r}, {len(self.objects)} objects, {len(self.morphisms)} morphisms)"


@dataclass(frozen=True, eq=False)
class FinFunctor:
    dom: FinCat
    cod: FinCat
    obj_map: dict[str, str]
    mor_map: dict[str, str]

    def on_obj(self, a: str) -> str:
        return self.obj_map[a]

    def on_mor(self, m: str) -> str:
        return self.mor_map[m]

    def signature(self) -> tuple:
        """Hashable structural identity, for dedup and comparison."""
        return (
            tuple(sorted(self.obj_map.items())),
            tuple(sorted(self.mor_map.items())),
        )

    def __repr__(self):
        return f"FinFunctor({self.dom.name} -> {self.cod.name})"


@dataclass(frozen=True, eq=False)
class NatTrans:
    src: FinFunctor
    tgt: FinFunctor
    components: dict[str, str]

    def signature(self) -> tuple:
        return tuple(sorted(self.components.items()))


@dataclass(frozen=True, eq=False)
class CatOverBase:
    """A functor p: total -> base regarded as an object of Cat over the base."""

    total: FinCat
    base: FinCat
    proj: FinFunctor

    def __repr__(self):
        return f"CatOverBase({self.total.name} over {self.base.name})"


def same_cat(C: FinCat, D: FinCat) -> bool:
    """Structural equality, ignoring the display name."""
    return (
        C is D
        or (
            C.objects == D.objects
            and C.morphisms == D.morphisms
            and C.src == D.src
            and C.tgt == D.tgt
            and C.identity == D.identity
            and C.table == D.table
        )
    )


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]


@dataclass(frozen=True)
class IsoClassPartition:
    blocks: tuple[tuple[str, ...], ...]
    witness: dict[tuple[str, str], tuple[str, str]]  # (a,b) -> (iso a->b, inverse)


@dataclass(frozen=True)
class AutGroup:
    obj: str
    carrier: tuple[str, ...]
    table: dict[tuple[str, str], str]
    inverse: dict[str, str]
    unit: str


# ---------------------------------------------------------------------------
# validation


def validate(C: FinCat) -> ValidationReport:
    """List every violated category axiom; an empty list certifies validity."""
    bad: list[str] = []
    if len(set(C.objects)) != len(C.objects):
        bad.append("duplicate object identifiers")
    if len(set(C.morphisms)) != len(C.morphisms):
        bad.append("duplicate morphism identifiers")
    objset, morset = set(C.objects), set(C.morphisms)
    for m in C.morphisms:
        if m not in C.src or m not in C.tgt:
            bad.append(f"morphism {m} has no endpoints")
        elif C.src[m] not in objset or C.tgt[m] not in objset:
            bad.append(f"morphism {m} has dangling endpoints")
    for x in C.objects:
        i = C.identity.get(x)
        if i is None or i not in morset:
            bad.append(f"object {x} has no identity morphism")
        elif C.src.get(i) != x or C.tgt.get(i) != x:
            bad.append(f"identity of {x} is not an endomorphism of {x}")
    if bad:
        return ValidationReport(False, tuple(bad))

    composable = {
        (g, f)
        for f in C.morphisms
        for g in C.morphisms
        if C.tgt[f] == C.src[g]
    }
    for pair in composable:
        g, f = pair
        h = C.table.get(pair)
        if h is None:
            bad.append(f"composable pair ({g}, {f}) missing from table")
        elif h not in morset:
            bad.append(f"table entry ({g}, {f}) = {h} is not a morphism")
        elif C.src[h] != C.src[f] or C.tgt[h] != C.tgt[g]:
            bad.append(f"table entry ({g}, {f}) = {h} has wrong endpoints")
    for pair in C.table:
        if pair not in composable:
            bad.append(f"table entry {pair} is not a composable pair")
    if bad:
        return ValidationReport(False, tuple(bad))

    for m in C.morphisms:
        if C.table[(m, C.identity[C.src[m]])] != m:
            bad.append(f"right identity law fails at {m}")
        if C.table[(C.identity[C.tgt[m]], m)] != m:
            bad.append(f"left identity law fails at {m}")
    # associativity over all composable triples
    for f in C.morphisms:
        for g in C.morphisms:
            if C.src[g] != C.tgt[f]:
                continue
            gf = C.table[(g, f)]
            for h in C.morphisms:
                if C.src[h] != C.tgt[g]:
                    continue
                if C.table[(h, gf)] != C.table[(C.table[(h, g)], f)]:
                    bad.append(f"associativity fails at ({h}, {g}, {f})")
    return ValidationReport(not bad, tuple(bad))


def validate_functor(F: FinFunctor) -> ValidationReport:
    bad = []
    C, D = F.dom, F.cod
    for a in C.objects:
        if F.obj_map.get(a) not in set(D.objects):
            bad.append(f"object {a} not mapped to an object")
    for m in C.morphisms:
        n = F.mor_map.get(m)
        if n not in set(D.morphisms):
            bad.append(f"morphism {m} not mapped to a morphism")
            continue
        if D.src[n] != F.obj_map.get(C.src[m]) or D.tgt[n] != F.obj_map.get(C.tgt[m]):
            bad.append(f"morphism {m} maps to {n} with wrong endpoints")
    if bad:
        return ValidationReport(False, tuple(bad))
    for x in C.objects:
        if F.mor_map[C.identity[x]] != D.identity[F.obj_map[x]]:
            bad.append(f"identity of {x} not preserved")
    for (g, f), h in C.table.items():
        if D.table[(F.mor_map[g], F.mor_map[f])] != F.mor_map[h]:
            bad.append(f"composition ({g}, {f}) not preserved")
    return ValidationReport(not bad, tuple(bad))


def validate_nat_trans(eta: NatTrans) -> ValidationReport:
    bad = []
    F, G = eta.src, eta.tgt
    if not (same_cat(F.dom, G.dom) and same_cat(F.cod, G.cod)):
        return ValidationReport(False, ("source and target functors not parallel",))
    C, D = F.dom, F.cod
    for a in C.objects:
        c = eta.components.get(a)
        if c is None or c not in set(D.morphisms):
            bad.append(f"no component at {a}")
        elif D.src[c] != F.obj_map[a] or D.tgt[c] != G.obj_map[a]:
            bad.append(f"component at {a} has wrong endpoints")
    if bad:
        return ValidationReport(False, tuple(bad))
    for m in C.morphisms:
        a, b = C.src[m], C.tgt[m]
        lhs = D.table[(G.mor_map[m], eta.components[a])]
        rhs = D.table[(eta.components[b], F.mor_map[m])]
        if lhs != rhs:
            bad.append(f"naturality fails at {m}")
    return ValidationReport(not bad, tuple(bad))


# ---------------------------------------------------------------------------
# constructions


def opposite(C: FinCat) -> FinCat:
    """Reverse every morphism; table entries swap their arguments."""
    return FinCat(
        name=f"op({C.name})",
        objects=C.objects,
        morphisms=C.morphisms,
        src=dict(C.tgt),
        tgt=dict(C.src),
        identity=dict(C.identity),
        table={(f, g): h for (g, f), h in C.table.items()},
    )


def pair_tag(x: str, y: str) -> str:
    return f"({x},{y})"


def product(C: FinCat, D: FinCat) -> FinCat:
    objects = tuple(pair_tag(a, b) for a in C.objects for b in D.objects)
    morphisms = tuple(pair_tag(m, n) for m in C.morphisms for n in D.morphisms)
    src = {}
    tgt = {}
    for m in C.morphisms:
        for n in D.morphisms:
            mn = pair_tag(m, n)
            src[mn] = pair_tag(C.src[m], D.src[n])
            tgt[mn] = pair_tag(C.tgt[m], D.tgt[n])
    identity = {
        pair_tag(a, b): pair_tag(C.identity[a], D.identity[b])
        for a in C.objects
        for b in D.objects
    }
    table = {}
    for (g, f), h in C.table.items():
        for (gg, ff), hh in D.table.items():
            table[(pair_tag(g, gg), pair_tag(f, ff))] = pair_tag(h, hh)
    return FinCat(f"({C.name}x{D.name})", objects, morphisms, src, tgt, identity, table)


def product_projections(C: FinCat, D: FinCat, P: FinCat | None = None):
    P = P if P is not None else product(C, D)
    fst = FinFunctor(
        P, C,
        {pair_tag(a, b): a for a in C.objects for b in D.objects},
        {pair_tag(m, n): m for m in C.morphisms for n in D.morphisms},
    )
    snd = FinFunctor(
        P, D,
        {pair_tag(a, b): b for a in C.objects for b in D.objects},
        {pair_tag(m, n): n for m in C.morphisms for n in D.morphisms},
    )
    return P, fst, snd


def coproduct(C: FinCat, D: FinCat) -> FinCat:
    def l(x):
        return f"0.{x}"

    def r(x):
        return f"1.{x}"

    objects = tuple(l(a) for a in C.objects) + tuple(r(b) for b in D.objects)
    morphisms = tuple(l(m) for m in C.morphisms) + tuple(r(m) for m in D.morphisms)
    src = {l(m): l(C.src[m]) for m in C.morphisms} | {r(m): r(D.src[m]) for m in D.morphisms}
    tgt = {l(m): l(C.tgt[m]) for m in C.morphisms} | {r(m): r(D.tgt[m]) for m in D.morphisms}
    identity = {l(a): l(C.identity[a]) for a in C.objects} | {
        r(b): r(D.identity[b]) for b in D.objects
    }
    table = {(l(g), l(f)): l(h) for (g, f), h in C.table.items()} | {
        (r(g), r(f)): r(h) for (g, f), h in D.table.items()
    }
    return FinCat(f"({C.name}+{D.name})", objects, morphisms, src, tgt, identity, table)


def triple_tag(a: str, b: str, f: str) -> str:
    return f"({a},{b},{f})"


@dataclass(frozen=True, eq=False)
class CommaCat:
    cat: FinCat
    proj_left: FinFunctor
    proj_right: FinFunctor


def comma(F: FinFunctor, G: FinFunctor) -> CommaCat:
    """The comma category (F down G): objects (a, b, f: F a -> G b), morphisms
    pairs (u, v) making the evident square commute. Both projections returned.
    """
    assert same_cat(F.cod, G.cod), "comma requires a shared codomain"
    A, B, C = F.dom, G.dom, F.cod
    objects = []
    for a in A.objects:
        for b in B.objects:
            for f in C.hom(F.obj_map[a], G.obj_map[b]):
                objects.append(triple_tag(a, b, f))
    obj_data = {triple_tag(a, b, f): (a, b, f) for a in A.objects for b in B.objects
                for f in C.hom(F.obj_map[a], G.obj_map[b])}
    morphisms = []
    src = {}
    tgt = {}
    mor_data = {}
    for o1, (a1, b1, f1) in obj_data.items():
        for o2, (a2, b2, f2) in obj_data.items():
            for u in A.hom(a1, a2):
                for v in B.hom(b1, b2):
                    # square: f2 . F(u) = G(v) . f1
                    if C.table[(f2, F.mor_map[u])] == C.table[(G.mor_map[v], f1)]:
                        mid = f"({u},{v})@{o1}"
                        morphisms.append(mid)
                        src[mid] = o1
                        tgt[mid] = o2
                        mor_data[mid] = (u, v)
    identity = {
        o: f"({A.identity[a]},{B.identity[b]})@{o}" for o, (a, b, _f) in obj_data.items()
    }
    table = {}
    for m1 in morphisms:
        for m2 in morphisms:
            if tgt[m1] != src[m2]:
                continue
            u1, v1 = mor_data[m1]
            u2, v2 = mor_data[m2]
            table[(m2, m1)] = f"({A.table[(u2, u1)]},{B.table[(v2, v1)]})@{src[m1]}"
    cat = FinCat(
        f"comma({F.dom.name},{G.dom.name})",
        tuple(objects), tuple(morphisms), src, tgt, identity, table,
    )
    proj_left = FinFunctor(
        cat, A,
        {o: a for o, (a, _b, _f) in obj_data.items()},
        {m: mor_data[m][0] for m in morphisms},
    )
    proj_right = FinFunctor(
        cat, B,
        {o: b for o, (_a, b, _f) in obj_data.items()},
        {m: mor_data[m][1] for m in morphisms},
    )
    return CommaCat(cat, proj_left, proj_right)


def pullback_cat(p: FinFunctor, q: FinFunctor) -> tuple[FinCat, FinFunctor, FinFunctor]:
    """Strict pullback of two functors with common codomain."""
    assert same_cat(p.cod, q.cod)
    A, B = p.dom, q.dom
    objects = tuple(
        pair_tag(a, b)
        for a in A.objects
        for b in B.objects
        if p.obj_map[a] == q.obj_map[b]
    )
    morphisms = []
    src = {}
    tgt = {}
    for m in A.morphisms:
        for n in B.morphisms:
            if p.mor_map[m] != q.mor_map[n]:
                continue
            mn = pair_tag(m, n)
            morphisms.append(mn)
            src[mn] = pair_tag(A.src[m], B.src[n])
            tgt[mn] = pair_tag(A.tgt[m], B.tgt[n])
    identity = {
        pair_tag(a, b): pair_tag(A.identity[a], B.identity[b])
        for a in A.objects
        for b in B.objects
        if p.obj_map[a] == q.obj_map[b]
    }
    table = {}
    for (g, f), h in A.table.items():
        for (gg, ff), hh in B.table.items():
            if (
                p.mor_map[g] == q.mor_map[gg]
                and p.mor_map[f] == q.mor_map[ff]
            ):
                table[(pair_tag(g, gg), pair_tag(f, ff))] = pair_tag(h, hh)
    cat = FinCat(f"pb({A.name},{B.name})", tuple(objects), tuple(morphisms), src, tgt, identity, table)
    to_a = FinFunctor(cat, A, {o: _split_pair(o)[0] for o in objects},
                      {m: _split_pair(m)[0] for m in morphisms})
    to_b = FinFunctor(cat, B, {o: _split_pair(o)[1] for o in objects},
                      {m: _split_pair(m)[1] for m in morphisms})
    return cat, to_a, to_b


def _split_pair(tag: str) -> tuple[str, str]:
    """Invert pair_tag: split at the comma whose parenthesis depth is 1."""
    assert tag.startswith("(") and tag.endswith(")")
    body = tag[1:-1]
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return body[:i], body[i + 1 :]
    raise ValueError(f"not a pair tag: {tag}")


def identity_functor(C: FinCat) -> FinFunctor:
    return FinFunctor(C, C, {a: a for a in C.objects}, {m: m for m in C.morphisms})


def constant_functor(C: FinCat, D: FinCat, X: str) -> FinFunctor:
    return FinFunctor(
        C, D, {a: X for a in C.objects}, {m: D.identity[X] for m in C.morphisms}
    )


def compose_functors(G: FinFunctor, F: FinFunctor) -> FinFunctor:
    assert same_cat(F.cod, G.dom)
    return FinFunctor(
        F.dom,
        G.cod,
        {a: G.obj_map[F.obj_map[a]] for a in F.dom.objects},
        {m: G.mor_map[F.mor_map[m]] for m in F.dom.morphisms},
    )


def op_functor(F: FinFunctor, Cop: FinCat, Dop: FinCat) -> FinFunctor:
    """The same maps read as a functor between the opposites."""
    return FinFunctor(Cop, Dop, dict(F.obj_map), dict(F.mor_map))


def subcategory(C: FinCat, objects, morphisms, name=None) -> FinCat:
    """The subcategory on the given ids; caller guarantees closure."""
    objects = tuple(o for o in C.objects if o in set(objects))
    morphisms = tuple(m for m in C.morphisms if m in set(morphisms))
    morset = set(morphisms)
    return FinCat(
        name or f"sub({C.name})",
        objects,
        morphisms,
        {m: C.src[m] for m in morphisms},
        {m: C.tgt[m] for m in morphisms},
        {o: C.identity[o] for o in objects},
        {(g, f): h for (g, f), h in C.table.items() if g in morset and f in morset},
    )


# ---------------------------------------------------------------------------
# iso classes, automorphisms, core


def iso_classes(C: FinCat) -> IsoClassPartition:
    parent = {o: o for o in C.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    iso_edges = {}  # (a,b) -> iso a->b, first in id order
    for m in C.morphisms:
        if C.is_iso(m):
            key = (C.src[m], C.tgt[m])
            iso_edges.setdefault(key, m)
            ra, rb = find(C.src[m]), find(C.tgt[m])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    blocks_by_root: dict[str, list[str]] = {}
    for o in C.objects:
        blocks_by_root.setdefault(find(o), []).append(o)
    blocks = tuple(tuple(v) for _k, v in sorted(blocks_by_root.items()))

    # witness isos between every ordered pair in a block, by BFS over iso edges
    witness: dict[tuple[str, str], tuple[str, str]] = {}
    for block in blocks:
        for a in block:
            # BFS from a composing isos as we go
            reached = {a: C.identity[a]}
            frontier = [a]
            while frontier:
                x = frontier.pop(0)
                for (s, t), m in iso_edges.items():
                    if s == x and t not in reached:
                        reached[t] = C.table[(m, reached[x])]
                        frontier.append(t)
                    if t == x and s not in reached:
                        reached[s] = C.table[(C.inverse_table[m], reached[x])]
                        frontier.append(s)
            for b in block:
                if b != a:
                    iso = reached[b]
                    witness[(a, b)] = (iso, C.inverse_table[iso])
    return IsoClassPartition(blocks, witness)


def aut_group(C: FinCat, X: str) -> AutGroup:
    carrier = tuple(m for m in C.hom(X, X) if C.is_iso(m))
    table = {(g, f): C.table[(g, f)] for g in carrier for f in carrier}
    inverse = {m: C.inverse_table[m] for m in carrier}
    return AutGroup(X, carrier, table, inverse, C.identity[X])


def core(C: FinCat) -> FinCat:
    return subcategory(
        C, C.objects, [m for m in C.morphisms if C.is_iso(m)], name=f"core({C.name})"
    )


# ---------------------------------------------------------------------------
# functor enumeration


def enumerate_functors(C: FinCat, D: FinCat, cap: int = 10000) -> list[FinFunctor]:
    """All functors C -> D by backtracking: object maps first, then morphism
    maps with early pruning on the composition table. Deterministic order.
    Raises CapExceeded once more than ``cap`` functors are found.
    """
    return _enumerate_functors_constrained(C, D, cap, None)


def enumerate_functors_over_base(
    p: CatOverBase, q: CatOverBase, cap: int = 10000
) -> list[FinFunctor]:
    """All functors total(p) -> total(q) strictly over the common base."""
    assert same_cat(p.base, q.base)

    def constraint(kind, x, y):
        if kind == "obj":
            return p.proj.obj_map[x] == q.proj.obj_map[y]
        return p.proj.mor_map[x] == q.proj.mor_map[y]

    return _enumerate_functors_constrained(p.total, q.total, cap, constraint)


def _enumerate_functors_constrained(C, D, cap, constraint) -> list[FinFunctor]:
    found: list[FinFunctor] = []
    non_id = [m for m in C.morphisms if not C.is_identity(m)]
    # composition constraints among non-identity morphisms
    comp = [((g, f), h) for (g, f), h in C.table.items()]

    def mor_search(obj_map, mor_map, i):
        if i == len(non_id):
            if len(found) >= cap:
                raise CapExceeded(cap, f"functors {C.name} -> {D.name}")
            found.append(FinFunctor(C, D, dict(obj_map), dict(mor_map)))
            return
        m = non_id[i]
        cands = D.hom(obj_map[C.src[m]], obj_map[C.tgt[m]])
        for n in cands:
            if constraint is not None and not constraint("mor", m, n):
                continue
            mor_map[m] = n
            ok = True
            for (g, f), h in comp:
                ng, nf, nh = mor_map.get(g), mor_map.get(f), mor_map.get(h)
                if ng is not None and nf is not None:
                    image = D.table[(ng, nf)]
                    if nh is None:
                        if h == m and image != n:
                            ok = False
                            break
                        continue
                    if image != nh:
                        ok = False
                        break
            if ok:
                mor_search(obj_map, mor_map, i + 1)
            del mor_map[m]

    def obj_search(obj_map, i):
        if i == len(C.objects):
            mor_map = {C.identity[a]: D.identity[obj_map[a]] for a in C.objects}
            mor_search(obj_map, mor_map, 0)
            return
        a = C.objects[i]
        for x in D.objects:
            if constraint is not None and not constraint("obj", a, x):
                continue
            # prune: every hom out of / into already-placed objects must have room
            obj_map[a] = x
            ok = True
            for b in C.objects[: i + 1]:
                if C.hom(a, b) and not D.hom(x, obj_map[b]):
                    ok = False
                    break
                if C.hom(b, a) and not D.hom(obj_map[b], x):
                    ok = False
                    break
            if ok:
                obj_search(obj_map, i + 1)
            del obj_map[a]

    obj_search({}, 0)
    return found


def enumerate_nat_trans(F: FinFunctor, G: FinFunctor) -> list[NatTrans]:
    """Exhaustive component-family search with naturality pruning."""
    C, D = F.dom, F.cod
    out: list[NatTrans] = []
    objs = list(C.objects)

    def rec(components, i):
        if i == len(objs):
            out.append(NatTrans(F, G, dict(components)))
            return
        a = objs[i]
        for c in D.hom(F.obj_map[a], G.obj_map[a]):
            components[a] = c
            ok = True
            for m in C.morphisms:
                s, t = C.src[m], C.tgt[m]
                if s in components and t in components:
                    if D.table[(G.mor_map[m], components[s])] != D.table[
                        (components[t], F.mor_map[m])
                    ]:
                        ok = False
                        break
            if ok:
                rec(components, i + 1)
            del components[a]

    rec({}, 0)
    return out


# ---------------------------------------------------------------------------
# equivalences


@dataclass(frozen=True)
class EquivalenceWitness:
    fully_faithful: bool
    essentially_surjective: bool
    iso_witness: dict[str, tuple[str, str, str]]  # d -> (c, iso F(c)->d, inverse)


@dataclass(frozen=True)
class NotEquivalence:
    reason: str
    datum: tuple


def check_equivalence(F: FinFunctor):
    """Fully-faithful + essentially-surjective, by finite scans; returns the
    first failing datum otherwise."""
    C, D = F.dom, F.cod
    for a in C.objects:
        for b in C.objects:
            image = [F.mor_map[m] for m in C.hom(a, b)]
            target = D.hom(F.obj_map[a], F.obj_map[b])
            if len(set(image)) != len(image):
                return NotEquivalence("not faithful", (a, b))
            if set(image) != set(target):
                return NotEquivalence("not full", (a, b))
    iso_witness = {}
    for d in D.objects:
        hit = None
        for c in C.objects:
            for m in D.hom(F.obj_map[c], d):
                if D.is_iso(m):
                    hit = (c, m, D.inverse_table[m])
                    break
            if hit:
                break
        if hit is None:
            return NotEquivalence("not essentially surjective", (d,))
        iso_witness[d] = hit
    return EquivalenceWitness(True, True, iso_witness)


# ---------------------------------------------------------------------------
# isomorphism search over a base


def search_cat_iso(C: FinCat, D: FinCat, node_budget: int = 2_000_000):
    """Isomorphism of plain categories: iso search over the terminal base."""
    from .zoo import terminal

    T = terminal()
    p = CatOverBase(C, T, constant_functor(C, T, "*"))
    q = CatOverBase(D, T, constant_functor(D, T, "*"))
    return search_iso_over_base(p, q, node_budget)


def search_iso_over_base(p: CatOverBase, q: CatOverBase, node_budget: int = 2_000_000):
    """Backtracking search for an isomorphism total(p) -> total(q) strictly
    over the shared base. Returns a FinFunctor witness or None; None means
    the search space was exhausted, not that a budget ran out (the budget
    raises CapExceeded instead). Candidates are tried in identifier order.
    """
    E, Ep = p.total, q.total
    base = p.base
    if len(E.objects) != len(Ep.objects) or len(E.morphisms) != len(Ep.morphisms):
        return None
    # fiberwise object buckets must match in size
    def obj_fiber(over: CatOverBase):
        buckets: dict[str, list[str]] = {x: [] for x in over.base.objects}
        for o in over.total.objects:
            buckets[over.proj.obj_map[o]].append(o)
        return buckets

    bp, bq = obj_fiber(p), obj_fiber(q)
    for x in base.objects:
        if len(bp[x]) != len(bq[x]):
            return None

    nodes = 0

    def mor_cells(over: CatOverBase):
        cells: dict[tuple[str, str, str], list[str]] = {}
        for m in over.total.morphisms:
            key = (over.total.src[m], over.total.tgt[m], over.proj.mor_map[m])
            cells.setdefault(key, []).append(m)
        return cells

    cells_p = mor_cells(p)
    cells_q = mor_cells(q)

    obj_order = [o for x in base.objects for o in bp[x]]

    def try_mor(obj_map):
        # cell-by-cell bijections with composition checks
        cell_keys = sorted(cells_p)
        mor_map: dict[str, str] = {}
        used: set[str] = set()

        def cell_target(key):
            a, b, f = key
            return (obj_map[a], obj_map[b], f)

        for key in cell_keys:
            if len(cells_p[key]) != len(cells_q.get(cell_target(key), [])):
                return None

        flat = [(key, m) for key in cell_keys for m in sorted(cells_p[key])]

        def rec(i):
            nonlocal nodes
            if i == len(flat):
                return dict(mor_map)
            key, m = flat[i]
            for n in sorted(cells_q[cell_target(key)]):
                if n in used:
                    continue
                nodes += 1
                if nodes > node_budget:
                    raise CapExceeded(node_budget, "iso search over base")
                mor_map[m] = n
                used.add(n)
                ok = True
                for (g, f), h in E.table.items():
                    ng, nf = mor_map.get(g), mor_map.get(f)
                    if ng is None or nf is None:
                        continue
                    nh = mor_map.get(h)
                    image = Ep.table[(ng, nf)]
                    if nh is not None:
                        if image != nh:
                            ok = False
                            break
                    elif h == m and image != n:
                        ok = False
                        break
                if ok:
                    res = rec(i + 1)
                    if res is not None:
                        return res
                used.discard(n)
                del mor_map[m]
            return None

        return rec(0)

    def rec_obj(obj_map, i):
        nonlocal nodes
        if i == len(obj_order):
            mm = try_mor(obj_map)
            if mm is not None:
                return FinFunctor(E, Ep, dict(obj_map), mm)
            return None
        o = obj_order[i]
        x = p.proj.obj_map[o]
        for o2 in sorted(bq[x]):
            if o2 in obj_map.values():
                continue
            nodes += 1
            if nodes > node_budget:
                raise CapExceeded(node_budget, "iso search over base")
            obj_map[o] = o2
            # prune on hom-cell cardinalities against already-placed objects
            ok = True
            for o1 in obj_order[: i + 1]:
                if o1 not in obj_map:
                    continue
                for a, b in ((o, o1), (o1, o)):
                    if a not in obj_map or b not in obj_map:
                        continue
                    for f in base.morphisms:
                        key = (a, b, f)
                        if len(cells_p.get(key, [])) != len(
                            cells_q.get((obj_map[a], obj_map[b], f), [])
                        ):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                res = rec_obj(obj_map, i + 1)
                if res is not None:
                    return res
            del obj_map[o]
        return None

    witness = rec_obj({}, 0)
    if witness is None:
        return None
    return witness
