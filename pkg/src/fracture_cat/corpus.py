"""Seeded random instance generation for the verification harness: random
finite posets, random quotients of free categories, deliberately seeded known
shapes, random strict diagrams and their Grothendieck totals, collages of
random profunctors, and an exhaustive-by-construction family of very small
categories used by the criteria-agreement suite.

Generation is a pure function of the seed; rejections (e.g. a generator
closure blowing its cap) are counted, never silently retried with fresh
entropy from outside the instance's own stream.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct

from .catlang import close_generators
from .collage import Profunctor, collage, functor_profunctor, hom_profunctor
from .errors import ClosureExceeded
from .fibrations import StrictCatDiagram, grothendieck_strict, validate_strict_diagram
from .fincat import (
    CatOverBase,
    FinCat,
    FinFunctor,
    compose_functors,
    constant_functor,
    coproduct,
    enumerate_functors,
    identity_functor,
    opposite,
    product_projections,
    search_cat_iso,
    validate,
)
from .presheaf import FinSet
from . import zoo


@dataclass(frozen=True)
class CorpusSpec:
    seed: int = 0
    max_objects: int = 4
    max_morphisms: int = 16
    instance_count: int = 200
    kind: str = "general"  # general | posets | groupoids | over-[1] | over-[2]

    def __post_init__(self):
        assert self.max_objects > 0 and self.max_morphisms > 0
        assert self.instance_count >= 0
        assert self.kind in ("general", "posets", "groupoids", "over-[1]", "over-[2]")


def rng_for(spec: CorpusSpec, index: int) -> random.Random:
    """Every instance draws from its own stream, so failure reports replay
    from (seed, index) alone."""
    return random.Random((spec.seed, index))


# ---------------------------------------------------------------------------
# random categories


def random_poset(rng: random.Random, max_objects: int) -> FinCat:
    n = rng.randint(1, max_objects)
    names = [f"p{i}" for i in range(n)]
    rel = {(a, a) for a in names}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                rel.add((names[i], names[j]))
    # transitive closure
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return zoo.poset(names, lambda x, y: (x, y) in rel)


def random_quotient(rng: random.Random, max_objects: int, max_morphisms: int) -> FinCat | None:
    """Random generators and relations, closed under the cap; None on blowup."""
    max_morphisms = min(max_morphisms, 8)
    n = rng.randint(1, min(3, max_objects))
    objects = [f"x{i}" for i in range(n)]
    k = rng.randint(1, 2 if n == 1 else 3)
    gens = []
    for i in range(k):
        s = rng.choice(objects)
        t = rng.choice(objects)
        gens.append((f"g{i}", s, t))
    gen_by_name = {g: (s, t) for g, s, t in gens}

    def random_word(max_len):
        # a composable word, built backwards from a random start
        first = rng.choice(gens)
        word = [first[0]]
        cur_tgt = first[1]  # source of the written word so far
        for _ in range(rng.randint(0, max_len - 1)):
            nxt = [g for g, s, t in gens if t == cur_tgt]
            if not nxt:
                break
            g = rng.choice(sorted(nxt))
            word.append(g)
            cur_tgt = gen_by_name[g][0]
        return ("word", tuple(word))

    relations = []
    for _ in range(rng.randint(0, 2)):
        w1 = random_word(3)
        # parallel second side: either another word or an identity when endo
        def endpoints(w):
            seq = w[1]
            return gen_by_name[seq[-1]][0], gen_by_name[seq[0]][1]

        s1, t1 = endpoints(w1)
        if s1 == t1 and rng.random() < 0.5:
            relations.append((w1, ("id", s1)))
        else:
            for _try in range(8):
                w2 = random_word(3)
                if endpoints(w2) == (s1, t1):
                    relations.append((w1, w2))
                    break
    try:
        cat = close_generators("q", objects, gens, relations, max_morphisms)
    except ClosureExceeded:
        return None
    if len(cat.objects) > max_objects or len(cat.morphisms) > max_morphisms:
        return None
    return cat


SEEDED_SHAPES = [
    zoo.terminal,
    lambda: zoo.simplex(1),
    lambda: zoo.simplex(2),
    lambda: zoo.cyclic_group(2),
    zoo.walking_iso,
    zoo.parallel_pair,
    lambda: zoo.discrete("uv"),
]

GROUPOID_SHAPES = [
    zoo.terminal,
    zoo.walking_iso,
    lambda: zoo.cyclic_group(2),
    lambda: zoo.cyclic_group(3),
    lambda: zoo.discrete("uv"),
    lambda: coproduct(zoo.cyclic_group(2), zoo.terminal()),
]


def random_category(rng: random.Random, spec: CorpusSpec) -> FinCat:
    if spec.kind == "posets":
        return random_poset(rng, spec.max_objects)
    if spec.kind == "groupoids":
        return rng.choice(GROUPOID_SHAPES)()
    roll = rng.random()
    if roll < 0.3:
        return random_poset(rng, spec.max_objects)
    if roll < 0.55:
        cat = random_quotient(rng, spec.max_objects, spec.max_morphisms)
        if cat is not None:
            return cat
        return rng.choice(SEEDED_SHAPES)()
    return rng.choice(SEEDED_SHAPES)()


def random_functor(rng: random.Random, C: FinCat, D: FinCat) -> FinFunctor | None:
    try:
        fs = enumerate_functors(C, D, cap=2000)
    except Exception:
        return None
    if not fs:
        return None
    return fs[rng.randrange(len(fs))]


# ---------------------------------------------------------------------------
# random structures over a base


def random_strict_diagram(rng: random.Random, spec: CorpusSpec) -> StrictCatDiagram | None:
    """Strict by construction: free chain bases with act chosen on the
    consecutive arrows, or group bases acting by permutations of a discrete
    fiber."""
    small_fibers = [
        zoo.terminal(),
        zoo.discrete("uv"),
        zoo.simplex(1),
        zoo.cyclic_group(2),
    ]
    if rng.random() < 0.5:
        n = rng.randint(1, 2)
        base = zoo.simplex(n)
        fibers = {x: rng.choice(small_fibers) for x in base.objects}
        act: dict[str, FinFunctor] = {}
        for x in base.objects:
            act[base.identity[x]] = identity_functor(fibers[x])
        # choose transports on consecutive arrows, compose for the rest
        chosen = {}
        for i in range(n):
            f = f"a{i}{i + 1}"
            F = random_functor(rng, fibers[str(i + 1)], fibers[str(i)])
            if F is None:
                return None
            chosen[f] = F
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                F = identity_functor(fibers[str(j)])
                for k in range(j, i, -1):
                    F = compose_functors(chosen[f"a{k - 1}{k}"], F)
                act[f"a{i}{j}"] = F
        Phi = StrictCatDiagram(base, fibers, act)
    else:
        m = rng.choice([2, 3])
        base = zoo.cyclic_group(m)
        size = rng.randint(1, 3)
        names = [f"e{i}" for i in range(size)]
        fiberc = zoo.discrete(names)
        # a permutation of order dividing m
        perm = _random_order_dividing_permutation(rng, names, m)
        F = FinFunctor(
            fiberc, fiberc,
            {a: perm[a] for a in names},
            {f"id_{a}": f"id_{perm[a]}" for a in names},
        )
        act = {"g0": identity_functor(fiberc)}
        cur = F
        for i in range(1, m):
            act[f"g{i}"] = cur
            cur = compose_functors(F, cur)
        Phi = StrictCatDiagram(base, {"*": fiberc}, act)
    if validate_strict_diagram(Phi):
        return None
    return Phi


def _random_order_dividing_permutation(rng, names, m):
    """A permutation whose order divides m, as cycles of length 1 or m."""
    pool = list(names)
    rng.shuffle(pool)
    perm = {}
    while pool:
        if len(pool) >= m and rng.random() < 0.7:
            cyc = [pool.pop() for _ in range(m)]
            for i, a in enumerate(cyc):
                perm[a] = cyc[(i + 1) % m]
        else:
            a = pool.pop()
            perm[a] = a
    return perm


def random_profunctor(rng: random.Random, C: FinCat, D: FinCat) -> Profunctor:
    """A direct sum of block profunctors hom_C(-, c) x hom_D(d, -), which is
    valid by construction; possibly empty."""
    k = rng.randint(0, 2)
    blocks = []
    for _ in range(k):
        blocks.append((rng.choice(sorted(C.objects)), rng.choice(sorted(D.objects))))
    at = {}
    lact = {}
    ract = {}
    for x in C.objects:
        for y in D.objects:
            elems = []
            for i, (c, d) in enumerate(blocks):
                for phi in C.hom(x, c):
                    for psi in D.hom(d, y):
                        elems.append(f"b{i}({phi},{psi})")
            at[(x, y)] = FinSet(tuple(elems))
    for u in C.morphisms:
        for y in D.objects:
            fn = {}
            for i, (c, d) in enumerate(blocks):
                for phi in C.hom(C.tgt[u], c):
                    for psi in D.hom(d, y):
                        fn[f"b{i}({phi},{psi})"] = f"b{i}({C.table[(phi, u)]},{psi})"
            lact[(u, y)] = fn
    for v in D.morphisms:
        for x in C.objects:
            fn = {}
            for i, (c, d) in enumerate(blocks):
                for phi in C.hom(x, c):
                    for psi in D.hom(d, D.src[v]):
                        fn[f"b{i}({phi},{psi})"] = f"b{i}({phi},{D.table[(v, psi)]})"
            ract[(v, x)] = fn
    return Profunctor(C, D, at, lact, ract)


def random_over_base(rng: random.Random, spec: CorpusSpec) -> CatOverBase:
    """Functors over a base: strict Grothendieck totals, cylinders, collages,
    double covers, constants, and plain random functors as perturbations."""
    roll = rng.random()
    if spec.kind == "over-[1]":
        return random_over_interval(rng, spec)
    if roll < 0.3:
        Phi = random_strict_diagram(rng, spec)
        if Phi is not None:
            return grothendieck_strict(Phi).over
        roll = 0.95
    if roll < 0.5:
        base = random_category(rng, spec)
        other = rng.choice(SEEDED_SHAPES[:4])()
        P, fst, _ = product_projections(base, other)
        return CatOverBase(P, base, fst)
    if roll < 0.6:
        I = zoo.walking_iso()
        G = zoo.cyclic_group(2)
        proj = FinFunctor(I, G, {"x": "*", "y": "*"},
                          {"idx": "g0", "idy": "g0", "u": "g1", "v": "g1"})
        return CatOverBase(I, G, proj)
    if roll < 0.8:
        base = random_category(rng, spec)
        total = random_category(rng, spec)
        F = random_functor(rng, total, base)
        if F is not None:
            return CatOverBase(total, base, F)
    base = random_category(rng, spec)
    X = sorted(base.objects)[rng.randrange(len(base.objects))]
    total = rng.choice(SEEDED_SHAPES[:4])()
    return CatOverBase(total, base, constant_functor(total, base, X))


def random_over_interval(rng: random.Random, spec: CorpusSpec) -> CatOverBase:
    roll = rng.random()
    I = zoo.interval()
    if roll < 0.5:
        C = _small_fiber_category(rng)
        D = _small_fiber_category(rng)
        return collage(random_profunctor(rng, C, D)).over
    if roll < 0.75:
        C = _small_fiber_category(rng)
        P, _fst, snd = product_projections(C, I)
        return CatOverBase(P, I, snd)
    C = _small_fiber_category(rng)
    F = random_functor(rng, C, C)
    if F is not None:
        return collage(functor_profunctor(F)).over
    return collage(hom_profunctor(C)).over


def _small_fiber_category(rng) -> FinCat:
    return rng.choice([
        zoo.terminal(),
        zoo.discrete("uv"),
        zoo.simplex(1),
        zoo.cyclic_group(2),
    ])


# ---------------------------------------------------------------------------
# exhaustive small category family


@lru_cache(maxsize=None)
def exhaustive_small_categories(max_morphisms: int = 4) -> tuple[FinCat, ...]:
    """Every category with one or two objects and at most ``max_morphisms``
    morphisms, enumerated from composition tables and deduplicated up to
    isomorphism, plus the seeded shapes. The criteria-agreement suite runs
    all functors between all ordered pairs from this family.
    """
    found: list[FinCat] = []
    for k in range(1, max_morphisms + 1):
        found.extend(_enumerate_one_object(k))
    found.extend(_enumerate_two_object(max_morphisms))
    found.extend([zoo.simplex(2), zoo.walking_iso()])
    # dedup up to isomorphism within invariant buckets
    buckets: dict[tuple, list[FinCat]] = {}
    unique: list[FinCat] = []
    for cat in found:
        key = _iso_invariant(cat)
        bucket = buckets.setdefault(key, [])
        if not any(search_cat_iso(cat, other) is not None for other in bucket):
            bucket.append(cat)
            unique.append(cat)
    return tuple(unique)


def _iso_invariant(cat: FinCat) -> tuple:
    homs = sorted(
        len(cat.hom(a, b)) for a in cat.objects for b in cat.objects
    )
    isos = sum(1 for m in cat.morphisms if cat.is_iso(m))
    return (len(cat.objects), len(cat.morphisms), tuple(homs), isos)


def _enumerate_one_object(k: int) -> list[FinCat]:
    """All monoid tables with k elements (element 0 the unit), by DFS with
    associativity pruning."""
    out = []
    names = [f"m{i}" for i in range(k)]
    prod: dict[tuple[int, int], int] = {}
    for i in range(k):
        prod[(0, i)] = i
        prod[(i, 0)] = i

    cells = [(i, j) for i in range(1, k) for j in range(1, k)]

    def assoc_ok():
        for a in range(k):
            for b in range(k):
                ab = prod.get((a, b))
                if ab is None:
                    continue
                for c in range(k):
                    bc = prod.get((b, c))
                    ab_c = prod.get((ab, c)) if ab is not None else None
                    a_bc = prod.get((a, bc)) if bc is not None else None
                    if ab_c is not None and a_bc is not None and ab_c != a_bc:
                        return False
        return True

    def rec(i):
        if i == len(cells):
            out.append(_monoid_cat(k, names, dict(prod)))
            return
        cell = cells[i]
        for v in range(k):
            prod[cell] = v
            if assoc_ok():
                rec(i + 1)
            del prod[cell]

    rec(0)
    return out


def _monoid_cat(k, names, prod) -> FinCat:
    table = {
        (names[i], names[j]): names[prod[(i, j)]] for i in range(k) for j in range(k)
    }
    return FinCat(
        f"M{k}", ("*",), tuple(names),
        {m: "*" for m in names}, {m: "*" for m in names},
        {"*": names[0]}, table,
    )


def _enumerate_two_object(max_morphisms: int) -> list[FinCat]:
    """Two objects, both identities, up to max_morphisms - 2 extra morphisms
    with arbitrary endpoints and all valid tables."""
    out = []
    extra_budget = max_morphisms - 2
    objs = ("a", "b")
    for extra in range(0, min(extra_budget, 2) + 1):
        for endpoints in iproduct(iproduct(objs, objs), repeat=extra):
            names = [f"t{i}" for i in range(extra)]
            src = {"ida": "a", "idb": "b"} | {
                names[i]: endpoints[i][0] for i in range(extra)
            }
            tgt = {"ida": "a", "idb": "b"} | {
                names[i]: endpoints[i][1] for i in range(extra)
            }
            morphisms = ("ida", "idb", *names)
            identity = {"a": "ida", "b": "idb"}
            base_table = {}
            for m in morphisms:
                base_table[(m, identity[src[m]])] = m
                base_table[(identity[tgt[m]], m)] = m
            cells = [
                (g, f)
                for f in names
                for g in names
                if tgt[f] == src[g] and (g, f) not in base_table
            ]
            candidates_for = {
                (g, f): [m for m in morphisms if src[m] == src[f] and tgt[m] == tgt[g]]
                for (g, f) in cells
            }

            def rec(i, table):
                if i == len(cells):
                    cat = FinCat("T2", objs, morphisms, src, tgt, identity, dict(table))
                    if validate(cat).ok:
                        out.append(cat)
                    return
                g, f = cells[i]
                for m in candidates_for[(g, f)]:
                    table[(g, f)] = m
                    rec(i + 1, table)
                    del table[(g, f)]

            rec(0, dict(base_table))
    return out
