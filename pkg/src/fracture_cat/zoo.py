"""Standard small categories: simplices, discrete categories, cyclic-group
one-object categories, the walking isomorphism, posets from order relations.
"""

from __future__ import annotations

from .fincat import FinCat, FinFunctor


def terminal() -> FinCat:
    return FinCat("1", ("*",), ("id*",), {"id*": "*"}, {"id*": "*"},
                  {"*": "id*"}, {("id*", "id*"): "id*"})


def simplex(n: int) -> FinCat:
    """The linear order [n] = {0 < ... < n} as a category; the morphism
    i -> j is named a{i}{j}, identities id{i}."""
    objects = tuple(str(i) for i in range(n + 1))

    def mor(i, j):
        return f"id{i}" if i == j else f"a{i}{j}"

    morphisms = tuple(mor(i, j) for i in range(n + 1) for j in range(i, n + 1))
    src = {mor(i, j): str(i) for i in range(n + 1) for j in range(i, n + 1)}
    tgt = {mor(i, j): str(j) for i in range(n + 1) for j in range(i, n + 1)}
    identity = {str(i): f"id{i}" for i in range(n + 1)}
    table = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                table[(mor(j, k), mor(i, j))] = mor(i, k)
    return FinCat(f"[{n}]", objects, morphisms, src, tgt, identity, table)


def interval() -> FinCat:
    return simplex(1)


def discrete(names) -> FinCat:
    names = tuple(names)
    return FinCat(
        f"disc({','.join(names)})",
        names,
        tuple(f"id_{x}" for x in names),
        {f"id_{x}": x for x in names},
        {f"id_{x}": x for x in names},
        {x: f"id_{x}" for x in names},
        {(f"id_{x}", f"id_{x}"): f"id_{x}" for x in names},
    )


def cyclic_group(n: int) -> FinCat:
    """B(Z/n): one object, morphisms g0 (identity), g1, ..., g{n-1}."""
    objects = ("*",)
    morphisms = tuple(f"g{i}" for i in range(n))
    table = {
        (f"g{i}", f"g{j}"): f"g{(i + j) % n}" for i in range(n) for j in range(n)
    }
    return FinCat(
        f"BZ{n}", objects, morphisms,
        {m: "*" for m in morphisms}, {m: "*" for m in morphisms},
        {"*": "g0"}, table,
    )


def walking_iso() -> FinCat:
    """Two objects x, y and mutually inverse arrows u, v."""
    objects = ("x", "y")
    morphisms = ("idx", "idy", "u", "v")
    src = {"idx": "x", "idy": "y", "u": "x", "v": "y"}
    tgt = {"idx": "x", "idy": "y", "u": "y", "v": "x"}
    identity = {"x": "idx", "y": "idy"}
    table = {
        ("idx", "idx"): "idx", ("idy", "idy"): "idy",
        ("u", "idx"): "u", ("idy", "u"): "u",
        ("v", "idy"): "v", ("idx", "v"): "v",
        ("v", "u"): "idx", ("u", "v"): "idy",
    }
    return FinCat("I", objects, morphisms, src, tgt, identity, table)


def poset(elements, leq) -> FinCat:
    """The category of a partial order: one morphism x -> y when leq(x, y)."""
    elements = tuple(elements)

    def mor(x, y):
        return f"id_{x}" if x == y else f"le_{x}_{y}"

    pairs = [(x, y) for x in elements for y in elements if leq(x, y)]
    morphisms = tuple(mor(x, y) for x, y in pairs)
    src = {mor(x, y): x for x, y in pairs}
    tgt = {mor(x, y): y for x, y in pairs}
    identity = {x: f"id_{x}" for x in elements}
    table = {}
    for x, y in pairs:
        for y2, z in pairs:
            if y2 == y:
                table[(mor(y, z), mor(x, y))] = mor(x, z)
    return FinCat("poset", elements, morphisms, src, tgt, identity, table)


def parallel_pair() -> FinCat:
    """Two objects with two parallel arrows between them."""
    objects = ("a", "b")
    morphisms = ("ida", "idb", "s", "t")
    src = {"ida": "a", "idb": "b", "s": "a", "t": "a"}
    tgt = {"ida": "a", "idb": "b", "s": "b", "t": "b"}
    identity = {"a": "ida", "b": "idb"}
    table = {
        ("ida", "ida"): "ida", ("idb", "idb"): "idb",
        ("s", "ida"): "s", ("idb", "s"): "s",
        ("t", "ida"): "t", ("idb", "t"): "t",
    }
    return FinCat("pair", objects, morphisms, src, tgt, identity, table)


def simplex_inclusion(points: tuple[int, ...], n: int) -> FinFunctor:
    """The monotone map [k] -> [n] picking the given points, as a functor."""
    k = len(points) - 1
    dom, cod = simplex(k), simplex(n)

    def mor(C, i, j, pts=None):
        if pts is None:
            return f"id{i}" if i == j else f"a{i}{j}"
        return f"id{pts[i]}" if pts[i] == pts[j] else f"a{pts[i]}{pts[j]}"

    obj_map = {str(i): str(points[i]) for i in range(k + 1)}
    mor_map = {}
    for i in range(k + 1):
        for j in range(i, k + 1):
            mor_map[mor(dom, i, j)] = mor(cod, i, j, points)
    return FinFunctor(dom, cod, obj_map, mor_map)
