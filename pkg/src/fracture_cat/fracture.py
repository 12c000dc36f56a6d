"""The local-global decomposition of a functor over a finite base: local data
(fibers with strict automorphism actions per isomorphism class) and gluing
data (a lax normal diagram of profunctors), with reconstruction up to
isomorphism over the base.

The gluing datum assigns to every base morphism the profunctor of
heteromorphisms lying over it and to every composable pair the composition
comparison; normality holds on the nose because heteromorphisms over an
identity are exactly the fiber homs. Reconstruction is the generalized
Grothendieck construction on that data.

Strict automorphism actions need a coherent choice of invertible transports
(a cocycle of lifts); the search for one is budgeted and an obstruction is
reported rather than silently weakened when no choice exists.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceeded, IncoherentDiagram, NonFunctorialAction
from .collage import ComposedProfunctor, Profunctor, compose_profunctors
from .fibrations import fiber, het_morphisms
from .fincat import (
    AutGroup,
    CatOverBase,
    FinCat,
    FinFunctor,
    ValidationReport,
    aut_group,
    core,
    iso_classes,
    pair_tag,
    same_cat,
    search_iso_over_base,
    validate,
    validate_functor,
)
from .presheaf import FinSet


# ---------------------------------------------------------------------------
# gluing data


@dataclass(frozen=True, eq=False)
class LaxProfDiagram:
    """Fibers per object, heteromorphism profunctors per morphism, and
    composition comparisons mu on raw pairs (b, y, b'', xi, zeta), where the
    comparison must be constant on coend classes. het(id) must be the
    fiber's hom profunctor with strict units (normality)."""

    base: FinCat
    fib: dict[str, FinCat]
    het: dict[str, Profunctor]
    mu: dict[tuple[str, str], dict[tuple[str, str, str, str, str], str]]


def lax_diagram_of(p: CatOverBase) -> LaxProfDiagram:
    """het(f)(b, b') = morphisms over f; mu = composition in the total
    category. Normality holds by construction."""
    E, C = p.total, p.base
    fibs = {X: fiber(p, X) for X in C.objects}
    het: dict[str, Profunctor] = {}
    for f in C.morphisms:
        X, Y = C.src[f], C.tgt[f]
        FX, FY = fibs[X], fibs[Y]
        at = {
            (b, bp): FinSet(het_morphisms(p, f, b, bp))
            for b in FX.objects
            for bp in FY.objects
        }
        lact = {
            (u, bp): {m: E.table[(m, u)] for m in at[(FX.tgt[u], bp)]}
            for u in FX.morphisms
            for bp in FY.objects
        }
        ract = {
            (v, b): {m: E.table[(v, m)] for m in at[(b, FY.src[v])]}
            for v in FY.morphisms
            for b in FX.objects
        }
        het[f] = Profunctor(FX, FY, at, lact, ract)
    mu: dict[tuple[str, str], dict] = {}
    for f in C.morphisms:
        for g in C.morphisms:
            if C.src[g] != C.tgt[f]:
                continue
            X, Y, Z = C.src[f], C.tgt[f], C.tgt[g]
            table = {}
            for b in fibs[X].objects:
                for y in fibs[Y].objects:
                    for bpp in fibs[Z].objects:
                        for xi in het[f].at[(b, y)]:
                            for zeta in het[g].at[(y, bpp)]:
                                table[(b, y, bpp, xi, zeta)] = E.table[(zeta, xi)]
            mu[(f, g)] = table
    return LaxProfDiagram(C, fibs, het, mu)


def diagram_validate(delta: LaxProfDiagram) -> ValidationReport:
    """Bimodule laws of every het, normality, mu well-definedness on coend
    classes, unit laws, and associativity on raw triples."""
    from .collage import hom_profunctor, validate_profunctor

    bad: list[str] = []
    C = delta.base
    for X in C.objects:
        if X not in delta.fib:
            bad.append(f"no fiber at {X}")
    for f in C.morphisms:
        H = delta.het.get(f)
        if H is None:
            bad.append(f"no profunctor at {f}")
            continue
        if not (same_cat(H.left, delta.fib[C.src[f]]) and same_cat(H.right, delta.fib[C.tgt[f]])):
            bad.append(f"profunctor at {f} has wrong fibers")
            continue
        for v in validate_profunctor(H):
            bad.append(f"het({f}): {v}")
    if bad:
        return ValidationReport(False, tuple(bad))

    # normality: het(id) equals the hom profunctor on the nose
    for X in C.objects:
        H = delta.het[C.identity[X]]
        hom = hom_profunctor(delta.fib[X])
        if {k: set(v.elements) for k, v in H.at.items()} != {
            k: set(v.elements) for k, v in hom.at.items()
        } or H.lact != hom.lact or H.ract != hom.ract:
            bad.append(f"normality fails at {X}: het(id) is not the hom profunctor")

    # mu: presence, endpoints, well-definedness on classes, units, associativity
    for f in C.morphisms:
        for g in C.morphisms:
            if C.src[g] != C.tgt[f]:
                continue
            table = delta.mu.get((f, g))
            if table is None:
                bad.append(f"no mu at ({f}, {g})")
                continue
            X, Y, Z = C.src[f], C.tgt[f], C.tgt[g]
            h = C.table[(g, f)]
            for b in delta.fib[X].objects:
                for y in delta.fib[Y].objects:
                    for bpp in delta.fib[Z].objects:
                        for xi in delta.het[f].at[(b, y)]:
                            for zeta in delta.het[g].at[(y, bpp)]:
                                val = table.get((b, y, bpp, xi, zeta))
                                if val is None:
                                    bad.append(f"mu({f},{g}) missing at ({b},{y},{bpp},{xi},{zeta})")
                                elif val not in delta.het[h].at[(b, bpp)]:
                                    bad.append(f"mu({f},{g}) lands outside het({h}) at ({b},{y},{bpp})")
    if bad:
        return ValidationReport(False, tuple(bad))

    for f in C.morphisms:
        for g in C.morphisms:
            if C.src[g] != C.tgt[f]:
                continue
            comp: ComposedProfunctor = compose_profunctors(delta.het[f], delta.het[g])
            table = delta.mu[(f, g)]
            X, Z = C.src[f], C.tgt[g]
            for (b, bpp), classes in comp.classes.items():
                by_class: dict[str, str] = {}
                for (y, xi, zeta), cls in classes.items():
                    val = table[(b, y, bpp, xi, zeta)]
                    if cls in by_class and by_class[cls] != val:
                        bad.append(
                            f"mu({f},{g}) not well-defined on the coend class {cls} at ({b},{bpp})"
                        )
                    by_class[cls] = val

    # unit laws: mu(id, f) is the left action, mu(f, id) the right action
    for f in C.morphisms:
        X, Y = C.src[f], C.tgt[f]
        idX, idY = C.identity[X], C.identity[Y]
        for b in delta.fib[X].objects:
            for y in delta.fib[X].objects:
                for bpp in delta.fib[Y].objects:
                    for phi in delta.het[idX].at[(b, y)]:
                        for xi in delta.het[f].at[(y, bpp)]:
                            if delta.mu[(idX, f)][(b, y, bpp, phi, xi)] != delta.het[f].lact[(phi, bpp)][xi]:
                                bad.append(f"left unit law fails for mu({idX},{f})")
        for b in delta.fib[X].objects:
            for y in delta.fib[Y].objects:
                for bpp in delta.fib[Y].objects:
                    for xi in delta.het[f].at[(b, y)]:
                        for psi in delta.het[idY].at[(y, bpp)]:
                            if delta.mu[(f, idY)][(b, y, bpp, xi, psi)] != delta.het[f].ract[(psi, b)][xi]:
                                bad.append(f"right unit law fails for mu({f},{idY})")

    # associativity on raw triples
    for f in C.morphisms:
        for g in C.morphisms:
            if C.src[g] != C.tgt[f]:
                continue
            for k in C.morphisms:
                if C.src[k] != C.tgt[g]:
                    continue
                gf = C.table[(g, f)]
                kg = C.table[(k, g)]
                X, Y, Z, W = C.src[f], C.tgt[f], C.tgt[g], C.tgt[k]
                for b in delta.fib[X].objects:
                    for y in delta.fib[Y].objects:
                        for z in delta.fib[Z].objects:
                            for w in delta.fib[W].objects:
                                for xi in delta.het[f].at[(b, y)]:
                                    for zeta in delta.het[g].at[(y, z)]:
                                        for om in delta.het[k].at[(z, w)]:
                                            left = delta.mu[(gf, k)][
                                                (b, z, w, delta.mu[(f, g)][(b, y, z, xi, zeta)], om)
                                            ]
                                            right = delta.mu[(f, kg)][
                                                (b, y, w, xi, delta.mu[(g, k)][(y, z, w, zeta, om)])
                                            ]
                                            if left != right:
                                                bad.append(
                                                    f"mu associativity fails at ({f},{g},{k})"
                                                )
    return ValidationReport(not bad, tuple(bad))


def collage_of_diagram(delta: LaxProfDiagram) -> CatOverBase:
    """Generalized Grothendieck construction: objects (X, b), morphisms
    (f, xi) with xi in het(f), composition through mu; the resulting table
    is re-validated and an incoherent mu surfaces as IncoherentDiagram."""
    C = delta.base
    objects = []
    for X in C.objects:
        for b in delta.fib[X].objects:
            objects.append(pair_tag(X, b))
    morphisms = []
    src = {}
    tgt = {}
    data = {}
    for f in C.morphisms:
        X, Y = C.src[f], C.tgt[f]
        for b in delta.fib[X].objects:
            for bp in delta.fib[Y].objects:
                for xi in delta.het[f].at[(b, bp)]:
                    mid = f"({f},{b},{bp},{xi})"
                    morphisms.append(mid)
                    src[mid] = pair_tag(X, b)
                    tgt[mid] = pair_tag(Y, bp)
                    data[mid] = (f, b, bp, xi)
    identity = {}
    for X in C.objects:
        for b in delta.fib[X].objects:
            idm = delta.fib[X].identity[b]
            identity[pair_tag(X, b)] = f"({C.identity[X]},{b},{b},{idm})"
    table = {}
    for m1 in morphisms:
        f, b, y, xi = data[m1]
        for m2 in morphisms:
            g, y2, bpp, zeta = data[m2]
            if tgt[m1] != src[m2]:
                continue
            h = C.table[(g, f)]
            val = delta.mu[(f, g)][(b, y, bpp, xi, zeta)]
            table[(m2, m1)] = f"({h},{b},{bpp},{val})"
    total = FinCat(
        f"glue({C.name})", tuple(objects), tuple(morphisms), src, tgt, identity, table
    )
    report = validate(total)
    if not report.ok:
        raise IncoherentDiagram("; ".join(report.violations))
    proj = FinFunctor(
        total, C,
        {pair_tag(X, b): X for X in C.objects for b in delta.fib[X].objects},
        {m: data[m][0] for m in morphisms},
    )
    assert validate_functor(proj).ok
    return CatOverBase(total, C, proj)


# ---------------------------------------------------------------------------
# local data


@dataclass(frozen=True, eq=False)
class LocalDatum:
    representative: str
    block: tuple[str, ...]
    fiber: FinCat
    aut: AutGroup
    action: dict[str, FinFunctor]       # group element -> fiber functor
    lifts: dict[tuple[str, str], str]   # (group element, fiber object) -> chosen het iso


@dataclass(frozen=True, eq=False)
class LocalData:
    per_class: dict[str, LocalDatum]  # representative -> datum


def local_data(p: CatOverBase, search_budget: int = 200_000) -> LocalData:
    """Per isomorphism class of the base: the fiber over the minimal
    representative, its automorphism group, and a strictly functorial group
    action by transport along chosen invertible heteromorphisms.

    A strict action needs the chosen lifts to satisfy the cocycle
    m(g.h, b) = m(g, h*b) . m(h, b) with identity lifts at the unit; the
    search for such a choice is exhaustive within the budget and raises
    NonFunctorialAction with the obstruction when none exists.
    """
    E, C = p.total, p.base
    part = iso_classes(C)
    out: dict[str, LocalDatum] = {}
    for block in part.blocks:
        X = min(block)
        fib = fiber(p, X)
        aut = aut_group(C, X)
        lifts = _strict_action_lifts(p, fib, aut, search_budget)
        action = {}
        for a in aut.carrier:
            obj_map = {b: E.tgt[lifts[(a, b)]] for b in fib.objects}
            mor_map = {}
            for phi in fib.morphisms:
                b, bp = fib.src[phi], fib.tgt[phi]
                # a*(phi) = m(a, b') . phi . m(a, b)^{-1}
                inv = E.inverse_table[lifts[(a, b)]]
                mor_map[phi] = E.table[(E.table[(lifts[(a, bp)], phi)], inv)]
            F = FinFunctor(fib, fib, obj_map, mor_map)
            assert validate_functor(F).ok
            action[a] = F
        out[X] = LocalDatum(X, block, fib, aut, action, lifts)
    return LocalData(out)


def _strict_action_lifts(p: CatOverBase, fib: FinCat, aut: AutGroup, budget: int):
    """Choose, per (automorphism a, fiber object b), an invertible morphism
    over a out of b such that the choices compose strictly."""
    E, C = p.total, p.base
    candidates: dict[tuple[str, str], list[str]] = {}
    for a in aut.carrier:
        for b in fib.objects:
            if a == aut.unit:
                candidates[(a, b)] = [E.identity[b]]
                continue
            cands = sorted(
                m for m in E.morphisms
                if E.src[m] == b and p.proj.mor_map[m] == a and m in E.inverse_table
            )
            if not cands:
                raise NonFunctorialAction(
                    {"automorphism": a, "fiber_object": b, "reason": "no invertible transport"}
                )
            candidates[(a, b)] = cands

    keys = sorted(candidates)
    chosen: dict[tuple[str, str], str] = {}
    nodes = 0

    def cocycle_ok():
        for g in aut.carrier:
            for h in aut.carrier:
                gh = aut.table[(g, h)]
                for b in fib.objects:
                    mh = chosen.get((h, b))
                    if mh is None:
                        continue
                    hb = E.tgt[mh]
                    mg = chosen.get((g, hb))
                    mgh = chosen.get((gh, b))
                    if mg is None or mgh is None:
                        continue
                    if E.table[(mg, mh)] != mgh:
                        return False
        return True

    def rec(i):
        nonlocal nodes
        if i == len(keys):
            return True
        key = keys[i]
        for cand in candidates[key]:
            nodes += 1
            if nodes > budget:
                raise NonFunctorialAction(
                    {"reason": "search budget exhausted", "budget": budget}
                )
            chosen[key] = cand
            if cocycle_ok() and rec(i + 1):
                return True
            del chosen[key]
        return False

    if not rec(0):
        raise NonFunctorialAction(
            {"reason": "no strictly functorial choice of transports exists"}
        )
    return dict(chosen)


# ---------------------------------------------------------------------------
# the fracture round trip


@dataclass(frozen=True, eq=False)
class FractureReport:
    iso: FinFunctor | None
    gluing_valid: ValidationReport
    local: LocalData | None
    local_obstruction: dict | None
    local_consistent: bool | None

    @property
    def ok(self) -> bool:
        # an honestly reported action obstruction does not fail the check;
        # an inconsistent recovered action does
        return (
            self.iso is not None
            and self.gluing_valid.ok
            and self.local_consistent is not False
        )


def fracture_check(p: CatOverBase, iso_budget: int = 2_000_000) -> FractureReport:
    """Decompose p into gluing data, rebuild, and search for an isomorphism
    over the base; then check the local data is recovered from the gluing
    data restricted to the core of the base.

    The local comparison: for every automorphism a and fiber objects b, b',
    composition with the chosen lift is a bijection het(a)(b, b') ->
    fiber_hom(a*(b), b'), i.e. the action corepresents the restricted
    gluing data.
    """
    delta = lax_diagram_of(p)
    gluing_valid = diagram_validate(delta)
    q = collage_of_diagram(delta)
    iso = search_iso_over_base(p, q, node_budget=iso_budget)

    local = None
    obstruction = None
    consistent = None
    try:
        local = local_data(p)
    except NonFunctorialAction as exc:
        obstruction = exc.obstruction
    if local is not None:
        consistent = True
        E = p.total
        for X, datum in local.per_class.items():
            assert same_cat(datum.fiber, delta.fib[X])
            for a in datum.aut.carrier:
                H = delta.het[a]
                act = datum.action[a]
                for b in datum.fiber.objects:
                    m_ab = datum.lifts[(a, b)]
                    for bp in datum.fiber.objects:
                        image = {}
                        for n in H.at[(b, bp)]:
                            # factor n through the chosen lift: n = phi . m(a,b)
                            phi = E.table[(n, E.inverse_table[m_ab])]
                            image[n] = phi
                        homs = set(datum.fiber.hom(act.obj_map[b], bp))
                        if set(image.values()) != homs or len(set(image.values())) != len(image):
                            consistent = False
    return FractureReport(iso, gluing_valid, local, obstruction, consistent)
