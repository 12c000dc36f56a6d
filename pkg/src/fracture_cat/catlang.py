"""The ".fincat" declarative text format: categories (total tables or
generators+relations+closure), functors, natural transformations,
presheaves, set-valued diagrams, profunctors, and categories-over-a-base.

Composition entries are written `g.f` meaning g after f (apply f first).
Identities are auto-named `id_<object>` unless declared with `id x = name;`
and identity compositions are auto-filled. Comments run from `#` to end of
line. Identifiers are words of [A-Za-z0-9_*'] or arbitrary double-quoted
strings (the serializer quotes anything that is not a plain word).

Parsed documents are normalized: object/morphism/element lists are sorted,
so parse . serialize is the identity on parsed documents and golden files
are byte-stable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import (
    ClosureExceeded,
    DocumentValidationError,
    ParseError,
    UnresolvedReference,
)
from .fincat import (
    CatOverBase,
    FinCat,
    FinFunctor,
    NatTrans,
    validate,
    validate_functor,
    validate_nat_trans,
)
from .presheaf import (
    FinSet,
    Presheaf,
    SetValuedDiagram,
    validate_diagram,
    validate_presheaf,
)
from .collage import Profunctor, validate_profunctor


PLAIN_IDENT = re.compile(r"[A-Za-z0-9_*'][A-Za-z0-9_*']*$")


# ---------------------------------------------------------------------------
# tokenizer


@dataclass(frozen=True)
class Token:
    kind: str  # ident | punct | int | eof
    value: str
    line: int
    col: int


PUNCT = ["-/->", "->", "=>", "{", "}", "(", ")", ":", ";", ",", "=", "."]


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == '"':
            j = i + 1
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    raise ParseError(line, col, "unterminated quoted identifier")
                j += 1
            if j >= n:
                raise ParseError(line, col, "unterminated quoted identifier")
            tokens.append(Token("ident", text[i + 1 : j], line, col))
            col += j - i + 1
            i = j + 1
            continue
        matched = False
        for p in PUNCT:
            if text.startswith(p, i):
                tokens.append(Token("punct", p, line, col))
                i += len(p)
                col += len(p)
                matched = True
                break
        if matched:
            continue
        m = re.match(r"[A-Za-z0-9_*'][A-Za-z0-9_*']*", text[i:])
        if m:
            word = m.group(0)
            kind = "int" if word.isdigit() else "ident"
            tokens.append(Token(kind, word, line, col))
            i += len(word)
            col += len(word)
            continue
        raise ParseError(line, col, f"unexpected character {ch!r}")
    tokens.append(Token("eof", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# document


@dataclass
class Document:
    entries: dict[str, tuple[str, object]] = field(default_factory=dict)

    def kind_of(self, name: str) -> str:
        return self.entries[name][0]

    def value(self, name: str):
        return self.entries[name][1]

    def of_kind(self, kind: str) -> dict[str, object]:
        return {k: v for k, (kd, v) in self.entries.items() if kd == kind}

    def get(self, name: str, kind: str | None = None):
        if name not in self.entries:
            raise UnresolvedReference(name)
        kd, v = self.entries[name]
        if kind is not None and kd != kind:
            raise UnresolvedReference(f"{name} (expected a {kind}, found a {kd})")
        return v


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.doc = Document()

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, value: str) -> Token:
        t = self.next()
        if t.value != value or (t.kind not in ("punct", "ident", "int")):
            raise ParseError(t.line, t.col, f"expected {value!r}, found {t.value!r}")
        return t

    def ident(self, what="identifier") -> Token:
        t = self.next()
        if t.kind not in ("ident", "int"):
            raise ParseError(t.line, t.col, f"expected {what}, found {t.value!r}")
        return t

    def integer(self) -> int:
        t = self.next()
        if t.kind != "int":
            raise ParseError(t.line, t.col, f"expected an integer, found {t.value!r}")
        return int(t.value)

    def fresh_name(self, tok: Token) -> str:
        if tok.value in self.doc.entries:
            raise ParseError(tok.line, tok.col, f"duplicate name {tok.value!r}")
        return tok.value

    def lookup(self, tok: Token, kind: str):
        if tok.value not in self.doc.entries:
            raise UnresolvedReference(tok.value, tok.line, tok.col)
        kd, v = self.doc.entries[tok.value]
        if kd != kind:
            raise ParseError(tok.line, tok.col, f"{tok.value!r} is a {kd}, expected a {kind}")
        return v

    # -- toplevel -----------------------------------------------------------

    def parse(self) -> Document:
        while self.peek().kind != "eof":
            t = self.next()
            if t.value == "category":
                self.parse_category()
            elif t.value == "functor":
                self.parse_functor()
            elif t.value == "nattrans":
                self.parse_nattrans()
            elif t.value == "presheaf":
                self.parse_presheaf(covariant=False)
            elif t.value == "diagram":
                self.parse_presheaf(covariant=True)
            elif t.value == "profunctor":
                self.parse_profunctor()
            elif t.value == "over":
                self.parse_over()
            else:
                raise ParseError(t.line, t.col, f"unknown declaration {t.value!r}")
        return self.doc

    # -- category -----------------------------------------------------------

    def parse_category(self):
        name_tok = self.ident("category name")
        name = self.fresh_name(name_tok)
        self.expect("{")
        objects: list[str] = []
        mors: list[tuple[str, str, str, Token]] = []  # (name, src, tgt, tok)
        id_decl: dict[str, str] = {}
        compose: dict[tuple[str, str], str] = {}
        relations: list[tuple[tuple, tuple, Token]] = []
        close_max: int | None = None
        while self.peek().value != "}":
            t = self.next()
            if t.value == "objects":
                self.expect(":")
                while self.peek().value != ";":
                    objects.append(self.ident("object name").value)
                self.expect(";")
            elif t.value == "mor":
                mname = self.ident("morphism name")
                self.expect(":")
                s = self.ident("source object").value
                self.expect("->")
                g = self.ident("target object").value
                self.expect(";")
                mors.append((mname.value, s, g, mname))
            elif t.value == "id":
                obj = self.ident("object name").value
                self.expect("=")
                id_decl[obj] = self.ident("morphism name").value
                self.expect(";")
            elif t.value == "compose":
                g = self.ident("morphism name").value
                self.expect(".")
                f = self.ident("morphism name").value
                self.expect("=")
                h = self.ident("morphism name").value
                self.expect(";")
                compose[(g, f)] = h
            elif t.value == "rel":
                w1 = self.parse_word()
                self.expect("=")
                w2 = self.parse_word()
                self.expect(";")
                relations.append((w1, w2, t))
            elif t.value == "close":
                self.expect("(")
                self.expect("max")
                self.expect("=")
                close_max = self.integer()
                self.expect(")")
                self.expect(";")
            else:
                raise ParseError(t.line, t.col, f"unknown category item {t.value!r}")
        self.expect("}")

        if close_max is not None:
            cat = close_generators(
                name, sorted(objects),
                sorted((m, s, g) for m, s, g, _ in mors),
                [(w1, w2) for w1, w2, _ in relations],
                close_max,
            )
        else:
            if relations:
                t = relations[0][2]
                raise ParseError(t.line, t.col, "rel requires a close(max=N) item")
            cat = self._build_total_category(name, objects, mors, id_decl, compose)
        report = validate(cat)
        if not report.ok:
            raise DocumentValidationError(name, report.violations)
        self.doc.entries[name] = ("category", cat)

    def parse_word(self):
        t = self.peek()
        if t.value == "id":
            self.next()
            self.expect("(")
            obj = self.ident("object name").value
            self.expect(")")
            return ("id", obj)
        parts = [self.ident("generator name").value]
        while self.peek().value == ".":
            self.next()
            parts.append(self.ident("generator name").value)
        return ("word", tuple(parts))

    def _build_total_category(self, name, objects, mors, id_decl, compose) -> FinCat:
        objects = tuple(sorted(set(objects)))
        declared = {m: (s, t) for m, s, t, _ in mors}
        identity = {}
        for x in objects:
            identity[x] = id_decl.get(x, f"id_{x}")
            declared.setdefault(identity[x], (x, x))
        morphisms = tuple(sorted(declared))
        src = {m: declared[m][0] for m in morphisms}
        tgt = {m: declared[m][1] for m in morphisms}
        table = dict(compose)
        for m in morphisms:
            if src[m] in identity and (m, identity[src[m]]) not in table:
                table[(m, identity[src[m]])] = m
            if tgt[m] in identity and (identity[tgt[m]], m) not in table:
                table[(identity[tgt[m]], m)] = m
        return FinCat(name, objects, morphisms, src, tgt, identity, table)

    # -- functor ------------------------------------------------------------

    def parse_functor(self):
        name = self.fresh_name(self.ident("functor name"))
        self.expect(":")
        dom = self.lookup(self.ident("category name"), "category")
        self.expect("->")
        cod = self.lookup(self.ident("category name"), "category")
        self.expect("{")
        obj_map: dict[str, str] = {}
        mor_map: dict[str, str] = {}
        while self.peek().value != "}":
            t = self.next()
            if t.value == "obj":
                a = self.ident().value
                self.expect("=>")
                obj_map[a] = self.ident().value
                self.expect(";")
            elif t.value == "mor":
                m = self.ident().value
                self.expect("=>")
                mor_map[m] = self.ident().value
                self.expect(";")
            else:
                raise ParseError(t.line, t.col, f"unknown functor item {t.value!r}")
        self.expect("}")
        for x in dom.objects:
            i = dom.identity[x]
            if i not in mor_map and x in obj_map and obj_map[x] in cod.identity:
                mor_map[i] = cod.identity[obj_map[x]]
        F = FinFunctor(dom, cod, obj_map, mor_map)
        report = validate_functor(F)
        if not report.ok:
            raise DocumentValidationError(name, report.violations)
        self.doc.entries[name] = ("functor", F)

    # -- natural transformation ---------------------------------------------

    def parse_nattrans(self):
        name = self.fresh_name(self.ident("transformation name"))
        self.expect(":")
        F = self.lookup(self.ident("functor name"), "functor")
        self.expect("=>")
        G = self.lookup(self.ident("functor name"), "functor")
        self.expect("{")
        components = {}
        while self.peek().value != "}":
            self.expect("at")
            a = self.ident().value
            self.expect("=>")
            components[a] = self.ident().value
            self.expect(";")
        self.expect("}")
        eta = NatTrans(F, G, components)
        report = validate_nat_trans(eta)
        if not report.ok:
            raise DocumentValidationError(name, report.violations)
        self.doc.entries[name] = ("nattrans", eta)

    # -- presheaf / diagram ---------------------------------------------------

    def parse_presheaf(self, covariant: bool):
        kind = "diagram" if covariant else "presheaf"
        name = self.fresh_name(self.ident(f"{kind} name"))
        self.expect("on")
        base = self.lookup(self.ident("category name"), "category")
        self.expect("{")
        at: dict[str, list[str]] = {}
        act: dict[str, dict[str, str]] = {}
        while self.peek().value != "}":
            t = self.next()
            if t.value == "at":
                x = self.ident().value
                self.expect("=")
                self.expect("{")
                elems = []
                while self.peek().value != "}":
                    elems.append(self.ident("element").value)
                self.expect("}")
                self.expect(";")
                at[x] = sorted(elems)
            elif t.value == "act":
                m = self.ident("morphism name").value
                self.expect(":")
                e = self.ident("element").value
                self.expect("=>")
                act.setdefault(m, {})[e] = self.ident("element").value
                self.expect(";")
            else:
                raise ParseError(t.line, t.col, f"unknown {kind} item {t.value!r}")
        self.expect("}")
        values = {x: FinSet(tuple(at.get(x, ()))) for x in base.objects}
        action = {}
        for m in base.morphisms:
            dom = values[base.src[m] if covariant else base.tgt[m]]
            fn = dict(act.get(m, {}))
            if base.is_identity(m) and not fn:
                fn = {e: e for e in dom}
            action[m] = fn
        if covariant:
            D = SetValuedDiagram(base, values, action)
            violations = validate_diagram(D)
        else:
            D = Presheaf(base, values, action)
            violations = validate_presheaf(D)
        if violations:
            raise DocumentValidationError(name, violations)
        self.doc.entries[name] = (kind, D)

    # -- profunctor -----------------------------------------------------------

    def parse_profunctor(self):
        name = self.fresh_name(self.ident("profunctor name"))
        self.expect(":")
        left = self.lookup(self.ident("category name"), "category")
        self.expect("-/->")
        right = self.lookup(self.ident("category name"), "category")
        self.expect("{")
        at: dict[tuple[str, str], list[str]] = {}
        lact: dict[tuple[str, str], dict[str, str]] = {}
        ract: dict[tuple[str, str], dict[str, str]] = {}
        while self.peek().value != "}":
            t = self.next()
            if t.value == "at":
                self.expect("(")
                c = self.ident().value
                self.expect(",")
                d = self.ident().value
                self.expect(")")
                self.expect("=")
                self.expect("{")
                elems = []
                while self.peek().value != "}":
                    elems.append(self.ident("element").value)
                self.expect("}")
                self.expect(";")
                at[(c, d)] = sorted(elems)
            elif t.value in ("lact", "ract"):
                m = self.ident().value
                self.expect(",")
                other = self.ident().value
                self.expect(":")
                e = self.ident("element").value
                self.expect("=>")
                target = (lact if t.value == "lact" else ract)
                target.setdefault((m, other), {})[e] = self.ident("element").value
                self.expect(";")
            else:
                raise ParseError(t.line, t.col, f"unknown profunctor item {t.value!r}")
        self.expect("}")
        values = {
            (c, d): FinSet(tuple(at.get((c, d), ())))
            for c in left.objects
            for d in right.objects
        }
        lfull = {}
        for u in left.morphisms:
            for d in right.objects:
                fn = dict(lact.get((u, d), {}))
                if left.is_identity(u) and not fn:
                    fn = {e: e for e in values[(left.src[u], d)]}
                lfull[(u, d)] = fn
        rfull = {}
        for v in right.morphisms:
            for c in left.objects:
                fn = dict(ract.get((v, c), {}))
                if right.is_identity(v) and not fn:
                    fn = {e: e for e in values[(c, right.src[v])]}
                rfull[(v, c)] = fn
        H = Profunctor(left, right, values, lfull, rfull)
        violations = validate_profunctor(H)
        if violations:
            raise DocumentValidationError(name, violations)
        self.doc.entries[name] = ("profunctor", H)

    # -- over -----------------------------------------------------------------

    def parse_over(self):
        name = self.fresh_name(self.ident("name"))
        self.expect("=")
        F = self.lookup(self.ident("functor name"), "functor")
        self.expect(";")
        self.doc.entries[name] = ("over", CatOverBase(F.dom, F.cod, F))


def parse(text: str) -> Document:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# generator closure


def close_generators(name, objects, generators, relations, max_morphisms) -> FinCat:
    """Quotient of the free category on the generators by the relations,
    computed by bounded saturation: words up to length 2*max+1 are explored,
    identified under two-sided relation rewriting via union-find, and
    composed on class representatives until a fixpoint. A category with at
    most ``max_morphisms`` morphisms represents every morphism by a word
    with pairwise distinct proper prefixes, so the length bound is sound;
    blowing past it, or ending with more classes than the cap, raises
    ClosureExceeded."""
    gens = {m: (s, t) for m, s, t in generators}
    obj_set = list(objects)
    for m, (s, t) in gens.items():
        if s not in obj_set or t not in obj_set:
            raise DocumentValidationError(name, [f"generator {m} has unknown endpoints"])

    max_len = 2 * max_morphisms + 1
    # a closure that fits in the cap stays comfortably below this; genuine
    # blowups (free monoids and friends) cross it fast
    node_cap = max(2000, 400 * max_morphisms)

    def word_src(w):
        return w[1] if w[0] == "id" else gens[w[1][-1]][0]

    def word_tgt(w):
        return w[1] if w[0] == "id" else gens[w[1][0]][1]

    def normalize_rel(rel):
        # both sides must be parallel words over known generators
        out = []
        for side in rel:
            kind, payload = side
            if kind == "word":
                for g in payload:
                    if g not in gens:
                        raise DocumentValidationError(name, [f"relation uses unknown generator {g}"])
            out.append(side)
        (k1, p1), (k2, p2) = out
        if word_src(out[0]) != word_src(out[1]) or word_tgt(out[0]) != word_tgt(out[1]):
            raise DocumentValidationError(name, ["relation sides are not parallel"])
        return tuple(out)

    rels = [normalize_rel(r) for r in relations]

    words: set = set()
    parent: dict = {}

    def find(w):
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    def add_word(w):
        if w in words:
            return False
        if len(words) >= node_cap:
            raise ClosureExceeded(max_morphisms)
        words.add(w)
        parent[w] = w
        return True

    for x in obj_set:
        add_word(("id", x))
    for g in gens:
        add_word(("word", (g,)))

    def rewrite_neighbors(w):
        """All words obtained by one two-sided relation application."""
        out = []
        for (s1, s2) in rels:
            for a, b in ((s1, s2), (s2, s1)):
                if a[0] == "id":
                    # splice b's word in at any composable point of a's object
                    if b[0] == "id":
                        continue
                    if w[0] == "id":
                        if w[1] == a[1]:
                            out.append(b)
                        continue
                    seq = w[1]
                    for i in range(len(seq) + 1):
                        left, right = seq[:i], seq[i:]
                        point = gens[left[-1]][0] if left else word_tgt(w)
                        if point != a[1]:
                            continue
                        new_seq = left + b[1] + right
                        if len(new_seq) <= max_len:
                            out.append(("word", new_seq))
                else:
                    if w[0] == "id":
                        continue
                    seq = w[1]
                    pat = a[1]
                    for i in range(len(seq) - len(pat) + 1):
                        if seq[i : i + len(pat)] == pat:
                            if b[0] == "id":
                                new_seq = seq[:i] + seq[i + len(pat):]
                                out.append(("word", new_seq) if new_seq else ("id", b[1]))
                            else:
                                new_seq = seq[:i] + b[1] + seq[i + len(pat):]
                                if len(new_seq) <= max_len:
                                    out.append(("word", new_seq))
        return out

    changed = True
    while changed:
        changed = False
        # saturate rewrites
        frontier = list(words)
        while frontier:
            w = frontier.pop()
            for w2 in rewrite_neighbors(w):
                if add_word(w2):
                    frontier.append(w2)
                    changed = True
                union(w, w2)
        # compose class representatives
        reps = sorted({find(w) for w in words}, key=_shortlex_key)
        for w1 in reps:
            for w2 in reps:
                if word_tgt(w2) != word_src(w1):
                    continue
                if w1[0] == "id":
                    composite = w2
                elif w2[0] == "id":
                    composite = w1
                else:
                    seq = w1[1] + w2[1]
                    if len(seq) > max_len:
                        raise ClosureExceeded(max_morphisms)
                    composite = ("word", seq)
                if add_word(composite):
                    changed = True

    classes: dict = {}
    for w in words:
        classes.setdefault(find(w), []).append(w)
    reps = {r: min(members, key=_shortlex_key) for r, members in classes.items()}
    if len(reps) > max_morphisms:
        raise ClosureExceeded(max_morphisms)

    # name the classes
    taken: set[str] = set()
    mor_name: dict = {}
    for r in sorted(reps, key=_shortlex_key):
        w = reps[r]
        if w[0] == "id":
            base_name = f"id_{w[1]}"
        elif len(w[1]) == 1:
            base_name = w[1][0]
        else:
            base_name = "_".join(w[1])
        final = base_name
        k = 2
        while final in taken:
            final = f"{base_name}__{k}"
            k += 1
        taken.add(final)
        mor_name[r] = final

    def cls_of(w):
        return find(w)

    morphisms = tuple(sorted(mor_name.values()))
    name_of = {v: k for k, v in mor_name.items()}
    src = {m: word_src(reps[name_of[m]]) for m in morphisms}
    tgt = {m: word_tgt(reps[name_of[m]]) for m in morphisms}
    identity = {x: mor_name[cls_of(("id", x))] for x in obj_set}
    table = {}
    for m1 in morphisms:
        for m2 in morphisms:
            if tgt[m1] != src[m2]:
                continue
            w1, w2 = reps[name_of[m2]], reps[name_of[m1]]
            if w1[0] == "id":
                composite = w2
            elif w2[0] == "id":
                composite = w1
            else:
                composite = ("word", w1[1] + w2[1])
            if composite not in parent:
                raise ClosureExceeded(max_morphisms)
            table[(m2, m1)] = mor_name[cls_of(composite)]
    cat = FinCat(name, tuple(obj_set), morphisms, src, tgt, identity, table)
    report = validate(cat)
    if not report.ok:
        raise ClosureExceeded(max_morphisms)
    return cat


def _shortlex_key(w):
    if w[0] == "id":
        return (0, 0, w[1])
    return (1, len(w[1]), w[1])


# ---------------------------------------------------------------------------
# serializer


def _q(ident: str) -> str:
    return ident if PLAIN_IDENT.match(ident) else f'"{ident}"'


def serialize(doc: Document) -> str:
    out: list[str] = []
    kinds = ["category", "functor", "nattrans", "presheaf", "diagram", "profunctor", "over"]
    for kind in kinds:
        for name in sorted(doc.of_kind(kind)):
            value = doc.value(name)
            out.append(_serialize_entry(kind, name, value, doc))
    return "\n".join(out)


def _serialize_entry(kind, name, value, doc) -> str:
    if kind == "category":
        return _serialize_category(name, value)
    if kind == "functor":
        return _serialize_functor(name, value, doc)
    if kind == "nattrans":
        F_name = _name_of(doc, "functor", value.src)
        G_name = _name_of(doc, "functor", value.tgt)
        lines = [f"nattrans {_q(name)}: {_q(F_name)} => {_q(G_name)} {{"]
        for a in sorted(value.components):
            lines.append(f"  at {_q(a)} => {_q(value.components[a])};")
        lines.append("}")
        return "\n".join(lines)
    if kind in ("presheaf", "diagram"):
        base_name = _name_of(doc, "category", value.base if kind == "presheaf" else value.shape)
        lines = [f"{kind} {_q(name)} on {_q(base_name)} {{"]
        cat = value.base if kind == "presheaf" else value.shape
        for x in sorted(cat.objects):
            elems = " ".join(_q(e) for e in value.at[x])
            lines.append(f"  at {_q(x)} = {{{elems}}};")
        for m in sorted(cat.morphisms):
            if cat.is_identity(m):
                continue
            for e in sorted(value.action[m]):
                lines.append(f"  act {_q(m)}: {_q(e)} => {_q(value.action[m][e])};")
        lines.append("}")
        return "\n".join(lines)
    if kind == "profunctor":
        left_name = _name_of(doc, "category", value.left)
        right_name = _name_of(doc, "category", value.right)
        lines = [f"profunctor {_q(name)}: {_q(left_name)} -/-> {_q(right_name)} {{"]
        for c in sorted(value.left.objects):
            for d in sorted(value.right.objects):
                elems = " ".join(_q(e) for e in value.at[(c, d)])
                lines.append(f"  at ({_q(c)}, {_q(d)}) = {{{elems}}};")
        for (u, d) in sorted(value.lact):
            if value.left.is_identity(u):
                continue
            for e in sorted(value.lact[(u, d)]):
                lines.append(f"  lact {_q(u)}, {_q(d)}: {_q(e)} => {_q(value.lact[(u, d)][e])};")
        for (v, c) in sorted(value.ract):
            if value.right.is_identity(v):
                continue
            for e in sorted(value.ract[(v, c)]):
                lines.append(f"  ract {_q(v)}, {_q(c)}: {_q(e)} => {_q(value.ract[(v, c)][e])};")
        lines.append("}")
        return "\n".join(lines)
    if kind == "over":
        proj_name = _name_of(doc, "functor", value.proj)
        return f"over {_q(name)} = {_q(proj_name)};"
    raise AssertionError(kind)


def _serialize_category(name, cat: FinCat) -> str:
    lines = [f"category {_q(name)} {{"]
    lines.append("  objects: " + " ".join(_q(x) for x in sorted(cat.objects)) + ";")
    for m in sorted(cat.morphisms):
        if cat.is_identity(m):
            continue
        lines.append(f"  mor {_q(m)}: {_q(cat.src[m])} -> {_q(cat.tgt[m])};")
    for x in sorted(cat.objects):
        if cat.identity[x] != f"id_{x}":
            lines.append(f"  id {_q(x)} = {_q(cat.identity[x])};")
    for (g, f) in sorted(cat.table):
        if cat.is_identity(g) or cat.is_identity(f):
            continue
        lines.append(f"  compose {_q(g)}.{_q(f)} = {_q(cat.table[(g, f)])};")
    lines.append("}")
    return "\n".join(lines)


def _serialize_functor(name, F: FinFunctor, doc) -> str:
    dom_name = _name_of(doc, "category", F.dom)
    cod_name = _name_of(doc, "category", F.cod)
    lines = [f"functor {_q(name)}: {_q(dom_name)} -> {_q(cod_name)} {{"]
    for a in sorted(F.obj_map):
        lines.append(f"  obj {_q(a)} => {_q(F.obj_map[a])};")
    for m in sorted(F.mor_map):
        if F.dom.is_identity(m):
            continue
        lines.append(f"  mor {_q(m)} => {_q(F.mor_map[m])};")
    lines.append("}")
    return "\n".join(lines)


def _name_of(doc: Document, kind: str, value) -> str:
    for name, (kd, v) in doc.entries.items():
        if kd == kind and v is value:
            return name
    raise UnresolvedReference(f"<unnamed {kind}>")
